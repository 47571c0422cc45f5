//! Every runnable example must also run cleanly as a test.

macro_rules! example {
    ($module:ident, $file:literal) => {
        #[path = $file]
        mod $module;

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(fock_basis, "../examples/fock_basis.rs");
example!(nc_operators, "../examples/nc_operators.rs");
example!(monopole_relation, "../examples/monopole_relation.rs");
example!(su22_closure, "../examples/su22_closure.rs");
example!(hydrogen_limit, "../examples/hydrogen_limit.rs");
example!(cutoff_study, "../examples/cutoff_study.rs");
example!(symbolic_identities, "../examples/symbolic_identities.rs");
example!(vector_potential, "../examples/vector_potential.rs");
example!(reports, "../examples/reports.rs");
