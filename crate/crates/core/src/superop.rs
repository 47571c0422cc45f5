//! Linear maps on wave operators.
//!
//! A [`SuperOperator`] is a small expression tree whose leaves are
//! sandwiches `Ψ ↦ c · A Ψ B` with one-body operators `A`, `B`, and
//! multipliers that depend only on the row and column shell totals of a
//! matrix unit (such as `r̂` or its inverse). The tree can be evaluated two
//! ways: [`SuperOperator::apply`] multiplies dense matrices, and
//! [`SuperOperator::matrix`] assembles the sparse action on a vectorized
//! sector unit by unit.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{FockBasis, FockOperator, Sector, WaveOperator};
use crate::sparse::SparseMatrix;

type ShellFn = dyn Fn(usize, usize) -> Complex64 + Send + Sync;

#[derive(Clone)]
struct Sandwich {
    coeff: Complex64,
    left: Option<FockOperator>,
    right: Option<FockOperator>,
    right_rows: Option<Arc<Vec<Vec<(usize, Complex64)>>>>,
}

#[derive(Clone)]
enum Kind {
    Sandwich(Vec<Sandwich>),
    Shell(Arc<ShellFn>),
    Linear(Vec<(Complex64, SuperOperator)>),
    /// `outer ∘ inner`
    Compose(SuperOperator, SuperOperator),
}

/// A linear map on [`WaveOperator`]s over a fixed basis.
#[derive(Clone)]
pub struct SuperOperator {
    label: String,
    basis: FockBasis,
    shift: i32,
    reach: usize,
    kind: Arc<Kind>,
}

impl fmt::Debug for SuperOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuperOperator")
            .field("label", &self.label)
            .field("n_max", &self.basis.n_max())
            .field("shift", &self.shift)
            .field("reach", &self.reach)
            .finish()
    }
}

/// Occupancy change of a one-body operator, if uniform.
fn occupancy_change(op: &FockOperator) -> Option<i32> {
    let basis = op.basis();
    let mut change = None;
    for j in 0..op.dim() {
        let tj = basis.total_of(j) as i32;
        for &(i, _) in op.col(j) {
            let d = basis.total_of(i) as i32 - tj;
            match change {
                None => change = Some(d),
                Some(c) if c != d => return None,
                _ => {}
            }
        }
    }
    Some(change.unwrap_or(0))
}

impl SuperOperator {
    /// `Ψ ↦ coeff · left Ψ right`. `None` stands for the identity.
    ///
    /// Panics if either factor mixes occupancy changes (no fixed grading).
    pub fn sandwich(
        label: impl Into<String>,
        basis: FockBasis,
        coeff: Complex64,
        left: Option<FockOperator>,
        right: Option<FockOperator>,
    ) -> Self {
        let dl = left.as_ref().map_or(Some(0), occupancy_change).expect("left factor has no fixed grading");
        let dr = right.as_ref().map_or(Some(0), occupancy_change).expect("right factor has no fixed grading");
        for op in left.iter().chain(right.iter()) {
            assert_eq!(op.basis(), basis, "factor basis differs from superoperator basis");
        }
        let right_rows = right.as_ref().map(|r| Arc::new(r.rows()));
        // row total moves by dl, column total by -dr
        let reach = dl.max(-dr).max(0) as usize;
        Self {
            label: label.into(),
            basis,
            shift: dl + dr,
            reach,
            kind: Arc::new(Kind::Sandwich(vec![Sandwich { coeff, left, right, right_rows }])),
        }
    }

    /// `Ψ ↦ A Ψ`.
    pub fn left(label: impl Into<String>, op: FockOperator) -> Self {
        let basis = op.basis();
        Self::sandwich(label, basis, Complex64::new(1.0, 0.0), Some(op), None)
    }

    /// `Ψ ↦ Ψ A`.
    pub fn right(label: impl Into<String>, op: FockOperator) -> Self {
        let basis = op.basis();
        Self::sandwich(label, basis, Complex64::new(1.0, 0.0), None, Some(op))
    }

    /// `Ψ ↦ ½(AΨ + ΨA)`.
    pub fn symmetrized(label: impl Into<String>, op: FockOperator) -> Self {
        let half = Complex64::new(0.5, 0.0);
        Self::left("", op.clone()).scale(half).add(&Self::right("", op).scale(half)).relabel(label)
    }

    /// Multiplies the unit `|n><m|` by `f(|n|, |m|)`.
    pub fn shell_multiplier(
        label: impl Into<String>,
        basis: FockBasis,
        f: impl Fn(usize, usize) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self { label: label.into(), basis, shift: 0, reach: 0, kind: Arc::new(Kind::Shell(Arc::new(f))) }
    }

    pub fn identity(basis: FockBasis) -> Self {
        Self::shell_multiplier("1", basis, |_, _| Complex64::new(1.0, 0.0))
    }

    pub fn zero(basis: FockBasis) -> Self {
        Self { label: "0".into(), basis, shift: 0, reach: 0, kind: Arc::new(Kind::Linear(Vec::new())) }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    /// Declared change of the grading `kappa'`.
    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// Upper bound on how far one application can raise a row or column
    /// total. Interior checks need a projection depth of at least this.
    pub fn reach(&self) -> usize {
        self.reach
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `Σ c_k A_k`; all terms must share basis and grading shift.
    pub fn linear(label: impl Into<String>, terms: Vec<(Complex64, SuperOperator)>) -> Result<Self> {
        let Some(first) = terms.first() else {
            return Err(Error::InvalidArgument("empty linear combination".into()));
        };
        let (basis, shift) = (first.1.basis, first.1.shift);
        for (_, t) in &terms {
            if t.basis != basis {
                return Err(Error::BasisMismatch { left: basis.n_max(), right: t.basis.n_max() });
            }
            if t.shift != shift {
                return Err(Error::SectorMismatch { expected: shift, found: t.shift });
            }
        }
        let reach = terms.iter().map(|(_, t)| t.reach).max().unwrap_or(0);
        Ok(Self { label: label.into(), basis, shift, reach, kind: Arc::new(Kind::Linear(terms)) })
    }

    pub fn scale(&self, alpha: Complex64) -> Self {
        Self {
            label: format!("({alpha})*{}", self.label),
            basis: self.basis,
            shift: self.shift,
            reach: self.reach,
            kind: Arc::new(Kind::Linear(vec![(alpha, self.clone())])),
        }
    }

    /// Panics on basis or shift mismatch; see [`SuperOperator::linear`].
    pub fn add(&self, other: &Self) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::linear(format!("{} + {}", self.label, other.label), vec![(one, self.clone()), (one, other.clone())])
            .expect("incompatible operands")
    }

    pub fn sub(&self, other: &Self) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::linear(format!("{} - {}", self.label, other.label), vec![(one, self.clone()), (-one, other.clone())])
            .expect("incompatible operands")
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.basis != inner.basis {
            return Err(Error::BasisMismatch { left: self.basis.n_max(), right: inner.basis.n_max() });
        }
        Ok(Self {
            label: format!("{}∘{}", self.label, inner.label),
            basis: self.basis,
            shift: self.shift + inner.shift,
            reach: self.reach + inner.reach,
            kind: Arc::new(Kind::Compose(self.clone(), inner.clone())),
        })
    }

    /// Evaluates on a wave operator with dense matrix products.
    pub fn apply(&self, psi: &WaveOperator) -> Result<WaveOperator> {
        if psi.basis() != self.basis {
            return Err(Error::BasisMismatch { left: self.basis.n_max(), right: psi.basis().n_max() });
        }
        let entries = self.apply_dense(psi.entries());
        Ok(WaveOperator::from_graded(self.basis, entries, psi.kappa() + self.shift))
    }

    fn apply_dense(&self, psi: &nalgebra::DMatrix<Complex64>) -> nalgebra::DMatrix<Complex64> {
        match &*self.kind {
            Kind::Sandwich(terms) => {
                let mut out = nalgebra::DMatrix::zeros(psi.nrows(), psi.ncols());
                for t in terms {
                    let mut m = match &t.left {
                        Some(l) => l.to_dense() * psi,
                        None => psi.clone(),
                    };
                    if let Some(r) = &t.right {
                        m *= r.to_dense();
                    }
                    out += m * t.coeff;
                }
                out
            }
            Kind::Shell(f) => {
                let totals = self.basis.totals();
                nalgebra::DMatrix::from_fn(psi.nrows(), psi.ncols(), |i, j| psi[(i, j)] * f(totals[i], totals[j]))
            }
            Kind::Linear(terms) => {
                let mut out = nalgebra::DMatrix::zeros(psi.nrows(), psi.ncols());
                for (c, t) in terms {
                    out += t.apply_dense(psi) * *c;
                }
                out
            }
            Kind::Compose(outer, inner) => outer.apply_dense(&inner.apply_dense(psi)),
        }
    }

    /// Sparse matrix of a grading-preserving operator on `sector`.
    pub fn matrix(&self, sector: &Sector) -> Result<SparseMatrix> {
        if self.shift != 0 {
            return Err(Error::InvalidArgument(format!(
                "`{}` shifts the grading by {}; use matrix_between",
                self.label, self.shift
            )));
        }
        self.matrix_between(sector, sector)
    }

    /// Sparse matrix from `source` to `target`, where
    /// `target.kappa() == source.kappa() + shift`.
    pub fn matrix_between(&self, source: &Sector, target: &Sector) -> Result<SparseMatrix> {
        if source.basis() != self.basis || target.basis() != self.basis {
            return Err(Error::BasisMismatch { left: self.basis.n_max(), right: source.basis().n_max() });
        }
        if target.kappa() != source.kappa() + self.shift {
            return Err(Error::SectorMismatch { expected: source.kappa() + self.shift, found: target.kappa() });
        }
        Ok(match &*self.kind {
            Kind::Sandwich(terms) => {
                let mut trip = Vec::new();
                for p in 0..source.dim() {
                    let (n, m) = source.unit_indices(p);
                    for t in terms {
                        let lcol: Vec<(usize, Complex64)> = match &t.left {
                            Some(l) => l.col(n).to_vec(),
                            None => vec![(n, Complex64::new(1.0, 0.0))],
                        };
                        let rrow: Vec<(usize, Complex64)> = match &t.right_rows {
                            Some(rows) => rows[m].clone(),
                            None => vec![(m, Complex64::new(1.0, 0.0))],
                        };
                        for &(i, a) in &lcol {
                            for &(j, b) in &rrow {
                                let q = target.position(i, j).expect("grading-consistent target unit");
                                trip.push((q, p, t.coeff * a * b));
                            }
                        }
                    }
                }
                SparseMatrix::from_triplets(target.dim(), source.dim(), trip)
            }
            Kind::Shell(f) => {
                let diag: Vec<Complex64> = (0..source.dim())
                    .map(|p| {
                        let (tr, tc) = source.shell_totals(p);
                        f(tr, tc)
                    })
                    .collect();
                SparseMatrix::from_diagonal(&diag)
            }
            Kind::Linear(terms) => {
                let mut acc = SparseMatrix::zeros(target.dim(), source.dim());
                for (c, t) in terms {
                    acc = acc.lincomb(Complex64::new(1.0, 0.0), &t.matrix_between(source, target)?, *c);
                }
                acc
            }
            Kind::Compose(outer, inner) => {
                let mid_kappa = source.kappa() + inner.shift;
                match Sector::new(self.basis, mid_kappa) {
                    Ok(mid) => outer.matrix_between(&mid, target)?.mul(&inner.matrix_between(source, &mid)?),
                    Err(Error::EmptySector { .. }) => SparseMatrix::zeros(target.dim(), source.dim()),
                    Err(e) => return Err(e),
                }
            }
        })
    }
}

/// `[A, B] = A∘B − B∘A`.
pub fn commutator(a: &SuperOperator, b: &SuperOperator) -> Result<SuperOperator> {
    let ab = a.compose(b)?;
    let ba = b.compose(a)?;
    let one = Complex64::new(1.0, 0.0);
    SuperOperator::linear(format!("[{}, {}]", a.label(), b.label()), vec![(one, ab), (-one, ba)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{FockIndex, Ladder, Mode};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn ladder_sandwich_declares_grading_and_reach() {
        let b = FockBasis::new(4);
        let ap = FockOperator::ladder(b, Mode::One, Ladder::Create);
        let a = FockOperator::ladder(b, Mode::One, Ladder::Annihilate);
        let raise = SuperOperator::sandwich("a+ . a", b, c(1.0), Some(ap.clone()), Some(a.clone()));
        assert_eq!(raise.shift(), 0);
        assert_eq!(raise.reach(), 1);
        let lower = SuperOperator::sandwich("a . a+", b, c(1.0), Some(a.clone()), Some(ap.clone()));
        assert_eq!(lower.reach(), 0);
        assert_eq!(SuperOperator::left("a+", ap.clone()).shift(), 1);
        assert_eq!(SuperOperator::right("a+", ap).shift(), 1);
        assert_eq!(SuperOperator::right("a", a).shift(), -1);
    }

    #[test]
    fn apply_and_matrix_agree_on_units() {
        let b = FockBasis::new(3);
        let ap = FockOperator::ladder(b, Mode::Two, Ladder::Create);
        let a = FockOperator::ladder(b, Mode::One, Ladder::Annihilate);
        let op = SuperOperator::sandwich("", b, Complex64::new(0.3, -1.0), Some(ap), Some(a))
            .add(&SuperOperator::shell_multiplier("", b, |r, c| Complex64::new((r + 2 * c) as f64, 0.0)));
        let sector = Sector::new(b, 1).unwrap();
        let m = op.matrix(&sector).unwrap();
        for p in 0..sector.dim() {
            let u = sector.unit(p);
            let psi = WaveOperator::unit(b, u.row, u.col).unwrap();
            let out = sector.vectorize(&op.apply(&psi).unwrap()).unwrap();
            for q in 0..sector.dim() {
                assert!((out[q] - m.get(q, p)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn shifted_matrix_needs_matching_target() {
        let b = FockBasis::new(3);
        let ap = SuperOperator::left("a1+", FockOperator::ladder(b, Mode::One, Ladder::Create));
        let s0 = Sector::new(b, 0).unwrap();
        let s1 = Sector::new(b, 1).unwrap();
        assert!(ap.matrix(&s0).is_err());
        let m = ap.matrix_between(&s0, &s1).unwrap();
        let p = s0.position(0, 0).unwrap();
        let q = s1.position(b.index_of(FockIndex::new(1, 0)).unwrap(), 0).unwrap();
        assert_eq!(m.get(q, p), c(1.0));
    }

    #[test]
    fn commutator_of_self_vanishes() {
        let b = FockBasis::new(3);
        let op = SuperOperator::symmetrized("n1", FockOperator::diagonal(b, |s| s.n1 as f64));
        let comm = commutator(&op, &op).unwrap();
        let s = Sector::new(b, 0).unwrap();
        assert_eq!(comm.matrix(&s).unwrap().nnz(), 0);
        assert!(commutator(&op, &SuperOperator::identity(FockBasis::new(2))).is_err());
    }
}
