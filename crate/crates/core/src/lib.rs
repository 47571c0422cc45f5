//! Magnetic monopole sectors in quantum mechanics on C² and on the
//! noncommutative space R³_λ.
//!
//! The crate has four layers:
//!
//! * [`fock`] and [`sparse`]: the truncated two-mode Fock space, wave operators
//!   graded by `kappa'`, and vectorized sectors.
//! * [`superop`] and [`nc`]: linear maps on wave operators, including the
//!   coordinates, free Hamiltonian, velocities, angular momentum and the
//!   sixteen quadratic generators.
//! * [`verify`] and [`spectra`]: truncation-aware identity checks with JSON
//!   reports, and Coulomb spectra under the weighted inner product.
//! * [`symbolic`]: exact differentiation over `z1, z2, z1*, z2*` for the
//!   commutative C² construction.
//!
//! The [`cli`] module backs the `fuzzy-monopole` binary.

pub mod cli;
pub mod error;
pub mod fock;
pub mod nc;
pub mod sparse;
pub mod spectra;
pub mod verify;
pub mod superop;
pub mod symbolic;

pub use error::{Error, Result};
pub use fock::{
    enumerate_basis, ladder_matrix, rhat_eigenvalue, sector_basis, weighted_inner_product, FockBasis, FockIndex,
    FockOperator, Ladder, MatrixUnit, Mode, Sector, WaveOperator,
};
pub use sparse::SparseMatrix;
pub use superop::{commutator, SuperOperator};
pub use nc::{
    angular_momentum_superop, coordinate_superop, hamiltonian_free_superop, su22_generator, velocity_superop,
    Coordinate, GeneratorLabel, RadialOrdering, VelocityRoute,
};
