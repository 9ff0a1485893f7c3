//! Ground truth independent of the amplitude criteria: reduced density
//! matrices and their ranks, explicit product factorization, and seeded
//! orbit sampling.

pub mod density;
pub mod factorize;
pub mod orbit;

pub use density::{partial_trace, rank2, rank_classify3, reduced_ranks3, DensityMatrix};
pub use factorize::{factorize_single_pair, ProductFactorization};
pub use orbit::{random_orbit, random_state3, random_state4, sample_operator, Canonical, OrbitOptions, OrbitScalar, OrbitState};
