//! SLOCC classification of three- and four-qubit pure states from
//! polynomial conditions on their amplitudes.
//!
//! Amplitudes are indexed with qubit A as the most significant bit, so for
//! three qubits `a₄` is the coefficient of `|100⟩`. Every routine is generic
//! over [`Scalar`]: `Complex64` with scaled tolerances, or
//! [`ExactComplex`] where zero means exactly zero.

pub mod classifier3;
pub mod classifier4;
pub mod error;
pub mod invariants;
pub mod operator;
pub mod oracle;
pub mod scalar;
pub mod state;
pub mod tolerance;

pub use classifier3::{classify3, Criterion3Report, RowFlags, Slocc3Class};
pub use classifier4::{classify4, Qubit, Slocc4Verdict, Verdict4Kind};
pub use error::{Error, Result};
pub use operator::LocalOperator;
pub use scalar::{ExactComplex, Scalar};
pub use state::{Permutation, QubitState, State3, State4};
pub use tolerance::{ToleranceConfig, ZeroTest};

pub use num_complex::Complex64;
