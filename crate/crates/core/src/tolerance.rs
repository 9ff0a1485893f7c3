//! Float-mode equality thresholds.
//!
//! Pair residuals are homogeneous of degree 2 in the amplitudes and the
//! discriminant-type forms of degree 4, so a residual `R` counts as zero when
//! `|R| ≤ eps2·‖a‖²` (degree 2) or `|R| ≤ eps4·‖a‖⁴` (degree 4). The exact
//! backend ignores the thresholds and compares against zero.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Thresholds used by float-mode predicates and orbit sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Relative threshold for degree-2 residuals.
    pub eps2: f64,
    /// Relative threshold for degree-4 residuals.
    pub eps4: f64,
    /// Smallest admissible `|det|` for sampled float operators.
    pub det_floor: f64,
    /// Largest admissible entry magnitude for sampled float operators.
    pub norm_cap: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eps2: 1e-10,
            eps4: 1e-9,
            det_floor: 0.1,
            norm_cap: 10.0,
        }
    }
}

impl ToleranceConfig {
    pub fn new(eps2: f64, eps4: f64, det_floor: f64, norm_cap: f64) -> Result<Self> {
        let tol = Self {
            eps2,
            eps4,
            det_floor,
            norm_cap,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.eps2) || !positive(self.eps4) {
            return Err(Error::InvalidTolerance("eps2 and eps4 must be positive"));
        }
        if !positive(self.det_floor) || !positive(self.norm_cap) {
            return Err(Error::InvalidTolerance("det_floor and norm_cap must be positive"));
        }
        if self.eps4 < self.eps2 {
            return Err(Error::InvalidTolerance("eps4 must be at least eps2"));
        }
        Ok(())
    }

    /// Both residual thresholds multiplied by `factor`.
    pub fn relaxed(&self, factor: f64) -> Self {
        Self {
            eps2: self.eps2 * factor,
            eps4: self.eps4 * factor,
            ..*self
        }
    }
}

/// Zero predicate bound to one state's scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroTest {
    Exact,
    Scaled { deg2: f64, deg4: f64 },
}

impl ZeroTest {
    /// Predicate for residuals of the state with amplitudes `amps`.
    pub fn for_amplitudes<S: Scalar>(amps: &[S], tol: &ToleranceConfig) -> Self {
        let n2: f64 = amps.iter().map(|a| a.to_c64().norm_sqr()).sum();
        Self::from_norm_sqr::<S>(n2, tol)
    }

    /// Predicate for a state whose squared norm is `n2`.
    pub fn from_norm_sqr<S: Scalar>(n2: f64, tol: &ToleranceConfig) -> Self {
        if S::EXACT {
            ZeroTest::Exact
        } else {
            ZeroTest::Scaled {
                deg2: tol.eps2 * n2,
                deg4: tol.eps4 * n2 * n2,
            }
        }
    }

    pub fn relaxed(&self, factor: f64) -> Self {
        match *self {
            ZeroTest::Exact => ZeroTest::Exact,
            ZeroTest::Scaled { deg2, deg4 } => ZeroTest::Scaled {
                deg2: deg2 * factor,
                deg4: deg4 * factor,
            },
        }
    }

    /// Degree-2 residual vanishes.
    pub fn zero2<S: Scalar>(&self, r: &S) -> bool {
        match self {
            ZeroTest::Exact => r.is_zero(),
            ZeroTest::Scaled { deg2, .. } => r.magnitude() <= *deg2,
        }
    }

    /// Degree-4 residual vanishes.
    pub fn zero4<S: Scalar>(&self, r: &S) -> bool {
        match self {
            ZeroTest::Exact => r.is_zero(),
            ZeroTest::Scaled { deg4, .. } => r.magnitude() <= *deg4,
        }
    }

    /// How far a degree-2 residual sits from the threshold, as a ratio
    /// `|R| / threshold`. `None` in exact mode.
    pub fn ratio2<S: Scalar>(&self, r: &S) -> Option<f64> {
        match self {
            ZeroTest::Exact => None,
            ZeroTest::Scaled { deg2, .. } => Some(r.magnitude() / deg2),
        }
    }

    pub fn ratio4<S: Scalar>(&self, r: &S) -> Option<f64> {
        match self {
            ZeroTest::Exact => None,
            ZeroTest::Scaled { deg4, .. } => Some(r.magnitude() / deg4),
        }
    }
}
