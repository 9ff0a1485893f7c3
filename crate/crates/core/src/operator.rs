use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tolerance::ToleranceConfig;

/// Invertible single-qubit operator
///
/// ```text
/// ( m1  m2 )
/// ( m3  m4 )
/// ```
///
/// acting on column vectors `(x0, x1)` of |0⟩, |1⟩ amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator<S> {
    m: [S; 4],
}

impl<S: Scalar> LocalOperator<S> {
    /// Rejects operators whose determinant is exactly zero.
    pub fn new(m1: S, m2: S, m3: S, m4: S) -> Result<Self> {
        let op = Self { m: [m1, m2, m3, m4] };
        if op.det().is_zero() {
            return Err(Error::SingularOperator);
        }
        Ok(op)
    }

    /// Like [`LocalOperator::new`], and for the float backend additionally
    /// requires `|det| ≥ det_floor` and every `|m_k| ≤ norm_cap`.
    pub fn bounded(m1: S, m2: S, m3: S, m4: S, tol: &ToleranceConfig) -> Result<Self> {
        let op = Self::new(m1, m2, m3, m4)?;
        if !S::EXACT {
            let det = op.det().magnitude();
            if det < tol.det_floor {
                return Err(Error::OutOfBounds(format!(
                    "|det| = {det:e} below floor {}",
                    tol.det_floor
                )));
            }
            if let Some(big) = op.m.iter().map(Scalar::magnitude).find(|&x| x > tol.norm_cap) {
                return Err(Error::OutOfBounds(format!(
                    "entry magnitude {big:e} above cap {}",
                    tol.norm_cap
                )));
            }
        }
        Ok(op)
    }

    pub fn from_ints(m: [i64; 4]) -> Result<Self> {
        let [a, b, c, d] = m.map(S::from_i64);
        Self::new(a, b, c, d)
    }

    pub fn identity() -> Self {
        Self {
            m: [S::one(), S::zero(), S::zero(), S::one()],
        }
    }

    /// Entry by its 1-based position `m1..m4`.
    pub fn entry(&self, k: usize) -> &S {
        &self.m[k - 1]
    }

    pub fn entries(&self) -> &[S; 4] {
        &self.m
    }

    pub fn det(&self) -> S {
        self.m[0].mul_ref(&self.m[3]) - self.m[1].mul_ref(&self.m[2])
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        let [a1, a2, a3, a4] = &self.m;
        let [b1, b2, b3, b4] = &rhs.m;
        Self {
            m: [
                a1.mul_ref(b1) + a2.mul_ref(b3),
                a1.mul_ref(b2) + a2.mul_ref(b4),
                a3.mul_ref(b1) + a4.mul_ref(b3),
                a3.mul_ref(b2) + a4.mul_ref(b4),
            ],
        }
    }

    /// `c · self`; fails if `c` is zero.
    pub fn scaled(&self, c: &S) -> Result<Self> {
        let [a, b, d, e] = self.m.clone().map(|x| x.mul_ref(c));
        Self::new(a, b, d, e)
    }

    pub(crate) fn apply_pair(&self, x0: &S, x1: &S) -> (S, S) {
        let [m1, m2, m3, m4] = &self.m;
        (
            m1.mul_ref(x0).add_ref(&m2.mul_ref(x1)),
            m3.mul_ref(x0).add_ref(&m4.mul_ref(x1)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactComplex;
    use num_complex::Complex64;

    #[test]
    fn singular_operator_rejected() {
        assert_eq!(
            LocalOperator::<ExactComplex>::from_ints([0, 1, 0, 2]),
            Err(Error::SingularOperator)
        );
        assert!(LocalOperator::<ExactComplex>::from_ints([1, 1, 1, 2]).is_ok());
    }

    #[test]
    fn bounds_apply_to_float_only() {
        let tol = ToleranceConfig::default();
        let small = |x: f64| Complex64::new(x, 0.0);
        assert!(matches!(
            LocalOperator::bounded(small(0.2), small(0.0), small(0.0), small(0.2), &tol),
            Err(Error::OutOfBounds(_))
        ));
        assert!(matches!(
            LocalOperator::bounded(small(11.0), small(0.0), small(0.0), small(1.0), &tol),
            Err(Error::OutOfBounds(_))
        ));
        let q = ExactComplex::from_ratio(1, 5);
        let z = ExactComplex::zero();
        assert!(LocalOperator::bounded(q.clone(), z.clone(), z, q, &tol).is_ok());
    }

    #[test]
    fn compose_matches_matrix_product() {
        let a = LocalOperator::<ExactComplex>::from_ints([1, 2, 3, 4]).unwrap();
        let b = LocalOperator::<ExactComplex>::from_ints([0, 1, 1, 1]).unwrap();
        assert_eq!(
            a.compose(&b),
            LocalOperator::from_ints([2, 3, 4, 7]).unwrap()
        );
        assert_eq!(a.compose(&b).det(), a.det() * b.det());
    }
}
