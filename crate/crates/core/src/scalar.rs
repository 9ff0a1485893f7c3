//! Amplitude fields.
//!
//! Every criterion in this crate is written once against [`Scalar`] and runs
//! over either backend:
//!
//! - [`Complex64`]: double-precision complex numbers, compared through the
//!   scale-aware predicates in [`crate::tolerance`];
//! - [`ExactComplex`]: complex numbers with arbitrary-precision rational real
//!   and imaginary parts, where every comparison is exact.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Complex number with exact rational parts.
pub type ExactComplex = Complex<BigRational>;

/// Field element over which amplitudes live.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// True for backends whose equality is exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    /// The imaginary unit.
    fn i() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `num / den` as a real element. Panics on a zero denominator.
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Builds `re + i·im` from two field elements taken as real parts.
    fn from_parts(re: Self, im: Self) -> Self {
        re + Self::i() * im
    }

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    /// `None` when `rhs` is zero.
    fn try_div(&self, rhs: &Self) -> Option<Self>;

    fn conj(&self) -> Self;
    /// `|z|²` as a real field element.
    fn norm_sqr(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_c64(&self) -> Complex64;

    /// `|z|` as a float, for tolerance comparisons.
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Principal square root of the real part. Always `None` for the exact
    /// backend, since square roots leave the rationals.
    fn real_sqrt(&self) -> Option<Self>;
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if Scalar::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn norm_sqr(&self) -> Self {
        Complex64::new(Complex::norm_sqr(self), 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn real_sqrt(&self) -> Option<Self> {
        (self.re >= 0.0).then(|| Complex64::new(self.re.sqrt(), 0.0))
    }
}

impl Scalar for ExactComplex {
    const EXACT: bool = true;

    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Complex::new(BigRational::from_integer(1.into()), BigRational::zero())
    }
    fn i() -> Self {
        Complex::new(BigRational::zero(), BigRational::from_integer(1.into()))
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(BigRational::from_integer(v.into()), BigRational::zero())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(rational(num, den), BigRational::zero())
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        Complex::new(radd(&self.re, &rhs.re), radd(&self.im, &rhs.im))
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Complex::new(rsub(&self.re, &rhs.re), rsub(&self.im, &rhs.im))
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Complex::new(rmul(&self.re, &rhs.re), BigRational::zero());
        }
        Complex::new(
            rsub(&rmul(&self.re, &rhs.re), &rmul(&self.im, &rhs.im)),
            radd(&rmul(&self.re, &rhs.im), &rmul(&self.im, &rhs.re)),
        )
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if Scalar::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn norm_sqr(&self) -> Self {
        let n = radd(&rmul(&self.re, &self.re), &rmul(&self.im, &self.im));
        Complex::new(n, BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn real_sqrt(&self) -> Option<Self> {
        None
    }
}

// Rational arithmetic with shortcuts for zero and integer operands, which
// dominate sampled states; the generic paths reduce by gcd every time.

fn rmul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() || b.is_zero() {
        BigRational::zero()
    } else if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn radd(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() {
        b.clone()
    } else if b.is_zero() {
        a.clone()
    } else if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn rsub(a: &BigRational, b: &BigRational) -> BigRational {
    if b.is_zero() {
        a.clone()
    } else if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() - b.numer())
    } else {
        a - b
    }
}

/// `num / den` as a [`BigRational`]. Panics on a zero denominator.
pub fn rational(num: i64, den: i64) -> BigRational {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact complex number `(re_num/re_den) + i·(im_num/im_den)`.
pub fn exact(re: (i64, i64), im: (i64, i64)) -> ExactComplex {
    Complex::new(rational(re.0, re.1), rational(im.0, im.1))
}

/// Product of a list of scalars.
pub fn product<S: Scalar>(factors: &[&S]) -> S {
    factors
        .iter()
        .fold(S::one(), |acc, f| acc.mul_ref(f))
}

/// Maps a list of integers into the field.
pub fn ints<S: Scalar>(values: &[i64]) -> Vec<S> {
    values.iter().map(|&v| S::from_i64(v)).collect()
}
