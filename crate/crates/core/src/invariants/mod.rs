//! Polynomial quantities the criteria are built from.
//!
//! The basic unit is the pair residual `a_i·a_j − a_k·a_l`, admissible only
//! when `i+j = k+l` and `i⊕j = k⊕l`: the two products then carry the same
//! multiset of bits on every qubit.

pub mod derivation;

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::state::{QubitState, State3, State4};
use crate::tolerance::ZeroTest;

/// `i+j = k+l` and `i⊕j = k⊕l`.
pub fn is_pair_rule(i: usize, j: usize, k: usize, l: usize) -> bool {
    i + j == k + l && (i ^ j) == (k ^ l)
}

/// Value of `a_i·a_j − a_k·a_l` together with its indices.
#[derive(Debug, Clone, PartialEq)]
pub struct PairResidual<S> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub value: S,
}

impl<S> PairResidual<S> {
    pub fn label(&self) -> String {
        format!("a{}a{}-a{}a{}", self.i, self.j, self.k, self.l)
    }
}

impl<S: fmt::Debug> fmt::Display for PairResidual<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {:?}", self.label(), self.value)
    }
}

/// Checked `a_i·a_j − a_k·a_l`.
pub fn pair_residual<S: Scalar, const Q: usize>(
    state: &QubitState<S, Q>,
    (i, j): (usize, usize),
    (k, l): (usize, usize),
) -> Result<PairResidual<S>> {
    let n = QubitState::<S, Q>::DIM;
    if [i, j, k, l].iter().any(|&x| x >= n) || !is_pair_rule(i, j, k, l) {
        return Err(Error::InvalidPair { i, j, k, l });
    }
    let a = state.amplitudes();
    Ok(PairResidual {
        i,
        j,
        k,
        l,
        value: a[i].mul_ref(&a[j]) - a[k].mul_ref(&a[l]),
    })
}

/// Every product `a_i·a_j`, computed once per state.
#[derive(Debug, Clone)]
pub struct PairProducts<S> {
    n: usize,
    table: Vec<S>,
}

impl<S: Scalar> PairProducts<S> {
    pub fn new(amps: &[S]) -> Self {
        let n = amps.len();
        let mut table = vec![S::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let p = amps[i].mul_ref(&amps[j]);
                table[j * n + i] = p.clone();
                table[i * n + j] = p;
            }
        }
        Self { n, table }
    }

    pub fn of<const Q: usize>(state: &QubitState<S, Q>) -> Self {
        Self::new(state.amplitudes())
    }

    pub fn product(&self, i: usize, j: usize) -> &S {
        &self.table[i * self.n + j]
    }

    /// `a_i·a_j − a_k·a_l`; the index rule is a debug assertion since every
    /// caller passes a fixed table that is checked by the unit tests.
    pub fn residual(&self, i: usize, j: usize, k: usize, l: usize) -> S {
        debug_assert!(is_pair_rule(i, j, k, l), "bad residual ({i},{j}),({k},{l})");
        self.product(i, j).sub_ref(self.product(k, l))
    }

    pub fn pair(&self, i: usize, j: usize, k: usize, l: usize) -> PairResidual<S> {
        PairResidual {
            i,
            j,
            k,
            l,
            value: self.residual(i, j, k, l),
        }
    }

    /// Residual `(i,j,k,l)` judged zero at degree 2.
    pub fn vanishes(&self, zt: &ZeroTest, (i, j, k, l): (usize, usize, usize, usize)) -> bool {
        match zt {
            ZeroTest::Exact => {
                debug_assert!(is_pair_rule(i, j, k, l), "bad residual ({i},{j}),({k},{l})");
                self.product(i, j) == self.product(k, l)
            }
            ZeroTest::Scaled { .. } => zt.zero2(&self.residual(i, j, k, l)),
        }
    }
}

/// Eight amplitude indices playing the roles of `a₀..a₇` in a three-qubit
/// formula.
pub type Slice = [usize; 8];

pub const IDENTITY_SLICE: Slice = [0, 1, 2, 3, 4, 5, 6, 7];

/// Named three-qubit slices of a four-qubit state: `A0` keeps A = 0 and
/// reads BCD, `D1` keeps D = 1 and reads ABC, and so on.
pub mod slices {
    use super::Slice;

    pub const A0: Slice = [0, 1, 2, 3, 4, 5, 6, 7];
    pub const A1: Slice = [8, 9, 10, 11, 12, 13, 14, 15];
    pub const B0: Slice = [0, 1, 2, 3, 8, 9, 10, 11];
    pub const B1: Slice = [4, 5, 6, 7, 12, 13, 14, 15];
    pub const C0: Slice = [0, 1, 4, 5, 8, 9, 12, 13];
    pub const C1: Slice = [2, 3, 6, 7, 10, 11, 14, 15];
    pub const D0: Slice = [0, 2, 4, 6, 8, 10, 12, 14];
    pub const D1: Slice = [1, 3, 5, 7, 9, 11, 13, 15];
    /// Amplitudes `a₄..a₁₁`; not a qubit slice, but one of the W₄ conditions
    /// is the discriminant evaluated on it.
    pub const MIDDLE: Slice = [4, 5, 6, 7, 8, 9, 10, 11];
}

/// `(a₀a₇−a₂a₅+a₁a₆−a₃a₄)² − 4(a₂a₄−a₀a₆)(a₃a₅−a₁a₇)` on the slice `s`.
pub fn discriminant_on<S: Scalar>(p: &PairProducts<S>, s: &Slice) -> S {
    let r = |i: usize, j: usize, k: usize, l: usize| p.residual(s[i], s[j], s[k], s[l]);
    let lin = r(0, 7, 2, 5).add_ref(&r(1, 6, 3, 4));
    let prod = r(2, 4, 0, 6).mul_ref(&r(3, 5, 1, 7));
    lin.mul_ref(&lin).sub_ref(&prod.mul_ref(&S::from_i64(4)))
}

/// The GHZ discriminant; nonzero exactly on the three-qubit GHZ class.
pub fn ghz_discriminant<S: Scalar>(state: &State3<S>) -> S {
    discriminant_on(&PairProducts::of(state), &IDENTITY_SLICE)
}

/// The three algebraically equal degree-4 forms of the discriminant.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminantForms<S> {
    pub f1: S,
    pub f2: S,
    pub f3: S,
}

impl<S: Scalar> DiscriminantForms<S> {
    pub fn all_equal(&self, zt: &ZeroTest) -> bool {
        zt.zero4(&self.f1.sub_ref(&self.f2)) && zt.zero4(&self.f1.sub_ref(&self.f3))
    }
}

pub fn discriminant_forms<S: Scalar>(state: &State3<S>) -> DiscriminantForms<S> {
    let p = PairProducts::of(state);
    let r = |i, j, k, l| p.residual(i, j, k, l);
    let four = S::from_i64(4);
    let sq = |x: S| x.mul_ref(&x);
    DiscriminantForms {
        f1: sq(r(0, 7, 2, 5) + r(1, 6, 3, 4)) - four.clone() * r(2, 4, 0, 6) * r(3, 5, 1, 7),
        f2: sq(r(0, 7, 3, 4) - r(1, 6, 2, 5)) - four.clone() * r(1, 4, 0, 5) * r(3, 6, 2, 7),
        f3: sq(r(0, 7, 2, 5) - r(1, 6, 3, 4)) - four * r(0, 3, 1, 2) * r(4, 7, 5, 6),
    }
}

/// Index quadruples of the 28 minors of the 2×8 matrix whose top row is
/// `a₀ a₂ … a₁₄` and bottom row `a₁ a₃ … a₁₅`, ordered by column pair
/// `(p, q)`, `p < q`, lexicographically. Minor `(p, q)` is
/// `a_{2p}·a_{2q+1} − a_{2p+1}·a_{2q}`.
pub fn minor_indices_2x8() -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::with_capacity(28);
    for p in 0..8 {
        for q in p + 1..8 {
            out.push((2 * p, 2 * q + 1, 2 * p + 1, 2 * q));
        }
    }
    out
}

/// Index quadruples of the 36 minors of the 4×4 matrix with rows
/// `a₀..a₃ / a₄..a₇ / a₈..a₁₁ / a₁₂..a₁₅`, ordered by row pair then column
/// pair, both lexicographic. Minor `(r1,r2;c1,c2)` is
/// `a_{4r1+c1}·a_{4r2+c2} − a_{4r1+c2}·a_{4r2+c1}`.
pub fn minor_indices_4x4() -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::with_capacity(36);
    for r1 in 0..4 {
        for r2 in r1 + 1..4 {
            for c1 in 0..4 {
                for c2 in c1 + 1..4 {
                    out.push((4 * r1 + c1, 4 * r2 + c2, 4 * r1 + c2, 4 * r2 + c1));
                }
            }
        }
    }
    out
}

fn collect<S: Scalar>(p: &PairProducts<S>, idx: &[(usize, usize, usize, usize)]) -> Vec<PairResidual<S>> {
    idx.iter().map(|&(i, j, k, l)| p.pair(i, j, k, l)).collect()
}

pub fn minors_2x8<S: Scalar>(state: &State4<S>) -> Vec<PairResidual<S>> {
    collect(&PairProducts::of(state), &minor_indices_2x8())
}

pub fn minors_4x4<S: Scalar>(state: &State4<S>) -> Vec<PairResidual<S>> {
    collect(&PairProducts::of(state), &minor_indices_4x4())
}
