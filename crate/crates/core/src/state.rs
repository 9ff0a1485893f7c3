//! Pure-state amplitude vectors.
//!
//! Basis convention: the amplitude `a[i]` multiplies the basis ket whose bit
//! string is the binary expansion of `i`, with qubit A the most significant
//! bit. For three qubits `a[4]` is the coefficient of |100⟩ (A=1, B=0, C=0);
//! for four qubits `a[1]` is the coefficient of |0001⟩ (D=1).

use crate::error::{Error, Result};
use crate::operator::LocalOperator;
use crate::scalar::{ExactComplex, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Pure state of `Q` qubits, never the zero vector.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitState<S, const Q: usize> {
    amps: Vec<S>,
}

pub type State3<S> = QubitState<S, 3>;
pub type State4<S> = QubitState<S, 4>;

/// Result of [`QubitState::normalize`].
#[derive(Debug, Clone, PartialEq)]
pub struct Normalized<S, const Q: usize> {
    pub state: QubitState<S, Q>,
    /// False when the backend cannot take square roots and the input was
    /// returned unchanged.
    pub normalized: bool,
}

impl<S: Scalar, const Q: usize> QubitState<S, Q> {
    pub const DIM: usize = 1 << Q;

    pub fn new(amps: Vec<S>) -> Result<Self> {
        if amps.len() != Self::DIM {
            return Err(Error::WrongLength {
                expected: Self::DIM,
                got: amps.len(),
            });
        }
        if amps.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroState);
        }
        Ok(Self { amps })
    }

    /// State with real integer amplitudes.
    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| S::from_i64(v)).collect())
    }

    /// Sum of the given basis kets with unit coefficients.
    pub fn from_basis(indices: &[usize]) -> Result<Self> {
        let mut amps = vec![S::zero(); Self::DIM];
        for &i in indices {
            if i >= Self::DIM {
                return Err(Error::WrongLength {
                    expected: Self::DIM,
                    got: i + 1,
                });
            }
            amps[i] = amps[i].add_ref(&S::one());
        }
        Self::new(amps)
    }

    pub fn amplitudes(&self) -> &[S] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<S> {
        self.amps
    }

    pub fn amplitude(&self, i: usize) -> &S {
        &self.amps[i]
    }

    /// `Σ|a_i|²`.
    pub fn norm_sqr(&self) -> S {
        self.amps
            .iter()
            .fold(S::zero(), |acc, a| acc.add_ref(&a.norm_sqr()))
    }

    /// Multiplies every amplitude by a nonzero scalar.
    pub fn scaled(&self, c: &S) -> Result<Self> {
        Self::new(self.amps.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Rescales to unit norm. The exact backend returns the state unchanged
    /// with `normalized == false`; every criterion is homogeneous so this is
    /// harmless there.
    pub fn normalize(&self) -> Normalized<S, Q> {
        match self.norm_sqr().real_sqrt() {
            Some(norm) => {
                let amps = self
                    .amps
                    .iter()
                    .map(|a| a.try_div(&norm).expect("nonzero state has nonzero norm"))
                    .collect();
                Normalized {
                    state: Self { amps },
                    normalized: true,
                }
            }
            None => Normalized {
                state: self.clone(),
                normalized: false,
            },
        }
    }

    /// Applies `ops[0] ⊗ ops[1] ⊗ … ⊗ ops[Q-1]`, `ops[0]` acting on qubit A.
    pub fn apply_local(&self, ops: &[LocalOperator<S>; Q]) -> Self {
        let mut amps = self.amps.clone();
        for (q, op) in ops.iter().enumerate() {
            let stride = 1usize << (Q - 1 - q);
            for i in 0..Self::DIM {
                if i & stride != 0 {
                    continue;
                }
                let (lo, hi) = op.apply_pair(&amps[i], &amps[i | stride]);
                amps[i] = lo;
                amps[i | stride] = hi;
            }
        }
        // Invertible operators map nonzero vectors to nonzero vectors.
        Self { amps }
    }

    /// Relabels qubits: qubit `q` of `self` becomes qubit `perm.image(q)` of
    /// the result.
    pub fn permute_qubits(&self, perm: &Permutation<Q>) -> Self {
        let mut amps = vec![S::zero(); Self::DIM];
        for (i, a) in self.amps.iter().enumerate() {
            amps[perm.map_index(i)] = a.clone();
        }
        Self { amps }
    }

    /// Moves the amplitude of |z⟩ to the bitwise complement |z̄⟩.
    pub fn complement(&self) -> Self {
        let mask = Self::DIM - 1;
        let mut amps = vec![S::zero(); Self::DIM];
        for (i, a) in self.amps.iter().enumerate() {
            amps[i ^ mask] = a.clone();
        }
        Self { amps }
    }

    /// Converts amplitudes into another backend via `f`.
    pub fn map_backend<T: Scalar>(&self, f: impl Fn(&S) -> T) -> QubitState<T, Q> {
        QubitState {
            amps: self.amps.iter().map(f).collect(),
        }
    }
}

impl<const Q: usize> QubitState<ExactComplex, Q> {
    /// The same ray with Gaussian-integer amplitudes sharing no common
    /// integer factor. Every criterion is homogeneous, so verdicts are
    /// unchanged.
    pub fn clear_denominators(&self) -> Self {
        let parts = || self.amps.iter().flat_map(|a| [&a.re, &a.im]);
        let lcm = parts().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let gcd = parts()
            .map(|r| r.numer() * (&lcm / r.denom()))
            .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
        let factor = BigRational::new(lcm, gcd);
        let amps = self
            .amps
            .iter()
            .map(|a| ExactComplex::new(&a.re * &factor, &a.im * &factor))
            .collect();
        Self { amps }
    }
}

/// Bijection on qubit positions, stored as `images[q]` = new position of
/// qubit `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation<const Q: usize> {
    images: [usize; Q],
}

impl<const Q: usize> Permutation<Q> {
    pub fn new(images: [usize; Q]) -> Result<Self> {
        let mut seen = [false; Q];
        for &p in &images {
            if p >= Q || seen[p] {
                return Err(Error::InvalidPermutation(images.to_vec()));
            }
            seen[p] = true;
        }
        Ok(Self { images })
    }

    pub fn identity() -> Self {
        let mut images = [0; Q];
        for (q, slot) in images.iter_mut().enumerate() {
            *slot = q;
        }
        Self { images }
    }

    /// Transposition of two positions.
    pub fn swap(a: usize, b: usize) -> Result<Self> {
        if a >= Q || b >= Q {
            return Err(Error::InvalidPermutation(vec![a, b]));
        }
        let mut p = Self::identity();
        p.images.swap(a, b);
        Ok(p)
    }

    /// Permutation sending `sources[k]` to position `k`.
    pub fn gather(sources: [usize; Q]) -> Result<Self> {
        let inv = Self::new(sources)?;
        Ok(inv.inverse())
    }

    pub fn image(&self, q: usize) -> usize {
        self.images[q]
    }

    pub fn images(&self) -> [usize; Q] {
        self.images
    }

    pub fn inverse(&self) -> Self {
        let mut images = [0; Q];
        for (q, &p) in self.images.iter().enumerate() {
            images[p] = q;
        }
        Self { images }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Self) -> Self {
        let mut images = [0; Q];
        for (q, slot) in images.iter_mut().enumerate() {
            *slot = next.images[self.images[q]];
        }
        Self { images }
    }

    /// Basis index after relabeling.
    pub fn map_index(&self, i: usize) -> usize {
        let mut out = 0;
        for q in 0..Q {
            let bit = (i >> (Q - 1 - q)) & 1;
            out |= bit << (Q - 1 - self.images[q]);
        }
        out
    }

    /// All `Q!` permutations in lexicographic order of `images`.
    pub fn all() -> Vec<Self> {
        fn extend<const Q: usize>(prefix: &mut Vec<usize>, out: &mut Vec<Permutation<Q>>) {
            if prefix.len() == Q {
                let mut images = [0; Q];
                images.copy_from_slice(prefix);
                out.push(Permutation { images });
                return;
            }
            for p in 0..Q {
                if !prefix.contains(&p) {
                    prefix.push(p);
                    extend(prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        extend(&mut Vec::with_capacity(Q), &mut out);
        out
    }
}
