use crate::classifier3::Slocc3Class;
use crate::error::{Error, Result};
use crate::invariants::ghz_discriminant;
use crate::scalar::Scalar;
use crate::state::{QubitState, State3};
use crate::tolerance::{ToleranceConfig, ZeroTest};

/// Square matrix over a [`Scalar`] field, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<S> {
    dim: usize,
    entries: Vec<S>,
}

impl<S: Scalar> DensityMatrix<S> {
    pub fn from_entries(dim: usize, entries: Vec<S>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::WrongLength {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn pure<const Q: usize>(state: &QubitState<S, Q>) -> Self {
        let a = state.amplitudes();
        let dim = a.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in a {
            for c in a {
                entries.push(r.mul_ref(&c.conj()));
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn trace(&self) -> S {
        (0..self.dim).fold(S::zero(), |acc, i| acc.add_ref(self.entry(i, i)))
    }

    /// `entry(i,j) = conj(entry(j,i))`, exactly or within `eps2·|trace|`.
    pub fn is_hermitian(&self, tol: &ToleranceConfig) -> bool {
        let bound = tol.eps2 * self.trace().magnitude();
        (0..self.dim).all(|i| {
            (i..self.dim).all(|j| {
                let d = self.entry(i, j).sub_ref(&self.entry(j, i).conj());
                if S::EXACT {
                    d.is_zero()
                } else {
                    d.magnitude() <= bound
                }
            })
        })
    }

    /// Divides by the trace. `None` for a zero trace.
    pub fn unit_trace(&self) -> Option<Self> {
        let t = self.trace();
        let entries = self.entries.iter().map(|e| e.try_div(&t)).collect::<Option<Vec<_>>>()?;
        Some(Self { dim: self.dim, entries })
    }

    /// Determinant of a 2×2 matrix.
    pub fn det2(&self) -> Option<S> {
        (self.dim == 2).then(|| {
            self.entry(0, 0)
                .mul_ref(self.entry(1, 1))
                .sub_ref(&self.entry(0, 1).mul_ref(self.entry(1, 0)))
        })
    }

    /// Spot check of positive semidefiniteness: every 1×1 and 2×2 principal
    /// minor has nonnegative real part (down to `-eps2·trace²`).
    pub fn principal_minors_nonnegative(&self, tol: &ToleranceConfig) -> bool {
        let t = self.trace().magnitude();
        let ok = |x: &S, scale: f64| {
            let re = x.to_c64().re;
            if S::EXACT {
                re >= 0.0 || x.is_zero()
            } else {
                re >= -tol.eps2 * scale
            }
        };
        for i in 0..self.dim {
            if !ok(self.entry(i, i), t) {
                return false;
            }
            for j in i + 1..self.dim {
                let m = self
                    .entry(i, i)
                    .mul_ref(self.entry(j, j))
                    .sub_ref(&self.entry(i, j).mul_ref(self.entry(j, i)));
                if !ok(&m, t * t) {
                    return false;
                }
            }
        }
        true
    }

    /// Same matrix with the kept qubits reordered: new qubit `k` is old
    /// qubit `order[k]`.
    pub fn reorder_qubits(&self, order: &[usize]) -> Result<Self> {
        let n = order.len();
        if 1 << n != self.dim || !is_permutation(order) {
            return Err(Error::InvalidPermutation(order.to_vec()));
        }
        let map = |idx: usize| {
            (0..n).fold(0, |acc, k| {
                let bit = (idx >> (n - 1 - order[k])) & 1;
                acc | bit << (n - 1 - k)
            })
        };
        let mut entries = vec![S::zero(); self.dim * self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                entries[map(i) * self.dim + map(j)] = self.entry(i, j).clone();
            }
        }
        Ok(Self { dim: self.dim, entries })
    }
}

fn is_permutation(order: &[usize]) -> bool {
    let mut seen = vec![false; order.len()];
    order.iter().all(|&q| q < seen.len() && !std::mem::replace(&mut seen[q], true))
}

/// Traces out the qubits in `traced`; the kept qubits keep their relative
/// order. Errors unless `traced` is a nonempty proper subset.
pub fn partial_trace<S: Scalar, const Q: usize>(state: &QubitState<S, Q>, traced: &[usize]) -> Result<DensityMatrix<S>> {
    let mut mask = 0usize;
    for &q in traced {
        if q >= Q || mask & (1 << q) != 0 {
            return Err(Error::InvalidQubits(format!("{traced:?} for {Q} qubits")));
        }
        mask |= 1 << q;
    }
    if traced.is_empty() || traced.len() == Q {
        return Err(Error::InvalidQubits(format!("{traced:?} is not a nonempty proper subset")));
    }
    let kept: Vec<usize> = (0..Q).filter(|q| mask & (1 << q) == 0).collect();
    let gone: Vec<usize> = traced.iter().copied().collect();
    let place = |qubits: &[usize], bits: usize| {
        let n = qubits.len();
        qubits
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &q)| acc | ((bits >> (n - 1 - k)) & 1) << (Q - 1 - q))
    };
    let a = state.amplitudes();
    let dim = 1 << kept.len();
    let mut entries = vec![S::zero(); dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            let mut acc = S::zero();
            for t in 0..1 << gone.len() {
                let env = place(&gone, t);
                let x = &a[place(&kept, r) | env];
                let y = &a[place(&kept, c) | env];
                acc = acc.add_ref(&x.mul_ref(&y.conj()));
            }
            entries[r * dim + c] = acc;
        }
    }
    DensityMatrix::from_entries(dim, entries)
}

/// Rank of a 2×2 density matrix: 1 when `det` vanishes (exactly, or
/// `|det| ≤ eps2·|trace|²`), else 2.
pub fn rank2<S: Scalar>(rho: &DensityMatrix<S>, tol: &ToleranceConfig) -> Result<u8> {
    let det = rho.det2().ok_or(Error::WrongLength {
        expected: 2,
        got: rho.dim(),
    })?;
    let zero = if S::EXACT {
        det.is_zero()
    } else {
        let t = rho.trace().magnitude();
        det.magnitude() <= tol.eps2 * t * t
    };
    Ok(if zero { 1 } else { 2 })
}

/// Ranks of `ρ_A`, `ρ_B`, `ρ_C`.
pub fn reduced_ranks3<S: Scalar>(state: &State3<S>, tol: &ToleranceConfig) -> Result<[u8; 3]> {
    Ok([
        rank2(&partial_trace(state, &[1, 2])?, tol)?,
        rank2(&partial_trace(state, &[0, 2])?, tol)?,
        rank2(&partial_trace(state, &[0, 1])?, tol)?,
    ])
}

/// Classification from reduced ranks, with the discriminant separating GHZ
/// from W when all three ranks are 2.
pub fn rank_classify3<S: Scalar>(state: &State3<S>, tol: &ToleranceConfig) -> Result<Slocc3Class> {
    let ranks = reduced_ranks3(state, tol)?;
    Ok(match ranks {
        [1, 1, 1] => Slocc3Class::A_B_C,
        [1, 2, 2] => Slocc3Class::A_BC,
        [2, 1, 2] => Slocc3Class::B_AC,
        [2, 2, 1] => Slocc3Class::C_AB,
        [2, 2, 2] => {
            let zt = ZeroTest::for_amplitudes(state.amplitudes(), tol);
            if zt.zero4(&ghz_discriminant(state)) {
                Slocc3Class::W
            } else {
                Slocc3Class::GHZ
            }
        }
        other => return Err(Error::ImpossibleRankPattern(other)),
    })
}
