//! Explicit `(s|0⟩+t|1⟩) ⊗ (a|00⟩+b|01⟩+c|10⟩+d|11⟩)` factorization of an
//! A-BC state.
//!
//! Exact mode leaves the factors unnormalized: `s = 1` and the pair factor is
//! the first half of the amplitudes (or `s = 0`, `t = 1` when that half is
//! zero). Float mode takes `|s|` as the norm of the first half with the phase
//! of its largest amplitude, so for unit input both factors have unit norm.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::state::State3;
use crate::tolerance::{ToleranceConfig, ZeroTest};

#[derive(Debug, Clone, PartialEq)]
pub struct ProductFactorization<S> {
    pub s: S,
    pub t: S,
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
    /// `bc ≠ ad`.
    pub pair_entangled: bool,
}

impl<S: Scalar> ProductFactorization<S> {
    pub fn pair(&self) -> [&S; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Amplitudes of the tensor product.
    pub fn reassemble(&self) -> Vec<S> {
        [&self.s, &self.t]
            .into_iter()
            .flat_map(|x| self.pair().map(|v| x.mul_ref(v)))
            .collect()
    }
}

fn argmax<S: Scalar>(xs: &[S]) -> usize {
    let mut best = 0;
    for (i, x) in xs.iter().enumerate() {
        if x.magnitude() > xs[best].magnitude() {
            best = i;
        }
    }
    best
}

fn norm<S: Scalar>(xs: &[S]) -> Option<S> {
    xs.iter().fold(S::zero(), |acc, x| acc + x.norm_sqr()).real_sqrt()
}

/// Factors an A-BC state. Other placements are handled by relabeling the
/// state first. Inputs that are not products across `A|BC` fail with
/// [`Error::ReassemblyFailure`].
pub fn factorize_single_pair<S: Scalar>(state: &State3<S>, tol: &ToleranceConfig) -> Result<ProductFactorization<S>> {
    let amps = state.amplitudes();
    let (row0, row1) = amps.split_at(4);
    let n2: f64 = amps.iter().map(|a| a.to_c64().norm_sqr()).sum();
    let row0_n2: f64 = row0.iter().map(|a| a.to_c64().norm_sqr()).sum();
    let row0_empty = if S::EXACT {
        row0.iter().all(Scalar::is_zero)
    } else {
        row0_n2 <= tol.eps2 * n2
    };
    let (reference, other, flip) = if row0_empty { (row1, row0, true) } else { (row0, row1, false) };

    let (x, v) = match norm(reference) {
        Some(n) => {
            let big = &reference[argmax(reference)];
            let phase = big.try_div(&big.norm_sqr().real_sqrt().expect("float backend")).expect("nonzero");
            let x = n.mul_ref(&phase);
            let v: Vec<S> = reference.iter().map(|r| r.try_div(&x).expect("nonzero")).collect();
            (x, v)
        }
        None => (S::one(), reference.to_vec()),
    };
    let k = argmax(&v);
    let y = other[k].try_div(&v[k]).expect("reference entry is the largest");
    let (s, t) = if flip { (y, x) } else { (x, y) };

    let zt = ZeroTest::for_amplitudes(amps, tol);
    let pair_det = v[0].mul_ref(&v[3]).sub_ref(&v[1].mul_ref(&v[2]));
    let [a, b, c, d]: [S; 4] = v.try_into().expect("four entries");
    let f = ProductFactorization {
        s,
        t,
        a,
        b,
        c,
        d,
        pair_entangled: !zt.zero2(&pair_det),
    };

    let deviation: f64 = f
        .reassemble()
        .iter()
        .zip(amps)
        .map(|(r, a)| r.sub_ref(a).to_c64().norm_sqr())
        .sum();
    let ok = if S::EXACT {
        f.reassemble().iter().zip(amps).all(|(r, a)| r == a)
    } else {
        deviation <= tol.eps2 * n2
    };
    if !ok {
        return Err(Error::ReassemblyFailure(deviation.sqrt()));
    }
    Ok(f)
}
