//! Seeded sampling of SLOCC orbits and of mixed random states for sweeps.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classifier3::Slocc3Class;
use crate::classifier4::{Qubit, Verdict4Kind};
use crate::operator::LocalOperator;
use crate::scalar::{rational, ExactComplex, Scalar};
use crate::state::{QubitState, State3, State4};
use crate::tolerance::ToleranceConfig;

/// Orbit representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Canonical {
    Ghz3,
    W3,
    ABc,
    BAc,
    CAb,
    AbcProduct,
    Ghz4,
    W4,
    C4,
    EprEpr,
    PairOnly4,
    Separable4,
    TripleGhz4,
    TripleW4,
}

impl Canonical {
    pub const ALL: [Canonical; 14] = [
        Canonical::Ghz3,
        Canonical::W3,
        Canonical::ABc,
        Canonical::BAc,
        Canonical::CAb,
        Canonical::AbcProduct,
        Canonical::Ghz4,
        Canonical::W4,
        Canonical::C4,
        Canonical::EprEpr,
        Canonical::PairOnly4,
        Canonical::Separable4,
        Canonical::TripleGhz4,
        Canonical::TripleW4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Canonical::Ghz3 => "ghz3",
            Canonical::W3 => "w3",
            Canonical::ABc => "a_bc",
            Canonical::BAc => "b_ac",
            Canonical::CAb => "c_ab",
            Canonical::AbcProduct => "abc_product",
            Canonical::Ghz4 => "ghz4",
            Canonical::W4 => "w4",
            Canonical::C4 => "c4",
            Canonical::EprEpr => "eprxepr",
            Canonical::PairOnly4 => "paironly4",
            Canonical::Separable4 => "separable4",
            Canonical::TripleGhz4 => "tripleghz4",
            Canonical::TripleW4 => "triplew4",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        let s = s.to_ascii_lowercase();
        Self::ALL.into_iter().find(|c| c.name() == s)
    }

    pub fn n_qubits(self) -> usize {
        match self {
            Canonical::Ghz3
            | Canonical::W3
            | Canonical::ABc
            | Canonical::BAc
            | Canonical::CAb
            | Canonical::AbcProduct => 3,
            _ => 4,
        }
    }

    /// Basis kets with unit coefficients.
    pub fn support(self) -> &'static [usize] {
        match self {
            Canonical::Ghz3 => &[0, 7],
            Canonical::W3 => &[1, 2, 4],
            Canonical::ABc => &[0, 3],
            Canonical::BAc => &[0, 5],
            Canonical::CAb => &[0, 6],
            Canonical::AbcProduct => &[0],
            Canonical::Ghz4 => &[0, 15],
            Canonical::W4 => &[1, 2, 4, 8],
            Canonical::C4 => &[3, 5, 6, 9, 10, 12],
            Canonical::EprEpr => &[0, 3, 12, 15],
            Canonical::PairOnly4 => &[0, 3],
            Canonical::Separable4 => &[0],
            Canonical::TripleGhz4 => &[0, 14],
            Canonical::TripleW4 => &[2, 4, 8],
        }
    }

    /// Class every three-qubit orbit state must receive.
    pub fn class3(self) -> Option<Slocc3Class> {
        Some(match self {
            Canonical::Ghz3 => Slocc3Class::GHZ,
            Canonical::W3 => Slocc3Class::W,
            Canonical::ABc => Slocc3Class::A_BC,
            Canonical::BAc => Slocc3Class::B_AC,
            Canonical::CAb => Slocc3Class::C_AB,
            Canonical::AbcProduct => Slocc3Class::A_B_C,
            _ => return None,
        })
    }

    /// Verdict every four-qubit orbit state must receive.
    pub fn verdict4(self) -> Option<Verdict4Kind> {
        use Qubit::*;
        Some(match self {
            Canonical::Ghz4 => Verdict4Kind::ConsistentWithGhz4,
            Canonical::W4 => Verdict4Kind::ConsistentWithW4,
            Canonical::C4 => Verdict4Kind::GenuineOther,
            Canonical::EprEpr => Verdict4Kind::TwoPairs {
                pairing: [[A, B], [C, D]],
            },
            Canonical::PairOnly4 => Verdict4Kind::OnePairOnly {
                pair: [C, D],
                singles: [A, B],
            },
            Canonical::Separable4 => Verdict4Kind::FullySeparable,
            Canonical::TripleGhz4 => Verdict4Kind::TripleGhz {
                triple: [A, B, C],
                single: D,
            },
            Canonical::TripleW4 => Verdict4Kind::TripleW {
                triple: [A, B, C],
                single: D,
            },
            _ => return None,
        })
    }

    /// Canonical state: unit integer coefficients, normalized when the
    /// backend has square roots.
    pub fn state<S: Scalar, const Q: usize>(self) -> Option<QubitState<S, Q>> {
        if Q != self.n_qubits() {
            return None;
        }
        let s = QubitState::from_basis(self.support()).ok()?;
        Some(s.normalize().state)
    }
}

/// Backends that can be sampled.
pub trait OrbitScalar: Scalar {
    /// One random operator entry.
    fn sample_entry<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Rescales a sampled state: to unit norm for floats, to coprime
    /// Gaussian-integer amplitudes for the exact backend.
    fn tidy<const Q: usize>(state: QubitState<Self, Q>) -> QubitState<Self, Q>;
}

impl OrbitScalar for ExactComplex {
    /// `p/q + i·p'/q'` with `p ∈ [-4, 4]`, `q ∈ [1, 3]`; the imaginary part
    /// is zero half the time.
    fn sample_entry<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let part = |rng: &mut R| rational(rng.random_range(-4..=4), rng.random_range(1..=3));
        let re = part(rng);
        let im = if rng.random_bool(0.5) { rational(0, 1) } else { part(rng) };
        ExactComplex::new(re, im)
    }

    fn tidy<const Q: usize>(state: QubitState<Self, Q>) -> QubitState<Self, Q> {
        state.clear_denominators()
    }
}

impl OrbitScalar for Complex64 {
    /// Real and imaginary parts uniform in `[-2, 2]`.
    fn sample_entry<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Complex64::new(rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0))
    }

    fn tidy<const Q: usize>(state: QubitState<Self, Q>) -> QubitState<Self, Q> {
        state.normalize().state
    }
}

/// Random invertible operator; rejected draws (singular, or outside
/// `det_floor`/`norm_cap` for floats) are resampled.
pub fn sample_operator<S: OrbitScalar, R: Rng + ?Sized>(rng: &mut R, tol: &ToleranceConfig) -> LocalOperator<S> {
    loop {
        let [a, b, c, d] = std::array::from_fn(|_| S::sample_entry(rng));
        if let Ok(op) = LocalOperator::bounded(a, b, c, d, tol) {
            return op;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OrbitOptions {
    /// Use identity operators, returning the canonical state itself.
    pub identity: bool,
    pub tol: Option<ToleranceConfig>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrbitState<S> {
    Three(State3<S>),
    Four(State4<S>),
}

impl<S: Scalar> OrbitState<S> {
    pub fn amplitudes(&self) -> &[S] {
        match self {
            OrbitState::Three(s) => s.amplitudes(),
            OrbitState::Four(s) => s.amplitudes(),
        }
    }

    pub fn three(self) -> Option<State3<S>> {
        match self {
            OrbitState::Three(s) => Some(s),
            OrbitState::Four(_) => None,
        }
    }

    pub fn four(self) -> Option<State4<S>> {
        match self {
            OrbitState::Four(s) => Some(s),
            OrbitState::Three(_) => None,
        }
    }
}

fn orbit_of<S: OrbitScalar, const Q: usize, R: Rng + ?Sized>(
    canonical: Canonical,
    rng: &mut R,
    opts: &OrbitOptions,
) -> QubitState<S, Q> {
    let tol = opts.tol.unwrap_or_default();
    let base: QubitState<S, Q> = canonical.state().expect("qubit count checked by caller");
    if opts.identity {
        return base;
    }
    let ops: [LocalOperator<S>; Q] = std::array::from_fn(|_| sample_operator(rng, &tol));
    S::tidy(base.apply_local(&ops))
}

/// A state `α⊗β⊗γ(⊗δ)|canonical⟩`, deterministic in `seed`.
pub fn random_orbit<S: OrbitScalar>(canonical: Canonical, seed: u64, opts: &OrbitOptions) -> OrbitState<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    orbit_on(canonical, &mut rng, opts)
}

/// Like [`random_orbit`] with a caller-owned generator.
pub fn orbit_on<S: OrbitScalar, R: Rng + ?Sized>(canonical: Canonical, rng: &mut R, opts: &OrbitOptions) -> OrbitState<S> {
    if canonical.n_qubits() == 3 {
        OrbitState::Three(orbit_of(canonical, rng, opts))
    } else {
        OrbitState::Four(orbit_of(canonical, rng, opts))
    }
}

fn sparse_or_dense<S: OrbitScalar, const Q: usize, R: Rng + ?Sized>(rng: &mut R) -> QubitState<S, Q> {
    loop {
        let amps: Vec<S> = if rng.random_bool(0.5) {
            // Sparse entries in {-1, 0, 1} (with occasional i) hit degenerate
            // classes often.
            (0..1 << Q)
                .map(|_| match rng.random_range(0..8) {
                    0 => S::one(),
                    1 => -S::one(),
                    2 => S::i(),
                    _ => S::zero(),
                })
                .collect()
        } else {
            (0..1 << Q).map(|_| S::sample_entry(rng)).collect()
        };
        if let Ok(s) = QubitState::new(amps) {
            return S::tidy(s);
        }
    }
}

/// Random three-qubit state mixing orbit samples of every class, sparse
/// small-integer vectors and dense random vectors.
pub fn random_state3<S: OrbitScalar, R: Rng + ?Sized>(rng: &mut R) -> State3<S> {
    if rng.random_bool(0.5) {
        let c = Canonical::ALL[rng.random_range(0..6)];
        orbit_of(c, rng, &OrbitOptions::default())
    } else {
        sparse_or_dense(rng)
    }
}

/// Four-qubit counterpart of [`random_state3`].
pub fn random_state4<S: OrbitScalar, R: Rng + ?Sized>(rng: &mut R) -> State4<S> {
    if rng.random_bool(0.5) {
        let c = Canonical::ALL[rng.random_range(6..14)];
        orbit_of(c, rng, &OrbitOptions::default())
    } else {
        sparse_or_dense(rng)
    }
}
