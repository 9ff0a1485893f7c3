//! Closed-form checks for orbit residuals.
//!
//! Each verifier builds `ops · |canonical⟩` with [`QubitState::apply_local`],
//! evaluates a list of pair residuals on it, and compares them with the same
//! quantities written directly in terms of operator entries. The two sides
//! share no code beyond scalar arithmetic, which makes the verifiers a guard
//! against transcription errors in the criterion tables.
//!
//! Canonical states are built with unit integer amplitudes; the normalizing
//! factor enters residuals squared (1/2 for GHZ, 1/3 for W₃, 1/4 for W₄) and
//! is applied as a rational weight, so exact mode stays exact.

use crate::invariants::{discriminant_on, PairProducts, IDENTITY_SLICE};
use crate::operator::LocalOperator;
use crate::scalar::{product, Scalar};
use crate::state::QubitState;
use crate::tolerance::{ToleranceConfig, ZeroTest};

/// One identity: residual from amplitudes vs closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck<S> {
    pub label: &'static str,
    pub from_amplitudes: S,
    pub closed_form: S,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivationReport<S> {
    pub identities: Vec<IdentityCheck<S>>,
}

impl<S: Scalar> DerivationReport<S> {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck<S>> {
        self.identities.iter().filter(|c| !c.holds)
    }
}

/// Orbit state with its weighted products and zero predicate.
struct Orbit<S> {
    products: PairProducts<S>,
    weight: S,
    zt: ZeroTest,
}

impl<S: Scalar> Orbit<S> {
    fn new<const Q: usize>(
        canonical: &[usize],
        weight: S,
        ops: &[LocalOperator<S>; Q],
        tol: &ToleranceConfig,
    ) -> Self {
        let psi = QubitState::<S, Q>::from_basis(canonical)
            .expect("canonical state is nonzero")
            .apply_local(ops);
        let n2 = weight.to_c64().re
            * psi
                .amplitudes()
                .iter()
                .map(|a| a.to_c64().norm_sqr())
                .sum::<f64>();
        Self {
            products: PairProducts::of(&psi),
            weight,
            zt: ZeroTest::from_norm_sqr::<S>(n2, tol),
        }
    }

    fn residual(&self, i: usize, j: usize, k: usize, l: usize) -> S {
        self.products.residual(i, j, k, l) * self.weight.clone()
    }

    fn check2(&self, label: &'static str, from_amplitudes: S, closed_form: S) -> IdentityCheck<S> {
        let holds = self.zt.zero2(&from_amplitudes.sub_ref(&closed_form));
        IdentityCheck {
            label,
            from_amplitudes,
            closed_form,
            holds,
        }
    }

    fn check4(&self, label: &'static str, from_amplitudes: S, closed_form: S) -> IdentityCheck<S> {
        let holds = self.zt.zero4(&from_amplitudes.sub_ref(&closed_form));
        IdentityCheck {
            label,
            from_amplitudes,
            closed_form,
            holds,
        }
    }
}

fn entries<S: Scalar>(op: &LocalOperator<S>) -> [S; 4] {
    op.entries().clone()
}

/// `α⊗β⊗γ (|000⟩+|111⟩)/√2`: four residual identities and the discriminant.
pub fn verify_ghz3_derivation<S: Scalar>(
    ops: &[LocalOperator<S>; 3],
    tol: &ToleranceConfig,
) -> DerivationReport<S> {
    let orbit = Orbit::new(&[0, 7], S::from_ratio(1, 2), ops, tol);
    let [a1, a2, a3, a4] = entries(&ops[0]);
    let [b1, b2, b3, b4] = entries(&ops[1]);
    let [g1, g2, g3, g4] = entries(&ops[2]);
    let p = |f: &[&S]| product(f);
    let half = S::from_ratio(1, 2);
    let quarter = S::from_ratio(1, 4);

    let det_a = p(&[&a1, &a4]) - p(&[&a3, &a2]);
    let beta_br = p(&[&b2, &b3]) - p(&[&b4, &b1]);

    let disc_amp = discriminant_on(&orbit.products, &IDENTITY_SLICE)
        * orbit.weight.clone()
        * orbit.weight.clone();
    let sq = |x: S| x.mul_ref(&x);
    let disc_closed = quarter
        * sq(p(&[&a1, &a4]) - p(&[&a2, &a3]))
        * sq(p(&[&g3, &g2]) - p(&[&g4, &g1]))
        * sq(p(&[&b2, &b3]) - p(&[&b4, &b1]));

    let identities = vec![
        orbit.check2(
            "a2a4-a0a6",
            orbit.residual(2, 4, 0, 6),
            p(&[&g2, &g1]) * det_a.clone() * beta_br.clone() * half.clone(),
        ),
        orbit.check2(
            "a3a5-a1a7",
            orbit.residual(3, 5, 1, 7),
            p(&[&g4, &g3]) * det_a * beta_br * half.clone(),
        ),
        orbit.check2(
            "a0a7-a3a4",
            orbit.residual(0, 7, 3, 4),
            -(p(&[&a1, &a4]) - p(&[&a2, &a3]))
                * (p(&[&b3, &g3, &b2, &g2]) - p(&[&g4, &b4, &g1, &b1]))
                * half.clone(),
        ),
        orbit.check2(
            "a1a6-a2a5",
            orbit.residual(1, 6, 2, 5),
            -(p(&[&a1, &a4]) - p(&[&a3, &a2]))
                * (p(&[&b3, &g1, &b2, &g4]) - p(&[&g2, &b4, &g3, &b1]))
                * half,
        ),
        orbit.check4("discriminant", disc_amp, disc_closed),
    ];
    DerivationReport { identities }
}

/// `α⊗β⊗γ (|001⟩+|010⟩+|100⟩)/√3`: the ten residual identities.
pub fn verify_w3_derivation<S: Scalar>(
    ops: &[LocalOperator<S>; 3],
    tol: &ToleranceConfig,
) -> DerivationReport<S> {
    let orbit = Orbit::new(&[1, 2, 4], S::from_ratio(1, 3), ops, tol);
    let [a1, a2, a3, a4] = entries(&ops[0]);
    let [b1, b2, b3, b4] = entries(&ops[1]);
    let [g1, g2, g3, g4] = entries(&ops[2]);
    let p = |f: &[&S]| product(f);
    let third = S::from_ratio(1, 3);

    // Bracketed factors as they appear in the closed forms.
    let det_a = p(&[&a1, &a4]) - p(&[&a3, &a2]);
    let det_b = p(&[&b1, &b4]) - p(&[&b2, &b3]);
    let gam = p(&[&g2, &g3]) - p(&[&g4, &g1]);

    let identities = vec![
        orbit.check2(
            "a0a3-a1a2",
            orbit.residual(0, 3, 1, 2),
            p(&[&a1, &a1]) * det_b.clone() * gam.clone() * third.clone(),
        ),
        orbit.check2(
            "a5a6-a4a7",
            orbit.residual(5, 6, 4, 7),
            -p(&[&a3, &a3]) * det_b.clone() * gam.clone() * third.clone(),
        ),
        orbit.check2(
            "a1a4-a0a5",
            orbit.residual(1, 4, 0, 5),
            -p(&[&b1, &b1]) * gam.clone() * det_a.clone() * third.clone(),
        ),
        orbit.check2(
            "a3a6-a2a7",
            orbit.residual(3, 6, 2, 7),
            -p(&[&b3, &b3]) * gam.clone() * det_a.clone() * third.clone(),
        ),
        orbit.check2(
            "a3a5-a1a7",
            orbit.residual(3, 5, 1, 7),
            p(&[&g3, &g3]) * det_b.clone() * det_a.clone() * third.clone(),
        ),
        orbit.check2(
            "a2a4-a0a6",
            orbit.residual(2, 4, 0, 6),
            p(&[&g1, &g1]) * det_b.clone() * det_a.clone() * third.clone(),
        ),
        orbit.check2(
            "a0a7-a3a4",
            orbit.residual(0, 7, 3, 4),
            det_a.clone()
                * (p(&[&g1, &g3]) * (p(&[&b2, &b3]) - p(&[&b1, &b4]))
                    + p(&[&b1, &b3]) * gam.clone())
                * third.clone(),
        ),
        orbit.check2(
            "a1a6-a2a5",
            orbit.residual(1, 6, 2, 5),
            -det_a.clone()
                * (p(&[&g1, &g3]) * det_b.clone() + p(&[&b1, &b3]) * gam.clone())
                * third.clone(),
        ),
        orbit.check2(
            "a0a7-a2a5",
            orbit.residual(0, 7, 2, 5),
            det_b.clone()
                * (p(&[&a1, &a3]) * gam.clone() + p(&[&g1, &g3]) * (p(&[&a2, &a3]) - p(&[&a1, &a4])))
                * third.clone(),
        ),
        orbit.check2(
            "a1a6-a3a4",
            orbit.residual(1, 6, 3, 4),
            -det_b * (p(&[&a1, &a3]) * gam + p(&[&g1, &g3]) * det_a) * third,
        ),
    ];
    DerivationReport { identities }
}

/// `α⊗β⊗γ⊗δ (|0001⟩+|0010⟩+|0100⟩+|1000⟩)/2`: the twelve residual identities
/// behind the four-qubit W conditions.
pub fn verify_w4_derivation<S: Scalar>(
    ops: &[LocalOperator<S>; 4],
    tol: &ToleranceConfig,
) -> DerivationReport<S> {
    let orbit = Orbit::new(&[1, 2, 4, 8], S::from_ratio(1, 4), ops, tol);
    let [a1, _a2, a3, _a4] = entries(&ops[0]);
    let [b1, b2, b3, b4] = entries(&ops[1]);
    let [g1, g2, g3, g4] = entries(&ops[2]);
    let [d1, d2, d3, d4] = entries(&ops[3]);
    let p = |f: &[&S]| product(f);
    let q = S::from_ratio(1, 4);

    let dd = p(&[&d1, &d4]) - p(&[&d3, &d2]);
    let gg = p(&[&g2, &g3]) - p(&[&g4, &g1]);
    let bb = p(&[&b1, &b4]) - p(&[&b3, &b2]);

    let identities = vec![
        orbit.check2(
            "a0a3-a1a2",
            orbit.residual(0, 3, 1, 2),
            q.clone() * p(&[&a1, &a1, &b1, &b1]) * dd.clone() * gg.clone(),
        ),
        orbit.check2(
            "a4a7-a5a6",
            orbit.residual(4, 7, 5, 6),
            q.clone() * p(&[&a1, &a1, &b3, &b3]) * dd.clone() * gg.clone(),
        ),
        orbit.check2(
            "a1a4-a0a5",
            orbit.residual(1, 4, 0, 5),
            q.clone() * p(&[&a1, &a1, &g1, &g1]) * dd.clone() * bb.clone(),
        ),
        orbit.check2(
            "a3a6-a2a7",
            orbit.residual(3, 6, 2, 7),
            q.clone() * p(&[&a1, &a1, &g3, &g3]) * dd.clone() * bb.clone(),
        ),
        orbit.check2(
            "a3a5-a1a7",
            orbit.residual(3, 5, 1, 7),
            -q.clone() * p(&[&a1, &a1, &d3, &d3]) * bb.clone() * gg.clone(),
        ),
        orbit.check2(
            "a2a4-a0a6",
            orbit.residual(2, 4, 0, 6),
            -q.clone() * p(&[&a1, &a1, &d1, &d1]) * bb.clone() * gg.clone(),
        ),
        orbit.check2(
            "a8a11-a9a10",
            orbit.residual(8, 11, 9, 10),
            -q.clone()
                * p(&[&a3, &a3, &b1, &b1])
                * (p(&[&d1, &d4]) - p(&[&d3, &d2]))
                * (p(&[&g4, &g1]) - p(&[&g2, &g3])),
        ),
        orbit.check2(
            "a12a15-a13a14",
            orbit.residual(12, 15, 13, 14),
            q.clone() * p(&[&a3, &a3, &b3, &b3]) * dd.clone() * gg.clone(),
        ),
        orbit.check2(
            "a9a12-a8a13",
            orbit.residual(9, 12, 8, 13),
            q.clone() * p(&[&a3, &a3, &g1, &g1]) * dd.clone() * bb.clone(),
        ),
        orbit.check2(
            "a11a14-a10a15",
            orbit.residual(11, 14, 10, 15),
            q.clone() * p(&[&a3, &a3, &g3, &g3]) * dd * bb.clone(),
        ),
        orbit.check2(
            "a11a13-a9a15",
            orbit.residual(11, 13, 9, 15),
            -q.clone() * p(&[&a3, &a3, &d3, &d3]) * bb * gg,
        ),
        orbit.check2(
            "a10a12-a8a14",
            orbit.residual(10, 12, 8, 14),
            q * p(&[&a3, &a3, &d1, &d1])
                * (p(&[&b1, &b4]) - p(&[&b2, &b3]))
                * (p(&[&g4, &g1]) - p(&[&g2, &g3])),
        ),
    ];
    DerivationReport { identities }
}
