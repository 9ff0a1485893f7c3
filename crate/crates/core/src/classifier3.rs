//! Three-qubit SLOCC classes.
//!
//! [`classify3`] walks the decision table top-down: a nonzero discriminant
//! means GHZ; otherwise the three column flags
//!
//! | flag              | equalities                       |
//! |-------------------|----------------------------------|
//! | `bc_minors_zero`  | a₀a₃ = a₁a₂ and a₅a₆ = a₄a₇       |
//! | `ac_minors_zero`  | a₁a₄ = a₀a₅ and a₃a₆ = a₂a₇       |
//! | `ab_minors_zero`  | a₃a₅ = a₁a₇ and a₂a₄ = a₀a₆       |
//!
//! select the class. Three of the eight flag patterns cannot occur for any
//! state; hitting one is reported as [`Error::NotOccurViolation`].
//!
//! [`check_class_criterion`] evaluates each class's full equality and
//! inequality set independently of the table, so the two can be compared.

use std::fmt;

use crate::error::{Error, Result};
use crate::invariants::{discriminant_on, PairProducts, PairResidual, IDENTITY_SLICE};
use crate::scalar::Scalar;
use crate::state::{Permutation, State3};
use crate::tolerance::{ToleranceConfig, ZeroTest};

/// The six SLOCC classes of three qubits.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slocc3Class {
    GHZ,
    W,
    /// A separable from an entangled BC pair.
    A_BC,
    B_AC,
    C_AB,
    /// Fully separable.
    A_B_C,
}

impl Slocc3Class {
    pub const ALL: [Slocc3Class; 6] = [
        Slocc3Class::GHZ,
        Slocc3Class::W,
        Slocc3Class::A_BC,
        Slocc3Class::B_AC,
        Slocc3Class::C_AB,
        Slocc3Class::A_B_C,
    ];

    /// Identifier used in records: `GHZ`, `W`, `A_BC`, `B_AC`, `C_AB`, `A_B_C`.
    pub fn label(&self) -> &'static str {
        match self {
            Slocc3Class::GHZ => "GHZ",
            Slocc3Class::W => "W",
            Slocc3Class::A_BC => "A_BC",
            Slocc3Class::B_AC => "B_AC",
            Slocc3Class::C_AB => "C_AB",
            Slocc3Class::A_B_C => "A_B_C",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.label() == s)
    }
}

impl fmt::Display for Slocc3Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Decision-table columns for one state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowFlags {
    pub discriminant_nonzero: bool,
    pub bc_minors_zero: bool,
    pub ac_minors_zero: bool,
    pub ab_minors_zero: bool,
}

impl fmt::Display for RowFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { 'Y' } else { 'N' };
        write!(
            f,
            "disc={} bc={} ac={} ab={}",
            if self.discriminant_nonzero { "nonzero" } else { "zero" },
            yn(self.bc_minors_zero),
            yn(self.ac_minors_zero),
            yn(self.ab_minors_zero)
        )
    }
}

/// Table lookup; `None` for the patterns that cannot occur.
pub fn class_from_flags(flags: &RowFlags) -> Option<Slocc3Class> {
    if flags.discriminant_nonzero {
        return Some(Slocc3Class::GHZ);
    }
    match (flags.bc_minors_zero, flags.ac_minors_zero, flags.ab_minors_zero) {
        (false, false, false) => Some(Slocc3Class::W),
        (false, false, true) => None,
        (false, true, false) => None,
        (false, true, true) => Some(Slocc3Class::A_BC),
        (true, false, false) => None,
        (true, false, true) => Some(Slocc3Class::B_AC),
        (true, true, false) => Some(Slocc3Class::C_AB),
        (true, true, true) => Some(Slocc3Class::A_B_C),
    }
}

/// Outcome of [`classify3`].
#[derive(Debug, Clone, PartialEq)]
pub struct Criterion3Report<S> {
    pub class: Slocc3Class,
    pub discriminant: S,
    pub flags: RowFlags,
    /// The six column residuals, in column order.
    pub residuals: Vec<PairResidual<S>>,
    /// Flags from the first pass when it hit an impossible pattern and the
    /// relaxed retry decided the class.
    pub retried_from: Option<RowFlags>,
    pub warnings: Vec<String>,
}

const BC: [(usize, usize, usize, usize); 2] = [(0, 3, 1, 2), (5, 6, 4, 7)];
const AC: [(usize, usize, usize, usize); 2] = [(1, 4, 0, 5), (3, 6, 2, 7)];
const AB: [(usize, usize, usize, usize); 2] = [(3, 5, 1, 7), (2, 4, 0, 6)];

/// Relaxation applied once after an impossible pattern in float mode.
pub const RETRY_FACTOR: f64 = 10.0;

/// Warn when a residual lands within this factor of its threshold.
const NEAR_THRESHOLD: f64 = 10.0;

fn row_flags<S: Scalar>(p: &PairProducts<S>, disc: &S, zt: &ZeroTest) -> RowFlags {
    let both = |pair: &[(usize, usize, usize, usize); 2]| pair.iter().all(|&r| p.vanishes(zt, r));
    RowFlags {
        discriminant_nonzero: !zt.zero4(disc),
        bc_minors_zero: both(&BC),
        ac_minors_zero: both(&AC),
        ab_minors_zero: both(&AB),
    }
}

fn near_threshold_warnings<S: Scalar>(
    residuals: &[PairResidual<S>],
    disc: &S,
    zt: &ZeroTest,
) -> Vec<String> {
    let near = |ratio: Option<f64>| {
        ratio.is_some_and(|r| r > 1.0 / NEAR_THRESHOLD && r < NEAR_THRESHOLD)
    };
    let mut out = Vec::new();
    if near(zt.ratio4(disc)) {
        out.push(format!(
            "discriminant within x{NEAR_THRESHOLD} of threshold (ratio {:.3e})",
            zt.ratio4(disc).unwrap_or_default()
        ));
    }
    for r in residuals {
        if near(zt.ratio2(&r.value)) {
            out.push(format!(
                "{} within x{NEAR_THRESHOLD} of threshold (ratio {:.3e})",
                r.label(),
                zt.ratio2(&r.value).unwrap_or_default()
            ));
        }
    }
    out
}

/// Classifies a three-qubit state.
pub fn classify3<S: Scalar>(state: &State3<S>, tol: &ToleranceConfig) -> Result<Criterion3Report<S>> {
    let p = PairProducts::of(state);
    let disc = discriminant_on(&p, &IDENTITY_SLICE);
    let zt = ZeroTest::for_amplitudes(state.amplitudes(), tol);
    let residuals: Vec<_> = BC
        .iter()
        .chain(&AC)
        .chain(&AB)
        .map(|&(i, j, k, l)| p.pair(i, j, k, l))
        .collect();

    let flags = row_flags(&p, &disc, &zt);
    let mut warnings = near_threshold_warnings(&residuals, &disc, &zt);
    let (class, flags, retried_from) = match class_from_flags(&flags) {
        Some(class) => (class, flags, None),
        None if S::EXACT => return Err(Error::NotOccurViolation(flags.to_string())),
        None => {
            let relaxed = zt.relaxed(RETRY_FACTOR);
            let second = row_flags(&p, &disc, &relaxed);
            match class_from_flags(&second) {
                Some(class) => {
                    warnings.push(format!(
                        "impossible pattern [{flags}] resolved by x{RETRY_FACTOR} relaxed retry as [{second}]"
                    ));
                    (class, second, Some(flags))
                }
                None => {
                    return Err(Error::NotOccurViolation(format!(
                        "{flags}; relaxed retry gave {second}"
                    )))
                }
            }
        }
    };
    Ok(Criterion3Report {
        class,
        discriminant: disc,
        flags,
        residuals,
        retried_from,
        warnings,
    })
}

/// Outcome of a single class criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionCheck<S> {
    pub holds: bool,
    /// Every residual the criterion evaluated, equalities first.
    pub residuals: Vec<PairResidual<S>>,
}

/// Equalities of the three single-pair classes and the product class.
const A_BC_EQ: [(usize, usize, usize, usize); 6] = [
    (0, 5, 1, 4),
    (2, 7, 3, 6),
    (0, 6, 2, 4),
    (1, 7, 3, 5),
    (0, 7, 3, 4),
    (1, 6, 2, 5),
];
const B_AC_EQ: [(usize, usize, usize, usize); 6] = [
    (0, 3, 1, 2),
    (4, 7, 5, 6),
    (0, 6, 2, 4),
    (1, 7, 3, 5),
    (0, 7, 2, 5),
    (1, 6, 3, 4),
];
const C_AB_EQ: [(usize, usize, usize, usize); 6] = [
    (0, 3, 1, 2),
    (4, 7, 5, 6),
    (0, 5, 1, 4),
    (2, 7, 3, 6),
    (0, 7, 1, 6),
    (2, 5, 3, 4),
];
const A_B_C_EQ: [(usize, usize, usize, usize); 8] = [
    (0, 3, 1, 2),
    (5, 6, 4, 7),
    (0, 5, 1, 4),
    (3, 6, 2, 7),
    (1, 7, 3, 5),
    (2, 4, 0, 6),
    (0, 7, 1, 6),
    (2, 5, 3, 4),
];

/// Whether `state` satisfies the full criterion of `class`.
pub fn check_class_criterion<S: Scalar>(
    state: &State3<S>,
    class: Slocc3Class,
    tol: &ToleranceConfig,
) -> CriterionCheck<S> {
    let p = PairProducts::of(state);
    let zt = ZeroTest::for_amplitudes(state.amplitudes(), tol);
    check_with(&p, &zt, class)
}

fn check_with<S: Scalar>(p: &PairProducts<S>, zt: &ZeroTest, class: Slocc3Class) -> CriterionCheck<S> {
    let eval = |idx: &[(usize, usize, usize, usize)]| -> Vec<PairResidual<S>> {
        idx.iter().map(|&(i, j, k, l)| p.pair(i, j, k, l)).collect()
    };
    let all_zero = |rs: &[PairResidual<S>]| rs.iter().all(|r| zt.zero2(&r.value));
    let some_nonzero = |rs: &[PairResidual<S>]| rs.iter().any(|r| !zt.zero2(&r.value));

    let with_inequality = |eq: &[(usize, usize, usize, usize)], neq: &[(usize, usize, usize, usize)]| {
        let mut residuals = eval(eq);
        let ineq = eval(neq);
        let holds = all_zero(&residuals) && some_nonzero(&ineq);
        residuals.extend(ineq);
        CriterionCheck { holds, residuals }
    };

    match class {
        Slocc3Class::GHZ => {
            let disc = discriminant_on(p, &IDENTITY_SLICE);
            CriterionCheck {
                holds: !zt.zero4(&disc),
                residuals: Vec::new(),
            }
        }
        Slocc3Class::W => {
            let disc = discriminant_on(p, &IDENTITY_SLICE);
            let residuals = eval(&[BC, AC, AB].concat());
            let holds = zt.zero4(&disc)
                && some_nonzero(&residuals[0..2])
                && some_nonzero(&residuals[2..4])
                && some_nonzero(&residuals[4..6]);
            CriterionCheck { holds, residuals }
        }
        Slocc3Class::A_BC => with_inequality(&A_BC_EQ, &[(1, 2, 0, 3), (5, 6, 4, 7)]),
        Slocc3Class::B_AC => with_inequality(&B_AC_EQ, &[(1, 4, 0, 5), (3, 6, 2, 7)]),
        Slocc3Class::C_AB => with_inequality(&C_AB_EQ, &[(2, 4, 0, 6), (3, 5, 1, 7)]),
        Slocc3Class::A_B_C => {
            let residuals = eval(&A_B_C_EQ);
            CriterionCheck {
                holds: all_zero(&residuals),
                residuals,
            }
        }
    }
}

/// Classes whose full criterion holds; a complete and exclusive set of
/// criteria yields exactly one.
pub fn satisfied_criteria<S: Scalar>(state: &State3<S>, tol: &ToleranceConfig) -> Vec<Slocc3Class> {
    let p = PairProducts::of(state);
    let zt = ZeroTest::for_amplitudes(state.amplitudes(), tol);
    Slocc3Class::ALL
        .into_iter()
        .filter(|&c| check_with(&p, &zt, c).holds)
        .collect()
}

/// Primary and alternative forms of the single-pair and product criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlternativeFormsReport {
    /// Six-condition form for B-AC, and the same form on relabeled states
    /// for A-BC and C-AB.
    pub b_ac: (bool, bool),
    pub a_bc: (bool, bool),
    pub c_ab: (bool, bool),
    /// Seven-equality form for A-B-C.
    pub a_b_c: (bool, bool),
}

impl AlternativeFormsReport {
    pub fn agrees(&self) -> bool {
        [self.b_ac, self.a_bc, self.c_ab, self.a_b_c]
            .iter()
            .all(|(primary, alt)| primary == alt)
    }
}

/// `a₀a₇−a₃a₄ = a₂a₅−a₁a₆`, `a₂a₄ = a₀a₆`, `a₃a₅ = a₁a₇`, `a₀a₃ = a₁a₂`,
/// `a₅a₆ = a₄a₇`, and `a₁a₄ ≠ a₀a₅ ∨ a₃a₆ ≠ a₂a₇`.
fn b_ac_six_conditions<S: Scalar>(p: &PairProducts<S>, zt: &ZeroTest) -> bool {
    let linear = p.residual(0, 7, 3, 4) - p.residual(2, 5, 1, 6);
    zt.zero2(&linear)
        && p.vanishes(zt, (2, 4, 0, 6))
        && p.vanishes(zt, (3, 5, 1, 7))
        && p.vanishes(zt, (0, 3, 1, 2))
        && p.vanishes(zt, (5, 6, 4, 7))
        && (!p.vanishes(zt, (1, 4, 0, 5)) || !p.vanishes(zt, (3, 6, 2, 7)))
}

/// The first five of the six conditions plus `a₁a₄ = a₀a₅`, `a₃a₆ = a₂a₇`.
fn a_b_c_seven_equalities<S: Scalar>(p: &PairProducts<S>, zt: &ZeroTest) -> bool {
    let linear = p.residual(0, 7, 3, 4) - p.residual(2, 5, 1, 6);
    zt.zero2(&linear)
        && [(2, 4, 0, 6), (3, 5, 1, 7), (0, 3, 1, 2), (5, 6, 4, 7), (1, 4, 0, 5), (3, 6, 2, 7)]
            .into_iter()
            .all(|r| p.vanishes(zt, r))
}

/// Evaluates both forms of each criterion on `state`. For A-BC and C-AB the
/// six-condition form is applied after swapping the separated qubit into
/// position B.
pub fn check_alternative_forms<S: Scalar>(state: &State3<S>, tol: &ToleranceConfig) -> AlternativeFormsReport {
    let zt = ZeroTest::for_amplitudes(state.amplitudes(), tol);
    let p = PairProducts::of(state);
    let alt_b_after_swap = |a: usize, b: usize| {
        let swapped = state.permute_qubits(&Permutation::swap(a, b).expect("valid swap"));
        b_ac_six_conditions(&PairProducts::of(&swapped), &zt)
    };
    AlternativeFormsReport {
        b_ac: (check_with(&p, &zt, Slocc3Class::B_AC).holds, b_ac_six_conditions(&p, &zt)),
        a_bc: (check_with(&p, &zt, Slocc3Class::A_BC).holds, alt_b_after_swap(0, 1)),
        c_ab: (check_with(&p, &zt, Slocc3Class::C_AB).holds, alt_b_after_swap(1, 2)),
        a_b_c: (check_with(&p, &zt, Slocc3Class::A_B_C).holds, a_b_c_seven_equalities(&p, &zt)),
    }
}

/// True iff the state meets all five of: zero discriminant, `a₃a₅ = a₁a₇`, `a₂a₄ = a₀a₆`,
/// `a₀a₃ ≠ a₁a₂ ∨ a₅a₆ ≠ a₄a₇`, `a₁a₄ ≠ a₀a₅ ∨ a₃a₆ ≠ a₂a₇`. No state does.
pub fn check_not_occur<S: Scalar>(state: &State3<S>, tol: &ToleranceConfig) -> bool {
    let zt = ZeroTest::for_amplitudes(state.amplitudes(), tol);
    let p = PairProducts::of(state);
    zt.zero4(&discriminant_on(&p, &IDENTITY_SLICE))
        && p.vanishes(&zt, (3, 5, 1, 7))
        && p.vanishes(&zt, (2, 4, 0, 6))
        && (!p.vanishes(&zt, (0, 3, 1, 2)) || !p.vanishes(&zt, (5, 6, 4, 7)))
        && (!p.vanishes(&zt, (1, 4, 0, 5)) || !p.vanishes(&zt, (3, 6, 2, 7)))
}
