//! Four-qubit verdicts.
//!
//! Degenerate classes (fully separable, one entangled pair, two pairs, an
//! entangled triple with a separate qubit) have criteria that are necessary
//! and sufficient; each is written for one canonical placement and the state
//! is relabeled with [`QubitState::permute_qubits`] for the others.
//!
//! The GHZ₄ and W₄ criteria are necessary only: passing one yields a
//! `ConsistentWith*` verdict, never a membership claim. States failing every
//! criterion are `GenuineOther`.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::invariants::{discriminant_on, is_pair_rule, minor_indices_2x8, minor_indices_4x4, slices, PairProducts, Slice};
use crate::scalar::Scalar;
use crate::state::{Permutation, State4};
use crate::tolerance::{ToleranceConfig, ZeroTest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Qubit {
    A,
    B,
    C,
    D,
}

impl Qubit {
    pub const ALL: [Qubit; 4] = [Qubit::A, Qubit::B, Qubit::C, Qubit::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn name(self) -> char {
        ['A', 'B', 'C', 'D'][self.index()]
    }
}

fn names(qs: &[Qubit]) -> String {
    qs.iter().map(|q| q.name()).collect()
}

fn sorted<T: Ord, const N: usize>(mut qs: [T; N]) -> [T; N] {
    qs.sort();
    qs
}

type Quad = (usize, usize, usize, usize);

/// Verdict kind; placements are stored sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict4Kind {
    FullySeparable,
    OnePairOnly { pair: [Qubit; 2], singles: [Qubit; 2] },
    TwoPairs { pairing: [[Qubit; 2]; 2] },
    TripleGhz { triple: [Qubit; 3], single: Qubit },
    TripleW { triple: [Qubit; 3], single: Qubit },
    ConsistentWithGhz4,
    ConsistentWithW4,
    GenuineOther,
}

impl Verdict4Kind {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict4Kind::FullySeparable => "FullySeparable",
            Verdict4Kind::OnePairOnly { .. } => "OnePairOnly",
            Verdict4Kind::TwoPairs { .. } => "TwoPairs",
            Verdict4Kind::TripleGhz { .. } => "TripleGHZ",
            Verdict4Kind::TripleW { .. } => "TripleW",
            Verdict4Kind::ConsistentWithGhz4 => "ConsistentWithGHZ4",
            Verdict4Kind::ConsistentWithW4 => "ConsistentWithW4",
            Verdict4Kind::GenuineOther => "GenuineOther",
        }
    }

    /// Placement as `|`-separated qubit groups, e.g. `ABC|D` or `CD|A|B`.
    pub fn placement(&self) -> Option<String> {
        match self {
            Verdict4Kind::OnePairOnly { pair, singles } => Some(format!(
                "{}|{}|{}",
                names(pair),
                singles[0].name(),
                singles[1].name()
            )),
            Verdict4Kind::TwoPairs { pairing } => {
                Some(format!("{}|{}", names(&pairing[0]), names(&pairing[1])))
            }
            Verdict4Kind::TripleGhz { triple, single } | Verdict4Kind::TripleW { triple, single } => {
                Some(format!("{}|{}", names(triple), single.name()))
            }
            _ => None,
        }
    }

    /// Definitive verdicts come from necessary-and-sufficient criteria.
    pub fn is_definitive(&self) -> bool {
        !matches!(
            self,
            Verdict4Kind::ConsistentWithGhz4 | Verdict4Kind::ConsistentWithW4 | Verdict4Kind::GenuineOther
        )
    }

    /// The same kind with every qubit `q` renamed to `perm.image(q)`.
    pub fn relabeled(&self, perm: &Permutation<4>) -> Self {
        let m = |q: Qubit| Qubit::from_index(perm.image(q.index())).expect("qubit index");
        match *self {
            Verdict4Kind::OnePairOnly { pair, singles } => Verdict4Kind::OnePairOnly {
                pair: sorted(pair.map(m)),
                singles: sorted(singles.map(m)),
            },
            Verdict4Kind::TwoPairs { pairing } => Verdict4Kind::TwoPairs {
                pairing: sorted(pairing.map(|p| sorted(p.map(m)))),
            },
            Verdict4Kind::TripleGhz { triple, single } => Verdict4Kind::TripleGhz {
                triple: sorted(triple.map(m)),
                single: m(single),
            },
            Verdict4Kind::TripleW { triple, single } => Verdict4Kind::TripleW {
                triple: sorted(triple.map(m)),
                single: m(single),
            },
            other => other,
        }
    }
}

impl fmt::Display for Verdict4Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.placement() {
            Some(p) => write!(f, "{}({p})", self.label()),
            None => f.write_str(self.label()),
        }
    }
}

/// Per-condition outcome of the GHZ₄ necessary criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ghz4Report {
    /// `a₂a₁₃−a₃a₁₂+(a₄a₁₁−a₅a₁₀) ≠ (a₀a₁₅−a₁a₁₄)+(a₆a₉−a₇a₈)`.
    pub inequality: bool,
    /// The three product-of-residual equalities, in listed order.
    pub equalities: [bool; 3],
}

impl Ghz4Report {
    pub fn holds(&self) -> bool {
        self.inequality && self.equalities.iter().all(|&b| b)
    }
}

/// Per-condition outcome of the W₄ necessary criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct W4Report {
    /// `a₂a₁₃−a₃a₁₂+a₄a₁₁−a₅a₁₀ = a₀a₁₅−a₁a₁₄+a₆a₉−a₇a₈`, the first listed
    /// equality.
    pub linear_equality: bool,
    /// Discriminant equalities on the slices `A0, a₄..a₁₁, A1, D0, D1, B0,
    /// B1, C0, C1`, in listed order.
    pub slice_discriminants: [bool; 9],
    /// The product-of-residual equalities shared with the GHZ₄ criterion.
    pub product_equalities: [bool; 3],
    pub inequalities: [bool; 3],
}

impl W4Report {
    /// The thirteen equalities in listed order.
    pub fn equalities(&self) -> Vec<bool> {
        let mut v = vec![self.linear_equality];
        v.extend(self.slice_discriminants);
        v.extend(self.product_equalities);
        v
    }

    pub fn holds(&self) -> bool {
        self.equalities().into_iter().all(|b| b) && self.inequalities.iter().all(|&b| b)
    }
}

/// Evidence gathered by [`classify4`].
#[derive(Debug, Clone, PartialEq)]
pub struct Evidence4<S> {
    /// Every degenerate criterion evaluated, labeled `Kind(placement)`.
    pub flags: Vec<(String, bool)>,
    pub ghz4: Ghz4Report,
    pub w4: W4Report,
    /// The linear combination `(a₂a₁₃−a₃a₁₂)+(a₄a₁₁−a₅a₁₀)−(a₀a₁₅−a₁a₁₄)−(a₆a₉−a₇a₈)`.
    pub linear_invariant: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Slocc4Verdict<S> {
    pub kind: Verdict4Kind,
    pub evidence: Evidence4<S>,
}

const CD_ENTANGLED: [Quad; 4] = [(1, 2, 0, 3), (5, 6, 4, 7), (9, 10, 8, 11), (13, 14, 12, 15)];
const AB_ENTANGLED: [Quad; 4] = [(4, 8, 0, 12), (6, 10, 2, 14), (5, 9, 1, 13), (7, 11, 3, 15)];

const TRIPLE_W_CLAUSES: [[Quad; 4]; 3] = [
    [(3, 5, 1, 7), (10, 12, 8, 14), (2, 4, 0, 6), (11, 13, 9, 15)],
    [(2, 8, 0, 10), (3, 9, 1, 11), (6, 12, 4, 14), (7, 13, 5, 15)],
    [(6, 10, 2, 14), (7, 11, 3, 15), (4, 8, 0, 12), (5, 9, 1, 13)],
];

const W4_INEQUALITIES: [[Quad; 4]; 3] = [
    [(0, 3, 1, 2), (5, 6, 4, 7), (8, 11, 9, 10), (13, 14, 12, 15)],
    [(1, 4, 0, 5), (3, 6, 2, 7), (9, 12, 8, 13), (11, 14, 10, 15)],
    [(3, 5, 1, 7), (2, 4, 0, 6), (11, 13, 9, 15), (10, 12, 8, 14)],
];

/// Pairs of residuals whose products must agree for GHZ₄ and W₄.
const PRODUCT_EQUALITIES: [(Quad, Quad, Quad, Quad); 3] = [
    ((1, 4, 0, 5), (11, 14, 10, 15), (3, 6, 2, 7), (9, 12, 8, 13)),
    ((4, 7, 5, 6), (8, 11, 9, 10), (0, 3, 1, 2), (12, 15, 13, 14)),
    ((3, 5, 1, 7), (10, 12, 8, 14), (2, 4, 0, 6), (11, 13, 9, 15)),
];

const W4_SLICES: [Slice; 9] = [
    slices::A0,
    slices::MIDDLE,
    slices::A1,
    slices::D0,
    slices::D1,
    slices::B0,
    slices::B1,
    slices::C0,
    slices::C1,
];

/// Equalities for A-B-CD: `a_i a_j = a_k a_l` with `i+j = k+l`,
/// `i⊕j = k⊕l`, `i<j`, `k<l`, `i ≡ l` and `j ≡ k (mod 4)`.
pub fn one_pair_equalities() -> &'static [Quad] {
    static TABLE: OnceLock<Vec<Quad>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::new();
        for i in 0..16 {
            for j in i + 1..16 {
                for k in 0..16 {
                    for l in k + 1..16 {
                        if (i, j) != (k, l) && is_pair_rule(i, j, k, l) && i % 4 == l % 4 && j % 4 == k % 4 {
                            out.push((i, j, k, l));
                        }
                    }
                }
            }
        }
        out
    })
}

/// Every admissible residual over 16 amplitudes, `i<j`, `k<l`,
/// `(i,j) < (k,l)`.
pub fn separability_equalities() -> &'static [Quad] {
    static TABLE: OnceLock<Vec<Quad>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::new();
        for i in 0..16 {
            for j in i + 1..16 {
                for k in i..16 {
                    for l in k + 1..16 {
                        if (k, l) > (i, j) && is_pair_rule(i, j, k, l) {
                            out.push((i, j, k, l));
                        }
                    }
                }
            }
        }
        out
    })
}

struct Canon<'a, S> {
    p: &'a PairProducts<S>,
    zt: &'a ZeroTest,
}

impl<S: Scalar> Canon<'_, S> {
    fn all_zero(&self, idx: &[Quad]) -> bool {
        idx.iter().all(|&r| self.p.vanishes(self.zt, r))
    }

    fn any_nonzero(&self, idx: &[Quad]) -> bool {
        idx.iter().any(|&r| !self.p.vanishes(self.zt, r))
    }

    fn disc_zero(&self, s: &Slice) -> bool {
        self.zt.zero4(&discriminant_on(self.p, s))
    }

    fn triple_ghz(&self) -> bool {
        self.all_zero(&minor_indices_2x8()) && (!self.disc_zero(&slices::D0) || !self.disc_zero(&slices::D1))
    }

    fn triple_w(&self) -> bool {
        self.disc_zero(&slices::D0)
            && self.disc_zero(&slices::D1)
            && self.all_zero(&minor_indices_2x8())
            && TRIPLE_W_CLAUSES.iter().all(|c| self.any_nonzero(c))
    }

    fn two_pairs(&self) -> bool {
        self.all_zero(&minor_indices_4x4()) && self.any_nonzero(&AB_ENTANGLED) && self.any_nonzero(&CD_ENTANGLED)
    }

    fn one_pair(&self) -> bool {
        self.all_zero(one_pair_equalities()) && self.any_nonzero(&CD_ENTANGLED)
    }

    fn fully_separable(&self) -> bool {
        self.all_zero(separability_equalities())
    }

    fn linear_invariant(&self) -> S {
        let r = |i, j, k, l| self.p.residual(i, j, k, l);
        r(2, 13, 3, 12)
            .add_ref(&r(4, 11, 5, 10))
            .sub_ref(&r(0, 15, 1, 14))
            .sub_ref(&r(6, 9, 7, 8))
    }

    fn product_equalities(&self) -> [bool; 3] {
        PRODUCT_EQUALITIES.map(|(w, x, y, z)| {
            let r = |(i, j, k, l): Quad| self.p.residual(i, j, k, l);
            self.zt.zero4(&r(w).mul_ref(&r(x)).sub_ref(&r(y).mul_ref(&r(z))))
        })
    }

    fn ghz4(&self) -> Ghz4Report {
        Ghz4Report {
            inequality: !self.zt.zero2(&self.linear_invariant()),
            equalities: self.product_equalities(),
        }
    }

    fn w4(&self) -> W4Report {
        W4Report {
            linear_equality: self.zt.zero2(&self.linear_invariant()),
            slice_discriminants: W4_SLICES.map(|s| self.disc_zero(&s)),
            product_equalities: self.product_equalities(),
            inequalities: W4_INEQUALITIES.map(|c| self.any_nonzero(&c)),
        }
    }
}

fn check_partition(groups: &[&[Qubit]]) -> Result<[usize; 4]> {
    let flat: Vec<usize> = groups.iter().flat_map(|g| g.iter().map(|q| q.index())).collect();
    let mut seen = [false; 4];
    for &q in &flat {
        if seen[q] {
            return Err(Error::InvalidQubits(format!("{groups:?} repeats a qubit")));
        }
        seen[q] = true;
    }
    let mut sources = [0; 4];
    sources.copy_from_slice(&flat);
    Ok(sources)
}

/// Evaluates `f` on the state relabeled so that qubit `sources[k]` sits at
/// position `k`.
fn on_relabeled<S: Scalar, T>(
    state: &State4<S>,
    sources: [usize; 4],
    zt: &ZeroTest,
    f: impl FnOnce(&Canon<'_, S>) -> T,
) -> T {
    let perm = Permutation::gather(sources).expect("partition is a permutation");
    let relabeled = state.permute_qubits(&perm);
    let p = PairProducts::of(&relabeled);
    f(&Canon { p: &p, zt })
}

fn zero_test<S: Scalar>(state: &State4<S>, tol: &ToleranceConfig) -> ZeroTest {
    ZeroTest::for_amplitudes(state.amplitudes(), tol)
}

/// `triple` GHZ-entangled, `single` separate.
pub fn check_triple_ghz<S: Scalar>(
    state: &State4<S>,
    triple: [Qubit; 3],
    single: Qubit,
    tol: &ToleranceConfig,
) -> Result<bool> {
    let sources = check_partition(&[&triple, &[single]])?;
    Ok(on_relabeled(state, sources, &zero_test(state, tol), |c| c.triple_ghz()))
}

/// `triple` W-entangled, `single` separate.
pub fn check_triple_w<S: Scalar>(
    state: &State4<S>,
    triple: [Qubit; 3],
    single: Qubit,
    tol: &ToleranceConfig,
) -> Result<bool> {
    let sources = check_partition(&[&triple, &[single]])?;
    Ok(on_relabeled(state, sources, &zero_test(state, tol), |c| c.triple_w()))
}

/// Two entangled pairs, `pairing[0]` and `pairing[1]`.
pub fn check_two_pairs<S: Scalar>(state: &State4<S>, pairing: [[Qubit; 2]; 2], tol: &ToleranceConfig) -> Result<bool> {
    let sources = check_partition(&[&pairing[0], &pairing[1]])?;
    Ok(on_relabeled(state, sources, &zero_test(state, tol), |c| c.two_pairs()))
}

/// Only `pair` entangled; both `singles` separate.
pub fn check_one_pair<S: Scalar>(
    state: &State4<S>,
    pair: [Qubit; 2],
    singles: [Qubit; 2],
    tol: &ToleranceConfig,
) -> Result<bool> {
    let sources = check_partition(&[&singles, &pair])?;
    Ok(on_relabeled(state, sources, &zero_test(state, tol), |c| c.one_pair()))
}

pub fn check_fully_separable<S: Scalar>(state: &State4<S>, tol: &ToleranceConfig) -> bool {
    let p = PairProducts::of(state);
    Canon { p: &p, zt: &zero_test(state, tol) }.fully_separable()
}

/// Necessary conditions for the GHZ₄ orbit.
pub fn check_ghz4_necessary<S: Scalar>(state: &State4<S>, tol: &ToleranceConfig) -> Ghz4Report {
    let p = PairProducts::of(state);
    Canon { p: &p, zt: &zero_test(state, tol) }.ghz4()
}

/// Necessary conditions for the W₄ orbit.
pub fn check_w4_necessary<S: Scalar>(state: &State4<S>, tol: &ToleranceConfig) -> W4Report {
    let p = PairProducts::of(state);
    Canon { p: &p, zt: &zero_test(state, tol) }.w4()
}

/// The six pair placements, the three pairings and the four triples, in the
/// order [`classify4`] evaluates them.
pub fn degenerate_placements() -> Vec<Verdict4Kind> {
    use Qubit::*;
    let mut out = vec![Verdict4Kind::FullySeparable];
    for (i, &x) in Qubit::ALL.iter().enumerate() {
        for &y in &Qubit::ALL[i + 1..] {
            let rest: Vec<Qubit> = Qubit::ALL.into_iter().filter(|&q| q != x && q != y).collect();
            out.push(Verdict4Kind::OnePairOnly {
                pair: [x, y],
                singles: [rest[0], rest[1]],
            });
        }
    }
    for pairing in [[[A, B], [C, D]], [[A, C], [B, D]], [[A, D], [B, C]]] {
        out.push(Verdict4Kind::TwoPairs { pairing });
    }
    for single in [D, C, B, A] {
        let rest: Vec<Qubit> = Qubit::ALL.into_iter().filter(|&q| q != single).collect();
        out.push(Verdict4Kind::TripleGhz {
            triple: [rest[0], rest[1], rest[2]],
            single,
        });
    }
    for single in [D, C, B, A] {
        let rest: Vec<Qubit> = Qubit::ALL.into_iter().filter(|&q| q != single).collect();
        out.push(Verdict4Kind::TripleW {
            triple: [rest[0], rest[1], rest[2]],
            single,
        });
    }
    out
}

/// Classifies a four-qubit state. Every degenerate criterion is evaluated;
/// two passing at once is reported as [`Error::ConflictingVerdicts`].
pub fn classify4<S: Scalar>(state: &State4<S>, tol: &ToleranceConfig) -> Result<Slocc4Verdict<S>> {
    let zt = zero_test(state, tol);
    let mut flags = Vec::new();
    let mut passed: Vec<Verdict4Kind> = Vec::new();
    for kind in degenerate_placements() {
        let ok = match kind {
            Verdict4Kind::FullySeparable => {
                let p = PairProducts::of(state);
                Canon { p: &p, zt: &zt }.fully_separable()
            }
            Verdict4Kind::OnePairOnly { pair, singles } => {
                let sources = check_partition(&[&singles, &pair])?;
                on_relabeled(state, sources, &zt, |c| c.one_pair())
            }
            Verdict4Kind::TwoPairs { pairing } => {
                let sources = check_partition(&[&pairing[0], &pairing[1]])?;
                on_relabeled(state, sources, &zt, |c| c.two_pairs())
            }
            Verdict4Kind::TripleGhz { triple, single } => {
                let sources = check_partition(&[&triple, &[single]])?;
                on_relabeled(state, sources, &zt, |c| c.triple_ghz())
            }
            Verdict4Kind::TripleW { triple, single } => {
                let sources = check_partition(&[&triple, &[single]])?;
                on_relabeled(state, sources, &zt, |c| c.triple_w())
            }
            _ => unreachable!("only degenerate kinds are enumerated"),
        };
        flags.push((kind.to_string(), ok));
        if ok {
            passed.push(kind);
        }
    }
    if passed.len() > 1 {
        return Err(Error::ConflictingVerdicts(passed[0].to_string(), passed[1].to_string()));
    }

    let p = PairProducts::of(state);
    let canon = Canon { p: &p, zt: &zt };
    let ghz4 = canon.ghz4();
    let w4 = canon.w4();
    let kind = match passed.first() {
        Some(&k) => k,
        None if ghz4.holds() => Verdict4Kind::ConsistentWithGhz4,
        None if w4.holds() => Verdict4Kind::ConsistentWithW4,
        None => Verdict4Kind::GenuineOther,
    };
    Ok(Slocc4Verdict {
        kind,
        evidence: Evidence4 {
            flags,
            ghz4,
            w4,
            linear_invariant: canon.linear_invariant(),
        },
    })
}
