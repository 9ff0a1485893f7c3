//! Named property suites with counterexample dumps.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slocc_core::classifier3::{
    check_alternative_forms, check_not_occur, class_from_flags, satisfied_criteria, RowFlags,
};
use slocc_core::classifier4::{check_ghz4_necessary, check_w4_necessary};
use slocc_core::invariants::derivation::{verify_ghz3_derivation, verify_w3_derivation, verify_w4_derivation, DerivationReport};
use slocc_core::oracle::density::{partial_trace, rank_classify3, DensityMatrix};
use slocc_core::oracle::orbit::{orbit_on, random_state3, sample_operator, Canonical, OrbitOptions};
use slocc_core::scalar::{rational, ExactComplex, Scalar};
use slocc_core::{classify3, classify4, Error, LocalOperator, Permutation, QubitState, Slocc3Class, State3, ToleranceConfig};

use crate::records::Amplitude;

type E = ExactComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    #[value(name = "table1")]
    Table1,
    #[value(name = "appendixA")]
    AppendixA,
    #[value(name = "appendixB")]
    AppendixB,
    #[value(name = "appendixCD")]
    AppendixCd,
    #[value(name = "appendixE")]
    AppendixE,
    #[value(name = "derivations3")]
    Derivations3,
    #[value(name = "oracle-agreement")]
    OracleAgreement,
    #[value(name = "c4-properties")]
    C4Properties,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::AppendixA => "appendixA",
            Suite::AppendixB => "appendixB",
            Suite::AppendixCd => "appendixCD",
            Suite::AppendixE => "appendixE",
            Suite::Derivations3 => "derivations3",
            Suite::OracleAgreement => "oracle-agreement",
            Suite::C4Properties => "c4-properties",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub check: String,
    pub detail: String,
    pub amplitudes: Vec<Amplitude>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub checks: usize,
    pub violations: Vec<Counterexample>,
}

impl SuiteReport {
    fn new(suite: Suite, trials: usize, seed: u64) -> Self {
        Self {
            suite,
            trials,
            seed,
            checks: 0,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn check<const Q: usize>(&mut self, ok: bool, check: &str, state: Option<&QubitState<E, Q>>, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(Counterexample {
                check: check.to_string(),
                detail: detail(),
                amplitudes: state
                    .map(|s| s.amplitudes().iter().map(Amplitude::from_exact).collect())
                    .unwrap_or_default(),
            });
        }
    }

    pub fn render(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(
            w,
            "suite {}: trials {}, seed {}, checks {}, violations {}",
            self.suite.name(),
            self.trials,
            self.seed,
            self.checks,
            self.violations.len()
        )?;
        for v in &self.violations {
            writeln!(w, "VIOLATION {}: {}", v.check, v.detail)?;
            if !v.amplitudes.is_empty() {
                writeln!(w, "  amplitudes {}", serde_json::to_string(&v.amplitudes).expect("serializable"))?;
            }
        }
        writeln!(w, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn canonical3() -> Vec<State3<E>> {
    Canonical::ALL.into_iter().filter_map(|c| c.state::<E, 3>()).collect()
}

fn states(trials: usize, rng: &mut ChaCha8Rng) -> Vec<State3<E>> {
    (0..trials).map(|_| random_state3::<E, _>(rng)).collect()
}

pub fn run(suite: Suite, trials: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SuiteReport::new(suite, trials, seed);
    match suite {
        Suite::Table1 => table1(&mut rep, &mut rng),
        Suite::AppendixA => exclusivity(&mut rep, &mut rng),
        Suite::AppendixB => not_occur(&mut rep, &mut rng),
        Suite::AppendixCd => alternative_forms(&mut rep, &mut rng),
        Suite::AppendixE => w4_necessary(&mut rep, &mut rng),
        Suite::Derivations3 => derivations3(&mut rep, &mut rng),
        Suite::OracleAgreement => oracle_agreement(&mut rep, &mut rng),
        Suite::C4Properties => c4_properties(&mut rep, &mut rng),
    }
    rep
}

fn table1(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) {
    use Slocc3Class::*;
    for bits in 0..16u8 {
        let flags = RowFlags {
            discriminant_nonzero: bits & 8 != 0,
            bc_minors_zero: bits & 4 != 0,
            ac_minors_zero: bits & 2 != 0,
            ab_minors_zero: bits & 1 != 0,
        };
        let expect = match (flags.discriminant_nonzero, bits & 7) {
            (true, _) => Some(GHZ),
            (false, 0) => Some(W),
            (false, 0b011) => Some(A_BC),
            (false, 0b101) => Some(B_AC),
            (false, 0b110) => Some(C_AB),
            (false, 0b111) => Some(A_B_C),
            _ => None,
        };
        let got = class_from_flags(&flags);
        rep.check::<3>(got == expect, "lookup", None, || format!("[{flags}] gave {got:?}, expected {expect:?}"));
    }
    for s in canonical3().into_iter().chain(states(rep.trials, rng)) {
        match classify3(&s, &tol()) {
            Ok(r) => {
                let sat = satisfied_criteria(&s, &tol());
                rep.check(sat == vec![r.class], "exactly-one-class", Some(&s), || {
                    format!("classify3 gave {}, criteria held for {sat:?}", r.class)
                });
            }
            Err(e) => rep.check(false, "classify3", Some(&s), || e.to_string()),
        }
    }
}

fn exclusivity(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) {
    for s in canonical3().into_iter().chain(states(rep.trials, rng)) {
        let sat = satisfied_criteria(&s, &tol());
        rep.check(sat.len() <= 1, "exclusive", Some(&s), || format!("criteria held for {sat:?}"));
    }
}

fn not_occur(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) {
    for s in canonical3().into_iter().chain(states(rep.trials, rng)) {
        rep.check(!check_not_occur(&s, &tol()), "impossible-pattern", Some(&s), || {
            "state meets every condition of the impossible pattern".into()
        });
        if let Err(e @ Error::NotOccurViolation(_)) = classify3(&s, &tol()) {
            rep.check(false, "classify3", Some(&s), || e.to_string());
        }
    }
}

fn alternative_forms(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) {
    for s in canonical3().into_iter().chain(states(rep.trials, rng)) {
        let r = check_alternative_forms(&s, &tol());
        rep.check(r.agrees(), "forms-agree", Some(&s), || format!("{r:?}"));
    }
}

fn derivation_check<S: Scalar>(rep: &mut SuiteReport, name: &str, r: DerivationReport<S>, ops: String) {
    let failed: Vec<String> = r.failures().map(|c| c.label.to_string()).collect();
    rep.check::<3>(failed.is_empty(), name, None, || format!("identities {failed:?} fail for operators {ops}"));
}

fn ops<const Q: usize>(rng: &mut ChaCha8Rng) -> [LocalOperator<E>; Q] {
    std::array::from_fn(|_| sample_operator(rng, &tol()))
}

fn show_ops<const Q: usize>(ops: &[LocalOperator<E>; Q]) -> String {
    let entries: Vec<Vec<String>> = ops
        .iter()
        .map(|o| o.entries().iter().map(|z| format!("{z}")).collect())
        .collect();
    format!("{entries:?}")
}

fn w4_necessary(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) {
    for _ in 0..rep.trials {
        let t: [LocalOperator<E>; 4] = ops(rng);
        derivation_check(rep, "w4-derivation", verify_w4_derivation(&t, &tol()), show_ops(&t));
        let s = orbit_on::<E, _>(Canonical::W4, rng, &OrbitOptions::default()).four().expect("four qubits");
        let r = check_w4_necessary(&s, &tol());
        rep.check(r.holds(), "w4-necessary", Some(&s), || format!("{r:?}"));
    }
}

fn derivations3(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) {
    for _ in 0..rep.trials {
        let t: [LocalOperator<E>; 3] = ops(rng);
        derivation_check(rep, "ghz3-derivation", verify_ghz3_derivation(&t, &tol()), show_ops(&t));
        derivation_check(rep, "w3-derivation", verify_w3_derivation(&t, &tol()), show_ops(&t));
    }
}

fn oracle_agreement(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) {
    let mut all = canonical3();
    for c in Canonical::ALL.into_iter().filter(|c| c.n_qubits() == 3) {
        for _ in 0..rep.trials {
            all.push(orbit_on::<E, _>(c, rng, &OrbitOptions::default()).three().expect("three qubits"));
        }
    }
    all.extend(states(rep.trials, rng));
    for s in all {
        let a = classify3(&s, &tol()).map(|r| r.class);
        let b = rank_classify3(&s, &tol());
        rep.check(a.is_ok() && a == b, "rank-oracle", Some(&s), || format!("criteria {a:?}, ranks {b:?}"));
    }
}

fn outer(u: &[i64], scale: (i64, i64)) -> Vec<E> {
    let c = rational(scale.0, scale.1);
    u.iter()
        .flat_map(|&x| u.iter().map(move |&y| x * y))
        .map(|v| E::new(rational(v, 1) * &c, rational(0, 1)))
        .collect()
}

fn is_mixed(rho: &DensityMatrix<E>) -> bool {
    let purity = rho.entries().iter().fold(E::zero(), |acc, x| acc + x.norm_sqr());
    let t = rho.trace();
    purity != t.mul_ref(&t)
}

fn c4_properties(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) {
    let c4 = Canonical::C4.state::<E, 4>().expect("four qubits");
    let s = Some(&c4);
    let v = classify4(&c4, &tol()).expect("classifies");
    let passed: Vec<_> = v.evidence.flags.iter().filter(|(_, ok)| *ok).map(|(n, _)| n.clone()).collect();
    rep.check(passed.is_empty(), "degenerate-criteria-fail", s, || format!("passed {passed:?}"));
    rep.check(!check_ghz4_necessary(&c4, &tol()).equalities[0], "ghz4-first-equality-fails", s, String::new);
    rep.check(!check_w4_necessary(&c4, &tol()).linear_equality, "w4-first-equality-fails", s, String::new);

    // (1) permutation symmetry, (2) self-complementarity.
    for p in Permutation::<4>::all() {
        rep.check(c4.permute_qubits(&p) == c4, "permutation-symmetric", s, || format!("{:?}", p.images()));
    }
    rep.check(c4.complement() == c4, "self-complementary", s, String::new);

    // (3) single-qubit traces: identical, mixed, and tr_D = (|W⟩⟨W|+|W̄⟩⟨W̄|)/2.
    let norm = |rho: DensityMatrix<E>| rho.unit_trace().expect("nonzero trace");
    let tr_d = norm(partial_trace(&c4, &[3]).expect("valid"));
    for k in 0..4 {
        let rho = norm(partial_trace(&c4, &[k]).expect("valid"));
        rep.check(rho == tr_d && is_mixed(&rho), "single-trace-identical-mixed", s, || format!("qubit {k}"));
    }
    let w_sum: Vec<E> = outer(&[0, 1, 1, 0, 1, 0, 0, 0], (1, 6))
        .into_iter()
        .zip(outer(&[0, 0, 0, 1, 0, 1, 1, 0], (1, 6)))
        .map(|(a, b)| a + b)
        .collect();
    rep.check(tr_d.entries() == &w_sum[..], "tr_D-closed-form", s, || format!("{:?}", tr_d.entries()));

    // (4) two-qubit traces: identical, mixed, and the closed form of tr_CD.
    let tr_cd = norm(partial_trace(&c4, &[2, 3]).expect("valid"));
    for pair in [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]] {
        let rho = norm(partial_trace(&c4, &pair).expect("valid"));
        rep.check(rho == tr_cd && is_mixed(&rho), "pair-trace-identical-mixed", s, || format!("traced {pair:?}"));
    }
    let mut expect = outer(&[0, 1, 1, 0], (1, 3));
    expect[0] = E::new(rational(1, 6), rational(0, 1));
    expect[15] = E::new(rational(1, 6), rational(0, 1));
    rep.check(tr_cd.entries() == &expect[..], "tr_CD-closed-form", s, || format!("{:?}", tr_cd.entries()));

    // Sampled orbit points stay outside every degenerate class.
    for _ in 0..rep.trials {
        let o = orbit_on::<E, _>(Canonical::C4, rng, &OrbitOptions::default()).four().expect("four qubits");
        let v = classify4(&o, &tol());
        let ok = matches!(&v, Ok(v) if v.evidence.flags.iter().all(|(_, ok)| !ok));
        rep.check(ok, "orbit-degenerate-criteria-fail", Some(&o), || format!("{:?}", v.map(|v| v.kind)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_small() {
        for suite in [
            Suite::Table1,
            Suite::AppendixA,
            Suite::AppendixB,
            Suite::AppendixCd,
            Suite::AppendixE,
            Suite::Derivations3,
            Suite::OracleAgreement,
            Suite::C4Properties,
        ] {
            let r = run(suite, 20, 1);
            assert!(r.passed(), "{:?}", r.violations);
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn violations_are_rendered_with_amplitudes() {
        let mut rep = SuiteReport::new(Suite::Table1, 1, 0);
        let s = State3::<E>::from_basis(&[0, 7]).unwrap();
        rep.check(false, "demo", Some(&s), || "forced".into());
        let mut buf = Vec::new();
        rep.render(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("VIOLATION demo: forced"));
        assert!(text.contains(r#"["1/1","0/1"]"#));
        assert!(text.trim_end().ends_with("FAIL"));
    }
}
