//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::time::Instant;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slocc_core::classifier3::{check_alternative_forms, check_not_occur, satisfied_criteria};
use slocc_core::classifier4::{check_ghz4_necessary, check_w4_necessary, classify4};
use slocc_core::invariants::derivation::{verify_ghz3_derivation, verify_w3_derivation, verify_w4_derivation};
use slocc_core::invariants::{discriminant_forms, ghz_discriminant};
use slocc_core::oracle::density::{partial_trace, DensityMatrix};
use slocc_core::oracle::orbit::{random_orbit, random_state3, sample_operator, Canonical, OrbitOptions};
use slocc_core::oracle::rank_classify3;
use slocc_core::scalar::{rational, ExactComplex, Scalar};
use slocc_core::{classify3, Error, LocalOperator, Permutation, Slocc3Class, State3, State4, ToleranceConfig, Verdict4Kind};

type E = ExactComplex;

struct Outcome {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn q(n: i64, d: i64) -> E {
    E::new(rational(n, d), rational(0, 1))
}

fn canonical3() -> Vec<(State3<E>, Slocc3Class)> {
    Canonical::ALL
        .into_iter()
        .filter_map(|c| Some((c.state::<E, 3>()?, c.class3()?)))
        .chain([(State3::from_basis(&[2]).unwrap(), Slocc3Class::A_B_C)])
        .collect()
}

fn exact_orbits3() -> Vec<(State3<E>, Slocc3Class)> {
    let mut out = Vec::new();
    for c in Canonical::ALL.into_iter().filter(|c| c.n_qubits() == 3) {
        for seed in 0..1000 {
            let s = random_orbit::<E>(c, seed, &OrbitOptions::default()).three().unwrap();
            out.push((s, c.class3().unwrap()));
        }
    }
    out
}

fn random_exact_states(n: usize, seed: u64) -> Vec<State3<E>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_state3::<E, _>(&mut rng)).collect()
}

fn criterion1() -> Outcome {
    let mut bad = Vec::new();
    for (s, class) in canonical3() {
        match classify3(&s, &tol()) {
            Ok(r) if r.class == class => {}
            other => bad.push(format!("{class}: {other:?}")),
        }
    }
    check(bad.is_empty(), format!("7 canonical states, mismatches {bad:?}"))
}

fn criterion2() -> Outcome {
    // The discriminant is homogeneous of degree 4, so its value on the unit
    // vector is disc(ψ)/‖ψ‖⁴.
    let unit_disc = |s: &State3<E>| ghz_discriminant(s).try_div(&(s.norm_sqr() * s.norm_sqr())).unwrap();
    let ghz = Canonical::Ghz3.state::<E, 3>().unwrap();
    let mut ok = unit_disc(&ghz) == q(1, 4);
    let ghz_f = Canonical::Ghz3.state::<Complex64, 3>().unwrap();
    ok &= (ghz_discriminant(&ghz_f) - Complex64::new(0.25, 0.0)).norm() < 1e-15;
    for (s, class) in canonical3() {
        if class != Slocc3Class::GHZ {
            ok &= ghz_discriminant(&s).is_zero();
        }
    }
    let mut unequal = 0;
    for s in random_exact_states(10_000, 2) {
        let f = discriminant_forms(&s);
        if !(f.f1 == f.f2 && f.f2 == f.f3) {
            unequal += 1;
        }
    }
    let mut worst = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..10_000 {
        let s = random_state3::<Complex64, _>(&mut rng).normalize().state;
        let f = discriminant_forms(&s);
        worst = worst.max((f.f1 - f.f2).norm()).max((f.f2 - f.f3).norm());
    }
    check(
        ok && unequal == 0 && worst <= 1e-9,
        format!("disc(GHZ)=1/4, zero elsewhere; F1=F2=F3 exact on 10^4 ({unequal} unequal); float max gap {worst:.1e}"),
    )
}

fn criterion3() -> Outcome {
    let mut exact_miss = 0;
    for (s, class) in exact_orbits3() {
        if !matches!(classify3(&s, &tol()), Ok(r) if r.class == class) {
            exact_miss += 1;
        }
    }
    let mut float_report = Vec::new();
    let mut float_ok = true;
    for c in Canonical::ALL.into_iter().filter(|c| c.n_qubits() == 3) {
        let mut misses = 0;
        for seed in 0..1000 {
            let s = random_orbit::<Complex64>(c, seed, &OrbitOptions::default()).three().unwrap();
            match classify3(&s, &tol()) {
                Ok(r) if r.class == c.class3().unwrap() => {}
                Ok(r) => {
                    misses += 1;
                    println!("  float miss {} seed {seed}: got {} warnings {:?}", c.name(), r.class, r.warnings);
                    float_ok &= !r.warnings.is_empty();
                }
                Err(e) => {
                    misses += 1;
                    println!("  float miss {} seed {seed}: {e}", c.name());
                }
            }
        }
        float_ok &= misses <= 1;
        float_report.push(format!("{}:{}/1000", c.name(), 1000 - misses));
    }
    check(
        exact_miss == 0 && float_ok,
        format!("rational {}/6000; float {}", 6000 - exact_miss, float_report.join(" ")),
    )
}

fn criterion4(states: &[State3<E>]) -> Outcome {
    let (mut not_one, mut mismatch, mut not_occur) = (0, 0, 0);
    let mut counts = [0usize; 6];
    for s in states {
        let sat = satisfied_criteria(s, &tol());
        if check_not_occur(s, &tol()) {
            not_occur += 1;
        }
        match classify3(s, &tol()) {
            Ok(r) => {
                counts[Slocc3Class::ALL.iter().position(|c| *c == r.class).unwrap()] += 1;
                if sat.len() != 1 {
                    not_one += 1;
                } else if sat[0] != r.class {
                    mismatch += 1;
                }
            }
            Err(Error::NotOccurViolation(_)) => not_occur += 1,
            Err(_) => mismatch += 1,
        }
    }
    check(
        not_one + mismatch + not_occur == 0,
        format!(
            "{} rational states (per class {counts:?}): {not_one} not exactly one class, {mismatch} mismatches, {not_occur} NotOccur",
            states.len()
        ),
    )
}

fn criterion5(states: &[State3<E>]) -> Outcome {
    let all: Vec<State3<E>> = canonical3().into_iter().map(|(s, _)| s).chain(states.iter().cloned()).collect();
    let bad = all.iter().filter(|s| !check_alternative_forms(*s, &tol()).agrees()).count();
    check(bad == 0, format!("{} states, {bad} disagreements", all.len()))
}

fn criterion6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let t = tol();
    let mut failures = [0; 3];
    for _ in 0..100 {
        let ops3: [LocalOperator<E>; 3] = std::array::from_fn(|_| sample_operator(&mut rng, &t));
        failures[0] += usize::from(!verify_ghz3_derivation(&ops3, &t).all_hold());
        failures[1] += usize::from(!verify_w3_derivation(&ops3, &t).all_hold());
        let ops4: [LocalOperator<E>; 4] = std::array::from_fn(|_| sample_operator(&mut rng, &t));
        failures[2] += usize::from(!verify_w4_derivation(&ops4, &t).all_hold());
    }
    check(
        failures == [0; 3],
        format!("100 operator tuples each; failures ghz3/w3/w4 = {failures:?}"),
    )
}

fn criterion7(states: &[State3<E>]) -> Outcome {
    let mut all: Vec<State3<E>> = canonical3().into_iter().map(|(s, _)| s).collect();
    all.extend(exact_orbits3().into_iter().map(|(s, _)| s));
    all.extend(states.iter().cloned());
    let mut bad = 0;
    for s in &all {
        let a = classify3(s, &tol()).map(|r| r.class);
        let b = rank_classify3(s, &tol());
        if a.is_err() || a != b {
            bad += 1;
        }
    }
    check(bad == 0, format!("{} rational states, {bad} disagreements", all.len()))
}

fn criterion8() -> Outcome {
    use slocc_core::Qubit::*;
    let t = tol();
    let kind = |s: &State4<E>| classify4(s, &t).map(|v| v.kind);
    let abc_d = |ghz: bool| {
        let (triple, single) = ([A, B, C], D);
        if ghz {
            Verdict4Kind::TripleGhz { triple, single }
        } else {
            Verdict4Kind::TripleW { triple, single }
        }
    };
    let phi4 = State4::<E>::from_ints(&[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1]).unwrap();
    let phi_ghz = check_ghz4_necessary(&phi4, &t);
    let facts = [
        ("GHZ(ABC)|0>", kind(&State4::from_basis(&[0, 14]).unwrap()) == Ok(abc_d(true))),
        ("W3|0>", kind(&State4::from_basis(&[2, 4, 8]).unwrap()) == Ok(abc_d(false))),
        ("W3bar|0>", kind(&State4::from_basis(&[12, 10, 6]).unwrap()) == Ok(abc_d(false))),
        (
            "phi4 not TwoPairs",
            !slocc_core::classifier4::check_two_pairs(&phi4, [[A, B], [C, D]], &t).unwrap(),
        ),
        ("phi4 fails GHZ4 second equality", !phi_ghz.equalities[1]),
        ("phi4 fails W4", !check_w4_necessary(&phi4, &t).holds()),
        ("GHZ4 passes", check_ghz4_necessary(&State4::<E>::from_basis(&[0, 15]).unwrap(), &t).holds()),
        ("W4 passes", check_w4_necessary(&State4::<E>::from_basis(&[1, 2, 4, 8]).unwrap(), &t).holds()),
    ];
    let failed: Vec<_> = facts.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    check(
        failed.is_empty(),
        format!(
            "{} facts; phi4 GHZ4 equalities {:?}, inequality {}; failed {failed:?}",
            facts.len(),
            phi_ghz.equalities,
            phi_ghz.inequality
        ),
    )
}

fn outer(u: &[i64]) -> Vec<E> {
    u.iter().flat_map(|&x| u.iter().map(move |&y| q(x * y, 1))).collect()
}

fn criterion9() -> Outcome {
    let t = tol();
    let c4 = Canonical::C4.state::<E, 4>().unwrap();
    let v = classify4(&c4, &t).unwrap();
    let degenerate_fail = v.evidence.flags.iter().all(|(_, ok)| !ok);
    let ghz_first = !check_ghz4_necessary(&c4, &t).equalities[0];
    let w_first = !check_w4_necessary(&c4, &t).linear_equality;
    let symmetric = Permutation::<4>::all().iter().all(|p| c4.permute_qubits(p) == c4);
    let self_complement = c4.complement() == c4;

    // tr_D = (|W⟩⟨W| + |W̄⟩⟨W̄|)/2, with |W⟩⟨W| = w wᵀ/3 for the unit-coefficient w.
    let w = [0, 1, 1, 0, 1, 0, 0, 0];
    let wbar = [0, 0, 0, 1, 0, 1, 1, 0];
    let expect_d: Vec<E> = outer(&w)
        .into_iter()
        .zip(outer(&wbar))
        .map(|(x, y)| (x + y) * q(1, 6))
        .collect();
    let rho_d = partial_trace(&c4, &[3]).unwrap().unit_trace().unwrap();
    let tr_d = rho_d == DensityMatrix::from_entries(8, expect_d).unwrap();

    // tr_CD = (|11⟩⟨11| + |00⟩⟨00|)/6 + (2/3)|Ψ⁺⟩⟨Ψ⁺|.
    let mut expect_cd: Vec<E> = outer(&[0, 1, 1, 0]).into_iter().map(|x| x * q(1, 3)).collect();
    expect_cd[0] = q(1, 6);
    expect_cd[15] = q(1, 6);
    let rho_cd = partial_trace(&c4, &[2, 3]).unwrap().unit_trace().unwrap();
    let tr_cd = rho_cd == DensityMatrix::from_entries(4, expect_cd).unwrap();

    // Every single-qubit trace gives the same three-qubit matrix.
    let identical = (0..3).all(|k| partial_trace(&c4, &[k]).unwrap() == partial_trace(&c4, &[3]).unwrap());

    check(
        degenerate_fail && ghz_first && w_first && symmetric && self_complement && tr_d && tr_cd && identical,
        format!(
            "verdict {}; degenerate all fail {degenerate_fail}; first equalities fail ghz4 {ghz_first} w4 {w_first}; \
             24 perms {symmetric}; complement {self_complement}; tr_D {tr_d}; tr_CD {tr_cd}; single traces equal {identical}",
            v.kind
        ),
    )
}

fn criterion10() -> Outcome {
    let t = tol();
    let o = OrbitOptions::default();
    let ghz = (0..500)
        .filter(|&seed| {
            let s = random_orbit::<E>(Canonical::Ghz4, seed, &o).four().unwrap();
            check_ghz4_necessary(&s, &t).holds()
        })
        .count();
    let w = (0..500)
        .filter(|&seed| {
            let s = random_orbit::<E>(Canonical::W4, seed, &o).four().unwrap();
            check_w4_necessary(&s, &t).holds()
        })
        .count();
    check(ghz == 500 && w == 500, format!("GHZ4 orbits {ghz}/500, W4 orbits {w}/500"))
}

fn main() {
    let start = Instant::now();
    let sweep = random_exact_states(100_000, 4);
    let results: Vec<(usize, &str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, "canonical classification", Box::new(criterion1)),
        (2, "discriminant values", Box::new(criterion2)),
        (3, "orbit invariance", Box::new(criterion3)),
        (4, "completeness and exclusivity", Box::new(|| criterion4(&sweep))),
        (5, "alternative criterion forms", Box::new(|| criterion5(&sweep))),
        (6, "derivation identities", Box::new(criterion6)),
        (7, "rank oracle agreement", Box::new(|| criterion7(&sweep))),
        (8, "four-qubit facts", Box::new(criterion8)),
        (9, "C4 suite", Box::new(criterion9)),
        (10, "necessary-criterion soundness", Box::new(criterion10)),
    ];
    let mut failed = 0;
    for (n, name, run) in &results {
        let t0 = Instant::now();
        let out = run();
        let tag = if out.ok { "PASS" } else { "FAIL" };
        failed += usize::from(!out.ok);
        println!("{tag} criterion {n:>2} {name}: {} [{:.1}s]", out.detail, t0.elapsed().as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed in {:.1}s", results.len() - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
