use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slocc_core::classifier3::{check_class_criterion, satisfied_criteria};
use slocc_core::classifier4::classify4;
use slocc_core::invariants::{discriminant_forms, ghz_discriminant, pair_residual, PairProducts};
use slocc_core::oracle::density::{partial_trace, rank_classify3, DensityMatrix};
use slocc_core::oracle::factorize::factorize_single_pair;
use slocc_core::oracle::orbit::{
    random_orbit, random_state3, random_state4, sample_operator, Canonical, OrbitOptions, OrbitScalar,
};
use slocc_core::scalar::{ExactComplex, Scalar};
use slocc_core::{classify3, LocalOperator, Permutation, QubitState, Slocc3Class, State3, State4, ToleranceConfig};

type E = ExactComplex;

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ops<S: OrbitScalar, const Q: usize>(rng: &mut ChaCha8Rng) -> [LocalOperator<S>; Q] {
    std::array::from_fn(|_| sample_operator(rng, &tol()))
}

fn nonzero_entry<S: OrbitScalar>(rng: &mut ChaCha8Rng) -> S {
    loop {
        let c = S::sample_entry(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

#[test]
fn apply_local_composes_and_is_linear() {
    let mut r = rng(1);
    for _ in 0..100 {
        let s: State3<E> = random_state3(&mut r);
        let u: State3<E> = random_state3(&mut r);
        let t: [LocalOperator<E>; 3] = ops(&mut r);
        let t2: [LocalOperator<E>; 3] = ops(&mut r);
        let composed: [LocalOperator<E>; 3] = std::array::from_fn(|q| t[q].compose(&t2[q]));
        assert_eq!(s.apply_local(&composed), s.apply_local(&t2).apply_local(&t));

        let c: E = nonzero_entry(&mut r);
        let sum: Vec<E> = s.amplitudes().iter().zip(u.amplitudes()).map(|(x, y)| x.mul_ref(&c).add_ref(y)).collect();
        if let Ok(sum) = State3::new(sum) {
            let lhs = sum.apply_local(&t);
            let (ts, tu) = (s.apply_local(&t), u.apply_local(&t));
            let rhs: Vec<E> = ts.amplitudes().iter().zip(tu.amplitudes()).map(|(x, y)| x.mul_ref(&c).add_ref(y)).collect();
            assert_eq!(lhs.amplitudes(), &rhs[..]);
        }
    }
}

#[test]
fn complement_is_involution() {
    let mut r = rng(2);
    for _ in 0..1000 {
        let s: State4<E> = random_state4(&mut r);
        assert_eq!(s.complement().complement(), s);
        let f: State3<Complex64> = random_state3(&mut r);
        assert_eq!(f.complement().complement(), f);
    }
}

#[test]
fn permutation_action_composes() {
    let mut r = rng(3);
    let all = Permutation::<4>::all();
    for _ in 0..200 {
        let s: State4<E> = random_state4(&mut r);
        let p1 = all[r.random_range(0..24)];
        let p2 = all[r.random_range(0..24)];
        assert_eq!(s.permute_qubits(&p1).permute_qubits(&p2), s.permute_qubits(&p1.then(&p2)));
    }
}

#[test]
fn residuals_and_discriminant_are_homogeneous() {
    let mut r = rng(4);
    for _ in 0..1000 {
        let s: State3<E> = random_state3(&mut r);
        let c: E = nonzero_entry(&mut r);
        let cs = s.scaled(&c).unwrap();
        let c2 = c.mul_ref(&c);
        let res = |x: &State3<E>| pair_residual(x, (0, 7), (3, 4)).unwrap().value;
        assert_eq!(res(&cs), res(&s).mul_ref(&c2));
        assert_eq!(ghz_discriminant(&cs), ghz_discriminant(&s).mul_ref(&c2).mul_ref(&c2));

        let f: State3<Complex64> = random_state3(&mut r);
        let cf: Complex64 = nonzero_entry(&mut r);
        let fs = f.scaled(&cf).unwrap();
        // Relative error where the value is well away from zero, otherwise
        // error against the natural scale |c|^k ‖a‖^k of a degree-k form.
        let n2 = f.norm_sqr().re * cf.norm_sqr();
        let close = |got: Complex64, want: Complex64, scale: f64| {
            let err = (got - want).norm();
            if want.norm() > 1e-6 * scale {
                err / want.norm() < 1e-12
            } else {
                err < 1e-12 * scale
            }
        };
        let d = ghz_discriminant(&f) * cf.powi(4);
        assert!(close(ghz_discriminant(&fs), d, n2 * n2));
        let rf = |x: &State3<Complex64>| pair_residual(x, (1, 6), (2, 5)).unwrap().value;
        assert!(close(rf(&fs), rf(&f) * cf * cf, n2));
    }
}

fn kron(u: &[E], v: &[E]) -> Vec<E> {
    u.iter().flat_map(|x| v.iter().map(move |y| x.mul_ref(y))).collect()
}

fn random_vec(r: &mut ChaCha8Rng, n: usize) -> Vec<E> {
    loop {
        let v: Vec<E> = (0..n).map(|_| E::sample_entry(r)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

#[test]
fn discriminant_vanishes_on_synthesized_products() {
    let mut r = rng(5);
    let swap_ab = Permutation::swap(0, 1).unwrap();
    let swap_bc = Permutation::swap(1, 2).unwrap();
    for _ in 0..1000 {
        let a_bc = State3::new(kron(&random_vec(&mut r, 2), &random_vec(&mut r, 4))).unwrap();
        let b_ac = State3::new(kron(&random_vec(&mut r, 2), &random_vec(&mut r, 4)))
            .unwrap()
            .permute_qubits(&swap_ab);
        let c_ab = State3::new(kron(&random_vec(&mut r, 2), &random_vec(&mut r, 4)))
            .unwrap()
            .permute_qubits(&swap_ab)
            .permute_qubits(&swap_bc);
        let abc = State3::new(kron(&random_vec(&mut r, 2), &kron(&random_vec(&mut r, 2), &random_vec(&mut r, 2)))).unwrap();
        for s in [a_bc, b_ac, c_ab, abc] {
            let f = discriminant_forms(&s);
            assert!(f.f1.is_zero() && f.f2.is_zero() && f.f3.is_zero());
        }
    }
}

#[test]
fn discriminant_is_slocc_covariant() {
    let mut r = rng(6);
    for _ in 0..300 {
        let s: State3<E> = random_state3(&mut r);
        let t: [LocalOperator<E>; 3] = ops(&mut r);
        let dets = t[0].det().mul_ref(&t[1].det()).mul_ref(&t[2].det());
        assert_eq!(ghz_discriminant(&s.apply_local(&t)), ghz_discriminant(&s).mul_ref(&dets.mul_ref(&dets)));
    }
}

#[test]
fn classify3_orbit_and_scale_invariant() {
    let mut r = rng(7);
    for _ in 0..1000 {
        let s: State3<E> = random_state3(&mut r);
        let class = classify3(&s, &tol()).unwrap().class;
        let t: [LocalOperator<E>; 3] = ops(&mut r);
        assert_eq!(classify3(&s.apply_local(&t), &tol()).unwrap().class, class);
        let c: E = nonzero_entry(&mut r);
        assert_eq!(classify3(&s.scaled(&c).unwrap(), &tol()).unwrap().class, class);
        assert_eq!(satisfied_criteria(&s, &tol()), vec![class]);
        assert!(check_class_criterion(&s, class, &tol()).holds);
        if class != Slocc3Class::GHZ && class != Slocc3Class::W {
            let f = discriminant_forms(&s);
            assert!(f.f1.is_zero() && f.f2.is_zero() && f.f3.is_zero());
        }
    }
}

#[test]
fn classify3_is_permutation_covariant() {
    let s = State3::<E>::from_basis(&[0, 3]).unwrap();
    let moved = s.permute_qubits(&Permutation::swap(0, 1).unwrap());
    assert_eq!(classify3(&moved, &tol()).unwrap().class, Slocc3Class::B_AC);
    let moved = s.permute_qubits(&Permutation::swap(0, 2).unwrap());
    assert_eq!(classify3(&moved, &tol()).unwrap().class, Slocc3Class::C_AB);
}

#[test]
fn float_orbits_agree_with_rank_oracle() {
    for c in Canonical::ALL.into_iter().filter(|c| c.n_qubits() == 3) {
        for seed in 0..1000 {
            let s = random_orbit::<Complex64>(c, seed, &OrbitOptions::default()).three().unwrap();
            assert_eq!(rank_classify3(&s, &tol()).unwrap(), c.class3().unwrap(), "{} seed {seed}", c.name());
        }
    }
}

fn examples4() -> Vec<State4<E>> {
    let mut out: Vec<State4<E>> = Canonical::ALL.into_iter().filter_map(|c| c.state::<E, 4>()).collect();
    for idx in [&[2, 4, 8][..], &[12, 10, 6], &[0, 5], &[0, 6, 9, 15]] {
        out.push(State4::from_basis(idx).unwrap());
    }
    out.push(State4::from_ints(&[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1]).unwrap());
    out
}

#[test]
fn classify4_is_permutation_covariant() {
    for s in examples4() {
        let kind = classify4(&s, &tol()).unwrap().kind;
        for p in Permutation::<4>::all() {
            let moved = classify4(&s.permute_qubits(&p), &tol()).unwrap().kind;
            assert_eq!(moved, kind.relabeled(&p), "{kind} under {:?}", p.images());
        }
    }
}

#[test]
fn degenerate_verdicts_are_orbit_invariant() {
    for c in [
        Canonical::TripleGhz4,
        Canonical::TripleW4,
        Canonical::EprEpr,
        Canonical::PairOnly4,
        Canonical::Separable4,
    ] {
        let expect = c.verdict4().unwrap();
        for seed in 0..500 {
            let s = random_orbit::<E>(c, seed, &OrbitOptions::default()).four().unwrap();
            assert_eq!(classify4(&s, &tol()).unwrap().kind, expect, "{} seed {seed}", c.name());
        }
    }
}

#[test]
fn c4_orbit_fails_degenerate_criteria() {
    for seed in 0..200 {
        let s = random_orbit::<E>(Canonical::C4, seed, &OrbitOptions::default()).four().unwrap();
        let v = classify4(&s, &tol()).unwrap();
        assert!(v.evidence.flags.iter().all(|(_, ok)| !ok), "seed {seed}");
    }
    let c4 = Canonical::C4.state::<E, 4>().unwrap();
    let v = classify4(&c4, &tol()).unwrap();
    assert!(!v.evidence.ghz4.holds() && !v.evidence.w4.holds());
}

#[test]
fn partial_trace_preserves_trace_and_hermiticity() {
    let mut r = rng(8);
    for _ in 0..300 {
        let s: State4<E> = random_state4(&mut r);
        for traced in [&[0][..], &[3], &[1, 2], &[0, 1, 3]] {
            let rho = partial_trace(&s, traced).unwrap();
            assert_eq!(rho.trace(), s.norm_sqr());
            assert!(rho.is_hermitian(&tol()));
        }
        let f: State3<Complex64> = random_state3(&mut r);
        let rho = partial_trace(&f, &[1]).unwrap();
        assert!((rho.trace() - f.norm_sqr()).norm() < 1e-12);
        assert!(rho.is_hermitian(&tol()));
        assert!(rho.principal_minors_nonnegative(&tol()));
        assert!(DensityMatrix::pure(&f).is_hermitian(&tol()));
    }
}

fn assert_reassembles<S: Scalar>(s: &QubitState<S, 3>, exact: bool) {
    let f = factorize_single_pair(s, &tol()).unwrap();
    for (x, y) in f.reassemble().iter().zip(s.amplitudes()) {
        if exact {
            assert_eq!(x, y);
        } else {
            assert!(x.sub_ref(y).magnitude() < 1e-9);
        }
    }
}

#[test]
fn factorization_reassembles_whenever_a_bc_holds() {
    let o = OrbitOptions::default();
    for seed in 0..500 {
        for c in [Canonical::ABc, Canonical::AbcProduct] {
            let s = random_orbit::<E>(c, seed, &o).three().unwrap();
            assert_reassembles(&s, true);
            let f = random_orbit::<Complex64>(c, seed, &o).three().unwrap();
            assert_reassembles(&f, false);
        }
        let g = random_orbit::<E>(Canonical::Ghz3, seed, &o).three().unwrap();
        assert!(factorize_single_pair(&g, &tol()).is_err());
    }
    let products = PairProducts::new(&[E::one(), E::zero()]);
    assert!(products.product(0, 1).is_zero());
}
