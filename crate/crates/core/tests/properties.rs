use num_complex::Complex64;
use proptest::prelude::*;
use qutrit_gain_core::linalg::DEFAULT_HERMITIAN_TOL;
use qutrit_gain_core::sampling::{random_density, random_unitary, rng_from_seed, SeededRng};
use qutrit_gain_core::*;

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-5i32..=5, -5i32..=5), rows * cols).prop_map(move |v| {
        let data = v.into_iter().map(|(re, im)| Complex64::new(re as f64, im as f64)).collect();
        ComplexMatrix::new(rows, cols, data).unwrap()
    })
}

fn hermitian(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), dim * dim).prop_map(move |v| {
        let data = v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
        ComplexMatrix::new(dim, dim, data).unwrap().hermitian_part()
    })
}

proptest! {
    #[test]
    fn kron_is_associative(a in int_matrix(2, 2), b in int_matrix(1, 3), c in int_matrix(2, 1)) {
        prop_assert_eq!(kron(&kron(&a, &b), &c), kron(&a, &kron(&b, &c)));
    }

    #[test]
    fn eigen_reconstructs_input(a in (1usize..=4).prop_flat_map(hermitian)) {
        let eig = hermitian_eigen(&a, DEFAULT_HERMITIAN_TOL).unwrap();
        prop_assert!(eig.reconstruct().max_abs_diff(&a) <= 1e-10);
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn gamma_composition_is_a_semigroup(g1 in 0.0f64..=1.0, g2 in 0.0f64..=1.0, seed in any::<u64>()) {
        let rho = random_density(2, &mut rng_from_seed(seed));
        let p1 = GammaParam::new(g1).unwrap();
        let p2 = GammaParam::new(g2).unwrap();
        let twice = apply_channel(&amplitude_damping(p2), &apply_channel(&amplitude_damping(p1), &rho).unwrap()).unwrap();
        // g1 + g2 - g1 g2 evaluated as 1 - (1 - g1)(1 - g2) so sqrt(1 - gamma) is not fed rounding noise
        let composed = GammaParam::new(1.0 - (1.0 - g1) * (1.0 - g2)).unwrap();
        let direct = apply_channel(&amplitude_damping(composed), &rho).unwrap();
        prop_assert!(twice.matrix().max_abs_diff(direct.matrix()) <= 1e-10);
    }

    #[test]
    fn extraction_round_trips(seed in any::<u64>()) {
        let rho = reconstruct(&random_decomposable(seed)).unwrap();
        let back = extract_decomposition(&rho, DEFAULT_FORM_TOL).unwrap();
        prop_assert!(back.reconstruct().unwrap().matrix().max_abs_diff(rho.matrix()) <= 1e-10);
        prop_assert!(back.h1()[0].im == 0.0 && back.h1()[0].re >= 0.0);
        prop_assert!((back.weight(0) + back.weight(1) - 1.0).abs() <= 1e-10);
    }
}

fn random_channel(rng: &mut SeededRng, kraus_count: usize) -> KrausChannel {
    // first two columns of a random unitary form an isometry; its 2x2 blocks are Kraus operators
    let u = random_unitary(2 * kraus_count, rng);
    let ops = (0..kraus_count).map(|k| u.block(2 * k, 0, 2, 2)).collect();
    validate_channel(ops, 1e-10).unwrap()
}

#[test]
fn entropy_is_unitarily_invariant() {
    let mut rng = rng_from_seed(100);
    for dim in 2..=4 {
        for _ in 0..100 {
            let rho = random_density(dim, &mut rng);
            let u = random_unitary(dim, &mut rng);
            let rotated = DensityMatrix::new(u.conjugate(rho.matrix()).unwrap().hermitian_part()).unwrap();
            assert!((rotated.entropy() - rho.entropy()).abs() <= 1e-9);
        }
    }
}

#[test]
fn entropy_bounds() {
    let mut rng = rng_from_seed(101);
    for dim in 1..=4 {
        for _ in 0..100 {
            let s = random_density(dim, &mut rng).entropy();
            assert!(s >= 0.0 && s <= (dim as f64).ln() + 1e-9);
        }
    }
}

#[test]
fn binary_entropy_grid() {
    for k in 0..=10 {
        let p = k as f64 / 10.0;
        let rho = DensityMatrix::from_real_diagonal(&[p, 1.0 - p, 0.0]).unwrap();
        let h = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
        assert!((rho.entropy() - (h(p) + h(1.0 - p))).abs() <= 1e-10, "p = {p}");
    }
}

#[test]
fn portrait_is_always_a_state() {
    let mut rng = rng_from_seed(102);
    for _ in 0..1000 {
        let rho = random_density(3, &mut rng);
        let sigma = qubit_portrait(&rho).unwrap();
        let tr = rho.get(0, 0).re + rho.get(1, 1).re + rho.get(2, 2).re;
        assert!((sigma.matrix().trace().re - tr).abs() <= 1e-15);
        assert!(sigma.eigenvalues()[0] >= -1e-10);
    }
}

#[test]
fn embedding_preserves_entropy() {
    let mut rng = rng_from_seed(103);
    for _ in 0..200 {
        let rho = random_density(3, &mut rng);
        let big = embed_qutrit(&rho).unwrap();
        assert!((big.entropy() - rho.entropy()).abs() <= 1e-10);
        assert_eq!(extract_qutrit(&big, 0.0).unwrap().matrix(), rho.matrix());
    }
}

#[test]
fn channels_preserve_trace_and_positivity() {
    let mut rng = rng_from_seed(104);
    for i in 0..1000 {
        let ch = random_channel(&mut rng, 1 + i % 3);
        let rho = random_density(2, &mut rng);
        let out = apply_channel(&ch, &rho).expect("channel output is a state");
        assert!((out.matrix().trace().re - 1.0).abs() <= 1e-10);
    }
}

#[test]
fn ground_state_is_a_fixed_point() {
    let ground = DensityMatrix::from_real_diagonal(&[1.0, 0.0]).unwrap();
    for k in 0..=20 {
        let g = GammaParam::new(k as f64 / 20.0).unwrap();
        assert_eq!(apply_channel(&amplitude_damping(g), &ground).unwrap().matrix(), ground.matrix());
    }
}

#[test]
fn closed_form_agrees_with_kraus() {
    let mut rng = rng_from_seed(105);
    for _ in 0..100 {
        let rho = random_density(2, &mut rng);
        for k in 0..=10 {
            let g = GammaParam::new(k as f64 / 10.0).unwrap();
            let kraus = apply_channel(&amplitude_damping(g), &rho).unwrap();
            let closed = amplitude_damping_closed_form(g, &rho).unwrap();
            assert!(kraus.matrix().max_abs_diff(closed.matrix()) <= 1e-12);
        }
    }
}

#[test]
fn lifted_damping_keeps_qutrit_support() {
    for seed in 0..200 {
        let rho = reconstruct(&random_decomposable(seed)).unwrap();
        for k in 0..=10 {
            let g = GammaParam::new(k as f64 / 10.0).unwrap();
            let out = apply_channel(&tensor_with_identity(&amplitude_damping(g), 2).unwrap(), &rho).unwrap();
            extract_qutrit(&out, 1e-15).expect("fourth row and column stay empty");
        }
    }
}

#[test]
fn decomposable_ensemble_properties() {
    for seed in 0..1000 {
        let dec = random_decomposable(seed);
        // sampler output satisfies the decomposition invariants
        let checked = TensorDecomposition::new(dec.alpha().clone(), dec.h1(), dec.h2()).unwrap();
        assert_eq!(checked, dec);
        let rho = reconstruct(&dec).unwrap();
        let diag = check_form_conditions(&rho, DEFAULT_FORM_TOL).unwrap();
        assert!(diag.decomposable);
        assert!(diag.minor_residual <= 1e-12 && diag.det3_residual <= 1e-12);

        let rho3 = extract_qutrit(&rho, 0.0).unwrap();
        if dec.weight(0) > 1e-6 {
            let cond = conditional_qubit_state(&rho3).unwrap();
            assert!(cond.purity() >= 1.0 - 1e-9);
        }
    }
}

#[test]
fn rhs_equals_weighted_conditional_entropy() {
    for seed in 0..300 {
        let dec = random_decomposable(seed);
        let rho3 = extract_qutrit(&reconstruct(&dec).unwrap(), 0.0).unwrap();
        let weight = rho3.get(0, 0).re + rho3.get(1, 1).re;
        let cond = conditional_qubit_state(&rho3).unwrap();
        for k in 0..=10 {
            let g = GammaParam::new(k as f64 / 10.0).unwrap();
            let rhs = gain_lower_bound(&dec, &amplitude_damping(g)).unwrap();
            let display = weight * amplitude_damping_closed_form(g, &cond).unwrap().entropy();
            assert!((rhs - display).abs() <= 1e-10, "seed {seed} gamma {}", g.value());
        }
    }
}

#[test]
fn lhs_matches_induced_qutrit_entropies() {
    for seed in 0..300 {
        let dec = random_decomposable(seed);
        let rho4 = reconstruct(&dec).unwrap();
        let rho3 = extract_qutrit(&rho4, 0.0).unwrap();
        let g = GammaParam::new(0.6).unwrap();
        let lhs = entropy_gain(&amplitude_damping(g), &rho4).unwrap();
        let via_qutrit = induced_qutrit_map(g, &rho3).unwrap().entropy() - rho3.entropy();
        assert!((lhs - via_qutrit).abs() <= 1e-10);
    }
}

#[test]
fn general_qubit_channels_satisfy_the_bound() {
    let mut rng = rng_from_seed(106);
    for seed in 0..300 {
        let dec = random_decomposable(seed);
        let ch = random_channel(&mut rng, 2);
        let report = verify_bound(&dec, &ch, DEFAULT_BOUND_TOL).unwrap();
        assert!(report.holds, "seed {seed}: {report:?}");
    }
}
