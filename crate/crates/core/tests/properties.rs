use std::f64::consts::PI;

use proptest::prelude::*;
use qspace::linalg::{dagger, frobenius_distance, is_unitary, mat_mul};
use qspace::random::{random_diagonal_unitary, random_gate, random_qubit};
use qspace::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unitary(seed: u64) -> ComplexMatrix {
    random_gate(&mut rng(seed)).matrix()
}

fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol
}

proptest! {
    #[test]
    fn dagger_is_involution(seed in any::<u64>()) {
        let m = unitary(seed).scale(Complex64::new(1.7, -0.3));
        prop_assert_eq!(dagger(&dagger(&m)), m);
    }

    #[test]
    fn product_is_associative(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (a, b, c) = (unitary(s1), unitary(s2), unitary(s3));
        let left = mat_mul(&mat_mul(&a, &b).unwrap(), &c).unwrap();
        let right = mat_mul(&a, &mat_mul(&b, &c).unwrap()).unwrap();
        prop_assert!(frobenius_distance(&left, &right).unwrap() <= 1e-12);
    }

    #[test]
    fn unitaries_closed_under_product(s1 in any::<u64>(), s2 in any::<u64>()) {
        let p = mat_mul(&unitary(s1), &unitary(s2)).unwrap();
        prop_assert!(is_unitary(&p, 2e-12).unwrap());
    }

    #[test]
    fn global_phase_leaves_bloch_vector(seed in any::<u64>(), gamma in -10.0..10.0f64) {
        let q = random_qubit(&mut rng(seed));
        let d = q.bloch_vector().distance(&q.with_global_phase(gamma).bloch_vector());
        prop_assert!(d <= 1e-12);
        prop_assert!(close(q.bloch_vector().norm(), 1.0, 1e-12));
    }

    #[test]
    fn bloch_angles_round_trip(seed in any::<u64>()) {
        let q = random_qubit(&mut rng(seed));
        let (theta, phi) = q.bloch_vector().angles();
        let back = from_bloch(theta, phi).unwrap();
        prop_assert!(back.same_ray(&q, 1e-9), "{:?} vs {:?}", back, q);
    }

    #[test]
    fn construction_normalizes(re0 in -5.0..5.0f64, im0 in -5.0..5.0f64, re1 in -5.0..5.0f64, im1 in -5.0..5.0f64) {
        prop_assume!(re0.hypot(im0).hypot(re1.hypot(im1)) > 1e-6);
        let q = Qubit::new(Complex64::new(re0, im0), Complex64::new(re1, im1)).unwrap();
        let (p0, p1) = q.probabilities();
        prop_assert!(close(p0 + p1, 1.0, 1e-12));
    }

    #[test]
    fn born_rule_matches_projection(seed in any::<u64>(), draw in any::<u64>()) {
        let q = random_qubit(&mut rng(seed));
        let m = standard_measure(&q, draw);
        let p = projector(m.outcome() as u8).unwrap();
        let v = project(&p, &q);
        prop_assert!(close(m.probability(), v[0].norm_sqr() + v[1].norm_sqr(), 1e-12));
        prop_assert!(m.probability() > 0.0);
        prop_assert_eq!(m.post_state(), m.outcome().basis_state());
    }

    #[test]
    fn basic_measurement_conserves_and_recovers(s1 in any::<u64>(), s2 in any::<u64>()) {
        let q = random_qubit(&mut rng(s1));
        let u = random_diagonal_unitary(&mut rng(s2));
        let measured = basic_measure(&q, &u).unwrap();
        let (p0, p1) = measured.probabilities();
        let (q0, q1) = q.probabilities();
        prop_assert!(close(p0 + p1, 1.0, 1e-12));
        prop_assert!(close(p0, q0, 1e-12) && close(p1, q1, 1e-12));
        prop_assert!(recover(&measured, &u).unwrap().max_deviation(&q) <= 1e-12);

        let (h, dual) = (ComplexMatrix::hadamard(), dual_basis());
        prop_assert!(dual.0.same_ray(&Qubit::ZERO.transformed(&h).unwrap(), 1e-12));
        let in_dual = basic_measure_in_basis(&q, &u, &h).unwrap();
        prop_assert!(recover_in_basis(&in_dual, &u, &h).unwrap().max_deviation(&q) <= 1e-12);
    }

    #[test]
    fn projector_form_equals_diagonal(seed in any::<u64>()) {
        let u = random_diagonal_unitary(&mut rng(seed));
        let d = frobenius_distance(&superposed_projector_form(&u), &u.matrix()).unwrap();
        prop_assert!(d <= 1e-14);
    }

    #[test]
    fn rotation_matches_gate_action(s1 in any::<u64>(), s2 in any::<u64>()) {
        let g = random_gate(&mut rng(s1));
        let q = random_qubit(&mut rng(s2));
        let r = decompose_unitary(&g.matrix()).unwrap();
        prop_assert!(frobenius_distance(&reconstruct_unitary(&r), &g.matrix()).unwrap() <= 1e-10);
        let rotated = rotate_bloch(&r, &q.bloch_vector());
        let direct = apply_unitary(&g, &q).bloch_vector();
        prop_assert!(rotated.distance(&direct) <= 1e-10);
    }

    #[test]
    fn global_phase_of_gate_is_invisible(seed in any::<u64>(), gamma in -PI..PI) {
        let g = random_gate(&mut rng(seed));
        let shifted = UnitaryGate2::new(g.phi() + gamma, g.alpha(), g.beta()).unwrap();
        let a = decompose_unitary(&g.matrix()).unwrap();
        let b = decompose_unitary(&shifted.matrix()).unwrap();
        let v = BlochVector::new(0.0, 0.6, 0.8).unwrap();
        prop_assert!(rotate_bloch(&a, &v).distance(&rotate_bloch(&b, &v)) <= 1e-10);
    }

    #[test]
    fn diagonal_gates_rotate_about_z(seed in any::<u64>()) {
        let u = random_diagonal_unitary(&mut rng(seed));
        let r = decompose_unitary(&u.matrix()).unwrap();
        let [x, y, z] = r.axis();
        prop_assert!(r.theta() < 1e-12 || (x.abs() <= 1e-12 && y.abs() <= 1e-12 && close(z.abs(), 1.0, 1e-12)));
        prop_assert!(classify_lattice(&u.matrix()).unwrap().is_diagonal);
    }

    #[test]
    fn tilted_axis_needs_off_diagonal_entries(seed in any::<u64>()) {
        let g = random_gate(&mut rng(seed));
        let r = decompose_unitary(&g.matrix()).unwrap();
        let [x, y, _] = r.axis();
        let m = g.matrix();
        let off = m.get(0, 1).norm().max(m.get(1, 0).norm());
        if x.hypot(y) * (r.theta() / 2.0).sin() > 1e-9 {
            prop_assert!(off > 0.0);
        }
    }

    #[test]
    fn lattice_membership_tracks_beta(seed in any::<u64>(), log_beta in -16.0..-8.0f64) {
        let g = random_gate(&mut rng(seed));
        let scale = 10f64.powf(log_beta);
        let alpha = Complex64::from_polar((1.0 - scale * scale).sqrt(), g.alpha().arg());
        let beta = Complex64::from_polar(scale, g.beta().arg());
        let gate = UnitaryGate2::new(g.phi(), alpha, beta).unwrap();
        let c = classify_lattice(&gate.matrix()).unwrap();
        // Both off-diagonal entries have modulus |beta|, so the residual is sqrt(2)|beta|.
        prop_assert_eq!(c.is_diagonal, c.off_diagonal_residual <= 1e-12);
        if beta.norm() > 1e-12 {
            prop_assert!(!c.is_diagonal);
        } else if beta.norm() * 2f64.sqrt() <= 1e-12 {
            prop_assert!(c.is_diagonal);
        }
    }

    #[test]
    fn only_diagonal_gates_commute_with_z_coordinate(s1 in any::<u64>(), s2 in any::<u64>()) {
        let sphere = fuzzy_sphere(2).unwrap();
        let u = random_diagonal_unitary(&mut rng(s1)).matrix();
        let c = u.commutator(sphere.x3()).unwrap();
        prop_assert!(c.frobenius_norm() == 0.0);

        let g = random_gate(&mut rng(s2));
        prop_assume!(g.beta().norm() > 1e-6);
        let c = g.matrix().commutator(sphere.x3()).unwrap();
        prop_assert!(c.frobenius_norm() > 1e-7);
    }

    #[test]
    fn fuzzy_sphere_invariants(n in 2usize..24) {
        let s = fuzzy_sphere(n).unwrap();
        let report = verify_sphere(&s);
        prop_assert!(report.residuals.all_within(1e-9));
        prop_assert!(close(s.k(), 1.0 / ((n * n - 1) as f64).sqrt(), 1e-15));
        prop_assert!(s.k() <= 1.0 / (n as f64 - 1.0).max(1.0));
    }
}

#[test]
fn register_cells_strictly_increase() {
    let cells: Vec<usize> = (1..=12).map(|q| cells_for_register(q).unwrap()).collect();
    assert!(cells.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(cells[0], 2);
    assert!(cells_for_register(0).is_err() && cells_for_register(13).is_err());
}

#[test]
fn noncommutativity_shrinks_with_size() {
    let ns: Vec<usize> = (2..=64).collect();
    let profile = classical_limit_profile(&ns).unwrap();
    assert!(profile.windows(2).all(|w| w[1].1 < w[0].1));
}
