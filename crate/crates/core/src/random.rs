//! Uniform sampling of states and gates, used by the property and
//! acceptance suites.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::measurement::DiagonalUnitary;
use crate::qubit::Qubit;
use crate::rotation::UnitaryGate2;

/// Uniform point on the unit 3-sphere in C², by rejection from the cube.
fn unit_pair<R: Rng + ?Sized>(rng: &mut R) -> (Complex64, Complex64) {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let r2 = v.iter().map(|x| x * x).sum::<f64>();
        if r2 > 1e-4 && r2 <= 1.0 {
            let r = r2.sqrt();
            return (Complex64::new(v[0] / r, v[1] / r), Complex64::new(v[2] / r, v[3] / r));
        }
    }
}

/// Haar-random pure state.
pub fn random_qubit<R: Rng + ?Sized>(rng: &mut R) -> Qubit {
    let (a, b) = unit_pair(rng);
    Qubit::new(a, b).expect("nonzero pair")
}

/// Haar-random SU(2) element times a uniform global phase in [−π, π).
pub fn random_gate<R: Rng + ?Sized>(rng: &mut R) -> UnitaryGate2 {
    let (alpha, beta) = unit_pair(rng);
    let phi = rng.random_range(-PI..PI);
    UnitaryGate2::new(phi, alpha, beta).expect("unit pair")
}

/// Diagonal unitary with uniform `φ` and `arg α` in [−π, π).
pub fn random_diagonal_unitary<R: Rng + ?Sized>(rng: &mut R) -> DiagonalUnitary {
    let phi = rng.random_range(-PI..PI);
    let gamma = rng.random_range(-PI..PI);
    DiagonalUnitary::from_angles(phi, gamma).expect("unimodular alpha")
}
