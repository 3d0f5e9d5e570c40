//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::io::Write;
use std::process::{Command, Stdio};

use qspace::fuzzy::noncommutativity;
use qspace::random::{random_diagonal_unitary, random_gate, random_qubit};
use qspace::{
    basic_measure, bloch_vector, cells_for_register, decompose_unitary, fuzzy_sphere, projector,
    recover, recover_in_basis, reconstruct_unitary, rotate_bloch, sample_outcomes,
    superposed_projector_form, basic_measure_in_basis, BasisIndex, Complex64, ComplexMatrix,
    DiagonalUnitary, Qubit,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn probability_conservation() -> Outcome {
    let mut r = rng(1);
    let (mut worst_a, mut worst_b) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let q = random_qubit(&mut r);
        let u = random_diagonal_unitary(&mut r);
        let out = basic_measure(&q, &u).map_err(|e| e.to_string())?;
        worst_a = worst_a.max((out.a().norm_sqr() - q.a().norm_sqr()).abs());
        worst_b = worst_b.max((out.b().norm_sqr() - q.b().norm_sqr()).abs());
    }
    check(worst_a <= 1e-14 && worst_b <= 1e-14, format!("max |Δ|a|²| = {worst_a:e}, max |Δ|b|²| = {worst_b:e} (tol 1e-14)"))
}

fn superposed_projector_identity() -> Outcome {
    let mut r = rng(2);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let u = random_diagonal_unitary(&mut r);
        let d = superposed_projector_form(&u).frobenius_distance(&u.matrix()).map_err(|e| e.to_string())?;
        worst = worst.max(d);
    }
    check(worst <= 1e-15, format!("max Frobenius distance = {worst:e} (tol 1e-15)"))
}

fn reversibility() -> Outcome {
    let mut r = rng(3);
    let h = ComplexMatrix::hadamard();
    let (mut worst, mut worst_dual) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let q = random_qubit(&mut r);
        let u = random_diagonal_unitary(&mut r);
        let e = || -> qspace::Result<(f64, f64)> {
            let back = recover(&basic_measure(&q, &u)?, &u)?;
            let back_dual = recover_in_basis(&basic_measure_in_basis(&q, &u, &h)?, &u, &h)?;
            Ok((back.max_deviation(&q), back_dual.max_deviation(&q)))
        };
        let (d, dd) = e().map_err(|e| e.to_string())?;
        worst = worst.max(d);
        worst_dual = worst_dual.max(dd);
    }
    check(worst <= 1e-12 && worst_dual <= 1e-12, format!("max entrywise error {worst:e}, dual basis {worst_dual:e} (tol 1e-12)"))
}

fn projector_algebra() -> Outcome {
    let p0 = projector(0).map_err(|e| e.to_string())?;
    let p1 = projector(1).map_err(|e| e.to_string())?;
    let (m0, m1) = (p0.matrix(), p1.matrix());
    let sq = |m: &ComplexMatrix| m.mat_mul(m).unwrap();
    let idempotent = sq(m0) == *m0 && sq(m1) == *m1;
    let hermitian = m0.dagger() == *m0 && m1.dagger() == *m1;
    let orthogonal = m0.mat_mul(m1).unwrap() == ComplexMatrix::zeros(2, 2)
        && m1.mat_mul(m0).unwrap() == ComplexMatrix::zeros(2, 2);
    let complete = m0.add(m1).unwrap() == ComplexMatrix::identity(2);
    let non_unitary = !m0.is_unitary(1e-6).unwrap() && !m1.is_unitary(1e-6).unwrap();
    check(
        idempotent && hermitian && orthogonal && complete && non_unitary,
        format!("P²=P {idempotent}, P†=P {hermitian}, P₀P₁=0 {orthogonal}, P₀+P₁=I {complete}, non-unitary {non_unitary}"),
    )
}

fn born_rule_sampling() -> Outcome {
    let q = Qubit::new(Complex64::new(0.5, 0.0), Complex64::new(0.75f64.sqrt(), 0.0)).map_err(|e| e.to_string())?;
    if q.a().norm_sqr() != 0.25 {
        return Err(format!("|a|² = {} instead of 0.25", q.a().norm_sqr()));
    }
    let seq = |seed| -> Vec<u8> { sample_outcomes(&q, seed, 100_000).into_iter().map(u8::from).collect() };
    let first = seq(42);
    let again = seq(42);
    let zeros = first.iter().filter(|&&o| o == BasisIndex::Zero as u8).count();
    let freq = zeros as f64 / first.len() as f64;
    // Captured once from the seeded generator; guards against silent generator changes.
    let prefix: String = first[..32].iter().map(|o| char::from(b'0' + o)).collect();
    let frozen = FROZEN_PREFIX_SEED_42;
    check(
        (0.24..=0.26).contains(&freq) && first == again && prefix == frozen,
        format!("frequency of 0 = {freq:.5} (band [0.24, 0.26]); rerun identical: {}; prefix {prefix} (frozen {frozen})", first == again),
    )
}

const FROZEN_PREFIX_SEED_42: &str = "11111011101111101010011001111110";

fn rotation_correspondence() -> Outcome {
    let mut r = rng(6);
    let (mut worst_rec, mut worst_bloch) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let m = random_gate(&mut r).matrix();
        let dec = decompose_unitary(&m).map_err(|e| e.to_string())?;
        worst_rec = worst_rec.max(reconstruct_unitary(&dec).frobenius_distance(&m).unwrap());
        for _ in 0..100 {
            let q = random_qubit(&mut r);
            let moved = bloch_vector(&q.transformed(&m).unwrap());
            let rotated = rotate_bloch(&dec, &bloch_vector(&q));
            worst_bloch = worst_bloch.max(moved.distance(&rotated));
        }
    }
    check(
        worst_rec <= 1e-12 && worst_bloch <= 1e-10,
        format!("max reconstruction residual {worst_rec:e} (tol 1e-12); max Bloch mismatch {worst_bloch:e} (tol 1e-10)"),
    )
}

fn z_axis_restriction() -> Outcome {
    let mut r = rng(7);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let u: DiagonalUnitary = random_diagonal_unitary(&mut r);
        let dec = decompose_unitary(&u.matrix()).map_err(|e| e.to_string())?;
        let [x, y, z] = dec.axis();
        worst = worst.max(x.abs()).max(y.abs()).max((z.abs() - 1.0).abs());
    }
    let h = decompose_unitary(&ComplexMatrix::hadamard()).map_err(|e| e.to_string())?;
    let n = [FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2];
    let h_err = (h.phi() - PI / 2.0)
        .abs()
        .max((h.theta() - PI).abs())
        .max((0..3).map(|k| (h.axis()[k] - n[k]).abs()).fold(0.0, f64::max));
    check(
        worst <= 1e-12 && h_err <= 1e-12,
        format!("max diagonal axis deviation from ±z {worst:e}; Hadamard (φ, θ, n) error {h_err:e} (tol 1e-12)"),
    )
}

fn fuzzy_sphere_identities() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for n in [2usize, 4, 8, 16, 32, 64, 128, 256] {
        let s = fuzzy_sphere(n).map_err(|e| e.to_string())?;
        let exact_k = s.k() == 1.0 / (((n * n - 1) as f64).sqrt()) && s.k() == noncommutativity(n);
        let r = qspace::verify_sphere(&s).residuals;
        let comm = r.commutator_12.max(r.commutator_23).max(r.commutator_31);
        ok &= exact_k && r.casimir <= 1e-10 && comm <= 1e-10;
        lines.push(format!("n={n}: casimir {:.1e}, commutator {:.1e}", r.casimir, comm));
    }
    let s2 = fuzzy_sphere(2).map_err(|e| e.to_string())?;
    let inv_sqrt3 = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
    let pauli_err = s2
        .coordinates()
        .iter()
        .zip(ComplexMatrix::paulis())
        .flat_map(|(x, p)| {
            let target = p.scale(inv_sqrt3);
            x.entries().iter().zip(target.entries().to_vec()).map(|(a, b)| (a - b).norm()).collect::<Vec<_>>()
        })
        .fold(0.0, f64::max);
    ok &= pauli_err <= 1e-15;
    lines.push(format!("n=2 vs σ/√3: {pauli_err:e}"));
    check(ok, lines.join("; "))
}

fn register_correspondence() -> Outcome {
    let bad: Vec<u32> = (1..=12u32).filter(|&n| cells_for_register(n).ok() != Some(2usize.pow(n))).collect();
    check(bad.is_empty(), format!("N in 1..=12 mismatches: {bad:?}"))
}

fn run_cli(args: &[&str], stdin: &str) -> std::io::Result<(i32, String)> {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qspace"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()?;
    child.stdin.take().expect("piped stdin").write_all(stdin.as_bytes())?;
    let out = child.wait_with_output()?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn cli_round_trip() -> Outcome {
    let io = |e: std::io::Error| e.to_string();
    let (c1, state) = run_cli(&["state", "--a-re", "0.6", "--a-im", "0.0", "--b-re", "0.0", "--b-im", "0.8"], "").map_err(io)?;
    let flags = ["--phi", "0.7", "--alpha-re", "0", "--alpha-im", "1"];
    let (c2, measured) = run_cli(&[&["basic"][..], &flags].concat(), &state).map_err(io)?;
    let (c3, recovered) = run_cli(&[&["recover"][..], &flags].concat(), &measured).map_err(io)?;
    let parse = |s: &str| serde_json::from_str::<Qubit>(s).map_err(|e| format!("{e}: {s}"));
    let (q0, q1, q2) = (parse(&state)?, parse(&measured)?, parse(&recovered)?);
    let err = [
        (q2.a().re - q0.a().re).abs(),
        (q2.a().im - q0.a().im).abs(),
        (q2.b().re - q0.b().re).abs(),
        (q2.b().im - q0.b().im).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let changed = q1 != q0;
    let (c4, _) = run_cli(&["fuzzy", "--n", "64", "verify"], "").map_err(io)?;
    check(
        c1 == 0 && c2 == 0 && c3 == 0 && c4 == 0 && changed && err <= 1e-12,
        format!("exit codes {c1}/{c2}/{c3}; max component error {err:e} (tol 1e-12); fuzzy --n 64 verify exit {c4}"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("probability conservation under basic measurement", probability_conservation),
        ("superposed-projector identity", superposed_projector_identity),
        ("reversibility (computational and dual basis)", reversibility),
        ("projector algebra", projector_algebra),
        ("Born-rule sampling", born_rule_sampling),
        ("rotation correspondence", rotation_correspondence),
        ("z-axis restriction and Hadamard decomposition", z_axis_restriction),
        ("fuzzy sphere identities", fuzzy_sphere_identities),
        ("register correspondence", register_correspondence),
        ("CLI round trip and fuzzy verify", cli_round_trip),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL [{:>2}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
