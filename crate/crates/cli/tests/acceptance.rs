//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured quantity (visible with `--nocapture`).

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use holoconvex_core::cksolve::{self, FirstOrderPDE};
use holoconvex_core::hypersurface;
use holoconvex_core::linalg;
use holoconvex_core::pipeline::{self, RunOptions};
use holoconvex_core::posform::{self, PosHolds};
use holoconvex_core::problem::ProblemFile;
use holoconvex_core::report::Classification;
use holoconvex_core::rng::SplitMix64;
use holoconvex_core::series::{MultiIndex, TruncatedSeries};
use holoconvex_core::Complex64;

fn cc(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn problems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../problems")
        .canonicalize()
        .expect("problems directory")
}

fn load_problem(name: &str) -> ProblemFile {
    let path = problems_dir().join(name);
    let text = std::fs::read_to_string(&path).expect("fixture file");
    ProblemFile::from_json(&text).expect("fixture parses")
}

/// 200 seeded a-vectors with n in 1..=5 and sum |a_j|^2 uniform in [0, 2].
fn spectrum_instances() -> Vec<Vec<Complex64>> {
    let mut rng = SplitMix64::new(0xacce_0001);
    (0..200)
        .map(|_| {
            let n = 1 + (rng.next_u64() % 5) as usize;
            let target: f64 = rng.next_f64() * 2.0;
            let mut a: Vec<Complex64> = (0..n).map(|_| rng.next_complex()).collect();
            let norm = a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-12 {
                let s = target.sqrt() / norm;
                for x in &mut a {
                    *x *= s;
                }
            }
            a
        })
        .collect()
}

#[test]
fn acceptance_01_q0_spectrum_formula() {
    let started = Instant::now();
    let mut worst: f64 = 0.0;
    for a in spectrum_instances() {
        let n = a.len();
        let sum_sq: f64 = a.iter().map(|c| c.norm_sqr()).sum();
        let q = posform::normal_form_q(&a);
        let v = posform::pos_check(&q, 1e-7).expect("pos_check");
        let gamma = sum_sq.sqrt();
        let mut expect = vec![1.0 - gamma, 1.0 + gamma];
        expect.extend(std::iter::repeat(1.0).take(n - 1));
        expect.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert_eq!(v.restricted_spectrum.len(), expect.len());
        for (x, y) in v.restricted_spectrum.iter().zip(&expect) {
            worst = worst.max((x - y).abs());
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(worst < 1e-9, "spectrum defect {worst:.3e}");
    assert!(elapsed < 1.0, "criterion took {elapsed:.3} s");
    println!(
        "ACCEPTANCE 1 (Q'0 spectrum formula): PASS — 200 instances, max defect {worst:.3e}, {elapsed:.3} s"
    );
}

#[test]
fn acceptance_02_pos_equivalence() {
    let mut compared = 0usize;
    for a in spectrum_instances() {
        let n = a.len();
        let sum_sq: f64 = a.iter().map(|c| c.norm_sqr()).sum();
        if (sum_sq - 1.0).abs() < 1e-6 {
            continue;
        }
        let q = posform::normal_form_q(&a);
        let full = posform::pos_check(&q, 1e-7).expect("pos_check");
        let reduced = posform::reduced_from_sum_sq(n, sum_sq, 1e-7);
        assert_eq!(
            full.holds, reduced.holds,
            "disagreement at sum_sq = {sum_sq}: {} vs {}",
            full.holds.as_str(),
            reduced.holds.as_str()
        );
        compared += 1;
    }
    println!(
        "ACCEPTANCE 2 ((Pos) equivalence): PASS — {compared} instances compared, zero disagreements"
    );
}

#[test]
fn acceptance_03_lemma_spectrum() {
    let mut rng = SplitMix64::new(0xacce_0003);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = 1 + (rng.next_u64() % 5) as usize;
        let mut a: Vec<f64> = (0..n).map(|_| rng.next_f64()).collect();
        let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let gamma_target = rng.next_f64() * 0.999;
        if norm > 1e-12 {
            for x in &mut a {
                *x *= gamma_target / norm;
            }
        }
        let jacobi = linalg::symmetric_eigenvalues(&hypersurface::h_matrix(&a)).expect("eigen");
        let closed = hypersurface::h_spectrum_closed_form(&a);
        assert_eq!(jacobi.len(), closed.len());
        for (x, y) in jacobi.iter().zip(&closed) {
            worst = worst.max((x - y).abs());
        }
    }
    assert!(worst < 1e-9, "H spectrum defect {worst:.3e}");
    println!(
        "ACCEPTANCE 3 (contact form spectrum): PASS — 100 instances, max defect {worst:.3e}"
    );
}

#[test]
fn acceptance_04_cauchy_kowalevsky_oracles() {
    let order = 10;
    let mut worst: f64 = 0.0;

    // transport: f = w1 + w2
    let rhs = TruncatedSeries::variable(4, order, 3);
    let data = TruncatedSeries::variable(1, order, 0);
    let p = FirstOrderPDE::new(2, rhs, data).unwrap();
    let (f, _) = cksolve::ck_solve(&p, order).unwrap();
    let expect =
        TruncatedSeries::variable(2, order, 0).add(&TruncatedSeries::variable(2, order, 1));
    worst = worst.max(f.sub(&expect).max_coeff());

    // exponential: coefficients of w1 w2^k are 1/k!
    let rhs = TruncatedSeries::variable(4, order, 2);
    let data = TruncatedSeries::variable(1, order, 0);
    let p = FirstOrderPDE::new(2, rhs, data).unwrap();
    let (f, _) = cksolve::ck_solve(&p, order).unwrap();
    let mut fact = 1.0;
    for k in 0..order as u32 {
        if k > 0 {
            fact *= k as f64;
        }
        worst = worst.max((f.coeff(&MultiIndex(vec![1, k])) - cc(1.0 / fact)).norm());
    }

    // Riccati: f = 1/(1-w), coefficients all 1 through degree 10
    let u = TruncatedSeries::variable(2, order, 1);
    let rhs = u.mul(&u);
    let data = TruncatedSeries::constant(0, order, cc(1.0));
    let p = FirstOrderPDE::new(1, rhs, data).unwrap();
    let (f, _) = cksolve::ck_solve(&p, order).unwrap();
    for k in 0..=order as u32 {
        worst = worst.max((f.coeff(&MultiIndex(vec![k])) - cc(1.0)).norm());
    }

    assert!(worst < 1e-12, "oracle defect {worst:.3e}");
    println!(
        "ACCEPTANCE 4 (Cauchy-Kowalevsky oracles): PASS — max coefficient defect {worst:.3e}"
    );
}

#[test]
fn acceptance_05_everywhere_characteristic_residual() {
    // C^2 instance
    let problem = load_problem("c2_pos.json").validate().unwrap();
    let r2 = pipeline::run_check(&problem, &RunOptions::default()).unwrap();
    assert_eq!(r2.classification, Classification::PosHolds);
    let s2 = r2.surface.as_ref().unwrap();
    assert!(
        s2.echar_residual < 1e-9,
        "C^2 residual {:.3e}",
        s2.echar_residual
    );
    // f = 0.25 z1^2 exactly
    assert_eq!(s2.f.len(), 1);
    assert_eq!(s2.f[0].exponents, vec![2]);
    assert!((s2.f[0].coeff[0] - 0.25).abs() < 1e-12);
    assert!(s2.f[0].coeff[1].abs() < 1e-12);

    // C^3 instance with the complex coefficient
    let problem = load_problem("c3_pos.json").validate().unwrap();
    let r3 = pipeline::run_check(&problem, &RunOptions::default()).unwrap();
    assert_eq!(r3.classification, Classification::PosHolds);
    let s3 = r3.surface.as_ref().unwrap();
    assert!(
        s3.echar_residual < 1e-9,
        "C^3 residual {:.3e}",
        s3.echar_residual
    );
    println!(
        "ACCEPTANCE 5 (everywhere-characteristic residual): PASS — C^2 {:.3e}, C^3 {:.3e}",
        s2.echar_residual, s3.echar_residual
    );
}

#[test]
fn acceptance_06_taylor_expansion_match() {
    let problem = load_problem("c3_pos.json").validate().unwrap();
    let r = pipeline::run_check(&problem, &RunOptions::default()).unwrap();
    let s = r.surface.as_ref().unwrap();
    // rotated a = (0.3, 0.4), q = -0.2 z1^2: degree-2 part of f must be
    // 0.3 z1 z2 + 0.2 z2^2 - 0.2 z1^2.
    let coeff_at = |e: &[u32]| -> Complex64 {
        s.f.iter()
            .find(|t| t.exponents == e)
            .map(|t| Complex64::new(t.coeff[0], t.coeff[1]))
            .unwrap_or(cc(0.0))
    };
    let mut worst: f64 = 0.0;
    worst = worst.max((coeff_at(&[1, 1]) - cc(0.3)).norm());
    worst = worst.max((coeff_at(&[0, 2]) - cc(0.2)).norm());
    worst = worst.max((coeff_at(&[2, 0]) - cc(-0.2)).norm());
    assert!(worst < 1e-9, "degree-2 defect {worst:.3e}");
    println!(
        "ACCEPTANCE 6 (Taylor expansion of f): PASS — max degree-2 coefficient defect {worst:.3e}"
    );
}

#[test]
fn acceptance_07_contact_positivity() {
    let problem = load_problem("c3_pos.json").validate().unwrap();
    let r = pipeline::run_check(&problem, &RunOptions::default()).unwrap();
    let pos = r.pos_reduced.as_ref().unwrap();
    assert!((pos.sum_sq.unwrap() - 0.25).abs() < 1e-12);
    let cert = r.certificate.as_ref().unwrap();
    assert_eq!(cert.sample_count, 10_000);
    assert_eq!(cert.radii, [1e-2, 1e-3]);
    assert!(
        cert.sample_min > 0.0,
        "sampled minimum {:.3e} is not positive",
        cert.sample_min
    );
    assert_eq!(cert.verdict, "strongly-P-convex");
    println!(
        "ACCEPTANCE 7 (contact positivity): PASS — 10^4 samples per radius, min {:.3e}",
        cert.sample_min
    );
}

#[test]
fn acceptance_08_tsuno_renormalization() {
    // P2 = z2 tau^2 + chi tau with f = z2 at N = 8.
    let order = 8;
    let dim = 2;
    use holoconvex_core::normalize::{CoordinateMap, NormalizedProblem};
    use holoconvex_core::operators::HoloPDO;
    use holoconvex_core::series::RealAnalyticSeries;
    let a = TruncatedSeries::variable(dim, order, 1);
    let operator = HoloPDO::new(
        dim,
        vec![
            (MultiIndex(vec![0, 2]), a.clone()),
            (
                MultiIndex(vec![1, 1]),
                TruncatedSeries::constant(dim, order, cc(1.0)),
            ),
        ],
    )
    .unwrap();
    let mut rho = RealAnalyticSeries::zero(dim, order);
    rho.insert_hermitian(MultiIndex(vec![0, 1]), MultiIndex::zero(dim), cc(-1.0));
    rho.insert_hermitian(MultiIndex(vec![1, 0]), MultiIndex(vec![1, 0]), cc(0.5));
    let np = NormalizedProblem {
        rho,
        operator,
        a: a.clone(),
        b: Vec::new(),
        a_grad0: vec![cc(0.0), cc(1.0)],
        map: CoordinateMap::identity(dim, order, &[cc(0.0), cc(0.0)]),
    };
    let f_def = TruncatedSeries::variable(dim, order, 1);
    let t = hypersurface::tsuno_renormalize(&np, &f_def, order, None, 1e-9).unwrap();
    // c restricted to the data surface is exactly 1
    let on_data = t.c.stratum(t.solve_index, 0);
    let one = TruncatedSeries::constant(on_data.nvars(), on_data.order(), cc(1.0));
    let data_defect = on_data.sub(&one).max_coeff();
    assert!(
        data_defect == 0.0,
        "data restriction defect {data_defect:.3e}"
    );
    assert!(
        t.residual < 1e-9,
        "renormalization residual {:.3e} through order {}",
        t.residual,
        t.achieved_order
    );
    println!(
        "ACCEPTANCE 8 (renormalization): PASS — residual {:.3e} through order {}, exact data restriction",
        t.residual, t.achieved_order
    );
}

#[test]
fn acceptance_09_zerner_gate() {
    let bin = env!("CARGO_BIN_EXE_holoconvex");
    let nonchar = Command::new(bin)
        .arg("check")
        .arg(problems_dir().join("noncharacteristic.json"))
        .output()
        .expect("run binary");
    assert_eq!(nonchar.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&nonchar.stdout);
    assert!(
        stdout.contains("non-characteristic") && stdout.contains("extends"),
        "summary was: {stdout}"
    );

    let double = Command::new(bin)
        .arg("check")
        .arg(problems_dir().join("double_characteristic.json"))
        .output()
        .expect("run binary");
    assert_eq!(double.status.code(), Some(3), "expected exit code 3");
    let stdout = String::from_utf8_lossy(&double.stdout);
    assert!(
        stdout.contains("not-simply-characteristic") && stdout.contains("unsupported"),
        "summary was: {stdout}"
    );
    println!(
        "ACCEPTANCE 9 (Zerner gate): PASS — extends at non-characteristic, unsupported with exit 3 at double characteristic"
    );
}

#[test]
fn acceptance_10_determinism_and_runtime() {
    let bin = env!("CARGO_BIN_EXE_holoconvex");
    let dir = std::env::temp_dir();
    let out1 = dir.join("holoconvex_acceptance_run1.json");
    let out2 = dir.join("holoconvex_acceptance_run2.json");
    let mut elapsed = 0.0f64;
    for out in [&out1, &out2] {
        let started = Instant::now();
        let status = Command::new(bin)
            .arg("check")
            .arg(problems_dir().join("c3_pos.json"))
            .arg("--json")
            .arg(out)
            .status()
            .expect("run binary");
        elapsed = elapsed.max(started.elapsed().as_secs_f64());
        assert!(status.success());
    }
    assert!(elapsed < 5.0, "check took {elapsed:.3} s");
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert_eq!(a, b, "reports are not byte-identical");
    println!(
        "ACCEPTANCE 10 (determinism and runtime): PASS — byte-identical reports, slowest run {elapsed:.3} s"
    );
}

#[test]
fn acceptance_marginal_instance_short_circuits() {
    // supporting check from the command examples: coefficient 1.0 z1 is
    // marginal and no construction is attempted
    let problem = load_problem("marginal.json").validate().unwrap();
    let r = pipeline::run_check(&problem, &RunOptions::default()).unwrap();
    assert_eq!(r.classification, Classification::Marginal);
    assert!(r.surface.is_none());
    let pos = r.pos_reduced.as_ref().unwrap();
    assert_eq!(pos.holds, PosHolds::Marginal.as_str());
    assert!((pos.sum_sq.unwrap() - 1.0).abs() < 1e-12);
}
