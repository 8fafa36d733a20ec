//! Built-in invariant suites runnable from the command line.
//!
//! Each suite exercises one layer of the library on seeded pseudo-random
//! instances and reports pass/fail with a short detail line. The fault
//! injection hook perturbs a formula on purpose so the negative control can
//! verify the suite actually bites.

use num_complex::Complex64;

use crate::cksolve::{self, FirstOrderPDE};
use crate::hypersurface;
use crate::linalg;
use crate::normalize;
use crate::operators::HoloPDO;
use crate::posform;
use crate::rng::SplitMix64;
use crate::series::{MultiIndex, RealAnalyticSeries, TruncatedSeries};

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn cc(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn random_series(rng: &mut SplitMix64, nvars: usize, order: usize) -> TruncatedSeries {
    let mut terms = Vec::new();
    let count = 4 + (rng.next_u64() % 8) as usize;
    for _ in 0..count {
        let idx: Vec<u32> = (0..nvars)
            .map(|_| (rng.next_u64() % (order as u64 / 2 + 1)) as u32)
            .collect();
        if idx.iter().sum::<u32>() as usize > order {
            continue;
        }
        terms.push((MultiIndex(idx), rng.next_complex()));
    }
    TruncatedSeries::from_terms(nvars, order, terms)
}

fn suite<F>(name: &'static str, body: F) -> SuiteResult
where
    F: FnOnce() -> Result<String, String>,
{
    match body() {
        Ok(detail) => SuiteResult {
            name,
            passed: true,
            detail,
        },
        Err(detail) => SuiteResult {
            name,
            passed: false,
            detail,
        },
    }
}

fn series_ring(order: usize) -> Result<String, String> {
    let mut rng = SplitMix64::new(101);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let nv = 1 + (rng.next_u64() % 3) as usize;
        let a = random_series(&mut rng, nv, order);
        let b = random_series(&mut rng, nv, order);
        let c = random_series(&mut rng, nv, order);
        worst = worst.max(a.add(&b).add(&c).sub(&a.add(&b.add(&c))).max_coeff());
        worst = worst.max(a.mul(&b).sub(&b.mul(&a)).max_coeff());
        worst = worst.max(
            a.mul(&b.add(&c))
                .sub(&a.mul(&b).add(&a.mul(&c)))
                .max_coeff(),
        );
        worst = worst.max(a.mul(&b).mul(&c).sub(&a.mul(&b.mul(&c))).max_coeff());
    }
    if worst < 1e-12 {
        Ok(format!("max defect {worst:.3e}"))
    } else {
        Err(format!("ring axiom defect {worst:.3e}"))
    }
}

fn series_leibniz(order: usize) -> Result<String, String> {
    let mut rng = SplitMix64::new(202);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let nv = 1 + (rng.next_u64() % 3) as usize;
        let a = random_series(&mut rng, nv, order);
        let b = random_series(&mut rng, nv, order);
        for v in 0..nv {
            let lhs = a.mul(&b).derive(v);
            let rhs = a.derive(v).mul(&b).add(&a.mul(&b.derive(v)));
            worst = worst.max(lhs.sub(&rhs).max_coeff());
        }
    }
    if worst < 1e-12 {
        Ok(format!("max defect {worst:.3e}"))
    } else {
        Err(format!("Leibniz defect {worst:.3e}"))
    }
}

fn series_reciprocal(order: usize) -> Result<String, String> {
    let mut rng = SplitMix64::new(303);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let nv = 1 + (rng.next_u64() % 3) as usize;
        let mut s = random_series(&mut rng, nv, order);
        s = s.add(&TruncatedSeries::constant(nv, order, cc(2.0)));
        let r = s.reciprocal().map_err(|e| e.to_string())?;
        let one = TruncatedSeries::constant(nv, order, cc(1.0));
        worst = worst.max(s.mul(&r).sub(&one).max_coeff());
    }
    if worst < 1e-12 {
        Ok(format!("max defect {worst:.3e}"))
    } else {
        Err(format!("reciprocal defect {worst:.3e}"))
    }
}

fn series_eval_hom(order: usize) -> Result<String, String> {
    let mut rng = SplitMix64::new(404);
    let radius = 0.1f64;
    let mut worst_ratio: f64 = 0.0;
    for _ in 0..20 {
        let nv = 1 + (rng.next_u64() % 3) as usize;
        let a = random_series(&mut rng, nv, order);
        let b = random_series(&mut rng, nv, order);
        let point: Vec<Complex64> = (0..nv).map(|_| rng.next_complex() * radius * 0.5).collect();
        let lhs = a.mul(&b).eval(&point);
        let rhs = a.eval(&point) * b.eval(&point);
        let sum_a: f64 = a.terms().map(|(_, c)| c.norm()).sum();
        let sum_b: f64 = b.terms().map(|(_, c)| c.norm()).sum();
        let tail = sum_a * sum_b * radius.powi(order as i32 + 1) / (1.0 - radius) * 4.0 + 1e-14;
        worst_ratio = worst_ratio.max((lhs - rhs).norm() / tail);
    }
    if worst_ratio < 1.0 {
        Ok(format!("worst error / tail bound {worst_ratio:.3e}"))
    } else {
        Err(format!("eval homomorphism defect ratio {worst_ratio:.3e}"))
    }
}

fn series_reality(order: usize) -> Result<String, String> {
    let mut rng = SplitMix64::new(505);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let nv = 1 + (rng.next_u64() % 2) as usize;
        let mut rho = RealAnalyticSeries::zero(nv, order);
        for _ in 0..6 {
            let a: Vec<u32> = (0..nv).map(|_| (rng.next_u64() % 3) as u32).collect();
            let b: Vec<u32> = (0..nv).map(|_| (rng.next_u64() % 3) as u32).collect();
            rho.insert_hermitian(MultiIndex(a), MultiIndex(b), rng.next_complex());
        }
        for _ in 0..5 {
            let p: Vec<Complex64> = (0..nv).map(|_| rng.next_complex() * 0.3).collect();
            worst = worst.max(rho.eval_complex(&p).im.abs());
        }
    }
    if worst < 1e-12 {
        Ok(format!("max imaginary part {worst:.3e}"))
    } else {
        Err(format!("reality defect {worst:.3e}"))
    }
}

fn operators_homogeneity(order: usize) -> Result<String, String> {
    let mut rng = SplitMix64::new(606);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let dim = 2 + (rng.next_u64() % 2) as usize;
        let m = 1 + (rng.next_u64() % 3) as usize;
        let mut terms = Vec::new();
        for beta in all_indices_of_degree(dim, m as u32) {
            terms.push((beta, random_series(&mut rng, dim, order)));
        }
        let op = HoloPDO::new(dim, terms).map_err(|e| e.to_string())?;
        let sym = op.principal_symbol();
        let z: Vec<Complex64> = (0..dim).map(|_| rng.next_complex() * 0.4).collect();
        let zeta: Vec<Complex64> = (0..dim).map(|_| rng.next_complex()).collect();
        let lam = rng.next_complex() + cc(1.5);
        let scaled: Vec<Complex64> = zeta.iter().map(|&x| lam * x).collect();
        let lhs = sym.eval(&z, &scaled);
        let rhs = lam.powu(m as u32) * sym.eval(&z, &zeta);
        worst = worst.max((lhs - rhs).norm());
        // Euler relation
        let grad = sym.zeta_gradient_at(&z, &zeta);
        let dot: Complex64 = zeta.iter().zip(&grad).map(|(a, b)| a * b).sum();
        worst = worst.max((dot - sym.eval(&z, &zeta) * (m as f64)).norm());
    }
    if worst < 1e-10 {
        Ok(format!("max defect {worst:.3e}"))
    } else {
        Err(format!("homogeneity/Euler defect {worst:.3e}"))
    }
}

fn all_indices_of_degree(nvars: usize, degree: u32) -> Vec<MultiIndex> {
    fn rec(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() == nvars - 1 {
            prefix.push(degree);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=degree {
            prefix.push(e);
            rec(nvars, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, degree, &mut Vec::new(), &mut out);
    out
}

fn cksolve_oracles(order: usize) -> Result<String, String> {
    let order = order.max(4);
    // transport: f = w1 + w2
    let rhs = TruncatedSeries::variable(4, order, 3);
    let data = TruncatedSeries::variable(1, order, 0);
    let p = FirstOrderPDE::new(2, rhs, data).map_err(|e| e.to_string())?;
    let (f, _) = cksolve::ck_solve(&p, order).map_err(|e| e.to_string())?;
    let expect = TruncatedSeries::variable(2, order, 0).add(&TruncatedSeries::variable(2, order, 1));
    let mut worst = f.sub(&expect).max_coeff();

    // exponential: coefficients of w1 w2^k are 1/k!
    let rhs = TruncatedSeries::variable(4, order, 2);
    let data = TruncatedSeries::variable(1, order, 0);
    let p = FirstOrderPDE::new(2, rhs, data).map_err(|e| e.to_string())?;
    let (f, _) = cksolve::ck_solve(&p, order).map_err(|e| e.to_string())?;
    let mut fact = 1.0;
    for k in 0..order as u32 {
        if k > 0 {
            fact *= k as f64;
        }
        worst = worst.max((f.coeff(&MultiIndex(vec![1, k])) - cc(1.0 / fact)).norm());
    }

    // Riccati: f = 1/(1 - w), all coefficients 1
    let u = TruncatedSeries::variable(2, order, 1);
    let rhs = u.mul(&u);
    let data = TruncatedSeries::constant(0, order, cc(1.0));
    let p = FirstOrderPDE::new(1, rhs, data).map_err(|e| e.to_string())?;
    let (f, _) = cksolve::ck_solve(&p, order).map_err(|e| e.to_string())?;
    for k in 0..=order as u32 {
        worst = worst.max((f.coeff(&MultiIndex(vec![k])) - cc(1.0)).norm());
    }

    if worst < 1e-12 {
        Ok(format!("max coefficient defect {worst:.3e}"))
    } else {
        Err(format!("oracle coefficient defect {worst:.3e}"))
    }
}

fn cksolve_implicit(order: usize) -> Result<String, String> {
    let mut rng = SplitMix64::new(707);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        // B = zeta + q(x, zeta) with a random perturbation vanishing at 0
        let nv = 2 + (rng.next_u64() % 2) as usize;
        let slot = nv - 1;
        let mut b = TruncatedSeries::variable(nv, order, slot);
        let pert = random_series(&mut rng, nv, order);
        let pert = pert.sub(&TruncatedSeries::constant(nv, order, pert.constant_term()));
        b = b.add(&pert.scale(cc(0.2)));
        let d = match cksolve::implicit_solve(&b, slot, cc(0.0)) {
            Ok(d) => d,
            Err(_) => continue,
        };
        // composed check B(x, D(x)) = 0
        let reduced = nv - 1;
        let ord = d.order();
        let mut inner: Vec<TruncatedSeries> = (0..reduced)
            .map(|j| TruncatedSeries::variable(reduced, ord, j))
            .collect();
        inner.push(d.clone());
        let res = b
            .truncate(ord)
            .compose(&inner)
            .map_err(|e| e.to_string())?
            .max_coeff();
        worst = worst.max(res);
    }
    if worst < 1e-9 {
        Ok(format!("max composed residual {worst:.3e}"))
    } else {
        Err(format!("implicit residual {worst:.3e}"))
    }
}

fn posform_spectrum(_order: usize, fault: bool) -> Result<String, String> {
    let mut rng = SplitMix64::new(808);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = 1 + (rng.next_u64() % 5) as usize;
        let target = rng.next_f64() * 2.0;
        let mut a: Vec<Complex64> = (0..n).map(|_| rng.next_complex()).collect();
        let norm = a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            let s = target.sqrt() / norm;
            for x in &mut a {
                *x *= s;
            }
        }
        let sum_sq: f64 = a.iter().map(|c| c.norm_sqr()).sum();
        let q = posform::normal_form_q(&a);
        let v = posform::pos_check(&q, 1e-7).map_err(|e| e.to_string())?;
        // closed form; the fault hook swaps sqrt(sum) for sum
        let spread = if fault { sum_sq } else { sum_sq.sqrt() };
        let mut expect = vec![1.0 - spread, 1.0 + spread];
        expect.extend(std::iter::repeat_n(1.0, n - 1));
        expect.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (x, y) in v.restricted_spectrum.iter().zip(&expect) {
            worst = worst.max((x - y).abs());
        }
    }
    if worst < 1e-9 {
        Ok(format!("max spectrum defect {worst:.3e}"))
    } else {
        Err(format!("spectrum defect {worst:.3e}"))
    }
}

fn posform_agreement(_order: usize) -> Result<String, String> {
    let mut rng = SplitMix64::new(909);
    let mut checked = 0usize;
    for _ in 0..50 {
        let n = 1 + (rng.next_u64() % 5) as usize;
        let target = rng.next_f64() * 2.0;
        let mut a: Vec<Complex64> = (0..n).map(|_| rng.next_complex()).collect();
        let norm = a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            let s = target.sqrt() / norm;
            for x in &mut a {
                *x *= s;
            }
        }
        let sum_sq: f64 = a.iter().map(|c| c.norm_sqr()).sum();
        if (sum_sq - 1.0).abs() < 1e-6 {
            continue;
        }
        let q = posform::normal_form_q(&a);
        let full = posform::pos_check(&q, 1e-7).map_err(|e| e.to_string())?;
        let reduced = posform::reduced_from_sum_sq(n, sum_sq, 1e-7);
        if full.holds != reduced.holds {
            return Err(format!(
                "verdict disagreement at sum_sq = {sum_sq}: {} vs {}",
                full.holds.as_str(),
                reduced.holds.as_str()
            ));
        }
        checked += 1;
    }
    Ok(format!("{checked} instances, zero disagreements"))
}

fn posform_eigenvector(_order: usize) -> Result<String, String> {
    let mut rng = SplitMix64::new(1010);
    let mut worst: f64 = 0.0;
    for _ in 0..30 {
        let n = 1 + (rng.next_u64() % 5) as usize;
        let a: Vec<Complex64> = (0..n).map(|_| rng.next_complex() *0.6).collect();
        worst = worst.max(posform::eigenvector_residual(&a, 1.0));
        worst = worst.max(posform::eigenvector_residual(&a, -1.0));
    }
    if worst < 1e-9 {
        Ok(format!("max eigenvector residual {worst:.3e}"))
    } else {
        Err(format!("eigenvector residual {worst:.3e}"))
    }
}

fn hyper_spectrum(_order: usize) -> Result<String, String> {
    let mut rng = SplitMix64::new(1111);
    let mut worst: f64 = 0.0;
    for _ in 0..30 {
        let n = 1 + (rng.next_u64() % 5) as usize;
        let mut a: Vec<f64> = (0..n).map(|_| rng.next_f64()).collect();
        let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let target = rng.next_f64() * 0.95;
        if norm > 0.0 {
            for x in &mut a {
                *x *= target / norm;
            }
        }
        let jacobi =
            linalg::symmetric_eigenvalues(&hypersurface::h_matrix(&a)).map_err(|e| e.to_string())?;
        let closed = hypersurface::h_spectrum_closed_form(&a);
        for (x, y) in jacobi.iter().zip(&closed) {
            worst = worst.max((x - y).abs());
        }
    }
    if worst < 1e-9 {
        Ok(format!("max H spectrum defect {worst:.3e}"))
    } else {
        Err(format!("H spectrum defect {worst:.3e}"))
    }
}

fn model_problem(dim: usize, order: usize, a: TruncatedSeries) -> normalize::NormalizedProblem {
    let mut tau2 = vec![0u32; dim];
    tau2[dim - 1] = 2;
    let mut chi_tau = vec![0u32; dim];
    chi_tau[dim - 2] = 1;
    chi_tau[dim - 1] = 1;
    let mut terms = vec![(
        MultiIndex(chi_tau),
        TruncatedSeries::constant(dim, order, cc(1.0)),
    )];
    if !a.is_zero(0.0) {
        terms.push((MultiIndex(tau2), a.clone()));
    }
    let operator = HoloPDO::new(dim, terms).unwrap();
    let a_grad0: Vec<Complex64> = (0..dim)
        .map(|j| a.coeff(&MultiIndex::unit(dim, j)))
        .collect();
    let mut rho = RealAnalyticSeries::zero(dim, order);
    rho.insert_hermitian(
        MultiIndex::unit(dim, dim - 1),
        MultiIndex::zero(dim),
        cc(-1.0),
    );
    for j in 0..dim - 1 {
        rho.insert_hermitian(MultiIndex::unit(dim, j), MultiIndex::unit(dim, j), cc(0.5));
    }
    normalize::NormalizedProblem {
        rho,
        operator,
        a: a.clone(),
        b: (0..dim - 2)
            .map(|_| TruncatedSeries::zero(dim, order))
            .collect(),
        a_grad0,
        map: normalize::CoordinateMap::identity(dim, order, &vec![cc(0.0); dim]),
    }
}

fn hyper_residual(order: usize) -> Result<String, String> {
    let order = order.max(4);
    // C^2 instance, a = 0.5 z1
    let np2 = model_problem(2, order, TruncatedSeries::variable(2, order, 0).scale(cc(0.5)));
    let g2 = TruncatedSeries::zero(0, order);
    let s2 = hypersurface::construct_surface(&np2, &g2, order).map_err(|e| e.to_string())?;
    let mut worst = s2.echar_residual;
    let expect = TruncatedSeries::monomial(1, order, MultiIndex(vec![2]), cc(0.25));
    worst = worst.max(s2.f.sub(&expect).max_coeff());

    // C^3 instance, a = 0.3 z1 + 0.4 z2 (already rotated)
    let a3 = TruncatedSeries::variable(3, order, 0)
        .scale(cc(0.3))
        .add(&TruncatedSeries::variable(3, order, 1).scale(cc(0.4)));
    let np3 = model_problem(3, order, a3);
    let (_, g3) = hypersurface::choose_initial_data(&[cc(0.3), cc(0.4)], order);
    let s3 = hypersurface::construct_surface(&np3, &g3, order).map_err(|e| e.to_string())?;
    worst = worst.max(s3.echar_residual);
    // Taylor expansion match at degree 2
    worst = worst.max((s3.f.coeff(&MultiIndex(vec![1, 1])) - cc(0.3)).norm());
    worst = worst.max((s3.f.coeff(&MultiIndex(vec![0, 2])) - cc(0.2)).norm());
    worst = worst.max((s3.f.coeff(&MultiIndex(vec![2, 0])) - cc(-0.2)).norm());

    if worst < 1e-9 {
        Ok(format!("max residual {worst:.3e}"))
    } else {
        Err(format!("construction residual {worst:.3e}"))
    }
}

fn tsuno_residual(order: usize) -> Result<String, String> {
    let order = order.max(5);
    let np = model_problem(2, order, TruncatedSeries::variable(2, order, 1));
    let f_def = TruncatedSeries::variable(2, order, 1);
    let t = hypersurface::tsuno_renormalize(&np, &f_def, order, None, 1e-9)
        .map_err(|e| e.to_string())?;
    let on_data = t.c.stratum(0, 0);
    let one = TruncatedSeries::constant(1, on_data.order(), cc(1.0));
    let data_defect = on_data.sub(&one).max_coeff();
    let worst = t.residual.max(data_defect);
    if worst < 1e-9 {
        Ok(format!(
            "residual {:.3e} through order {}",
            t.residual, t.achieved_order
        ))
    } else {
        Err(format!("renormalization residual {worst:.3e}"))
    }
}

fn normalize_roundtrip(order: usize) -> Result<String, String> {
    let mut rng = SplitMix64::new(1212);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let dim = 2 + (rng.next_u64() % 2) as usize;
        let mut rho = RealAnalyticSeries::zero(dim, order + 4);
        rho.insert_hermitian(
            MultiIndex::unit(dim, dim - 1),
            MultiIndex::zero(dim),
            cc(-1.0),
        );
        for j in 0..dim - 1 {
            rho.insert_hermitian(
                MultiIndex::unit(dim, j),
                MultiIndex::unit(dim, j),
                cc(0.5 + 0.4 * rng.next_f64()),
            );
        }
        // a random pure quadratic and a cubic term keep the map honest
        let mut e2 = vec![0u32; dim];
        e2[0] = 2;
        rho.insert_hermitian(
            MultiIndex(e2),
            MultiIndex::zero(dim),
            rng.next_complex() * 0.2,
        );
        let mut e21 = vec![0u32; dim];
        e21[0] = 1;
        e21[dim - 1] = 1;
        rho.insert_hermitian(
            MultiIndex(e21),
            MultiIndex::unit(dim, 0),
            rng.next_complex() * 0.1,
        );
        let p = vec![cc(0.0); dim];
        let (map, rho_n) =
            normalize::normalize_domain(&rho, &p, order + 4, 1e-9).map_err(|e| e.to_string())?;
        worst = worst.max(map.round_trip_defect());
        // normal form through bidegree 2
        let zero = MultiIndex::zero(dim);
        for j in 0..dim {
            for k in 0..dim {
                let c = rho_n.coeff(&MultiIndex::unit(dim, j), &MultiIndex::unit(dim, k));
                let want = if j == k && j < dim - 1 { cc(1.0) } else { cc(0.0) };
                worst = worst.max((c - want).norm());
            }
        }
        for (_a, _b, c) in rho_n.bidegree_terms(2, 0) {
            worst = worst.max(c.norm());
        }
        worst = worst.max((rho_n.coeff(&MultiIndex::unit(dim, dim - 1), &zero) + cc(1.0)).norm());
    }
    if worst < 1e-10 {
        Ok(format!("max defect {worst:.3e}"))
    } else {
        Err(format!("round-trip/normal-form defect {worst:.3e}"))
    }
}

/// Run every suite; `fault` names a suite whose expected values get perturbed
/// deliberately (negative control).
pub fn run_selftest(order: usize, fault: Option<&str>) -> Vec<SuiteResult> {
    let fault_spectrum = fault == Some("posform-spectrum");
    vec![
        suite("series-ring", || series_ring(order)),
        suite("series-leibniz", || series_leibniz(order)),
        suite("series-reciprocal", || series_reciprocal(order)),
        suite("series-eval-hom", || series_eval_hom(order)),
        suite("series-reality", || series_reality(order)),
        suite("operators-homogeneity", || operators_homogeneity(order)),
        suite("cksolve-oracles", || cksolve_oracles(order)),
        suite("cksolve-implicit", || cksolve_implicit(order)),
        suite("posform-spectrum", || posform_spectrum(order, fault_spectrum)),
        suite("posform-agreement", || posform_agreement(order)),
        suite("posform-eigenvector", || posform_eigenvector(order)),
        suite("hypersurface-spectrum", || hyper_spectrum(order)),
        suite("hypersurface-residual", || hyper_residual(order)),
        suite("tsuno-residual", || tsuno_residual(order)),
        suite("normalize-roundtrip", || normalize_roundtrip(order)),
    ]
}

/// Render the table printed by the selftest command.
pub fn render_table(results: &[SuiteResult]) -> String {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(10);
    let mut out = String::new();
    for r in results {
        out.push_str(&format!(
            "{:width$}  {}  {}\n",
            r.name,
            if r.passed { "pass" } else { "FAIL" },
            r.detail,
            width = width
        ));
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    out.push_str(&format!(
        "{} suites, {} failed\n",
        results.len(),
        failed
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        let results = run_selftest(8, None);
        for r in &results {
            assert!(r.passed, "{} failed: {}", r.name, r.detail);
        }
    }

    #[test]
    fn fault_injection_trips_spectrum_suite() {
        let results = run_selftest(8, Some("posform-spectrum"));
        let spectrum = results
            .iter()
            .find(|r| r.name == "posform-spectrum")
            .unwrap();
        assert!(!spectrum.passed);
        // everything else still passes
        for r in &results {
            if r.name != "posform-spectrum" {
                assert!(r.passed, "{} failed: {}", r.name, r.detail);
            }
        }
    }

    #[test]
    fn low_order_run_passes() {
        let results = run_selftest(4, None);
        for r in &results {
            assert!(r.passed, "{} failed at order 4: {}", r.name, r.detail);
        }
    }
}
