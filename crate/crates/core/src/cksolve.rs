//! Power-series implicit-function solving and the Cauchy-Kowalevsky
//! coefficient recursion for first-order analytic Cauchy problems.

use num_complex::Complex64;

use crate::series::{MultiIndex, TruncatedSeries};
use crate::{Error, Result};

/// First-order analytic Cauchy problem for an unknown `f` of `nvars`
/// variables `w_1..w_k`:
///
/// ```text
/// d f / d w_k = rhs(w_1..w_k, f, d f/d w_1, ..., d f/d w_{k-1})
/// f(w_1..w_{k-1}, 0) = data
/// ```
///
/// The right-hand side is a series in `2k` variables ordered as the `k` base
/// variables, then the unknown-value slot, then the `k-1` tangential
/// gradient slots. `data` is a series in the first `k-1` variables.
#[derive(Debug, Clone)]
pub struct FirstOrderPDE {
    pub nvars: usize,
    pub rhs: TruncatedSeries,
    pub data: TruncatedSeries,
}

impl FirstOrderPDE {
    pub fn new(nvars: usize, rhs: TruncatedSeries, data: TruncatedSeries) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::Validation("Cauchy problem needs at least one variable".into()));
        }
        if rhs.nvars() != 2 * nvars {
            return Err(Error::Validation(format!(
                "rhs must have {} variables (base, value, tangential gradient), got {}",
                2 * nvars,
                rhs.nvars()
            )));
        }
        if data.nvars() != nvars - 1 {
            return Err(Error::Validation(format!(
                "data must have {} variables, got {}",
                nvars - 1,
                data.nvars()
            )));
        }
        Ok(FirstOrderPDE { nvars, rhs, data })
    }
}

/// Solve the Cauchy problem degree-by-degree in the transversal variable.
/// Returns the solution together with the max residual coefficient of
/// `d f/d w_k - rhs(jet)` through total degree `order - 1`.
pub fn ck_solve(problem: &FirstOrderPDE, order: usize) -> Result<(TruncatedSeries, f64)> {
    let k = problem.nvars;
    let data = problem.data.truncate(order);

    // Re-expand the rhs about the data's jet at the origin so that every
    // substitution below has zero constant terms. The shift is exact because
    // either the jet vanishes (tangent data) or the rhs is polynomial in the
    // value and gradient slots.
    let u0 = data.constant_term();
    let q0: Vec<Complex64> = (0..k.saturating_sub(1))
        .map(|j| data.derive(j).constant_term())
        .collect();
    let mut shift = vec![Complex64::new(0.0, 0.0); 2 * k];
    shift[k] = u0;
    for (j, &q) in q0.iter().enumerate() {
        shift[k + 1 + j] = q;
    }
    let rhs = problem.rhs.taylor_shift(&shift);

    // f starts as the data embedded into k variables (w_k-stratum zero).
    let slots: Vec<usize> = (0..k - 1).collect();
    let mut f = data.embed(k, &slots).truncate(order);

    let u0_series = TruncatedSeries::constant(k, order, u0);
    for d in 0..order {
        let composite = compose_jet(&rhs, &f, &u0_series, &q0, order.saturating_sub(1));
        // The w_k^d stratum of the rhs composite determines the next stratum:
        // (d+1) f_{d+1} = [w_k^d] rhs(jet).
        let stratum = composite.stratum(k - 1, d as u32);
        let next = stratum.scale(Complex64::new(1.0 / (d as f64 + 1.0), 0.0));
        if next.is_zero(0.0) {
            continue;
        }
        // The stratum coefficients are exact for total degrees up to `order`,
        // so the lift is re-capped there before it joins f.
        let lift = next
            .embed(k, &slots)
            .assume_exact_to(order)
            .mul(&monomial_power(k, order, k - 1, d as u32 + 1));
        f = f.add(&lift);
    }

    // Residual check through degree order - 1.
    let composite = compose_jet(&rhs, &f, &u0_series, &q0, order.saturating_sub(1));
    let residual = f.derive(k - 1).sub(&composite).max_coeff();
    Ok((f, residual))
}

fn monomial_power(nvars: usize, order: usize, var: usize, e: u32) -> TruncatedSeries {
    let mut idx = vec![0u32; nvars];
    idx[var] = e;
    TruncatedSeries::monomial(nvars, order, MultiIndex(idx), Complex64::new(1.0, 0.0))
}

/// Substitute the current jet `(w, f, d'f)` into the shifted rhs. The value
/// and gradient slots are passed as deviations from the data jet so all inner
/// constant terms vanish.
fn compose_jet(
    rhs: &TruncatedSeries,
    f: &TruncatedSeries,
    u0: &TruncatedSeries,
    q0: &[Complex64],
    order: usize,
) -> TruncatedSeries {
    let k = f.nvars();
    let mut inner: Vec<TruncatedSeries> = Vec::with_capacity(2 * k);
    for j in 0..k {
        inner.push(TruncatedSeries::variable(k, order, j));
    }
    inner.push(f.sub(u0).truncate(order));
    for (j, &q) in q0.iter().enumerate() {
        let dev = f
            .derive(j)
            .sub(&TruncatedSeries::constant(k, f.order(), q));
        inner.push(dev.truncate(order));
    }
    rhs.truncate(order)
        .compose(&inner)
        .expect("jet deviations have zero constant term")
}

/// Roots of the complex polynomial `sum coeffs[d] x^d` by the
/// Durand-Kerner simultaneous iteration. Deterministic seeding; intended for
/// the small anchor polynomials arising from symbol reductions.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut deg = coeffs.len().saturating_sub(1);
    while deg > 0 && coeffs[deg].norm() < 1e-13 {
        deg -= 1;
    }
    if deg == 0 {
        return Vec::new();
    }
    let monic: Vec<Complex64> = coeffs[..=deg].iter().map(|c| c / coeffs[deg]).collect();
    let radius = 1.0
        + monic[..deg]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|i| seed.powu(i as u32 + 1) * radius)
        .collect();
    let eval = |x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-14 * radius {
            break;
        }
    }
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    roots
}

/// Find the anchor root `x0` of `B(0, .., 0, x_slot = x0) = 0` for an
/// implicit solve. A scalar Newton run from zero is tried first; if it stalls
/// or lands on a root with a degenerate slot-derivative, all roots of the
/// scalar polynomial are computed and the one with the largest
/// `|dB/dx_slot|` is chosen. `choice` overrides the rule by selecting among
/// the roots sorted by (re, im).
pub fn find_anchor_root(
    b: &TruncatedSeries,
    slot: usize,
    choice: Option<usize>,
) -> Result<Complex64> {
    let deg = b.degree_in(slot) as usize;
    if deg == 0 {
        return Err(Error::ImplicitDegenerate { slot, value: 0.0 });
    }
    // Scalar polynomial in the solve variable at the origin of the rest.
    let mut poly = vec![Complex64::new(0.0, 0.0); deg + 1];
    for (idx, c) in b.terms() {
        let e = idx.0[slot] as usize;
        if idx.degree() as usize == e {
            poly[e] += *c;
        }
    }
    let dpoly: Vec<Complex64> = (1..=deg)
        .map(|d| poly[d] * Complex64::new(d as f64, 0.0))
        .collect();
    let eval = |p: &[Complex64], x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in p.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    let scale = poly.iter().map(|c| c.norm()).fold(1.0, f64::max);

    if let Some(pick) = choice {
        let roots = admissible_roots(&poly, &dpoly, scale);
        if roots.is_empty() {
            return Err(Error::NoAnchorRoot);
        }
        return roots
            .get(pick)
            .map(|&(r, _)| r)
            .ok_or(Error::RootChoiceOutOfRange {
                chosen: pick,
                available: roots.len(),
            });
    }

    // Newton from zero.
    let mut x = Complex64::new(0.0, 0.0);
    let mut converged = false;
    for _ in 0..100 {
        let fx = eval(&poly, x);
        let dx = eval(&dpoly, x);
        if dx.norm() < 1e-12 * scale {
            break;
        }
        let step = fx / dx;
        x -= step;
        if step.norm() < 1e-14 * (1.0 + x.norm()) {
            converged = true;
            break;
        }
    }
    if converged && eval(&poly, x).norm() < 1e-10 * scale && eval(&dpoly, x).norm() > 1e-9 * scale
    {
        return Ok(x);
    }
    // Fall back to all roots, keeping the one with the largest derivative.
    let roots = admissible_roots(&poly, &dpoly, scale);
    roots
        .into_iter()
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .map(|(r, _)| r)
        .ok_or(Error::NoAnchorRoot)
}

fn admissible_roots(
    poly: &[Complex64],
    dpoly: &[Complex64],
    scale: f64,
) -> Vec<(Complex64, f64)> {
    let eval = |p: &[Complex64], x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in p.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    polynomial_roots(poly)
        .into_iter()
        .map(|r| (r, eval(dpoly, r).norm()))
        .filter(|(_, d)| *d > 1e-9 * scale)
        .collect()
}

/// Solve `B(x) = 0` for the variable at `slot` as a function of the others:
/// returns `D` in the remaining `nvars - 1` variables (original order, slot
/// removed) with `D(0) = root` and `B(.., D(..), ..) = 0` through the
/// truncation order. Newton iteration on series, doubling the correct degree
/// each step; requires `|dB/dx_slot| != 0` at the anchor.
pub fn implicit_solve(
    b: &TruncatedSeries,
    slot: usize,
    root: Complex64,
) -> Result<TruncatedSeries> {
    let nv = b.nvars();
    assert!(slot < nv);
    let order = b.order();

    // Shift the solve slot so the sought branch passes through zero. Exact
    // when the slot is polynomial (symbols always are); a zero root is free.
    let mut shift = vec![Complex64::new(0.0, 0.0); nv];
    shift[slot] = root;
    let bs = b.taylor_shift(&shift);

    let anchor_defect = bs.constant_term().norm();
    let scale = bs.max_coeff().max(1.0);
    if anchor_defect > 1e-8 * scale {
        return Err(Error::Validation(format!(
            "anchor is not a root: |B(anchor)| = {anchor_defect:.3e}"
        )));
    }

    let dbs = bs.derive(slot);
    let d0 = dbs.constant_term();
    if d0.norm() < 1e-9 * scale {
        return Err(Error::ImplicitDegenerate {
            slot,
            value: d0.norm(),
        });
    }

    // Newton: D <- D - B(x', D) / dB(x', D), everything in the reduced
    // variable set.
    let reduced_vars = nv - 1;
    let mut d = TruncatedSeries::zero(reduced_vars, order);
    let steps = (usize::BITS - order.leading_zeros()) as usize + 2;
    for _ in 0..steps {
        let bd = substitute_slot(&bs, slot, &d);
        let dbd = substitute_slot(&dbs, slot, &d);
        let correction = bd.mul(&dbd.reciprocal()?);
        d = d.sub(&correction).truncate(order);
    }

    let residual = substitute_slot(&bs, slot, &d).max_coeff();
    if residual > 1e-8 * scale {
        return Err(Error::ResidualFailure(format!(
            "implicit solve residual {residual:.3e}"
        )));
    }
    Ok(d.add(&TruncatedSeries::constant(reduced_vars, order, root)))
}

/// Substitute a series (in the reduced variable set) for `slot`, keeping the
/// other variables as themselves; the result lives in the reduced set.
fn substitute_slot(
    b: &TruncatedSeries,
    slot: usize,
    value: &TruncatedSeries,
) -> TruncatedSeries {
    let nv = b.nvars();
    let reduced = nv - 1;
    let order = b.order().min(value.order());
    let mut inner: Vec<TruncatedSeries> = Vec::with_capacity(nv);
    let mut r = 0;
    for j in 0..nv {
        if j == slot {
            inner.push(value.truncate(order));
        } else {
            inner.push(TruncatedSeries::variable(reduced, order, r));
            r += 1;
        }
    }
    b.truncate(order)
        .compose(&inner)
        .expect("substitution slots have zero constant term")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cc(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn implicit_already_solved() {
        // B = zeta1 - w over (w, zeta1), solve for zeta1: D = w
        let b = TruncatedSeries::from_terms(
            2,
            6,
            vec![
                (MultiIndex(vec![0, 1]), cc(1.0)),
                (MultiIndex(vec![1, 0]), cc(-1.0)),
            ],
        );
        let d = implicit_solve(&b, 1, cc(0.0)).unwrap();
        assert!(d.approx_eq(&TruncatedSeries::variable(1, 6, 0), 1e-12));
    }

    #[test]
    fn implicit_square_root_branch() {
        // B = zeta1^2 - 1 - w anchored at zeta1 = 1: D = sqrt(1+w)
        let b = TruncatedSeries::from_terms(
            2,
            8,
            vec![
                (MultiIndex(vec![0, 2]), cc(1.0)),
                (MultiIndex(vec![0, 0]), cc(-1.0)),
                (MultiIndex(vec![1, 0]), cc(-1.0)),
            ],
        );
        let d = implicit_solve(&b, 1, cc(1.0)).unwrap();
        // oracle: square D and check D^2 - 1 - w = 0 mod order
        let sq = d.mul(&d);
        let target = TruncatedSeries::from_terms(
            1,
            8,
            vec![
                (MultiIndex(vec![0]), cc(1.0)),
                (MultiIndex(vec![1]), cc(1.0)),
            ],
        );
        assert!(sq.approx_eq(&target, 1e-10));
        // leading coefficients 1, 1/2, -1/8
        assert!((d.coeff(&MultiIndex(vec![0])) - cc(1.0)).norm() < 1e-12);
        assert!((d.coeff(&MultiIndex(vec![1])) - cc(0.5)).norm() < 1e-12);
        assert!((d.coeff(&MultiIndex(vec![2])) - cc(-0.125)).norm() < 1e-12);
    }

    #[test]
    fn implicit_linear_solve() {
        // B = zeta2 + z1 zeta1 - 1 over (z1, zeta1, zeta2), anchor zeta2 = 1:
        // D = 1 - z1 zeta1
        let b = TruncatedSeries::from_terms(
            3,
            6,
            vec![
                (MultiIndex(vec![0, 0, 1]), cc(1.0)),
                (MultiIndex(vec![1, 1, 0]), cc(1.0)),
                (MultiIndex(vec![0, 0, 0]), cc(-1.0)),
            ],
        );
        let d = implicit_solve(&b, 2, cc(1.0)).unwrap();
        let expected = TruncatedSeries::from_terms(
            2,
            6,
            vec![
                (MultiIndex(vec![0, 0]), cc(1.0)),
                (MultiIndex(vec![1, 1]), cc(-1.0)),
            ],
        );
        assert!(d.approx_eq(&expected, 1e-12));
    }

    #[test]
    fn implicit_degenerate_rejected() {
        // B = zeta1^2 - w anchored at zeta1 = 0 has dB/dzeta1 = 0 there
        let b = TruncatedSeries::from_terms(
            2,
            6,
            vec![
                (MultiIndex(vec![0, 2]), cc(1.0)),
                (MultiIndex(vec![1, 0]), cc(-1.0)),
            ],
        );
        assert!(matches!(
            implicit_solve(&b, 1, cc(0.0)),
            Err(Error::ImplicitDegenerate { .. })
        ));
    }

    #[test]
    fn transport_equation() {
        // f_{w2} = f_{w1}, data w1 -> f = w1 + w2
        let rhs = TruncatedSeries::variable(4, 10, 3); // slots (w1, w2, u, q1)
        let data = TruncatedSeries::variable(1, 10, 0);
        let p = FirstOrderPDE::new(2, rhs, data).unwrap();
        let (f, res) = ck_solve(&p, 10).unwrap();
        assert!(res < 1e-12);
        let expected =
            TruncatedSeries::variable(2, 10, 0).add(&TruncatedSeries::variable(2, 10, 1));
        assert!(f.approx_eq(&expected, 1e-12));
    }

    #[test]
    fn exponential_equation() {
        // f_{w2} = f, data w1 -> f = w1 e^{w2}
        let rhs = TruncatedSeries::variable(4, 10, 2);
        let data = TruncatedSeries::variable(1, 10, 0);
        let p = FirstOrderPDE::new(2, rhs, data).unwrap();
        let (f, res) = ck_solve(&p, 10).unwrap();
        assert!(res < 1e-12);
        let mut factorial = 1.0;
        for k in 0..=9u32 {
            if k > 0 {
                factorial *= k as f64;
            }
            let got = f.coeff(&MultiIndex(vec![1, k]));
            assert!(
                (got - cc(1.0 / factorial)).norm() < 1e-12,
                "coefficient w1 w2^{k}"
            );
        }
    }

    #[test]
    fn riccati_equation() {
        // f' = f^2, f(0) = 1 -> f = 1/(1-w), all coefficients 1
        let u = TruncatedSeries::variable(2, 10, 1);
        let rhs = u.mul(&u);
        let data = TruncatedSeries::constant(0, 10, cc(1.0));
        let p = FirstOrderPDE::new(1, rhs, data).unwrap();
        let (f, res) = ck_solve(&p, 10).unwrap();
        assert!(res < 1e-12);
        for k in 0..=10u32 {
            assert!(
                (f.coeff(&MultiIndex(vec![k])) - cc(1.0)).norm() < 1e-12,
                "coefficient of w^{k}"
            );
        }
    }

    #[test]
    fn data_restriction_is_exact() {
        let rhs = TruncatedSeries::variable(4, 8, 2)
            .mul(&TruncatedSeries::variable(4, 8, 3))
            .add(&TruncatedSeries::variable(4, 8, 0));
        let data = TruncatedSeries::from_terms(
            1,
            8,
            vec![
                (MultiIndex(vec![1]), cc(0.7)),
                (MultiIndex(vec![2]), cc(-0.25)),
            ],
        );
        let p = FirstOrderPDE::new(2, rhs, data.clone()).unwrap();
        let (f, _) = ck_solve(&p, 8).unwrap();
        let restricted = f.stratum(1, 0);
        assert!(restricted.approx_eq(&data, 1e-12));
    }

    #[test]
    fn solve_is_deterministic() {
        let rhs = TruncatedSeries::variable(4, 8, 2).mul(&TruncatedSeries::variable(4, 8, 0));
        let data = TruncatedSeries::variable(1, 8, 0);
        let p = FirstOrderPDE::new(2, rhs, data).unwrap();
        let (f1, _) = ck_solve(&p, 8).unwrap();
        let (f2, _) = ck_solve(&p, 8).unwrap();
        assert!(f1.approx_eq(&f2, 0.0));
    }

    #[test]
    fn polynomial_roots_quadratic() {
        // x^2 - 3x + 2 = 0 -> {1, 2}
        let roots = polynomial_roots(&[cc(2.0), cc(-3.0), cc(1.0)]);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - cc(1.0)).norm() < 1e-10);
        assert!((roots[1] - cc(2.0)).norm() < 1e-10);
    }

    #[test]
    fn anchor_root_linear_case() {
        // B = 1 + zeta1 over (z, zeta1): root -1
        let b = TruncatedSeries::from_terms(
            2,
            6,
            vec![
                (MultiIndex(vec![0, 0]), cc(1.0)),
                (MultiIndex(vec![0, 1]), cc(1.0)),
            ],
        );
        let r = find_anchor_root(&b, 1, None).unwrap();
        assert!((r - cc(-1.0)).norm() < 1e-12);
    }

    #[test]
    fn anchor_root_choice_parameter() {
        // B = zeta^2 - 1: roots -1, 1 sorted by (re, im)
        let b = TruncatedSeries::from_terms(
            1,
            6,
            vec![
                (MultiIndex(vec![2]), cc(1.0)),
                (MultiIndex(vec![0]), cc(-1.0)),
            ],
        );
        let r0 = find_anchor_root(&b, 0, Some(0)).unwrap();
        let r1 = find_anchor_root(&b, 0, Some(1)).unwrap();
        assert!((r0 - cc(-1.0)).norm() < 1e-10);
        assert!((r1 - cc(1.0)).norm() < 1e-10);
        assert!(matches!(
            find_anchor_root(&b, 0, Some(2)),
            Err(Error::RootChoiceOutOfRange { .. })
        ));
    }
}
