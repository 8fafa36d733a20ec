//! Real-analytic series in (z, zbar) with Hermitian coefficient symmetry.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::{Error, Result};

use super::{MultiIndex, TruncatedSeries, PRUNE_FLOOR};

/// Bidegree series `sum c(a,b) z^a zbar^b` carrying a real-valued function,
/// so that `c(a,b) = conj(c(b,a))`. Used for defining functions rho(z, zbar).
#[derive(Debug, Clone)]
pub struct RealAnalyticSeries {
    nvars: usize,
    order: usize,
    coeffs: BTreeMap<(MultiIndex, MultiIndex), Complex64>,
}

impl RealAnalyticSeries {
    pub fn zero(nvars: usize, order: usize) -> Self {
        RealAnalyticSeries {
            nvars,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// Build from raw terms and verify the reality symmetry within `tol`.
    pub fn from_terms<I>(nvars: usize, order: usize, terms: I, tol: f64) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, MultiIndex, Complex64)>,
    {
        let mut s = Self::zero(nvars, order);
        for (a, b, c) in terms {
            if a.len() != nvars || b.len() != nvars {
                return Err(Error::Validation(format!(
                    "rho exponent length must be {nvars}"
                )));
            }
            if (a.degree() + b.degree()) as usize > order {
                continue;
            }
            let e = s.coeffs.entry((a, b)).or_insert(Complex64::new(0.0, 0.0));
            *e += c;
        }
        let defect = s.reality_defect();
        if defect > tol {
            return Err(Error::Validation(format!(
                "rho violates the reality symmetry coeff(a,b) = conj(coeff(b,a)) by {defect:.3e}"
            )));
        }
        // Hermitize exactly so downstream identities hold to rounding.
        let snapshot: Vec<_> = s
            .coeffs
            .iter()
            .map(|((a, b), c)| (a.clone(), b.clone(), *c))
            .collect();
        let mut out = Self::zero(nvars, order);
        let half = Complex64::new(0.5, 0.0);
        for (a, b, c) in snapshot {
            let mirror = s
                .coeffs
                .get(&(b.clone(), a.clone()))
                .copied()
                .unwrap_or(Complex64::new(0.0, 0.0));
            let v = (c + mirror.conj()) * half;
            if v.norm() > PRUNE_FLOOR {
                out.coeffs.insert((a, b), v);
            }
        }
        Ok(out)
    }

    /// Insert `c z^a zbar^b + conj(c) z^b zbar^a` (keeps reality by construction).
    pub fn insert_hermitian(&mut self, a: MultiIndex, b: MultiIndex, c: Complex64) {
        if (a.degree() + b.degree()) as usize > self.order {
            return;
        }
        if a == b {
            let e = self
                .coeffs
                .entry((a, b))
                .or_insert(Complex64::new(0.0, 0.0));
            *e += Complex64::new(2.0 * c.re, 0.0);
            return;
        }
        let e = self
            .coeffs
            .entry((a.clone(), b.clone()))
            .or_insert(Complex64::new(0.0, 0.0));
        *e += c;
        let e2 = self.coeffs.entry((b, a)).or_insert(Complex64::new(0.0, 0.0));
        *e2 += c.conj();
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &Complex64)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, a: &MultiIndex, b: &MultiIndex) -> Complex64 {
        self.coeffs
            .get(&(a.clone(), b.clone()))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Max violation of `coeff(a,b) = conj(coeff(b,a))` over stored terms.
    pub fn reality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for ((a, b), c) in &self.coeffs {
            let mirror = self
                .coeffs
                .get(&(b.clone(), a.clone()))
                .copied()
                .unwrap_or(Complex64::new(0.0, 0.0));
            worst = worst.max((c - mirror.conj()).norm());
        }
        worst
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn prune(mut self) -> Self {
        self.coeffs.retain(|_, c| c.norm() > PRUNE_FLOOR);
        self
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut out = Self::zero(self.nvars, order);
        for ((a, b), c) in &self.coeffs {
            if (a.degree() + b.degree()) as usize <= order {
                out.coeffs.insert((a.clone(), b.clone()), *c);
            }
        }
        out
    }

    /// Raise the truncation cap, treating stored terms as exact polynomial data.
    pub fn assume_exact_to(&self, order: usize) -> Self {
        let mut out = self.clone();
        assert!(
            order >= self.order
                || self
                    .coeffs
                    .keys()
                    .all(|(a, b)| ((a.degree() + b.degree()) as usize) <= order)
        );
        out.order = order;
        out
    }

    pub fn add(&self, other: &RealAnalyticSeries) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable-count mismatch");
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.nvars, order);
        for ((a, b), c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if (a.degree() + b.degree()) as usize > order {
                continue;
            }
            let e = out
                .coeffs
                .entry((a.clone(), b.clone()))
                .or_insert(Complex64::new(0.0, 0.0));
            *e += c;
        }
        out.prune()
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c *= factor;
        }
        out.prune()
    }

    pub fn mul(&self, other: &RealAnalyticSeries) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable-count mismatch");
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.nvars, order);
        for ((a1, b1), c1) in &self.coeffs {
            let d1 = (a1.degree() + b1.degree()) as usize;
            if d1 > order {
                continue;
            }
            for ((a2, b2), c2) in &other.coeffs {
                let d2 = (a2.degree() + b2.degree()) as usize;
                if d1 + d2 > order {
                    continue;
                }
                let key = (a1.add(a2), b1.add(b2));
                let e = out.coeffs.entry(key).or_insert(Complex64::new(0.0, 0.0));
                *e += c1 * c2;
            }
        }
        out.prune()
    }

    /// Partial derivative in the holomorphic slot `z_var`.
    pub fn z_derive(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = Self::zero(self.nvars, self.order.saturating_sub(1));
        for ((a, b), c) in &self.coeffs {
            let k = a.0[var];
            if k == 0 {
                continue;
            }
            let mut e = a.clone();
            e.0[var] = k - 1;
            let key = (e, b.clone());
            let entry = out.coeffs.entry(key).or_insert(Complex64::new(0.0, 0.0));
            *entry += c * Complex64::new(k as f64, 0.0);
        }
        out.prune()
    }

    /// Partial derivative in the antiholomorphic slot `zbar_var`.
    pub fn zbar_derive(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = Self::zero(self.nvars, self.order.saturating_sub(1));
        for ((a, b), c) in &self.coeffs {
            let k = b.0[var];
            if k == 0 {
                continue;
            }
            let mut e = b.clone();
            e.0[var] = k - 1;
            let key = (a.clone(), e);
            let entry = out.coeffs.entry(key).or_insert(Complex64::new(0.0, 0.0));
            *entry += c * Complex64::new(k as f64, 0.0);
        }
        out.prune()
    }

    /// Evaluate at `point` with `zbar = conj(point)`; the imaginary part must
    /// sit below the reality tolerance and the real part is returned.
    pub fn eval(&self, point: &[Complex64]) -> f64 {
        let v = self.eval_complex(point);
        debug_assert!(
            v.im.abs() <= 1e-9 * (1.0 + v.re.abs()),
            "real-analytic series evaluated to a non-real value: {v}"
        );
        v.re
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars, "point length must equal nvars");
        let max_e = self.order;
        let powers: Vec<Vec<Complex64>> = point
            .iter()
            .map(|&p| {
                let mut v = Vec::with_capacity(max_e + 1);
                v.push(Complex64::new(1.0, 0.0));
                for k in 1..=max_e {
                    let prev = v[k - 1];
                    v.push(prev * p);
                }
                v
            })
            .collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for ((a, b), c) in &self.coeffs {
            let mut term = *c;
            for (j, &e) in a.0.iter().enumerate() {
                if e > 0 {
                    term *= powers[j][e as usize];
                }
            }
            for (j, &e) in b.0.iter().enumerate() {
                if e > 0 {
                    term *= powers[j][e as usize].conj();
                }
            }
            acc += term;
        }
        acc
    }

    /// Holomorphic gradient (d/dz_1, ..., d/dz_n) evaluated at `point`.
    pub fn holomorphic_gradient_at(&self, point: &[Complex64]) -> Vec<Complex64> {
        (0..self.nvars)
            .map(|j| self.z_derive(j).eval_complex(point))
            .collect()
    }

    /// Mixed second derivative d^2/dz_j dzbar_k at `point`.
    pub fn zzbar_at(&self, j: usize, k: usize, point: &[Complex64]) -> Complex64 {
        self.z_derive(j).zbar_derive(k).eval_complex(point)
    }

    /// Pure second derivative d^2/dz_j dz_k at `point`.
    pub fn zz_at(&self, j: usize, k: usize, point: &[Complex64]) -> Complex64 {
        self.z_derive(j).z_derive(k).eval_complex(point)
    }

    /// Extract the bidegree-(p, q) part as raw terms.
    pub fn bidegree_terms(&self, p: u32, q: u32) -> Vec<(MultiIndex, MultiIndex, Complex64)> {
        self.coeffs
            .iter()
            .filter(|((a, b), _)| a.degree() == p && b.degree() == q)
            .map(|((a, b), c)| (a.clone(), b.clone(), *c))
            .collect()
    }

    /// Recenter at `p`: the series of `w -> self(p + w)`. Exact on stored terms.
    pub fn translate(&self, p: &[Complex64]) -> Self {
        assert_eq!(p.len(), self.nvars);
        if p.iter().all(|c| c.norm() <= PRUNE_FLOOR) {
            return self.clone();
        }
        let mut out = Self::zero(self.nvars, self.order);
        for ((a, b), c) in &self.coeffs {
            let hol = expand_shifted(a, p, *c);
            for (ea, va) in hol {
                let pb: Vec<Complex64> = p.iter().map(|z| z.conj()).collect();
                let anti = expand_shifted(b, &pb, Complex64::new(1.0, 0.0));
                for (eb, vb) in anti {
                    let key = (ea.clone(), eb);
                    let e = out.coeffs.entry(key).or_insert(Complex64::new(0.0, 0.0));
                    *e += va * vb;
                }
            }
        }
        out.prune()
    }

    /// Substitute the holomorphic map `z_k = map[k](w)` (and its conjugate in
    /// the zbar slots). Every component must have zero constant term.
    pub fn compose_holomorphic(&self, map: &[TruncatedSeries]) -> Result<RealAnalyticSeries> {
        assert_eq!(map.len(), self.nvars, "map component count must equal nvars");
        let w_nvars = map.first().map(|s| s.nvars()).unwrap_or(0);
        let mut order = self.order;
        for s in map {
            let c0 = s.constant_term();
            if c0.norm() > PRUNE_FLOOR {
                return Err(Error::NonzeroInnerConstant(c0));
            }
            order = order.min(s.order());
        }
        let mut powers: PowerCache = PowerCache::new(map, w_nvars, order);
        let mut out = RealAnalyticSeries::zero(w_nvars, order);
        for ((a, b), c) in &self.coeffs {
            if (a.degree() + b.degree()) as usize > order {
                continue;
            }
            let hol = powers.power(a).clone();
            let anti = powers.power(b).conj();
            for (ea, va) in hol.terms() {
                let da = ea.degree() as usize;
                if da > order {
                    continue;
                }
                for (eb, vb) in anti.terms() {
                    if da + eb.degree() as usize > order {
                        continue;
                    }
                    let key = (ea.clone(), eb.clone());
                    let e = out.coeffs.entry(key).or_insert(Complex64::new(0.0, 0.0));
                    *e += c * va * vb;
                }
            }
        }
        Ok(out.prune())
    }
}

/// Expand `c * prod_j (w_j + p_j)^{a_j}` into monomials in `w`.
fn expand_shifted(
    a: &MultiIndex,
    p: &[Complex64],
    c: Complex64,
) -> Vec<(MultiIndex, Complex64)> {
    let mut partial: Vec<(MultiIndex, Complex64)> = vec![(MultiIndex::zero(a.len()), c)];
    for (j, &aj) in a.0.iter().enumerate() {
        if aj == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(partial.len() * (aj as usize + 1));
        for (base_idx, base_c) in &partial {
            let mut binom = 1.0;
            for k in 0..=aj {
                if k > 0 {
                    binom = binom * ((aj - k + 1) as f64) / (k as f64);
                }
                let mut e = base_idx.clone();
                e.0[j] += k;
                next.push((e, base_c * p[j].powu(aj - k) * binom));
            }
        }
        partial = next;
    }
    partial
}

/// Memoized powers `prod_j map[j]^{a_j}` shared across coefficients.
struct PowerCache<'a> {
    map: &'a [TruncatedSeries],
    cache: BTreeMap<MultiIndex, TruncatedSeries>,
    order: usize,
}

impl<'a> PowerCache<'a> {
    fn new(map: &'a [TruncatedSeries], w_nvars: usize, order: usize) -> Self {
        let mut cache = BTreeMap::new();
        let nvars = map.len();
        cache.insert(
            MultiIndex::zero(nvars),
            TruncatedSeries::constant(w_nvars, order, Complex64::new(1.0, 0.0)),
        );
        PowerCache { map, cache, order }
    }

    fn power(&mut self, a: &MultiIndex) -> &TruncatedSeries {
        if !self.cache.contains_key(a) {
            let j = a.0.iter().position(|&e| e > 0).expect("nonzero index");
            let mut prev = a.clone();
            prev.0[j] -= 1;
            let base = self.power(&prev).clone();
            let p = base.mul(&self.map[j].truncate(self.order));
            self.cache.insert(a.clone(), p);
        }
        self.cache.get(a).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// rho = -2 Re z2 + |z1|^2 on C^2.
    pub fn sphere_rho(order: usize) -> RealAnalyticSeries {
        let mut s = RealAnalyticSeries::zero(2, order);
        s.insert_hermitian(MultiIndex(vec![0, 1]), MultiIndex(vec![0, 0]), c(-1.0, 0.0));
        s.insert_hermitian(
            MultiIndex(vec![1, 0]),
            MultiIndex(vec![1, 0]),
            c(0.5, 0.0),
        );
        s
    }

    #[test]
    fn sphere_eval() {
        let rho = sphere_rho(4);
        // at (1, 0): |1|^2 = 1
        assert!((rho.eval(&[c(1.0, 0.0), c(0.0, 0.0)]) - 1.0).abs() < 1e-14);
        // at (0, 1): -2 Re 1 = -2
        assert!((rho.eval(&[c(0.0, 0.0), c(1.0, 0.0)]) + 2.0).abs() < 1e-14);
    }

    #[test]
    fn gradient_of_sphere() {
        let rho = sphere_rho(4);
        let g = rho.holomorphic_gradient_at(&[c(0.0, 0.0), c(0.0, 0.0)]);
        assert!((g[0] - c(0.0, 0.0)).norm() < 1e-14);
        assert!((g[1] - c(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn reality_enforced() {
        // a term without its mirror fails validation
        let r = RealAnalyticSeries::from_terms(
            1,
            3,
            vec![(MultiIndex(vec![1]), MultiIndex(vec![0]), c(1.0, 0.0))],
            1e-12,
        );
        assert!(r.is_err());
        // with the mirror it passes
        let r = RealAnalyticSeries::from_terms(
            1,
            3,
            vec![
                (MultiIndex(vec![1]), MultiIndex(vec![0]), c(0.0, 1.0)),
                (MultiIndex(vec![0]), MultiIndex(vec![1]), c(0.0, -1.0)),
            ],
            1e-12,
        )
        .unwrap();
        assert!(r.reality_defect() < 1e-15);
        let v = r.eval(&[c(0.3, -0.2)]);
        // i z + conj(i z) = 2 Re(i z) = -2 Im z = 0.4
        assert!((v - 0.4).abs() < 1e-14);
    }

    #[test]
    fn eval_is_real_at_random_points() {
        let rho = sphere_rho(6);
        let pts = [
            [c(0.1, 0.2), c(-0.05, 0.07)],
            [c(-0.3, 0.1), c(0.02, -0.04)],
        ];
        for p in pts {
            let v = rho.eval_complex(&p);
            assert!(v.im.abs() < 1e-12);
        }
    }

    #[test]
    fn translate_keeps_values() {
        let rho = sphere_rho(4);
        let p = [c(0.1, -0.05), c(0.02, 0.03)];
        let t = rho.translate(&p);
        let w = [c(0.04, 0.01), c(-0.02, 0.02)];
        let z: Vec<Complex64> = p.iter().zip(&w).map(|(a, b)| a + b).collect();
        assert!((t.eval(&w) - rho.eval(&z)).abs() < 1e-12);
    }

    #[test]
    fn compose_holomorphic_linear() {
        // substitute z1 = 2 w1 into |z1|^2: get 4 |w1|^2
        let mut s = RealAnalyticSeries::zero(1, 4);
        s.insert_hermitian(MultiIndex(vec![1]), MultiIndex(vec![1]), c(0.5, 0.0));
        let map = vec![TruncatedSeries::variable(1, 4, 0).scale(c(2.0, 0.0))];
        let t = s.compose_holomorphic(&map).unwrap();
        assert!((t.coeff(&MultiIndex(vec![1]), &MultiIndex(vec![1])) - c(4.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn mixed_second_derivatives() {
        let rho = sphere_rho(5);
        let zero = [c(0.0, 0.0), c(0.0, 0.0)];
        assert!((rho.zzbar_at(0, 0, &zero) - c(1.0, 0.0)).norm() < 1e-14);
        assert!(rho.zzbar_at(1, 1, &zero).norm() < 1e-14);
        assert!(rho.zz_at(0, 0, &zero).norm() < 1e-14);
    }
}
