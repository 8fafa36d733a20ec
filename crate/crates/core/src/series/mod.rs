//! Truncated multivariate power series over the complex numbers.
//!
//! A [`TruncatedSeries`] stores coefficients for monomials of total degree at
//! most `order` in a map keyed by multi-index in graded-lexicographic order.
//! Binary operations truncate to the minimum of the operand orders, so every
//! coefficient of a result is exact for the corresponding infinite-order
//! object whenever the inputs were.

mod real;

pub use real::RealAnalyticSeries;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::{Error, Result};

/// Magnitude floor below which coefficients are dropped.
pub const PRUNE_FLOOR: f64 = 1e-14;

/// Exponent vector of a monomial, one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(nvars: usize) -> Self {
        MultiIndex(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        MultiIndex(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference, `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.len(), other.len());
        let mut out = Vec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(MultiIndex(out))
    }
}

impl Ord for MultiIndex {
    /// Graded-lexicographic order: total degree first, then entries.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Holomorphic multivariate power series truncated at a total degree.
#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    nvars: usize,
    order: usize,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, order: usize) -> Self {
        TruncatedSeries {
            nvars,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, order: usize, value: Complex64) -> Self {
        let mut s = Self::zero(nvars, order);
        s.insert(MultiIndex::zero(nvars), value);
        s
    }

    /// The series `z_var`, truncated at `order`.
    pub fn variable(nvars: usize, order: usize, var: usize) -> Self {
        assert!(var < nvars, "variable index out of range");
        let mut s = Self::zero(nvars, order);
        if order >= 1 {
            s.insert(MultiIndex::unit(nvars, var), Complex64::new(1.0, 0.0));
        }
        s
    }

    pub fn monomial(nvars: usize, order: usize, index: MultiIndex, value: Complex64) -> Self {
        assert_eq!(index.len(), nvars);
        let mut s = Self::zero(nvars, order);
        s.insert(index, value);
        s
    }

    pub fn from_terms<I>(nvars: usize, order: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        let mut s = Self::zero(nvars, order);
        for (idx, c) in terms {
            assert_eq!(idx.len(), nvars, "multi-index length must match nvars");
            s.add_to(idx, c);
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, index: &MultiIndex) -> Complex64 {
        self.coeffs
            .get(index)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeff(&MultiIndex::zero(self.nvars))
    }

    fn insert(&mut self, index: MultiIndex, value: Complex64) {
        if index.degree() as usize <= self.order && value.norm() > PRUNE_FLOOR {
            self.coeffs.insert(index, value);
        }
    }

    fn add_to(&mut self, index: MultiIndex, value: Complex64) {
        if index.degree() as usize > self.order {
            return;
        }
        let entry = self
            .coeffs
            .entry(index)
            .or_insert(Complex64::new(0.0, 0.0));
        *entry += value;
    }

    fn prune(mut self) -> Self {
        self.coeffs.retain(|_, c| c.norm() > PRUNE_FLOOR);
        self
    }

    /// Largest coefficient magnitude over all stored terms.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient magnitude over terms of total degree <= `degree`.
    pub fn max_coeff_through(&self, degree: usize) -> f64 {
        self.coeffs
            .iter()
            .filter(|(idx, _)| idx.degree() as usize <= degree)
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_coeff() <= tol
    }

    pub fn approx_eq(&self, other: &TruncatedSeries, tol: f64) -> bool {
        self.sub(other).max_coeff() <= tol
    }

    /// Drop terms above `order` and lower the truncation cap. Never raises
    /// the cap; see [`TruncatedSeries::assume_exact_to`] for that.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut out = TruncatedSeries::zero(self.nvars, order);
        for (idx, c) in &self.coeffs {
            if idx.degree() as usize <= order {
                out.coeffs.insert(idx.clone(), *c);
            }
        }
        out
    }

    /// Raise the truncation cap, treating the stored terms as an exact
    /// polynomial. Only valid when the series really is polynomial data, e.g.
    /// the finitely many records of a problem file.
    pub fn assume_exact_to(&self, order: usize) -> Self {
        assert!(order >= self.order || self.coeffs.keys().all(|i| (i.degree() as usize) <= order));
        let mut out = self.clone();
        out.order = order;
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -*c;
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c *= factor;
        }
        out.prune()
    }

    pub fn add(&self, other: &TruncatedSeries) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable-count mismatch");
        let order = self.order.min(other.order);
        let mut out = TruncatedSeries::zero(self.nvars, order);
        for (idx, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.add_to(idx.clone(), *c);
        }
        out.prune()
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable-count mismatch");
        let order = self.order.min(other.order);
        let mut out = TruncatedSeries::zero(self.nvars, order);
        // Keys iterate in graded order, so both loops can stop early.
        for (ia, ca) in &self.coeffs {
            let da = ia.degree() as usize;
            if da > order {
                break;
            }
            for (ib, cb) in &other.coeffs {
                if da + ib.degree() as usize > order {
                    break;
                }
                out.add_to(ia.add(ib), ca * cb);
            }
        }
        out.prune()
    }

    /// Formal partial derivative with respect to variable `var`.
    /// The result order is one below the input order.
    pub fn derive(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable index out of range");
        let order = self.order.saturating_sub(1);
        let mut out = TruncatedSeries::zero(self.nvars, order);
        for (idx, c) in &self.coeffs {
            let k = idx.0[var];
            if k == 0 {
                continue;
            }
            let mut e = idx.clone();
            e.0[var] = k - 1;
            out.add_to(e, c * Complex64::new(k as f64, 0.0));
        }
        out.prune()
    }

    /// Substitute `inner[j]` for variable `j`. Every inner series must have a
    /// vanishing constant term; use [`TruncatedSeries::compose_at`] otherwise.
    pub fn compose(&self, inner: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        assert_eq!(inner.len(), self.nvars, "inner count must equal nvars");
        for s in inner {
            let c0 = s.constant_term();
            if c0.norm() > PRUNE_FLOOR {
                return Err(Error::NonzeroInnerConstant(c0));
            }
        }
        Ok(self.compose_unchecked(inner))
    }

    /// Substitution that first re-expands this series about the constant
    /// terms of `inner`. The shift is exact only when the series is a genuine
    /// polynomial in every slot whose inner constant is nonzero, which is the
    /// caller's responsibility (symbols are polynomial in the covector slots).
    pub fn compose_at(&self, inner: &[TruncatedSeries]) -> TruncatedSeries {
        assert_eq!(inner.len(), self.nvars, "inner count must equal nvars");
        let shift: Vec<Complex64> = inner.iter().map(|s| s.constant_term()).collect();
        let shifted = self.taylor_shift(&shift);
        let centered: Vec<TruncatedSeries> = inner
            .iter()
            .zip(&shift)
            .map(|(s, c)| s.sub(&TruncatedSeries::constant(s.nvars, s.order, *c)))
            .collect();
        shifted.compose_unchecked(&centered)
    }

    fn compose_unchecked(&self, inner: &[TruncatedSeries]) -> TruncatedSeries {
        let inner_nvars = inner.first().map(|s| s.nvars).unwrap_or(0);
        let mut order = self.order;
        for s in inner {
            assert_eq!(s.nvars, inner_nvars, "inner series variable-count mismatch");
            order = order.min(s.order);
        }
        let mut out = TruncatedSeries::zero(inner_nvars, order);
        // Power tables per substituted variable, built on demand.
        let mut powers: Vec<Vec<TruncatedSeries>> = inner
            .iter()
            .map(|s| vec![TruncatedSeries::constant(inner_nvars, order, Complex64::new(1.0, 0.0)), s.truncate(order)])
            .collect();
        for (idx, c) in &self.coeffs {
            if idx.degree() as usize > order {
                break;
            }
            let mut term = TruncatedSeries::constant(inner_nvars, order, *c);
            let mut dead = false;
            for (j, &e) in idx.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let last = powers[j].last().unwrap().mul(&powers[j][1]);
                    powers[j].push(last);
                }
                let p = &powers[j][e as usize];
                if p.coeffs.is_empty() {
                    dead = true;
                    break;
                }
                term = term.mul(p);
            }
            if !dead {
                out = out.add(&term);
            }
        }
        out
    }

    /// Re-expand about the point `shift`: returns the series of
    /// `z -> self(z + shift)`. Exact on the stored terms.
    pub fn taylor_shift(&self, shift: &[Complex64]) -> TruncatedSeries {
        assert_eq!(shift.len(), self.nvars);
        if shift.iter().all(|c| c.norm() <= PRUNE_FLOOR) {
            return self.clone();
        }
        let mut out = TruncatedSeries::zero(self.nvars, self.order);
        for (idx, c) in &self.coeffs {
            // Expand prod_j (z_j + shift_j)^{alpha_j} one variable at a time.
            let mut partial: Vec<(MultiIndex, Complex64)> =
                vec![(MultiIndex::zero(self.nvars), *c)];
            for (j, &a) in idx.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let mut next = Vec::with_capacity(partial.len() * (a as usize + 1));
                for (base_idx, base_c) in &partial {
                    let mut binom = 1.0;
                    for k in 0..=a {
                        // binom(a, k) built multiplicatively.
                        if k > 0 {
                            binom = binom * ((a - k + 1) as f64) / (k as f64);
                        }
                        let mut e = base_idx.clone();
                        e.0[j] += k;
                        let pow = shift[j].powu(a - k);
                        next.push((e, base_c * pow * binom));
                    }
                }
                partial = next;
            }
            for (e, v) in partial {
                out.add_to(e, v);
            }
        }
        out.prune()
    }

    /// Multiplicative inverse modulo degree `order + 1`.
    /// Requires a nonzero constant term.
    pub fn reciprocal(&self) -> Result<TruncatedSeries> {
        let c0 = self.constant_term();
        if c0.norm() <= PRUNE_FLOOR {
            return Err(Error::NotAUnit(c0));
        }
        let inv0 = Complex64::new(1.0, 0.0) / c0;
        // s = c0 (1 + t); 1/s = (1/c0) sum (-t)^k, evaluated by Horner.
        let one = TruncatedSeries::constant(self.nvars, self.order, Complex64::new(1.0, 0.0));
        let t = self.scale(inv0).sub(&one);
        let mut acc = one.clone();
        for _ in 0..self.order {
            acc = one.sub(&t.mul(&acc));
        }
        Ok(acc.scale(inv0))
    }

    /// Numeric evaluation at a point.
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars, "point length must equal nvars");
        let mut powers: Vec<Vec<Complex64>> = point
            .iter()
            .map(|&p| {
                let mut v = Vec::with_capacity(self.order + 1);
                v.push(Complex64::new(1.0, 0.0));
                for k in 1..=self.order {
                    let prev = v[k - 1];
                    v.push(prev * p);
                }
                v
            })
            .collect();
        if self.nvars == 0 {
            powers = Vec::new();
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, c) in &self.coeffs {
            let mut term = *c;
            for (j, &e) in idx.0.iter().enumerate() {
                if e > 0 {
                    term *= powers[j][e as usize];
                }
            }
            acc += term;
        }
        acc
    }

    /// Coefficients of `w_var^stratum`, as a series in the remaining
    /// variables (variable `var` is removed from the index set).
    pub fn stratum(&self, var: usize, stratum: u32) -> TruncatedSeries {
        assert!(var < self.nvars);
        let order = self.order.saturating_sub(stratum as usize);
        let mut out = TruncatedSeries::zero(self.nvars - 1, order);
        for (idx, c) in &self.coeffs {
            if idx.0[var] != stratum {
                continue;
            }
            let mut e = idx.0.clone();
            e.remove(var);
            out.add_to(MultiIndex(e), *c);
        }
        out
    }

    /// Embed into a larger variable set: old variable `j` becomes variable
    /// `slots[j]` of a series in `new_nvars` variables.
    pub fn embed(&self, new_nvars: usize, slots: &[usize]) -> TruncatedSeries {
        assert_eq!(slots.len(), self.nvars);
        let mut out = TruncatedSeries::zero(new_nvars, self.order);
        for (idx, c) in &self.coeffs {
            let mut e = vec![0u32; new_nvars];
            for (j, &exp) in idx.0.iter().enumerate() {
                e[slots[j]] = exp;
            }
            out.coeffs.insert(MultiIndex(e), *c);
        }
        out
    }

    /// Conjugate every coefficient.
    pub fn conj(&self) -> TruncatedSeries {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = c.conj();
        }
        out
    }

    /// Largest exponent of variable `var` among stored terms.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.coeffs.keys().map(|i| i.0[var]).max().unwrap_or(0)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.im.abs() <= PRUNE_FLOOR {
                write!(f, "{:.6}", c.re)?;
            } else {
                write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            }
            for (j, &e) in idx.0.iter().enumerate() {
                if e == 1 {
                    write!(f, "*z{}", j + 1)?;
                } else if e > 1 {
                    write!(f, "*z{}^{}", j + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn one_plus_z(order: usize) -> TruncatedSeries {
        TruncatedSeries::constant(1, order, c(1.0, 0.0))
            .add(&TruncatedSeries::variable(1, order, 0))
    }

    #[test]
    fn mul_telescopes() {
        // (1+z)(1-z) = 1 - z^2
        let a = one_plus_z(4);
        let b = TruncatedSeries::constant(1, 4, c(1.0, 0.0))
            .sub(&TruncatedSeries::variable(1, 4, 0));
        let p = a.mul(&b);
        let expected = TruncatedSeries::constant(1, 4, c(1.0, 0.0))
            .sub(&TruncatedSeries::monomial(1, 4, MultiIndex(vec![2]), c(1.0, 0.0)));
        assert!(p.approx_eq(&expected, 1e-14));
    }

    #[test]
    fn add_identity() {
        let s = TruncatedSeries::from_terms(
            2,
            5,
            vec![
                (MultiIndex(vec![1, 0]), c(2.0, -1.0)),
                (MultiIndex(vec![0, 3]), c(0.5, 0.25)),
            ],
        );
        assert!(s.add(&TruncatedSeries::zero(2, 5)).approx_eq(&s, 0.0));
    }

    #[test]
    fn binomial_square() {
        // (z1+z2)^2 = z1^2 + 2 z1 z2 + z2^2
        let s = TruncatedSeries::variable(2, 2, 0).add(&TruncatedSeries::variable(2, 2, 1));
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(&MultiIndex(vec![2, 0])), c(1.0, 0.0));
        assert_eq!(sq.coeff(&MultiIndex(vec![1, 1])), c(2.0, 0.0));
        assert_eq!(sq.coeff(&MultiIndex(vec![0, 2])), c(1.0, 0.0));
    }

    #[test]
    fn derive_monomials() {
        let s = TruncatedSeries::monomial(1, 4, MultiIndex(vec![2]), c(1.0, 0.0));
        let d = s.derive(0);
        assert_eq!(d.coeff(&MultiIndex(vec![1])), c(2.0, 0.0));
        assert_eq!(d.order(), 3);

        // d/dz2 of z1 is 0
        let t = TruncatedSeries::variable(2, 4, 0);
        assert!(t.derive(1).is_zero(0.0));

        // d/dz1 of z1^2 z2 = 2 z1 z2
        let u = TruncatedSeries::monomial(2, 4, MultiIndex(vec![2, 1]), c(1.0, 0.0));
        assert_eq!(u.derive(0).coeff(&MultiIndex(vec![1, 1])), c(2.0, 0.0));
    }

    #[test]
    fn compose_polynomial_substitution() {
        // outer = w^2, inner = z1 + z2
        let outer = TruncatedSeries::monomial(1, 2, MultiIndex(vec![2]), c(1.0, 0.0));
        let inner = TruncatedSeries::variable(2, 2, 0).add(&TruncatedSeries::variable(2, 2, 1));
        let r = outer.compose(&[inner]).unwrap();
        assert_eq!(r.coeff(&MultiIndex(vec![2, 0])), c(1.0, 0.0));
        assert_eq!(r.coeff(&MultiIndex(vec![1, 1])), c(2.0, 0.0));
        assert_eq!(r.coeff(&MultiIndex(vec![0, 2])), c(1.0, 0.0));
    }

    #[test]
    fn compose_identity() {
        let s = TruncatedSeries::from_terms(
            1,
            4,
            vec![
                (MultiIndex(vec![1]), c(0.3, 0.1)),
                (MultiIndex(vec![3]), c(-0.2, 0.0)),
            ],
        );
        let w = TruncatedSeries::variable(1, 4, 0);
        assert!(w.compose(&[s.clone()]).unwrap().approx_eq(&s, 1e-14));
    }

    #[test]
    fn compose_geometric_oracle() {
        // outer = 1/(1-w) truncated at 3, inner = z^2; long-division oracle
        // gives 1 + z^2 once truncated at order 3.
        let geom = TruncatedSeries::from_terms(
            1,
            3,
            (0..=3).map(|k| (MultiIndex(vec![k]), c(1.0, 0.0))),
        );
        let inner = TruncatedSeries::monomial(1, 3, MultiIndex(vec![2]), c(1.0, 0.0));
        let r = geom.compose(&[inner]).unwrap();
        let expected = TruncatedSeries::constant(1, 3, c(1.0, 0.0))
            .add(&TruncatedSeries::monomial(1, 3, MultiIndex(vec![2]), c(1.0, 0.0)));
        assert!(r.approx_eq(&expected, 1e-14));
    }

    #[test]
    fn compose_rejects_nonzero_constant() {
        let outer = TruncatedSeries::variable(1, 3, 0);
        let inner = TruncatedSeries::constant(1, 3, c(1.0, 0.0));
        assert!(matches!(
            outer.compose(&[inner]),
            Err(Error::NonzeroInnerConstant(_))
        ));
    }

    #[test]
    fn reciprocal_geometric() {
        // 1/(1-z) = 1 + z + z^2 + z^3 at order 3
        let s = TruncatedSeries::constant(1, 3, c(1.0, 0.0))
            .sub(&TruncatedSeries::variable(1, 3, 0));
        let r = s.reciprocal().unwrap();
        for k in 0..=3 {
            assert!((r.coeff(&MultiIndex(vec![k])) - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn reciprocal_constant() {
        let s = TruncatedSeries::constant(2, 4, c(2.0, 0.0));
        let r = s.reciprocal().unwrap();
        assert!((r.constant_term() - c(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn reciprocal_two_vars() {
        // 1/(1+z1+z2) = 1 - z1 - z2 + z1^2 + 2 z1 z2 + z2^2 - ... at order 2
        let s = TruncatedSeries::constant(2, 2, c(1.0, 0.0))
            .add(&TruncatedSeries::variable(2, 2, 0))
            .add(&TruncatedSeries::variable(2, 2, 1));
        let r = s.reciprocal().unwrap();
        assert!((r.coeff(&MultiIndex(vec![1, 0])) - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((r.coeff(&MultiIndex(vec![2, 0])) - c(1.0, 0.0)).norm() < 1e-12);
        assert!((r.coeff(&MultiIndex(vec![1, 1])) - c(2.0, 0.0)).norm() < 1e-12);
        // product must be 1 modulo degree 3
        let p = s.mul(&r);
        let one = TruncatedSeries::constant(2, 2, c(1.0, 0.0));
        assert!(p.approx_eq(&one, 1e-12));
    }

    #[test]
    fn reciprocal_rejects_nonunit() {
        let s = TruncatedSeries::variable(1, 3, 0);
        assert!(matches!(s.reciprocal(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn eval_affine() {
        let s = one_plus_z(3);
        let v = s.eval(&[c(2.0, 0.0)]);
        assert!((v - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn taylor_shift_exact() {
        // (z+1)^2 = z^2 + 2z + 1
        let s = TruncatedSeries::monomial(1, 4, MultiIndex(vec![2]), c(1.0, 0.0));
        let t = s.taylor_shift(&[c(1.0, 0.0)]);
        assert!((t.coeff(&MultiIndex(vec![0])) - c(1.0, 0.0)).norm() < 1e-14);
        assert!((t.coeff(&MultiIndex(vec![1])) - c(2.0, 0.0)).norm() < 1e-14);
        assert!((t.coeff(&MultiIndex(vec![2])) - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn stratum_extraction() {
        // s = z1 + 3 z1 z2 + z2^2 over (z1, z2); strata in z2
        let s = TruncatedSeries::from_terms(
            2,
            4,
            vec![
                (MultiIndex(vec![1, 0]), c(1.0, 0.0)),
                (MultiIndex(vec![1, 1]), c(3.0, 0.0)),
                (MultiIndex(vec![0, 2]), c(1.0, 0.0)),
            ],
        );
        let s0 = s.stratum(1, 0);
        assert_eq!(s0.nvars(), 1);
        assert_eq!(s0.coeff(&MultiIndex(vec![1])), c(1.0, 0.0));
        let s1 = s.stratum(1, 1);
        assert_eq!(s1.coeff(&MultiIndex(vec![1])), c(3.0, 0.0));
        let s2 = s.stratum(1, 2);
        assert_eq!(s2.coeff(&MultiIndex(vec![0])), c(1.0, 0.0));
    }

    #[test]
    fn graded_lex_ordering() {
        let a = MultiIndex(vec![0, 2]);
        let b = MultiIndex(vec![1, 0]);
        assert!(b < a); // degree 1 before degree 2
        let c1 = MultiIndex(vec![1, 1]);
        let c2 = MultiIndex(vec![2, 0]);
        assert!(c1 < c2); // same degree, lex on entries
    }
}
