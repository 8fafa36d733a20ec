//! Holomorphic partial differential operators and their principal symbols.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::series::{MultiIndex, RealAnalyticSeries, TruncatedSeries};
use crate::{Error, Result};

/// Linear operator `sum_{|alpha| <= m} a_alpha(z) (d/dz)^alpha` with
/// holomorphic coefficient series.
#[derive(Debug, Clone)]
pub struct HoloPDO {
    nvars: usize,
    m: usize,
    terms: BTreeMap<MultiIndex, TruncatedSeries>,
}

impl HoloPDO {
    /// Build from `(alpha, coefficient)` pairs. The order m is the largest
    /// |alpha| carrying a coefficient that is not identically zero.
    pub fn new<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, TruncatedSeries)>,
    {
        let mut map = BTreeMap::new();
        for (alpha, coeff) in terms {
            if alpha.len() != nvars {
                return Err(Error::Validation(format!(
                    "operator multi-index length must be {nvars}"
                )));
            }
            if coeff.nvars() != nvars {
                return Err(Error::Validation(format!(
                    "operator coefficient series must have {nvars} variables"
                )));
            }
            if coeff.is_zero(0.0) {
                continue;
            }
            match map.entry(alpha) {
                std::collections::btree_map::Entry::Vacant(slot) => {
                    slot.insert(coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut slot) => {
                    let merged = slot.get().add(&coeff);
                    *slot.get_mut() = merged;
                }
            }
        }
        map.retain(|_, c: &mut TruncatedSeries| !c.is_zero(0.0));
        let m = map
            .keys()
            .map(|a| a.degree() as usize)
            .max()
            .ok_or_else(|| Error::Validation("operator has no nonzero terms".into()))?;
        if m < 1 {
            return Err(Error::Validation("operator order must be at least 1".into()));
        }
        Ok(HoloPDO {
            nvars,
            m,
            terms: map,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Operator order m.
    pub fn order(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &TruncatedSeries)> {
        self.terms.iter()
    }

    /// Recenter every coefficient at `p`. Exact on polynomial data.
    pub fn translate(&self, p: &[Complex64]) -> HoloPDO {
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| (a.clone(), c.taylor_shift(p)))
            .collect::<BTreeMap<_, _>>();
        HoloPDO {
            nvars: self.nvars,
            m: self.m,
            terms,
        }
    }

    /// Raise every coefficient's truncation cap (exact polynomial data only).
    pub fn assume_exact_to(&self, order: usize) -> HoloPDO {
        HoloPDO {
            nvars: self.nvars,
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), c.assume_exact_to(order)))
                .collect(),
        }
    }

    pub fn truncate(&self, order: usize) -> HoloPDO {
        HoloPDO {
            nvars: self.nvars,
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), c.truncate(order)))
                .collect(),
        }
    }

    /// Multiply every coefficient by a series (dividing the operator by a
    /// unit function is `scale_by_series(reciprocal(unit))`).
    pub fn scale_by_series(&self, factor: &TruncatedSeries) -> HoloPDO {
        HoloPDO {
            nvars: self.nvars,
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), c.mul(factor)))
                .collect(),
        }
    }

    /// Apply the operator to a series: `sum a_alpha (d/dz)^alpha u`,
    /// truncated at `order(u) - m`.
    pub fn apply(&self, u: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(u.nvars(), self.nvars, "variable-count mismatch");
        let out_order = u.order().saturating_sub(self.m);
        let mut out = TruncatedSeries::zero(self.nvars, out_order);
        for (alpha, coeff) in &self.terms {
            let mut du = u.clone();
            for (j, &e) in alpha.0.iter().enumerate() {
                for _ in 0..e {
                    du = du.derive(j);
                }
            }
            out = out.add(&coeff.mul(&du).truncate(out_order));
        }
        out
    }

    /// The degree-m part as a polynomial in the covector.
    pub fn principal_symbol(&self) -> PrincipalSymbol {
        let terms = self
            .terms
            .iter()
            .filter(|(a, _)| a.degree() as usize == self.m)
            .map(|(a, c)| (a.clone(), c.clone()))
            .collect();
        PrincipalSymbol {
            nvars: self.nvars,
            m: self.m,
            terms,
        }
    }
}

/// Principal symbol `P_m(z, zeta) = sum_{|beta| = m} a_beta(z) zeta^beta`,
/// stored as a map from covector exponents to coefficient series in z. The
/// covector degree is exactly m, so substitutions like `tau = -1` stay exact.
#[derive(Debug, Clone)]
pub struct PrincipalSymbol {
    nvars: usize,
    m: usize,
    terms: BTreeMap<MultiIndex, TruncatedSeries>,
}

/// Symbol data evaluated at a base point and covector.
#[derive(Debug, Clone)]
pub struct SymbolValue {
    pub point: Vec<Complex64>,
    pub covector: Vec<Complex64>,
    pub value: Complex64,
    pub zeta_gradient: Vec<Complex64>,
}

impl PrincipalSymbol {
    pub fn from_terms<I>(nvars: usize, m: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, TruncatedSeries)>,
    {
        let map: BTreeMap<_, _> = terms
            .into_iter()
            .inspect(|(a, _)| assert_eq!(a.degree() as usize, m, "symbol terms must have degree m"))
            .collect();
        PrincipalSymbol {
            nvars,
            m,
            terms: map,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &TruncatedSeries)> {
        self.terms.iter()
    }

    /// Coefficient series of the covector monomial `beta`.
    pub fn coeff(&self, beta: &MultiIndex) -> TruncatedSeries {
        let order = self
            .terms
            .values()
            .next()
            .map(|s| s.order())
            .unwrap_or(0);
        self.terms
            .get(beta)
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::zero(self.nvars, order))
    }

    pub fn eval(&self, z: &[Complex64], zeta: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (beta, coeff) in &self.terms {
            let mut term = coeff.eval(z);
            for (j, &e) in beta.0.iter().enumerate() {
                term *= zeta[j].powu(e);
            }
            acc += term;
        }
        acc
    }

    /// Gradient in the covector variables at a point.
    pub fn zeta_gradient_at(&self, z: &[Complex64], zeta: &[Complex64]) -> Vec<Complex64> {
        (0..self.nvars)
            .map(|k| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (beta, coeff) in &self.terms {
                    let e = beta.0[k];
                    if e == 0 {
                        continue;
                    }
                    let mut term = coeff.eval(z) * (e as f64);
                    for (j, &ej) in beta.0.iter().enumerate() {
                        let pow = if j == k { ej - 1 } else { ej };
                        term *= zeta[j].powu(pow);
                    }
                    acc += term;
                }
                acc
            })
            .collect()
    }

    /// Gradient in the base variables at a point.
    pub fn z_gradient_at(&self, z: &[Complex64], zeta: &[Complex64]) -> Vec<Complex64> {
        (0..self.nvars)
            .map(|k| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (beta, coeff) in &self.terms {
                    let mut term = coeff.derive(k).eval(z);
                    for (j, &e) in beta.0.iter().enumerate() {
                        term *= zeta[j].powu(e);
                    }
                    acc += term;
                }
                acc
            })
            .collect()
    }

    pub fn value_at(&self, z: &[Complex64], zeta: &[Complex64]) -> SymbolValue {
        SymbolValue {
            point: z.to_vec(),
            covector: zeta.to_vec(),
            value: self.eval(z, zeta),
            zeta_gradient: self.zeta_gradient_at(z, zeta),
        }
    }

    /// Covector derivative `(d/dzeta)^beta P_m`, a symbol of degree m - |beta|.
    pub fn zeta_derive(&self, beta: &MultiIndex) -> PrincipalSymbol {
        let mut terms: BTreeMap<MultiIndex, TruncatedSeries> = BTreeMap::new();
        for (gamma, coeff) in &self.terms {
            let Some(rest) = gamma.checked_sub(beta) else {
                continue;
            };
            let mut factor = 1.0;
            for (g, b) in gamma.0.iter().zip(&beta.0) {
                for k in 0..*b {
                    factor *= (g - k) as f64;
                }
            }
            let scaled = coeff.scale(Complex64::new(factor, 0.0));
            match terms.get_mut(&rest) {
                Some(existing) => *existing = existing.add(&scaled),
                None => {
                    terms.insert(rest, scaled);
                }
            }
        }
        PrincipalSymbol {
            nvars: self.nvars,
            m: self.m - beta.degree() as usize,
            terms,
        }
    }

    /// Substitute series for every covector slot: `P_m(z, s(z))`. Exact in the
    /// covector because the symbol is polynomial there.
    pub fn substitute_zeta(&self, zeta: &[TruncatedSeries]) -> TruncatedSeries {
        assert_eq!(zeta.len(), self.nvars);
        let order = zeta
            .iter()
            .map(|s| s.order())
            .chain(self.terms.values().map(|s| s.order()))
            .min()
            .unwrap_or(0);
        let mut out = TruncatedSeries::zero(self.nvars, order);
        for (beta, coeff) in &self.terms {
            let mut term = coeff.truncate(order);
            for (j, &e) in beta.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&zeta[j]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// The series `P_m(z, (chi, -1))` in the joint variables
    /// `(z_1..z_dim, chi_1..chi_{dim-1})`; used to reduce the
    /// everywhere-characteristic equation to a first-order PDE.
    pub fn substitute_tau_minus_one(&self) -> TruncatedSeries {
        let dim = self.nvars;
        let n = dim - 1;
        let total = dim + n;
        let order = self
            .terms
            .values()
            .map(|s| s.order())
            .min()
            .unwrap_or(0);
        let mut out = TruncatedSeries::zero(total, order);
        let z_slots: Vec<usize> = (0..dim).collect();
        for (beta, coeff) in &self.terms {
            let tau_e = beta.0[dim - 1];
            let sign = if tau_e % 2 == 0 { 1.0 } else { -1.0 };
            let mut chi = vec![0u32; total];
            chi[dim..(dim + n)].copy_from_slice(&beta.0[..n]);
            let embedded = coeff.embed(total, &z_slots);
            let mono = TruncatedSeries::monomial(
                total,
                order,
                MultiIndex(chi),
                Complex64::new(sign, 0.0),
            );
            out = out.add(&embedded.mul(&mono));
        }
        out
    }
}

/// Characteristic classification of a boundary point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharVerdict {
    NonCharacteristic,
    Characteristic,
    /// |P_m| sits inside the tolerance band and cannot be classified.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimpleVerdict {
    Simple,
    NotSimple,
}

/// Evaluate `P_m(p, d rho(p))` and compare against `eps * max(1, |d rho|^m)`.
/// Values inside the band `[0.1, 10] * eps * scale` are reported as
/// indeterminate rather than silently classified.
pub fn characteristic_test(
    op: &HoloPDO,
    rho: &RealAnalyticSeries,
    p: &[Complex64],
    eps: f64,
) -> Result<(CharVerdict, SymbolValue)> {
    let grad = rho.holomorphic_gradient_at(p);
    let gnorm = crate::linalg::vec_norm(&grad);
    if gnorm <= eps {
        return Err(Error::DegenerateGradient);
    }
    let symbol = op.principal_symbol();
    let sv = symbol.value_at(p, &grad);
    let scale = 1.0f64.max(gnorm.powi(op.order() as i32));
    let verdict = if sv.value.norm() < 0.1 * eps * scale {
        CharVerdict::Characteristic
    } else if sv.value.norm() > 10.0 * eps * scale {
        CharVerdict::NonCharacteristic
    } else {
        CharVerdict::Indeterminate
    };
    Ok((verdict, sv))
}

/// Test whether a characteristic point is simply characteristic:
/// `d_zeta P_m(p, d rho(p)) != 0`. Errors when the point is not
/// characteristic in the first place.
pub fn simply_characteristic_test(
    op: &HoloPDO,
    rho: &RealAnalyticSeries,
    p: &[Complex64],
    eps: f64,
) -> Result<(SimpleVerdict, SymbolValue)> {
    let (verdict, sv) = characteristic_test(op, rho, p, eps)?;
    match verdict {
        CharVerdict::NonCharacteristic => {
            return Err(Error::NotCharacteristic(sv.value.norm()));
        }
        CharVerdict::Indeterminate => {
            return Err(Error::IndeterminateVerdict(format!(
                "characteristic value {:.3e} is inside the tolerance band",
                sv.value.norm()
            )));
        }
        CharVerdict::Characteristic => {}
    }
    let gnorm = crate::linalg::vec_norm(&sv.covector);
    let scale = 1.0f64.max(gnorm.powi(op.order() as i32 - 1));
    let gradnorm = crate::linalg::vec_norm(&sv.zeta_gradient);
    let v = if gradnorm > eps * scale {
        SimpleVerdict::Simple
    } else {
        SimpleVerdict::NotSimple
    };
    Ok((v, sv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cc(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// rho = -2 Re z2 + |z1|^2 on C^2.
    fn sphere_rho(order: usize) -> RealAnalyticSeries {
        let mut s = RealAnalyticSeries::zero(2, order);
        s.insert_hermitian(MultiIndex(vec![0, 1]), MultiIndex(vec![0, 0]), cc(-1.0));
        s.insert_hermitian(MultiIndex(vec![1, 0]), MultiIndex(vec![1, 0]), cc(0.5));
        s
    }

    /// P = d/dz2 on C^2.
    fn ddz2(order: usize) -> HoloPDO {
        HoloPDO::new(
            2,
            vec![(
                MultiIndex(vec![0, 1]),
                TruncatedSeries::constant(2, order, cc(1.0)),
            )],
        )
        .unwrap()
    }

    /// P2 = lambda z1 tau^2 + chi tau on C^2.
    fn model_operator(lambda: Complex64, order: usize) -> HoloPDO {
        HoloPDO::new(
            2,
            vec![
                (
                    MultiIndex(vec![0, 2]),
                    TruncatedSeries::variable(2, order, 0).scale(lambda),
                ),
                (
                    MultiIndex(vec![1, 1]),
                    TruncatedSeries::constant(2, order, cc(1.0)),
                ),
            ],
        )
        .unwrap()
    }

    #[test]
    fn principal_symbol_single_term() {
        let p = ddz2(6);
        assert_eq!(p.order(), 1);
        let s = p.principal_symbol();
        // P_1 = tau: value at zeta = (0, -1) is -1
        let v = s.eval(&[cc(0.0), cc(0.0)], &[cc(0.0), cc(-1.0)]);
        assert!((v - cc(-1.0)).norm() < 1e-14);
    }

    #[test]
    fn principal_symbol_drops_lower_order() {
        // P = d^2/dz2^2 + d/dz1 has symbol tau^2
        let p = HoloPDO::new(
            2,
            vec![
                (
                    MultiIndex(vec![0, 2]),
                    TruncatedSeries::constant(2, 6, cc(1.0)),
                ),
                (
                    MultiIndex(vec![1, 0]),
                    TruncatedSeries::constant(2, 6, cc(1.0)),
                ),
            ],
        )
        .unwrap();
        let s = p.principal_symbol();
        assert_eq!(s.terms().count(), 1);
        let v = s.eval(&[cc(0.0), cc(0.0)], &[cc(5.0), cc(2.0)]);
        assert!((v - cc(4.0)).norm() < 1e-14);
    }

    #[test]
    fn model_symbol_reads_off() {
        let lam = c(0.4, -0.1);
        let p = model_operator(lam, 6);
        assert_eq!(p.order(), 2);
        let s = p.principal_symbol();
        // P_2(z, (chi, tau)) = lam z1 tau^2 + chi tau
        let z = [c(0.5, 0.25), c(-0.1, 0.3)];
        let zeta = [c(0.2, -0.4), c(1.1, 0.7)];
        let want = lam * z[0] * zeta[1] * zeta[1] + zeta[0] * zeta[1];
        assert!((s.eval(&z, &zeta) - want).norm() < 1e-12);
    }

    #[test]
    fn apply_monomials() {
        let d1 = HoloPDO::new(
            2,
            vec![(
                MultiIndex(vec![1, 0]),
                TruncatedSeries::constant(2, 8, cc(1.0)),
            )],
        )
        .unwrap();
        let u = TruncatedSeries::monomial(2, 8, MultiIndex(vec![2, 0]), cc(1.0));
        let r = d1.apply(&u);
        assert!((r.coeff(&MultiIndex(vec![1, 0])) - cc(2.0)).norm() < 1e-14);

        let d12 = HoloPDO::new(
            2,
            vec![(
                MultiIndex(vec![1, 1]),
                TruncatedSeries::constant(2, 8, cc(1.0)),
            )],
        )
        .unwrap();
        let u2 = TruncatedSeries::monomial(2, 8, MultiIndex(vec![1, 1]), cc(1.0));
        let r2 = d12.apply(&u2);
        assert!((r2.constant_term() - cc(1.0)).norm() < 1e-14);
    }

    #[test]
    fn apply_model_to_z1z2() {
        // (lam z1 d^2/dz2^2 + d^2/dz1 dz2)(z1 z2) = 0 + 1
        let p = model_operator(cc(0.7), 8);
        let u = TruncatedSeries::monomial(2, 8, MultiIndex(vec![1, 1]), cc(1.0));
        let r = p.apply(&u);
        assert!((r.constant_term() - cc(1.0)).norm() < 1e-13);
        assert!(r.sub(&TruncatedSeries::constant(2, r.order(), cc(1.0))).is_zero(1e-13));
    }

    #[test]
    fn characteristic_classification() {
        let rho = sphere_rho(6);
        let zero = [cc(0.0), cc(0.0)];
        // d/dz2: P_1(0, (0,-1)) = -1, non-characteristic
        let (v, sv) = characteristic_test(&ddz2(6), &rho, &zero, 1e-9).unwrap();
        assert_eq!(v, CharVerdict::NonCharacteristic);
        assert!((sv.value - cc(-1.0)).norm() < 1e-13);

        // model operator: P_2(0, (0,-1)) = 0, characteristic
        let (v, _) = characteristic_test(&model_operator(cc(0.5), 6), &rho, &zero, 1e-9).unwrap();
        assert_eq!(v, CharVerdict::Characteristic);

        // d/dz1: symbol chi, value 0, characteristic
        let dz1 = HoloPDO::new(
            2,
            vec![(
                MultiIndex(vec![1, 0]),
                TruncatedSeries::constant(2, 6, cc(1.0)),
            )],
        )
        .unwrap();
        let (v, _) = characteristic_test(&dz1, &rho, &zero, 1e-9).unwrap();
        assert_eq!(v, CharVerdict::Characteristic);
    }

    #[test]
    fn simply_characteristic_classification() {
        let rho = sphere_rho(6);
        let zero = [cc(0.0), cc(0.0)];
        // model operator: zeta-gradient (tau, 2 lam z1 tau + chi) at (0,(0,-1)) = (-1, 0)
        let (v, sv) =
            simply_characteristic_test(&model_operator(cc(0.5), 6), &rho, &zero, 1e-9).unwrap();
        assert_eq!(v, SimpleVerdict::Simple);
        assert!((sv.zeta_gradient[0] - cc(-1.0)).norm() < 1e-13);
        assert!(sv.zeta_gradient[1].norm() < 1e-13);

        // chi^2: gradient (2 chi, 0) vanishes at (0, (0,-1))
        let chi2 = HoloPDO::new(
            2,
            vec![(
                MultiIndex(vec![2, 0]),
                TruncatedSeries::constant(2, 6, cc(1.0)),
            )],
        )
        .unwrap();
        let (v, _) = simply_characteristic_test(&chi2, &rho, &zero, 1e-9).unwrap();
        assert_eq!(v, SimpleVerdict::NotSimple);

        // tau + chi is non-characteristic: the precondition fails
        let p = HoloPDO::new(
            2,
            vec![
                (
                    MultiIndex(vec![0, 1]),
                    TruncatedSeries::constant(2, 6, cc(1.0)),
                ),
                (
                    MultiIndex(vec![1, 0]),
                    TruncatedSeries::constant(2, 6, cc(1.0)),
                ),
            ],
        )
        .unwrap();
        assert!(matches!(
            simply_characteristic_test(&p, &rho, &zero, 1e-9),
            Err(Error::NotCharacteristic(_))
        ));
    }

    #[test]
    fn homogeneity_and_euler() {
        let p = model_operator(c(0.3, 0.2), 6);
        let s = p.principal_symbol();
        let z = [c(0.1, -0.2), c(0.3, 0.05)];
        let zeta = [c(0.7, 0.1), c(-0.4, 0.6)];
        let lam = c(1.3, -0.8);
        // homogeneity P_m(z, c zeta) = c^m P_m(z, zeta)
        let scaled: Vec<Complex64> = zeta.iter().map(|&x| lam * x).collect();
        let lhs = s.eval(&z, &scaled);
        let rhs = lam.powu(2) * s.eval(&z, &zeta);
        assert!((lhs - rhs).norm() < 1e-10);
        // Euler: zeta . d_zeta P_m = m P_m
        let grad = s.zeta_gradient_at(&z, &zeta);
        let dot: Complex64 = zeta.iter().zip(&grad).map(|(a, b)| a * b).sum();
        assert!((dot - s.eval(&z, &zeta) * 2.0).norm() < 1e-10);
    }

    #[test]
    fn verdict_invariant_under_positive_unit() {
        let rho = sphere_rho(6);
        // multiply rho by 1 + 0.3 Re z1 + 0.1 |z1|^2 (positive near 0)
        let mut unit = RealAnalyticSeries::zero(2, 6);
        unit.insert_hermitian(MultiIndex(vec![0, 0]), MultiIndex(vec![0, 0]), cc(0.5));
        unit.insert_hermitian(MultiIndex(vec![1, 0]), MultiIndex(vec![0, 0]), cc(0.15));
        unit.insert_hermitian(MultiIndex(vec![1, 0]), MultiIndex(vec![1, 0]), cc(0.05));
        let rho2 = rho.mul(&unit);
        let zero = [cc(0.0), cc(0.0)];
        for op in [ddz2(6), model_operator(cc(0.5), 6)] {
            let (v1, _) = characteristic_test(&op, &rho, &zero, 1e-9).unwrap();
            let (v2, _) = characteristic_test(&op, &rho2, &zero, 1e-9).unwrap();
            assert_eq!(v1, v2);
        }
        let (s1, _) = simply_characteristic_test(&model_operator(cc(0.5), 6), &rho, &zero, 1e-9)
            .unwrap();
        let (s2, _) = simply_characteristic_test(&model_operator(cc(0.5), 6), &rho2, &zero, 1e-9)
            .unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn apply_is_linear() {
        let p = model_operator(c(0.2, 0.4), 8);
        let u = TruncatedSeries::from_terms(
            2,
            8,
            vec![
                (MultiIndex(vec![2, 1]), c(0.3, -0.1)),
                (MultiIndex(vec![0, 3]), c(-0.2, 0.5)),
            ],
        );
        let v = TruncatedSeries::from_terms(
            2,
            8,
            vec![
                (MultiIndex(vec![1, 2]), c(0.7, 0.2)),
                (MultiIndex(vec![3, 0]), c(0.1, 0.1)),
            ],
        );
        let a = c(1.5, -0.5);
        let b = c(-0.25, 2.0);
        let lhs = p.apply(&u.scale(a).add(&v.scale(b)));
        let rhs = p.apply(&u).scale(a).add(&p.apply(&v).scale(b));
        assert!(lhs.approx_eq(&rhs, 1e-12));
    }
}
