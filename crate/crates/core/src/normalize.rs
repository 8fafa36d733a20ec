//! Reduction of a strictly pseudoconvex domain germ and operator to normal
//! form at a boundary point.
//!
//! In normal coordinates the defining function reads
//! `rho = -2 Re z_dim + sum |z_j|^2 + O(3)` and the symbol reads
//! `P_m = a(z) tau^m + chi_n tau^{m-1} + sum b_j(z) chi_j tau^{m-1} + O(|chi|^2)`
//! with `a(0) = b_j(0) = 0`. The reduction composes a translation, a linear
//! conormal alignment, a Levi diagonalization, a positive-unit rescale of rho
//! and a quadratic shear, then pushes the operator through and divides by the
//! transversal coefficient.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::linalg::{self, CMatrix};
use crate::operators::{HoloPDO, PrincipalSymbol};
use crate::series::{MultiIndex, RealAnalyticSeries, TruncatedSeries};
use crate::{Error, Result};

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn cone() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Invertible holomorphic coordinate change near a base point, stored as
/// truncated series in both directions. `forward[k]` expresses the new
/// coordinate `w_k` in terms of `z - p`; `inverse[k]` expresses `(z - p)_k`
/// in terms of `w`. Both directions have zero constant terms.
#[derive(Debug, Clone)]
pub struct CoordinateMap {
    dim: usize,
    order: usize,
    base_point: Vec<Complex64>,
    pub forward: Vec<TruncatedSeries>,
    pub inverse: Vec<TruncatedSeries>,
}

impl CoordinateMap {
    pub fn identity(dim: usize, order: usize, base_point: &[Complex64]) -> Self {
        let forward: Vec<TruncatedSeries> = (0..dim)
            .map(|k| TruncatedSeries::variable(dim, order, k))
            .collect();
        CoordinateMap {
            dim,
            order,
            base_point: base_point.to_vec(),
            forward: forward.clone(),
            inverse: forward,
        }
    }

    /// Linear change `w = M (z - p)` about the origin.
    pub fn linear(dim: usize, order: usize, mat: &CMatrix) -> Result<Self> {
        let inv = linalg::inverse(mat)?;
        let mk = |m: &CMatrix, k: usize| {
            let mut s = TruncatedSeries::zero(dim, order);
            for (j, &c) in m[k].iter().enumerate() {
                s = s.add(&TruncatedSeries::variable(dim, order, j).scale(c));
            }
            s
        };
        Ok(CoordinateMap {
            dim,
            order,
            base_point: vec![czero(); dim],
            forward: (0..dim).map(|k| mk(mat, k)).collect(),
            inverse: (0..dim).map(|k| mk(&inv, k)).collect(),
        })
    }

    /// Shear defined through its inverse: the old last coordinate equals the
    /// new last coordinate plus `s(new)`, other coordinates unchanged. `s`
    /// must have no constant or linear part.
    pub fn shear_from_inverse(dim: usize, order: usize, s: &TruncatedSeries) -> Self {
        assert_eq!(s.nvars(), dim);
        let last = dim - 1;
        let mut inverse: Vec<TruncatedSeries> = (0..dim)
            .map(|k| TruncatedSeries::variable(dim, order, k))
            .collect();
        inverse[last] = inverse[last].add(&s.truncate(order));
        // Forward: solve w_last = v_last + s(v) for v_last by fixed point.
        let mut forward: Vec<TruncatedSeries> = (0..dim)
            .map(|k| TruncatedSeries::variable(dim, order, k))
            .collect();
        let w_last = TruncatedSeries::variable(dim, order, last);
        let mut v_last = w_last.clone();
        for _ in 0..order {
            let mut args: Vec<TruncatedSeries> = (0..dim)
                .map(|k| TruncatedSeries::variable(dim, order, k))
                .collect();
            args[last] = v_last.clone();
            let correction = s
                .truncate(order)
                .compose(&args)
                .expect("shear substitution has zero constant terms");
            v_last = w_last.sub(&correction);
        }
        forward[last] = v_last;
        CoordinateMap {
            dim,
            order,
            base_point: vec![czero(); dim],
            forward,
            inverse,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn base_point(&self) -> &[Complex64] {
        &self.base_point
    }

    /// Apply `next` after `self`. `next` must be based at the origin of the
    /// current target coordinates.
    pub fn compose(&self, next: &CoordinateMap) -> Result<CoordinateMap> {
        assert_eq!(self.dim, next.dim);
        let forward = next
            .forward
            .iter()
            .map(|s| s.compose(&self.forward))
            .collect::<Result<Vec<_>>>()?;
        let inverse = self
            .inverse
            .iter()
            .map(|s| s.compose(&next.inverse))
            .collect::<Result<Vec<_>>>()?;
        Ok(CoordinateMap {
            dim: self.dim,
            order: self.order.min(next.order),
            base_point: self.base_point.clone(),
            forward,
            inverse,
        })
    }

    /// Express a series in the new coordinates: `g(w) = s((z-p)(w))`.
    pub fn push_series(&self, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        s.compose(&self.inverse)
    }

    /// Express a series given in the new coordinates in terms of `z - p`.
    pub fn pull_series(&self, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        s.compose(&self.forward)
    }

    pub fn push_real(&self, rho: &RealAnalyticSeries) -> Result<RealAnalyticSeries> {
        rho.compose_holomorphic(&self.inverse)
    }

    /// Max coefficient defect of forward-then-inverse against the identity.
    pub fn round_trip_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..self.dim {
            if let Ok(back) = self.forward[k].compose(&self.inverse) {
                let idv = TruncatedSeries::variable(self.dim, back.order(), k);
                worst = worst.max(back.sub(&idv).max_coeff());
            }
            if let Ok(back) = self.inverse[k].compose(&self.forward) {
                let idv = TruncatedSeries::variable(self.dim, back.order(), k);
                worst = worst.max(back.sub(&idv).max_coeff());
            }
        }
        worst
    }
}

/// Outcome of the normal-form reduction.
#[derive(Debug, Clone)]
pub struct NormalizedProblem {
    /// Defining function in normal coordinates.
    pub rho: RealAnalyticSeries,
    /// Operator in normal coordinates, divided so the `chi_n tau^{m-1}`
    /// symbol coefficient is the constant series 1.
    pub operator: HoloPDO,
    /// Coefficient a(z) of `tau^m` in the symbol.
    pub a: TruncatedSeries,
    /// Coefficients b_j(z) of `chi_j tau^{m-1}` for j < n.
    pub b: Vec<TruncatedSeries>,
    /// Gradient of a at the origin, length `dim`.
    pub a_grad0: Vec<Complex64>,
    /// The accumulated coordinate change from the original frame.
    pub map: CoordinateMap,
}

impl NormalizedProblem {
    pub fn dim(&self) -> usize {
        self.operator.nvars()
    }

    /// Number of tangential variables n = dim - 1.
    pub fn n(&self) -> usize {
        self.dim() - 1
    }

    pub fn m(&self) -> usize {
        self.operator.order()
    }

    pub fn symbol(&self) -> PrincipalSymbol {
        self.operator.principal_symbol()
    }

    /// Verify the normal-form invariants within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let dim = self.dim();
        let last = dim - 1;
        let zero = MultiIndex::zero(dim);
        let fail = |what: String| Err(Error::ResidualFailure(what));
        if self.rho.coeff(&zero, &zero).norm() > tol {
            return fail("rho has a constant term".into());
        }
        for j in 0..dim {
            let c = self.rho.coeff(&MultiIndex::unit(dim, j), &zero);
            let want = if j == last { -cone() } else { czero() };
            if (c - want).norm() > tol {
                return fail(format!("rho linear part at slot {j} is {c}"));
            }
        }
        for j in 0..dim {
            for k in 0..dim {
                let c = self
                    .rho
                    .coeff(&MultiIndex::unit(dim, j), &MultiIndex::unit(dim, k));
                let want = if j == k && j < last { cone() } else { czero() };
                if (c - want).norm() > tol {
                    return fail(format!("rho (1,1) part at ({j},{k}) is {c}"));
                }
            }
        }
        for (a, _b, c) in self.rho.bidegree_terms(2, 0) {
            if c.norm() > tol {
                return fail(format!("rho keeps a (2,0) term at {a:?}"));
            }
        }
        if self.a.constant_term().norm() > tol {
            return fail(format!("a(0) = {} is nonzero", self.a.constant_term()));
        }
        for (j, bj) in self.b.iter().enumerate() {
            if bj.constant_term().norm() > tol {
                return fail(format!("b_{}(0) is nonzero", j + 1));
            }
        }
        let bn = self
            .symbol()
            .coeff(&chi_tau_index(dim, self.m(), last - 1));
        let one = TruncatedSeries::constant(dim, bn.order(), cone());
        if !bn.approx_eq(&one, 1e-8) {
            return fail("transversal symbol coefficient is not 1".into());
        }
        Ok(())
    }
}

/// Covector exponent of `chi_{j+1} tau^{m-1}` (j is 0-based over the n
/// tangential slots).
pub fn chi_tau_index(dim: usize, m: usize, j: usize) -> MultiIndex {
    let mut e = vec![0u32; dim];
    e[j] = 1;
    e[dim - 1] = (m - 1) as u32;
    MultiIndex(e)
}

/// Covector exponent of `tau^m`.
pub fn tau_index(dim: usize, m: usize) -> MultiIndex {
    let mut e = vec![0u32; dim];
    e[dim - 1] = m as u32;
    MultiIndex(e)
}

/// Bring the domain germ to normal form at `p`. Returns the coordinate map
/// (built at `work_order`) and the transformed defining function. The
/// defining function is also multiplied by a positive real-analytic unit,
/// which is part of the rho normalization but not of the coordinate change.
pub fn normalize_domain(
    rho: &RealAnalyticSeries,
    p: &[Complex64],
    work_order: usize,
    eps: f64,
) -> Result<(CoordinateMap, RealAnalyticSeries)> {
    let dim = rho.nvars();
    if p.len() != dim {
        return Err(Error::Validation(format!("point must have {dim} entries")));
    }
    let rho0 = rho.assume_exact_to(work_order).translate(p);
    let origin = vec![czero(); dim];
    let at_p = rho0.eval_complex(&origin);
    let scale = rho0.max_coeff().max(1.0);
    if at_p.norm() > 1e-7 * scale {
        return Err(Error::PointNotOnBoundary(at_p.re));
    }
    let grad = rho0.holomorphic_gradient_at(&origin);
    let gnorm = linalg::vec_norm(&grad);
    if gnorm <= eps {
        return Err(Error::DegenerateGradient);
    }

    // Conormal alignment: the Householder row structure gives a matrix whose
    // last row is -grad^T, so the linear part of rho becomes -2 Re w_last.
    let conj_grad: Vec<Complex64> = grad.iter().map(|c| c.conj()).collect();
    let house = linalg::householder_to_last(&conj_grad);
    let mut align = house;
    for entry in align[dim - 1].iter_mut() {
        *entry *= Complex64::new(-gnorm, 0.0);
    }
    let mut map = CoordinateMap::identity(dim, work_order, p)
        .compose(&CoordinateMap::linear(dim, work_order, &align)?)?;
    let mut rho_cur = rho0.compose_holomorphic(&map.inverse)?;

    // Levi diagonalization on the tangential block: with M[j][k] the
    // coefficient of w_k wbar_j, positive definiteness of the restricted
    // Levi form is Cholesky of M, and w' = L^H w' maps the form to the
    // identity.
    let n = dim - 1;
    let mut levi = vec![vec![czero(); n]; n];
    for j in 0..n {
        for k in 0..n {
            levi[j][k] = rho_cur.coeff(&MultiIndex::unit(dim, k), &MultiIndex::unit(dim, j));
        }
    }
    let chol = linalg::cholesky(&levi)?;
    let r_upper = linalg::adjoint(&chol);
    let mut t_levi = linalg::identity(dim);
    for j in 0..n {
        for k in 0..n {
            t_levi[j][k] = r_upper[j][k];
        }
    }
    let levi_step = CoordinateMap::linear(dim, work_order, &t_levi)?;
    rho_cur = rho_cur.compose_holomorphic(&levi_step.inverse)?;
    map = map.compose(&levi_step)?;

    // Positive unit 1 + 2 Re(sum c_j z_j) removing the residual (1,1) terms
    // that involve the transversal slot.
    let last = dim - 1;
    let mut unit = RealAnalyticSeries::zero(dim, work_order);
    unit.insert_hermitian(MultiIndex::zero(dim), MultiIndex::zero(dim), Complex64::new(0.5, 0.0));
    let mut has_unit_terms = false;
    for j in 0..n {
        let d = rho_cur.coeff(&MultiIndex::unit(dim, j), &MultiIndex::unit(dim, last));
        if d.norm() > 1e-14 {
            unit.insert_hermitian(MultiIndex::unit(dim, j), MultiIndex::zero(dim), d);
            has_unit_terms = true;
        }
    }
    let e_val = rho_cur.coeff(&MultiIndex::unit(dim, last), &MultiIndex::unit(dim, last));
    if e_val.norm() > 1e-14 {
        unit.insert_hermitian(
            MultiIndex::unit(dim, last),
            MultiIndex::zero(dim),
            Complex64::new(e_val.re / 2.0, 0.0),
        );
        has_unit_terms = true;
    }
    if has_unit_terms {
        rho_cur = rho_cur.mul(&unit);
    }

    // Quadratic shear removing every remaining holomorphic (2,0) term (and
    // by reality its conjugate).
    let mut s20 = TruncatedSeries::zero(dim, work_order);
    for (a, _b, c) in rho_cur.bidegree_terms(2, 0) {
        s20 = s20.add(&TruncatedSeries::monomial(dim, work_order, a, c));
    }
    if !s20.is_zero(1e-14) {
        let shear = CoordinateMap::shear_from_inverse(dim, work_order, &s20);
        rho_cur = rho_cur.compose_holomorphic(&shear.inverse)?;
        map = map.compose(&shear)?;
    }

    Ok((map, rho_cur))
}

type OpTerms = BTreeMap<MultiIndex, TruncatedSeries>;

/// Push an operator through a coordinate change: expresses
/// `P(z, d/dz)` in the coordinates `w = map(z)` via the chain rule applied
/// recursively to each `(d/dz)^alpha`.
pub fn pushforward_operator(op: &HoloPDO, map: &CoordinateMap) -> Result<HoloPDO> {
    let dim = op.nvars();
    assert_eq!(dim, map.dim());
    // Vector fields X_j = sum_k J[k][j](w) d/dw_k with J the forward
    // Jacobian evaluated along the inverse map.
    let mut xfields: Vec<Vec<TruncatedSeries>> = vec![Vec::with_capacity(dim); dim];
    for j in 0..dim {
        for k in 0..dim {
            let series = map.forward[k].derive(j).compose(&map.inverse)?;
            xfields[j].push(series);
        }
    }

    // Every multi-index on the reduction chains of the operator's terms.
    let mut needed: Vec<MultiIndex> = Vec::new();
    for (alpha, _) in op.terms() {
        let mut cur = alpha.clone();
        loop {
            if !needed.contains(&cur) {
                needed.push(cur.clone());
            }
            match cur.0.iter().position(|&e| e > 0) {
                Some(j) => {
                    cur.0[j] -= 1;
                }
                None => break,
            }
        }
    }
    needed.sort();

    let mut memo: BTreeMap<MultiIndex, OpTerms> = BTreeMap::new();
    let mut id_terms = OpTerms::new();
    id_terms.insert(
        MultiIndex::zero(dim),
        TruncatedSeries::constant(dim, map.order(), cone()),
    );
    memo.insert(MultiIndex::zero(dim), id_terms);
    for alpha in &needed {
        if memo.contains_key(alpha) {
            continue;
        }
        let j = alpha.0.iter().position(|&e| e > 0).unwrap();
        let mut prev = alpha.clone();
        prev.0[j] -= 1;
        let base = memo.get(&prev).expect("chains are processed in graded order");
        let mut next = OpTerms::new();
        for (beta, obeta) in base {
            for k in 0..dim {
                let ck = &xfields[j][k];
                if ck.is_zero(0.0) {
                    continue;
                }
                let dcoef = ck.mul(&obeta.derive(k));
                if !dcoef.is_zero(0.0) {
                    merge_term(&mut next, beta.clone(), dcoef);
                }
                let shift = ck.mul(obeta);
                if !shift.is_zero(0.0) {
                    merge_term(&mut next, beta.add(&MultiIndex::unit(dim, k)), shift);
                }
            }
        }
        memo.insert(alpha.clone(), next);
    }

    let mut out = OpTerms::new();
    for (alpha, coeff) in op.terms() {
        let moved = coeff.compose(&map.inverse)?;
        for (beta, obeta) in memo.get(alpha).unwrap() {
            let term = moved.mul(obeta);
            if !term.is_zero(0.0) {
                merge_term(&mut out, beta.clone(), term);
            }
        }
    }
    HoloPDO::new(dim, out)
}

/// Pushforward through an invertible linear map `w = M z`. The Jacobian is
/// constant, so no series order is lost.
pub fn pushforward_linear(op: &HoloPDO, mat: &CMatrix) -> Result<HoloPDO> {
    let dim = op.nvars();
    let inv = linalg::inverse(mat)?;
    let order = op
        .terms()
        .map(|(_, c)| c.order())
        .max()
        .unwrap_or(0);
    let inv_series: Vec<TruncatedSeries> = (0..dim)
        .map(|k| {
            let mut s = TruncatedSeries::zero(dim, order);
            for (j, &c) in inv[k].iter().enumerate() {
                s = s.add(&TruncatedSeries::variable(dim, order, j).scale(c));
            }
            s
        })
        .collect();

    // (d/dz)^alpha = prod_j (sum_k M[k][j] d/dw_k)^{alpha_j}, expanded with
    // scalar coefficients.
    let mut out = OpTerms::new();
    for (alpha, coeff) in op.terms() {
        let moved = coeff.compose(&inv_series)?;
        let mut expansion: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        expansion.insert(MultiIndex::zero(dim), cone());
        for (j, &e) in alpha.0.iter().enumerate() {
            for _ in 0..e {
                let mut next: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
                for (beta, c) in &expansion {
                    for k in 0..dim {
                        let m = mat[k][j];
                        if m.norm() == 0.0 {
                            continue;
                        }
                        let idx = beta.add(&MultiIndex::unit(dim, k));
                        *next.entry(idx).or_insert(czero()) += c * m;
                    }
                }
                expansion = next;
            }
        }
        for (beta, c) in expansion {
            if c.norm() == 0.0 {
                continue;
            }
            merge_term(&mut out, beta, moved.scale(c));
        }
    }
    HoloPDO::new(dim, out)
}

fn merge_term(map: &mut OpTerms, key: MultiIndex, value: TruncatedSeries) {
    match map.get_mut(&key) {
        Some(existing) => *existing = existing.add(&value),
        None => {
            map.insert(key, value);
        }
    }
}

/// Push the operator through the map, rotate the tangential variables so the
/// symbol's chi-linear part points along chi_n, and divide by the transversal
/// coefficient. `rho_n` is the already-normalized defining function at the
/// map's work order; both are truncated to `order` in the result.
pub fn normalize_operator(
    op: &HoloPDO,
    map: &CoordinateMap,
    rho_n: &RealAnalyticSeries,
    order: usize,
    eps: f64,
) -> Result<NormalizedProblem> {
    let dim = op.nvars();
    let n = dim - 1;
    let m = op.order();
    let work = map.order();
    let op0 = op.assume_exact_to(work).translate(map.base_point());
    let mut pushed = pushforward_operator(&op0, map)?;
    let mut map_full = map.clone();
    let mut rho_full = rho_n.clone();

    let sym = pushed.principal_symbol();
    let b0: Vec<Complex64> = (0..n)
        .map(|j| sym.coeff(&chi_tau_index(dim, m, j)).constant_term())
        .collect();
    let bnorm = linalg::vec_norm(&b0);
    if bnorm <= eps {
        return Err(Error::NotSimplyCharacteristic(bnorm));
    }

    let u = linalg::householder_to_last(&b0);
    let is_identity = (0..n).all(|i| {
        (0..n).all(|j| {
            let want = if i == j { cone() } else { czero() };
            (u[i][j] - want).norm() < 1e-14
        })
    });
    if !is_identity {
        let mut u_ext = linalg::identity(dim);
        for i in 0..n {
            for j in 0..n {
                u_ext[i][j] = u[i][j];
            }
        }
        let step = CoordinateMap::linear(dim, work, &u_ext)?;
        pushed = pushforward_linear(&pushed, &u_ext)?;
        rho_full = rho_full.compose_holomorphic(&step.inverse)?;
        map_full = map_full.compose(&step)?;
    }

    finish_normalization(pushed, rho_full, map_full, order, eps)
}

/// Divide by the transversal symbol coefficient and extract the normal-form
/// data. The operator must already carry its chi-linear part along chi_n.
fn finish_normalization(
    op: HoloPDO,
    rho: RealAnalyticSeries,
    map: CoordinateMap,
    order: usize,
    eps: f64,
) -> Result<NormalizedProblem> {
    let dim = op.nvars();
    let n = dim - 1;
    let m = op.order();
    let bn = op.principal_symbol().coeff(&chi_tau_index(dim, m, n - 1));
    if bn.constant_term().norm() <= eps {
        return Err(Error::NotSimplyCharacteristic(bn.constant_term().norm()));
    }
    let divided = op.scale_by_series(&bn.reciprocal()?);
    let sym = divided.principal_symbol();
    let a_full = sym.coeff(&tau_index(dim, m));
    let a_grad0: Vec<Complex64> = (0..dim)
        .map(|j| a_full.coeff(&MultiIndex::unit(dim, j)))
        .collect();
    let b: Vec<TruncatedSeries> = (0..n - 1)
        .map(|j| sym.coeff(&chi_tau_index(dim, m, j)).truncate(order))
        .collect();
    Ok(NormalizedProblem {
        rho: rho.truncate(order.max(2)),
        operator: divided.truncate(order),
        a: a_full.truncate(order),
        b,
        a_grad0,
        map,
    })
}

/// Apply a further unitary change of the tangential variables to an already
/// normalized problem (used for the phase rotation that makes the a-gradient
/// entries non-negative), re-dividing so the transversal coefficient stays 1.
pub fn apply_zprime_unitary(
    np: &NormalizedProblem,
    u: &CMatrix,
    order: usize,
    eps: f64,
) -> Result<NormalizedProblem> {
    let dim = np.dim();
    let n = np.n();
    assert_eq!(u.len(), n);
    let mut u_ext = linalg::identity(dim);
    for i in 0..n {
        for j in 0..n {
            u_ext[i][j] = u[i][j];
        }
    }
    let step = CoordinateMap::linear(dim, np.map.order(), &u_ext)?;
    let pushed = pushforward_linear(&np.operator, &u_ext)?;
    let rho = np.rho.compose_holomorphic(&step.inverse)?;
    let map = np.map.compose(&step)?;
    finish_normalization(pushed, rho, map, order, eps)
}
