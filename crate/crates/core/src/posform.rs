//! The Hermitian form Q_z, the positivity condition on the restricted
//! subspace, and its closed-form reduction in normal coordinates.
//!
//! The form lives on vectors `t = (t_0, ..., t_{n+1})`; the positivity
//! condition restricts it to the subspace where `t_0` is free and the
//! coordinate slots satisfy `sum_j rho_{z_j}(p) t_j = 0`. (The defining
//! display in the source material sums the indices only through n; the two
//! readings agree because the constraint pins the transversal slot in normal
//! coordinates, and we implement the restricted-subspace reading.)

use num_complex::Complex64;

use crate::linalg::{self, CMatrix};
use crate::normalize::NormalizedProblem;
use crate::operators::HoloPDO;
use crate::series::RealAnalyticSeries;
use crate::{Error, Result};

/// The assembled (n+2) x (n+2) Hermitian coefficient matrix together with
/// the conormal constraint vector.
#[derive(Debug, Clone)]
pub struct QForm {
    /// Entries `q[j][k]` for j, k in 0..=n+1.
    pub matrix: CMatrix,
    /// `(rho_{z_1}(p), ..., rho_{z_{n+1}}(p))`, defining the constraint.
    pub conormal: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosHolds {
    Yes,
    No,
    Marginal,
}

impl PosHolds {
    pub fn as_str(&self) -> &'static str {
        match self {
            PosHolds::Yes => "yes",
            PosHolds::No => "no",
            PosHolds::Marginal => "marginal",
        }
    }
}

/// Outcome of a positivity test.
#[derive(Debug, Clone)]
pub struct PosVerdict {
    pub holds: PosHolds,
    /// Eigenvalues of the form compressed to the constraint subspace,
    /// ascending.
    pub restricted_spectrum: Vec<f64>,
    /// `sum |a_{z_j}(0)|^2` over the tangential slots; only available in
    /// normal coordinates.
    pub sum_sq: Option<f64>,
    /// Smallest restricted eigenvalue.
    pub margin: f64,
}

fn classify(margin: f64, spectrum_scale: f64, eps_pos: f64) -> PosHolds {
    let eps = eps_pos * spectrum_scale.max(1.0);
    if margin > eps {
        PosHolds::Yes
    } else if margin < -eps {
        PosHolds::No
    } else {
        PosHolds::Marginal
    }
}

/// Assemble the Hermitian form from the operator and defining function at a
/// boundary point:
///
/// ```text
/// q[j][k] = rho_{z_j zbar_k}                                    1 <= j,k
/// q[j][0] = P_{m,j}(p, d rho) + sum_k P_m^{(k)}(p, d rho) rho_{z_j z_k}
/// q[0][j] = conj(q[j][0])
/// q[0][0] = sum_{j,k} P_m^{(j)} conj(P_m^{(k)}) rho_{z_j zbar_k}
/// ```
pub fn build_q(op: &HoloPDO, rho: &RealAnalyticSeries, p: &[Complex64], eps: f64) -> Result<QForm> {
    let dim = op.nvars();
    let grad = rho.holomorphic_gradient_at(p);
    if linalg::vec_norm(&grad) <= eps {
        return Err(Error::DegenerateGradient);
    }
    let symbol = op.principal_symbol();
    let zeta_grad = symbol.zeta_gradient_at(p, &grad);
    let z_grad = symbol.z_gradient_at(p, &grad);
    let mut levi = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    let mut pure = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for j in 0..dim {
        for k in 0..dim {
            levi[j][k] = rho.zzbar_at(j, k, p);
            pure[j][k] = rho.zz_at(j, k, p);
        }
    }

    let size = dim + 1;
    let mut q = vec![vec![Complex64::new(0.0, 0.0); size]; size];
    for j in 0..dim {
        for k in 0..dim {
            q[j + 1][k + 1] = levi[j][k];
        }
    }
    for j in 0..dim {
        let mut v = z_grad[j];
        for k in 0..dim {
            v += zeta_grad[k] * pure[j][k];
        }
        q[j + 1][0] = v;
        q[0][j + 1] = v.conj();
    }
    let mut q00 = Complex64::new(0.0, 0.0);
    for j in 0..dim {
        for k in 0..dim {
            q00 += zeta_grad[j] * zeta_grad[k].conj() * levi[j][k];
        }
    }
    q[0][0] = Complex64::new(q00.re, 0.0);
    Ok(QForm {
        matrix: q,
        conormal: grad,
    })
}

/// Hermitian matrix A with `Q(t) = t^H A t`, i.e. `A[j][k] = q[k][j]`.
fn form_matrix(q: &QForm) -> CMatrix {
    let size = q.matrix.len();
    let mut a = vec![vec![Complex64::new(0.0, 0.0); size]; size];
    for j in 0..size {
        for k in 0..size {
            a[j][k] = q.matrix[k][j];
        }
    }
    a
}

/// Restrict the form to `{t_0 free, sum_j conormal_j t_j = 0}`, compress to
/// an orthonormal basis of that subspace, and read the verdict off the
/// Jacobi spectrum.
pub fn pos_check(q: &QForm, eps_pos: f64) -> Result<PosVerdict> {
    let size = q.matrix.len();
    let dim = size - 1;
    let a = form_matrix(q);
    // Basis: e_0, then the coordinate-slot vectors annihilated by the
    // bilinear constraint sum_j conormal_j t_j = 0, i.e. the Hermitian
    // complement of the conjugated conormal, embedded with zero t_0
    // component.
    let constraint: Vec<Complex64> = q.conormal.iter().map(|c| c.conj()).collect();
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    let mut e0 = vec![Complex64::new(0.0, 0.0); size];
    e0[0] = Complex64::new(1.0, 0.0);
    basis.push(e0);
    for tail in linalg::orthonormal_complement(&constraint) {
        let mut v = vec![Complex64::new(0.0, 0.0); size];
        v[1..(dim + 1)].copy_from_slice(&tail);
        basis.push(v);
    }
    let r = basis.len();
    let mut compressed = vec![vec![Complex64::new(0.0, 0.0); r]; r];
    for (i, u) in basis.iter().enumerate() {
        for (j, w) in basis.iter().enumerate() {
            let aw = linalg::matvec(&a, w);
            let val: Complex64 = u.iter().zip(&aw).map(|(x, y)| x.conj() * y).sum();
            compressed[i][j] = val;
        }
    }
    let (spectrum, _) = linalg::hermitian_eigen(&compressed)?;
    let margin = spectrum[0];
    let scale = spectrum.iter().map(|v| v.abs()).fold(0.0, f64::max);
    Ok(PosVerdict {
        holds: classify(margin, scale, eps_pos),
        restricted_spectrum: spectrum,
        sum_sq: None,
        margin,
    })
}

/// Closed-form verdict in normal coordinates: the restricted spectrum is
/// `{1 (n-1 times), 1 +- sqrt(sum |a_{z_j}(0)|^2)}`.
pub fn reduced_criterion(np: &NormalizedProblem, eps_pos: f64) -> PosVerdict {
    let n = np.n();
    let sum_sq: f64 = np.a_grad0[..n].iter().map(|c| c.norm_sqr()).sum();
    reduced_from_sum_sq(n, sum_sq, eps_pos)
}

pub fn reduced_from_sum_sq(n: usize, sum_sq: f64, eps_pos: f64) -> PosVerdict {
    let gamma = sum_sq.sqrt();
    let mut spectrum = vec![1.0 - gamma];
    spectrum.extend(std::iter::repeat_n(1.0, n - 1));
    spectrum.push(1.0 + gamma);
    spectrum.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let margin = spectrum[0];
    PosVerdict {
        holds: classify(margin, 1.0 + gamma, eps_pos),
        restricted_spectrum: spectrum,
        sum_sq: Some(sum_sq),
        margin,
    }
}

/// The (n+2) x (n+2) coefficient matrix of the form at the origin of normal
/// coordinates, assembled from a tangential a-gradient (the `(-1)^m` sign is
/// absorbed into `a`). The conormal there is `(0, ..., 0, -1)`.
pub fn normal_form_q(a: &[Complex64]) -> QForm {
    let n = a.len();
    let size = n + 2;
    let mut q = vec![vec![Complex64::new(0.0, 0.0); size]; size];
    q[0][0] = Complex64::new(1.0, 0.0);
    for j in 0..n {
        q[j + 1][j + 1] = Complex64::new(1.0, 0.0);
        q[j + 1][0] = a[j];
        q[0][j + 1] = a[j].conj();
    }
    let mut conormal = vec![Complex64::new(0.0, 0.0); n + 1];
    conormal[n] = Complex64::new(-1.0, 0.0);
    QForm {
        matrix: q,
        conormal,
    }
}

/// Residual `max |Q' v - lambda v|` of the closed-form eigenvector
/// `(g, conj(a_1), ..., conj(a_n))` with `lambda = 1 + g`, `g = sign *
/// sqrt(sum |a_j|^2)`, checked against the restricted matrix of
/// [`normal_form_q`].
pub fn eigenvector_residual(a: &[Complex64], sign: f64) -> f64 {
    let n = a.len();
    let q = normal_form_q(a);
    let full = form_matrix(&q);
    // Restricted matrix: slots 0..=n (t_{n+1} pinned to zero).
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n + 1]; n + 1];
    for j in 0..=n {
        for k in 0..=n {
            m[j][k] = full[j][k];
        }
    }
    let gamma = a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let mut v = vec![Complex64::new(sign * gamma, 0.0)];
    v.extend(a.iter().map(|c| c.conj()));
    let lambda = 1.0 + sign * gamma;
    let mv = linalg::matvec(&m, &v);
    mv.iter()
        .zip(&v)
        .map(|(x, y)| (x - y * lambda).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{MultiIndex, TruncatedSeries};

    fn cc(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn normal_rho(dim: usize, order: usize) -> RealAnalyticSeries {
        let mut s = RealAnalyticSeries::zero(dim, order);
        s.insert_hermitian(
            MultiIndex::unit(dim, dim - 1),
            MultiIndex::zero(dim),
            cc(-1.0),
        );
        for j in 0..dim - 1 {
            s.insert_hermitian(MultiIndex::unit(dim, j), MultiIndex::unit(dim, j), cc(0.5));
        }
        s
    }

    #[test]
    fn identity_q_all_ones() {
        let q = normal_form_q(&[cc(0.0)]);
        let v = pos_check(&q, 1e-7).unwrap();
        assert_eq!(v.holds, PosHolds::Yes);
        for lam in &v.restricted_spectrum {
            assert!((lam - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn restricted_spectrum_c2() {
        // a_grad0 = (lambda): spectrum {1 - |l|, 1 + |l|}
        let lam = c(0.3, -0.4);
        let q = normal_form_q(&[lam]);
        let v = pos_check(&q, 1e-7).unwrap();
        assert_eq!(v.restricted_spectrum.len(), 2);
        assert!((v.restricted_spectrum[0] - 0.5).abs() < 1e-12);
        assert!((v.restricted_spectrum[1] - 1.5).abs() < 1e-12);
        assert_eq!(v.holds, PosHolds::Yes);
    }

    #[test]
    fn marginal_at_unit_sum() {
        // a_grad0 = (0.6, 0.8): sum = 1, spectrum {0, 1, 2}
        let q = normal_form_q(&[cc(0.6), cc(0.8)]);
        let v = pos_check(&q, 1e-7).unwrap();
        assert!((v.restricted_spectrum[0]).abs() < 1e-12);
        assert!((v.restricted_spectrum[1] - 1.0).abs() < 1e-12);
        assert!((v.restricted_spectrum[2] - 2.0).abs() < 1e-12);
        assert_ne!(v.holds, PosHolds::Yes);
    }

    #[test]
    fn reduced_closed_form() {
        let v = reduced_from_sum_sq(2, 0.25, 1e-7);
        assert_eq!(v.holds, PosHolds::Yes);
        assert!((v.restricted_spectrum[0] - 0.5).abs() < 1e-12);
        assert!((v.restricted_spectrum[1] - 1.0).abs() < 1e-12);
        assert!((v.restricted_spectrum[2] - 1.5).abs() < 1e-12);

        let z = reduced_from_sum_sq(3, 0.0, 1e-7);
        assert_eq!(z.holds, PosHolds::Yes);
        assert!(z.restricted_spectrum.iter().all(|l| (l - 1.0).abs() < 1e-12));

        let m = reduced_from_sum_sq(1, 1.0, 1e-7);
        assert_eq!(m.holds, PosHolds::Marginal);
        assert!(m.margin.abs() < 1e-12);
    }

    #[test]
    fn build_q_in_normal_coordinates() {
        // P2 = lam z1 tau^2 + chi tau on C^2: q[1][0] = (-1)^2 a_{z1}(0) = lam
        let lam = cc(0.5);
        let op = HoloPDO::new(
            2,
            vec![
                (
                    MultiIndex(vec![0, 2]),
                    TruncatedSeries::variable(2, 8, 0).scale(lam),
                ),
                (
                    MultiIndex(vec![1, 1]),
                    TruncatedSeries::constant(2, 8, cc(1.0)),
                ),
            ],
        )
        .unwrap();
        let rho = normal_rho(2, 8);
        let q = build_q(&op, &rho, &[cc(0.0), cc(0.0)], 1e-9).unwrap();
        assert!((q.matrix[1][0] - lam).norm() < 1e-12);
        assert!((q.matrix[0][0] - cc(1.0)).norm() < 1e-12);
        assert!((q.matrix[1][1] - cc(1.0)).norm() < 1e-12);
        assert!(q.matrix[1][2].norm() < 1e-12);
        assert!(q.matrix[2][2].norm() < 1e-12);
        assert!(crate::linalg::hermitian_defect(&q.matrix) < 1e-12);
        // full check agrees with the closed form
        let v = pos_check(&q, 1e-7).unwrap();
        let r = reduced_from_sum_sq(1, 0.25, 1e-7);
        assert_eq!(v.holds, r.holds);
        for (x, y) in v.restricted_spectrum.iter().zip(&r.restricted_spectrum) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn build_q_noncharacteristic_sphere() {
        // P = d/dz2: q00 = |P^(2)|^2 rho_{z2 zbar2} = 0
        let op = HoloPDO::new(
            2,
            vec![(
                MultiIndex(vec![0, 1]),
                TruncatedSeries::constant(2, 8, cc(1.0)),
            )],
        )
        .unwrap();
        let rho = normal_rho(2, 8);
        let q = build_q(&op, &rho, &[cc(0.0), cc(0.0)], 1e-9).unwrap();
        assert!(q.matrix[0][0].norm() < 1e-12);
    }

    #[test]
    fn eigenvector_formula() {
        let a = [c(0.21, -0.35), c(-0.4, 0.18), c(0.05, 0.3)];
        for sign in [1.0, -1.0] {
            assert!(eigenvector_residual(&a, sign) < 1e-12);
        }
    }

    #[test]
    fn spectrum_matches_closed_form_random() {
        let mut rng = crate::rng::SplitMix64::new(0xa5a5_1234);
        for _ in 0..40 {
            let n = 1 + (rng.next_u64() % 5) as usize;
            let target: f64 = rng.next_f64() * 2.0;
            let mut a: Vec<Complex64> = (0..n).map(|_| rng.next_complex()).collect();
            let norm = a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm > 0.0 {
                let s = target.sqrt() / norm;
                for x in &mut a {
                    *x *= s;
                }
            }
            let sum_sq: f64 = a.iter().map(|c| c.norm_sqr()).sum();
            let q = normal_form_q(&a);
            let v = pos_check(&q, 1e-7).unwrap();
            let r = reduced_from_sum_sq(n, sum_sq, 1e-7);
            for (x, y) in v.restricted_spectrum.iter().zip(&r.restricted_spectrum) {
                assert!((x - y).abs() < 1e-9, "spectrum mismatch: {x} vs {y}");
            }
            if (sum_sq - 1.0).abs() > 1e-6 {
                assert_eq!(v.holds, r.holds);
            }
        }
    }
}
