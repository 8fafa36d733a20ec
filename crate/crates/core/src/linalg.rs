//! Dense linear algebra for small complex matrices.
//!
//! Everything here targets matrices of dimension at most a dozen or so:
//! cyclic Jacobi rotations for Hermitian eigenproblems, Cholesky for the Levi
//! form, Householder reflections for conormal and symbol alignment, and
//! Gauss-Jordan inversion for coordinate changes. Deterministic throughout.

use num_complex::Complex64;

use crate::{Error, Result};

pub type CMatrix = Vec<Vec<Complex64>>;

pub fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

pub fn cone() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

pub fn identity(n: usize) -> CMatrix {
    let mut m = vec![vec![czero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = cone();
    }
    m
}

pub fn matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = vec![vec![czero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            let ail = a[i][l];
            if ail.norm() == 0.0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += ail * b[l][j];
            }
        }
    }
    out
}

pub fn matvec(a: &CMatrix, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
        .collect()
}

pub fn adjoint(a: &CMatrix) -> CMatrix {
    let n = a.len();
    let m = a[0].len();
    let mut out = vec![vec![czero(); n]; m];
    for i in 0..n {
        for j in 0..m {
            out[j][i] = a[i][j].conj();
        }
    }
    out
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Max |A[i][j] - conj(A[j][i])| over all entries.
pub fn hermitian_defect(a: &CMatrix) -> f64 {
    let n = a.len();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((a[i][j] - a[j][i].conj()).norm());
        }
    }
    worst
}

/// Gauss-Jordan inverse with partial pivoting.
pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<Complex64>> = a.iter().map(|r| {
        let mut row = r.clone();
        row.extend(vec![czero(); n]);
        row
    }).collect();
    for (i, row) in m.iter_mut().enumerate() {
        row[n + i] = cone();
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                m[i][col]
                    .norm()
                    .partial_cmp(&m[j][col].norm())
                    .unwrap()
            })
            .unwrap();
        if m[pivot][col].norm() < 1e-13 {
            return Err(Error::SingularMatrix);
        }
        m.swap(col, pivot);
        let inv = cone() / m[col][col];
        for j in 0..2 * n {
            m[col][j] *= inv;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = m[i][col];
            if f.norm() == 0.0 {
                continue;
            }
            for j in 0..2 * n {
                let v = m[col][j];
                m[i][j] -= f * v;
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Eigenvalues and eigenvectors of a Hermitian matrix by cyclic Jacobi
/// rotations. Returns eigenvalues sorted ascending with eigenvectors as the
/// columns of the returned matrix, matched by position.
pub fn hermitian_eigen(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = a.len();
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut m = a.clone();
    let mut v = identity(n);
    let scale = m
        .iter()
        .flatten()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
        .max(1.0);
    let tol = 1e-14 * scale;
    const MAX_SWEEPS: usize = 60;
    for _ in 0..MAX_SWEEPS {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m[p][q].norm());
            }
        }
        if off <= tol {
            return Ok(sorted_eigen(&m, v));
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let g = m[p][q];
                if g.norm() <= tol * 1e-2 {
                    continue;
                }
                // Phase that makes the pivot real, then a real rotation.
                let phase = g / g.norm();
                let app = m[p][p].re;
                let aqq = m[q][q].re;
                let theta = (aqq - app) / (2.0 * g.norm());
                let t = if theta.abs() > 1e12 {
                    1.0 / (2.0 * theta)
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Unitary U: columns p,q mix with U[p][p]=c, U[q][p]=-s*conj(phase),
                // U[p][q]=s*phase, U[q][q]=c. Update M <- U^H M U, V <- V U.
                let up_p = Complex64::new(c, 0.0);
                let up_q = phase * s;
                let uq_p = -phase.conj() * s;
                let uq_q = Complex64::new(c, 0.0);
                for i in 0..n {
                    let mip = m[i][p];
                    let miq = m[i][q];
                    m[i][p] = mip * up_p + miq * uq_p;
                    m[i][q] = mip * up_q + miq * uq_q;
                }
                for j in 0..n {
                    let mpj = m[p][j];
                    let mqj = m[q][j];
                    m[p][j] = up_p.conj() * mpj + uq_p.conj() * mqj;
                    m[q][j] = up_q.conj() * mpj + uq_q.conj() * mqj;
                }
                for i in 0..n {
                    let vip = v[i][p];
                    let viq = v[i][q];
                    v[i][p] = vip * up_p + viq * uq_p;
                    v[i][q] = vip * up_q + viq * uq_q;
                }
                m[p][q] = czero();
                m[q][p] = czero();
                m[p][p] = Complex64::new(m[p][p].re, 0.0);
                m[q][q] = Complex64::new(m[q][q].re, 0.0);
            }
        }
    }
    let mut off: f64 = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            off = off.max(m[p][q].norm());
        }
    }
    Err(Error::EigenNoConvergence(off))
}

fn sorted_eigen(m: &CMatrix, v: CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i][i].re.partial_cmp(&m[j][j].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| m[i][i].re).collect();
    let mut vectors = vec![vec![czero(); n]; n];
    for (newcol, &oldcol) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r][newcol] = v[r][oldcol];
        }
    }
    (values, vectors)
}

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn symmetric_eigenvalues(a: &[Vec<f64>]) -> Result<Vec<f64>> {
    let m: CMatrix = a
        .iter()
        .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
        .collect();
    Ok(hermitian_eigen(&m)?.0)
}

/// Cholesky factor L (lower triangular, positive diagonal) with M = L L^H.
/// Fails with the offending pivot when M is not positive definite.
pub fn cholesky(m: &CMatrix) -> Result<CMatrix> {
    let n = m.len();
    let mut l = vec![vec![czero(); n]; n];
    for j in 0..n {
        let mut d = m[j][j].re;
        for k in 0..j {
            d -= l[j][k].norm_sqr();
        }
        if d <= 1e-12 {
            return Err(Error::NotStrictlyPseudoconvex { index: j, value: d });
        }
        let dj = d.sqrt();
        l[j][j] = Complex64::new(dj, 0.0);
        for i in (j + 1)..n {
            let mut s = m[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k].conj();
            }
            l[i][j] = s / dj;
        }
    }
    Ok(l)
}

/// Unitary matrix sending `b` to `(0, ..., 0, ||b||)`. Identity when `b` is
/// already a positive real multiple of the last basis vector.
pub fn householder_to_last(b: &[Complex64]) -> CMatrix {
    let n = b.len();
    let norm = vec_norm(b);
    assert!(norm > 0.0, "cannot align the zero vector");
    let last = b[n - 1];
    let tail: f64 = b[..n - 1].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if tail <= 1e-14 * norm && last.re > 0.0 && last.im.abs() <= 1e-14 * norm {
        return identity(n);
    }
    // Reflection v = b + e^{i arg(b_n)} ||b|| e_n maps b to -e^{i arg} ||b|| e_n;
    // a final diagonal phase turns that into +||b|| e_n.
    let phase = if last.norm() > 1e-14 * norm {
        last / last.norm()
    } else {
        cone()
    };
    let mut v: Vec<Complex64> = b.to_vec();
    v[n - 1] += phase * norm;
    let vnorm2: f64 = v.iter().map(|c| c.norm_sqr()).sum();
    let mut h = identity(n);
    for i in 0..n {
        for j in 0..n {
            h[i][j] -= v[i] * v[j].conj() * (2.0 / vnorm2);
        }
    }
    // h * b = -phase * norm * e_n; fix the phase of the last coordinate.
    let mut d = identity(n);
    d[n - 1][n - 1] = -phase.conj();
    matmul(&d, &h)
}

/// Orthonormal basis of the orthogonal complement of `c` in C^n, built by
/// Gram-Schmidt over the standard basis vectors in index order.
pub fn orthonormal_complement(c: &[Complex64]) -> Vec<Vec<Complex64>> {
    let n = c.len();
    let norm = vec_norm(c);
    assert!(norm > 0.0, "constraint vector must be nonzero");
    let unit: Vec<Complex64> = c.iter().map(|x| x / norm).collect();
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(n - 1);
    for j in 0..n {
        if basis.len() == n - 1 {
            break;
        }
        let mut v: Vec<Complex64> = vec![czero(); n];
        v[j] = cone();
        // project out the constraint direction: subtract <unit, v> unit with
        // <a, b> = sum conj(a_i) b_i
        let inner: Complex64 = unit.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
        for i in 0..n {
            v[i] -= inner * unit[i];
        }
        for u in &basis {
            let inner: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for i in 0..n {
                v[i] -= inner * u[i];
            }
        }
        let vn = vec_norm(&v);
        if vn > 1e-10 {
            basis.push(v.iter().map(|x| x / vn).collect());
        }
    }
    basis
}
