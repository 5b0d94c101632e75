//! Small dense linear algebra used across the crate.
//!
//! Everything here targets tiny systems (n <= 20): partial-pivot
//! elimination for determinants and solves, and a cyclic Jacobi
//! eigensolver for real symmetric matrices. Matrices are row-major
//! slices of length `n * n`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float; // float intrinsics on no_std builds

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinalgError {
    /// A pivot fell below the hard floor; the system is singular to
    /// working precision.
    Singular,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::Singular => write!(f, "matrix is singular to working precision"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for LinalgError {}

/// Determinant of a real `n x n` matrix by elimination with partial
/// pivoting.
pub fn real_det(n: usize, a: &[f64]) -> f64 {
    assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let mut piv = col;
        for row in col + 1..n {
            if m[row * n + col].abs() > m[piv * n + col].abs() {
                piv = row;
            }
        }
        if m[piv * n + col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            for k in 0..n {
                m.swap(col * n + k, piv * n + k);
            }
            det = -det;
        }
        let d = m[col * n + col];
        det *= d;
        for row in col + 1..n {
            let f = m[row * n + col] / d;
            if f != 0.0 {
                for k in col..n {
                    m[row * n + k] -= f * m[col * n + k];
                }
            }
        }
    }
    det
}

/// Determinant of a complex `n x n` matrix.
pub fn complex_det(n: usize, a: &[Complex64]) -> Complex64 {
    assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut piv = col;
        for row in col + 1..n {
            if m[row * n + col].norm_sqr() > m[piv * n + col].norm_sqr() {
                piv = row;
            }
        }
        if m[piv * n + col].norm_sqr() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            for k in 0..n {
                m.swap(col * n + k, piv * n + k);
            }
            det = -det;
        }
        let d = m[col * n + col];
        det *= d;
        for row in col + 1..n {
            let f = m[row * n + col] / d;
            for k in col..n {
                let sub = f * m[col * n + k];
                m[row * n + k] -= sub;
            }
        }
    }
    det
}

/// Solves the real system `a x = b` in place of a copy; `a` is `n x n`.
pub fn real_solve(n: usize, a: &[f64], b: &[f64]) -> Result<Vec<f64>, LinalgError> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    for col in 0..n {
        let mut piv = col;
        for row in col + 1..n {
            if m[row * n + col].abs() > m[piv * n + col].abs() {
                piv = row;
            }
        }
        if m[piv * n + col].abs() < 1e-300 {
            return Err(LinalgError::Singular);
        }
        if piv != col {
            for k in 0..n {
                m.swap(col * n + k, piv * n + k);
            }
            x.swap(col, piv);
        }
        let d = m[col * n + col];
        for row in col + 1..n {
            let f = m[row * n + col] / d;
            if f != 0.0 {
                for k in col..n {
                    m[row * n + k] -= f * m[col * n + k];
                }
                x[row] -= f * x[col];
            }
        }
    }
    for col in (0..n).rev() {
        let mut s = x[col];
        for k in col + 1..n {
            s -= m[col * n + k] * x[k];
        }
        x[col] = s / m[col * n + col];
    }
    Ok(x)
}

/// Solves the complex system `a x = b`; `a` is `n x n`.
pub fn complex_solve(
    n: usize,
    a: &[Complex64],
    b: &[Complex64],
) -> Result<Vec<Complex64>, LinalgError> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    for col in 0..n {
        let mut piv = col;
        for row in col + 1..n {
            if m[row * n + col].norm_sqr() > m[piv * n + col].norm_sqr() {
                piv = row;
            }
        }
        if m[piv * n + col].norm_sqr() < 1e-300 {
            return Err(LinalgError::Singular);
        }
        if piv != col {
            for k in 0..n {
                m.swap(col * n + k, piv * n + k);
            }
            x.swap(col, piv);
        }
        let d = m[col * n + col];
        for row in col + 1..n {
            let f = m[row * n + col] / d;
            for k in col..n {
                let sub = f * m[col * n + k];
                m[row * n + k] -= sub;
            }
            let sub = f * x[col];
            x[row] -= sub;
        }
    }
    for col in (0..n).rev() {
        let mut s = x[col];
        for k in col + 1..n {
            s -= m[col * n + k] * x[k];
        }
        x[col] = s / m[col * n + col];
    }
    Ok(x)
}

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi
/// rotations. Returns eigenvalues in ascending order and the matching
/// orthonormal eigenvectors as the columns of a row-major matrix.
pub fn jacobi_eigh(n: usize, a: &[f64]) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale: f64 = m.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += m[p * n + q] * m[p * n + q];
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[i * n + i]
            .partial_cmp(&m[j * n + j])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let vals: Vec<f64> = order.iter().map(|&i| m[i * n + i]).collect();
    let mut vecs = vec![0.0; n * n];
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            vecs[k * n + new] = v[k * n + old];
        }
    }
    (vals, vecs)
}

/// Joint eigenvalues of two commuting real symmetric matrices.
///
/// Diagonalises `x`, then re-diagonalises `y` inside each eigenvalue
/// cluster of `x` (the off-cluster blocks of the rotated `y` vanish
/// because the matrices commute). Returns the paired eigenvalues
/// `(x_j, y_j)` in a deterministic order.
pub fn commuting_symmetric_eig(n: usize, x: &[f64], y: &[f64]) -> Vec<(f64, f64)> {
    let (xvals, q) = jacobi_eigh(n, x);
    // y' = q^T y q
    let mut yq = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                s += y[i * n + k] * q[k * n + j];
            }
            yq[i * n + j] = s;
        }
    }
    let mut yp = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                s += q[k * n + i] * yq[k * n + j];
            }
            yp[i * n + j] = s;
        }
    }
    let cluster_tol = 1e-8;
    let mut pairs = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (xvals[end] - xvals[end - 1]).abs() <= cluster_tol {
            end += 1;
        }
        let w = end - start;
        if w == 1 {
            pairs.push((xvals[start], yp[start * n + start]));
        } else {
            let mut block = vec![0.0; w * w];
            for i in 0..w {
                for j in 0..w {
                    block[i * w + j] = yp[(start + i) * n + (start + j)];
                }
            }
            let (yvals, _) = jacobi_eigh(w, &block);
            for i in 0..w {
                pairs.push((xvals[start + i], yvals[i]));
            }
        }
        start = end;
    }
    pairs
}
