//! Lawlor necks: the family of special Lagrangian submanifolds of
//! complex m-space asymptotic to a transverse pair of type-1 planes.
//!
//! A neck is parametrized by positive moduli `a = (a_1, ..., a_m)`.
//! Its asymptotic data are the characteristic angles
//! `phi_k = a_k int dx / ((1 + a_k x^2) sqrt(P(x)))` (which always sum
//! to pi) and the area-like invariant `A = omega_m (a_1...a_m)^{-1/2}`,
//! with `omega_m` the area of the unit (m-1)-sphere. The map from
//! moduli to invariants is a bijection; the inverse here is a damped
//! Newton iteration on quadrature values.
//!
//! Points of the neck are `(z_1(y) x_1, ..., z_m(y) x_m)` over a unit
//! vector `x` and a real parameter `y`, with
//! `z_k = e^{i psi_k(y)} sqrt(a_k^{-1} + y^2)` and `psi_k` the running
//! phase integral. Scaling the ambient space by `t` maps the family to
//! itself via `a -> a / t^2`, fixing `phi` and scaling `A` by `t^m`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float; // float intrinsics on no_std builds

use crate::linalg::complex_det;
use crate::quad::{self, QuadError};

/// Per-integral quadrature target.
pub const QUAD_TOL: f64 = 1e-10;

/// Newton residual target for the inverse map.
const NEWTON_TOL: f64 = 1e-11;
const NEWTON_CAP: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeckError {
    /// Moduli must have m >= 3 positive entries.
    BadModuli,
    /// Angles must lie in (0, pi) and sum to pi; the area must be
    /// positive.
    BadInvariants,
    /// The direction vector must be unit length.
    BadDirection,
    /// An integral failed to converge.
    Quadrature(QuadError),
    /// Newton iteration stalled before reaching the residual target.
    NoConvergence,
}

impl fmt::Display for NeckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NeckError::BadModuli => write!(f, "moduli must have at least 3 positive entries"),
            NeckError::BadInvariants => {
                write!(f, "angles must lie in (0, pi) and sum to pi with positive area")
            }
            NeckError::BadDirection => write!(f, "direction must be a unit vector"),
            NeckError::Quadrature(e) => write!(f, "quadrature failed: {e}"),
            NeckError::NoConvergence => write!(f, "inverse iteration did not converge"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NeckError {}

impl From<QuadError> for NeckError {
    fn from(e: QuadError) -> Self {
        NeckError::Quadrature(e)
    }
}

/// Moduli of a neck: m >= 3 positive reals.
#[derive(Debug, Clone, PartialEq)]
pub struct NeckModuli {
    a: Vec<f64>,
}

impl NeckModuli {
    pub fn new(a: Vec<f64>) -> Result<Self, NeckError> {
        if a.len() < 3 || a.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(NeckError::BadModuli);
        }
        Ok(NeckModuli { a })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.a
    }
}

/// Asymptotic invariants: angles in (0, pi) summing to pi, and the
/// positive area constant.
#[derive(Debug, Clone, PartialEq)]
pub struct NeckInvariants {
    pub phi: Vec<f64>,
    pub area: f64,
}

/// Coefficients of `P(x) = sum_j e_j(a) x^{2(j-1)}`: the elementary
/// symmetric sums of the moduli, which make the evaluation of
/// `(prod(1 + a_k x^2) - 1) / x^2` exact at the origin.
fn symmetric_coeffs(a: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; a.len() + 1];
    e[0] = 1.0;
    for (n, &v) in a.iter().enumerate() {
        for j in (1..=n + 1).rev() {
            e[j] += v * e[j - 1];
        }
    }
    e.remove(0);
    e
}

fn eval_even_poly(coeffs: &[f64], x: f64) -> f64 {
    let s = x * x;
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * s + c;
    }
    acc
}

/// `P(x) = (prod_k (1 + a_k x^2) - 1) / x^2`, with the limit value
/// `sum a_k` at the origin.
pub fn p_eval(moduli: &NeckModuli, x: f64) -> f64 {
    eval_even_poly(&symmetric_coeffs(&moduli.a), x)
}

/// Area of the unit sphere in m-space, `2 pi^{m/2} / Gamma(m/2)`,
/// by the two-step recursion from the circle and the 2-sphere.
pub fn sphere_area(m: usize) -> f64 {
    assert!(m >= 1);
    let mut values = [2.0, 2.0 * core::f64::consts::PI];
    if m <= 2 {
        return values[m - 1];
    }
    let mut dim = 2;
    while dim < m {
        dim += 1;
        let next = 2.0 * core::f64::consts::PI * values[0] / (dim as f64 - 2.0);
        values[0] = values[1];
        values[1] = next;
    }
    values[1]
}

fn angle_integrand(coeffs: &[f64], ak: f64) -> impl Fn(f64) -> f64 + '_ {
    move |x: f64| 1.0 / ((1.0 + ak * x * x) * eval_even_poly(coeffs, x).sqrt())
}

/// Angles and area of a neck. Each angle is
/// `a_k int_{-inf}^{inf} dx / ((1 + a_k x^2) sqrt(P))`, evaluated as
/// twice the half-line integral of the even integrand; the area is
/// `omega_m / sqrt(prod a)`.
pub fn invariants_from_moduli(moduli: &NeckModuli) -> Result<NeckInvariants, NeckError> {
    let coeffs = symmetric_coeffs(&moduli.a);
    let mut phi = Vec::with_capacity(moduli.a.len());
    for &ak in &moduli.a {
        let integral = quad::half_line(&angle_integrand(&coeffs, ak), QUAD_TOL)?;
        phi.push(2.0 * ak * integral);
    }
    let prod: f64 = moduli.a.iter().product();
    Ok(NeckInvariants {
        phi,
        area: sphere_area(moduli.a.len()) / prod.sqrt(),
    })
}

fn invariants_residual(moduli: &NeckModuli, target: &NeckInvariants) -> Result<Vec<f64>, NeckError> {
    let inv = invariants_from_moduli(moduli)?;
    let m = moduli.a.len();
    let mut f = Vec::with_capacity(m);
    for k in 0..m - 1 {
        f.push(inv.phi[k] - target.phi[k]);
    }
    f.push((inv.area / target.area).ln());
    Ok(f)
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |acc, &x| acc.max(x.abs()))
}

/// Inverts [`invariants_from_moduli`]: recovers the moduli from angles
/// and area by damped Newton iteration with a finite-difference
/// Jacobian. The angle sum must equal pi within 1e-6; the last angle
/// is implied by the others and the residual system uses the first
/// m-1 angles together with the logarithmic area mismatch.
pub fn moduli_from_invariants(target: &NeckInvariants) -> Result<NeckModuli, NeckError> {
    let m = target.phi.len();
    let total: f64 = target.phi.iter().sum();
    if m < 3
        || target.phi.iter().any(|&p| !(p > 0.0 && p < core::f64::consts::PI))
        || (total - core::f64::consts::PI).abs() > 1e-6
        || !(target.area > 0.0)
    {
        return Err(NeckError::BadInvariants);
    }

    // the symmetric solution has a_k ~ 1/phi_k^2 up to global scale;
    // fix the scale from the area, which is exact under a -> c a
    let mut a: Vec<f64> = target.phi.iter().map(|&p| 1.0 / (p * p)).collect();
    let seed_area = sphere_area(m) / a.iter().product::<f64>().sqrt();
    let scale = (seed_area / target.area).powf(2.0 / m as f64);
    for v in a.iter_mut() {
        *v *= scale;
    }

    let mut f = invariants_residual(&NeckModuli::new(a.clone())?, target)?;
    for _ in 0..NEWTON_CAP {
        if max_abs(&f) < NEWTON_TOL {
            return NeckModuli::new(a);
        }
        // finite-difference Jacobian, relative steps
        let mut jac = vec![0.0; m * m];
        for col in 0..m {
            let h = 1e-6 * a[col].max(1e-6);
            let mut shifted = a.clone();
            shifted[col] += h;
            let fs = invariants_residual(&NeckModuli::new(shifted)?, target)?;
            for row in 0..m {
                jac[row * m + col] = (fs[row] - f[row]) / h;
            }
        }
        let delta = crate::linalg::real_solve(m, &jac, &f).map_err(|_| NeckError::NoConvergence)?;
        let mut lambda = 1.0;
        loop {
            let mut trial = a.clone();
            let mut positive = true;
            for k in 0..m {
                trial[k] -= lambda * delta[k];
                if trial[k] <= 0.0 {
                    positive = false;
                    break;
                }
            }
            if positive {
                let ft = invariants_residual(&NeckModuli::new(trial.clone())?, target)?;
                if max_abs(&ft) < max_abs(&f) || lambda < 1e-6 {
                    a = trial;
                    f = ft;
                    break;
                }
            }
            lambda *= 0.5;
            if lambda < 1e-8 {
                return Err(NeckError::NoConvergence);
            }
        }
    }
    if max_abs(&f) < NEWTON_TOL {
        NeckModuli::new(a)
    } else {
        Err(NeckError::NoConvergence)
    }
}

/// Running phases `psi_k(y)`: each starts at 0 at `y = -inf`, passes
/// `phi_k / 2` at the midpoint and tends to `phi_k`. Evaluated as the
/// midpoint value plus a signed prefix integral.
pub fn phases_at(moduli: &NeckModuli, y: f64) -> Result<Vec<f64>, NeckError> {
    let coeffs = symmetric_coeffs(&moduli.a);
    let mut out = Vec::with_capacity(moduli.a.len());
    for &ak in &moduli.a {
        let integrand = angle_integrand(&coeffs, ak);
        let half: f64 = quad::half_line(&integrand, QUAD_TOL)?;
        let run = quad::prefix(&integrand, y.abs(), QUAD_TOL)?;
        out.push(ak * (half + y.signum() * run));
    }
    Ok(out)
}

fn check_unit(x: &[f64], m: usize) -> Result<(), NeckError> {
    if x.len() != m {
        return Err(NeckError::BadDirection);
    }
    let norm2: f64 = x.iter().map(|v| v * v).sum();
    if (norm2 - 1.0).abs() > 1e-8 {
        return Err(NeckError::BadDirection);
    }
    Ok(())
}

/// Point of the neck over the unit direction `x` at parameter `y`:
/// `(z_1(y) x_1, ..., z_m(y) x_m)`.
pub fn neck_point(moduli: &NeckModuli, y: f64, x: &[f64]) -> Result<Vec<Complex64>, NeckError> {
    check_unit(x, moduli.a.len())?;
    let psi = phases_at(moduli, y)?;
    let mut out = Vec::with_capacity(moduli.a.len());
    for (k, &ak) in moduli.a.iter().enumerate() {
        let radius = (1.0 / ak + y * y).sqrt();
        out.push(Complex64::from_polar(radius, psi[k]) * x[k]);
    }
    Ok(out)
}

/// Orthonormal oriented tangent frame at the point over `(y, x)`:
/// the y-velocity column followed by m-1 sphere directions, made
/// orthonormal for the ambient real inner product. Returned as a
/// row-major m x m complex matrix of columns.
fn tangent_frame(moduli: &NeckModuli, y: f64, x: &[f64]) -> Result<Vec<Complex64>, NeckError> {
    let m = moduli.a.len();
    check_unit(x, m)?;
    let psi = phases_at(moduli, y)?;
    let coeffs = symmetric_coeffs(&moduli.a);
    let sqrt_p = eval_even_poly(&coeffs, y).sqrt();

    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    // velocity d/dy of z_k(y) x_k
    let mut velocity = Vec::with_capacity(m);
    for (k, &ak) in moduli.a.iter().enumerate() {
        let radius = (1.0 / ak + y * y).sqrt();
        let dpsi = ak / ((1.0 + ak * y * y) * sqrt_p);
        let dz = Complex64::from_polar(1.0, psi[k])
            * Complex64::new(y / radius, dpsi * radius);
        velocity.push(dz * x[k]);
    }
    cols.push(velocity);
    // sphere tangents: complete x to a basis of its orthogonal
    // complement inside real m-space
    let mut sphere: Vec<Vec<f64>> = Vec::new();
    for seed in 0..m {
        let mut v: Vec<f64> = (0..m).map(|i| if i == seed { 1.0 } else { 0.0 }).collect();
        let along: f64 = (0..m).map(|i| v[i] * x[i]).sum();
        for i in 0..m {
            v[i] -= along * x[i];
        }
        for prev in &sphere {
            let dot: f64 = (0..m).map(|i| v[i] * prev[i]).sum();
            for i in 0..m {
                v[i] -= dot * prev[i];
            }
        }
        let norm: f64 = (0..m).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
        if norm > 1e-8 {
            for w in v.iter_mut() {
                *w /= norm;
            }
            sphere.push(v);
            if sphere.len() == m - 1 {
                break;
            }
        }
    }
    debug_assert_eq!(sphere.len(), m - 1);
    for t in &sphere {
        let mut col = Vec::with_capacity(m);
        for (k, &ak) in moduli.a.iter().enumerate() {
            let radius = (1.0 / ak + y * y).sqrt();
            col.push(Complex64::from_polar(radius, psi[k]) * t[k]);
        }
        cols.push(col);
    }

    // orthonormalize in the real inner product Re<u, v>
    for j in 0..m {
        for i in 0..j {
            let mut dot = 0.0;
            for r in 0..m {
                dot += (cols[i][r].conj() * cols[j][r]).re;
            }
            for r in 0..m {
                let sub = dot * cols[i][r];
                cols[j][r] -= sub;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for r in 0..m {
            cols[j][r] /= norm;
        }
    }

    let mut frame = vec![Complex64::new(0.0, 0.0); m * m];
    for j in 0..m {
        for r in 0..m {
            frame[r * m + j] = cols[j][r];
        }
    }
    // orient the frame positively against the volume form
    if complex_det(m, &frame).re < 0.0 {
        for r in 0..m {
            frame.swap(r * m, r * m + 1);
        }
    }
    Ok(frame)
}

/// Residuals of the special Lagrangian condition on the orthonormal
/// tangent frame at `(y, x)`: the largest symplectic pairing
/// `|sum_k Im(conj(u_k) v_k)|` over frame pairs, and the imaginary
/// part of the volume form on the frame. Both vanish on an exact
/// neck.
pub fn sl_residual(moduli: &NeckModuli, y: f64, x: &[f64]) -> Result<(f64, f64), NeckError> {
    let m = moduli.a.len();
    let frame = tangent_frame(moduli, y, x)?;
    let mut sympl: f64 = 0.0;
    for i in 0..m {
        for j in i + 1..m {
            let mut w = 0.0;
            for r in 0..m {
                w += (frame[r * m + i].conj() * frame[r * m + j]).im;
            }
            sympl = sympl.max(w.abs());
        }
    }
    Ok((sympl, complex_det(m, &frame).im.abs()))
}

/// Value of the real volume form on the oriented orthonormal tangent
/// frame; equals 1 exactly when the surface is calibrated by it.
pub fn calibration_value(moduli: &NeckModuli, y: f64, x: &[f64]) -> Result<f64, NeckError> {
    let frame = tangent_frame(moduli, y, x)?;
    Ok(complex_det(moduli.a.len(), &frame).re)
}

/// Largest discrepancy in the scaling law `t L^{phi,A} = L^{phi,t^m A}`
/// over a fixed probe grid: compares angles, the scaled area and
/// scaled neck points for the moduli `a / t^2` against the originals.
pub fn scaling_check(moduli: &NeckModuli, t: f64) -> Result<f64, NeckError> {
    assert!(t > 0.0);
    let m = moduli.a.len();
    let scaled = NeckModuli::new(moduli.a.iter().map(|&v| v / (t * t)).collect())?;
    let base = invariants_from_moduli(moduli)?;
    let other = invariants_from_moduli(&scaled)?;
    let mut worst: f64 = 0.0;
    for k in 0..m {
        worst = worst.max((base.phi[k] - other.phi[k]).abs());
    }
    worst = worst.max((other.area - t.powi(m as i32) * base.area).abs() / other.area);

    let mut x = vec![0.0; m];
    x[0] = 1.0;
    let probes_y = [-2.0, -0.7, 0.0, 0.4, 1.3];
    let diag = 1.0 / (m as f64).sqrt();
    let diag_x: Vec<f64> = vec![diag; m];
    for dir in [&x, &diag_x] {
        for &y in &probes_y {
            let p = neck_point(moduli, y, dir)?;
            let q = neck_point(&scaled, t * y, dir)?;
            for k in 0..m {
                worst = worst.max((q[k] - t * p[k]).norm());
            }
        }
    }
    Ok(worst)
}
