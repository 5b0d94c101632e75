//! Complex structure moduli of the split threefold and period data.
//!
//! A point is a triple of upper-half-plane moduli `tau = (tau_1, tau_2,
//! tau_3)`, one per torus factor. The holomorphic volume form is fixed
//! as `dz1 ^ dz2 ^ dz3` with unit coefficient; everything downstream is
//! checked to be invariant under a constant phase change of that
//! choice.
//!
//! Periods over the canonical homology basis are monomials in the
//! moduli: a `(1,1,1)` basis cycle picks up the factor modulus for each
//! `beta` leg, and the mixed-shape cycles have vanishing periods. The
//! cup-product pairing of closed three-forms is evaluated through the
//! inverse intersection form, which here is simply `-Q` since `Q^2 =
//! -1` on the canonical basis.

use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float; // float intrinsics on no_std builds

use crate::homology::{intersection_matrix, FactorCycle, HomologyClass, OneCycle, BASIS, BASIS_RANK};

/// Central charges with modulus below this are treated as on top of a
/// zero and refuse to define a phase.
pub const Z_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuliError {
    /// Some factor modulus left the open upper half-plane.
    InvalidPoint,
    /// |Z| fell below [`Z_FLOOR`], so its phase is undefined.
    ZeroCentralCharge,
    /// The harmonic basis degenerated and a decomposition did not
    /// reconstruct its input.
    DegenerateDecomposition,
}

impl fmt::Display for ModuliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuliError::InvalidPoint => write!(f, "moduli must lie in the upper half-plane"),
            ModuliError::ZeroCentralCharge => {
                write!(f, "central charge vanishes to working precision")
            }
            ModuliError::DegenerateDecomposition => {
                write!(f, "harmonic decomposition failed to reconstruct its input")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ModuliError {}

/// A point of the product moduli space; all three imaginary parts are
/// strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModuliPoint {
    pub tau: [Complex64; 3],
}

impl ModuliPoint {
    pub fn new(tau: [Complex64; 3]) -> Result<Self, ModuliError> {
        if tau.iter().all(|t| t.im > 0.0) {
            Ok(ModuliPoint { tau })
        } else {
            Err(ModuliError::InvalidPoint)
        }
    }

    pub fn is_valid(&self) -> bool {
        self.tau.iter().all(|t| t.im > 0.0)
    }
}

/// Kähler data of a point: the potential and the rescaling factor that
/// normalises the holomorphic form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    pub vol_y: f64,
    pub kahler: f64,
    /// `exp(kahler / 2)`, the factor multiplying raw periods.
    pub scale: f64,
}

/// Periods of the raw holomorphic form over the canonical basis. Entry
/// `b` is the product over factors of 1 for an `alpha` leg and `tau_i`
/// for a `beta` leg; cycles containing a full factor or a point have
/// zero period.
pub fn periods(p: &ModuliPoint) -> [Complex64; BASIS_RANK] {
    let mut out = [Complex64::new(0.0, 0.0); BASIS_RANK];
    for (b, cycle) in BASIS.iter().enumerate() {
        if cycle.shape() != [1, 1, 1] {
            continue;
        }
        let mut v = Complex64::new(1.0, 0.0);
        for i in 0..3 {
            if let FactorCycle::One(OneCycle::Beta) = cycle.factors[i] {
                v *= p.tau[i];
            }
        }
        out[b] = v;
    }
    out
}

/// Holomorphic derivatives of [`periods`] with respect to each modulus,
/// taken symbolically on the period monomials.
pub fn period_derivs(p: &ModuliPoint) -> [[Complex64; BASIS_RANK]; 3] {
    let mut out = [[Complex64::new(0.0, 0.0); BASIS_RANK]; 3];
    for (b, cycle) in BASIS.iter().enumerate() {
        if cycle.shape() != [1, 1, 1] {
            continue;
        }
        for a in 0..3 {
            if !matches!(cycle.factors[a], FactorCycle::One(OneCycle::Beta)) {
                continue;
            }
            // derivative removes the tau_a factor and keeps the rest
            let mut v = Complex64::new(1.0, 0.0);
            for i in 0..3 {
                if i == a {
                    continue;
                }
                if let FactorCycle::One(OneCycle::Beta) = cycle.factors[i] {
                    v *= p.tau[i];
                }
            }
            out[a][b] = v;
        }
    }
    out
}

/// Cup-product pairing of two closed three-forms given by period
/// vectors: `int eta ^ xi = u^T Q v`, using that the inverse
/// intersection form is `-Q`.
pub fn cup_pairing(u: &[Complex64; BASIS_RANK], v: &[Complex64; BASIS_RANK]) -> Complex64 {
    let q = intersection_matrix();
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..BASIS_RANK {
        if u[i].norm_sqr() == 0.0 {
            continue;
        }
        for j in 0..BASIS_RANK {
            if q[i][j] != 0 {
                s += u[i] * v[j] * (q[i][j] as f64);
            }
        }
    }
    s
}

/// Pairing of the raw holomorphic form against its conjugate,
/// `int Omega0 ^ conj(Omega0)`; for a product point this equals
/// `-8 i * prod Im tau`.
pub fn omega0_pairing(p: &ModuliPoint) -> Complex64 {
    let u = periods(p);
    let mut v = [Complex64::new(0.0, 0.0); BASIS_RANK];
    for k in 0..BASIS_RANK {
        v[k] = u[k].conj();
    }
    cup_pairing(&u, &v)
}

/// Kähler potential `-log(i int Omega0 ^ conj Omega0) + log(8 vol_y)`.
pub fn kahler_potential(p: &ModuliPoint, vol_y: f64) -> f64 {
    let pairing = omega0_pairing(p);
    let positive = (Complex64::new(0.0, 1.0) * pairing).re;
    -(positive.ln()) + (8.0 * vol_y).ln()
}

pub fn normalization(p: &ModuliPoint, vol_y: f64) -> Normalization {
    let kahler = kahler_potential(p, vol_y);
    Normalization {
        vol_y,
        kahler,
        scale: (0.5 * kahler).exp(),
    }
}

/// Holomorphic Kähler derivatives `d K / d tau_a = i / (2 Im tau_a)`.
pub fn kahler_derivs(p: &ModuliPoint) -> [Complex64; 3] {
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for a in 0..3 {
        out[a] = Complex64::new(0.0, 0.5 / p.tau[a].im);
    }
    out
}

/// Diagonal entries of the moduli metric
/// `g_{a abar} = 1 / (4 (Im tau_a)^2)`; off-diagonal entries vanish for
/// a product point.
pub fn wp_metric(p: &ModuliPoint) -> [f64; 3] {
    let mut g = [0.0; 3];
    for a in 0..3 {
        g[a] = 0.25 / (p.tau[a].im * p.tau[a].im);
    }
    g
}

/// Raw period sum of a class (central charge before normalisation).
pub fn period_sum(p: &ModuliPoint, class: &HomologyClass) -> Complex64 {
    let per = periods(p);
    let mut z = Complex64::new(0.0, 0.0);
    for b in 0..BASIS_RANK {
        if class.coeffs[b] != 0 {
            z += per[b] * (class.coeffs[b] as f64);
        }
    }
    z
}

/// Holomorphic derivatives of [`period_sum`].
pub fn period_sum_derivs(p: &ModuliPoint, class: &HomologyClass) -> [Complex64; 3] {
    let dper = period_derivs(p);
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for a in 0..3 {
        for b in 0..BASIS_RANK {
            if class.coeffs[b] != 0 {
                out[a] += dper[a][b] * (class.coeffs[b] as f64);
            }
        }
    }
    out
}

/// Central charge `Z = e^{K/2} * sum of class periods`.
pub fn central_charge(p: &ModuliPoint, class: &HomologyClass, vol_y: f64) -> Complex64 {
    normalization(p, vol_y).scale * period_sum(p, class)
}

/// Phase of a central charge in (-pi, pi]; refuses values within
/// [`Z_FLOOR`] of zero.
pub fn phase(z: Complex64) -> Result<f64, ModuliError> {
    if z.norm() < Z_FLOOR {
        return Err(ModuliError::ZeroCentralCharge);
    }
    Ok(z.im.atan2(z.re))
}

/// Periods of the normalised holomorphic form `Omega = e^{K/2} Omega0`.
pub fn omega_periods(p: &ModuliPoint, vol_y: f64) -> [Complex64; BASIS_RANK] {
    let scale = normalization(p, vol_y).scale;
    let mut out = periods(p);
    for v in out.iter_mut() {
        *v *= scale;
    }
    out
}

/// Period vectors of the covariant derivatives
/// `chi_a = (d_a + d_a K) e^{K/2} Omega0`-wise, i.e.
/// `chi_a = e^{K/2} (d_a periods + (d_a K) periods)`. These span the
/// degree-(2,1) directions cut out by the product family.
pub fn chi_vectors(p: &ModuliPoint, vol_y: f64) -> [[Complex64; BASIS_RANK]; 3] {
    let scale = normalization(p, vol_y).scale;
    let per = periods(p);
    let dper = period_derivs(p);
    let dk = kahler_derivs(p);
    let mut out = [[Complex64::new(0.0, 0.0); BASIS_RANK]; 3];
    for a in 0..3 {
        for b in 0..BASIS_RANK {
            out[a][b] = scale * (dper[a][b] + dk[a] * per[b]);
        }
    }
    out
}

/// Covariant derivatives of the central charge,
/// `D_a Z = e^{K/2} (d_a Z0 + (d_a K) Z0)`; they vanish exactly at
/// attractor points of the class.
pub fn covariant_z_derivs(
    p: &ModuliPoint,
    class: &HomologyClass,
    vol_y: f64,
) -> [Complex64; 3] {
    let scale = normalization(p, vol_y).scale;
    let z0 = period_sum(p, class);
    let dz0 = period_sum_derivs(p, class);
    let dk = kahler_derivs(p);
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for a in 0..3 {
        out[a] = scale * (dz0[a] + dk[a] * z0);
    }
    out
}

/// Holomorphic derivatives of `log |Z|^2 = K + log Z0 + log conj(Z0)`.
pub fn log_z2_derivs(
    p: &ModuliPoint,
    class: &HomologyClass,
) -> Result<[Complex64; 3], ModuliError> {
    let z0 = period_sum(p, class);
    if z0.norm() < Z_FLOOR {
        return Err(ModuliError::ZeroCentralCharge);
    }
    let dz0 = period_sum_derivs(p, class);
    let dk = kahler_derivs(p);
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for a in 0..3 {
        out[a] = dk[a] + dz0[a] / z0;
    }
    Ok(out)
}

/// Length of the (1,1,1) block, where the product family's harmonic
/// three-forms live.
pub const BLOCK_LEN: usize = 8;

/// Harmonic decomposition of a real three-form supported on the
/// (1,1,1) period block, as the four projections onto the normalised
/// holomorphic form, its covariant derivatives, and their conjugates.
#[derive(Debug, Clone)]
pub struct HodgeDecomposition {
    /// The four component period vectors, in the order: holomorphic
    /// multiple, derivative part, conjugate derivative part, conjugate
    /// multiple. Their sum reconstructs the input.
    pub terms: [[Complex64; BLOCK_LEN]; 4],
}

impl HodgeDecomposition {
    pub fn reconstruction(&self) -> [Complex64; BLOCK_LEN] {
        let mut out = [Complex64::new(0.0, 0.0); BLOCK_LEN];
        for t in &self.terms {
            for k in 0..BLOCK_LEN {
                out[k] += t[k];
            }
        }
        out
    }
}

fn block_of(v: &[Complex64; BASIS_RANK]) -> [Complex64; BLOCK_LEN] {
    let mut out = [Complex64::new(0.0, 0.0); BLOCK_LEN];
    out.copy_from_slice(&v[..BLOCK_LEN]);
    out
}

fn full_of(v: &[Complex64; BLOCK_LEN]) -> [Complex64; BASIS_RANK] {
    let mut out = [Complex64::new(0.0, 0.0); BASIS_RANK];
    out[..BLOCK_LEN].copy_from_slice(v);
    out
}

/// Decomposes a real harmonic three-form (given by its eight real
/// periods on the (1,1,1) block) over the frame spanned by the
/// normalised holomorphic form, its covariant derivatives and their
/// conjugates, using cup pairings for the coefficients:
///
/// `Xi = (1/(8 vol_y)) ( i Zbar(Xi) Omega
///                      - i g^{a abar} conj(D_a Z(Xi)) chi_a
///                      + i g^{a abar} D_a Z(Xi) conj(chi_a)
///                      - i Z(Xi) conj(Omega) )`
///
/// where `Z(Xi) = int Xi ^ Omega` and `D_a Z(Xi) = int Xi ^ chi_a`.
/// Fails if the four terms do not reconstruct the input to 1e-8.
pub fn hodge_decompose(
    p: &ModuliPoint,
    xi: &[f64; BLOCK_LEN],
    vol_y: f64,
) -> Result<HodgeDecomposition, ModuliError> {
    let omega = omega_periods(p, vol_y);
    let chi = chi_vectors(p, vol_y);
    let g = wp_metric(p);

    let mut xi_full = [Complex64::new(0.0, 0.0); BASIS_RANK];
    for k in 0..BLOCK_LEN {
        xi_full[k] = Complex64::new(xi[k], 0.0);
    }
    let mut omega_conj = [Complex64::new(0.0, 0.0); BASIS_RANK];
    for k in 0..BASIS_RANK {
        omega_conj[k] = omega[k].conj();
    }

    let z_xi = cup_pairing(&xi_full, &omega);
    let zbar_xi = cup_pairing(&xi_full, &omega_conj);
    let mut dz_xi = [Complex64::new(0.0, 0.0); 3];
    for a in 0..3 {
        dz_xi[a] = cup_pairing(&xi_full, &chi[a]);
    }

    let i = Complex64::new(0.0, 1.0);
    let norm = 1.0 / (8.0 * vol_y);

    let mut terms = [[Complex64::new(0.0, 0.0); BLOCK_LEN]; 4];
    let omega_block = block_of(&omega);
    for k in 0..BLOCK_LEN {
        terms[0][k] = i * zbar_xi * omega_block[k] * norm;
        terms[3][k] = -i * z_xi * omega_block[k].conj() * norm;
    }
    for a in 0..3 {
        let ginv = 1.0 / g[a];
        let chi_block = block_of(&chi[a]);
        for k in 0..BLOCK_LEN {
            terms[1][k] += -i * ginv * dz_xi[a].conj() * chi_block[k] * norm;
            terms[2][k] += i * ginv * dz_xi[a] * chi_block[k].conj() * norm;
        }
    }

    let dec = HodgeDecomposition { terms };
    let rec = dec.reconstruction();
    let mut err: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for k in 0..BLOCK_LEN {
        err = err.max((rec[k] - xi_full[k]).norm());
        scale = scale.max(xi_full[k].norm());
    }
    if err > 1e-8 * scale {
        return Err(ModuliError::DegenerateDecomposition);
    }
    Ok(dec)
}

/// Convenience: lift an eight-entry block vector back to a full period
/// vector (zero outside the block).
pub fn block_to_full(v: &[Complex64; BLOCK_LEN]) -> [Complex64; BASIS_RANK] {
    full_of(v)
}
