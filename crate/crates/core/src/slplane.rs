//! Linear algebra of special Lagrangian planes in complex m-space.
//!
//! A plane is the image of the real subspace under a unitary frame, so
//! a pair of planes has a complete invariant: the eigenvalues of the
//! symmetric unitary matrix `S = M M^T` built from the relative frame
//! `M`. Writing them as `exp(2 i phi_j)` with `phi_j` in `(0, pi)`
//! gives the characteristic angles; their sum is an integer multiple
//! `k pi` (the type of the pair) exactly when both planes are special
//! Lagrangian, i.e. both frames have real determinant.
//!
//! For `m = 3` the sign of a transverse intersection is the sign of the
//! 6x6 determinant of the two concatenated oriented real frames against
//! the complex orientation; it is `+1` exactly for pairs of type 1.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float; // float intrinsics on no_std builds

use crate::linalg::{commuting_symmetric_eig, complex_det, real_det};

/// Columns must be orthonormal to this accuracy.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Pairs with a characteristic angle closer than this to 0 or pi are
/// rejected as non-transverse.
pub const TRANSVERSALITY_TOL: f64 = 1e-8;

/// Allowed defect of the angle sum from an integer multiple of pi.
pub const ANGLE_SUM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneError {
    /// The frame columns are not orthonormal to [`UNITARITY_TOL`].
    NotUnitary,
    /// The two frames have different ambient dimensions.
    DimensionMismatch,
    /// Some characteristic angle degenerated to 0 or pi.
    NotTransverse,
    /// The angle sum is not an integer multiple of pi: the pair is not
    /// special Lagrangian for a common calibration.
    NotCalibratedPair,
    /// The operation is only defined in complex dimension three.
    UnsupportedDimension,
    /// A requested phase fell outside [0, pi).
    PhaseOutOfRange,
}

impl fmt::Display for PlaneError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            PlaneError::NotUnitary => "frame columns are not orthonormal",
            PlaneError::DimensionMismatch => "planes live in different dimensions",
            PlaneError::NotTransverse => "planes are not transverse",
            PlaneError::NotCalibratedPair => "angle sum is not an integer multiple of pi",
            PlaneError::UnsupportedDimension => "operation requires complex dimension three",
            PlaneError::PhaseOutOfRange => "phases must lie in [0, pi)",
        };
        write!(f, "{msg}")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PlaneError {}

/// An oriented Lagrangian plane `A * R^m`, stored as a unitary frame
/// (row-major `m x m`, columns are the basis vectors) together with an
/// orientation sign relative to the column order.
#[derive(Debug, Clone, PartialEq)]
pub struct SLPlane {
    m: usize,
    frame: Vec<Complex64>,
    orientation: i8,
}

impl SLPlane {
    pub fn new(m: usize, frame: Vec<Complex64>, orientation: i8) -> Result<Self, PlaneError> {
        assert!(orientation == 1 || orientation == -1);
        assert_eq!(frame.len(), m * m);
        for i in 0..m {
            for j in 0..m {
                let mut dot = Complex64::new(0.0, 0.0);
                for r in 0..m {
                    dot += frame[r * m + i].conj() * frame[r * m + j];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                if (dot - expect).norm() > UNITARITY_TOL {
                    return Err(PlaneError::NotUnitary);
                }
            }
        }
        Ok(SLPlane {
            m,
            frame,
            orientation,
        })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn frame(&self) -> &[Complex64] {
        &self.frame
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    /// The holomorphic volume form evaluated on the frame columns in
    /// stored order (the complex determinant), ignoring orientation.
    pub fn omega_on_frame(&self) -> Complex64 {
        complex_det(self.m, &self.frame)
    }

    /// Same, but with the orientation sign applied, i.e. evaluated on
    /// an oriented basis.
    pub fn omega_oriented(&self) -> Complex64 {
        self.omega_on_frame() * (self.orientation as f64)
    }

    /// Returns the plane re-oriented so the real part of the volume
    /// form is positive on an oriented basis (the orientation induced
    /// by the calibration). If the real part vanishes to relative
    /// accuracy 1e-12 (the plane sits at phase +- pi/2), the sign of
    /// the imaginary part decides instead.
    pub fn oriented_by_calibration(mut self) -> Self {
        let d = self.omega_on_frame();
        let pick = if d.re.abs() > 1e-12 * d.norm() {
            d.re
        } else {
            d.im
        };
        self.orientation = if pick >= 0.0 { 1 } else { -1 };
        self
    }
}

/// Builds the plane spanned by `exp(i phi_j) e_j` with positive
/// orientation; phases must lie in `[0, pi)`.
pub fn plane_from_phases(phases: &[f64]) -> Result<SLPlane, PlaneError> {
    let m = phases.len();
    if phases.iter().any(|&p| !(0.0..core::f64::consts::PI).contains(&p)) {
        return Err(PlaneError::PhaseOutOfRange);
    }
    let mut frame = vec![Complex64::new(0.0, 0.0); m * m];
    for (j, &p) in phases.iter().enumerate() {
        frame[j * m + j] = Complex64::new(p.cos(), p.sin());
    }
    SLPlane::new(m, frame, 1)
}

/// The characteristic angles of a plane pair together with its type.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSpectrum {
    /// Angles in ascending order, each in `(0, pi)`.
    pub angles: Vec<f64>,
    /// The integer `k` with `sum angles = k pi`; lies in `1..m`.
    pub type_k: usize,
}

impl AngleSpectrum {
    pub fn sum(&self) -> f64 {
        self.angles.iter().sum()
    }

    /// Angles of the pair in the opposite order, `(pi - phi_m, ...,
    /// pi - phi_1)`, whose type is `m - k`.
    pub fn reversed(&self) -> AngleSpectrum {
        let mut angles: Vec<f64> = self
            .angles
            .iter()
            .rev()
            .map(|&p| core::f64::consts::PI - p)
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        AngleSpectrum {
            angles,
            type_k: self.angles.len() - self.type_k,
        }
    }
}

/// Characteristic angles of an ordered pair of special Lagrangian
/// planes.
///
/// With frames `A`, `B`, forms `M = A^dagger B` and the symmetric
/// unitary `S = M M^T`, whose eigenvalues are `exp(2 i phi_j)`. The
/// eigenvalue arguments are taken in `(0, 2 pi)` and halved; the result
/// is sorted ascending. Rejects pairs with an angle within
/// [`TRANSVERSALITY_TOL`] of 0 or pi, and pairs whose angle sum is not
/// an integer multiple of pi within [`ANGLE_SUM_TOL`].
pub fn characteristic_angles(p: &SLPlane, q: &SLPlane) -> Result<AngleSpectrum, PlaneError> {
    if p.m != q.m {
        return Err(PlaneError::DimensionMismatch);
    }
    let m = p.m;
    // relative frame M = A^dagger B
    let mut rel = vec![Complex64::new(0.0, 0.0); m * m];
    for i in 0..m {
        for j in 0..m {
            let mut s = Complex64::new(0.0, 0.0);
            for r in 0..m {
                s += p.frame[r * m + i].conj() * q.frame[r * m + j];
            }
            rel[i * m + j] = s;
        }
    }
    // s = M M^T is symmetric unitary; its real and imaginary parts are
    // commuting real symmetric matrices with X^2 + Y^2 = 1
    let mut x = vec![0.0; m * m];
    let mut y = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..m {
                s += rel[i * m + k] * rel[j * m + k];
            }
            x[i * m + j] = s.re;
            y[i * m + j] = s.im;
        }
    }
    // enforce exact symmetry before the eigensolve
    for i in 0..m {
        for j in i + 1..m {
            let xs = 0.5 * (x[i * m + j] + x[j * m + i]);
            x[i * m + j] = xs;
            x[j * m + i] = xs;
            let ys = 0.5 * (y[i * m + j] + y[j * m + i]);
            y[i * m + j] = ys;
            y[j * m + i] = ys;
        }
    }
    let eig = commuting_symmetric_eig(m, &x, &y);
    let mut angles: Vec<f64> = eig
        .iter()
        .map(|&(re, im)| {
            let mut theta = im.atan2(re);
            if theta <= 0.0 {
                theta += 2.0 * core::f64::consts::PI;
            }
            0.5 * theta
        })
        .collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for &phi in &angles {
        if phi < TRANSVERSALITY_TOL || core::f64::consts::PI - phi < TRANSVERSALITY_TOL {
            return Err(PlaneError::NotTransverse);
        }
    }
    let total: f64 = angles.iter().sum();
    let k = (total / core::f64::consts::PI).round();
    if (total - k * core::f64::consts::PI).abs() > ANGLE_SUM_TOL * m as f64 {
        return Err(PlaneError::NotCalibratedPair);
    }
    let type_k = k as usize;
    if type_k == 0 || type_k >= m {
        return Err(PlaneError::NotTransverse);
    }
    Ok(AngleSpectrum { angles, type_k })
}

/// Real 6-vector of a complex 3-vector in coordinates
/// (x1, y1, x2, y2, x3, y3).
fn realify(col: &[Complex64]) -> [f64; 6] {
    let mut out = [0.0; 6];
    for i in 0..3 {
        out[2 * i] = col[i].re;
        out[2 * i + 1] = col[i].im;
    }
    out
}

/// Sign of a transverse intersection of two oriented planes in complex
/// dimension three: the sign of the determinant of the 6x6 matrix whose
/// columns are the oriented real bases of `p` then `q`, measured
/// against the complex orientation. The orientations are used as
/// stored; pair them with [`SLPlane::oriented_by_calibration`] to match
/// the calibrated convention. Equals +1 exactly for pairs of type 1.
pub fn oriented_intersection_sign(p: &SLPlane, q: &SLPlane) -> Result<i8, PlaneError> {
    if p.m != 3 || q.m != 3 {
        return Err(PlaneError::UnsupportedDimension);
    }
    let mut mat = [0.0f64; 36];
    let mut write_col = |dst: usize, col: [f64; 6]| {
        for row in 0..6 {
            mat[row * 6 + dst] = col[row];
        }
    };
    for (slot, plane) in [(0usize, p), (3usize, q)] {
        let mut order = [0usize, 1, 2];
        if plane.orientation < 0 {
            order.swap(0, 1);
        }
        for (offset, &j) in order.iter().enumerate() {
            let col: Vec<Complex64> = (0..3).map(|r| plane.frame[r * 3 + j]).collect();
            write_col(slot + offset, realify(&col));
        }
    }
    let det = real_det(6, &mat);
    if det.abs() < 1e-12 {
        return Err(PlaneError::NotTransverse);
    }
    Ok(if det > 0.0 { 1 } else { -1 })
}
