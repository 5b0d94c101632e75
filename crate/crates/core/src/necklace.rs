//! The necklace configuration: three special Lagrangian three-tori in
//! the product of three elliptic curves, meeting pairwise in single
//! positive transverse points so their dual graph is a directed
//! 3-cycle.
//!
//! The three components are the product tori built from the cycles
//! `a`, `-b` and `b - a` in each elliptic-curve factor. Their central
//! charges share a common phase exactly where `tau1 tau2 tau3` is a
//! negative real and `(tau1-1)(tau2-1)(tau3-1)` a positive real; that
//! locus is the marginal stability wall of the configuration.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float; // float intrinsics on no_std builds

use alloc::string::String;

use crate::homology::HomologyClass;
use crate::moduli::ModuliPoint;
use crate::slplane::SLPlane;
use crate::smoothing::{IntersectionPoint, SLComponent, SLConfiguration};

/// Homology classes of the three components, in necklace order.
pub fn component_classes() -> [HomologyClass; 3] {
    let l1 = HomologyClass::one_cycle_product([(1, 0), (1, 0), (1, 0)]);
    let l2 = -HomologyClass::one_cycle_product([(0, 1), (0, 1), (0, 1)]);
    let l3 = HomologyClass::one_cycle_product([(-1, 1), (-1, 1), (-1, 1)]);
    [l1, l2, l3]
}

/// Sum of the three component classes.
pub fn total_class() -> HomologyClass {
    let [l1, l2, l3] = component_classes();
    l1 + l2 + l3
}

/// The two products whose reality pins the wall: the classes share a
/// phase iff the first is a negative real and the second a positive
/// real.
pub fn wall_products(p: &ModuliPoint) -> (Complex64, Complex64) {
    let prod = p.tau[0] * p.tau[1] * p.tau[2];
    let one = Complex64::new(1.0, 0.0);
    let shifted = (p.tau[0] - one) * (p.tau[1] - one) * (p.tau[2] - one);
    (prod, shifted)
}

/// Whether the moduli point satisfies both wall constraints within
/// `tol` on the imaginary parts (signs checked strictly).
pub fn on_wall(p: &ModuliPoint, tol: f64) -> bool {
    let (prod, shifted) = wall_products(p);
    prod.im.abs() <= tol * prod.norm()
        && prod.re < 0.0
        && shifted.im.abs() <= tol * shifted.norm()
        && shifted.re > 0.0
}

/// Moduli point with all three periods on the unit circle at angle
/// pi/3; every component class has the same central charge there, and
/// the total class has a critical one, so its flow is constant.
pub fn symmetric_wall_point() -> ModuliPoint {
    let w = Complex64::from_polar(1.0, core::f64::consts::FRAC_PI_3);
    ModuliPoint::new([w, w, w]).unwrap()
}

/// Point on the equal-angle slice `tau_a = r_a e^{i pi/3}`; the first
/// wall constraint holds on the whole slice.
pub fn equal_angle_point(r: [f64; 3]) -> Option<ModuliPoint> {
    if r.iter().any(|&x| !(x > 0.0)) {
        return None;
    }
    let mut tau = [Complex64::new(0.0, 0.0); 3];
    for a in 0..3 {
        tau[a] = Complex64::from_polar(r[a], core::f64::consts::FRAC_PI_3);
    }
    ModuliPoint::new(tau).ok()
}

/// A wall point without the symmetric point's critical degeneracy:
/// on the equal-angle slice with `r3 = 1` and the given `r1`, the
/// radius `r2` is solved by bisection so the second wall constraint
/// holds. Valid for `r1` in roughly `(1, 2)`; returns `None` if the
/// bracket fails or the solved point misses the wall.
pub fn generic_wall_point(r1: f64) -> Option<ModuliPoint> {
    let shifted_im = |r2: f64| -> f64 {
        let p = equal_angle_point([r1, r2, 1.0]).expect("slice point is valid");
        wall_products(&p).1.im
    };
    let mut lo = 0.05;
    let mut hi = 1.0;
    let flo = shifted_im(lo);
    let fhi = shifted_im(hi);
    if flo == 0.0 {
        hi = lo;
    } else if fhi != 0.0 && flo.signum() == fhi.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = shifted_im(mid);
        if fm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if fm.signum() == shifted_im(lo).signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    let point = equal_angle_point([r1, 0.5 * (lo + hi), 1.0])?;
    if on_wall(&point, 1e-12) {
        Some(point)
    } else {
        None
    }
}

/// Diagonal unitary frames of the three component tori at a moduli
/// point, oriented to represent [`component_classes`] (the middle
/// class carries the reversed orientation).
pub fn component_planes(p: &ModuliPoint) -> [SLPlane; 3] {
    let mut frames = [
        [Complex64::new(0.0, 0.0); 9],
        [Complex64::new(0.0, 0.0); 9],
        [Complex64::new(0.0, 0.0); 9],
    ];
    for a in 0..3 {
        let tau = p.tau[a];
        let one = Complex64::new(1.0, 0.0);
        frames[0][a * 3 + a] = one;
        frames[1][a * 3 + a] = tau / tau.norm();
        frames[2][a * 3 + a] = (tau - one) / (tau - one).norm();
    }
    let orientations = [1, -1, 1];
    core::array::from_fn(|j| {
        SLPlane::new(3, frames[j].to_vec(), orientations[j]).expect("diagonal frame is unitary")
    })
}

/// The necklace as a smoothing configuration: three components of
/// first Betti number 3 with intersection points forming the directed
/// cycle `L1 -> L2 -> L3 -> L1`.
pub fn configuration() -> SLConfiguration {
    let classes = component_classes();
    let labels = ["L1", "L2", "L3"];
    SLConfiguration {
        components: classes
            .iter()
            .zip(labels)
            .map(|(class, label)| SLComponent {
                label: String::from(label),
                class: class.clone(),
                b1: 3,
            })
            .collect(),
        intersections: alloc::vec![
            IntersectionPoint { tail: 0, head: 1 },
            IntersectionPoint { tail: 1, head: 2 },
            IntersectionPoint { tail: 2, head: 0 },
        ],
    }
}
