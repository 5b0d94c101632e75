//! Attractor flow of a homology class on the product moduli space.
//!
//! The flow is the gradient flow of `log |Z|^2` in the flow parameter
//! `u = log mu`: `d tau_a / du = g^{a abar} conj(d_a log |Z|^2)`. Along
//! any trajectory `|Z|` is non-decreasing and the imaginary parts
//! `Im(e^{-i alpha(mu)} Z_gamma(mu))` of all central charges evolve
//! linearly in the pair `(mu, mu * tau(mu))`, where
//! `tau(mu) = -int_{mu0}^{mu} dmu' / (|Z| mu'^2)`, the quantity the
//! integrator accumulates alongside the moduli as extra state.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float; // float intrinsics on no_std builds

use crate::homology::{HomologyClass, BASIS_RANK};
use crate::moduli::{
    central_charge, log_z2_derivs, omega_periods, phase, wp_metric, ModuliError, ModuliPoint,
    Z_FLOOR,
};

/// A position of the flow: scale parameter and moduli point.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub mu: f64,
    pub point: ModuliPoint,
}

/// One recorded trajectory node.
#[derive(Debug, Clone)]
pub struct FlowSample {
    pub mu: f64,
    pub point: ModuliPoint,
    /// Central charge of the flowing class at this node.
    pub z: Complex64,
    /// Its phase in (-pi, pi].
    pub alpha: f64,
    /// Accumulated `tau(mu)`; zero at the anchor `mu0`.
    pub tau_of_mu: f64,
}

/// Why an integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowStatus {
    /// Reached the requested endpoint.
    Completed,
    /// `|Z|` fell below the floor tolerance; conifold point or
    /// attractor point is not decided here.
    ZeroCentralCharge,
    /// Some `Im tau_a` left the upper half plane.
    LeftModuliChart,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub class: HomologyClass,
    pub vol_y: f64,
    pub mu0: f64,
    /// Nodes in integration order; `mu` is strictly monotone.
    pub samples: Vec<FlowSample>,
    pub status: FlowStatus,
}

impl Trajectory {
    pub fn start(&self) -> &FlowSample {
        &self.samples[0]
    }

    pub fn end(&self) -> &FlowSample {
        self.samples.last().expect("trajectory has samples")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowError {
    /// The step in log mu must be positive.
    BadStep,
    /// mu values must be positive.
    BadScale,
    /// The starting point is degenerate for this class.
    Degenerate(ModuliError),
    /// Split classes do not sum to the parent class.
    PartsDoNotSum,
    /// The phases of the split classes do not agree at the split point.
    NotOnWall,
}

impl fmt::Display for FlowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowError::BadStep => write!(f, "step in log mu must be positive"),
            FlowError::BadScale => write!(f, "mu must be positive"),
            FlowError::Degenerate(e) => write!(f, "degenerate start: {e}"),
            FlowError::PartsDoNotSum => write!(f, "split classes do not sum to the parent"),
            FlowError::NotOnWall => write!(f, "phases differ at the split point"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FlowError {}

/// Right-hand side of the flow equation,
/// `d tau_a / d log mu = g^{a abar} conj(d_a log |Z|^2)`.
///
/// Independent of the volume normalization (which shifts `log |Z|^2`
/// by a constant); vanishes exactly where all covariant derivatives of
/// `Z` do.
pub fn flow_rhs(p: &ModuliPoint, class: &HomologyClass) -> Result<[Complex64; 3], ModuliError> {
    let d = log_z2_derivs(p, class)?;
    let g = wp_metric(p);
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for a in 0..3 {
        out[a] = d[a].conj() / g[a];
    }
    Ok(out)
}

/// Combined derivative of the moduli and of the `tau(mu)` state at
/// `u = log mu`.
fn stage(
    tau: &[Complex64; 3],
    u: f64,
    class: &HomologyClass,
    vol_y: f64,
) -> Result<([Complex64; 3], f64), FlowStatus> {
    let point = match ModuliPoint::new(*tau) {
        Ok(p) => p,
        Err(_) => return Err(FlowStatus::LeftModuliChart),
    };
    let rhs = match flow_rhs(&point, class) {
        Ok(r) => r,
        Err(ModuliError::ZeroCentralCharge) => return Err(FlowStatus::ZeroCentralCharge),
        Err(_) => return Err(FlowStatus::LeftModuliChart),
    };
    let z = central_charge(&point, class, vol_y);
    let dtau_du = -1.0 / (z.norm() * u.exp());
    Ok((rhs, dtau_du))
}

fn rk4_step(
    tau: &mut [Complex64; 3],
    t_acc: &mut f64,
    u: f64,
    h: f64,
    class: &HomologyClass,
    vol_y: f64,
) -> Result<(), FlowStatus> {
    let y0 = *tau;
    let (k1, q1) = stage(&y0, u, class, vol_y)?;
    let mut y = y0;
    for a in 0..3 {
        y[a] = y0[a] + 0.5 * h * k1[a];
    }
    let (k2, q2) = stage(&y, u + 0.5 * h, class, vol_y)?;
    for a in 0..3 {
        y[a] = y0[a] + 0.5 * h * k2[a];
    }
    let (k3, q3) = stage(&y, u + 0.5 * h, class, vol_y)?;
    for a in 0..3 {
        y[a] = y0[a] + h * k3[a];
    }
    let (k4, q4) = stage(&y, u + h, class, vol_y)?;
    for a in 0..3 {
        tau[a] = y0[a] + (h / 6.0) * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    }
    *t_acc += (h / 6.0) * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
    Ok(())
}

fn record(
    samples: &mut Vec<FlowSample>,
    tau: &[Complex64; 3],
    mu: f64,
    t_acc: f64,
    class: &HomologyClass,
    vol_y: f64,
) -> Result<(), FlowStatus> {
    let point = match ModuliPoint::new(*tau) {
        Ok(p) => p,
        Err(_) => return Err(FlowStatus::LeftModuliChart),
    };
    let z = central_charge(&point, class, vol_y);
    let alpha = match phase(z) {
        Ok(a) => a,
        Err(_) => return Err(FlowStatus::ZeroCentralCharge),
    };
    samples.push(FlowSample {
        mu,
        point,
        z,
        alpha,
        tau_of_mu: t_acc,
    });
    Ok(())
}

/// Integrates the flow of `class` from `start` to `mu_end` with a
/// fixed step in `log mu` (classical 4th-order stages, final partial
/// step), accumulating `tau(mu)` as coupled state. The trajectory ends
/// early with a non-`Completed` status if the central charge collapses
/// or the moduli leave the chart.
pub fn integrate(
    start: &FlowState,
    class: &HomologyClass,
    vol_y: f64,
    mu_end: f64,
    step_log_mu: f64,
) -> Result<Trajectory, FlowError> {
    if !(step_log_mu > 0.0) {
        return Err(FlowError::BadStep);
    }
    if !(start.mu > 0.0) || !(mu_end > 0.0) {
        return Err(FlowError::BadScale);
    }
    if crate::moduli::period_sum(&start.point, class).norm() < Z_FLOOR {
        return Err(FlowError::Degenerate(ModuliError::ZeroCentralCharge));
    }

    let u0 = start.mu.ln();
    let u1 = mu_end.ln();
    let span = u1 - u0;
    let dir = if span >= 0.0 { 1.0 } else { -1.0 };

    let mut tau = start.point.tau;
    let mut t_acc = 0.0;
    let mut samples = Vec::new();
    let mut status = FlowStatus::Completed;

    // the start node always records cleanly or the input was degenerate
    record(&mut samples, &tau, start.mu, t_acc, class, vol_y)
        .map_err(|_| FlowError::Degenerate(ModuliError::ZeroCentralCharge))?;

    let n_full = (span.abs() / step_log_mu).floor() as usize;
    let mut u = u0;
    for k in 0..n_full {
        if let Err(stop) = rk4_step(&mut tau, &mut t_acc, u, dir * step_log_mu, class, vol_y) {
            status = stop;
            break;
        }
        u = u0 + dir * step_log_mu * (k + 1) as f64;
        if let Err(stop) = record(&mut samples, &tau, u.exp(), t_acc, class, vol_y) {
            status = stop;
            break;
        }
    }
    if status == FlowStatus::Completed {
        let rest = span.abs() - n_full as f64 * step_log_mu;
        if rest > 1e-13 * (1.0 + span.abs()) {
            match rk4_step(&mut tau, &mut t_acc, u, dir * rest, class, vol_y) {
                Ok(()) => {
                    if let Err(stop) = record(&mut samples, &tau, mu_end, t_acc, class, vol_y) {
                        status = stop;
                    }
                }
                Err(stop) => status = stop,
            }
        }
    }

    Ok(Trajectory {
        class: class.clone(),
        vol_y,
        mu0: start.mu,
        samples,
        status,
    })
}

/// Per-sample deviation (largest over the basis classes) of
/// `Im(e^{-i alpha(mu)} Z_gamma(mu))` from its predicted linear
/// evolution
/// `(-4 vol_y mu tau(mu)) <gamma, class> + (mu/mu0) Im(e^{-i alpha(mu0)} Z_gamma(mu0))`.
///
/// The slope pairs the probe class on the left of the intersection
/// form; with the flowing class on the left instead, every term flips
/// sign and the law fails by twice the neck volume.
pub fn linearity_residuals(traj: &Trajectory) -> Vec<f64> {
    let first = traj.start();
    let rot0 = Complex64::from_polar(1.0, -first.alpha);
    let per0 = omega_periods(&first.point, traj.vol_y);
    let mut base = [0.0; BASIS_RANK];
    for b in 0..BASIS_RANK {
        base[b] = (rot0 * per0[b]).im;
    }
    // <basis_b, class> = -<class, basis_b>
    let pairing = crate::homology::pairing_vector(&traj.class);

    let mut out = Vec::with_capacity(traj.samples.len());
    for s in &traj.samples {
        let rot = Complex64::from_polar(1.0, -s.alpha);
        let per = omega_periods(&s.point, traj.vol_y);
        let necks = -4.0 * traj.vol_y * s.mu * s.tau_of_mu;
        let carry = s.mu / traj.mu0;
        let mut worst: f64 = 0.0;
        for b in 0..BASIS_RANK {
            let actual = (rot * per[b]).im;
            let predicted = necks * (-pairing[b]) as f64 + carry * base[b];
            worst = worst.max((actual - predicted).abs());
        }
        out.push(worst);
    }
    out
}

/// Largest [`linearity_residuals`] entry over the whole trajectory.
pub fn verify_linearity(traj: &Trajectory) -> f64 {
    linearity_residuals(traj)
        .into_iter()
        .fold(0.0, f64::max)
}

/// Signed phase difference `alpha_{g1} - alpha_{g2}` wrapped to
/// `(-pi, pi]`; vanishes exactly on the marginal stability wall of the
/// pair. Volume normalization drops out of phases.
pub fn wall_phase_gap(
    p: &ModuliPoint,
    g1: &HomologyClass,
    g2: &HomologyClass,
) -> Result<f64, ModuliError> {
    let a1 = phase(crate::moduli::period_sum(p, g1))?;
    let a2 = phase(crate::moduli::period_sum(p, g2))?;
    let mut d = a1 - a2;
    while d <= -core::f64::consts::PI {
        d += 2.0 * core::f64::consts::PI;
    }
    while d > core::f64::consts::PI {
        d -= 2.0 * core::f64::consts::PI;
    }
    Ok(d)
}

/// Phase agreement required of split classes at a wall point.
pub const WALL_TOL: f64 = 1e-8;

/// One node of a split-flow tree: the flow of `class` away from a
/// wall, with child flows of the constituent classes on the other
/// side.
#[derive(Debug, Clone)]
pub struct SplitFlowNode {
    pub class: HomologyClass,
    pub trajectory: Trajectory,
    pub children: Vec<SplitFlowNode>,
}

/// Builds a one-level split-flow tree at a wall point: the parent
/// class flows on `[mu0, mu0 + delta]` and each part flows backwards
/// on `[mu0 - delta, mu0]`, all anchored at `wall`. The parts must sum
/// to `class` and share its phase at the wall within [`WALL_TOL`].
/// A single part equal to the parent class is a plain trajectory, not
/// a split.
pub fn split_flow(
    wall: &FlowState,
    class: &HomologyClass,
    parts: &[HomologyClass],
    vol_y: f64,
    delta: f64,
    step_log_mu: f64,
) -> Result<SplitFlowNode, FlowError> {
    if !(delta > 0.0) || delta >= wall.mu {
        return Err(FlowError::BadScale);
    }
    let mut total = HomologyClass::ZERO;
    for part in parts {
        total = total + part.clone();
    }
    if total != *class {
        return Err(FlowError::PartsDoNotSum);
    }
    for part in parts {
        let gap = wall_phase_gap(&wall.point, class, part).map_err(FlowError::Degenerate)?;
        if gap.abs() > WALL_TOL {
            return Err(FlowError::NotOnWall);
        }
    }

    let trajectory = integrate(wall, class, vol_y, wall.mu + delta, step_log_mu)?;
    let mut children = Vec::new();
    if !(parts.len() == 1 && parts[0] == *class) {
        for part in parts {
            let child = integrate(wall, part, vol_y, wall.mu - delta, step_log_mu)?;
            children.push(SplitFlowNode {
                class: part.clone(),
                trajectory: child,
                children: vec![],
            });
        }
    }
    Ok(SplitFlowNode {
        class: class.clone(),
        trajectory,
        children,
    })
}
