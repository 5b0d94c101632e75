//! Exponent windows for the perturbation step of the gluing
//! construction. Smoothing a conical special Lagrangian by inserting
//! necks succeeds when a decay exponent `kappa > 1` satisfies a system
//! of linear inequalities in the gluing data: the cone rates `mu_i` at
//! the intersection points, the neck rates `lambda_i`, the interpolation
//! parameter `tau`, and the ambient dimension `m`. This module
//! evaluates that system, both in raw form and in the reduced
//! delta-parametrization, and searches for rates realizing a requested
//! exponent.

use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float; // float intrinsics on no_std builds

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KappaError {
    /// The ambient dimension must be at least 3.
    BadDimension,
    /// Cone rates must lie in (2, 3), with one neck rate each.
    RateOutOfRange,
    /// `tau` must exceed both `m/(m+1)` and every
    /// `(m+2)/(2 mu_i + m - 2)`, and stay below 1.
    TauOutsideWindow,
}

impl fmt::Display for KappaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KappaError::BadDimension => write!(f, "ambient dimension must be at least 3"),
            KappaError::RateOutOfRange => {
                write!(f, "cone rates must lie in (2, 3), one neck rate per cone rate")
            }
            KappaError::TauOutsideWindow => {
                write!(f, "tau must lie strictly between the rate threshold and 1")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for KappaError {}

/// Rates entering the gluing inequality system.
#[derive(Debug, Clone, PartialEq)]
pub struct GluingRates {
    m: usize,
    tau: f64,
    mu: Vec<f64>,
    lambda: Vec<f64>,
}

/// Least admissible `tau` for dimension `m` and cone rates `mu`:
/// `max{m/(m+1), max_i (m+2)/(2 mu_i + m - 2)}`.
pub fn tau_threshold(m: usize, mu: &[f64]) -> f64 {
    let mf = m as f64;
    let mut lower = mf / (mf + 1.0);
    for &mu_i in mu {
        lower = lower.max((mf + 2.0) / (2.0 * mu_i + mf - 2.0));
    }
    lower
}

impl GluingRates {
    /// Validates the full rate tuple. The neck rate list is exposed for
    /// generality; [`GluingRates::standard`] fixes it to the value the
    /// interpolating necks actually have.
    pub fn new(m: usize, tau: f64, mu: Vec<f64>, lambda: Vec<f64>) -> Result<Self, KappaError> {
        if m < 3 {
            return Err(KappaError::BadDimension);
        }
        if mu.is_empty()
            || mu.len() != lambda.len()
            || mu.iter().any(|&x| !(2.0..3.0).contains(&x) || x <= 2.0)
            || lambda.iter().any(|&x| !x.is_finite())
        {
            return Err(KappaError::RateOutOfRange);
        }
        if !(tau.is_finite() && tau > tau_threshold(m, &mu) && tau < 1.0) {
            return Err(KappaError::TauOutsideWindow);
        }
        Ok(GluingRates { m, tau, mu, lambda })
    }

    /// Rates with every neck rate fixed to `2 - m`.
    pub fn standard(m: usize, tau: f64, mu: Vec<f64>) -> Result<Self, KappaError> {
        let lambda = alloc::vec![2.0 - m as f64; mu.len()];
        GluingRates::new(m, tau, mu, lambda)
    }

    /// Standard rates in the shifted variables `tau = 1 - delta0`,
    /// `mu_i = 2 + delta_i`.
    pub fn from_deltas(m: usize, delta0: f64, deltas: &[f64]) -> Result<Self, KappaError> {
        let mu = deltas.iter().map(|d| 2.0 + d).collect();
        GluingRates::standard(m, 1.0 - delta0, mu)
    }

    pub fn dimension(&self) -> usize {
        self.m
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn cone_rates(&self) -> &[f64] {
        &self.mu
    }

    pub fn neck_rates(&self) -> &[f64] {
        &self.lambda
    }
}

/// The upper bounds on the exponent implied by the inequality system:
/// for each intersection point, three bounds sourced from the cone
/// side (`tau (mu_i - 2)` terms) and three from the neck side
/// (`(1 - tau)(2 - lambda_i)` terms), then one global bound
/// `(m+1) tau - m + 1`. The window is the minimum of them all.
pub fn exponent_bounds(r: &GluingRates) -> Vec<f64> {
    let m = r.m as f64;
    let tau = r.tau;
    let mut out = Vec::with_capacity(6 * r.mu.len() + 1);
    for (&mu_i, &lambda_i) in r.mu.iter().zip(r.lambda.iter()) {
        let cone = tau * (mu_i - 2.0);
        let neck = (1.0 - tau) * (2.0 - lambda_i);
        out.push(tau * (1.0 + m / 2.0) + cone - m / 2.0);
        out.push(1.0 + cone);
        out.push(1.5 - tau / 2.0 + cone);
        out.push(tau * (1.0 + m / 2.0) + neck - m / 2.0);
        out.push(1.0 + neck);
        out.push(1.5 - tau / 2.0 + neck);
    }
    out.push((m + 1.0) * tau - m + 1.0);
    out
}

/// Largest admissible exponent, as the half-open window `(1, kappa_max]`
/// when nonempty: the minimum of [`exponent_bounds`] if it exceeds 1,
/// otherwise `None`.
pub fn kappa_window(r: &GluingRates) -> Option<f64> {
    let kappa_max = exponent_bounds(r)
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    (kappa_max > 1.0).then_some(kappa_max)
}

/// The same window computed in the shifted variables, for standard neck
/// rates: `1 + min{min_i ((1-delta0) delta_i - delta0 (1+m/2)),
/// delta0 (m/2-1), 1 - (m+1) delta0}`. Requires
/// `0 < delta0 < 1/(m+1)`, `delta_i in (0, 1)` and each
/// `delta_i > (1+m/2) delta0 / (1-delta0)`; under those constraints the
/// window is never empty, and it agrees with [`kappa_window`] on the
/// corresponding [`GluingRates::from_deltas`].
pub fn kappa_window_delta(m: usize, delta0: f64, deltas: &[f64]) -> Option<f64> {
    if m < 3 || deltas.is_empty() {
        return None;
    }
    let mf = m as f64;
    if !(delta0 > 0.0 && delta0 < 1.0 / (mf + 1.0)) {
        return None;
    }
    let floor = (1.0 + mf / 2.0) * delta0 / (1.0 - delta0);
    let mut slack = f64::INFINITY;
    for &d in deltas {
        if !(d > floor && d < 1.0) {
            return None;
        }
        slack = slack.min((1.0 - delta0) * d - delta0 * (1.0 + mf / 2.0));
    }
    slack = slack
        .min(delta0 * (mf / 2.0 - 1.0))
        .min(1.0 - (mf + 1.0) * delta0);
    (slack > 0.0).then_some(1.0 + slack)
}

const SEARCH_GRID: usize = 64;
const REFINE_ROUNDS: usize = 40;

/// Slack factor applied to the least admissible `delta_i` during the
/// rate search.
const DELTA_SLACK: f64 = 1.1;

fn search_candidate(m: usize, delta0: f64) -> Option<(GluingRates, f64)> {
    let delta_i = DELTA_SLACK * (1.0 + m as f64 / 2.0) * delta0 / (1.0 - delta0);
    if delta_i >= 1.0 {
        return None;
    }
    let rates = GluingRates::from_deltas(m, delta0, &[delta_i]).ok()?;
    let kappa_max = kappa_window(&rates)?;
    Some((rates, kappa_max))
}

/// Searches the shifted-variable family for rates whose window contains
/// `kappa_target`: a log-spaced grid of `delta0` values in
/// `(0, 1/(m+1))` with `delta_i` set just above its least admissible
/// value, then bisection refinement around the best grid point. Returns
/// `None` when the target is not a valid exponent (`<= 1`) or exceeds
/// the supremum the family reaches.
pub fn find_rates_for_kappa(m: usize, kappa_target: f64) -> Option<GluingRates> {
    if m < 3 || !(kappa_target > 1.0) || !kappa_target.is_finite() {
        return None;
    }
    let hi = 1.0 / (m as f64 + 1.0);
    let (ln_lo, ln_hi) = ((1e-9 * hi).ln(), (hi * (1.0 - 1e-9)).ln());
    let mut best: Option<(f64, f64)> = None; // (delta0, kappa_max)
    for j in 0..SEARCH_GRID {
        let frac = j as f64 / (SEARCH_GRID - 1) as f64;
        let delta0 = (ln_lo + frac * (ln_hi - ln_lo)).exp();
        if let Some((rates, kappa_max)) = search_candidate(m, delta0) {
            if kappa_max >= kappa_target {
                return Some(rates);
            }
            if best.map_or(true, |(_, k)| kappa_max > k) {
                best = Some((delta0, kappa_max));
            }
        }
    }
    // the window is concave piecewise-linear in delta0 along this
    // slice, so shrinking a bracket around the best grid point
    // converges to the supremum
    let (mut center, mut best_kappa) = best?;
    let mut radius = center * ((ln_hi - ln_lo) / (SEARCH_GRID - 1) as f64).exp_m1();
    for _ in 0..REFINE_ROUNDS {
        for delta0 in [center - radius, center - radius / 2.0, center + radius / 2.0, center + radius] {
            if delta0 <= 0.0 || delta0 >= hi {
                continue;
            }
            if let Some((rates, kappa_max)) = search_candidate(m, delta0) {
                if kappa_max >= kappa_target {
                    return Some(rates);
                }
                if kappa_max > best_kappa {
                    best_kappa = kappa_max;
                    center = delta0;
                }
            }
        }
        radius /= 2.0;
    }
    None
}
