//! `flow`: integrate the attractor flow of one class and verify the
//! closed-form linear evolution of the phase-rotated periods.

use std::path::PathBuf;

use clap::Args;

use slflow_core::flow::{integrate, linearity_residuals, FlowError, FlowState, FlowStatus};
use slflow_core::necklace;

use crate::commands::Failure;
use crate::config::{self, finite, parse_class, parse_point, pick, point_to_pairs, write_text};
use crate::report::{print_json, trajectory_csv, write_json, FlowReport};

#[derive(Args)]
pub struct FlowArgs {
    /// JSON run configuration supplying defaults for the other flags
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Start point "re1,im1,re2,im2,re3,im3"; default: a generic
    /// necklace wall point
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Flowing class: 20 integers or a named class; default
    /// necklace-total
    #[arg(long, allow_hyphen_values = true)]
    pub class: Option<String>,
    #[arg(long)]
    pub vol_y: Option<f64>,
    /// Anchor scale
    #[arg(long)]
    pub mu0: Option<f64>,
    #[arg(long)]
    pub mu_end: Option<f64>,
    /// Step in log mu
    #[arg(long)]
    pub step: Option<f64>,
    /// Pass bound on the linear-evolution residual
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Trajectory CSV output path
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// File copy of the JSON report (also printed to stdout)
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

pub fn flow_failure(e: FlowError) -> Failure {
    match e {
        FlowError::BadStep | FlowError::BadScale | FlowError::PartsDoNotSum
        | FlowError::NotOnWall => Failure::Input(format!("{e}")),
        FlowError::Degenerate(inner) => Failure::Numeric(format!("{inner}")),
    }
}

pub fn run(args: FlowArgs) -> Result<(), Failure> {
    let cfg = config::load(args.config.as_deref(), "flow")?;
    let point = match args.point {
        Some(s) => parse_point(&s)?,
        None => match cfg.point {
            Some(pairs) => config::point_from_pairs(pairs)?,
            None => necklace::generic_wall_point(1.3)
                .expect("built-in wall point exists"),
        },
    };
    let class = match args.class.as_deref() {
        Some(s) => parse_class(s)?,
        None => match &cfg.class {
            Some(v) => config::class_from_coeffs(v)?,
            None => necklace::total_class(),
        },
    };
    let vol_y = finite(pick(args.vol_y, cfg.vol_y, 1.0), "vol_y")?;
    let mu0 = finite(pick(args.mu0, cfg.mu0, 1.0), "mu0")?;
    let mu_end = finite(pick(args.mu_end, cfg.mu_end, 2.0), "mu_end")?;
    let step = finite(pick(args.step, cfg.step, 1e-3), "step")?;

    let start = FlowState { mu: mu0, point };
    let traj = integrate(&start, &class, vol_y, mu_end, step).map_err(flow_failure)?;
    let residuals = linearity_residuals(&traj);
    let max_residual = residuals.iter().fold(0.0f64, |a, &b| a.max(b));

    let csv_path = args.csv.or(cfg.csv_out);
    if let Some(path) = &csv_path {
        write_text(path, &trajectory_csv(&traj, &residuals))?;
    }
    let report = FlowReport {
        class: class.coeffs.to_vec(),
        vol_y,
        mu0,
        mu_end,
        step,
        status: crate::report::status_name(&traj),
        samples: traj.samples.len(),
        end_point: point_to_pairs(&traj.end().point),
        max_residual,
        tolerance: args.tol,
        csv: csv_path.map(|p| p.display().to_string()),
    };
    print_json(&report);
    if let Some(path) = args.json_out.or(cfg.json_out) {
        write_json(&path, &report)?;
    }

    if traj.status != FlowStatus::Completed {
        return Err(Failure::Numeric(format!(
            "flow terminated early with status {}",
            report.status
        )));
    }
    if max_residual > args.tol {
        return Err(Failure::Criterion(format!(
            "linear-evolution residual {max_residual:e} exceeds {:e}",
            args.tol
        )));
    }
    Ok(())
}
