//! `neck`: forward invariants from neck moduli, the damped-Newton
//! inverse solve from target invariants, and CSV sampling of the
//! embedding along one sphere direction.

use std::path::PathBuf;

use clap::Args;

use slflow_core::lawlor::{
    invariants_from_moduli, moduli_from_invariants, neck_point, sl_residual, NeckError,
    NeckInvariants, NeckModuli,
};

use crate::commands::Failure;
use crate::config::{self, parse_reals, pick, write_text};
use crate::report::{neck_csv, print_json, write_json, NeckReport};

#[derive(Args)]
pub struct NeckArgs {
    /// JSON run configuration supplying defaults for the other flags
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Neck moduli "a1,...,am" (forward mode)
    #[arg(long, conflicts_with_all = ["phi", "area"])]
    pub a: Option<String>,
    /// Target characteristic angles "phi1,...,phim" (inverse mode,
    /// with --area)
    #[arg(long, requires = "area")]
    pub phi: Option<String>,
    /// Target neck scale (inverse mode, with --phi)
    #[arg(long, requires = "phi")]
    pub area: Option<f64>,
    /// Sample the embedding to this CSV file
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Number of y samples for --csv
    #[arg(long, default_value_t = 41)]
    pub samples: usize,
    /// Samples cover y in [-y-max, y-max]
    #[arg(long, default_value_t = 3.0)]
    pub y_max: f64,
    /// Sphere direction "x1,...,xm" for --csv (normalized; default
    /// first axis)
    #[arg(long, allow_hyphen_values = true)]
    pub direction: Option<String>,
    /// File copy of the JSON report (also printed to stdout)
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

fn neck_failure(e: NeckError) -> Failure {
    match e {
        NeckError::NoConvergence => {
            Failure::Numeric("inverse solve did not converge".into())
        }
        NeckError::Quadrature(q) => Failure::Numeric(format!("quadrature failed: {q}")),
        other => Failure::Input(format!("{other}")),
    }
}

pub fn run(args: NeckArgs) -> Result<(), Failure> {
    let cfg = config::load(args.config.as_deref(), "neck")?;
    let mut report;
    let moduli;
    if let (Some(phi_s), Some(area)) = (&args.phi, args.area) {
        let target = NeckInvariants {
            phi: parse_reals(phi_s, "phi")?,
            area,
        };
        moduli = moduli_from_invariants(&target).map_err(neck_failure)?;
        let achieved = invariants_from_moduli(&moduli).map_err(neck_failure)?;
        let mut err = (achieved.area - target.area).abs() / target.area.abs();
        for (got, want) in achieved.phi.iter().zip(target.phi.iter()) {
            err = err.max((got - want).abs());
        }
        report = NeckReport {
            moduli: moduli.values().to_vec(),
            angle_sum: achieved.phi.iter().sum(),
            angles: achieved.phi,
            area: achieved.area,
            target_angles: Some(target.phi),
            target_area: Some(target.area),
            round_trip_error: Some(err),
            max_symplectic_residual: None,
            max_volume_residual: None,
            csv: None,
        };
    } else {
        let a = match &args.a {
            Some(s) => parse_reals(s, "a")?,
            None => pick(None, cfg.neck_moduli.clone(), vec![1.0, 1.0, 1.0]),
        };
        moduli = NeckModuli::new(a).map_err(neck_failure)?;
        let inv = invariants_from_moduli(&moduli).map_err(neck_failure)?;
        report = NeckReport {
            moduli: moduli.values().to_vec(),
            angle_sum: inv.phi.iter().sum(),
            angles: inv.phi,
            area: inv.area,
            target_angles: None,
            target_area: None,
            round_trip_error: None,
            max_symplectic_residual: None,
            max_volume_residual: None,
            csv: None,
        };
    }

    let csv_path = args.csv.or(cfg.csv_out);
    if let Some(path) = &csv_path {
        let m = moduli.dim();
        let mut x = match &args.direction {
            Some(s) => parse_reals(s, "direction")?,
            None => {
                let mut e1 = vec![0.0; m];
                e1[0] = 1.0;
                e1
            }
        };
        if x.len() != m {
            return Err(Failure::Input(format!(
                "direction needs {m} components, got {}",
                x.len()
            )));
        }
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Failure::Input("direction must be nonzero".into()));
        }
        for v in x.iter_mut() {
            *v /= norm;
        }
        if args.samples < 2 || !args.y_max.is_finite() || args.y_max <= 0.0 {
            return Err(Failure::Input("need at least 2 samples and y-max > 0".into()));
        }
        let mut rows = Vec::new();
        let mut sympl: f64 = 0.0;
        let mut vol: f64 = 0.0;
        for i in 0..args.samples {
            let y = -args.y_max
                + 2.0 * args.y_max * i as f64 / (args.samples - 1) as f64;
            let z = neck_point(&moduli, y, &x).map_err(neck_failure)?;
            for (k, zk) in z.iter().enumerate() {
                rows.push((y, k, *zk));
            }
            let (s, v) = sl_residual(&moduli, y, &x).map_err(neck_failure)?;
            sympl = sympl.max(s);
            vol = vol.max(v);
        }
        write_text(path, &neck_csv(&rows))?;
        report.max_symplectic_residual = Some(sympl);
        report.max_volume_residual = Some(vol);
        report.csv = Some(path.display().to_string());
    }

    print_json(&report);
    if let Some(path) = args.json_out.or(cfg.json_out) {
        write_json(&path, &report)?;
    }
    Ok(())
}
