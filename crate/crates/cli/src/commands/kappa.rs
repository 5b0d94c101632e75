//! `kappa`: admissible exponent windows. With rates given, evaluates
//! the window; with a target, searches the shifted-variable family for
//! rates realizing it.

use std::path::PathBuf;

use clap::Args;

use slflow_core::kappa::{
    exponent_bounds, find_rates_for_kappa, kappa_window, GluingRates,
};

use crate::commands::Failure;
use crate::config::parse_reals;
use crate::report::{print_json, write_json, KappaReport};

#[derive(Args)]
pub struct KappaArgs {
    /// Ambient dimension
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    /// Search for rates whose window contains this exponent
    #[arg(long, conflicts_with_all = ["tau", "mu", "lambda"])]
    pub kappa_target: Option<f64>,
    /// Interpolation parameter (window mode, with --mu)
    #[arg(long, requires = "mu")]
    pub tau: Option<f64>,
    /// Cone rates "mu1,...,mun" in (2,3) (window mode, with --tau)
    #[arg(long, requires = "tau")]
    pub mu: Option<String>,
    /// Neck rates "l1,...,ln"; default 2 - m for each
    #[arg(long, requires = "mu", allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// File copy of the JSON report (also printed to stdout)
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

pub fn run(args: KappaArgs) -> Result<(), Failure> {
    let report = if let Some(target) = args.kappa_target {
        if !target.is_finite() {
            return Err(Failure::Input("kappa-target must be finite".into()));
        }
        match find_rates_for_kappa(args.m, target) {
            Some(rates) => KappaReport {
                m: args.m,
                kappa_target: Some(target),
                found: Some(true),
                tau: Some(rates.tau()),
                mu: Some(rates.cone_rates().to_vec()),
                lambda: Some(rates.neck_rates().to_vec()),
                kappa_max: kappa_window(&rates),
                bounds: Some(exponent_bounds(&rates)),
            },
            None => KappaReport {
                m: args.m,
                kappa_target: Some(target),
                found: Some(false),
                tau: None,
                mu: None,
                lambda: None,
                kappa_max: None,
                bounds: None,
            },
        }
    } else {
        let (Some(tau), Some(mu_s)) = (args.tau, &args.mu) else {
            return Err(Failure::Input(
                "give either --kappa-target or both --tau and --mu".into(),
            ));
        };
        let mu = parse_reals(mu_s, "mu")?;
        let rates = match &args.lambda {
            Some(s) => GluingRates::new(args.m, tau, mu, parse_reals(s, "lambda")?),
            None => GluingRates::standard(args.m, tau, mu),
        }
        .map_err(|e| Failure::Input(format!("{e}")))?;
        KappaReport {
            m: args.m,
            kappa_target: None,
            found: None,
            tau: Some(rates.tau()),
            mu: Some(rates.cone_rates().to_vec()),
            lambda: Some(rates.neck_rates().to_vec()),
            kappa_max: kappa_window(&rates),
            bounds: Some(exponent_bounds(&rates)),
        }
    };

    print_json(&report);
    if let Some(path) = args.json_out {
        write_json(&path, &report)?;
    }
    if report.found == Some(false) {
        return Err(Failure::Criterion(format!(
            "no rates found with {} in the window",
            args.kappa_target.expect("search mode")
        )));
    }
    if report.found.is_none() && report.kappa_max.is_none() {
        return Err(Failure::Criterion("the exponent window is empty".into()));
    }
    Ok(())
}
