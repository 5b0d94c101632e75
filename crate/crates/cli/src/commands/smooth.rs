//! `smooth`: positive neck sizes solving the matching system of an
//! immersed configuration against a total class, plus Betti numbers of
//! the glued manifold.

use std::path::PathBuf;

use clap::Args;

use slflow_core::necklace;
use slflow_core::smoothing::{
    connected_sum_betti, dual_graph, moduli_dimension, pairing_targets,
    topological_criterion_solve_exact, SmoothingError,
};

use crate::commands::Failure;
use crate::config::{parse_class, parse_ints};
use crate::report::{print_json, write_json, ConfigurationDto, SmoothReport};

#[derive(Args)]
pub struct SmoothArgs {
    /// Configuration JSON file (components and intersections)
    #[arg(long, conflicts_with = "builtin")]
    pub configuration: Option<PathBuf>,
    /// Built-in configuration; currently "necklace" (the default when
    /// no file is given)
    #[arg(long)]
    pub builtin: Option<String>,
    /// Total class paired against the component classes; default
    /// necklace-total
    #[arg(long, conflicts_with = "targets", allow_hyphen_values = true)]
    pub class: Option<String>,
    /// Matching targets "c1,...,cq", bypassing the class pairing
    #[arg(long, allow_hyphen_values = true)]
    pub targets: Option<String>,
    /// Dimension of the ambient family, for the deformation count
    #[arg(long)]
    pub family_dim: Option<usize>,
    /// Write the configuration itself as JSON (round-trips through
    /// --configuration)
    #[arg(long)]
    pub emit_config: Option<PathBuf>,
    /// File copy of the JSON report (also printed to stdout)
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

pub fn smoothing_failure(e: SmoothingError) -> Failure {
    match e {
        SmoothingError::Moduli(inner) => Failure::Numeric(format!("{inner}")),
        other => Failure::Input(format!("{other}")),
    }
}

pub fn run(args: SmoothArgs) -> Result<(), Failure> {
    let config = match (&args.configuration, args.builtin.as_deref()) {
        (Some(path), None) => crate::report::load_configuration(path)?,
        (None, Some("necklace")) | (None, None) => necklace::configuration(),
        (None, Some(other)) => {
            return Err(Failure::Input(format!("unknown builtin '{other}'")))
        }
        (Some(_), Some(_)) => unreachable!("clap forbids the combination"),
    };
    if let Some(path) = &args.emit_config {
        crate::report::write_json(path, &ConfigurationDto::from_configuration(&config))?;
    }

    let targets = match &args.targets {
        Some(s) => parse_ints(s, "targets")?,
        None => {
            let class = match args.class.as_deref() {
                Some(s) => parse_class(s)?,
                None => necklace::total_class(),
            };
            pairing_targets(&config, &class)
        }
    };

    let g = dual_graph(&config).map_err(smoothing_failure)?;
    let exact = topological_criterion_solve_exact(&g, &targets).map_err(smoothing_failure)?;
    let b1s: Vec<usize> = config.components.iter().map(|c| c.b1).collect();
    let betti = connected_sum_betti(&g, &b1s);
    let report = SmoothReport {
        targets,
        feasible: exact.is_some(),
        assignment: exact.as_ref().map(|sizes| {
            sizes
                .iter()
                .map(|r| {
                    use num_traits::ToPrimitive;
                    r.to_f64().expect("solver outputs are modest rationals")
                })
                .collect()
        }),
        assignment_exact: exact
            .as_ref()
            .map(|sizes| sizes.iter().map(|r| r.to_string()).collect()),
        betti: [betti.0, betti.1],
        moduli_dimension: args.family_dim.map(|d| moduli_dimension(betti.1, d)),
    };
    print_json(&report);
    if let Some(path) = args.json_out {
        write_json(&path, &report)?;
    }
    if !report.feasible {
        return Err(Failure::Criterion(
            "no positive neck assignment matches the targets".into(),
        ));
    }
    Ok(())
}
