//! `split-flow`: at a wall point, flow the total class upward and each
//! constituent downward, emitting the tree as JSON.

use std::path::PathBuf;

use clap::Args;

use slflow_core::flow::{split_flow, FlowState};
use slflow_core::homology::HomologyClass;
use slflow_core::necklace;

use crate::commands::flow::flow_failure;
use crate::commands::Failure;
use crate::config::{self, finite, parse_class, parse_point, pick};
use crate::report::{print_json, write_json, SplitNodeDto};

#[derive(Args)]
pub struct SplitArgs {
    /// JSON run configuration supplying defaults for the other flags
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Wall point "re1,im1,..."; default: the symmetric necklace wall
    /// point
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Total class; default necklace-total
    #[arg(long, allow_hyphen_values = true)]
    pub class: Option<String>,
    /// Constituent class (repeatable); default: the three necklace
    /// components when the class is the necklace total
    #[arg(long = "part", allow_hyphen_values = true)]
    pub parts: Vec<String>,
    #[arg(long)]
    pub vol_y: Option<f64>,
    #[arg(long)]
    pub mu0: Option<f64>,
    /// Scale offset flowed on each side of the wall
    #[arg(long)]
    pub delta: Option<f64>,
    /// Step in log mu
    #[arg(long)]
    pub step: Option<f64>,
    /// File copy of the JSON tree (also printed to stdout)
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

pub fn run(args: SplitArgs) -> Result<(), Failure> {
    let cfg = config::load(args.config.as_deref(), "split-flow")?;
    let point = match args.point {
        Some(s) => parse_point(&s)?,
        None => match cfg.point {
            Some(pairs) => config::point_from_pairs(pairs)?,
            None => necklace::symmetric_wall_point(),
        },
    };
    let class = match args.class.as_deref() {
        Some(s) => parse_class(s)?,
        None => match &cfg.class {
            Some(v) => config::class_from_coeffs(v)?,
            None => necklace::total_class(),
        },
    };
    let parts: Vec<HomologyClass> = if !args.parts.is_empty() {
        args.parts
            .iter()
            .map(|s| parse_class(s))
            .collect::<Result<_, _>>()?
    } else if let Some(lists) = &cfg.parts {
        lists
            .iter()
            .map(|v| config::class_from_coeffs(v))
            .collect::<Result<_, _>>()?
    } else if class == necklace::total_class() {
        necklace::component_classes().to_vec()
    } else {
        return Err(Failure::Input(
            "no parts given and no default applies to this class".into(),
        ));
    };
    let vol_y = finite(pick(args.vol_y, cfg.vol_y, 1.0), "vol_y")?;
    let mu0 = finite(pick(args.mu0, cfg.mu0, 1.0), "mu0")?;
    let delta = finite(pick(args.delta, cfg.delta, 0.05), "delta")?;
    let step = finite(pick(args.step, cfg.step, 1e-3), "step")?;

    let wall = FlowState { mu: mu0, point };
    let tree =
        split_flow(&wall, &class, &parts, vol_y, delta, step).map_err(flow_failure)?;
    let dto = SplitNodeDto::from_node(&tree);
    print_json(&dto);
    if let Some(path) = args.json_out.or(cfg.json_out) {
        write_json(&path, &dto)?;
    }
    Ok(())
}
