//! `betti`: Betti numbers of the glued manifold from the vertex data
//! and the dual graph, cross-checked against the chain-level rank
//! computation.

use std::path::PathBuf;

use clap::Args;

use slflow_core::necklace;
use slflow_core::smoothing::{
    boundary_rank_betti, connected_sum_betti, dual_graph, DualGraph,
};

use crate::commands::smooth::smoothing_failure;
use crate::commands::Failure;
use crate::config::parse_ints;
use crate::report::{print_json, write_json, BettiReport};

#[derive(Args)]
pub struct BettiArgs {
    /// Configuration JSON file (components and intersections)
    #[arg(long, conflicts_with = "builtin")]
    pub configuration: Option<PathBuf>,
    /// Built-in configuration; currently "necklace"
    #[arg(long)]
    pub builtin: Option<String>,
    /// Raw graph instead: number of vertices (with --edge and --b1)
    #[arg(long, conflicts_with_all = ["configuration", "builtin"], requires = "b1")]
    pub vertices: Option<usize>,
    /// Raw graph edge "tail,head" (repeatable)
    #[arg(long = "edge")]
    pub edges: Vec<String>,
    /// First Betti numbers of the vertices, "b1,...,bV"
    #[arg(long)]
    pub b1: Option<String>,
    /// File copy of the JSON report (also printed to stdout)
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

pub fn run(args: BettiArgs) -> Result<(), Failure> {
    let (graph, b1s) = if let Some(v) = args.vertices {
        let mut edges = Vec::with_capacity(args.edges.len());
        for e in &args.edges {
            let ends = parse_ints(e, "edge")?;
            let (Some(&tail), Some(&head), 2) = (ends.first(), ends.get(1), ends.len()) else {
                return Err(Failure::Input(format!("edge '{e}' is not 'tail,head'")));
            };
            if tail < 0 || head < 0 || tail as usize >= v || head as usize >= v {
                return Err(Failure::Input(format!("edge '{e}' endpoint out of range")));
            }
            edges.push((tail as usize, head as usize));
        }
        let b1_list = parse_ints(args.b1.as_deref().expect("clap requires b1"), "b1")?;
        if b1_list.len() != v || b1_list.iter().any(|&x| x < 0) {
            return Err(Failure::Input(format!("--b1 needs {v} nonnegative integers")));
        }
        (
            DualGraph { vertices: v, edges },
            b1_list.into_iter().map(|x| x as usize).collect::<Vec<_>>(),
        )
    } else {
        let config = match (&args.configuration, args.builtin.as_deref()) {
            (Some(path), None) => crate::report::load_configuration(path)?,
            (None, Some("necklace")) | (None, None) => necklace::configuration(),
            (None, Some(other)) => {
                return Err(Failure::Input(format!("unknown builtin '{other}'")))
            }
            (Some(_), Some(_)) => unreachable!("clap forbids the combination"),
        };
        let g = dual_graph(&config).map_err(smoothing_failure)?;
        let b1s = config.components.iter().map(|c| c.b1).collect();
        (g, b1s)
    };

    let (b0, b1) = connected_sum_betti(&graph, &b1s);
    let (oracle_b0, oracle_b1) = boundary_rank_betti(&graph, &b1s);
    let report = BettiReport {
        vertices: graph.vertices,
        edges: graph.edges.len(),
        b1_input: b1s,
        b0,
        b1,
        oracle_b0,
        oracle_b1,
        agrees: (b0, b1) == (oracle_b0, oracle_b1),
    };
    print_json(&report);
    if let Some(path) = args.json_out {
        write_json(&path, &report)?;
    }
    if !report.agrees {
        return Err(Failure::Criterion(
            "formula and rank computation disagree".into(),
        ));
    }
    Ok(())
}
