//! `necklace-demo`: end-to-end checks of the three-torus necklace at a
//! wall point, emitting a certificate. Exit 3 names the first failing
//! check.

use std::path::PathBuf;

use clap::Args;

use slflow_core::flow::wall_phase_gap;
use slflow_core::homology::intersection;
use slflow_core::moduli::ModuliPoint;
use slflow_core::necklace;
use slflow_core::slplane::characteristic_angles;
use slflow_core::smoothing::{connected_sum_betti, dual_graph, pairing_targets,
    topological_criterion_solve, DualGraph};

use crate::commands::Failure;
use crate::config::{parse_point, point_to_pairs};
use crate::report::{print_json, write_json, Certificate, CheckDto};

#[derive(Args)]
pub struct DemoArgs {
    /// Wall point override "re1,im1,..."; default: the symmetric point
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Print the certificate as JSON instead of per-check lines
    #[arg(long)]
    pub json: bool,
    /// File copy of the JSON certificate
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

const VOL_Y: f64 = 1.0;
const CONSTRAINT_TOL: f64 = 1e-12;
const ANGLE_TOL: f64 = 1e-9;
const PHASE_TOL: f64 = 1e-12;

fn check(name: &str, passed: bool, detail: String) -> CheckDto {
    CheckDto {
        name: name.to_string(),
        passed,
        detail,
    }
}

fn wall_constraints(p: &ModuliPoint) -> CheckDto {
    let (prod, shifted) = necklace::wall_products(p);
    check(
        "wall-constraints",
        necklace::on_wall(p, CONSTRAINT_TOL),
        format!(
            "tau product {:.6e}{:+.6e}i (negative real), shifted product {:.6e}{:+.6e}i (positive real)",
            prod.re, prod.im, shifted.re, shifted.im
        ),
    )
}

fn intersection_table() -> CheckDto {
    let classes = necklace::component_classes();
    let cycle = [(0, 1), (1, 2), (2, 0)];
    let forward: Vec<i64> = cycle
        .iter()
        .map(|&(j, k)| intersection(&classes[j], &classes[k]))
        .collect();
    let backward: Vec<i64> = cycle
        .iter()
        .map(|&(j, k)| intersection(&classes[k], &classes[j]))
        .collect();
    check(
        "intersection-table",
        forward == vec![1, 1, 1] && backward == vec![-1, -1, -1],
        format!("L1.L2, L2.L3, L3.L1 = {forward:?}; reversed {backward:?}"),
    )
}

fn angle_sums(p: &ModuliPoint) -> CheckDto {
    let planes = necklace::component_planes(p);
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let targets = [
        core::f64::consts::PI,
        2.0 * core::f64::consts::PI,
        core::f64::consts::PI,
    ];
    let mut sums = Vec::new();
    for (&(j, k), &want) in pairs.iter().zip(targets.iter()) {
        match characteristic_angles(&planes[j], &planes[k]) {
            Ok(spectrum) => {
                let sum = spectrum.sum();
                if (sum - want).abs() > ANGLE_TOL {
                    return check(
                        "angle-sums",
                        false,
                        format!("pair (L{}, L{}) sums to {sum} instead of {want}", j + 1, k + 1),
                    );
                }
                sums.push(sum);
            }
            Err(e) => {
                return check(
                    "angle-sums",
                    false,
                    format!("pair (L{}, L{}): {e}", j + 1, k + 1),
                )
            }
        }
    }
    check(
        "angle-sums",
        true,
        format!(
            "(L1,L2), (L1,L3), (L2,L3) = {:.12}, {:.12}, {:.12}",
            sums[0], sums[1], sums[2]
        ),
    )
}

fn phase_alignment(p: &ModuliPoint) -> CheckDto {
    let classes = necklace::component_classes();
    let total = necklace::total_class();
    let mut worst: f64 = 0.0;
    for j in 0..3 {
        let other = if j == 2 { &total } else { &classes[j + 1] };
        match wall_phase_gap(p, &classes[j], other) {
            Ok(gap) => worst = worst.max(gap.abs()),
            Err(e) => return check("phase-alignment", false, format!("{e}")),
        }
    }
    check(
        "phase-alignment",
        worst <= PHASE_TOL,
        format!("largest pairwise phase gap {worst:.3e}"),
    )
}

fn neck_solve() -> CheckDto {
    let config = necklace::configuration();
    let targets = pairing_targets(&config, &necklace::total_class());
    let g = match dual_graph(&config) {
        Ok(g) => g,
        Err(e) => return check("neck-solve", false, format!("{e}")),
    };
    match topological_criterion_solve(&g, &targets) {
        Ok(Some(assignment)) => {
            let first = assignment.sizes[0];
            let equal_positive =
                first > 0.0 && assignment.sizes.iter().all(|&a| a == first);
            check(
                "neck-solve",
                equal_positive,
                format!("neck sizes {:?} for targets {targets:?}", assignment.sizes),
            )
        }
        Ok(None) => check("neck-solve", false, "matching system infeasible".into()),
        Err(e) => check("neck-solve", false, format!("{e}")),
    }
}

fn betti_pair() -> CheckDto {
    let config = necklace::configuration();
    let g = match dual_graph(&config) {
        Ok(g) => g,
        Err(e) => return check("betti", false, format!("{e}")),
    };
    let b1s: Vec<usize> = config.components.iter().map(|c| c.b1).collect();
    let apart = DualGraph {
        vertices: g.vertices,
        edges: Vec::new(),
    };
    let separate = connected_sum_betti(&apart, &b1s);
    let glued = connected_sum_betti(&g, &b1s);
    check(
        "betti",
        separate == (3, 9) && glued == (1, 10),
        format!("separate components b1 {}, glued sum b1 {}", separate.1, glued.1),
    )
}

pub fn run(args: DemoArgs) -> Result<(), Failure> {
    let point = match &args.point {
        Some(s) => parse_point(s)?,
        None => necklace::symmetric_wall_point(),
    };
    let checks = vec![
        wall_constraints(&point),
        intersection_table(),
        angle_sums(&point),
        phase_alignment(&point),
        neck_solve(),
        betti_pair(),
    ];
    let failed = checks.iter().find(|c| !c.passed).map(|c| c.name.clone());
    let certificate = Certificate {
        point: point_to_pairs(&point),
        vol_y: VOL_Y,
        passed: failed.is_none(),
        failed: failed.clone(),
        checks,
    };

    if args.json {
        print_json(&certificate);
    } else {
        for c in &certificate.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            println!("{mark} {}: {}", c.name, c.detail);
        }
        println!(
            "{}",
            if certificate.passed {
                "all checks passed"
            } else {
                "checks FAILED"
            }
        );
    }
    if let Some(path) = args.json_out {
        write_json(&path, &certificate)?;
    }

    match failed {
        Some(name) => Err(Failure::Criterion(format!("check '{name}' failed"))),
        None => Ok(()),
    }
}
