//! `angles`: characteristic angles, type and (in dimension 3) the
//! oriented intersection sign of a transverse pair of planes.

use std::path::PathBuf;

use clap::Args;

use slflow_core::slplane::{
    characteristic_angles, oriented_intersection_sign, plane_from_phases, PlaneError, SLPlane,
};

use crate::commands::Failure;
use crate::config::parse_reals;
use crate::report::{print_json, write_json, AnglesReport, FrameDto, FramePairDto};

#[derive(Args)]
pub struct AnglesArgs {
    /// JSON file holding the two frames: {"p": {...}, "q": {...}}
    #[arg(long, conflicts_with_all = ["phases_p", "phases_q"])]
    pub frames: Option<PathBuf>,
    /// First plane as diagonal phases "a,b,c" in [0, pi)
    #[arg(long, requires = "phases_q")]
    pub phases_p: Option<String>,
    /// Second plane as diagonal phases
    #[arg(long, requires = "phases_p")]
    pub phases_q: Option<String>,
    /// Orientation of the first plane (+1 or -1)
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub orient_p: i8,
    /// Orientation of the second plane
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub orient_q: i8,
    /// Write the plane pair as a frames file usable with --frames
    #[arg(long)]
    pub emit_frames: Option<PathBuf>,
    /// File copy of the JSON report (also printed to stdout)
    #[arg(long)]
    pub json_out: Option<PathBuf>,
}

fn plane_failure(e: PlaneError) -> Failure {
    Failure::Input(format!("{e}"))
}

fn oriented(plane: SLPlane, orientation: i8) -> Result<SLPlane, Failure> {
    if plane.orientation() == orientation {
        return Ok(plane);
    }
    SLPlane::new(plane.dim(), plane.frame().to_vec(), orientation).map_err(plane_failure)
}

pub fn run(args: AnglesArgs) -> Result<(), Failure> {
    let (p, q) = if let Some(path) = &args.frames {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        let pair: FramePairDto = serde_json::from_str(&text)
            .map_err(|e| Failure::Input(format!("malformed frames {}: {e}", path.display())))?;
        (pair.p.to_plane()?, pair.q.to_plane()?)
    } else {
        let (Some(sp), Some(sq)) = (&args.phases_p, &args.phases_q) else {
            return Err(Failure::Input(
                "give either --frames or both --phases-p and --phases-q".into(),
            ));
        };
        let p = plane_from_phases(&parse_reals(sp, "phases-p")?).map_err(plane_failure)?;
        let q = plane_from_phases(&parse_reals(sq, "phases-q")?).map_err(plane_failure)?;
        (oriented(p, args.orient_p)?, oriented(q, args.orient_q)?)
    };

    if let Some(path) = &args.emit_frames {
        let pair = FramePairDto {
            p: FrameDto::from_plane(&p),
            q: FrameDto::from_plane(&q),
        };
        write_json(path, &pair)?;
    }

    let spectrum = characteristic_angles(&p, &q).map_err(plane_failure)?;
    let oriented_sign = if p.dim() == 3 {
        Some(oriented_intersection_sign(&p, &q).map_err(plane_failure)?)
    } else {
        None
    };
    let report = AnglesReport {
        m: p.dim(),
        angle_sum: spectrum.sum(),
        angles: spectrum.angles,
        type_k: spectrum.type_k,
        oriented_sign,
    };
    print_json(&report);
    if let Some(path) = args.json_out {
        write_json(&path, &report)?;
    }
    Ok(())
}
