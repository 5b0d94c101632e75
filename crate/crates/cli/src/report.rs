//! Machine-readable outputs: JSON report bodies for each subcommand
//! and CSV trajectory/sampling tables. All floats are printed with 17
//! significant digits so files are bit-stable across platforms and
//! parse back to the exact same values.

use std::path::Path;

use serde::{Deserialize, Serialize};

use slflow_core::flow::{SplitFlowNode, Trajectory};
use slflow_core::slplane::SLPlane;
use slflow_core::smoothing::{IntersectionPoint, SLComponent, SLConfiguration};
use slflow_core::Complex64;

use crate::commands::Failure;
use crate::config::{class_from_coeffs, point_to_pairs, write_text};

/// 17 significant digits; round-trips f64 exactly.
pub fn g17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn print_json<T: Serialize>(report: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("reports serialize")
    );
}

pub fn write_json<T: Serialize>(path: &Path, report: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    write_text(path, &text)
}

// --- CSV tables -------------------------------------------------------

pub const TRAJECTORY_HEADER: &str =
    "mu,re_tau1,im_tau1,re_tau2,im_tau2,re_tau3,im_tau3,re_z,im_z,alpha,tau_of_mu,residual";

/// Trajectory table, one row per sample, with the per-sample
/// linear-evolution residual in the last column.
pub fn trajectory_csv(traj: &Trajectory, residuals: &[f64]) -> String {
    assert_eq!(residuals.len(), traj.samples.len());
    let mut out = String::from(TRAJECTORY_HEADER);
    out.push('\n');
    for (s, r) in traj.samples.iter().zip(residuals) {
        let cols = [
            s.mu,
            s.point.tau[0].re,
            s.point.tau[0].im,
            s.point.tau[1].re,
            s.point.tau[1].im,
            s.point.tau[2].re,
            s.point.tau[2].im,
            s.z.re,
            s.z.im,
            s.alpha,
            s.tau_of_mu,
            *r,
        ];
        let row: Vec<String> = cols.iter().map(|&x| g17(x)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub const NECK_SAMPLE_HEADER: &str = "y,coordinate,re,im";

/// Sampled neck points along one sphere direction: for each `y` on the
/// grid, one row per complex coordinate.
pub fn neck_csv(rows: &[(f64, usize, Complex64)]) -> String {
    let mut out = String::from(NECK_SAMPLE_HEADER);
    out.push('\n');
    for &(y, k, z) in rows {
        out.push_str(&format!("{},{},{},{}\n", g17(y), k + 1, g17(z.re), g17(z.im)));
    }
    out
}

// --- shared DTOs ------------------------------------------------------

/// A unitary frame with orientation, as stored in frame files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDto {
    pub m: usize,
    /// Row-major m x m entries as [re, im]; columns span the plane.
    pub frame: Vec<[f64; 2]>,
    pub orientation: i8,
}

impl FrameDto {
    pub fn from_plane(p: &SLPlane) -> Self {
        FrameDto {
            m: p.dim(),
            frame: p.frame().iter().map(|z| [z.re, z.im]).collect(),
            orientation: p.orientation(),
        }
    }

    pub fn to_plane(&self) -> Result<SLPlane, Failure> {
        let frame = self
            .frame
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        SLPlane::new(self.m, frame, self.orientation)
            .map_err(|e| Failure::Input(format!("bad frame: {e}")))
    }
}

/// Pair of planes, the on-disk format of `angles --frames`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FramePairDto {
    pub p: FrameDto,
    pub q: FrameDto,
}

/// Immersed configuration, the on-disk format of `smooth`/`betti`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigurationDto {
    pub components: Vec<ComponentDto>,
    pub intersections: Vec<EdgeDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDto {
    pub label: String,
    pub class: Vec<i64>,
    pub b1: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDto {
    pub tail: usize,
    pub head: usize,
}

impl ConfigurationDto {
    pub fn from_configuration(c: &SLConfiguration) -> Self {
        ConfigurationDto {
            components: c
                .components
                .iter()
                .map(|comp| ComponentDto {
                    label: comp.label.clone(),
                    class: comp.class.coeffs.to_vec(),
                    b1: comp.b1,
                })
                .collect(),
            intersections: c
                .intersections
                .iter()
                .map(|p| EdgeDto {
                    tail: p.tail,
                    head: p.head,
                })
                .collect(),
        }
    }

    pub fn to_configuration(&self) -> Result<SLConfiguration, Failure> {
        let components = self
            .components
            .iter()
            .map(|c| {
                Ok(SLComponent {
                    label: c.label.clone(),
                    class: class_from_coeffs(&c.class)?,
                    b1: c.b1,
                })
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        Ok(SLConfiguration {
            components,
            intersections: self
                .intersections
                .iter()
                .map(|e| IntersectionPoint {
                    tail: e.tail,
                    head: e.head,
                })
                .collect(),
        })
    }
}

pub fn load_configuration(path: &Path) -> Result<SLConfiguration, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let dto: ConfigurationDto = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("malformed configuration {}: {e}", path.display())))?;
    dto.to_configuration()
}

// --- per-command report bodies ----------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub struct FlowReport {
    pub class: Vec<i64>,
    pub vol_y: f64,
    pub mu0: f64,
    pub mu_end: f64,
    pub step: f64,
    pub status: String,
    pub samples: usize,
    pub end_point: [[f64; 2]; 3],
    pub max_residual: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SplitNodeDto {
    pub class: Vec<i64>,
    pub mu0: f64,
    pub mu_end: f64,
    pub status: String,
    pub samples: usize,
    pub end_point: [[f64; 2]; 3],
    pub children: Vec<SplitNodeDto>,
}

impl SplitNodeDto {
    pub fn from_node(node: &SplitFlowNode) -> Self {
        SplitNodeDto {
            class: node.class.coeffs.to_vec(),
            mu0: node.trajectory.mu0,
            mu_end: node.trajectory.end().mu,
            status: status_name(&node.trajectory),
            samples: node.trajectory.samples.len(),
            end_point: point_to_pairs(&node.trajectory.end().point),
            children: node.children.iter().map(SplitNodeDto::from_node).collect(),
        }
    }
}

pub fn status_name(traj: &Trajectory) -> String {
    use slflow_core::flow::FlowStatus;
    match traj.status {
        FlowStatus::Completed => "completed",
        FlowStatus::ZeroCentralCharge => "zero-central-charge",
        FlowStatus::LeftModuliChart => "left-moduli-chart",
    }
    .to_string()
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AnglesReport {
    pub m: usize,
    pub angles: Vec<f64>,
    pub angle_sum: f64,
    pub type_k: usize,
    /// Oriented intersection sign; only defined in dimension 3.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oriented_sign: Option<i8>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NeckReport {
    pub moduli: Vec<f64>,
    pub angles: Vec<f64>,
    pub angle_sum: f64,
    pub area: f64,
    /// Inverse mode only: the requested invariants and the round-trip
    /// error of the recovered moduli.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_angles: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_area: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub round_trip_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_symplectic_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_volume_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SmoothReport {
    pub targets: Vec<i64>,
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Vec<f64>>,
    /// Exact solver output, as rational strings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment_exact: Option<Vec<String>>,
    pub betti: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moduli_dimension: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BettiReport {
    pub vertices: usize,
    pub edges: usize,
    pub b1_input: Vec<usize>,
    pub b0: usize,
    pub b1: usize,
    pub oracle_b0: usize,
    pub oracle_b1: usize,
    pub agrees: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct KappaReport {
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_target: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub found: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<f64>>,
    pub kappa_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CheckDto {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub point: [[f64; 2]; 3],
    pub vol_y: f64,
    pub checks: Vec<CheckDto>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use slflow_core::necklace;
    use slflow_core::slplane::plane_from_phases;

    #[test]
    fn seventeen_digit_floats_round_trip() {
        for x in [
            1.0,
            -0.1,
            std::f64::consts::PI,
            1.0 / 3.0,
            6.02e23,
            -4.9e-15,
            f64::MIN_POSITIVE,
        ] {
            let printed = g17(x);
            assert_eq!(printed.parse::<f64>().unwrap(), x, "{printed}");
            assert!(!printed.contains(','));
        }
    }

    #[test]
    fn frame_dto_round_trips() {
        let plane = plane_from_phases(&[0.3, 0.7, 1.1]).unwrap();
        let dto = FrameDto::from_plane(&plane);
        let text = serde_json::to_string(&dto).unwrap();
        let back: FrameDto = serde_json::from_str(&text).unwrap();
        assert_eq!(dto, back);
        let plane2 = back.to_plane().unwrap();
        assert_eq!(plane.frame(), plane2.frame());
        assert_eq!(plane.orientation(), plane2.orientation());
    }

    #[test]
    fn configuration_dto_round_trips() {
        let config = necklace::configuration();
        let dto = ConfigurationDto::from_configuration(&config);
        let text = serde_json::to_string_pretty(&dto).unwrap();
        let back: ConfigurationDto = serde_json::from_str(&text).unwrap();
        assert_eq!(dto, back);
        assert_eq!(back.to_configuration().unwrap(), config);
    }

    #[test]
    fn trajectory_csv_shape() {
        use slflow_core::flow::{integrate, linearity_residuals, FlowState};
        let start = FlowState {
            mu: 1.0,
            point: necklace::symmetric_wall_point(),
        };
        let traj = integrate(&start, &necklace::total_class(), 1.0, 1.01, 1e-3).unwrap();
        let csv = trajectory_csv(&traj, &linearity_residuals(&traj));
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), TRAJECTORY_HEADER);
        let columns = TRAJECTORY_HEADER.split(',').count();
        for line in lines {
            assert_eq!(line.split(',').count(), columns);
        }
        assert!(csv.ends_with('\n'));
        assert!(!csv.contains('\r'));
    }
}
