//! Run configuration shared by the subcommands: a JSON file supplies
//! defaults, command-line flags override field by field. Numeric
//! parsing helpers for points, classes and real lists live here too.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use slflow_core::homology::{HomologyClass, BASIS_RANK};
use slflow_core::moduli::ModuliPoint;
use slflow_core::necklace;
use slflow_core::Complex64;

use crate::commands::Failure;

/// File-loadable defaults. Every field is optional; a subcommand pulls
/// what it needs and falls back to its own defaults. The `command`
/// field, when present, must match the invoked subcommand.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    /// Moduli point as three [re, im] pairs.
    pub point: Option<[[f64; 2]; 3]>,
    /// Class coefficients over the canonical twenty-cycle basis.
    pub class: Option<Vec<i64>>,
    /// Constituent classes for split flows.
    pub parts: Option<Vec<Vec<i64>>>,
    pub vol_y: Option<f64>,
    pub mu0: Option<f64>,
    pub mu_end: Option<f64>,
    /// Integration step in log mu.
    pub step: Option<f64>,
    /// Wall offset for split flows.
    pub delta: Option<f64>,
    pub neck_moduli: Option<Vec<f64>>,
    /// Path of an immersed-configuration JSON file.
    pub configuration: Option<PathBuf>,
    pub csv_out: Option<PathBuf>,
    pub json_out: Option<PathBuf>,
}

pub fn load(path: Option<&Path>, command: &str) -> Result<RunConfig, Failure> {
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let cfg: RunConfig = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("malformed config {}: {e}", path.display())))?;
    if let Some(name) = &cfg.command {
        if name != command {
            return Err(Failure::Input(format!(
                "config is for command '{name}', not '{command}'"
            )));
        }
    }
    Ok(cfg)
}

/// Flag value if present, else config value, else the default.
pub fn pick<T: Clone>(flag: Option<T>, cfg: Option<T>, default: T) -> T {
    flag.or(cfg).unwrap_or(default)
}

pub fn finite(x: f64, name: &str) -> Result<f64, Failure> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Failure::Input(format!("{name} must be finite")))
    }
}

pub fn point_from_pairs(pairs: [[f64; 2]; 3]) -> Result<ModuliPoint, Failure> {
    let tau = [
        Complex64::new(pairs[0][0], pairs[0][1]),
        Complex64::new(pairs[1][0], pairs[1][1]),
        Complex64::new(pairs[2][0], pairs[2][1]),
    ];
    ModuliPoint::new(tau).map_err(|e| Failure::Input(format!("bad moduli point: {e}")))
}

pub fn point_to_pairs(p: &ModuliPoint) -> [[f64; 2]; 3] {
    [
        [p.tau[0].re, p.tau[0].im],
        [p.tau[1].re, p.tau[1].im],
        [p.tau[2].re, p.tau[2].im],
    ]
}

pub fn parse_reals(s: &str, name: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Failure::Input(format!("{name}: '{t}' is not a finite number")))
        })
        .collect()
}

pub fn parse_ints(s: &str, name: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Input(format!("{name}: '{t}' is not an integer")))
        })
        .collect()
}

/// Moduli point from "re1,im1,re2,im2,re3,im3".
pub fn parse_point(s: &str) -> Result<ModuliPoint, Failure> {
    let v = parse_reals(s, "point")?;
    if v.len() != 6 {
        return Err(Failure::Input(format!(
            "point needs 6 numbers (re,im per factor), got {}",
            v.len()
        )));
    }
    point_from_pairs([[v[0], v[1]], [v[2], v[3]], [v[4], v[5]]])
}

pub fn class_from_coeffs(v: &[i64]) -> Result<HomologyClass, Failure> {
    if v.len() != BASIS_RANK {
        return Err(Failure::Input(format!(
            "class needs {BASIS_RANK} coefficients, got {}",
            v.len()
        )));
    }
    let mut coeffs = [0i64; BASIS_RANK];
    coeffs.copy_from_slice(v);
    Ok(HomologyClass { coeffs })
}

/// Class from twenty comma-separated coefficients or one of the named
/// classes `necklace-total`, `necklace-l1`, `necklace-l2`,
/// `necklace-l3`.
pub fn parse_class(s: &str) -> Result<HomologyClass, Failure> {
    match s {
        "necklace-total" => Ok(necklace::total_class()),
        "necklace-l1" => Ok(necklace::component_classes()[0].clone()),
        "necklace-l2" => Ok(necklace::component_classes()[1].clone()),
        "necklace-l3" => Ok(necklace::component_classes()[2].clone()),
        _ => class_from_coeffs(&parse_ints(s, "class")?),
    }
}

/// Output path, honoring the `SLFLOW_OUT_DIR` override for relative
/// paths.
pub fn resolve_out(path: &Path) -> PathBuf {
    match std::env::var_os("SLFLOW_OUT_DIR") {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    let full = resolve_out(path);
    std::fs::write(&full, text)
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", full.display())))
}
