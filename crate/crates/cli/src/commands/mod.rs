//! Subcommand implementations behind a uniform exit-code contract:
//! 0 success, 1 input error, 2 numeric non-convergence or early
//! termination, 3 criterion failure.

use std::fmt;

use clap::Subcommand;

pub mod angles;
pub mod betti;
pub mod demo;
pub mod flow;
pub mod kappa;
pub mod neck;
pub mod smooth;
pub mod split;

#[derive(Subcommand)]
pub enum Command {
    /// Integrate the attractor flow of a class and check its linear
    /// evolution law
    Flow(flow::FlowArgs),
    /// Flow a class up from a wall and its constituents down the other
    /// side
    SplitFlow(split::SplitArgs),
    /// Characteristic angles, type and oriented sign of a plane pair
    Angles(angles::AnglesArgs),
    /// Neck invariants, the inverse solve, and point sampling
    Neck(neck::NeckArgs),
    /// Positive neck sizes for an immersed configuration
    Smooth(smooth::SmoothArgs),
    /// Betti numbers of the glued manifold, with the rank cross-check
    Betti(betti::BettiArgs),
    /// Admissible exponent windows for the gluing perturbation
    Kappa(kappa::KappaArgs),
    /// End-to-end checks of the three-torus necklace example
    NecklaceDemo(demo::DemoArgs),
}

impl Command {
    pub fn run(self) -> Result<(), Failure> {
        match self {
            Command::Flow(a) => flow::run(a),
            Command::SplitFlow(a) => split::run(a),
            Command::Angles(a) => angles::run(a),
            Command::Neck(a) => neck::run(a),
            Command::Smooth(a) => smooth::run(a),
            Command::Betti(a) => betti::run(a),
            Command::Kappa(a) => kappa::run(a),
            Command::NecklaceDemo(a) => demo::run(a),
        }
    }
}

/// Failure cases, carrying the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Malformed or inconsistent input: exit 1.
    Input(String),
    /// A numeric routine did not converge or terminated early: exit 2.
    Numeric(String),
    /// A checked criterion does not hold: exit 3.
    Criterion(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Numeric(_) => 2,
            Failure::Criterion(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "{m}"),
            Failure::Numeric(m) => write!(f, "{m}"),
            Failure::Criterion(m) => write!(f, "{m}"),
        }
    }
}
