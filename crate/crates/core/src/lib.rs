//! Numerical and combinatorial tools for special Lagrangian cycles on a
//! product of three elliptic curves.
//!
//! The crate is organised around the pipeline used to study BPS-type
//! trajectories and connected-sum smoothings:
//!
//! * [`homology`]: the rank-20 middle homology lattice of the threefold,
//!   its intersection form, and pairing vectors of classes;
//! * [`moduli`]: holomorphic periods, the Kähler potential on the
//!   product-torus moduli space, central charges, the moduli metric and
//!   the harmonic decomposition of three-forms;
//! * [`flow`]: the gradient flow of `log |Z|^2`, its closed-form
//!   linearity check, walls of equal phase and split trajectories;
//! * [`slplane`]: characteristic angles and oriented intersection signs
//!   of special Lagrangian planes;
//! * [`lawlor`]: the standard interpolating necks between transverse
//!   planes: angle/scale invariants, pointwise parametrisation and the
//!   scaling law;
//! * [`smoothing`]: dual graphs of immersed configurations, the exact
//!   feasibility test for gluing scales, first Betti numbers of the
//!   smoothed sum, and lifting a trajectory to a gluing-scale function;
//! * [`kappa`]: admissible exponent windows for the perturbation step
//!   of the gluing argument;
//! * [`necklace`]: a worked three-component configuration whose dual
//!   graph is a directed triangle, used as the reference example and in
//!   the end-to-end demo.
//!
//! The crate is `no_std`-compatible (with `alloc`); the default `std`
//! feature simply re-enables the standard library for dependents that
//! want it.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod flow;
pub mod homology;
pub mod kappa;
pub mod lawlor;
pub mod linalg;
pub mod moduli;
pub mod necklace;
pub mod quad;
pub mod slplane;
pub mod smoothing;

pub use num_complex::Complex64;
