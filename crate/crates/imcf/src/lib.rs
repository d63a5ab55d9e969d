//! Numerical differential geometry for homothetic solitons of the inverse
//! mean curvature flow (IMCF).
//!
//! A submanifold immersion `phi: M^n -> R^m` with nonvanishing mean curvature
//! `H` evolves by homotheties under the IMCF exactly when
//!
//! ```text
//! -H / |H|^2 = a * phi^normal,    a != 0
//! ```
//!
//! in which case `F(x, t) = e^{a t} phi(x)` solves the flow. This crate
//! constructs the known soliton families in arbitrary dimension and
//! codimension with exact analytic 2-jets, verifies the soliton equation and
//! its derived identities over sample grids, classifies the closed-form
//! soliton curves of the inverse curve shortening flow, builds Lagrangian
//! solitons (curve products, Hopf-type products over Legendrian immersions,
//! rotationally equivariant families), and cross-checks the homothetic
//! evolution with desk-scale flow integrators.
//!
//! Entry points:
//! - [`catalog`]: named example immersions with their expected facts.
//! - [`verify`]: soliton residuals, velocity estimation, pinching ratios,
//!   grid scans producing [`verify::SolitonReport`].
//! - [`curve`]: the 1D soliton family (circles, involutes, spirals,
//!   epi/hypocycloids) and its ODE oracle.
//! - [`lagrangian`]: Lagrangian/Legendrian constructions and residuals.
//! - [`flow`]: exact sphere flow and an explicit convex-curve integrator.
//! - [`cli`]: the `imcf` command-line front end.

pub mod catalog;
pub mod cli;
pub mod curve;
pub mod lagrangian;
pub mod verify;
pub mod dual;
pub mod error;
pub mod export;
pub mod flow;
pub mod geom;

pub use error::{Error, Result};
