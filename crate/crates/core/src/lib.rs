//! Numerical and combinatorial invariants of C*-actions on polarized varieties.
//!
//! * [`lattice`]: exact rational cones, duality, polytopes and slices.
//! * [`rootsys`]: root systems, fundamental weights, Weyl orbits.
//! * [`rhaction`]: C*-actions on rational homogeneous varieties via weight orbits.
//! * [`toricaction`]: C*-subactions on polarized toric varieties and their GIT chambers.
//! * [`realization`]: curve/divisor tables and Nef/Mori/Movable cones of the geometric
//!   realization of a bispecial transformation, with contraction analysis.

pub mod action;
pub mod lattice;
pub mod realization;
pub mod rhaction;
pub mod rootsys;
pub mod toricaction;

mod error;

pub use error::Error;
