//! Exact rational linear algebra and polyhedral geometry: vectors, cones and their duals,
//! lattice polytopes, hyperplane slices and lattice lengths. No floating point.

pub mod cone;
pub mod linalg;
pub mod polytope;
pub mod rational;
pub mod vector;

pub use cone::{dual_cone, RationalCone};
pub use polytope::{lattice_length, LatticePolytope, SlicePolytope};
pub use rational::{int, parse_rational, rat, render, Rational};
pub use vector::RationalVector;
