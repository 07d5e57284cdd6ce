//! Exact-arithmetic toolkit for lattice-point geometry of polytopes:
//! Ehrhart polynomials, Minkowski successive minima, zonotope coefficient
//! formulas, lattice-face verification, and coefficient-bound reports —
//! everything in exact rational arithmetic, no floating point anywhere.

pub mod conjecture;
pub mod error;
pub mod lattice_face;
pub mod linalg;
pub mod lp;
pub mod minima;
pub mod polytopes;
pub mod ratio;
pub mod zonotopes;

pub use error::{Error, Result};
pub use ratio::{Int, Rat};
