use thiserror::Error;

/// Errors produced by the exact-arithmetic routines.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dependent columns")]
    DependentColumns,
    #[error("zero vector")]
    ZeroVector,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("repeated abscissa in interpolation")]
    RepeatedAbscissa,
    #[error("not a lattice polytope")]
    NotLatticePolytope,
    #[error("polytope is not full-dimensional")]
    LowerDimensional,
    #[error("polytope is not 0-symmetric")]
    NotSymmetric,
    #[error("basis is not saturated")]
    NotSaturated,
    #[error("subspaces intersect")]
    SubspacesIntersect,
    #[error("enumeration cap exceeded ({0} candidates)")]
    CapExceeded(u64),
    #[error("generator cap")]
    GeneratorCap,
    #[error("vertex cap exceeded")]
    VertexCap,
    #[error("formula unproven for non prime power modulus")]
    NotPrimePower,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
