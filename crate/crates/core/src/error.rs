use thiserror::Error;

use crate::rational::QVector;

/// Errors raised by root-datum construction and the algorithms built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {kind}")]
    InvalidRank { kind: char, rank: usize },

    #[error("unknown Cartan type `{0}`")]
    UnknownType(String),

    #[error("root datum has no factors")]
    Empty,

    #[error("lattice basis is invalid: {0}")]
    InvalidLattice(String),

    #[error("vector {0} has the wrong dimension (expected {1})")]
    DimensionMismatch(QVector, usize),

    #[error("{0} is not a root")]
    NotARoot(QVector),

    #[error("simple root index {0} out of range")]
    BadSimpleIndex(usize),

    #[error("factor index {0} out of range")]
    BadFactorIndex(usize),

    #[error("invalid Galois generator {perm:?}: {reason}")]
    InvalidGalois { perm: Vec<usize>, reason: String },

    #[error("prime parameter p = {0} must be at least 2")]
    BadPrime(i64),

    #[error("datum is not irreducible ({0} factors)")]
    NotIrreducible(usize),

    #[error("Levi subset must be a proper subset of the simple roots")]
    LeviNotProper,

    #[error("zero vector does not span a ray")]
    ZeroRay,

    #[error("vector {0} is not in the span of the lattice")]
    NotInSpan(QVector),

    #[error("vector {0} is not in the chosen lattice")]
    NotInLattice(QVector),

    #[error("wrong side: expected a {0} vector")]
    WrongSide(&'static str),

    #[error("ray {0} is not dominant")]
    NotDominant(QVector),

    #[error("ray {0} is not quasi-constant")]
    NotQuasiConstant(QVector),

    #[error("ray {0} is central; its dual ray is zero")]
    CentralRay(QVector),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
