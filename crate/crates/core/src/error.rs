use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is even and has no inverse modulo a power of 2")]
    EvenArgument(String),
    #[error("precision must be positive, got {0}")]
    InvalidPrecision(u32),
    #[error("{value} mod 8 is not 1 or 3, so it is not a power of 3 modulo 2^{prec}")]
    NotInSubgroup { value: String, prec: u32 },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("determinant {0} has an odd prime factor")]
    NotTwoLocal(String),
    #[error("cokernel is infinite (determinant 0)")]
    Infinite,
    #[error("matrix is not square or shapes disagree: {0}")]
    Shape(String),
    #[error("linear solve is singular: diagonal entries {i} and {j} coincide")]
    SingularSolve { i: usize, j: usize },
    #[error("entry ({row}, {col}) = {value} has an even denominator")]
    EvenDenominator {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("entry ({row}, {col}) = {value} is not an even integer")]
    OddEntry {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("theta is not injective (determinant 0)")]
    NotInjective,
    #[error("the slot {0} holds the zero group")]
    ZeroGroup(String),
    #[error("the action on {0} is not given by a scalar")]
    NotCyclic(String),
    #[error("order counting does not discriminate: {0}")]
    ContradictionNotFound(String),
    #[error("dual computations disagree: {0}")]
    InternalMismatch(String),
    #[error("no table is consistent with the exact sequence: {0}")]
    NoConsistentTable(String),
    #[error("several tables are consistent with the exact sequence: {0}")]
    AmbiguousTable(String),
    #[error("psi^3 residue {0} mod 16 is neither 1 nor 9")]
    Unclassifiable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
