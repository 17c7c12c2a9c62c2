//! Exact rational linear algebra and linear programming.
//!
//! Nothing here touches floating point: determinants use fraction-free
//! elimination, ranks are computed over `Q` or `F_p`, and the simplex solver
//! pivots on exact rationals.

mod matrix;
mod simplex;

use thiserror::Error;

pub use matrix::{det_small_integer, int, to_i64, Field, RationalMatrix};
pub use simplex::{lp_dual, lp_solve, Constraint, LinearProgram, LpOutcome, Relation};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("{len} entries cannot fill a {rows}x{cols} matrix")]
    EntryCount { rows: usize, cols: usize, len: usize },
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("constraint has {got} coefficients, program has {expected} variables")]
    ConstraintLength { expected: usize, got: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("an entry has a denominator divisible by {0}")]
    DenominatorDivisibleBy(u64),
    #[error("dualization requires every variable to be nonnegative")]
    FreeVariableInDual,
}
