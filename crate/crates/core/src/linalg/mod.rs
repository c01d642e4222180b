//! Linear algebra over `F_q` (echelon forms, LUP solving, Frobenius normal
//! form) and over `F_q[T]` (Smith normal form, determinantal divisors).

mod fitting;
mod fnf;
mod lup;
mod matrix;
mod smith;

pub use fitting::{determinant, determinantal_divisor, fitting_invariants, MAX_FITTING_DIM};
pub use fnf::{frobenius_normal_form, local_min_poly, FrobeniusForm};
pub use lup::{lup, solve_in_span, Lup};
pub use matrix::MatFq;
pub use smith::{smith_normal_form, MatPoly, Smith};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("right-hand side is not in the column span")]
    NotInSpan,
    #[error("matrix does not have full column rank")]
    RankDeficient,
    #[error("matrix of size {rows}x{cols} is too large for minor enumeration")]
    TooLarge { rows: usize, cols: usize },
    #[error("dimension mismatch")]
    DimensionMismatch,
}
