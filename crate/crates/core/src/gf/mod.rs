//! Finite field arithmetic.
//!
//! Two levels are provided:
//!
//! - [`Fq`]: the coefficient field `F_q = F_p[w]/(fq_modulus)`, with elements
//!   stored as integer codes (base-`p` digits of the coordinates in `1, w, w², …`).
//! - [`FieldCtx`]: the working field `K = F_q[z]/(k_modulus)` of degree `d`
//!   over `F_q`, with elements stored as coordinate vectors in the monomial
//!   basis `ε = (1, z, …, z^{d-1})`.
//!
//! `FieldCtx` also owns the Frobenius matrix of `x ↦ x^q` and an
//! [`OpCounter`] that records arithmetic operations in `K` and Frobenius
//! applications separately.

mod counter;
mod ext;
mod prime;

pub use counter::{OpCounter, OpCounts};
pub(crate) use ext::fq_from_repr;
pub use ext::{FieldCtx, FieldElement};
pub use prime::{Fq, FqElem};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building or using a field.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not irreducible over its base field")]
    NotIrreducible,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field: {0}")]
    ContextMismatch(String),
    #[error("field too large for this implementation: {0}")]
    FieldTooLarge(String),
}

/// Field operations on values of an associated element type.
///
/// Contexts are runtime objects, so elements carry no field information and
/// every operation goes through the context.
pub trait Field: Send + Sync {
    type Elem: Clone + PartialEq + Eq + std::fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` on zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// One coefficient of `F_q` in JSON: a bare integer (embedded from the prime
/// field) or the array of its `e` coordinates over `F_p`, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FqRepr {
    Int(i64),
    Digits(Vec<i64>),
}

/// JSON description of a field tower `F_p ⊂ F_q ⊂ K`.
///
/// ```json
/// {"p": 2, "e": 1, "fq_modulus": [0, 1], "d": 2, "k_modulus": [[1], [1], [1]]}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub e: usize,
    pub fq_modulus: Vec<i64>,
    pub d: usize,
    pub k_modulus: Vec<FqRepr>,
}

/// Trial division; `p` is small by construction.
pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut i = 3u64;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 2;
    }
    true
}
