//! Exact arithmetic over GF(p^m): field elements, dense matrices, subspaces and
//! p-semilinear systems.

mod field;
mod matrix;
mod semilinear;

pub use field::{default_modulus, is_irreducible_poly, ArithOp, Embedding, Fe, Field, FieldDesc, FieldElement, MAX_CHAR, MAX_ORDER};
pub use matrix::{is_zero_vec, EchelonBasis, Matrix, Solution, Subspace};
pub use semilinear::{SemilinearMap, SemilinearSolutions};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("GF({p}^{m}) is outside the supported range")]
    Unsupported { p: u32, m: u32 },
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("modulus has degree {got}, expected {expected}")]
    DegreeMismatch { expected: u32, got: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("binary operation needs a second operand")]
    MissingOperand,
    #[error("bad field element {0:?}")]
    BadElement(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("system has no solution")]
    NoSolution,
    #[error("{order}^{free} solutions exceed the enumeration bound")]
    TooManySolutions { order: u32, free: usize },
}
