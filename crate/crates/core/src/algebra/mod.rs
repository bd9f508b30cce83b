//! Finite-field arithmetic and dense linear algebra over GF(q).

mod field;
mod matrix;

pub use field::{is_irreducible, is_prime, prime_power, Elem, FieldSpec, MAX_ORDER};
pub use matrix::{header_line, join, parse_header, parse_numbers, Matrix, Rref};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),
    #[error("field order {0} exceeds 256")]
    FieldTooLarge(usize),
    #[error("bad defining polynomial: {0}")]
    BadPolynomial(String),
    #[error("entry {value} is not an element of GF({order})")]
    BadEntry { value: u64, order: usize },
    #[error("matrices are over different fields")]
    FieldMismatch,
    #[error("column count mismatch: {0} vs {1}")]
    ColumnMismatch(usize, usize),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
}
