//! Exact linear algebra over Z/m and Z.

pub mod abelian;
pub mod arith;
mod howell;
mod matrix;
pub mod smith;
mod subquotient;

use thiserror::Error;

pub use abelian::{AbHom, AbSubgroup, FinAbGroup};
pub use howell::{functional_kernel, howell_form, kernel, Eliminator, HowellBasis};
pub use matrix::{
    dense_axpy, dense_sub, row_axpy, row_dot, row_from_dense, row_scale, row_to_dense, SparseModMatrix, SparseRow,
    MAX_MODULUS,
};
pub use smith::{smith_form_z, IntMatrix, SmithForm};
pub use subquotient::{smith_mod, ModSubquotient, SmithMod};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("modulus {0} must lie in 1..=2^31")]
    BadModulus(u64),
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("row {0} is not sorted, has zeros, or has out-of-range entries")]
    MalformedRow(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("denominator is not contained in the numerator")]
    NotASubmodule,
    #[error("vector does not lie in the numerator")]
    NotInNumerator,
    #[error("integer matrix {rows}x{cols} exceeds the dense limit of {limit} entries")]
    DimensionTooLarge { rows: usize, cols: usize, limit: usize },
    #[error("map is not well defined on the source group")]
    NotWellDefined,
}
