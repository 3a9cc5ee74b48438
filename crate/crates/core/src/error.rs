//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the exact engines.
///
/// Precondition violations carry enough context to report the offending
/// object (violating pair, residual, subset) back to the caller.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("coordinate-system mismatch: `{left}` vs `{right}`")]
    CoordinateMismatch { left: String, right: String },

    #[error("index {index} out of range (1..={max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("input has Gaussian coefficients; expected the real subfield")]
    NotReal,

    #[error("input is not conjugation-symmetric; realified coefficients have imaginary parts")]
    NotConjugationSymmetric,

    #[error("polynomial is not annihilated by the field(s) of block {block}; residual `{residual}`")]
    NotInKernel { block: usize, residual: String },

    #[error("cochain is not a cocycle: X_{i}(g_{j}) != X_{j}(g_{i})")]
    NotCocycle { i: usize, j: usize },

    #[error("form is not well defined: component {subset:?} does not vanish on the singular set of field {field}")]
    IllFormedForm { subset: Vec<usize>, field: usize },

    #[error("form is not closed; residual differential: {residual}")]
    NotClosed { residual: String },

    #[error("homotopy operator is undefined on 0-forms")]
    ZeroDegreeHomotopy,

    #[error("connection potential is not leafwise flat; d_F(alpha) != 0")]
    NotLeafwiseFlat,

    #[error("truncated exponential requires a zero constant term, found `{constant}`")]
    NonzeroConstantTerm { constant: String },

    #[error("model mismatch between twisted form and potential")]
    ModelMismatch,

    #[error("oracle dimensions are only defined for Williamson types without focus-focus blocks")]
    NoOracleForFocusFocus,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal verification failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
