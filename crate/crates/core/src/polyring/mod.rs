//! Exact sparse polynomials over the Gaussian rationals.

mod form;
mod gauss;
mod monomial;
mod parse;
mod poly;

pub use form::{adjugate, det, forms_det, identity, is_square, jacobian_det, mat_mul, OneForm, PolyMatrix};
pub use gauss::GaussRat;
pub use monomial::Monomial;
pub use parse::{parse_in, parse_poly};
pub use poly::{default_names, Poly, PolyDisplay};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("expected {expected} inputs, got {got}")]
    Arity { expected: usize, got: usize },
}
