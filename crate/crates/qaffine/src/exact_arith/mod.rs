//! Exact arithmetic: Laurent polynomials in one variable, multivariate
//! Laurent polynomials over a fixed symbol set, and rational functions.

mod laurent;
mod mpoly;
mod ratfn;

pub use laurent::{lp_adjugate, lp_det, lp_matmul, q_binom, q_factorial, q_int, LaurentPoly};
pub use mpoly::{MPoly, Mono, Var, NVARS};
pub use ratfn::{geom_sum, QRat, QURat, RatFn};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Product of two Laurent polynomials.
pub fn lp_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a * b
}
