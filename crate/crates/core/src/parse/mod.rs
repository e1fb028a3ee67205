//! Text formats: polynomial expressions and problem files.
mod expr;
mod problem;

pub use expr::{parse_polynomial, parse_polynomial_at, parse_rational};
pub use problem::{parse_problem, ProblemFile};

use crate::poly::Polynomial;

/// Canonical rendering; `parse_polynomial(&render_polynomial(f), f.vars())`
/// returns `f`.
pub fn render_polynomial(f: &Polynomial) -> String {
    f.to_string()
}
