//! Exact arithmetic: rationals, Laurent polynomials in `x`, and power or
//! Laurent series in `t` truncated at a stated order.

mod laurent;
mod rational;
mod series;

pub use laurent::LaurentPoly;
pub use rational::{big_gcd, binomial, rational_binomial, ExactRational, ParseRationalError};
pub use series::{LaurentSeries, Series};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("constant term {0} is not a nonzero monomial")]
    NotInvertible(String),
    #[error("constant term {0} must be 1 for a square root")]
    BadConstantTerm(String),
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> ExactRational {
    ExactRational::from(n)
}

/// Shorthand for `n / d`.
pub fn frac(n: i64, d: i64) -> ExactRational {
    ExactRational::from_ratio(n, d)
}
