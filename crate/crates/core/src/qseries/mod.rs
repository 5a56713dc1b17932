//! Exact truncated Laurent series in one and two variables.
//!
//! Everything here is exact: coefficients are arbitrary-precision integers or
//! rationals and every series carries the first exponent it does not know.

mod bivariate;
mod coeff;
mod laurent;

pub use bivariate::{BiLaurentSeries, Rectangle};
pub use coeff::{format_rational, format_rational_full, parse_rational, Coeff, Coefficient};
pub use laurent::{IntSeries, LaurentSeries, RatSeries};

pub(crate) use coeff::is_unit_int;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series is zero up to its truncation order; cannot invert")]
    ZeroLeadingCoefficient,
    #[error("leading coefficient {0} is not a unit of the coefficient ring")]
    NonUnitLeadingCoefficient(String),
    #[error("coefficient of q^{exponent} is unknown (series truncated at q^{trunc})")]
    BeyondTruncation { exponent: i64, trunc: i64 },
    #[error("monomial p^{p} q^{q} lies outside the truncation rectangle")]
    OutsideRectangle { p: i64, q: i64 },
    #[error("operands have different truncation rectangles")]
    RectangleMismatch,
    #[error("negative exponent {0} not allowed here")]
    NegativeExponent(String),
    #[error("binomial expansion needs a positive p-exponent, got {0}")]
    NonPositivePStep(i64),
}
