//! Tropical scalars, polynomials and truncated power series.

mod deriv;
mod degree;
mod roots;
mod series;
mod text;
mod truncate;
mod valuation;
mod value;

pub use deriv::deriv_eval;
pub use degree::MultiDegree;
pub use roots::{hull_eval, univariate_roots, Root};
pub use series::{
    plot_tsv, series_eval, series_min, series_mul, series_shift, value_json, Point, TropSeries, TruncationPolicy,
};
pub use truncate::{epsilon_support, truncate};
pub use valuation::{tropicalize, Valuation};
pub use value::{trop_add, trop_dist, trop_mul, Rational, TropValue, FLOAT_TOLERANCE};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
    #[error("epsilon must lie strictly between 0 and inf, got {0}")]
    BadEpsilon(String),
    #[error("series has no monomials")]
    EmptySeries,
    #[error("series is not univariate: {0}")]
    NotUnivariate(String),
    #[error("value out of domain [0, inf]: {0}")]
    OutOfDomain(String),
    #[error("parse error: {0}")]
    Parse(String),
}
