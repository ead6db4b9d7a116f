//! Weighted small-step reduction, best-case and likelihood analyses, and
//! their agreement with the denotational model.

mod mle;
mod paths;
mod step;

pub use mle::{active_monomial, mle, Mle};
pub use paths::{
    adequacy_check, best_case, best_case_with, enumerate_paths, outcome_series, path_likelihood, Adequacy, BestCase, OpError,
    PathRecord,
};
pub use step::{step, step_with, WeightedStep};
