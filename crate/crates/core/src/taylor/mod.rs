//! Taylor expansion into resource terms, the `⋆` operator, and local
//! Lipschitz constants of tropical power series.

mod lipschitz;
mod resource;
mod star;

pub use lipschitz::{
    ball, empirical_lipschitz, lipschitz_estimate, Bounds, Empirical, LipschitzError, LipschitzEstimate, Radius,
};
pub use resource::{elaborate, interpret_resource, taylor_expand, taylor_gap, ResourceTerm};
pub use star::{star, taylor_term};
