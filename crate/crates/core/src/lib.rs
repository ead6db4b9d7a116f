//! Tropical (min-plus) weighted relational semantics for simply typed,
//! graded, differential and effectful λ-calculi.

pub mod tropical;
pub mod syntax;
pub mod semantics;
pub mod taylor;
pub mod operational;
