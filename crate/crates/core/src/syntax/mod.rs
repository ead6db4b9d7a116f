//! Syntax, parsing and type systems of the four calculi.

mod check;
mod parse;
mod pretty;
mod term;
mod translate;
mod types;

pub(crate) use check::infer_graded;
pub use check::{
    check_against, typecheck, typecheck_bstlc, typecheck_pcfl, typecheck_stdlc, typecheck_stlc, BJudgement, Context,
    GradedContext, TypeError,
};
pub use parse::{parse, parse_context, parse_type, Dialect, SyntaxError};
pub use pretty::pretty;
pub use term::{fresh, Bias, Reading, Term, Weight};
pub use translate::{translate_nondet, translate_prob};
pub use types::Type;
