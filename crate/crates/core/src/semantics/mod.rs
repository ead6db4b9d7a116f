//! The tropical weighted relational model: finite point sets, coKleisli
//! matrices with parametric entries, and the interpretation of terms.

mod ccc;
mod interpret;
pub mod linear;
mod matrix;
mod point;

pub use ccc::{
    combine_app, curry, dapp_combine, diff_op, ev, identity, kleisli_compose, pairing, proj, uncurry, Model,
};
pub use interpret::{interpret, InterpretOptions, Interpretation};
pub use linear::RelMatrix;
pub use matrix::{
    check_boolean, empty_row, matrix_apply, row_add, row_size, rows_within, unit_row, Diagnostics, InputVector, Row,
    TropMatrix, Warning,
};
pub use point::{count_msets, msets_upto, Caps, Enumerator, Mset, Obj, SemPoint};

use thiserror::Error;

use crate::syntax::TypeError;
use crate::tropical::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("enumerating {obj} needs {count} points, above the enumeration limit")]
    EnumerationTooLarge { obj: String, count: u64 },
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
