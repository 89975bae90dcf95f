//! Hermitian numerical ranges and null-ranges of matrices over finite fields.

pub mod error;
pub mod fields;

pub use error::{Error, Result};
pub use fields::{FieldCtx, FieldElem, FieldOptions, FieldSpec};
pub mod hermitian;

pub use hermitian::{ConeMode, ConeSlice, EnumOptions, HermMatrix, Vector};
pub mod ranges;
pub use ranges::{FiberCount, RangeKind, RangeMode, RangeSet, SubfieldProfile};
pub mod classify;
pub use classify::{Basis, Claim, Prediction, Target, Verdict};
pub mod verify;
pub mod io;
pub mod cli;
