//! Formula families, the XT-property and a brute-force evaluator.

mod eval;
mod gen;
mod xt;

pub use eval::{evaluate_semantics, TooLarge, DEFAULT_EVAL_BOUND};
pub use gen::{generate, Family, FamilyError, FamilySpec};
pub use xt::{xt_check, XtReport, XtViolation};
