//! Noncommutative words, normal-ordered differential operators and graded
//! operators on series in `x`.

pub mod diffop;
pub mod graded;
pub mod nc;
pub mod identities;

pub use diffop::{apply_tn, build_tn, normal_order, DiffOperator, OperatorTerm, Substitution};
pub use graded::{graded_resolvent, resolvent_series, ElemOp, EvalPoint, GradedOperator, Part};
pub use nc::{nu_bar_step, nu_step, Letter, NCPoly, NCWord, Route};
pub use identities::{divided_difference_check, tn_integral_oracle};
