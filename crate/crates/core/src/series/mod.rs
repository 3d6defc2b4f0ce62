//! Truncated formal tensor series and the calculus built on them.

pub mod analytic;
pub mod bch;
pub mod formal_map;
pub mod group;
pub mod monomial;
pub mod tensor_series;

pub use bch::{bch, bracket};
pub use formal_map::{ad_star_diffeo, substitute, FormalDiffeo, FormalMap};
pub use group::GroupMap;
pub use monomial::{Key, Monomial, Slots};
pub use tensor_series::{lambda_bracket_last, pair_all, TensorSeries};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("input series has a constant term; the expansion would not terminate")]
    NonPositiveDegreeInput,
    #[error("analytic function has a pole at the origin")]
    PoleAtZero,
    #[error("nu = 0 has no coth form; use the phi limit")]
    MalformedNu,
}
