//! Finite-dimensional Lie algebras with a quasitriangular structure.

mod algebra;
pub mod builtin;
pub mod file;
mod quasi;
pub mod tensor;

pub use algebra::LieAlgebra;
pub use quasi::{cyb, Quasitriangular};
pub use tensor::Tensor;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("algebra must have dimension at least 1")]
    EmptyAlgebra,
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("structure constant c^{k}_({i},{j}) listed twice with different values")]
    DuplicateEntry { i: usize, j: usize, k: usize },
    #[error("antisymmetry violated: c^{k}_({i},{j}) != -c^{k}_({j},{i})")]
    AntisymmetryViolation { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails on basis triple ({i},{j},{k}) in component {component}")]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        component: usize,
    },
    #[error("CYB(r) is nonzero at index {index:?}")]
    CybViolation { index: Vec<usize> },
    #[error("t = r + r^21 is not invariant under basis element {basis} (component {index:?})")]
    NotInvariant { basis: usize, index: Vec<usize> },
    #[error("r-matrix has dimension {found}, algebra has {expected}")]
    ShapeMismatch { expected: usize, found: usize },
}
