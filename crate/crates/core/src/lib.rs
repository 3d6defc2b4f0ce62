//! Exact formal linearization of the dual Poisson-Lie group of a
//! quasitriangular Lie bialgebra.

pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod series;
pub mod rmatrix;
pub mod gauge;
pub mod linearizer;
pub mod poisson;
pub mod report;
