//! Built-in algebras.

use super::{LieAlgebra, Quasitriangular, Tensor};
use crate::scalar::{q, qi};

pub const NAMES: &[&str] = &["sl2", "abelian1", "abelian2", "abelian3"];

/// `sl2` with basis `(e, f, h)`, `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`
/// and `r = e⊗f + ¼ h⊗h`.
pub fn sl2() -> Quasitriangular {
    let labels = ["e", "f", "h"].iter().map(|s| s.to_string()).collect();
    let alg = LieAlgebra::from_entries(
        labels,
        &[(2, 0, 0, qi(2)), (2, 1, 1, qi(-2)), (0, 1, 2, qi(1))],
    )
    .expect("sl2 structure constants");
    let mut r = Tensor::zeros(2, 3);
    r.set(&[0, 1], qi(1));
    r.set(&[2, 2], q(1, 4));
    Quasitriangular::new(alg, r).expect("standard sl2 r-matrix")
}

/// Abelian algebra of dimension `dim` with `r = 0`.
pub fn abelian(dim: usize) -> Quasitriangular {
    Quasitriangular::new(LieAlgebra::abelian(dim), Tensor::zeros(2, dim))
        .expect("zero r-matrix")
}

pub fn by_name(name: &str) -> Option<Quasitriangular> {
    match name {
        "sl2" => Some(sl2()),
        "abelian1" => Some(abelian(1)),
        "abelian2" => Some(abelian(2)),
        "abelian3" => Some(abelian(3)),
        _ => None,
    }
}
