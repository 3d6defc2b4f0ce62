//! Dynamical r-matrices over `g*` and their Yang-Baxter residuals.

use num_traits::Zero;
use thiserror::Error;

use crate::lie::tensor::bracket_12_23;
use crate::lie::{LieAlgebra, Quasitriangular, Tensor};
use crate::scalar::{qi, Scalar, Q};
use crate::series::analytic::{apply_analytic, phi, psi_nu};
use crate::series::{SeriesError, TensorSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RMatrixError {
    #[error("{0} r-matrix is not antisymmetric")]
    NotAntisymmetric(Provenance),
    #[error("degree-0 CDYBE defect is not a multiple of [t12,t23] (index {index:?})")]
    NotProportional { index: Vec<usize> },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Am,
    AmNu,
    Fm,
    Twisted,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Am => "AM",
            Provenance::AmNu => "AM_nu",
            Provenance::Fm => "FM",
            Provenance::Twisted => "twisted",
        })
    }
}

/// An antisymmetric element of `∧²g ⊗ Ŝ(g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DynamicalRMatrix {
    value: TensorSeries,
    provenance: Provenance,
}

impl DynamicalRMatrix {
    pub fn new(value: TensorSeries, provenance: Provenance) -> Result<Self, RMatrixError> {
        assert_eq!(value.rank(), 2);
        if !is_antisymmetric(&value) {
            return Err(RMatrixError::NotAntisymmetric(provenance));
        }
        Ok(DynamicalRMatrix { value, provenance })
    }

    pub fn value(&self) -> &TensorSeries {
        &self.value
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn trunc(&self) -> usize {
        self.value.trunc()
    }
}

pub fn is_antisymmetric<T: Scalar>(x: &TensorSeries<T>) -> bool {
    x.add(&x.flip()).is_zero()
}

/// Taylor coefficients of `φ(z) = −1/z + ½ coth(z/2)` through `z^n`.
pub fn phi_coefficients(n: usize) -> Vec<Q> {
    phi(n)
}

/// `λ∨ = (λ ⊗ id)(t) = Σ t^{ij} λ_i e_j`.
pub fn lambda_vee(qt: &Quasitriangular, n: usize) -> TensorSeries {
    TensorSeries::constant(qt.t(), n).contract_lambda(0)
}

/// `(id ⊗ ψ(ad x))(t)`.
fn t_twisted_by(qt: &Quasitriangular, psi: &[Q], x: &TensorSeries) -> TensorSeries {
    let t = TensorSeries::constant(qt.t(), x.trunc());
    apply_analytic(qt.algebra(), psi, x, &t, 1).expect("argument has no constant term")
}

/// `ρ_AM(λ) = (id ⊗ φ(ad λ∨))(t)` through degree `n`.
pub fn rho_am(qt: &Quasitriangular, n: usize) -> DynamicalRMatrix {
    let value = t_twisted_by(qt, &phi(n), &lambda_vee(qt, n));
    DynamicalRMatrix::new(value, Provenance::Am).expect("ρ_AM is antisymmetric")
}

/// `ρ_AM^ν(λ) = 2ν ρ_AM(2νλ)`.
pub fn rho_am_nu(qt: &Quasitriangular, nu: &Q, n: usize) -> DynamicalRMatrix {
    let two_nu = qi(2) * nu;
    let value = rho_am(qt, n).value.rescale_argument(&two_nu).scale_q(&two_nu);
    DynamicalRMatrix::new(value, Provenance::AmNu).expect("rescaling keeps antisymmetry")
}

/// `Z_ν = (ν² − ¼)[t^{12}, t^{23}]`.
pub fn z_nu(qt: &Quasitriangular, nu: &Q) -> Tensor {
    t12_t23(qt).scale(&(nu * nu - Q::new(1.into(), 4.into())))
}

/// `[t^{12}, t^{23}]`.
pub fn t12_t23(qt: &Quasitriangular) -> Tensor {
    bracket_12_23(qt.algebra(), qt.t(), qt.t())
}

/// `[ρ^{12},ρ^{13}] + [ρ^{12},ρ^{23}] + [ρ^{13},ρ^{23}]` with polynomial parts
/// multiplied.
pub fn cyb_series<T: Scalar>(alg: &LieAlgebra, rho: &TensorSeries<T>) -> TensorSeries<T> {
    assert_eq!(rho.rank(), 2);
    // slots of ρ⊗ρ: (a, b, c, d) for a⊗b and c⊗d
    let rr = rho.outer(rho);
    let t12_13 = rr.bracket_slots(alg, 0, 2);
    let t12_23 = rr.bracket_slots(alg, 1, 2);
    let t13_23 = rr.bracket_slots(alg, 1, 3).permute(&[0, 2, 1]);
    t12_13.add(&t12_23).add(&t13_23)
}

/// `CYB(ρ) − Alt(dρ) − Z`, valid through degree `N − 1`.
pub fn cdybe_residual(alg: &LieAlgebra, rho: &TensorSeries, z: &Tensor) -> TensorSeries {
    let n = rho.trunc().saturating_sub(1);
    cyb_series(alg, rho)
        .truncated(n)
        .sub(&rho.differential().alternate())
        .sub(&TensorSeries::constant(z, n))
}

/// The constant `c` with `CYB(ρ_AM) − Alt(dρ_AM) = c [t^{12}, t^{23}]` in
/// degree 0, or `None` when `[t^{12}, t^{23}] = 0` leaves it undetermined.
pub fn derive_cdybe_constant(qt: &Quasitriangular) -> Result<Option<Q>, RMatrixError> {
    let rho = rho_am(qt, 2);
    let defect = cyb_series(qt.algebra(), rho.value())
        .sub(&rho.value().differential().alternate())
        .constant_part();
    let base = t12_t23(qt);
    let Some((idx, pivot)) = base.first_nonzero() else {
        return match defect.first_nonzero() {
            None => Ok(None),
            Some((index, _)) => Err(RMatrixError::NotProportional { index }),
        };
    };
    let c = defect.get(&idx) / pivot;
    if let Some((index, _)) = defect.sub(&base.scale(&c)).first_nonzero() {
        return Err(RMatrixError::NotProportional { index });
    }
    Ok(Some(c))
}

/// `ρ_FM = (id ⊗ ψ_ν(ad x̄))(t)` with `ψ_ν(z) = −ν coth(νz) + ½ coth(z/2)`;
/// `ν = 0` uses the limit `ψ_0 = φ`.
pub fn rho_fm_of_x(
    qt: &Quasitriangular,
    xbar: &TensorSeries,
    nu: &Q,
    n: usize,
) -> Result<DynamicalRMatrix, RMatrixError> {
    let psi = if nu.is_zero() {
        phi(n)
    } else {
        psi_nu(nu, n)?
    };
    let x = xbar.clone().truncated(n);
    if x.min_degree() == Some(0) {
        return Err(SeriesError::NonPositiveDegreeInput.into());
    }
    DynamicalRMatrix::new(t_twisted_by(qt, &psi, &x), Provenance::Fm)
}

/// `{ρ, λ_a} − (ad e_a ⊗ 1 + 1 ⊗ ad e_a)ρ` for every basis `a`; zero iff `ρ`
/// is infinitesimally `G`-equivariant.
pub fn equivariance_defect(alg: &LieAlgebra, rho: &TensorSeries) -> Vec<TensorSeries> {
    (0..alg.dim())
        .map(|a| {
            rho.coadjoint_derivation(alg, a)
                .sub(&rho.diagonal_ad(alg, a))
        })
        .collect()
}
