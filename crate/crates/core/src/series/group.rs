//! Formal maps `g* → G` with value `1` at the origin, in log-coordinates.

use super::analytic::{apply_analytic, dexp, exp_scaled};
use super::{bch, SeriesError, TensorSeries};
use crate::lie::LieAlgebra;
use crate::scalar::{qi, Scalar, Q};

/// `λ ↦ exp(A(λ))` with `A ∈ g ⊗ Ŝ(g)_{≥1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct GroupMap<T: Scalar = Q> {
    log: TensorSeries<T>,
}

impl<T: Scalar> GroupMap<T> {
    pub fn new(log: TensorSeries<T>) -> Result<Self, SeriesError> {
        assert_eq!(log.rank(), 1, "group map log must have one g slot");
        if log.min_degree() == Some(0) {
            return Err(SeriesError::NonPositiveDegreeInput);
        }
        Ok(GroupMap { log })
    }

    pub fn identity(dim: usize, trunc: usize) -> Self {
        GroupMap {
            log: TensorSeries::zero(dim, 1, trunc),
        }
    }

    pub fn log(&self) -> &TensorSeries<T> {
        &self.log
    }

    pub fn dim(&self) -> usize {
        self.log.dim()
    }

    pub fn trunc(&self) -> usize {
        self.log.trunc()
    }

    pub fn is_identity(&self) -> bool {
        self.log.is_zero()
    }

    /// Pointwise inverse `λ ↦ g(λ)^{-1}`.
    pub fn pointwise_inverse(&self) -> Self {
        GroupMap {
            log: self.log.neg(),
        }
    }

    /// Pointwise product `λ ↦ g(λ) h(λ)`.
    pub fn pointwise_mul(&self, alg: &LieAlgebra, other: &Self) -> Self {
        GroupMap {
            log: bch(alg, &self.log, &other.log).expect("logs have no constant term"),
        }
    }

    /// `g^{-1} ∂_i g ⊗ e_i`, derivative slot last.
    pub fn left_log_derivative(&self, alg: &LieAlgebra) -> TensorSeries<T> {
        let da = self.log.differential();
        apply_analytic(alg, &dexp(&qi(-1), self.trunc()), &self.log, &da, 0)
            .expect("logs have no constant term")
    }

    /// `(∂_i g) g^{-1} ⊗ e_i`, derivative slot last.
    pub fn right_log_derivative(&self, alg: &LieAlgebra) -> TensorSeries<T> {
        let da = self.log.differential();
        apply_analytic(alg, &dexp(&qi(1), self.trunc()), &self.log, &da, 0)
            .expect("logs have no constant term")
    }

    /// `Ad(g(λ))^{±1}` applied to one slot of `x`.
    pub fn adjoint_on_slot(
        &self,
        alg: &LieAlgebra,
        x: &TensorSeries<T>,
        slot: usize,
        inverse: bool,
    ) -> TensorSeries<T> {
        let sign = if inverse { qi(-1) } else { qi(1) };
        let n = x.trunc().min(self.trunc());
        apply_analytic(alg, &exp_scaled(&sign, n), &self.log, x, slot)
            .expect("logs have no constant term")
    }

    /// `Ad(g)^{±1}` on every slot.
    pub fn adjoint(&self, alg: &LieAlgebra, x: &TensorSeries<T>, inverse: bool) -> TensorSeries<T> {
        (0..x.rank()).fold(x.clone(), |acc, s| self.adjoint_on_slot(alg, &acc, s, inverse))
    }
}
