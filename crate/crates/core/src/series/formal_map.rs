//! Formal maps `g* → g*` (or into any coordinate space of the same
//! dimension) with zero constant term, and substitution into series.

use std::collections::HashMap;

use super::analytic::{apply_analytic, exp_scaled};
use super::group::GroupMap;
use super::monomial::{Monomial, Slots};
use super::TensorSeries;
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalar::{qi, Scalar, Q};

/// `λ ↦ (σ_0(λ), …, σ_{n−1}(λ))` with every `σ_i` vanishing at the origin.
#[derive(Clone, PartialEq, Debug)]
pub struct FormalMap<T: Scalar = Q> {
    comps: Vec<TensorSeries<T>>,
}

/// A formal map whose linear part is the identity.
pub type FormalDiffeo<T = Q> = FormalMap<T>;

impl<T: Scalar> FormalMap<T> {
    pub fn identity(dim: usize, trunc: usize) -> Self {
        FormalMap {
            comps: TensorSeries::identity_field(dim, trunc).components(),
        }
    }

    pub fn from_components(comps: Vec<TensorSeries<T>>) -> Self {
        for c in &comps {
            assert_eq!(c.rank(), 0);
            assert_ne!(c.min_degree(), Some(0), "formal map must fix the origin");
        }
        FormalMap { comps }
    }

    /// Read slot index `i` of a rank-1 series as coordinate `i`.
    pub fn from_vector_series(v: &TensorSeries<T>) -> Self {
        Self::from_components(v.components())
    }

    pub fn to_vector_series(&self) -> TensorSeries<T> {
        TensorSeries::from_components(&self.comps)
    }

    pub fn components(&self) -> &[TensorSeries<T>] {
        &self.comps
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn trunc(&self) -> usize {
        self.comps.iter().map(|c| c.trunc()).min().unwrap_or(0)
    }

    /// `σ ∘ τ`.
    pub fn compose(&self, inner: &Self) -> Self {
        FormalMap {
            comps: self.comps.iter().map(|c| substitute(c, inner)).collect(),
        }
    }
}

impl FormalMap<Q> {
    /// Matrix of the linear part: `m[(i, j)]` is the `λ_j` coefficient of `σ_i`.
    pub fn linear_part(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, c) in self.comps.iter().enumerate() {
            for (k, v) in c.degree_part(1).iter() {
                let j = k.mono.exps().iter().position(|&e| e == 1).expect("linear monomial");
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn has_identity_linear_part(&self) -> bool {
        self.linear_part() == Matrix::identity(self.dim())
    }
}

/// `f ∘ σ`: every `λ_i` in the polynomial part of `f` is replaced by `σ_i`.
pub fn substitute<T: Scalar>(f: &TensorSeries<T>, sigma: &FormalMap<T>) -> TensorSeries<T> {
    assert_eq!(f.dim(), sigma.dim());
    let trunc = f.trunc().min(sigma.trunc());
    let mut cache: HashMap<Monomial, TensorSeries<T>> = HashMap::new();
    let mut out = TensorSeries::zero(f.dim(), f.rank(), trunc);
    for (k, v) in f.iter() {
        if k.mono.degree() > trunc {
            continue;
        }
        let value = power(&k.mono, sigma, trunc, &mut cache);
        for (kv, c) in value.iter() {
            out.add_term(k.slots.clone(), kv.mono.clone(), c.mul_ref(v));
        }
    }
    out
}

fn power<T: Scalar>(
    m: &Monomial,
    sigma: &FormalMap<T>,
    trunc: usize,
    cache: &mut HashMap<Monomial, TensorSeries<T>>,
) -> TensorSeries<T> {
    if let Some(v) = cache.get(m) {
        return v.clone();
    }
    let dim = sigma.dim();
    let value = match m.exps().iter().position(|&e| e > 0) {
        None => {
            let mut one = TensorSeries::zero(dim, 0, trunc);
            one.add_term(Slots::new(), Monomial::one(dim), T::one());
            one
        }
        Some(j) => {
            let (_, rest) = m.derive(j).expect("positive exponent");
            let base = power(&rest, sigma, trunc, cache);
            base.mul_function(&sigma.comps[j].clone().truncated(trunc))
        }
    };
    cache.insert(m.clone(), value.clone());
    value
}

/// `θ(g): λ ↦ Ad*(g(λ))(λ)`, i.e. `⟨θ(g)(λ), e_k⟩ = ⟨λ, Ad(g(λ))^{-1} e_k⟩`.
pub fn ad_star_diffeo<T: Scalar>(alg: &LieAlgebra, g: &GroupMap<T>) -> FormalDiffeo<T> {
    let n = g.trunc();
    let psi = exp_scaled(&qi(-1), n);
    let comps = (0..g.dim())
        .map(|k| {
            let ek = TensorSeries::basis(g.dim(), k, n);
            apply_analytic(alg, &psi, g.log(), &ek, 0)
                .expect("logs have no constant term")
                .contract_lambda(0)
        })
        .collect();
    FormalMap { comps }
}
