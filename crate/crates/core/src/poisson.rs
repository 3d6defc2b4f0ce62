//! Brackets on `g*` and on `G` in exponential coordinates, the maps `a`
//! and `b`, and the comparison checks built on them.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gauge::{act_on_solution, star_product, HamElement};
use crate::lie::{LieAlgebra, Quasitriangular};
use crate::rmatrix::{lambda_vee, rho_am, rho_am_nu, rho_fm_of_x, RMatrixError};
use crate::scalar::{qi, Q};
use crate::series::analytic::{apply_analytic, half_z_coth_half, phi, rescale, z_exp_over_sinh};
use crate::series::{
    ad_star_diffeo, bch, lambda_bracket_last, pair_all, substitute, FormalMap, GroupMap,
    SeriesError, TensorSeries,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error("t is degenerate, so b cannot be inverted")]
    NotFactorizable,
    #[error("gauge element is not certified Hamiltonian")]
    NotHamiltonian,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    RMatrix(#[from] RMatrixError),
}

/// Log-coordinates `ξ(λ)` of a point of `G*`; slot index `i` is the
/// `ε^i` component.
#[derive(Clone, Debug, PartialEq)]
pub struct DualSeries(pub TensorSeries);

impl DualSeries {
    pub fn series(&self) -> &TensorSeries {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BracketKind {
    Kks,
    StsExp,
    Fm2,
    Pushforward,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BracketEntry {
    pub xi: usize,
    pub eta: usize,
    pub value: TensorSeries,
}

/// One series per ordered pair of dual basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketTable {
    pub kind: BracketKind,
    pub entries: Vec<BracketEntry>,
}

impl BracketTable {
    pub fn all_zero(&self) -> bool {
        self.entries.iter().all(|e| e.value.is_zero())
    }

    pub fn get(&self, xi: usize, eta: usize) -> Option<&TensorSeries> {
        self.entries
            .iter()
            .find(|e| e.xi == xi && e.eta == eta)
            .map(|e| &e.value)
    }

    /// Lowest degree carrying a nonzero residual, over all pairs.
    pub fn first_nonzero_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(|e| e.value.min_degree()).min()
    }
}

fn dual_basis(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![qi(0); dim];
    v[i] = qi(1);
    v
}

fn pairs(dim: usize) -> Vec<(usize, usize)> {
    (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).collect()
}

/// `{f, h}(λ) = ⟨λ, [df(λ), dh(λ)]⟩`.
pub fn kks_bracket(alg: &LieAlgebra, f: &TensorSeries, h: &TensorSeries) -> TensorSeries {
    assert!(f.rank() == 0 && h.rank() == 0);
    lambda_bracket_last(alg, &f.differential(), &h.differential())
}

/// The rank-2 series `W(x)` with `{F_ξ, F_η}_G(e^x) = ⟨ξ ⊗ η, W(x)⟩`:
/// `(ad x ⊗ ad x)((1 ⊗ φ(ad x))t − r₀) + (ad x ⊗ 1)t`, with the coadjoint
/// actions moved across the pairing, `⟨ad*(x)ξ, a⟩ = −⟨ξ, [x, a]⟩`.
/// The `r₀` sign matches `sts_bracket_raw`.
pub fn sts_tensor(qt: &Quasitriangular, n: usize) -> TensorSeries {
    let alg = qt.algebra();
    let x = TensorSeries::identity_field(qt.dim(), n);
    let t = TensorSeries::constant(qt.t(), n);
    let r0 = TensorSeries::constant(qt.r0(), n);
    let inner = apply_analytic(alg, &phi(n), &x, &t, 1)
        .expect("identity field has no constant term")
        .sub(&r0);
    inner
        .ad_on_slot(alg, &x, 0)
        .ad_on_slot(alg, &x, 1)
        .add(&t.ad_on_slot(alg, &x, 0))
}

/// `{F_ξ, F_η}_G` as a series in `x = log g`, for dual basis indices.
pub fn sts_bracket_exp(qt: &Quasitriangular, xi: usize, eta: usize, n: usize) -> TensorSeries {
    let dim = qt.dim();
    sts_tensor(qt, n)
        .pair_slot(0, &dual_basis(dim, xi))
        .pair_slot(0, &dual_basis(dim, eta))
}

/// `(d_L F_ξ, d_R F_ξ)` at `e^x` as `g*`-valued series in `x`, from
/// `f(±½ ad* x)(ξ)` with `f(z) = z e^z / sinh z`.
pub fn dl_dr_differentials(alg: &LieAlgebra, xi: &[Q], n: usize) -> (TensorSeries, TensorSeries) {
    let dim = alg.dim();
    let x = TensorSeries::identity_field(dim, n);
    let f = z_exp_over_sinh(n);
    // ⟨f(s ad* x)ξ, a⟩ = ⟨ξ, f(−s ad x) a⟩
    let side = |s: Q| {
        let coeffs = rescale(&f, &s);
        let comps: Vec<_> = (0..dim)
            .map(|a| {
                let ea = TensorSeries::basis(dim, a, n);
                apply_analytic(alg, &coeffs, &x, &ea, 0)
                    .expect("identity field has no constant term")
                    .pair_slot(0, xi)
            })
            .collect();
        TensorSeries::from_components(&comps)
    };
    (side(Q::new((-1).into(), 2.into())), side(Q::new(1.into(), 2.into())))
}

/// The STS bracket `⟨(d_R − d_L)F ⊗ d_L H, r⟩ + ⟨(d_R − d_L)F ⊗ d_R H, r^{2,1}⟩`
/// on coordinate functions, straight from the definition.
pub fn sts_bracket_raw(qt: &Quasitriangular, xi: usize, eta: usize, n: usize) -> TensorSeries {
    let alg = qt.algebra();
    let dim = qt.dim();
    let (dl_f, dr_f) = dl_dr_differentials(alg, &dual_basis(dim, xi), n);
    let (dl_h, dr_h) = dl_dr_differentials(alg, &dual_basis(dim, eta), n);
    let u = dr_f.sub(&dl_f);
    let r = TensorSeries::constant(qt.r(), n);
    let r21 = TensorSeries::constant(&qt.r().flip(), n);
    pair_all(&u.outer(&dl_h), &r).add(&pair_all(&u.outer(&dr_h), &r21))
}

/// `(ad x ⊗ ½ ad x coth(½ ad x))(t) − (ad x)^{⊗2}(r₀)`, same `r₀` sign as
/// `sts_tensor`.
pub fn fm2_tensor(qt: &Quasitriangular, n: usize) -> TensorSeries {
    let alg = qt.algebra();
    let x = TensorSeries::identity_field(qt.dim(), n);
    let t = TensorSeries::constant(qt.t(), n);
    let r0 = TensorSeries::constant(qt.r0(), n);
    apply_analytic(alg, &half_z_coth_half(n), &x, &t, 1)
        .expect("identity field has no constant term")
        .ad_on_slot(alg, &x, 0)
        .sub(&r0.ad_on_slot(alg, &x, 0).ad_on_slot(alg, &x, 1))
}

/// `⟨df(x) ⊗ dh(x), fm2_tensor(x)⟩`.
pub fn fm2_bracket(qt: &Quasitriangular, f: &TensorSeries, h: &TensorSeries) -> TensorSeries {
    let n = f.trunc().min(h.trunc());
    let w = fm2_tensor(qt, n);
    pair_all(&f.differential().outer(&h.differential()), &w)
}

/// `log a(λ) = Ad(g(λ))(λ∨)`.
pub fn a_map(qt: &Quasitriangular, g: &GroupMap) -> TensorSeries {
    let lv = lambda_vee(qt, g.trunc());
    g.adjoint_on_slot(qt.algebra(), &lv, 0, false)
}

/// `log b(e^ξ) = log(e^{L(ξ)} e^{−R(ξ)})`.
pub fn b_log(qt: &Quasitriangular, xi: &DualSeries) -> Result<TensorSeries, PoissonError> {
    let l = xi.0.map_slot(0, qt.l_map());
    let r = xi.0.map_slot(0, qt.r_map());
    Ok(bch(qt.algebra(), &l, &r.neg())?)
}

/// The `ξ` with `b_log(ξ) = X`, by `ξ ← t⁻¹(X − (b_log(ξ) − tξ))`.
pub fn invert_b(qt: &Quasitriangular, x: &TensorSeries) -> Result<DualSeries, PoissonError> {
    let t_inv = qt.t_inverse().ok_or(PoissonError::NotFactorizable)?;
    if x.min_degree() == Some(0) {
        return Err(SeriesError::NonPositiveDegreeInput.into());
    }
    let mut xi = x.map_slot(0, t_inv);
    for _ in 0..=x.trunc() {
        let higher = b_log(qt, &DualSeries(xi.clone()))?.sub(&xi.map_slot(0, qt.t_map()));
        let next = x.sub(&higher).map_slot(0, t_inv);
        if next == xi {
            break;
        }
        xi = next;
    }
    Ok(DualSeries(xi))
}

/// `g*(λ) = b⁻¹(a(λ))` in log-coordinates.
pub fn g_star(qt: &Quasitriangular, g: &GroupMap) -> Result<DualSeries, PoissonError> {
    invert_b(qt, &a_map(qt, g))
}

/// `{f_ξ, f_η}_{g*} + {F_ξ, F_η}_G ∘ log a` for all pairs, through degree
/// `N − 1`, where `f_ξ = F_ξ ∘ a`. Zero means `a` is anti-Poisson, so
/// `λ ↦ a(−λ)` is Poisson.
pub fn pushforward_check(qt: &Quasitriangular, g: &GroupMap, n: usize) -> BracketTable {
    let alg = qt.algebra();
    let dim = qt.dim();
    let n = n.min(g.trunc());
    let log_a = a_map(qt, g).truncated(n);
    let sigma = FormalMap::from_vector_series(&log_a);
    let w = sts_tensor(qt, n);
    let f: Vec<TensorSeries> = (0..dim).map(|i| log_a.pair_slot(0, &dual_basis(dim, i))).collect();
    let entries = pairs(dim)
        .into_par_iter()
        .map(|(i, j)| {
            let lhs = kks_bracket(alg, &f[i], &f[j]);
            let wij = w
                .pair_slot(0, &dual_basis(dim, i))
                .pair_slot(0, &dual_basis(dim, j));
            let rhs = substitute(&wij, &sigma);
            BracketEntry {
                xi: i,
                eta: j,
                value: lhs.add(&rhs).truncated(n.saturating_sub(1)),
            }
        })
        .collect();
    BracketTable {
        kind: BracketKind::Pushforward,
        entries,
    }
}

/// `g*_{α * g} − g*_g ∘ θ(α)` for any `α ∈ Map₀`; zero for Hamiltonian `α`
/// and a solution `g`.
pub fn equivariance_residual(
    qt: &Quasitriangular,
    alpha: &GroupMap,
    g: &GroupMap,
) -> Result<TensorSeries, PoissonError> {
    let alg = qt.algebra();
    let moved = g_star(qt, &star_product(alg, alpha, g))?;
    let base = g_star(qt, g)?;
    let theta = ad_star_diffeo(alg, alpha);
    Ok(moved.0.sub(&substitute(&base.0, &theta)))
}

pub fn equivariance_check(
    qt: &Quasitriangular,
    alpha: &HamElement,
    g: &GroupMap,
) -> Result<TensorSeries, PoissonError> {
    act_on_solution(qt.algebra(), alpha, g).map_err(|_| PoissonError::NotHamiltonian)?;
    equivariance_residual(qt, alpha.group_map(), g)
}

/// `(ρ_AM − ρ_AM^ν)(Ad*(g(λ))λ) − ρ_FM(g*(λ))`, with `ρ_FM` evaluated at
/// `x̄ = log(L(g*) R(g*)⁻¹)`.
pub fn fm_identity_check(
    qt: &Quasitriangular,
    g: &GroupMap,
    nu: &Q,
) -> Result<TensorSeries, PoissonError> {
    let alg = qt.algebra();
    let n = g.trunc();
    let diff = rho_am(qt, n).value().sub(rho_am_nu(qt, nu, n).value());
    let lhs = substitute(&diff, &ad_star_diffeo(alg, g));
    let xbar = b_log(qt, &g_star(qt, g)?)?;
    let rhs = rho_fm_of_x(qt, &xbar, nu, n)?;
    Ok(lhs.sub(rhs.value()).truncated(n))
}
