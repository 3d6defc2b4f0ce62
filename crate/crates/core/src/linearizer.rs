//! Successive approximation of `g(λ)` with `(r₀)^g = ρ_AM`.

use serde::Serialize;
use thiserror::Error;

use crate::gauge::ham_residual;
use crate::lie::Quasitriangular;
use crate::linalg::{solve, Matrix, Solution};
use crate::rmatrix::{
    cyb_series, derive_cdybe_constant, equivariance_defect, rho_am, t12_t23, DynamicalRMatrix,
    Provenance, RMatrixError,
};
use crate::gauge::star_product;
use crate::scalar::{q, Q};
use crate::series::tensor_series::slots_of;
use crate::series::{GroupMap, Monomial, TensorSeries};

/// Largest truncation degree accepted by default.
pub const DEFAULT_MAX_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("corrector equation is inconsistent at degree {degree} (rank {rank})")]
    Inconsistent { degree: usize, rank: usize },
    #[error("truncation degree {degree} exceeds the bound {max}")]
    DegreeOverflow { degree: usize, max: usize },
    #[error("truncation degree must be at least 1")]
    ZeroDegree,
    #[error("invariant part is not g-invariant")]
    NotInvariant,
    #[error("log g differs from -r/2 below degree 2")]
    HypothesisViolated,
    #[error("remainder has a component below degree {0}")]
    RemainderTooLow(usize),
    #[error(transparent)]
    RMatrix(#[from] RMatrixError),
}

/// `g₁⁻¹d₂g₁ − g₂⁻¹d₁g₂ + Ad(g⊗g)⁻¹(r₀) + ⟨id⊗id⊗λ, [g₁⁻¹d₃g₁, g₂⁻¹d₃g₂]⟩`,
/// valid through degree `N − 1` for `g` known through `N`.
pub fn twisted_r0(qt: &Quasitriangular, g: &GroupMap) -> DynamicalRMatrix {
    let alg = qt.algebra();
    let n = g.trunc().saturating_sub(1);
    let r0 = TensorSeries::constant(qt.r0(), n);
    let value = ham_residual(alg, g).add(&g.adjoint(alg, &r0, true));
    DynamicalRMatrix::new(value, Provenance::Twisted).expect("twisted r0 is antisymmetric")
}

/// `g₀ = exp(−r/2)`, read as the linear map `λ ↦ −(id ⊗ λ)(r)/2`.
pub fn initial_guess(qt: &Quasitriangular, trunc: usize) -> GroupMap {
    let a = TensorSeries::constant(qt.r(), trunc)
        .contract_lambda(1)
        .scale_q(&q(-1, 2));
    GroupMap::new(a).expect("linear")
}

/// Outcome of one corrector solve.
#[derive(Clone, Debug, PartialEq)]
pub struct Corrector {
    pub beta: TensorSeries,
    pub rank: usize,
    pub nullity: usize,
}

/// `β ↦ dβ − (dβ)^{2,1}` on `g ⊗ S^{d}(g)`, as a matrix between coordinate
/// vectors indexed by `(slot, monomial)` in graded-lex order.
fn corrector_matrix(dim: usize, d: usize) -> (Matrix, Vec<(usize, Monomial)>, Vec<(usize, usize, Monomial)>) {
    let cols: Vec<(usize, Monomial)> = Monomial::all_of_degree(dim, d)
        .into_iter()
        .flat_map(|m| (0..dim).map(move |i| (i, m.clone())))
        .collect();
    let rows: Vec<(usize, usize, Monomial)> = Monomial::all_of_degree(dim, d - 1)
        .into_iter()
        .flat_map(|m| {
            (0..dim).flat_map(move |a| {
                let m = m.clone();
                (0..dim).map(move |b| (a, b, m.clone()))
            })
        })
        .collect();
    let row_index: std::collections::HashMap<(usize, usize, Monomial), usize> = rows
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, r)| (r, k))
        .collect();
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (c, (i, mono)) in cols.iter().enumerate() {
        let mut beta = TensorSeries::<Q>::zero(dim, 1, d);
        beta.add_term(slots_of(&[*i]), mono.clone(), Q::from_integer(1.into()));
        let image = beta.differential().alternate_signed();
        for (k, v) in image.iter() {
            let key = (usize::from(k.slots[0]), usize::from(k.slots[1]), k.mono.clone());
            m[(row_index[&key], c)] = v.clone();
        }
    }
    (m, cols, rows)
}

/// Find `β ∈ g ⊗ S^{d+1}(g)` with `dβ − (dβ)^{2,1} = α` for `α` of pure
/// degree `d`. Free variables are set to zero, pivots taken leftmost in
/// graded-lex column order.
pub fn corrector_solve(alpha: &TensorSeries) -> Result<Corrector, SolverError> {
    assert_eq!(alpha.rank(), 2);
    let dim = alpha.dim();
    let Some(d) = alpha.min_degree() else {
        return Ok(Corrector {
            beta: TensorSeries::zero(dim, 1, alpha.trunc() + 1),
            rank: 0,
            nullity: 0,
        });
    };
    assert!(alpha.degree_part(d) == *alpha, "corrector input must be homogeneous");
    let (m, cols, rows) = corrector_matrix(dim, d + 1);
    let b: Vec<Q> = rows
        .iter()
        .map(|(a, bb, mono)| alpha.coeff(&[*a, *bb], mono.exps()))
        .collect();
    let (x, rank, nullity) = match solve(&m, &b) {
        Solution::Unique(x) => (x, cols.len(), 0),
        Solution::Particular { x, rank, nullity } => (x, rank, nullity),
        Solution::Inconsistent { rank } => return Err(SolverError::Inconsistent { degree: d, rank }),
    };
    let mut beta = TensorSeries::zero(dim, 1, alpha.trunc() + 1);
    for ((i, mono), v) in cols.iter().zip(x) {
        beta.add_term(slots_of(&[*i]), mono.clone(), v);
    }
    Ok(Corrector { beta, rank, nullity })
}

/// One record of the solver trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub degree: usize,
    pub residual_terms: usize,
    pub corrector_rank: usize,
    pub nullity: usize,
}

/// Solver output: `g`, the residual `(r₀)^g − ρ_AM` through degree `N`
/// (the certificate) and the per-degree trace.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub g: GroupMap,
    pub residual: TensorSeries,
    pub trace: Vec<TraceRecord>,
    /// `(g_n, n)` after each step.
    pub states: Vec<(GroupMap, usize)>,
}

pub fn solve_g(qt: &Quasitriangular, n: usize) -> Result<SolveResult, SolverError> {
    solve_g_bounded(qt, n, DEFAULT_MAX_DEGREE)
}

pub fn solve_g_bounded(qt: &Quasitriangular, n: usize, max: usize) -> Result<SolveResult, SolverError> {
    if n == 0 {
        return Err(SolverError::ZeroDegree);
    }
    if n > max {
        return Err(SolverError::DegreeOverflow { degree: n, max });
    }
    let alg = qt.algebra();
    let target = rho_am(qt, n);
    let mut g = initial_guess(qt, n + 1);
    let mut trace = Vec::new();
    let mut states = vec![(g.clone(), 0)];
    for step in 0..n {
        let rho = twisted_r0(qt, &g);
        let diff = rho.value().sub(target.value());
        debug_assert!(diff.min_degree().map_or(true, |d| d > step));
        let alpha = diff.degree_part(step + 1);
        let corr = corrector_solve(&alpha)?;
        trace.push(TraceRecord {
            degree: step + 1,
            residual_terms: alpha.len(),
            corrector_rank: corr.rank,
            nullity: corr.nullity,
        });
        if !corr.beta.is_zero() {
            let correction = GroupMap::new(corr.beta.neg()).expect("β has degree ≥ 2");
            g = star_product(alg, &correction, &g);
        }
        states.push((g.clone(), step + 1));
    }
    let residual = twisted_r0(qt, &g).value().sub(target.value());
    Ok(SolveResult {
        g,
        residual,
        trace,
        states,
    })
}

/// `Σ r^{ij} e_i ⊗ D_j(α)` where `D_j = ad e_j ⊗ 1 + 1 ⊗ ad e_j + {λ_j, ·}`
/// is the diagonal action of `e_j` including the coadjoint action on `λ`:
/// the classical `[r^{1,234}, α^{2,3,4}]`.
pub fn r_bracket(qt: &Quasitriangular, alpha: &TensorSeries) -> TensorSeries {
    let alg = qt.algebra();
    let defects = equivariance_defect(alg, alpha);
    let mut out = TensorSeries::zero(alpha.dim(), 3, alpha.trunc());
    for (idx, c) in qt.r().entries() {
        let (i, j) = (idx[0], idx[1]);
        let dj = defects[j].neg();
        let ei = TensorSeries::basis(alpha.dim(), i, alpha.trunc());
        out.add_assign(&ei.outer(&dj).scale_q(c));
    }
    out
}

/// `(CYB(ρ) − Alt(dρ)) − (Z − ½Alt[r^{1,234}, α^{2,3,4}])` through degree `n`,
/// with `ρ = ρ_inv + α`, `α` of degree `≥ n` and `Z = c[t^{12},t^{23}]` for
/// the constant derived from `ρ_AM`.
pub fn lemma1_residual(
    qt: &Quasitriangular,
    g: &GroupMap,
    rho_inv: &TensorSeries,
    alpha: &TensorSeries,
    n: usize,
) -> Result<TensorSeries, SolverError> {
    let alg = qt.algebra();
    let expected_low = initial_guess(qt, 1);
    if g.log().up_to_degree(1).truncated(1) != *expected_low.log() {
        return Err(SolverError::HypothesisViolated);
    }
    if equivariance_defect(alg, rho_inv).iter().any(|d| !d.is_zero()) {
        return Err(SolverError::NotInvariant);
    }
    if alpha.min_degree().is_some_and(|d| d < n) {
        return Err(SolverError::RemainderTooLow(n));
    }
    let c = derive_cdybe_constant(qt)?.unwrap_or_else(|| Q::from_integer(0.into()));
    let rho = rho_inv.add(alpha).truncated(n + 1);
    let lhs = cyb_series(alg, &rho)
        .truncated(n)
        .sub(&rho.differential().alternate());
    let z = TensorSeries::constant(&t12_t23(qt).scale(&c), n);
    let rhs = z.sub(&r_bracket(qt, &alpha.clone().truncated(n)).alternate().scale_q(&q(1, 2)));
    Ok(lhs.sub(&rhs).truncated(n))
}
