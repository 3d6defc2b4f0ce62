//! The group `Map₀(g*, G)` with its twisted product, the Hamiltonian
//! subgroup, and its action on solutions.

use thiserror::Error;

use crate::lie::LieAlgebra;
use crate::scalar::{qi, Jet, Scalar, Q};
use crate::series::analytic::{apply_analytic, dexp_inverse};
use crate::series::{
    ad_star_diffeo, bch, lambda_bracket_last, substitute, GroupMap, SeriesError, TensorSeries,
};

/// Jet order of the flow parameter; truncations up to `FLOW_ORDER − 1`
/// are supported by [`exp_star`].
pub const FLOW_ORDER: usize = 8;

pub type FlowJet = Jet<FLOW_ORDER>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaugeError {
    #[error("field is not Hamiltonian: Alt(dv) is nonzero at degree {degree}")]
    NotHamiltonian { degree: usize },
    #[error("element is not certified Hamiltonian")]
    NotCertified,
    #[error("truncation {trunc} exceeds the flow order {max}")]
    DegreeOverflow { trunc: usize, max: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// An element of `Map₀` together with its certified membership in the
/// Hamiltonian subgroup.
#[derive(Clone, Debug, PartialEq)]
pub struct HamElement {
    g: GroupMap,
    certified: bool,
}

impl HamElement {
    /// Check `ham_residual = 0` once and remember the outcome.
    pub fn certify(alg: &LieAlgebra, g: GroupMap) -> Self {
        let certified = ham_residual(alg, &g).is_zero();
        HamElement { g, certified }
    }

    pub fn identity(dim: usize, trunc: usize) -> Self {
        HamElement {
            g: GroupMap::identity(dim, trunc),
            certified: true,
        }
    }

    pub fn group_map(&self) -> &GroupMap {
        &self.g
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }
}

/// `(g₁ * g₂)(λ) = g₂(Ad*(g₁(λ))λ) g₁(λ)`.
pub fn star_product<T: Scalar>(alg: &LieAlgebra, g1: &GroupMap<T>, g2: &GroupMap<T>) -> GroupMap<T> {
    let moved = substitute(g2.log(), &ad_star_diffeo(alg, g1));
    GroupMap::new(bch(alg, &moved, g1.log()).expect("logs have no constant term"))
        .expect("product fixes the origin")
}

/// Inverse for the twisted product, by fixed-point iteration on
/// `h * g = 1`, i.e. `log h = −log g ∘ θ(h)`.
pub fn star_inverse(alg: &LieAlgebra, g: &GroupMap) -> GroupMap {
    let mut h = g.pointwise_inverse();
    for _ in 0..=g.trunc() {
        let theta = ad_star_diffeo(alg, &h);
        let next = GroupMap::new(substitute(g.log(), &theta).neg()).expect("fixes the origin");
        if next == h {
            break;
        }
        h = next;
    }
    h
}

/// `⟨id⊗id⊗λ, [g₂⁻¹d₃g₂, g₁⁻¹d₃g₁]⟩`, i.e. `−Σ ℓ_i ⊗ ℓ_j ⟨λ, [ℓ'_i, ℓ'_j]⟩`
/// for `x = Σ ℓ ⊗ ℓ'` with the derivative in the last slot.
pub fn lambda_commutator<T: Scalar>(alg: &LieAlgebra, ld: &TensorSeries<T>) -> TensorSeries<T> {
    lambda_bracket_last(alg, ld, ld).neg()
}

/// `g₁⁻¹d₂g₁ − g₂⁻¹d₁g₂ + ⟨id⊗id⊗λ, [g₂⁻¹d₃g₂, g₁⁻¹d₃g₁]⟩`; zero iff `g` is
/// Hamiltonian. Valid through degree `N − 1`.
pub fn ham_residual<T: Scalar>(alg: &LieAlgebra, g: &GroupMap<T>) -> TensorSeries<T> {
    let ld = g.left_log_derivative(alg);
    ld.sub(&ld.flip()).add(&lambda_commutator(alg, &ld))
}

/// The tangent condition of the Hamiltonian subgroup, `Alt(dv) = 0` with
/// the alternation signed so that it is `dv − (dv)^{2,1}`.
pub fn is_closed(v: &TensorSeries) -> Result<(), GaugeError> {
    let a = v.differential().alternate_signed();
    match a.min_degree() {
        None => Ok(()),
        Some(degree) => Err(GaugeError::NotHamiltonian { degree }),
    }
}

/// The one-parameter subgroup `s ↦ exp_*(s v)` as a series whose
/// coefficients are polynomials in `s`.
///
/// Solves `∂_s H = (z/(e^z − 1))(ad H)(v ∘ θ(e^H))`, `H(0) = 0`, the log of
/// `α_{s+ε} = α_s * e^{εv}`, by Picard iteration. Each pass fixes one more
/// polynomial degree.
pub fn exp_star_path(alg: &LieAlgebra, v: &TensorSeries) -> Result<TensorSeries<FlowJet>, GaugeError> {
    let n = v.trunc();
    if n + 1 > FLOW_ORDER {
        return Err(GaugeError::DegreeOverflow {
            trunc: n,
            max: FLOW_ORDER - 1,
        });
    }
    if v.min_degree() == Some(0) {
        return Err(SeriesError::NonPositiveDegreeInput.into());
    }
    is_closed(v)?;
    let vj: TensorSeries<FlowJet> = v.lift();
    let coeffs = dexp_inverse(&qi(1), n);
    let mut h = TensorSeries::<FlowJet>::zero(v.dim(), 1, n);
    for _ in 0..=n {
        let g = GroupMap::new(h.clone())?;
        let moved = substitute(&vj, &ad_star_diffeo(alg, &g));
        let rhs = apply_analytic(alg, &coeffs, &h, &moved, 0)?;
        let next = rhs.integrate_jet();
        if next == h {
            break;
        }
        h = next;
    }
    Ok(h)
}

/// `exp_*(v)` for a closed field `v ∈ g ⊗ Ŝ(g)_{≥1}`.
pub fn exp_star(alg: &LieAlgebra, v: &TensorSeries) -> Result<HamElement, GaugeError> {
    let path = exp_star_path(alg, v)?;
    let g = GroupMap::new(path.eval_one())?;
    Ok(HamElement::certify(alg, g))
}

/// `g⁻¹δ_f(g) = ⟨id⊗λ, [df, g⁻¹d g]⟩ − df`, the `s`-derivative at `0` of
/// `exp_*(−s df) * g`.
pub fn infinitesimal_action<T: Scalar>(
    alg: &LieAlgebra,
    f: &TensorSeries<T>,
    g: &GroupMap<T>,
) -> TensorSeries<T> {
    assert_eq!(f.rank(), 0);
    let df = f.differential();
    let ld = g.left_log_derivative(alg);
    lambda_bracket_last(alg, &df, &ld).sub(&df)
}

/// `(α * g)(λ) = g(Ad*(α(λ))λ) α(λ)` for a certified Hamiltonian `α`.
pub fn act_on_solution(alg: &LieAlgebra, alpha: &HamElement, g: &GroupMap) -> Result<GroupMap, GaugeError> {
    if !alpha.certified {
        return Err(GaugeError::NotCertified);
    }
    Ok(star_product(alg, alpha.group_map(), g))
}

/// Truncation helper: a field `d f` for a scalar `f`.
pub fn hamiltonian_field(f: &TensorSeries<Q>) -> TensorSeries<Q> {
    f.differential()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtin;
    use crate::scalar::q;
    use crate::series::tensor_series::slots_of;
    use crate::series::Monomial;

    fn cubic(dim: usize, trunc: usize) -> TensorSeries {
        let mut f = TensorSeries::zero(dim, 0, trunc);
        let mut e = vec![0u8; dim];
        e[0] = 2;
        e[dim - 1] += 1;
        f.add_term(Default::default(), Monomial::from_exps(&e), q(1, 2));
        let mut e2 = vec![0u8; dim];
        e2[dim - 1] = 3;
        f.add_term(Default::default(), Monomial::from_exps(&e2), qi(-1));
        f
    }

    fn sample(trunc: usize) -> GroupMap {
        let mut a = TensorSeries::zero(3, 1, trunc);
        a.add_term(slots_of(&[0]), Monomial::from_exps(&[0, 1, 0]), q(1, 2));
        a.add_term(slots_of(&[2]), Monomial::from_exps(&[1, 0, 0]), qi(1));
        a.add_term(slots_of(&[1]), Monomial::from_exps(&[1, 0, 1]), q(-2, 3));
        GroupMap::new(a).unwrap()
    }

    #[test]
    fn unit_laws() {
        let alg = builtin::sl2().algebra().clone();
        let g = sample(4);
        let one = GroupMap::identity(3, 4);
        assert_eq!(star_product(&alg, &g, &one), g);
        assert_eq!(star_product(&alg, &one, &g), g);
    }

    #[test]
    fn abelian_product_adds_logs() {
        let qt = builtin::abelian(2);
        let mut a = TensorSeries::zero(2, 1, 3);
        a.add_term(slots_of(&[0]), Monomial::from_exps(&[1, 1]), qi(2));
        let mut b = TensorSeries::zero(2, 1, 3);
        b.add_term(slots_of(&[1]), Monomial::from_exps(&[0, 1]), qi(-1));
        let p = star_product(
            qt.algebra(),
            &GroupMap::new(a.clone()).unwrap(),
            &GroupMap::new(b.clone()).unwrap(),
        );
        assert_eq!(p.log(), &a.add(&b));
    }

    #[test]
    fn theta_is_an_anti_homomorphism() {
        let alg = builtin::sl2().algebra().clone();
        let g1 = sample(4);
        let g2 = GroupMap::new(sample(4).log().scale_q(&q(-1, 3)).permute(&[0])).unwrap();
        let g2 = g2.pointwise_mul(&alg, &GroupMap::new(TensorSeries::identity_field(3, 4)).unwrap());
        let lhs = ad_star_diffeo(&alg, &star_product(&alg, &g1, &g2));
        let rhs = ad_star_diffeo(&alg, &g2).compose(&ad_star_diffeo(&alg, &g1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_inverse_inverts() {
        let alg = builtin::sl2().algebra().clone();
        let g = sample(4);
        let h = star_inverse(&alg, &g);
        assert!(star_product(&alg, &h, &g).is_identity());
        assert!(star_product(&alg, &g, &h).is_identity());
    }

    #[test]
    fn identity_is_hamiltonian() {
        let alg = builtin::sl2().algebra().clone();
        assert!(ham_residual(&alg, &GroupMap::<Q>::identity(3, 4)).is_zero());
    }

    #[test]
    fn non_closed_field_is_rejected() {
        let alg = builtin::sl2().algebra().clone();
        let mut v = TensorSeries::zero(3, 1, 3);
        v.add_term(slots_of(&[0]), Monomial::from_exps(&[0, 1, 0]), qi(1));
        assert!(matches!(exp_star(&alg, &v), Err(GaugeError::NotHamiltonian { degree: 0 })));
        let g = GroupMap::new(v).unwrap();
        assert!(!ham_residual(&alg, &g).is_zero());
    }

    #[test]
    fn abelian_exp_star_is_plain_exponential() {
        let qt = builtin::abelian(2);
        let v = hamiltonian_field(&cubic(2, 4));
        let a = exp_star(qt.algebra(), &v).unwrap();
        assert_eq!(a.group_map().log(), &v);
        assert!(a.is_certified());
    }

    #[test]
    fn exp_star_is_hamiltonian_and_inverts() {
        let alg = builtin::sl2().algebra().clone();
        let v = hamiltonian_field(&cubic(3, 4));
        let a = exp_star(&alg, &v).unwrap();
        assert!(a.is_certified());
        let efh = TensorSeries::monomial(3, &[1, 1, 1], qi(1), 5).add(&cubic(3, 5));
        let c = exp_star(&alg, &hamiltonian_field(&efh)).unwrap();
        assert!(c.is_certified());
        let ld = c.group_map().left_log_derivative(&alg);
        assert!(!lambda_bracket_last(&alg, &ld, &ld).is_zero());
        let b = exp_star(&alg, &v.neg()).unwrap();
        assert!(star_product(&alg, a.group_map(), b.group_map()).is_identity());
    }

    #[test]
    fn identity_action_and_infinitesimal_action_at_one() {
        let alg = builtin::sl2().algebra().clone();
        let g = sample(4);
        let one = HamElement::identity(3, 4);
        assert_eq!(act_on_solution(&alg, &one, &g).unwrap(), g);
        let f = cubic(3, 4);
        assert_eq!(
            infinitesimal_action(&alg, &f, &GroupMap::identity(3, 4)),
            f.differential().neg()
        );
    }

    #[test]
    fn infinitesimal_action_is_derivative_of_star_action() {
        let alg = builtin::sl2().algebra().clone();
        let g = sample(4);
        let f = TensorSeries::monomial(3, &[1, 1, 1], qi(1), 4).add(&cubic(3, 4));
        let path = exp_star_path(&alg, &hamiltonian_field(&f)).unwrap();
        let moved = star_product(&alg, &GroupMap::new(path).unwrap(), &GroupMap::new(g.log().lift()).unwrap());
        let b = moved.log().jet_coeff(1);
        let coeffs = crate::series::analytic::dexp(&qi(-1), 4);
        let lhs = apply_analytic(&alg, &coeffs, g.log(), &b, 0).unwrap();
        assert_eq!(lhs, infinitesimal_action(&alg, &f.neg(), &g));
    }
}
