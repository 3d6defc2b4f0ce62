mod common;

use std::sync::OnceLock;

use common::{random_field, random_ham};
use formal_poisson::gauge::{act_on_solution, ham_residual, star_product};
use formal_poisson::lie::{builtin, Quasitriangular};
use formal_poisson::linearizer::{solve_g, twisted_r0, SolveResult};
use formal_poisson::poisson::{b_log, invert_b, kks_bracket, DualSeries};
use formal_poisson::rmatrix::{is_antisymmetric, rho_am, rho_am_nu};
use formal_poisson::scalar::Q;
use formal_poisson::series::analytic::{apply_analytic, exp_scaled, mul, phi};
use formal_poisson::series::{ad_star_diffeo, bch, GroupMap, Monomial, TensorSeries};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sl2() -> &'static Quasitriangular {
    static QT: OnceLock<Quasitriangular> = OnceLock::new();
    QT.get_or_init(builtin::sl2)
}

fn solved3() -> &'static SolveResult {
    static S: OnceLock<SolveResult> = OnceLock::new();
    S.get_or_init(|| solve_g(sl2(), 3).unwrap())
}

/// Random scalar function with terms of degree `lo..=hi`.
fn random_function(seed: u64, lo: usize, hi: usize, trunc: usize) -> TensorSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = TensorSeries::zero(3, 0, trunc);
    for d in lo..=hi {
        for m in Monomial::all_of_degree(3, d) {
            if rng.gen_bool(0.5) {
                let p: i64 = rng.gen_range(-3..=3);
                let q: i64 = rng.gen_range(1..=3);
                f.add_term(Default::default(), m, Q::new(p.into(), q.into()));
            }
        }
    }
    f
}

fn field(seed: u64, trunc: usize) -> TensorSeries {
    random_field(3, trunc, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn bch_is_associative(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let alg = sl2().algebra();
        let (x, y, z) = (field(a, 4), field(b, 4), field(c, 4));
        let left = bch(alg, &bch(alg, &x, &y).unwrap(), &z).unwrap();
        let right = bch(alg, &x, &bch(alg, &y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(bch(alg, &x, &x.neg()).unwrap().is_zero());
    }

    #[test]
    fn second_derivatives_are_symmetric(s in any::<u64>()) {
        let f = random_function(s, 0, 4, 4);
        let dd = f.differential().differential();
        prop_assert_eq!(dd.flip(), dd.clone());
        prop_assert!(dd.alternate_signed().is_zero());
    }

    #[test]
    fn log_derivatives_are_intertwined(s in any::<u64>()) {
        let alg = sl2().algebra();
        let g = GroupMap::new(field(s, 4)).unwrap();
        let left = g.left_log_derivative(alg);
        prop_assert_eq!(g.adjoint_on_slot(alg, &left, 0, false), g.right_log_derivative(alg));
    }

    #[test]
    fn analytic_application_is_multiplicative(s in any::<u64>(), t in any::<u64>()) {
        let alg = sl2().algebra();
        let x = field(s, 4);
        let target = field(t, 4).add(&TensorSeries::basis(3, 2, 4));
        let (p1, p2) = (phi(4), exp_scaled(&Q::new(1.into(), 3.into()), 4));
        let once = apply_analytic(alg, &mul(&p1, &p2), &x, &target, 0).unwrap();
        let inner = apply_analytic(alg, &p2, &x, &target, 0).unwrap();
        prop_assert_eq!(once, apply_analytic(alg, &p1, &x, &inner, 0).unwrap());
    }

    #[test]
    fn kks_is_a_poisson_bracket(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let alg = sl2().algebra();
        let (f, g, h) = (random_function(a, 1, 3, 4), random_function(b, 1, 3, 4), random_function(c, 1, 3, 4));
        prop_assert_eq!(kks_bracket(alg, &f, &g), kks_bracket(alg, &g, &f).neg());
        let jac = kks_bracket(alg, &f, &kks_bracket(alg, &g, &h))
            .add(&kks_bracket(alg, &g, &kks_bracket(alg, &h, &f)))
            .add(&kks_bracket(alg, &h, &kks_bracket(alg, &f, &g)));
        prop_assert!(jac.truncated(2).is_zero());
        let lhs = kks_bracket(alg, &f, &g.mul_function(&h));
        let rhs = kks_bracket(alg, &f, &g).mul_function(&h).add(&g.mul_function(&kks_bracket(alg, &f, &h)));
        prop_assert_eq!(lhs.truncated(3), rhs.truncated(3));
    }

    #[test]
    fn b_log_and_invert_b_are_inverse(s in any::<u64>()) {
        let qt = sl2();
        let x = field(s, 4).add(&TensorSeries::identity_field(3, 4));
        let xi = invert_b(qt, &x).unwrap();
        prop_assert_eq!(b_log(qt, &xi).unwrap(), x);
        let eta = DualSeries(field(s ^ 1, 4));
        prop_assert_eq!(invert_b(qt, &b_log(qt, &eta).unwrap()).unwrap(), eta);
    }

    #[test]
    fn theta_reverses_products(a in any::<u64>(), b in any::<u64>()) {
        let alg = sl2().algebra();
        let g1 = GroupMap::new(field(a, 4)).unwrap();
        let g2 = GroupMap::new(field(b, 4)).unwrap();
        let lhs = ad_star_diffeo(alg, &star_product(alg, &g1, &g2));
        let rhs = ad_star_diffeo(alg, &g2).compose(&ad_star_diffeo(alg, &g1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dynamical_r_matrices_are_antisymmetric(p in -4i64..=4, q in 1i64..=4) {
        let qt = sl2();
        prop_assert!(is_antisymmetric(rho_am(qt, 4).value()));
        prop_assert!(is_antisymmetric(rho_am_nu(qt, &Q::new(p.into(), q.into()), 4).value()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5))]

    #[test]
    fn hamiltonian_elements_form_a_subgroup(a in any::<u64>(), b in any::<u64>()) {
        let qt = sl2();
        let alg = qt.algebra();
        let (x, y) = (random_ham(qt, 4, a), random_ham(qt, 4, b));
        prop_assert!(ham_residual(alg, x.group_map()).is_zero());
        let xy = star_product(alg, x.group_map(), y.group_map());
        prop_assert!(ham_residual(alg, &xy).truncated(3).is_zero());
    }

    #[test]
    fn hamiltonian_action_preserves_solutions(a in any::<u64>()) {
        let qt = sl2();
        let alg = qt.algebra();
        let s = solved3();
        let alpha = random_ham(qt, s.g.trunc(), a);
        let moved = act_on_solution(alg, &alpha, &s.g).unwrap();
        let res = twisted_r0(qt, &moved).value().sub(rho_am(qt, 3).value());
        prop_assert!(res.truncated(3).is_zero());
        // simplicity: the lowest term of log α survives in log(α * g) − log g
        let la = alpha.group_map().log();
        if let Some(d) = la.min_degree().filter(|&d| d <= moved.trunc()) {
            let diff = moved.log().sub(s.g.log());
            prop_assert_eq!(diff.min_degree(), Some(d));
            prop_assert_eq!(diff.degree_part(d), la.degree_part(d));
        }
    }
}

#[test]
fn trivial_element_fixes_the_solution() {
    let qt = sl2();
    let s = solved3();
    let one = formal_poisson::gauge::HamElement::identity(3, s.g.trunc());
    assert_eq!(act_on_solution(qt.algebra(), &one, &s.g).unwrap(), s.g);
}
