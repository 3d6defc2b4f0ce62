mod common;

use common::*;
use formal_poisson::lie::builtin;
use formal_poisson::linearizer::{initial_guess, solve_g};
use formal_poisson::poisson::a_map;
use formal_poisson::rmatrix::lambda_vee;
use formal_poisson::series::{bch, GroupMap, TensorSeries};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn bch_matches_matrix_log_of_exponentials() {
    let qt = builtin::sl2();
    let alg = qt.algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..4 {
        let x = random_field(3, 4, &mut rng);
        let y = random_field(3, 4, &mut rng);
        assert_eq!(bch_matrix_defect(alg, &x, &y), None);
    }
    let x: TensorSeries = TensorSeries::identity_field(3, 4);
    assert!(bch(alg, &x, &x.neg()).unwrap().is_zero());
}

#[test]
fn matrix_oracle_detects_a_wrong_product() {
    // log(e^X e^Y) is not X + Y on sl2
    let qt = builtin::sl2();
    let alg = qt.algebra();
    let x: TensorSeries = TensorSeries::identity_field(3, 3);
    let y = random_field(3, 3, &mut ChaCha8Rng::seed_from_u64(3));
    let sum = ad_matrix(alg, &x.add(&y));
    let prod = ad_matrix(alg, &x).exp().mul(&ad_matrix(alg, &y).exp()).log();
    assert_ne!(sum, prod);
}

#[test]
fn left_differential_matches_first_order_bch() {
    let qt = builtin::sl2();
    assert!(dl_oracle_failures(qt.algebra(), 4).is_empty());
}

#[test]
fn theta_matches_matrix_exponential() {
    let qt = builtin::sl2();
    let alg = qt.algebra();
    let s = solve_g(&qt, 3).unwrap();
    assert!(!theta_matrix_defect(alg, &s.g));
    let a = random_ham(&qt, 4, 5);
    assert!(!theta_matrix_defect(alg, a.group_map()));
}

#[test]
fn a_map_preserves_the_killing_form() {
    // tr(ad(log a)²) = tr(ad(λ∨)²) since log a is conjugate to λ∨
    let qt = builtin::sl2();
    let alg = qt.algebra();
    let n = 4;
    let killing = |x: &TensorSeries| {
        let m = ad_matrix(alg, x);
        let sq = m.mul(&m);
        (0..3).fold(TensorSeries::zero(3, 0, n), |acc, i| acc.add(sq.at(i, i)))
    };
    let lv = lambda_vee(&qt, n);
    for g in [solve_g(&qt, 3).unwrap().g, initial_guess(&qt, n), GroupMap::identity(3, n)] {
        let la = a_map(&qt, &g).truncated(n);
        assert_eq!(killing(&la), killing(&lv));
    }
}
