#![allow(dead_code)]

use formal_poisson::gauge::{exp_star, HamElement};
use formal_poisson::lie::{LieAlgebra, Quasitriangular};
use formal_poisson::poisson::dl_dr_differentials;
use formal_poisson::scalar::{qi, Dual, Q};
use formal_poisson::series::bch::bch_depth;
use formal_poisson::series::{ad_star_diffeo, bch, GroupMap, Monomial, TensorSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Square matrix with entries in the truncated polynomial ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    pub n: usize,
    pub e: Vec<TensorSeries>,
}

impl PolyMatrix {
    pub fn zero(n: usize, dim: usize, trunc: usize) -> Self {
        PolyMatrix {
            n,
            e: vec![TensorSeries::zero(dim, 0, trunc); n * n],
        }
    }

    pub fn identity(n: usize, dim: usize, trunc: usize) -> Self {
        let mut m = Self::zero(n, dim, trunc);
        for i in 0..n {
            m.e[i * n + i] = TensorSeries::monomial(dim, &vec![0; dim], qi(1), trunc);
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &TensorSeries {
        &self.e[i * self.n + j]
    }

    pub fn add(&self, o: &Self) -> Self {
        let e = self.e.iter().zip(&o.e).map(|(a, b)| a.add(b)).collect();
        PolyMatrix { n: self.n, e }
    }

    pub fn scale(&self, c: &Q) -> Self {
        PolyMatrix {
            n: self.n,
            e: self.e.iter().map(|a| a.scale_q(c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n, self.e[0].dim(), self.e[0].trunc().min(o.e[0].trunc()));
        for i in 0..n {
            for j in 0..n {
                let mut acc = out.e[i * n + j].clone();
                for k in 0..n {
                    acc.add_assign(&self.at(i, k).mul_function(o.at(k, j)));
                }
                out.e[i * n + j] = acc;
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.e.iter().all(|a| a.is_zero())
    }

    /// `Σ M^k / k!`; `M` must have no constant terms.
    pub fn exp(&self) -> Self {
        let (dim, trunc) = (self.e[0].dim(), self.e[0].trunc());
        let mut out = Self::identity(self.n, dim, trunc);
        let mut term = out.clone();
        for k in 1..=trunc + 1 {
            term = term.mul(self).scale(&Q::new(1.into(), (k as i64).into()));
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
        }
        out
    }

    /// `log(1 + A) = Σ (−1)^{k+1} A^k / k` for `self = 1 + A`.
    pub fn log(&self) -> Self {
        let (dim, trunc) = (self.e[0].dim(), self.e[0].trunc());
        let a = self.add(&Self::identity(self.n, dim, trunc).scale(&qi(-1)));
        let mut out = Self::zero(self.n, dim, trunc);
        let mut pow = Self::identity(self.n, dim, trunc);
        for k in 1..=trunc + 1 {
            pow = pow.mul(&a);
            if pow.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&pow.scale(&Q::new(sign.into(), (k as i64).into())));
        }
        out
    }

    /// `M v` for a vector of functions.
    pub fn apply(&self, v: &[TensorSeries]) -> Vec<TensorSeries> {
        (0..self.n)
            .map(|i| {
                let mut acc = TensorSeries::zero(v[0].dim(), 0, v[0].trunc());
                for (j, vj) in v.iter().enumerate() {
                    acc.add_assign(&self.at(i, j).mul_function(vj));
                }
                acc
            })
            .collect()
    }
}

/// Matrix of `ad X` for a `g`-valued series `X`: `(ad X)_{k i} = Σ_j X^j c^k_{j i}`.
pub fn ad_matrix(alg: &LieAlgebra, x: &TensorSeries) -> PolyMatrix {
    let d = alg.dim();
    let comps = x.components();
    let mut m = PolyMatrix::zero(d, x.dim(), x.trunc());
    for (j, xj) in comps.iter().enumerate() {
        for i in 0..d {
            for (k, c) in alg.bracket(j, i) {
                let cell = &mut m.e[k * d + i];
                *cell = cell.add(&xj.scale_q(c));
            }
        }
    }
    m
}

/// `ad(bch(X, Y))` against `log(exp(ad X) exp(ad Y))`; zero for a faithful
/// adjoint representation.
pub fn bch_matrix_defect(alg: &LieAlgebra, x: &TensorSeries, y: &TensorSeries) -> Option<String> {
    let z = bch(alg, x, y).expect("inputs without constant term");
    let lhs = ad_matrix(alg, &z);
    let rhs = ad_matrix(alg, x).exp().mul(&ad_matrix(alg, y).exp()).log();
    (lhs != rhs).then(|| "ad(bch(X,Y)) differs from log(e^{ad X} e^{ad Y})".to_string())
}

/// `⟨θ(g)(λ), e_k⟩ = Σ_j λ_j (e^{−ad log g})_{jk}` by matrix exponential.
pub fn theta_matrix_defect(alg: &LieAlgebra, g: &GroupMap) -> bool {
    let n = g.trunc();
    let d = alg.dim();
    let m = ad_matrix(alg, &g.log().neg()).exp();
    let theta = ad_star_diffeo(alg, g);
    (0..d).any(|k| {
        let mut acc = TensorSeries::zero(d, 0, n);
        for j in 0..d {
            let mut e = vec![0u8; d];
            e[j] = 1;
            let lj = TensorSeries::monomial(d, &e, qi(1), n);
            acc.add_assign(&lj.mul_function(m.at(j, k)));
        }
        acc != theta.components()[k]
    })
}

/// `ε`-coefficient of `⟨ξ, log(e^{εa} e^x)⟩` against `⟨d_L F_ξ, a⟩`, for all
/// basis directions `a`; returns the failing `(ξ, a)` pairs.
pub fn dl_oracle_failures(alg: &LieAlgebra, n: usize) -> Vec<(usize, usize)> {
    let d = alg.dim();
    let x: TensorSeries<Dual> = TensorSeries::identity_field(d, n).lift();
    let mut bad = Vec::new();
    for xi in 0..d {
        let mut xiv = vec![qi(0); d];
        xiv[xi] = qi(1);
        let (dl, _) = dl_dr_differentials(alg, &xiv, n);
        for a in 0..d {
            let eps_a = TensorSeries::basis(d, a, n).times_var::<2>();
            let z = bch_depth(alg, &eps_a, &x, n + 2);
            let first = z.jet_coeff(1).pair_slot(0, &xiv);
            let mut ea = vec![qi(0); d];
            ea[a] = qi(1);
            if first != dl.pair_slot(0, &ea) {
                bad.push((xi, a));
            }
        }
    }
    bad
}

pub fn random_field(dim: usize, trunc: usize, rng: &mut ChaCha8Rng) -> TensorSeries {
    let mut x = TensorSeries::zero(dim, 1, trunc);
    for deg in 1..=trunc.min(2) {
        for m in Monomial::all_of_degree(dim, deg) {
            for s in 0..dim {
                if rng.gen_bool(0.4) {
                    let p: i64 = rng.gen_range(-3..=3);
                    let q: i64 = rng.gen_range(1..=3);
                    x.add_term([s as u8].into_iter().collect(), m.clone(), Q::new(p.into(), q.into()));
                }
            }
        }
    }
    x
}

pub fn random_ham(qt: &Quasitriangular, trunc: usize, seed: u64) -> HamElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = formal_poisson::report::random_cubic(qt.dim(), trunc + 1, &mut rng);
    exp_star(qt.algebra(), &f.differential()).expect("closed field")
}
