//! Exact Taylor coefficients of the analytic functions applied to `ad X`,
//! and their evaluation on a tensor slot.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{SeriesError, TensorSeries};
use crate::lie::LieAlgebra;
use crate::scalar::{qi, Scalar, Q};

/// Bernoulli numbers `B_0..=B_n` with `B_1 = −1/2`.
pub fn bernoulli(n: usize) -> Vec<Q> {
    // Σ_{k<m+1} C(m+1, k) B_k = 0
    let mut b: Vec<Q> = Vec::with_capacity(n + 1);
    b.push(Q::one());
    for m in 1..=n {
        let mut acc = Q::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += bk * Q::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / Q::from_integer(BigInt::from(m + 1)));
    }
    b
}

fn factorials(n: usize) -> Vec<Q> {
    let mut f = vec![Q::one()];
    for k in 1..=n {
        let next = &f[k - 1] * qi(k as i64);
        f.push(next);
    }
    f
}

/// A Laurent series with at most a simple pole: `pole / z + Σ taylor[k] z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent {
    pub pole: Q,
    pub taylor: Vec<Q>,
}

impl Laurent {
    pub fn regular(taylor: Vec<Q>) -> Self {
        Laurent {
            pole: Q::zero(),
            taylor,
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let n = self.taylor.len().max(other.taylor.len());
        let taylor = (0..n)
            .map(|k| coeff(&self.taylor, k) + coeff(&other.taylor, k))
            .collect();
        Laurent {
            pole: &self.pole + &other.pole,
            taylor,
        }
    }

    pub fn scale(&self, c: &Q) -> Laurent {
        Laurent {
            pole: &self.pole * c,
            taylor: self.taylor.iter().map(|x| x * c).collect(),
        }
    }

    /// Taylor coefficients, provided the principal part cancelled.
    pub fn into_taylor(self) -> Result<Vec<Q>, SeriesError> {
        if self.pole.is_zero() {
            Ok(self.taylor)
        } else {
            Err(SeriesError::PoleAtZero)
        }
    }
}

fn coeff(c: &[Q], k: usize) -> Q {
    c.get(k).cloned().unwrap_or_else(Q::zero)
}

/// `coth(c z)` through `z^n`, `c ≠ 0`.
pub fn coth_scaled(c: &Q, n: usize) -> Laurent {
    assert!(!c.is_zero());
    // coth w = 1/w + Σ_{k≥1} 2^{2k} B_{2k} w^{2k−1} / (2k)!
    let b = bernoulli(n + 1);
    let f = factorials(n + 1);
    let mut taylor = vec![Q::zero(); n + 1];
    let mut k = 1;
    while 2 * k - 1 <= n {
        let m = 2 * k - 1;
        taylor[m] = &b[2 * k] * num_traits::pow(qi(2) * c, 2 * k) / c / &f[2 * k];
        k += 1;
    }
    Laurent {
        pole: Q::one() / c,
        taylor,
    }
}

/// `φ(z) = −1/z + ½ coth(z/2) = Σ_{k≥1} B_{2k} z^{2k−1} / (2k)!`.
pub fn phi(n: usize) -> Vec<Q> {
    let b = bernoulli(n + 1);
    let f = factorials(n + 1);
    (0..=n)
        .map(|m| {
            if m % 2 == 1 {
                &b[m + 1] / &f[m + 1]
            } else {
                Q::zero()
            }
        })
        .collect()
}

/// `ψ_ν(z) = −ν coth(νz) + ½ coth(z/2)` with the poles cancelled.
///
/// `ν = 0` has no coth form; the limit is [`phi`].
pub fn psi_nu(nu: &Q, n: usize) -> Result<Vec<Q>, SeriesError> {
    if nu.is_zero() {
        return Err(SeriesError::MalformedNu);
    }
    let half = Q::new(1.into(), 2.into());
    coth_scaled(nu, n)
        .scale(&-nu)
        .add(&coth_scaled(&half, n).scale(&half))
        .into_taylor()
}

/// `e^{c z}`.
pub fn exp_scaled(c: &Q, n: usize) -> Vec<Q> {
    let f = factorials(n);
    (0..=n).map(|k| num_traits::pow(c.clone(), k) / &f[k]).collect()
}

/// `(e^{c z} − 1) / (c z)`; `c = −1` gives the left dexp `(1 − e^{−z})/z`.
pub fn dexp(c: &Q, n: usize) -> Vec<Q> {
    let f = factorials(n + 1);
    (0..=n).map(|k| num_traits::pow(c.clone(), k) / &f[k + 1]).collect()
}

/// `c z / (e^{c z} − 1) = Σ B_k (c z)^k / k!`, the inverse of [`dexp`].
pub fn dexp_inverse(c: &Q, n: usize) -> Vec<Q> {
    let b = bernoulli(n);
    let f = factorials(n);
    (0..=n)
        .map(|k| &b[k] * num_traits::pow(c.clone(), k) / &f[k])
        .collect()
}

/// `(z/2) coth(z/2) = Σ B_{2k} z^{2k} / (2k)!`.
pub fn half_z_coth_half(n: usize) -> Vec<Q> {
    let b = bernoulli(n);
    let f = factorials(n);
    (0..=n)
        .map(|k| if k % 2 == 0 { &b[k] / &f[k] } else { Q::zero() })
        .collect()
}

/// `f(z) = z e^z / sinh z = 2z / (1 − e^{−2z})`.
pub fn z_exp_over_sinh(n: usize) -> Vec<Q> {
    dexp_inverse(&qi(-2), n)
}

/// `Σ c_k (s z)^k`: the coefficients of `ψ(s z)`.
pub fn rescale(c: &[Q], s: &Q) -> Vec<Q> {
    c.iter()
        .enumerate()
        .map(|(k, x)| x * num_traits::pow(s.clone(), k))
        .collect()
}

/// Cauchy product of two Taylor series, truncated at the shorter length.
pub fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|k| (0..=k).fold(Q::zero(), |acc, i| acc + &a[i] * &b[k - i]))
        .collect()
}

/// `Σ_m ψ_m (ad X)^m` applied to slot `slot` of `target`.
///
/// Coefficients past the end of `psi` are taken to be zero. `X` must have
/// no constant term so that `(ad X)^m` raises degree by at least `m`.
pub fn apply_analytic<T: Scalar>(
    alg: &LieAlgebra,
    psi: &[Q],
    x: &TensorSeries<T>,
    target: &TensorSeries<T>,
    slot: usize,
) -> Result<TensorSeries<T>, SeriesError> {
    if x.min_degree() == Some(0) {
        return Err(SeriesError::NonPositiveDegreeInput);
    }
    Ok(apply_unchecked(alg, psi, x, target, slot))
}

/// [`apply_analytic`] for a Laurent series; rejects a principal part.
pub fn apply_laurent<T: Scalar>(
    alg: &LieAlgebra,
    psi: &Laurent,
    x: &TensorSeries<T>,
    target: &TensorSeries<T>,
    slot: usize,
) -> Result<TensorSeries<T>, SeriesError> {
    if !psi.pole.is_zero() {
        return Err(SeriesError::PoleAtZero);
    }
    apply_analytic(alg, &psi.taylor, x, target, slot)
}

/// Evaluation without the constant-term check; the caller guarantees that
/// `(ad X)^m` vanishes for large `m` (by degree or by nilpotent coefficients).
pub(crate) fn apply_unchecked<T: Scalar>(
    alg: &LieAlgebra,
    psi: &[Q],
    x: &TensorSeries<T>,
    target: &TensorSeries<T>,
    slot: usize,
) -> TensorSeries<T> {
    let trunc = target.trunc().min(x.trunc());
    let mut term = target.clone().truncated(trunc);
    let mut acc = term.scale_q(&coeff(psi, 0));
    let mut m = 1;
    while !term.is_zero() && m < psi.len() {
        term = term.ad_on_slot(alg, x, slot);
        acc.add_assign(&term.scale_q(&coeff(psi, m)));
        m += 1;
    }
    acc
}
