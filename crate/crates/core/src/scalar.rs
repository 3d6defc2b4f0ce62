//! Coefficient rings.
//!
//! Everything is exact. [`Q`] is the base field; [`Jet`] is a truncated
//! univariate polynomial ring `Q[s]/(s^K)` used both as dual numbers
//! (`K = 2`) and as the flow parameter of one-parameter subgroups.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational.
pub type Q = BigRational;

/// `n / d` as an exact rational.
pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Canonical `p/q` (or `p`) rendering.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Commutative coefficient ring over `Q`.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + Zero + One + 'static {
    fn from_q(q: &Q) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, c: &Q) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Scalar for Q {
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Q) -> Self {
        self * c
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// Truncated polynomial `Σ_{k<K} c_k s^k`; products drop `s^K` and above.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Jet<const K: usize> {
    // trailing zeros trimmed, len <= K
    coeffs: Vec<Q>,
}

/// Dual numbers `Q[ε]/(ε²)`.
pub type Dual = Jet<2>;

impl<const K: usize> Jet<K> {
    pub fn from_coeffs(mut coeffs: Vec<Q>) -> Self {
        coeffs.truncate(K);
        let mut j = Jet { coeffs };
        j.trim();
        j
    }

    /// The generator `s` (or `ε`).
    pub fn var() -> Self {
        Self::from_coeffs(vec![Q::zero(), Q::one()])
    }

    pub fn constant(c: Q) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at `s = 1`.
    pub fn eval_one(&self) -> Q {
        self.coeffs.iter().fold(Q::zero(), |acc, c| acc + c)
    }

    /// `∫_0^s`, dropping whatever overflows `s^K`.
    pub fn integrate(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Q::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / qi(k as i64 + 1));
        }
        Self::from_coeffs(out)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl<const K: usize> fmt::Debug for Jet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{}·s^{}", fmt_q(c), k))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<const K: usize> Add for Jet<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<const K: usize> Mul for Jet<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<const K: usize> Zero for Jet<K> {
    fn zero() -> Self {
        Jet { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<const K: usize> One for Jet<K> {
    fn one() -> Self {
        Self::constant(Q::one())
    }
}

impl<const K: usize> Scalar for Jet<K> {
    fn from_q(q: &Q) -> Self {
        Self::constant(q.clone())
    }

    fn add_assign_ref(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Q::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        self.trim();
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Q::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        self.trim();
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let n = (self.coeffs.len() + other.coeffs.len() - 1).min(K);
        let mut out = vec![Q::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= K {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Jet {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn neg_ref(&self) -> Self {
        Jet {
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }
}
