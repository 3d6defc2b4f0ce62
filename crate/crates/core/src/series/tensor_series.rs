//! Sparse elements of `g^{⊗k} ⊗ Ŝ(g)` truncated at a polynomial degree.

use std::collections::BTreeMap;

use num_traits::Zero;
use smallvec::SmallVec;

use super::monomial::{Key, Monomial, Slots};
use crate::lie::{LieAlgebra, Tensor};
use crate::scalar::{fmt_q, Jet, Scalar, Q};

/// A polynomial map `g* → g^{⊗rank}` known exactly through degree `trunc`.
///
/// Only nonzero coefficients are stored and no stored term exceeds `trunc`.
/// Binary operations take the smaller truncation of their inputs; operations
/// that lose a degree (the differential) lower it.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorSeries<T: Scalar = Q> {
    dim: usize,
    rank: usize,
    trunc: usize,
    terms: BTreeMap<Key, T>,
}

impl<T: Scalar> TensorSeries<T> {
    pub fn zero(dim: usize, rank: usize, trunc: usize) -> Self {
        TensorSeries {
            dim,
            rank,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    /// Constant series from a dense tensor.
    pub fn constant(t: &Tensor, trunc: usize) -> Self {
        let mut s = Self::zero(t.dim(), t.rank(), trunc);
        let one = Monomial::one(t.dim());
        for (idx, v) in t.entries() {
            s.add_term(slots_of(&idx), one.clone(), T::from_q(v));
        }
        s
    }

    /// Constant basis vector `e_i`.
    pub fn basis(dim: usize, i: usize, trunc: usize) -> Self {
        let mut s = Self::zero(dim, 1, trunc);
        s.add_term(slots_of(&[i]), Monomial::one(dim), T::one());
        s
    }

    /// A scalar function `c · λ^m`.
    pub fn monomial(dim: usize, exps: &[u8], c: T, trunc: usize) -> Self {
        let mut s = Self::zero(dim, 0, trunc);
        s.add_term(Slots::new(), Monomial::from_exps(exps), c);
        s
    }

    /// `Σ_i e_i ⊗ λ_i`, the tautological linear map.
    pub fn identity_field(dim: usize, trunc: usize) -> Self {
        let mut s = Self::zero(dim, 1, trunc);
        for i in 0..dim {
            s.add_term(slots_of(&[i]), Monomial::var(dim, i), T::one());
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, slots: &[usize], exps: &[u8]) -> T {
        let key = Key {
            mono: Monomial::from_exps(exps),
            slots: slots_of(slots),
        };
        self.terms.get(&key).cloned().unwrap_or_else(T::zero)
    }

    /// Accumulate one term; terms above the truncation are dropped.
    #[inline]
    pub fn add_term(&mut self, slots: Slots, mono: Monomial, c: T) {
        debug_assert_eq!(slots.len(), self.rank);
        if mono.degree() > self.trunc || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(Key { mono, slots }) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_shape(&self, other: &Self) {
        assert_eq!(
            (self.dim, self.rank),
            (other.dim, other.rank),
            "series shape mismatch"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_shape(other);
        let mut out = self.clone().truncated(other.trunc);
        for (k, v) in &other.terms {
            out.add_term(k.slots.clone(), k.mono.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.check_shape(other);
        self.truncate(other.trunc);
        for (k, v) in &other.terms {
            self.add_term(k.slots.clone(), k.mono.clone(), v.clone());
        }
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.dim, self.rank, self.trunc);
        for (k, v) in &self.terms {
            out.add_term(k.slots.clone(), k.mono.clone(), v.mul_ref(c));
        }
        out
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim, self.rank, self.trunc);
        }
        self.map_coeffs(|v| v.scale(c))
    }

    fn map_coeffs(&self, f: impl Fn(&T) -> T) -> Self {
        TensorSeries {
            dim: self.dim,
            rank: self.rank,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), f(v))).collect(),
        }
    }

    /// Lower the truncation to `n` (no-op if already lower).
    pub fn truncate(&mut self, n: usize) {
        if n < self.trunc {
            self.trunc = n;
            self.terms.retain(|k, _| k.mono.degree() <= n);
        }
    }

    pub fn truncated(mut self, n: usize) -> Self {
        self.truncate(n);
        self
    }

    /// Component of pure polynomial degree `d` (truncation unchanged).
    pub fn degree_part(&self, d: usize) -> Self {
        TensorSeries {
            dim: self.dim,
            rank: self.rank,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.mono.degree() == d)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Components of degree `≤ d`.
    pub fn up_to_degree(&self, d: usize) -> Self {
        self.clone().truncated(d).with_trunc(self.trunc)
    }

    fn with_trunc(mut self, n: usize) -> Self {
        self.trunc = n;
        self
    }

    /// Lowest polynomial degree carrying a nonzero term.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.mono.degree()).min()
    }

    pub fn first_term(&self) -> Option<(&Key, &T)> {
        self.terms.iter().next()
    }

    /// Output slot `j` carries input slot `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rank);
        let mut out = Self::zero(self.dim, self.rank, self.trunc);
        for (k, v) in &self.terms {
            let slots: Slots = perm.iter().map(|&p| k.slots[p]).collect();
            out.add_term(slots, k.mono.clone(), v.clone());
        }
        out
    }

    /// `x^{2,1}` on the first two slots.
    pub fn flip(&self) -> Self {
        let mut perm: Vec<usize> = (0..self.rank).collect();
        perm.swap(0, 1);
        self.permute(&perm)
    }

    /// `x ⊗ y` with polynomial parts multiplied.
    pub fn outer(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let trunc = self.trunc.min(other.trunc);
        let mut out = Self::zero(self.dim, self.rank + other.rank, trunc);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                if ka.mono.degree() + kb.mono.degree() > trunc {
                    continue;
                }
                let mut slots = ka.slots.clone();
                slots.extend_from_slice(&kb.slots);
                out.add_term(slots, ka.mono.mul(&kb.mono), va.mul_ref(vb));
            }
        }
        out
    }

    /// Multiply by a scalar function (rank-0 series).
    pub fn mul_function(&self, f: &Self) -> Self {
        assert_eq!(f.rank, 0);
        self.outer(f)
    }

    /// `Σ_m d-degree part · c^d`: the substitution `λ ↦ c λ`.
    pub fn rescale_argument(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.dim, self.rank, self.trunc);
        for (k, v) in &self.terms {
            let f = num_traits::pow(c.clone(), k.mono.degree());
            out.add_term(k.slots.clone(), k.mono.clone(), v.scale(&f));
        }
        out
    }

    /// Equality of all components of degree `≤ d`.
    pub fn agrees_through(&self, other: &Self, d: usize) -> bool {
        self.check_shape(other);
        self.up_to_degree(d).terms == other.up_to_degree(d).terms
    }

    /// `d(f) = Σ_i f_i-derivative ⊗ e_i`: appends a slot carrying the
    /// derivative direction. Loses one degree of precision.
    pub fn differential(&self) -> Self {
        let mut out = Self::zero(self.dim, self.rank + 1, self.trunc.saturating_sub(1));
        for (k, v) in &self.terms {
            for i in 0..self.dim {
                if let Some((mult, m)) = k.mono.derive(i) {
                    let mut slots = k.slots.clone();
                    slots.push(i as u8);
                    out.add_term(slots, m, v.scale(&Q::from_integer(mult.into())));
                }
            }
        }
        out
    }

    /// Plain cyclic sum `x + x^{2,…,n,1} + … + x^{n,1,…,n−1}` over tensor slots.
    pub fn alternate(&self) -> Self {
        self.cyclic_sum(false)
    }

    /// Cyclic sum weighted by the sign of each cyclic permutation; for
    /// `x ∈ ∧^{n−1}(g) ⊗ g` this is the antisymmetrization up to a factor.
    pub fn alternate_signed(&self) -> Self {
        self.cyclic_sum(true)
    }

    fn cyclic_sum(&self, signed: bool) -> Self {
        let n = self.rank;
        assert!(n >= 1, "alternation needs at least one slot");
        let mut out = Self::zero(self.dim, n, self.trunc);
        for shift in 0..n {
            let odd = signed && (shift * (n - 1)) % 2 == 1;
            for (k, v) in &self.terms {
                // factor in position p moves to slot (p + shift) mod n
                let mut slots: Slots = SmallVec::from_elem(0, n);
                for (p, &s) in k.slots.iter().enumerate() {
                    slots[(p + shift) % n] = s;
                }
                let c = if odd { v.neg_ref() } else { v.clone() };
                out.add_term(slots, k.mono.clone(), c);
            }
        }
        out
    }

    /// Pair slot `slot` against `λ`: the g factor becomes a linear factor
    /// of the polynomial part.
    pub fn contract_lambda(&self, slot: usize) -> Self {
        assert!(slot < self.rank);
        let mut out = Self::zero(self.dim, self.rank - 1, self.trunc);
        for (k, v) in &self.terms {
            let mut slots = k.slots.clone();
            let i = slots.remove(slot);
            out.add_term(slots, k.mono.mul_var(usize::from(i)), v.clone());
        }
        out
    }

    /// Pair slot `slot` against a constant covector.
    pub fn pair_slot(&self, slot: usize, xi: &[Q]) -> Self {
        assert!(slot < self.rank);
        let mut out = Self::zero(self.dim, self.rank - 1, self.trunc);
        for (k, v) in &self.terms {
            let mut slots = k.slots.clone();
            let i = usize::from(slots.remove(slot));
            if !xi[i].is_zero() {
                out.add_term(slots, k.mono.clone(), v.scale(&xi[i]));
            }
        }
        out
    }

    /// Split a rank-1 series into its scalar components.
    pub fn components(&self) -> Vec<Self> {
        assert_eq!(self.rank, 1);
        let mut out = vec![Self::zero(self.dim, 0, self.trunc); self.dim];
        for (k, v) in &self.terms {
            out[usize::from(k.slots[0])].add_term(Slots::new(), k.mono.clone(), v.clone());
        }
        out
    }

    /// Inverse of [`components`](Self::components).
    pub fn from_components(parts: &[Self]) -> Self {
        let dim = parts.len();
        let trunc = parts.iter().map(|p| p.trunc).min().unwrap_or(0);
        let mut out = Self::zero(dim, 1, trunc);
        for (i, p) in parts.iter().enumerate() {
            assert_eq!(p.rank, 0);
            for (k, v) in &p.terms {
                out.add_term(slots_of(&[i]), k.mono.clone(), v.clone());
            }
        }
        out
    }

    /// Apply a linear map to one slot; `m[(j, i)]` is the `e_j` coefficient
    /// of the image of `e_i`.
    pub fn map_slot(&self, slot: usize, m: &crate::linalg::Matrix) -> Self {
        let mut out = Self::zero(self.dim, self.rank, self.trunc);
        for (k, v) in &self.terms {
            let i = usize::from(k.slots[slot]);
            for j in 0..m.rows {
                let c = &m[(j, i)];
                if c.is_zero() {
                    continue;
                }
                let mut slots = k.slots.clone();
                slots[slot] = j as u8;
                out.add_term(slots, k.mono.clone(), v.scale(c));
            }
        }
        out
    }

    /// `[x, ·]` acting on one slot, `x` a rank-1 series.
    pub fn ad_on_slot(&self, alg: &LieAlgebra, x: &Self, slot: usize) -> Self {
        assert_eq!(x.rank, 1);
        assert!(slot < self.rank);
        let trunc = self.trunc.min(x.trunc);
        let mut out = Self::zero(self.dim, self.rank, trunc);
        for (kx, vx) in &x.terms {
            let i = usize::from(kx.slots[0]);
            for (kt, vt) in &self.terms {
                if kx.mono.degree() + kt.mono.degree() > trunc {
                    continue;
                }
                let b = usize::from(kt.slots[slot]);
                let br = alg.bracket(i, b);
                if br.is_empty() {
                    continue;
                }
                let w = vx.mul_ref(vt);
                let mono = kx.mono.mul(&kt.mono);
                for (kk, c) in br {
                    let mut slots = kt.slots.clone();
                    slots[slot] = *kk as u8;
                    out.add_term(slots, mono.clone(), w.scale(c));
                }
            }
        }
        out
    }

    /// Replace slot `i` by `[slot i, slot j]` and remove slot `j`.
    pub fn bracket_slots(&self, alg: &LieAlgebra, i: usize, j: usize) -> Self {
        assert!(i != j && i < self.rank && j < self.rank);
        let mut out = Self::zero(self.dim, self.rank - 1, self.trunc);
        for (k, v) in &self.terms {
            let (a, b) = (usize::from(k.slots[i]), usize::from(k.slots[j]));
            for (c, w) in alg.bracket(a, b) {
                let mut slots = k.slots.clone();
                slots[i] = *c as u8;
                slots.remove(j);
                out.add_term(slots, k.mono.clone(), v.scale(w));
            }
        }
        out
    }

    /// `(ad e_a ⊗ 1 ⊗ … + … + 1 ⊗ … ⊗ ad e_a)` on the tensor slots.
    pub fn diagonal_ad(&self, alg: &LieAlgebra, a: usize) -> Self {
        let ea = Self::basis(self.dim, a, self.trunc);
        (0..self.rank).fold(Self::zero(self.dim, self.rank, self.trunc), |acc, s| {
            acc.add(&self.ad_on_slot(alg, &ea, s))
        })
    }

    /// Coadjoint derivation on the polynomial part:
    /// `f ↦ d/dε f(Ad*(e^{ε e_a}) λ)` at `ε = 0`, i.e. `{f, λ_a}`.
    pub fn coadjoint_derivation(&self, alg: &LieAlgebra, a: usize) -> Self {
        let mut out = Self::zero(self.dim, self.rank, self.trunc);
        for (k, v) in &self.terms {
            for j in 0..self.dim {
                let Some((mult, m)) = k.mono.derive(j) else {
                    continue;
                };
                // ⟨ad*(e_a) λ, e_j⟩ = −⟨λ, [e_a, e_j]⟩
                for (kk, c) in alg.bracket(a, j) {
                    let coeff = -(c * Q::from_integer(mult.into()));
                    out.add_term(k.slots.clone(), m.mul_var(*kk), v.scale(&coeff));
                }
            }
        }
        out
    }
}

/// `⟨id ⊗ … ⊗ λ, [x_last, y_last]⟩`: bracket the last slot of `x` with the
/// last slot of `y` and pair the result with `λ`. The remaining slots of `x`
/// come first, then those of `y`.
///
/// With `x = df`, `y = dh` this is the Lie-Poisson bracket `{f, h}`.
pub fn lambda_bracket_last<T: Scalar>(
    alg: &LieAlgebra,
    x: &TensorSeries<T>,
    y: &TensorSeries<T>,
) -> TensorSeries<T> {
    assert!(x.rank >= 1 && y.rank >= 1);
    let trunc = x.trunc.min(y.trunc);
    let mut out = TensorSeries::zero(x.dim, x.rank + y.rank - 2, trunc);
    for (kx, vx) in &x.terms {
        let i = usize::from(kx.slots[x.rank - 1]);
        for (ky, vy) in &y.terms {
            if kx.mono.degree() + ky.mono.degree() + 1 > trunc {
                continue;
            }
            let j = usize::from(ky.slots[y.rank - 1]);
            let br = alg.bracket(i, j);
            if br.is_empty() {
                continue;
            }
            let mut slots: Slots = kx.slots[..x.rank - 1].iter().copied().collect();
            slots.extend_from_slice(&ky.slots[..y.rank - 1]);
            let w = vx.mul_ref(vy);
            let mono = kx.mono.mul(&ky.mono);
            for (k, c) in br {
                out.add_term(slots.clone(), mono.mul_var(*k), w.scale(c));
            }
        }
    }
    out
}

/// Full contraction of the slots of `x` against the slots of `y`
/// (`⟨ε^i, e_j⟩ = δ`), polynomial parts multiplied.
pub fn pair_all<T: Scalar>(x: &TensorSeries<T>, y: &TensorSeries<T>) -> TensorSeries<T> {
    assert_eq!(x.rank, y.rank);
    let trunc = x.trunc.min(y.trunc);
    let mut out = TensorSeries::zero(x.dim, 0, trunc);
    let mut by_slots: BTreeMap<&Slots, Vec<(&Monomial, &T)>> = BTreeMap::new();
    for (k, v) in &y.terms {
        by_slots.entry(&k.slots).or_default().push((&k.mono, v));
    }
    for (kx, vx) in &x.terms {
        if let Some(list) = by_slots.get(&kx.slots) {
            for (m, vy) in list {
                out.add_term(Slots::new(), kx.mono.mul(m), vx.mul_ref(vy));
            }
        }
    }
    out
}

pub(crate) fn slots_of(idx: &[usize]) -> Slots {
    idx.iter().map(|&i| i as u8).collect()
}

impl<const K: usize> TensorSeries<Jet<K>> {
    /// Reduce the jet parameter modulo `s^M`.
    pub fn recast<const M: usize>(&self) -> TensorSeries<Jet<M>> {
        let mut out = TensorSeries::zero(self.dim, self.rank, self.trunc);
        for (k, v) in &self.terms {
            let c = Jet::from_coeffs((0..M.min(K)).map(|j| v.coeff(j)).collect());
            out.add_term(k.slots.clone(), k.mono.clone(), c);
        }
        out
    }

    /// Coefficient of `s^j` as an ordinary series.
    pub fn jet_coeff(&self, j: usize) -> TensorSeries<Q> {
        let mut out = TensorSeries::zero(self.dim, self.rank, self.trunc);
        for (k, v) in &self.terms {
            out.add_term(k.slots.clone(), k.mono.clone(), v.coeff(j));
        }
        out
    }

    /// Evaluate the jet parameter at `s = 1`.
    pub fn eval_one(&self) -> TensorSeries<Q> {
        let mut out = TensorSeries::zero(self.dim, self.rank, self.trunc);
        for (k, v) in &self.terms {
            out.add_term(k.slots.clone(), k.mono.clone(), v.eval_one());
        }
        out
    }

    /// `∫_0^s` in the jet parameter, coefficient-wise.
    pub fn integrate_jet(&self) -> Self {
        self.map_coeffs(|v| v.integrate())
    }
}

impl TensorSeries<Q> {
    /// Embed into a series over a larger coefficient ring.
    pub fn lift<U: Scalar>(&self) -> TensorSeries<U> {
        TensorSeries {
            dim: self.dim,
            rank: self.rank,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), U::from_q(v)))
                .collect(),
        }
    }

    /// `s · x` over the jet ring.
    pub fn times_var<const K: usize>(&self) -> TensorSeries<Jet<K>> {
        let mut out = TensorSeries::zero(self.dim, self.rank, self.trunc);
        for (k, v) in &self.terms {
            out.add_term(
                k.slots.clone(),
                k.mono.clone(),
                Jet::from_coeffs(vec![Q::zero(), v.clone()]),
            );
        }
        out
    }

    /// Canonical text form: one `slots * monomial : coeff` line per term.
    pub fn render(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for (k, v) in &self.terms {
            let slots = if k.slots.is_empty() {
                "1".to_string()
            } else {
                k.slots
                    .iter()
                    .map(|&s| labels[usize::from(s)].as_str())
                    .collect::<Vec<_>>()
                    .join("⊗")
            };
            out.push_str(&format!("{} * {} : {}\n", slots, k.mono.render(labels), fmt_q(v)));
        }
        out
    }

    /// Constant (degree-0) part as a dense tensor.
    pub fn constant_part(&self) -> Tensor {
        let mut t = Tensor::zeros(self.rank, self.dim);
        for (k, v) in &self.terms {
            if k.mono.degree() == 0 {
                let idx: Vec<usize> = k.slots.iter().map(|&s| usize::from(s)).collect();
                t.add_at(&idx, v);
            }
        }
        t
    }
}
