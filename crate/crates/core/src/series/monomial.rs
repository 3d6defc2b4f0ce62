use std::cmp::Ordering;

use smallvec::SmallVec;

/// Tensor-slot indices of a term, `e_{s0} ⊗ e_{s1} ⊗ …`.
pub type Slots = SmallVec<[u8; 4]>;

/// Exponent vector over the basis of `g`: the polynomial `Π λ_i^{m_i}` on `g*`.
///
/// Ordered graded-lexicographically: lower total degree first, then larger
/// exponents on earlier variables first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    deg: u16,
    exps: SmallVec<[u8; 8]>,
}

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial {
            deg: 0,
            exps: SmallVec::from_elem(0, dim),
        }
    }

    pub fn var(dim: usize, i: usize) -> Self {
        let mut m = Self::one(dim);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u8]) -> Self {
        Monomial {
            deg: exps.iter().map(|&e| u16::from(e)).sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        usize::from(self.deg)
    }

    pub fn exps(&self) -> &[u8] {
        &self.exps
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            deg: self.deg + other.deg,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    #[inline]
    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m.deg += 1;
        m
    }

    /// `∂/∂λ_i` as `(multiplicity, m − e_i)`, or `None` if `m_i = 0`.
    #[inline]
    pub fn derive(&self, i: usize) -> Option<(u8, Monomial)> {
        let e = self.exps[i];
        if e == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        m.deg -= 1;
        Some((e, m))
    }

    /// All exponent vectors of total degree `deg` in `dim` variables,
    /// in graded-lex order.
    pub fn all_of_degree(dim: usize, deg: usize) -> Vec<Monomial> {
        fn rec(dim: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Monomial>) {
            if cur.len() + 1 == dim {
                cur.push(left as u8);
                out.push(Monomial::from_exps(cur));
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e as u8);
                rec(dim, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if dim == 0 {
            if deg == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(dim, deg, &mut Vec::with_capacity(dim), &mut out);
        out
    }

    pub fn render(&self, labels: &[String]) -> String {
        if self.deg == 0 {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    labels[i].clone()
                } else {
                    format!("{}^{}", labels[i], e)
                }
            })
            .collect();
        parts.join("·")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Term key: polynomial part first so that iteration is graded.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Key {
    pub mono: Monomial,
    pub slots: Slots,
}
