//! Dense constant tensors in `g^{⊗k}`.

use num_traits::Zero;

use super::LieAlgebra;
use crate::scalar::Q;

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    rank: usize,
    dim: usize,
    data: Vec<Q>,
}

impl Tensor {
    pub fn zeros(rank: usize, dim: usize) -> Self {
        Tensor {
            rank,
            dim,
            data: vec![Q::zero(); dim.pow(rank as u32)],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    fn unoffset(&self, mut off: usize) -> Vec<usize> {
        let mut idx = vec![0; self.rank];
        for slot in idx.iter_mut().rev() {
            *slot = off % self.dim;
            off /= self.dim;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> &Q {
        &self.data[self.offset(idx)]
    }

    pub fn add_at(&mut self, idx: &[usize], v: &Q) {
        let o = self.offset(idx);
        self.data[o] += v;
    }

    pub fn set(&mut self, idx: &[usize], v: Q) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    /// Nonzero entries with their multi-indices, in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &Q)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(o, v)| (self.unoffset(o), v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// First nonzero entry, used as a defect certificate.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, Q)> {
        self.entries().next().map(|(i, v)| (i, v.clone()))
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        assert_eq!((self.rank, self.dim), (other.rank, other.dim));
        Tensor {
            rank: self.rank,
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.scale(&crate::scalar::qi(-1)))
    }

    pub fn scale(&self, c: &Q) -> Tensor {
        Tensor {
            rank: self.rank,
            dim: self.dim,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Output slot `j` carries input slot `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        assert_eq!(perm.len(), self.rank);
        let mut out = Tensor::zeros(self.rank, self.dim);
        for (idx, v) in self.entries() {
            let new: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            out.set(&new, v.clone());
        }
        out
    }

    /// `x^{2,1}` for rank 2.
    pub fn flip(&self) -> Tensor {
        self.permute(&[1, 0])
    }

    /// `ad(e_a)` acting on one slot.
    pub fn ad_basis_on_slot(&self, alg: &LieAlgebra, a: usize, slot: usize) -> Tensor {
        let mut out = Tensor::zeros(self.rank, self.dim);
        for (mut idx, v) in self.entries() {
            let b = idx[slot];
            for (k, c) in alg.bracket(a, b) {
                idx[slot] = *k;
                out.add_at(&idx, &(v * c));
            }
        }
        out
    }

    /// `(ad e_a ⊗ 1 ⊗ … + … + 1 ⊗ … ⊗ ad e_a)(self)`.
    pub fn diagonal_ad(&self, alg: &LieAlgebra, a: usize) -> Tensor {
        (0..self.rank).fold(Tensor::zeros(self.rank, self.dim), |acc, s| {
            acc.add(&self.ad_basis_on_slot(alg, a, s))
        })
    }

    /// Contract slot `slot` against the covector `xi`.
    pub fn pair_slot(&self, slot: usize, xi: &[Q]) -> Tensor {
        let mut out = Tensor::zeros(self.rank - 1, self.dim);
        for (mut idx, v) in self.entries() {
            let i = idx.remove(slot);
            if !xi[i].is_zero() {
                out.add_at(&idx, &(v * &xi[i]));
            }
        }
        out
    }

    /// Rank-1 view as a coordinate vector.
    pub fn as_vector(&self) -> Vec<Q> {
        assert_eq!(self.rank, 1);
        self.data.clone()
    }

    pub fn from_vector(v: Vec<Q>) -> Tensor {
        Tensor {
            rank: 1,
            dim: v.len(),
            data: v,
        }
    }

    /// Rank-2 from a `dim × dim` table `m[i][j] ↔ e_i ⊗ e_j`.
    pub fn from_matrix(dim: usize, m: &crate::linalg::Matrix) -> Tensor {
        let mut t = Tensor::zeros(2, dim);
        for i in 0..dim {
            for j in 0..dim {
                t.set(&[i, j], m[(i, j)].clone());
            }
        }
        t
    }

    pub fn to_matrix(&self) -> crate::linalg::Matrix {
        assert_eq!(self.rank, 2);
        let mut m = crate::linalg::Matrix::zeros(self.dim, self.dim);
        for (idx, v) in self.entries() {
            m[(idx[0], idx[1])] = v.clone();
        }
        m
    }
}

/// `[a^{1,2}, b^{2,3}] = Σ a^{ij} b^{kl} e_i ⊗ [e_j, e_k] ⊗ e_l`.
pub fn bracket_12_23(alg: &LieAlgebra, a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::zeros(3, alg.dim());
    for (ia, va) in a.entries() {
        for (ib, vb) in b.entries() {
            let w = va * vb;
            for (m, c) in alg.bracket(ia[1], ib[0]) {
                out.add_at(&[ia[0], *m, ib[1]], &(&w * c));
            }
        }
    }
    out
}

/// `[a^{1,2}, b^{1,3}] = Σ a^{ij} b^{kl} [e_i, e_k] ⊗ e_j ⊗ e_l`.
pub fn bracket_12_13(alg: &LieAlgebra, a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::zeros(3, alg.dim());
    for (ia, va) in a.entries() {
        for (ib, vb) in b.entries() {
            let w = va * vb;
            for (m, c) in alg.bracket(ia[0], ib[0]) {
                out.add_at(&[*m, ia[1], ib[1]], &(&w * c));
            }
        }
    }
    out
}

/// `[a^{1,3}, b^{2,3}] = Σ a^{ij} b^{kl} e_i ⊗ e_k ⊗ [e_j, e_l]`.
pub fn bracket_13_23(alg: &LieAlgebra, a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::zeros(3, alg.dim());
    for (ia, va) in a.entries() {
        for (ib, vb) in b.entries() {
            let w = va * vb;
            for (m, c) in alg.bracket(ia[1], ib[1]) {
                out.add_at(&[ia[0], ib[0], *m], &(&w * c));
            }
        }
    }
    out
}
