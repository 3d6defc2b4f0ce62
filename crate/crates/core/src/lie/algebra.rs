use std::collections::BTreeMap;

use num_traits::Zero;

use super::LieError;
use crate::linalg::Matrix;
use crate::scalar::Q;

/// Finite-dimensional Lie algebra over `Q` given by structure constants
/// `[e_i, e_j] = Σ_k c^k_{ij} e_k`.
///
/// Constants are stored once per unordered pair `i < j`; the `(j, i)` value
/// is derived by antisymmetry when the lookup table is built.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    constants: BTreeMap<(usize, usize), Vec<(usize, Q)>>,
    table: Vec<Vec<(usize, Q)>>,
}

impl LieAlgebra {
    /// Build from raw `(i, j, k, c^k_{ij})` entries and validate the axioms.
    ///
    /// Entries may list either or both orders of a pair; when both are
    /// present they must be negatives of each other.
    pub fn from_entries(
        labels: Vec<String>,
        entries: &[(usize, usize, usize, Q)],
    ) -> Result<Self, LieError> {
        let dim = labels.len();
        if dim == 0 {
            return Err(LieError::EmptyAlgebra);
        }
        let mut raw: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
        for (i, j, k, c) in entries {
            for &ix in [i, j, k] {
                if ix >= dim {
                    return Err(LieError::IndexOutOfRange { index: ix, dim });
                }
            }
            if let Some(prev) = raw.insert((*i, *j, *k), c.clone()) {
                if &prev != c {
                    return Err(LieError::DuplicateEntry {
                        i: *i,
                        j: *j,
                        k: *k,
                    });
                }
            }
        }
        let mut constants: BTreeMap<(usize, usize), Vec<(usize, Q)>> = BTreeMap::new();
        for (&(i, j, k), c) in &raw {
            if i == j {
                if !c.is_zero() {
                    return Err(LieError::AntisymmetryViolation { i, j, k });
                }
                continue;
            }
            let (lo, hi, val) = if i < j { (i, j, c.clone()) } else { (j, i, -c) };
            if let Some(other) = raw.get(&(j, i, k)) {
                if &-other != c {
                    return Err(LieError::AntisymmetryViolation { i, j, k });
                }
                if i > j {
                    // already recorded from the (j, i) side
                    continue;
                }
            }
            if !val.is_zero() {
                constants.entry((lo, hi)).or_default().push((k, val));
            }
        }
        let alg = Self::from_canonical(labels, constants);
        alg.check_jacobi()?;
        Ok(alg)
    }

    fn from_canonical(
        labels: Vec<String>,
        constants: BTreeMap<(usize, usize), Vec<(usize, Q)>>,
    ) -> Self {
        let dim = labels.len();
        let mut table = vec![Vec::new(); dim * dim];
        for (&(i, j), list) in &constants {
            let mut list = list.clone();
            list.sort_by_key(|(k, _)| *k);
            table[j * dim + i] = list.iter().map(|(k, c)| (*k, -c)).collect();
            table[i * dim + j] = list;
        }
        LieAlgebra {
            dim,
            labels,
            constants,
            table,
        }
    }

    /// The abelian algebra of dimension `dim`.
    pub fn abelian(dim: usize) -> Self {
        let labels = (0..dim).map(|i| format!("x{i}")).collect();
        Self::from_canonical(labels, BTreeMap::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    /// Canonical `(i < j)` structure constants.
    pub fn constants(&self) -> &BTreeMap<(usize, usize), Vec<(usize, Q)>> {
        &self.constants
    }

    /// `[e_i, e_j]` as sparse `(k, c^k_{ij})` pairs.
    #[inline]
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.table[i * self.dim + j]
    }

    pub fn bracket_vec(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi * yj;
                for (k, c) in self.bracket(i, j) {
                    out[*k] += &w * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad x` acting on column vectors.
    pub fn ad_matrix(&self, x: &[Q]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for j in 0..self.dim {
                for (k, c) in self.bracket(i, j) {
                    m[(*k, j)] += xi * c;
                }
            }
        }
        m
    }

    /// Jacobi identity on every basis triple, component-wise.
    pub fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let mut acc = vec![Q::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (m, cm) in self.bracket(a, b) {
                            for (l, cl) in self.bracket(*m, c) {
                                acc[*l] += cm * cl;
                            }
                        }
                    }
                    if let Some(component) = acc.iter().position(|v| !v.is_zero()) {
                        return Err(LieError::JacobiViolation { i, j, k, component });
                    }
                }
            }
        }
        Ok(())
    }
}
