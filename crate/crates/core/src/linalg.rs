//! Dense exact Gaussian elimination.

use num_traits::{One, Zero};

use crate::scalar::Q;

/// Row-major dense rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Q::zero(), |acc, j| {
                    if v[j].is_zero() {
                        acc
                    } else {
                        acc + &self[(i, j)] * &v[j]
                    }
                })
            })
            .collect()
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Q::zero(); n];
            e[j] = Q::one();
            match solve(self, &e) {
                Solution::Unique(x) => cols.push(x),
                _ => return None,
            }
        }
        let mut inv = Self::zeros(n, n);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                inv[(i, j)] = v;
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

/// Outcome of `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Unique(Vec<Q>),
    /// Free variables set to zero.
    Particular { x: Vec<Q>, rank: usize, nullity: usize },
    Inconsistent { rank: usize },
}

struct Echelon {
    m: Matrix,
    pivots: Vec<usize>,
}

// Reduced row echelon form of [A | b], pivoting left to right.
fn echelon(a: &Matrix, b: Option<&[Q]>) -> Echelon {
    let cols = a.cols + usize::from(b.is_some());
    let mut m = Matrix::zeros(a.rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            m[(i, j)] = a[(i, j)].clone();
        }
        if let Some(b) = b {
            m[(i, a.cols)] = b[i].clone();
        }
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..cols {
                m.data.swap(p * cols + j, row * cols + j);
            }
        }
        let inv = Q::one() / &m[(row, col)];
        for j in col..cols {
            let v = &m[(row, j)] * &inv;
            m[(row, j)] = v;
        }
        for r in 0..m.rows {
            if r == row || m[(r, col)].is_zero() {
                continue;
            }
            let f = m[(r, col)].clone();
            for j in col..cols {
                if m[(row, j)].is_zero() {
                    continue;
                }
                let v = &m[(row, j)] * &f;
                m[(r, j)] -= v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    Echelon { m, pivots }
}

pub fn rank(a: &Matrix) -> usize {
    echelon(a, None).pivots.len()
}

/// Solve `A x = b` exactly. Among all solutions returns the one whose
/// non-pivot (free) columns are zero, pivots chosen leftmost-first.
pub fn solve(a: &Matrix, b: &[Q]) -> Solution {
    assert_eq!(a.rows, b.len());
    let Echelon { m, pivots } = echelon(a, Some(b));
    let rank = pivots.len();
    for r in rank..m.rows {
        if !m[(r, a.cols)].is_zero() {
            return Solution::Inconsistent { rank };
        }
    }
    let mut x = vec![Q::zero(); a.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[(r, a.cols)].clone();
    }
    let nullity = a.cols - rank;
    if nullity == 0 {
        Solution::Unique(x)
    } else {
        Solution::Particular { x, rank, nullity }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| qi(v)).collect()).collect())
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert_eq!(inv[(2, 2)], q(1, 2));
    }

    #[test]
    fn singular_has_no_inverse() {
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(Matrix::zeros(2, 2).inverse().is_none());
    }

    #[test]
    fn underdetermined_sets_free_variables_to_zero() {
        // x0 + x1 = 2, x2 = 1
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        match solve(&a, &[qi(2), qi(1)]) {
            Solution::Particular { x, rank, nullity } => {
                assert_eq!(x, vec![qi(2), qi(0), qi(1)]);
                assert_eq!((rank, nullity), (2, 1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inconsistent_system() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&a, &[qi(1), qi(3)]), Solution::Inconsistent { rank: 1 });
    }
}
