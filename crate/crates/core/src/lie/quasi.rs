use num_traits::Zero;

use super::tensor::{bracket_12_13, bracket_12_23, bracket_13_23, Tensor};
use super::{LieAlgebra, LieError};
use crate::linalg::Matrix;
use crate::scalar::{q, Q};

/// `CYB(r) = [r^{12}, r^{13}] + [r^{12}, r^{23}] + [r^{13}, r^{23}]`.
pub fn cyb(alg: &LieAlgebra, r: &Tensor) -> Tensor {
    assert_eq!(r.rank(), 2);
    bracket_12_13(alg, r, r)
        .add(&bracket_12_23(alg, r, r))
        .add(&bracket_13_23(alg, r, r))
}

/// A Lie algebra with an r-matrix whose symmetric part is invariant and
/// which satisfies the classical Yang-Baxter equation. Immutable once built.
#[derive(Clone, Debug)]
pub struct Quasitriangular {
    alg: LieAlgebra,
    r: Tensor,
    r0: Tensor,
    t: Tensor,
    // columns are images of dual basis vectors
    l_map: Matrix,
    r_map: Matrix,
    t_map: Matrix,
    t_inverse: Option<Matrix>,
}

impl Quasitriangular {
    pub fn new(alg: LieAlgebra, r: Tensor) -> Result<Self, LieError> {
        let n = alg.dim();
        if r.rank() != 2 || r.dim() != n {
            return Err(LieError::ShapeMismatch {
                expected: n,
                found: r.dim(),
            });
        }
        let rf = r.flip();
        let t = r.add(&rf);
        let r0 = r.sub(&rf).scale(&q(1, 2));
        if let Some((index, _)) = cyb(&alg, &r).first_nonzero() {
            return Err(LieError::CybViolation { index });
        }
        for a in 0..n {
            if let Some((index, _)) = t.diagonal_ad(&alg, a).first_nonzero() {
                return Err(LieError::NotInvariant { basis: a, index });
            }
        }
        let mut l_map = Matrix::zeros(n, n);
        let mut r_map = Matrix::zeros(n, n);
        let mut t_map = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                l_map[(j, i)] = r.get(&[i, j]).clone();
                r_map[(j, i)] = -r.get(&[j, i]);
                t_map[(j, i)] = t.get(&[i, j]).clone();
            }
        }
        let t_inverse = t_map.inverse();
        Ok(Quasitriangular {
            alg,
            r,
            r0,
            t,
            l_map,
            r_map,
            t_map,
            t_inverse,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn r(&self) -> &Tensor {
        &self.r
    }

    /// `(r − r^{2,1}) / 2`.
    pub fn r0(&self) -> &Tensor {
        &self.r0
    }

    /// `r + r^{2,1}`.
    pub fn t(&self) -> &Tensor {
        &self.t
    }

    pub fn is_factorizable(&self) -> bool {
        self.t_inverse.is_some()
    }

    /// Inverse of `λ ↦ (λ ⊗ id)(t)`, present iff `t` is nondegenerate.
    pub fn t_inverse(&self) -> Option<&Matrix> {
        self.t_inverse.as_ref()
    }

    /// `λ ↦ (λ ⊗ id)(t)` as a matrix on coordinate vectors.
    pub fn t_map(&self) -> &Matrix {
        &self.t_map
    }

    /// `L(λ) = (λ ⊗ id)(r)`.
    pub fn l_map(&self) -> &Matrix {
        &self.l_map
    }

    /// `R(λ) = −(λ ⊗ id)(r^{2,1})`.
    pub fn r_map(&self) -> &Matrix {
        &self.r_map
    }

    /// `δ(x) = [x ⊗ 1 + 1 ⊗ x, r]`.
    pub fn cobracket(&self, x: &[Q]) -> Tensor {
        let mut out = Tensor::zeros(2, self.dim());
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            out = out.add(&self.r.diagonal_ad(&self.alg, a).scale(xa));
        }
        out
    }

    /// Bracket on `g*` dual to the cobracket.
    pub fn dual_bracket(&self, xi: &[Q], eta: &[Q]) -> Vec<Q> {
        (0..self.dim())
            .map(|k| {
                let mut e = vec![Q::zero(); self.dim()];
                e[k] = crate::scalar::qi(1);
                let d = self.cobracket(&e);
                d.pair_slot(0, xi).pair_slot(0, eta).get(&[]).clone()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtin;
    use crate::scalar::qi;

    fn basis(n: usize, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); n];
        v[i] = qi(1);
        v
    }

    // Expand [x⊗1 + 1⊗x, r] term by term straight from the definition.
    fn cobracket_oracle(alg: &LieAlgebra, r: &Tensor, x: usize) -> Tensor {
        let n = alg.dim();
        let mut out = Tensor::zeros(2, n);
        for i in 0..n {
            for j in 0..n {
                let c = r.get(&[i, j]);
                if c.is_zero() {
                    continue;
                }
                let left = alg.bracket_vec(&basis(n, x), &basis(n, i));
                let right = alg.bracket_vec(&basis(n, x), &basis(n, j));
                for k in 0..n {
                    out.add_at(&[k, j], &(c * &left[k]));
                    out.add_at(&[i, k], &(c * &right[k]));
                }
            }
        }
        out
    }

    #[test]
    fn sl2_cyb_vanishes() {
        let qt = builtin::sl2();
        assert!(cyb(qt.algebra(), qt.r()).is_zero());
    }

    #[test]
    fn cyb_of_zero_is_zero() {
        let alg = builtin::sl2().algebra().clone();
        assert!(cyb(&alg, &Tensor::zeros(2, 3)).is_zero());
    }

    #[test]
    fn dropping_the_symmetric_part_breaks_cyb() {
        let qt = builtin::sl2();
        let mut r = Tensor::zeros(2, 3);
        r.set(&[0, 1], qi(1));
        let defect = cyb(qt.algebra(), &r);
        // [e⊗f⊗1 ...]: the only surviving terms come from [e,f] = h
        let mut expected = Tensor::zeros(3, 3);
        // [r12,r13] = [e,e]⊗f⊗f = 0; [r12,r23] = e⊗[f,e]⊗f; [r13,r23] = e⊗e⊗[f,f] = 0
        expected.set(&[0, 2, 1], qi(-1));
        assert_eq!(defect, expected);
        assert!(matches!(
            Quasitriangular::new(qt.algebra().clone(), r),
            Err(LieError::CybViolation { .. })
        ));
    }

    #[test]
    fn cobracket_values() {
        let qt = builtin::sl2();
        let n = 3;
        assert!(qt.cobracket(&basis(n, 2)).is_zero());
        let de = qt.cobracket(&basis(n, 0));
        assert_eq!(de, cobracket_oracle(qt.algebra(), qt.r(), 0));
        // δ(e) = (1/2) (e⊗h − h⊗e)
        let mut expected = Tensor::zeros(2, 3);
        expected.set(&[0, 2], q(1, 2));
        expected.set(&[2, 0], q(-1, 2));
        assert_eq!(de, expected);
        assert_eq!(de.flip(), de.scale(&qi(-1)));
    }

    #[test]
    fn abelian_cobracket_is_zero() {
        let qt = builtin::abelian(2);
        assert!(qt.cobracket(&[qi(3), qi(-1)]).is_zero());
        assert_eq!(qt.dual_bracket(&[qi(1), qi(0)], &[qi(0), qi(1)]), vec![qi(0), qi(0)]);
    }

    #[test]
    fn dual_bracket_is_transpose_of_cobracket() {
        let qt = builtin::sl2();
        // ⟨[e*, h*], x⟩ = δ(x)^{e,h}
        let b = qt.dual_bracket(&basis(3, 0), &basis(3, 2));
        for x in 0..3 {
            assert_eq!(b[x], *qt.cobracket(&basis(3, x)).get(&[0, 2]));
        }
        assert_eq!(b, vec![q(1, 2), qi(0), qi(0)]);
    }

    #[test]
    fn dual_bracket_bilinear() {
        let qt = builtin::sl2();
        let x = vec![q(1, 2), qi(-3), qi(2)];
        let y = vec![qi(1), q(2, 3), qi(0)];
        let z = vec![qi(0), qi(1), q(-1, 2)];
        let xy: Vec<Q> = x.iter().zip(&y).map(|(a, b)| a * qi(2) + b).collect();
        let lhs = qt.dual_bracket(&xy, &z);
        let a = qt.dual_bracket(&x, &z);
        let b = qt.dual_bracket(&y, &z);
        let rhs: Vec<Q> = a.iter().zip(&b).map(|(a, b)| a * qi(2) + b).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dual_bracket_is_a_lie_bracket() {
        let qt = builtin::sl2();
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                let a = qt.dual_bracket(&basis(n, i), &basis(n, j));
                let b = qt.dual_bracket(&basis(n, j), &basis(n, i));
                assert!(a.iter().zip(&b).all(|(x, y)| (x + y).is_zero()));
                for k in 0..n {
                    let mut acc = vec![Q::zero(); n];
                    for (p, q_, r) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = qt.dual_bracket(&basis(n, p), &basis(n, q_));
                        let outer = qt.dual_bracket(&inner, &basis(n, r));
                        for (s, v) in acc.iter_mut().zip(outer) {
                            *s += v;
                        }
                    }
                    assert!(acc.iter().all(Zero::is_zero));
                }
            }
        }
    }

    #[test]
    fn l_and_r_are_lie_morphisms_and_differ_by_t() {
        let qt = builtin::sl2();
        let alg = qt.algebra();
        let n = 3;
        for i in 0..n {
            let diff: Vec<Q> = (0..n)
                .map(|j| &qt.l_map()[(j, i)] - &qt.r_map()[(j, i)])
                .collect();
            let t_col: Vec<Q> = (0..n).map(|j| qt.t().get(&[i, j]).clone()).collect();
            assert_eq!(diff, t_col);
            for j in 0..n {
                let br = qt.dual_bracket(&basis(n, i), &basis(n, j));
                for m in [qt.l_map(), qt.r_map()] {
                    let lhs = m.mul_vec(&br);
                    let rhs = alg.bracket_vec(&m.mul_vec(&basis(n, i)), &m.mul_vec(&basis(n, j)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn sl2_is_factorizable_abelian_zero_r_is_not() {
        assert!(builtin::sl2().is_factorizable());
        assert!(!builtin::abelian(2).is_factorizable());
    }

    #[test]
    fn non_invariant_symmetric_part_rejected() {
        let alg = builtin::sl2().algebra().clone();
        let mut r = Tensor::zeros(2, 3);
        r.set(&[2, 2], qi(1));
        assert!(matches!(
            Quasitriangular::new(alg, r),
            Err(LieError::NotInvariant { .. }) | Err(LieError::CybViolation { .. })
        ));
    }
}
