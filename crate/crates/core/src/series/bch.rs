//! Baker-Campbell-Hausdorff product on truncated series.
//!
//! `log(e^X e^Y)` is expanded in the free associative algebra on two letters
//! and converted to brackets with the Dynkin-Specht-Wever projection: a Lie
//! element `Σ c_w w` equals `Σ c_w/|w| [w]` with `[w]` the left-normed bracket.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use super::{SeriesError, TensorSeries};
use crate::lie::LieAlgebra;
use crate::scalar::{qi, Scalar, Q};

type Word = Vec<u8>;
type FreeElem = BTreeMap<Word, Q>;

fn free_mul(a: &FreeElem, b: &FreeElem, max_len: usize) -> FreeElem {
    let mut out = FreeElem::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            if wa.len() + wb.len() > max_len {
                continue;
            }
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            let e = out.entry(w).or_insert_with(Q::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn free_exp_letter(letter: u8, max_len: usize) -> FreeElem {
    let mut out = FreeElem::new();
    let mut fact = Q::one();
    for k in 0..=max_len {
        if k > 0 {
            fact *= qi(k as i64);
        }
        out.insert(vec![letter; k], Q::one() / &fact);
    }
    out
}

/// Coefficients `c_w / |w|` of the Dynkin form of `log(e^X e^Y)`, letters
/// `0 = X`, `1 = Y`, words of length `1..=max_len`.
fn dynkin_coefficients(max_len: usize) -> FreeElem {
    let prod = free_mul(
        &free_exp_letter(0, max_len),
        &free_exp_letter(1, max_len),
        max_len,
    );
    let mut u = prod;
    u.remove(&Word::new());
    // log(1 + u) = Σ (−1)^{k+1} u^k / k
    let mut log = FreeElem::new();
    let mut power = u.clone();
    for k in 1..=max_len {
        let c = if k % 2 == 1 { qi(1) } else { qi(-1) } / qi(k as i64);
        for (w, v) in &power {
            *log.entry(w.clone()).or_insert_with(Q::zero) += &c * v;
        }
        power = free_mul(&power, &u, max_len);
    }
    log.retain(|_, c| !c.is_zero());
    log.into_iter()
        .map(|(w, c)| {
            let n = qi(w.len() as i64);
            (w, c / n)
        })
        .collect()
}

fn cached_coefficients(max_len: usize) -> FreeElem {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, FreeElem>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(max_len)
        .or_insert_with(|| dynkin_coefficients(max_len))
        .clone()
}

/// `[a, b]` for rank-1 series.
pub fn bracket<T: Scalar>(
    alg: &LieAlgebra,
    a: &TensorSeries<T>,
    b: &TensorSeries<T>,
) -> TensorSeries<T> {
    b.ad_on_slot(alg, a, 0)
}

/// `log(e^X e^Y)` through the common truncation degree.
pub fn bch<T: Scalar>(
    alg: &LieAlgebra,
    x: &TensorSeries<T>,
    y: &TensorSeries<T>,
) -> Result<TensorSeries<T>, SeriesError> {
    if x.min_degree() == Some(0) || y.min_degree() == Some(0) {
        return Err(SeriesError::NonPositiveDegreeInput);
    }
    let depth = x.trunc().min(y.trunc()).max(1);
    Ok(bch_depth(alg, x, y, depth))
}

/// BCH cut at bracket depth `depth`, with no check on the inputs. Exact when
/// every bracket of more than `depth` letters vanishes.
pub fn bch_depth<T: Scalar>(
    alg: &LieAlgebra,
    x: &TensorSeries<T>,
    y: &TensorSeries<T>,
    depth: usize,
) -> TensorSeries<T> {
    assert_eq!(x.rank(), 1);
    assert_eq!(y.rank(), 1);
    let coeffs = cached_coefficients(depth);
    let trunc = x.trunc().min(y.trunc());
    let mut out = TensorSeries::zero(x.dim(), 1, trunc);
    let letters = [x.clone().truncated(trunc), y.clone().truncated(trunc)];
    let mut word = Word::new();
    for first in 0..2u8 {
        word.push(first);
        descend(alg, &coeffs, &letters, &mut word, &letters[first as usize], depth, &mut out);
        word.pop();
    }
    out
}

fn descend<T: Scalar>(
    alg: &LieAlgebra,
    coeffs: &FreeElem,
    letters: &[TensorSeries<T>; 2],
    word: &mut Word,
    value: &TensorSeries<T>,
    depth: usize,
    out: &mut TensorSeries<T>,
) {
    if value.is_zero() {
        return;
    }
    if let Some(c) = coeffs.get(word) {
        out.add_assign(&value.scale_q(c));
    }
    if word.len() == depth {
        return;
    }
    for l in 0..2u8 {
        word.push(l);
        let next = bracket(alg, value, &letters[l as usize]);
        descend(alg, coeffs, letters, word, &next, depth, out);
        word.pop();
    }
}
