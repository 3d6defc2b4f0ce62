//! JSON algebra description.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "basis": ["e", "f", "h"],
//!   "brackets": [[2, 0, 0, "2"], [2, 1, 1, "-2"], [0, 1, 2, "1"]],
//!   "r": [[0, 1, "1"], [2, 2, "1/4"]]
//! }
//! ```
//!
//! `brackets` entries are `[i, j, k, c]` meaning `[e_i, e_j]` has `c` on
//! `e_k`; `r` entries are `[i, j, c]` for `c e_i ⊗ e_j`. Indices are 0-based,
//! coefficients are `"p/q"` or `"p"` strings.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{LieAlgebra, LieError, Quasitriangular, Tensor};
use crate::scalar::{fmt_q, Q};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<(usize, usize, usize, String)>,
    pub r: Vec<(usize, usize, String)>,
}

#[derive(Debug, Error)]
pub enum SpecFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed algebra file (line {line}, column {column}): {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}` entry {entry}: `{value}` is not a rational of the form p/q")]
    BadRational {
        field: &'static str,
        entry: usize,
        value: String,
    },
    #[error("field `basis` has {found} labels but `dim` is {dim}")]
    BasisLength { dim: usize, found: usize },
    #[error("field `r` entry {entry}: index {index} out of range for dimension {dim}")]
    RIndex { entry: usize, index: usize, dim: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
}

fn parse_rational(field: &'static str, entry: usize, s: &str) -> Result<Q, SpecFileError> {
    let bad = || SpecFileError::BadRational {
        field,
        entry,
        value: s.to_string(),
    };
    let t = s.trim();
    if t.is_empty() || t.contains('.') || t.contains('e') || t.contains('E') {
        return Err(bad());
    }
    Q::from_str(t).map_err(|_| bad())
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self, SpecFileError> {
        serde_json::from_str(text).map_err(|e| SpecFileError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, SpecFileError> {
        let text = std::fs::read_to_string(path).map_err(|source| SpecFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Parse coefficients and validate every axiom.
    pub fn build(&self) -> Result<Quasitriangular, SpecFileError> {
        if self.basis.len() != self.dim {
            return Err(SpecFileError::BasisLength {
                dim: self.dim,
                found: self.basis.len(),
            });
        }
        let entries = self
            .brackets
            .iter()
            .enumerate()
            .map(|(n, (i, j, k, c))| Ok((*i, *j, *k, parse_rational("brackets", n, c)?)))
            .collect::<Result<Vec<_>, SpecFileError>>()?;
        let alg = LieAlgebra::from_entries(self.basis.clone(), &entries)?;
        let mut r = Tensor::zeros(2, self.dim);
        for (n, (i, j, c)) in self.r.iter().enumerate() {
            for &index in [i, j] {
                if index >= self.dim {
                    return Err(SpecFileError::RIndex {
                        entry: n,
                        index,
                        dim: self.dim,
                    });
                }
            }
            r.add_at(&[*i, *j], &parse_rational("r", n, c)?);
        }
        Ok(Quasitriangular::new(alg, r)?)
    }

    /// Canonical description of an already validated structure.
    pub fn describe(qt: &Quasitriangular) -> Self {
        let alg = qt.algebra();
        let brackets = alg
            .constants()
            .iter()
            .flat_map(|(&(i, j), list)| list.iter().map(move |(k, c)| (i, j, *k, fmt_q(c))))
            .collect();
        let r = qt
            .r()
            .entries()
            .map(|(idx, c)| (idx[0], idx[1], fmt_q(c)))
            .collect();
        AlgebraSpec {
            dim: alg.dim(),
            basis: alg.labels().to_vec(),
            brackets,
            r,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtin;

    const SL2: &str = r#"{
        "dim": 3,
        "basis": ["e", "f", "h"],
        "brackets": [[2, 0, 0, "2"], [2, 1, 1, "-2"], [0, 1, 2, "1"]],
        "r": [[0, 1, "1"], [2, 2, "1/4"]]
    }"#;

    #[test]
    fn sl2_file_matches_builtin() {
        let qt = AlgebraSpec::from_json(SL2).unwrap().build().unwrap();
        let b = builtin::sl2();
        assert_eq!(qt.algebra(), b.algebra());
        assert_eq!(qt.r(), b.r());
    }

    #[test]
    fn describe_roundtrips() {
        let b = builtin::sl2();
        let spec = AlgebraSpec::describe(&b);
        let text = serde_json::to_string(&spec).unwrap();
        let again = AlgebraSpec::from_json(&text).unwrap().build().unwrap();
        assert_eq!(again.r(), b.r());
        assert_eq!(again.algebra(), b.algebra());
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = SL2.replacen("\"dim\"", "\"extra\": 1, \"dim\"", 1);
        assert!(matches!(
            AlgebraSpec::from_json(&text),
            Err(SpecFileError::Json { .. })
        ));
    }

    #[test]
    fn decimals_rejected() {
        let text = SL2.replace("\"1/4\"", "\"0.25\"");
        let err = AlgebraSpec::from_json(&text).unwrap().build().unwrap_err();
        assert!(matches!(err, SpecFileError::BadRational { field: "r", entry: 1, .. }));
    }

    #[test]
    fn broken_r_reports_cyb() {
        let text = SL2.replace("\"1/4\"", "\"1/2\"");
        let err = AlgebraSpec::from_json(&text).unwrap().build().unwrap_err();
        assert!(matches!(err, SpecFileError::Lie(LieError::CybViolation { .. })));
    }

    #[test]
    fn json_errors_carry_position() {
        match AlgebraSpec::from_json("{\n  \"dim\": 3,\n  \"basis\": [1]\n}") {
            Err(SpecFileError::Json { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }
}
