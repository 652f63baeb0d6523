//! JSON input formats: Lie algebras as sparse bracket tables, finite groups
//! as Cayley tables or named families, vectors as complex pair arrays.

use crate::groups::{FiniteGroup, GroupError};
use crate::lie::{LieAlgebra, LieError, RawAlgebra, ScalarMode};
use crate::linalg::{self, CVec, Rat};
use num::traits::Zero;
use num_complex::Complex64;
use serde::Deserialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown basis name {0:?} in bracket table")]
    UnknownBasisName(String),
    #[error("duplicate basis name {0:?}")]
    DuplicateBasisName(String),
    #[error("bracket pair ({left:?}, {right:?}) must have left index < right index")]
    BadBracketOrder { left: String, right: String },
    #[error("scalar {0:?} is not a number or p/q fraction")]
    BadScalar(String),
    #[error("\"scalars\" must be \"exact\" or \"float\", got {0:?}")]
    BadScalarMode(String),
    #[error("group input needs either a Cayley table or a family name")]
    MissingGroupData,
    #[error("unknown group family {0:?}")]
    UnknownFamily(String),
    #[error("family {family:?} needs parameter {param:?}")]
    MissingParam { family: String, param: String },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Deserialize)]
struct AlgebraFile {
    basis: Vec<String>,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
    #[serde(default)]
    scalars: Option<String>,
    #[serde(default)]
    tolerance: Option<f64>,
}

#[derive(Deserialize)]
struct BracketEntry {
    left: String,
    right: String,
    result: HashMap<String, serde_json::Value>,
}

fn parse_scalar(v: &serde_json::Value) -> Result<(f64, Option<Rat>), IoError> {
    match v {
        serde_json::Value::Number(n) => {
            let x = n.as_f64().ok_or_else(|| IoError::BadScalar(n.to_string()))?;
            Ok((x, linalg::rat_from_f64(x)))
        }
        serde_json::Value::String(s) => {
            let rat = parse_fraction(s).ok_or_else(|| IoError::BadScalar(s.clone()))?;
            Ok((linalg::rat_to_f64(&rat), Some(rat)))
        }
        other => Err(IoError::BadScalar(other.to_string())),
    }
}

fn parse_fraction(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num.trim().parse().ok()?;
        let d: i64 = den.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        Some(linalg::rat(n, d))
    } else {
        let n: i64 = s.parse().ok()?;
        Some(linalg::rat_int(n))
    }
}

/// Parse and validate an algebra from the sparse bracket format. Omitted
/// pairs are zero brackets; only pairs with left index < right index are
/// accepted, antisymmetry being implied.
pub fn algebra_from_json(text: &str) -> Result<LieAlgebra, IoError> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    let n = file.basis.len();
    let mut index = HashMap::new();
    for (i, name) in file.basis.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(IoError::DuplicateBasisName(name.clone()));
        }
    }
    let exact_requested = match file.scalars.as_deref() {
        None | Some("exact") => true,
        Some("float") => false,
        Some(other) => return Err(IoError::BadScalarMode(other.to_string())),
    };
    let mut tensor = vec![0.0f64; n * n * n];
    let mut exact = vec![Rat::zero(); n * n * n];
    let mut all_exact = true;
    for entry in &file.brackets {
        let i = *index
            .get(&entry.left)
            .ok_or_else(|| IoError::UnknownBasisName(entry.left.clone()))?;
        let j = *index
            .get(&entry.right)
            .ok_or_else(|| IoError::UnknownBasisName(entry.right.clone()))?;
        if i >= j {
            return Err(IoError::BadBracketOrder {
                left: entry.left.clone(),
                right: entry.right.clone(),
            });
        }
        for (name, value) in &entry.result {
            let k = *index.get(name).ok_or_else(|| IoError::UnknownBasisName(name.clone()))?;
            let (x, r) = parse_scalar(value)?;
            tensor[(i * n + j) * n + k] = x;
            tensor[(j * n + i) * n + k] = -x;
            match r {
                Some(r) => {
                    exact[(j * n + i) * n + k] = -&r;
                    exact[(i * n + j) * n + k] = r;
                }
                None => all_exact = false,
            }
        }
    }
    let use_exact = exact_requested && all_exact;
    let mode = if use_exact {
        ScalarMode::Exact
    } else {
        ScalarMode::Float { tol: file.tolerance.unwrap_or(1e-9) }
    };
    let raw = RawAlgebra {
        basis_names: file.basis,
        tensor,
        exact: use_exact.then_some(exact),
        mode,
    };
    Ok(LieAlgebra::validate(raw)?)
}

#[derive(Deserialize)]
struct GroupFile {
    #[serde(default)]
    order: Option<usize>,
    #[serde(default)]
    table: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    family: Option<String>,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    p: Option<usize>,
}

/// Parse a finite group: explicit `{"order", "table"}` or a bundled family
/// like `{"family": "heisenberg_mod", "p": 3}`.
pub fn group_from_json(text: &str) -> Result<FiniteGroup, IoError> {
    let file: GroupFile = serde_json::from_str(text)?;
    if let Some(table) = file.table {
        if let Some(order) = file.order {
            if order != table.len() {
                return Err(IoError::Group(GroupError::BadParams(format!(
                    "declared order {order} does not match table size {}",
                    table.len()
                ))));
            }
        }
        return Ok(FiniteGroup::from_table(table)?);
    }
    let family = file.family.ok_or(IoError::MissingGroupData)?;
    let need = |v: Option<usize>, param: &str| {
        v.ok_or_else(|| IoError::MissingParam { family: family.clone(), param: param.into() })
    };
    match family.as_str() {
        "cyclic" => Ok(FiniteGroup::cyclic(need(file.n, "n")?)?),
        "dihedral" => Ok(FiniteGroup::dihedral(need(file.n, "n")?)?),
        "symmetric" => Ok(FiniteGroup::symmetric(need(file.n, "n")?)?),
        "heisenberg_mod" => Ok(FiniteGroup::heisenberg_mod(need(file.p, "p")?)?),
        other => Err(IoError::UnknownFamily(other.to_string())),
    }
}

/// Vectors as arrays of [re, im] pairs or bare numbers.
pub fn vector_from_json(text: &str) -> Result<CVec, IoError> {
    let raw: Vec<serde_json::Value> = serde_json::from_str(text)?;
    let mut out = Vec::with_capacity(raw.len());
    for v in &raw {
        match v {
            serde_json::Value::Number(n) => {
                out.push(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0));
            }
            serde_json::Value::Array(pair) if pair.len() == 2 => {
                let re = pair[0].as_f64().ok_or_else(|| IoError::BadScalar(v.to_string()))?;
                let im = pair[1].as_f64().ok_or_else(|| IoError::BadScalar(v.to_string()))?;
                out.push(Complex64::new(re, im));
            }
            other => return Err(IoError::BadScalar(other.to_string())),
        }
    }
    Ok(CVec::from_vec(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ax_b_roundtrip() {
        let text = r#"{
            "basis": ["A", "X"],
            "brackets": [{"left": "A", "right": "X", "result": {"X": 1}}],
            "scalars": "exact"
        }"#;
        let g = algebra_from_json(text).unwrap();
        assert_eq!(g.dim(), 2);
        assert!(g.is_solvable() && !g.is_nilpotent());
    }

    #[test]
    fn fraction_scalars() {
        let text = r#"{
            "basis": ["D", "E"],
            "brackets": [{"left": "D", "right": "E", "result": {"E": "1/2"}}]
        }"#;
        let g = algebra_from_json(text).unwrap();
        assert_eq!(g.structure_constant(0, 1, 1), 0.5);
        assert!(matches!(g.mode(), ScalarMode::Exact));
    }

    #[test]
    fn bad_order_rejected() {
        let text = r#"{
            "basis": ["A", "X"],
            "brackets": [{"left": "X", "right": "A", "result": {"X": 1}}]
        }"#;
        assert!(matches!(algebra_from_json(text), Err(IoError::BadBracketOrder { .. })));
    }

    #[test]
    fn unknown_name_rejected() {
        let text = r#"{"basis": ["A"], "brackets": [{"left": "A", "right": "B", "result": {}}]}"#;
        assert!(matches!(algebra_from_json(text), Err(IoError::UnknownBasisName(_))));
    }

    #[test]
    fn group_family_and_table() {
        let g = group_from_json(r#"{"family": "heisenberg_mod", "p": 2}"#).unwrap();
        assert_eq!(g.order(), 8);
        let z3 = group_from_json(r#"{"order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]}"#).unwrap();
        assert_eq!(z3.order(), 3);
        assert!(matches!(
            group_from_json(r#"{"family": "simple"}"#),
            Err(IoError::UnknownFamily(_))
        ));
    }

    #[test]
    fn vectors_parse_both_forms() {
        let v = vector_from_json("[1, [0.5, -2]]").unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[1], Complex64::new(0.5, -2.0));
    }
}
