use std::fmt;
use std::path::Path;

use amoduli::ainfinity::{AnStructure, StructureJson};
use amoduli::curves::{CurveModel, SpecialCurveData};
use amoduli::poly::{RelationSystem, RelationSystemJson};
use amoduli::quiver::SubspaceW;
use amoduli::{ExactMatrix, Rat};
use anyhow::{Context, Result};
use serde::de::DeserializeOwned;

/// Bad flag values or input files; exits with status 2 and the usage line.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

pub fn rat(flag: &str, s: &str) -> Result<Rat> {
    match s.trim().parse::<Rat>() {
        Ok(r) => Ok(r),
        Err(_) => usage(format!("--{flag}: '{s}' is not a rational number")),
    }
}

/// "1,2/3;0,-1" → rows of rationals; "" → no rows.
pub fn matrix(flag: &str, s: &str) -> Result<Vec<Vec<Rat>>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|row| {
            if row.trim().is_empty() {
                return Ok(Vec::new());
            }
            row.split(',').map(|x| rat(flag, x)).collect()
        })
        .collect()
}

/// "1,3" → [1, 3].
pub fn index_list(flag: &str, s: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| match x.trim().parse::<usize>() {
            Ok(v) => Ok(v),
            Err(_) => usage(format!("--{flag}: '{x}' is not an index")),
        })
        .collect()
}

pub fn subspace(n: usize, g: Option<usize>, w: &str) -> Result<SubspaceW> {
    let rows = matrix("w", w)?;
    if rows.iter().any(|r| r.len() != n) {
        return usage(format!("--w: every row needs {n} entries"));
    }
    let g = g.unwrap_or(n.saturating_sub(rows.len()));
    if g > n {
        return usage(format!("--g {g} exceeds --n {n}"));
    }
    let m = ExactMatrix::from_dense_with_cols(&rows, n);
    SubspaceW::new(n, g, m).map_err(|e| UsageError(format!("--w: {e}")).into())
}

pub fn curve_data(n: usize, s: &str, a: &str) -> Result<SpecialCurveData> {
    let s = index_list("s", s)?;
    let a = matrix("a", a)?;
    SpecialCurveData::new(n, s, a).map_err(|e| UsageError(format!("curve data: {e}")).into())
}

pub fn read_json<T: DeserializeOwned>(flag: &str, path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("--{flag}: cannot read {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| UsageError(format!("--{flag}: {}: {e}", path.display())).into())
}

pub fn structure(flag: &str, path: &Path) -> Result<AnStructure> {
    let j: StructureJson = read_json(flag, path)?;
    AnStructure::from_json(&j).map_err(|e| UsageError(format!("--{flag}: {e}")).into())
}

pub fn relation_system(path: &Path) -> Result<RelationSystem> {
    let j: RelationSystemJson = read_json("input", path)?;
    RelationSystem::from_json(&j).map_err(|e| UsageError(format!("--input: {e}")).into())
}

/// Inline JSON or a path to a JSON file.
pub fn curve_model(flag: &str, s: &str) -> Result<CurveModel> {
    let text = if s.trim_start().starts_with('{') {
        s.to_string()
    } else {
        std::fs::read_to_string(s).with_context(|| format!("--{flag}: cannot read {s}"))?
    };
    serde_json::from_str(&text).map_err(|e| UsageError(format!("--{flag}: {e}")).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices() {
        let m = matrix("w", "1,2/3; 0,-1").unwrap();
        assert_eq!(m, vec![vec![Rat::one(), Rat::new(2, 3)], vec![Rat::zero(), -Rat::one()]]);
        assert!(matrix("w", "").unwrap().is_empty());
        assert!(matrix("w", "1,x").is_err());
    }

    #[test]
    fn subspaces() {
        assert_eq!(subspace(2, None, "1,1").unwrap().g(), 1);
        assert_eq!(subspace(1, Some(1), "").unwrap().g(), 1);
        assert!(subspace(2, Some(1), "").is_err());
        assert!(subspace(2, None, "1,1,1").is_err());
    }

    #[test]
    fn indices() {
        assert_eq!(index_list("s", "1, 3").unwrap(), vec![1, 3]);
        assert!(index_list("s", "a").is_err());
    }
}
