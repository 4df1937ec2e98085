//! Input files: matrices, glue specs and symmetry bundles.

use std::fs;
use std::path::Path;

use regz_core::gz::{chain_build, Block, ChainData, GlueStep};
use regz_core::hecke::HeckeSymmetry;
use regz_core::CoreError;
use regz_exact::io::MatrixFile;
use regz_exact::{parse_scalar, ExactMatrix, RatFunc};
use serde::{Deserialize, Serialize};

/// Malformed or unreadable input; maps to the usage exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GlueEntry {
    pub block: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
}

/// Serialized symmetry with its skew-inverse data.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Bundle {
    #[serde(rename = "R")]
    pub r: MatrixFile,
    pub psi: MatrixFile,
    pub c_matrix: MatrixFile,
    pub kind: String,
    pub params: Vec<String>,
}

impl Bundle {
    pub fn from_symmetry(s: &HeckeSymmetry) -> Bundle {
        Bundle {
            r: MatrixFile::from_matrix(s.r()),
            psi: MatrixFile::from_matrix(s.psi()),
            c_matrix: MatrixFile::from_matrix(s.c_matrix()),
            kind: s.kind().as_str().to_string(),
            params: s.params().to_vec(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum InputFile {
    Matrix(ExactMatrix),
    Glue(Vec<GlueStep>),
    Bundle(Bundle),
}

pub fn scalar(s: &str) -> Result<RatFunc, InputError> {
    parse_scalar(s).map_err(|e| InputError(format!("{s:?}: {e}")))
}

pub fn glue_steps(entries: &[GlueEntry]) -> Result<Vec<GlueStep>, InputError> {
    if entries.is_empty() {
        return Err(InputError("empty glue spec".into()));
    }
    entries
        .iter()
        .map(|e| {
            let block = Block::parse(&e.block).map_err(|x| InputError(x.to_string()))?;
            let alpha = scalar(e.alpha.as_deref().unwrap_or("1"))?;
            Ok(GlueStep { block, alpha })
        })
        .collect()
}

/// Parse a glue spec given inline as `+q,+q,-1/q` with a common parameter.
pub fn glue_steps_inline(blocks: &str, alpha: &str) -> Result<Vec<GlueStep>, InputError> {
    let entries: Vec<GlueEntry> =
        blocks.split(',').map(|b| GlueEntry { block: b.trim().to_string(), alpha: Some(alpha.to_string()) }).collect();
    glue_steps(&entries)
}

pub fn parse_input(text: &str) -> Result<InputFile, InputError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| InputError(format!("not JSON: {e}")))?;
    let bad = |e: serde_json::Error| InputError(e.to_string());
    if v.is_array() {
        let entries: Vec<GlueEntry> = serde_json::from_value(v).map_err(bad)?;
        return Ok(InputFile::Glue(glue_steps(&entries)?));
    }
    if v.get("R").is_some() {
        return Ok(InputFile::Bundle(serde_json::from_value(v).map_err(bad)?));
    }
    let f: MatrixFile = serde_json::from_value(v).map_err(bad)?;
    Ok(InputFile::Matrix(f.to_matrix().map_err(|e| InputError(e.to_string()))?))
}

pub fn read_input(path: &Path) -> Result<InputFile, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    parse_input(&text)
}

/// The matrix carried by an input, before any validation.
pub fn input_matrix(input: &InputFile) -> Result<ExactMatrix, InputError> {
    match input {
        InputFile::Matrix(m) => Ok(m.clone()),
        InputFile::Bundle(b) => b.r.to_matrix().map_err(|e| InputError(e.to_string())),
        InputFile::Glue(steps) => chain_build(steps).map(|c| c.top().r().clone()).map_err(|e| InputError(e.to_string())),
    }
}

/// Validate an input as a symmetry. A bundle must agree with the recomputed
/// skew-inverse data.
pub fn input_symmetry(input: &InputFile) -> Result<HeckeSymmetry, CoreError> {
    match input {
        InputFile::Matrix(m) => HeckeSymmetry::new(m.clone()),
        InputFile::Glue(steps) => chain_build(steps).map(|c| c.top().clone()),
        InputFile::Bundle(b) => {
            let s = HeckeSymmetry::new(b.r.to_matrix()?)?;
            let recomputed = Bundle::from_symmetry(&s);
            if recomputed.psi.to_matrix()? != b.psi.to_matrix()? || recomputed.c_matrix.to_matrix()? != b.c_matrix.to_matrix()? {
                return Err(CoreError::Invalid("bundle psi/c_matrix disagree with the recomputed skew-inverse".into()));
            }
            if recomputed.kind != b.kind {
                return Err(CoreError::Invalid(format!("bundle kind {} but matrix is {}", b.kind, recomputed.kind)));
            }
            Ok(s)
        }
    }
}

pub fn input_chain(input: &InputFile) -> Result<ChainData, InputError> {
    match input {
        InputFile::Glue(steps) => chain_build(steps).map_err(|e| InputError(e.to_string())),
        _ => Err(InputError("a glue spec is required".into())),
    }
}

/// Human-readable label of a glue spec, e.g. `(+q,+q;q)`.
pub fn chain_label(steps: &[GlueStep]) -> String {
    let blocks: Vec<&str> = steps.iter().map(|s| s.block.as_str()).collect();
    let alphas: Vec<String> = steps.iter().skip(1).map(|s| s.alpha.to_expr()).collect();
    format!("({};{})", blocks.join(","), alphas.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognises_the_three_formats() {
        let g = parse_input(r#"[{"block":"+q"},{"block":"-1/q","alpha":"q^2"}]"#).unwrap();
        assert!(matches!(&g, InputFile::Glue(s) if s.len() == 2));
        let m = parse_input(r#"{"dim":1,"entries":[["q"]]}"#).unwrap();
        assert!(matches!(m, InputFile::Matrix(_)));
        let b = serde_json::to_string(&Bundle::from_symmetry(&HeckeSymmetry::dj(2))).unwrap();
        let parsed = parse_input(&b).unwrap();
        assert_eq!(input_symmetry(&parsed).unwrap().r(), HeckeSymmetry::dj(2).r());
        assert!(parse_input("[]").is_err());
        assert!(parse_input(r#"[{"block":"+x"}]"#).is_err());
        assert!(parse_input("{").is_err());
    }

    #[test]
    fn tampered_bundle_is_rejected() {
        let mut b = Bundle::from_symmetry(&HeckeSymmetry::dj(2));
        b.c_matrix.entries[0][0] = "7".into();
        assert!(input_symmetry(&InputFile::Bundle(b)).is_err());
    }
}
