//! JSON matrix files: `{"dim": n, "tensor_shape": [..], "entries": [[expr, ..], ..]}`.

use serde::{Deserialize, Serialize};

use crate::error::ExactError;
use crate::matrix::ExactMatrix;
use crate::parse::parse_scalar;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor_shape: Option<Vec<usize>>,
    pub entries: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ExactMatrix) -> MatrixFile {
        let n = m.dim();
        MatrixFile {
            dim: n,
            tensor_shape: m.shape().map(<[usize]>::to_vec),
            entries: (0..n).map(|i| (0..n).map(|j| m.get(i, j).to_expr()).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ExactMatrix, ExactError> {
        if self.entries.len() != self.dim {
            return Err(ExactError::Format(format!("dim is {} but {} rows given", self.dim, self.entries.len())));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let m = ExactMatrix::from_rows(rows)?;
        match &self.tensor_shape {
            Some(s) => m.with_shape(s.clone()),
            None => Ok(m),
        }
    }
}

pub fn matrix_to_json(m: &ExactMatrix) -> String {
    serde_json::to_string(&MatrixFile::from_matrix(m)).expect("matrix serializes")
}

pub fn matrix_from_json(s: &str) -> Result<ExactMatrix, ExactError> {
    let f: MatrixFile = serde_json::from_str(s).map_err(|e| ExactError::Format(e.to_string()))?;
    f.to_matrix()
}
