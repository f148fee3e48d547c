//! Matrix files, CSV tables and hashing.

use std::fmt::Write as _;
use std::path::Path;

use quatrange_core::{QMatrix, Quaternion};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

/// On-disk layout: `{"n": 3, "entries": [[[w, x, y, z], ...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<Vec<[f64; 4]>>,
}

impl MatrixFile {
    pub fn from_matrix(a: &QMatrix) -> Self {
        Self {
            n: a.n(),
            entries: a.rows().map(|r| r.iter().map(|q| q.to_array()).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<QMatrix, CliError> {
        if self.entries.len() != self.n {
            return Err(CliError::Input(format!("expected {} rows, found {}", self.n, self.entries.len())));
        }
        let mut rows = Vec::with_capacity(self.n);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.n {
                return Err(CliError::Input(format!("row {} has {} entries, expected {}", i + 1, row.len(), self.n)));
            }
            for (j, q) in row.iter().enumerate() {
                if q.iter().any(|v| !v.is_finite()) {
                    return Err(CliError::Input(format!("entry ({}, {}) is not finite", i + 1, j + 1)));
                }
            }
            rows.push(row.iter().map(|q| Quaternion::from_array(*q)).collect());
        }
        QMatrix::from_rows(&rows).map_err(|e| CliError::Input(e.to_string()))
    }
}

pub fn parse_matrix(text: &str) -> Result<QMatrix, CliError> {
    let file: MatrixFile = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("line {}, column {}: {}", e.line(), e.column(), e)))?;
    file.to_matrix()
}

/// Reads a matrix file and returns it with the SHA-256 of its bytes.
pub fn load_matrix(path: &Path) -> Result<(QMatrix, String), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let m = parse_matrix(text).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })?;
    Ok((m, sha256_hex(&bytes)))
}

pub fn matrix_json(a: &QMatrix) -> String {
    serde_json::to_string_pretty(&MatrixFile::from_matrix(a)).expect("matrix serializes")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// `re,im` rows with 17 significant digits.
pub fn points_csv(points: impl IntoIterator<Item = (f64, f64)>) -> String {
    let mut out = String::from("re,im\n");
    for (x, y) in points {
        let _ = writeln!(out, "{x:.16e},{y:.16e}");
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
