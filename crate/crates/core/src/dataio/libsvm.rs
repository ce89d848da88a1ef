//! LIBSVM text format: `label idx:val idx:val ...` with 1-based indices.

use std::fmt::Write as _;
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::SparseMatrix;

/// Labelled sparse design matrix with labels in `{-1, +1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseDataset {
    pub features: SparseMatrix,
    pub labels: Vec<f64>,
    pub source: Option<String>,
}

impl SparseDataset {
    pub fn new(features: SparseMatrix, labels: Vec<f64>) -> Result<Self> {
        if labels.len() != features.n_rows() {
            return Err(Error::InvalidArgument(format!("{} labels for {} rows", labels.len(), features.n_rows())));
        }
        if let Some(bad) = labels.iter().find(|&&b| b != 1.0 && b != -1.0) {
            return Err(Error::InvalidArgument(format!("label {bad} is not +1 or -1")));
        }
        Ok(Self { features, labels, source: None })
    }

    pub fn n_samples(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.features.n_cols()
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses LIBSVM text. Blank lines and lines starting with `#` are skipped.
/// Labels `> 0` map to `+1`, everything else to `-1`; the feature count is
/// the largest index seen.
pub fn parse_libsvm<R: BufRead>(reader: R) -> Result<SparseDataset> {
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut n_cols = 0usize;
    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let label_tok = tokens.next().expect("non-empty line has a token");
        let label: f64 = label_tok.parse().map_err(|_| parse_err(lineno, format!("malformed label `{label_tok}`")))?;
        if !label.is_finite() {
            return Err(parse_err(lineno, format!("non-finite label `{label_tok}`")));
        }
        let mut row: Vec<(usize, f64)> = Vec::new();
        for tok in tokens {
            let (idx, val) =
                tok.split_once(':').ok_or_else(|| parse_err(lineno, format!("malformed token `{tok}`")))?;
            let idx: usize = idx.parse().map_err(|_| parse_err(lineno, format!("malformed index in `{tok}`")))?;
            if idx == 0 {
                return Err(parse_err(lineno, format!("index 0 in `{tok}`; indices are 1-based")));
            }
            let val: f64 = val.parse().map_err(|_| parse_err(lineno, format!("malformed value in `{tok}`")))?;
            if !val.is_finite() {
                return Err(parse_err(lineno, format!("non-finite value in `{tok}`")));
            }
            let col = idx - 1;
            if let Some(&(prev, _)) = row.last() {
                if col <= prev {
                    return Err(parse_err(lineno, format!("index {idx} is not strictly increasing")));
                }
            }
            n_cols = n_cols.max(idx);
            row.push((col, val));
        }
        rows.push(row);
        labels.push(if label > 0.0 { 1.0 } else { -1.0 });
    }
    if rows.is_empty() {
        return Err(parse_err(0, "empty dataset"));
    }
    let features = SparseMatrix::new(n_cols, rows)?;
    SparseDataset::new(features, labels)
}

pub fn read_libsvm(path: impl AsRef<Path>) -> Result<SparseDataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)?;
    let mut ds = parse_libsvm(std::io::BufReader::new(file))?;
    ds.source = Some(path.display().to_string());
    Ok(ds)
}

/// Inverse of [`parse_libsvm`] using shortest round-trip decimals.
pub fn to_libsvm_string(ds: &SparseDataset) -> String {
    let mut out = String::new();
    for (row, label) in ds.features.rows().zip(&ds.labels) {
        out.push_str(if *label > 0.0 { "+1" } else { "-1" });
        for &(j, v) in row {
            write!(out, " {}:{:?}", j + 1, v).expect("writing to String");
        }
        out.push('\n');
    }
    out
}

pub fn write_libsvm(ds: &SparseDataset, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_libsvm_string(ds))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_example() {
        let ds = parse_libsvm("+1 1:0.5 3:2.0\n-1 2:1.0".as_bytes()).unwrap();
        assert_eq!(ds.n_samples(), 2);
        assert_eq!(ds.n_features(), 3);
        assert_eq!(ds.features.row(0), &[(0, 0.5), (2, 2.0)]);
        assert_eq!(ds.features.row(1), &[(1, 1.0)]);
        assert_eq!(ds.labels, vec![1.0, -1.0]);
    }

    #[test]
    fn empty_input_is_an_error() {
        let err = parse_libsvm("".as_bytes()).unwrap_err();
        assert!(err.to_string().contains("empty dataset"));
        assert!(parse_libsvm("# only a comment\n\n".as_bytes()).is_err());
    }

    #[test]
    fn label_mapping_and_comments() {
        let ds = parse_libsvm("# header\n2 1:1\n\n1 1:1\n0 1:1\n-3 1:1\n".as_bytes()).unwrap();
        assert_eq!(ds.labels, vec![1.0, 1.0, -1.0, -1.0]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("+1 1:0.5\n-1 3:1 2:1\n", 2),
            ("+1 1:0.5\n+1 a:1\n", 2),
            ("x 1:1\n", 1),
            ("+1 1:1\n\n+1 0:1\n", 3),
            ("+1 1-1\n", 1),
            ("+1 2:1 2:3\n", 1),
        ];
        for (text, line) in cases {
            match parse_libsvm(text.as_bytes()) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn serialise_then_parse_is_identity() {
        let ds = parse_libsvm("+1 1:0.1 4:-2.5e-7\n-1\n+1 2:3\n".as_bytes()).unwrap();
        let again = parse_libsvm(to_libsvm_string(&ds).as_bytes()).unwrap();
        assert_eq!(again, ds);
    }
}
