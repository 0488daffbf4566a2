//! Matrix and space-spec file formats.
//!
//! Distance matrices travel either as plain-decimal CSV (n rows × n
//! columns) or as a JSON object `{"n": int, "dist": [[...]]}`. Space specs
//! are JSON objects `{"kind": ..., "params": {...}}`.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::spaces::{validate_metric, FiniteMetricSpace, SpaceSpec};

/// Parses an n×n CSV of plain decimals.
pub fn parse_matrix_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Result<Vec<f64>> = line
            .split(',')
            .map(|cell| {
                cell.trim().parse::<f64>().map_err(|e| {
                    Error::Parse(format!("line {}: bad number {cell:?}: {e}", lineno + 1))
                })
            })
            .collect();
        rows.push(row?);
    }
    if rows.is_empty() {
        return Err(Error::Parse("no rows in CSV matrix".into()));
    }
    Ok(rows)
}

#[derive(Deserialize)]
struct MatrixJson {
    n: usize,
    dist: Vec<Vec<f64>>,
}

/// Parses the JSON form `{"n": int, "dist": [[...]]}`.
pub fn parse_matrix_json(text: &str) -> Result<Vec<Vec<f64>>> {
    let m: MatrixJson = serde_json::from_str(text)?;
    if m.dist.len() != m.n {
        return Err(Error::Parse(format!(
            "declared n = {} but dist has {} rows",
            m.n,
            m.dist.len()
        )));
    }
    Ok(m.dist)
}

/// Reads a matrix file, sniffing JSON (leading `{`) versus CSV, and
/// validates it into a metric space.
pub fn read_matrix(path: &Path) -> Result<FiniteMetricSpace> {
    let text = std::fs::read_to_string(path)?;
    matrix_from_str(&text)
}

/// As [`read_matrix`], from an in-memory string.
pub fn matrix_from_str(text: &str) -> Result<FiniteMetricSpace> {
    let raw = if text.trim_start().starts_with('{') {
        parse_matrix_json(text)?
    } else {
        parse_matrix_csv(text)?
    };
    FiniteMetricSpace::from_matrix(raw)
}

/// Raw matrix (unvalidated), for the validation command itself.
pub fn read_raw_matrix(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        parse_matrix_json(&text)
    } else {
        parse_matrix_csv(&text)
    }
}

/// CSV rendering of a distance matrix.
pub fn matrix_to_csv(fm: &FiniteMetricSpace) -> String {
    fm.matrix()
        .iter()
        .map(|row| {
            row.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

/// Parses a `SpaceSpec` from its JSON form and checks the parameters.
pub fn space_from_json(text: &str) -> Result<SpaceSpec> {
    let spec: SpaceSpec = serde_json::from_str(text)?;
    spec.validate()?;
    if let SpaceSpec::FiniteMatrix(fm) = &spec {
        let violations = validate_metric(fm.matrix())?;
        if !violations.is_empty() {
            return Err(Error::MetricViolation(format!(
                "{} violation(s); first: {:?}",
                violations.len(),
                violations[0]
            )));
        }
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let text = "0,1\n1,0\n";
        let fm = matrix_from_str(text).unwrap();
        assert_eq!(fm.n(), 2);
        assert_eq!(matrix_to_csv(&fm), text);
    }

    #[test]
    fn json_matrix_with_consistent_n() {
        let fm = matrix_from_str(r#"{"n":2,"dist":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(fm.n(), 2);
        assert!(matches!(
            parse_matrix_json(r#"{"n":3,"dist":[[0,1],[1,0]]}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn garbage_is_a_parse_error() {
        assert!(matches!(
            matrix_from_str("this is not a matrix"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn space_json_validates_parameters() {
        assert!(space_from_json(r#"{"kind":"HalfLineAlpha","params":{"alpha":0.7}}"#).is_ok());
        assert!(space_from_json(r#"{"kind":"HalfLineAlpha","params":{"alpha":1.7}}"#).is_err());
        assert!(space_from_json(
            r#"{"kind":"Snowflake","params":{"alpha":0.5,"base":{"kind":"EuclideanLine"}}}"#
        )
        .is_ok());
    }

    #[test]
    fn inline_matrix_shape_mismatch_is_rejected() {
        let e = space_from_json(r#"{"kind":"FiniteMatrix","params":{"n":3,"dist":[[0,1],[1,0]]}}"#);
        assert!(e.is_err());
        let ok = space_from_json(r#"{"kind":"FiniteMatrix","params":{"n":2,"dist":[[0,1],[1,0]]}}"#);
        assert!(ok.is_ok());
    }
}
