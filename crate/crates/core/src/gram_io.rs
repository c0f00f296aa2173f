//! Gram matrices as JSON: `{"dim": d, "entries": [[...], ...]}` where each
//! entry is an integer or a `"p/q"` string.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Matrix, Rational};
use crate::projection::GramMatrix;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GramFile {
    dim: usize,
    entries: Vec<Vec<Entry>>,
}

pub fn parse_gram_json(text: &str) -> Result<GramMatrix> {
    let f: GramFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if f.entries.len() != f.dim || f.entries.iter().any(|r| r.len() != f.dim) {
        return Err(Error::dimension(format!("entries do not form a {0}x{0} matrix", f.dim)));
    }
    let rows = f
        .entries
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| match e {
                    Entry::Int(i) => Ok(Rational::from_integer((*i).into())),
                    Entry::Text(s) => parse_rational(s),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GramMatrix::new(Matrix::from_rows(rows)?)
}

pub fn read_gram_file(path: &std::path::Path) -> Result<GramMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_gram_json(&text)
}

/// Rows of exact `"p/q"` strings.
pub fn gram_to_strings(g: &GramMatrix) -> Vec<Vec<String>> {
    g.matrix().to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

pub fn gram_to_json(g: &GramMatrix) -> serde_json::Value {
    serde_json::json!({ "dim": g.dim(), "entries": gram_to_strings(g) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn reads_mixed_entries() {
        let g = parse_gram_json(r#"{"dim": 2, "entries": [[1, "1/2"], ["1/2", 1]]}"#).unwrap();
        assert_eq!(g.entry(0, 1), &rat(1, 2));
    }

    #[test]
    fn round_trips() {
        let g = crate::catalog::lookup("D3*").unwrap().gram;
        let text = gram_to_json(&g).to_string();
        assert_eq!(parse_gram_json(&text).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_gram_json(r#"{"dim": 2, "entries": [[1, 0], [0, 1]], "x": 1}"#).is_err());
        assert!(parse_gram_json(r#"{"dim": 3, "entries": [[1, 0], [0, 1]]}"#).is_err());
        assert!(matches!(
            parse_gram_json(r#"{"dim": 2, "entries": [[1, 2], [2, 1]]}"#),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(parse_gram_json(r#"{"dim": 1, "entries": [[1.5]]}"#).is_err());
    }
}
