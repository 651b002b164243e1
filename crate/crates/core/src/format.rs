//! JSON file formats for complexes and algebras.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::MixedComplex;
use crate::error::{Error, Result};
use crate::linear::{Field, Matrix, Scalar};
use crate::poly::{PolySeq, PolySeqSpec};

/// A scalar as written in JSON: an integer or a string `"a"`, `"a/b"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    pub fn to_scalar(&self, field: Field) -> Result<Scalar> {
        match self {
            Entry::Int(v) => Ok(field.from_i64(*v)),
            Entry::Text(s) => field.parse(s),
        }
    }
}

impl From<&Scalar> for Entry {
    fn from(s: &Scalar) -> Entry {
        match s.to_i64() {
            Some(v) => Entry::Int(v),
            None => Entry::Text(s.to_string()),
        }
    }
}

/// Rows of entries for a `rows x cols` matrix.
pub fn matrix_to_entries(m: &Matrix) -> Vec<Vec<Entry>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(Entry::from).collect())
        .collect()
}

/// Parses rows of entries; `rows`/`cols` are the expected shape. An empty
/// row list is accepted whenever the matrix has no entries.
pub fn matrix_from_entries(
    field: Field,
    rows: usize,
    cols: usize,
    data: &[Vec<Entry>],
    what: &str,
) -> Result<Matrix> {
    if data.is_empty() && (rows == 0 || cols == 0) {
        return Ok(Matrix::zeros(field, rows, cols));
    }
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidComplex(format!(
            "{what}: expected a {rows}x{cols} matrix"
        )));
    }
    let parsed = data
        .iter()
        .map(|r| r.iter().map(|e| e.to_scalar(field)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, cols, parsed)
}

/// Complex file format. Maps are keyed by their source degree; a missing
/// key means the zero map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub field: Field,
    #[serde(rename = "N")]
    pub top: usize,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub b: BTreeMap<usize, Vec<Vec<Entry>>>,
    #[serde(default)]
    pub d: BTreeMap<usize, Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trusted_degree: Option<usize>,
    /// Polynomial sequence the complex is meant to be deformed by.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<PolySeqSpec>,
}

impl ComplexSpec {
    /// Every stored map is written, including zero ones.
    pub fn from_complex(c: &MixedComplex, seq: Option<&PolySeq>) -> ComplexSpec {
        let top = c.top();
        ComplexSpec {
            field: c.field(),
            top,
            dims: c.dims().to_vec(),
            b: (1..=top).map(|n| (n, matrix_to_entries(c.b(n)))).collect(),
            d: (0..top).map(|n| (n, matrix_to_entries(c.d(n)))).collect(),
            name: (!c.name().is_empty()).then(|| c.name().to_string()),
            trusted_degree: c.trusted_degree(),
            c: seq.map(PolySeq::to_spec),
        }
    }

    pub fn to_complex(&self) -> Result<(MixedComplex, Option<PolySeq>)> {
        let field = self.field;
        let dims = &self.dims;
        if dims.len() != self.top + 1 {
            return Err(Error::InvalidComplex(format!(
                "N = {} needs {} dims, got {}",
                self.top,
                self.top + 1,
                dims.len()
            )));
        }
        if let Some(&n) = self.b.keys().find(|&&n| n == 0 || n > self.top) {
            return Err(Error::InvalidComplex(format!("b_{n} is outside 1..=N")));
        }
        if let Some(&n) = self.d.keys().find(|&&n| n >= self.top) {
            return Err(Error::InvalidComplex(format!("d_{n} is outside 0..N")));
        }
        let map = |data: Option<&Vec<Vec<Entry>>>, rows, cols, what: String| match data {
            Some(data) => matrix_from_entries(field, rows, cols, data, &what),
            None => Ok(Matrix::zeros(field, rows, cols)),
        };
        let b = (1..=self.top)
            .map(|n| map(self.b.get(&n), dims[n - 1], dims[n], format!("b_{n}")))
            .collect::<Result<Vec<_>>>()?;
        let d = (0..self.top)
            .map(|n| map(self.d.get(&n), dims[n + 1], dims[n], format!("d_{n}")))
            .collect::<Result<Vec<_>>>()?;
        if let Some(t) = self.trusted_degree {
            if t > self.top {
                return Err(Error::InvalidComplex(format!("trusted degree {t} exceeds N")));
            }
        }
        let complex = MixedComplex::new(field, dims.clone(), b, d)?
            .with_name(self.name.clone().unwrap_or_default())
            .with_trusted_degree(self.trusted_degree);
        let seq = self.c.as_ref().map(|s| PolySeq::from_spec(field, s)).transpose()?;
        Ok((complex, seq))
    }
}

pub fn complex_from_json(text: &str) -> Result<(MixedComplex, Option<PolySeq>)> {
    serde_json::from_str::<ComplexSpec>(text)?.to_complex()
}

/// Pretty JSON with a trailing newline; arrays of scalars (matrix rows,
/// dims) stay on one line.
pub fn complex_to_json(c: &MixedComplex, seq: Option<&PolySeq>) -> String {
    let pretty = serde_json::to_string_pretty(&ComplexSpec::from_complex(c, seq))
        .expect("complex specs serialize");
    let mut s = collapse_flat_arrays(&pretty);
    s.push('\n');
    s
}

/// Joins every array without nested containers onto a single line.
pub fn collapse_flat_arrays(pretty: &str) -> String {
    let chars: Vec<char> = pretty.chars().collect();
    let mut out = String::with_capacity(pretty.len());
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '"' {
            let end = string_end(&chars, i);
            out.extend(&chars[i..end]);
            i = end;
        } else if c == '[' {
            match flat_array_items(&chars, i) {
                Some((items, end)) => {
                    out.push('[');
                    out.push_str(&items.join(", "));
                    out.push(']');
                    i = end;
                }
                None => {
                    out.push(c);
                    i += 1;
                }
            }
        } else {
            out.push(c);
            i += 1;
        }
    }
    out
}

/// Index just past the string literal starting at `start`.
fn string_end(chars: &[char], start: usize) -> usize {
    let mut i = start + 1;
    while chars[i] != '"' {
        i += if chars[i] == '\\' { 2 } else { 1 };
    }
    i + 1
}

/// Items of the array opening at `start` if it holds no containers, and the
/// index just past its closing bracket.
fn flat_array_items(chars: &[char], start: usize) -> Option<(Vec<String>, usize)> {
    let mut items = Vec::new();
    let mut current = String::new();
    let mut i = start + 1;
    loop {
        match chars[i] {
            '[' | '{' => return None,
            '"' => {
                let end = string_end(chars, i);
                current.extend(&chars[i..end]);
                i = end;
                continue;
            }
            ']' => break,
            ',' => items.push(std::mem::take(&mut current)),
            c if c.is_whitespace() => {}
            c => current.push(c),
        }
        i += 1;
    }
    if !current.is_empty() {
        items.push(current);
    }
    Some((items, i + 1))
}
