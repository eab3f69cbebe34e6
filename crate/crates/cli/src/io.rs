//! Versioned JSON encoding of gasket elements.
//!
//! ```json
//! { "schema": 1, "level": 1, "xi": [[1, 0], [0, 0], [0, 0]],
//!   "blocks": [ { "k": 0, "j": 2, "matrix": [[[0.5, -1]]] } ] }
//! ```
//!
//! Block `(k, j)` is `η_{k,j}`, a `3^k × 3^k` row-major matrix. Zero blocks
//! are omitted on write and default to zero on read.

use std::path::{Path, PathBuf};

use ncgasket::tensor::{pow3, ComplexMatrix};
use ncgasket::{GasketElement, GasketError};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

pub const SCHEMA_VERSION: u64 = 1;

/// Largest level accepted from a file; block `n-1` alone has `9^{n-1}` entries.
pub const MAX_FILE_LEVEL: usize = 8;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unsupported schema version {found} (expected {SCHEMA_VERSION})")]
    UnsupportedVersion { found: u64 },
    #[error(transparent)]
    Algebra(#[from] GasketError),
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize)]
struct BlockRecord {
    k: usize,
    j: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize)]
struct ElementRecord {
    schema: u64,
    level: usize,
    xi: [[f64; 2]; 3],
    blocks: Vec<BlockRecord>,
}

pub fn element_to_value(e: &GasketElement) -> Value {
    let mut blocks = Vec::new();
    for (k, family) in e.blocks().iter().enumerate() {
        for (j, m) in family.iter().enumerate() {
            if m.max_abs() == 0.0 {
                continue;
            }
            let d = m.dim();
            blocks.push(BlockRecord {
                k,
                j: j + 1,
                matrix: (0..d)
                    .map(|r| m.row(r).iter().map(|&z| pair(z)).collect())
                    .collect(),
            });
        }
    }
    let record = ElementRecord {
        schema: SCHEMA_VERSION,
        level: e.level(),
        xi: e.xi().map(pair),
        blocks,
    };
    serde_json::to_value(record).expect("plain data serializes")
}

/// Pretty JSON, floats in shortest round-trip form.
pub fn element_to_string(e: &GasketElement) -> String {
    let mut s = serde_json::to_string_pretty(&element_to_value(e)).expect("plain data serializes");
    s.push('\n');
    s
}

fn field<'a>(
    obj: &'a serde_json::Map<String, Value>,
    path: &str,
    name: &str,
) -> Result<&'a Value, IoError> {
    obj.get(name)
        .ok_or_else(|| schema(path, format!("missing field \"{name}\"")))
}

fn as_index(v: &Value, path: &str) -> Result<usize, IoError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| schema(path, "expected a non-negative integer"))
}

fn as_complex(v: &Value, path: &str) -> Result<Complex64, IoError> {
    let arr = v
        .as_array()
        .ok_or_else(|| schema(path, "expected [re, im]"))?;
    if arr.len() != 2 {
        return Err(schema(
            path,
            format!("expected [re, im], found {} entries", arr.len()),
        ));
    }
    let re = arr[0]
        .as_f64()
        .ok_or_else(|| schema(format!("{path}[0]"), "expected a number"))?;
    let im = arr[1]
        .as_f64()
        .ok_or_else(|| schema(format!("{path}[1]"), "expected a number"))?;
    Ok(Complex64::new(re, im))
}

fn as_matrix(v: &Value, dim: usize, path: &str) -> Result<ComplexMatrix, IoError> {
    let rows = v
        .as_array()
        .ok_or_else(|| schema(path, "expected an array of rows"))?;
    if rows.len() != dim {
        return Err(schema(
            path,
            format!("expected {dim} rows, found {}", rows.len()),
        ));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for (r, row) in rows.iter().enumerate() {
        let rp = format!("{path}[{r}]");
        let cols = row
            .as_array()
            .ok_or_else(|| schema(&rp, "expected a row array"))?;
        if cols.len() != dim {
            return Err(schema(
                &rp,
                format!("expected {dim} columns, found {}", cols.len()),
            ));
        }
        for (c, z) in cols.iter().enumerate() {
            data.push(as_complex(z, &format!("{rp}[{c}]"))?);
        }
    }
    Ok(ComplexMatrix::from_row_major(data)?)
}

pub fn element_from_value(v: &Value) -> Result<GasketElement, IoError> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema("$", "expected an object"))?;
    let version = field(obj, "$", "schema")?
        .as_u64()
        .ok_or_else(|| schema("$.schema", "expected an integer"))?;
    if version != SCHEMA_VERSION {
        return Err(IoError::UnsupportedVersion { found: version });
    }
    let level = as_index(field(obj, "$", "level")?, "$.level")?;
    if level > MAX_FILE_LEVEL {
        return Err(schema(
            "$.level",
            format!("level {level} exceeds {MAX_FILE_LEVEL}"),
        ));
    }
    let xi_v = field(obj, "$", "xi")?
        .as_array()
        .ok_or_else(|| schema("$.xi", "expected three [re, im] pairs"))?;
    if xi_v.len() != 3 {
        return Err(schema(
            "$.xi",
            format!("expected 3 entries, found {}", xi_v.len()),
        ));
    }
    let mut xi = [Complex64::new(0.0, 0.0); 3];
    for (i, z) in xi_v.iter().enumerate() {
        xi[i] = as_complex(z, &format!("$.xi[{i}]"))?;
    }
    let mut blocks: Vec<[ComplexMatrix; 3]> = (0..level)
        .map(|k| std::array::from_fn(|_| ComplexMatrix::zeros(pow3(k))))
        .collect();
    let mut seen = vec![[false; 3]; level];
    let list = match obj.get("blocks") {
        None => &Vec::new(),
        Some(b) => b
            .as_array()
            .ok_or_else(|| schema("$.blocks", "expected an array"))?,
    };
    for (i, b) in list.iter().enumerate() {
        let bp = format!("$.blocks[{i}]");
        let bo = b
            .as_object()
            .ok_or_else(|| schema(&bp, "expected an object"))?;
        let k = as_index(field(bo, &bp, "k")?, &format!("{bp}.k"))?;
        if k >= level {
            return Err(schema(
                format!("{bp}.k"),
                format!("block family {k} does not exist at level {level}"),
            ));
        }
        let j = as_index(field(bo, &bp, "j")?, &format!("{bp}.j"))?;
        if !(1..=3).contains(&j) {
            return Err(schema(format!("{bp}.j"), format!("j = {j} outside 1..=3")));
        }
        if std::mem::replace(&mut seen[k][j - 1], true) {
            return Err(schema(&bp, format!("duplicate block (k = {k}, j = {j})")));
        }
        blocks[k][j - 1] = as_matrix(field(bo, &bp, "matrix")?, pow3(k), &format!("{bp}.matrix"))?;
    }
    Ok(GasketElement::from_parts(level, xi, blocks)?)
}

pub fn element_from_str(s: &str) -> Result<GasketElement, IoError> {
    element_from_value(&serde_json::from_str(s)?)
}

pub fn read_element(path: &Path) -> Result<GasketElement, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.to_owned(),
        source,
    })?;
    element_from_str(&text)
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn write_text(path: Option<&Path>, text: &str) -> Result<(), IoError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| IoError::File {
            path: p.to_owned(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|source| IoError::File {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}
