//! Matrix files and tabular output.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{FieldCtx, FieldOptions, FieldSpec};
use crate::hermitian::HermMatrix;
use crate::ranges::{FiberCount, RangeSet};

/// A field given in full or by (p, m), which selects the canonical moduli.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldRef {
    Spec(FieldSpec),
    Short { p: u32, m: u32 },
}

impl FieldRef {
    pub fn spec(&self) -> Result<FieldSpec> {
        match self {
            FieldRef::Spec(s) => Ok(s.clone()),
            FieldRef::Short { p, m } => FieldSpec::canonical(*p, *m),
        }
    }

    pub fn build(&self) -> Result<FieldCtx> {
        FieldCtx::from_spec(&self.spec()?, FieldOptions::default())
    }
}

/// On-disk matrix: `{"field": {...}, "n": 2, "entries": [[0, 1], [0, 0]]}`.
/// `field` and `n` are optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub entries: Vec<Vec<u64>>,
}

impl MatrixFile {
    pub fn from_matrix(ctx: &FieldCtx, m: &HermMatrix) -> Self {
        MatrixFile {
            field: Some(FieldRef::Spec(ctx.spec().clone())),
            n: Some(m.n()),
            entries: m.encoded_rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect(),
        }
    }

    pub fn to_matrix(&self, ctx: &FieldCtx) -> Result<HermMatrix> {
        if let Some(n) = self.n {
            if n != self.entries.len() {
                return Err(Error::DimensionMismatch { expected: n, got: self.entries.len() });
            }
        }
        HermMatrix::from_encodings(ctx, &self.entries)
    }
}

/// Parses `"a,b;c,d"` (rows separated by `;`, entries by `,`).
pub fn parse_inline(s: &str) -> Result<Vec<Vec<u64>>> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|e| e.trim().parse::<u64>().map_err(|_| Error::Input(format!("bad matrix entry {:?}", e.trim()))))
                .collect()
        })
        .collect()
}

/// Reads a matrix from a JSON file, or parses the argument inline when no
/// such file exists.
pub fn load_matrix(arg: &str) -> Result<MatrixFile> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    } else {
        Ok(MatrixFile { field: None, n: None, entries: parse_inline(arg)? })
    }
}

/// One row per value: kind, k_enc, value_enc, value_poly.
pub fn range_csv(ctx: &FieldCtx, r: &RangeSet) -> String {
    let mut out = String::from("kind,k_enc,value_enc,value_poly\n");
    for v in &r.values {
        let _ = writeln!(out, "{},{},{},{}", r.kind.name(), r.k.enc(), v.enc(), ctx.format_elem(*v));
    }
    out
}

pub fn fibers_csv(rows: &[FiberCount]) -> String {
    let mut out = String::from("value_enc,count\n");
    for f in rows {
        let _ = writeln!(out, "{},{}", f.value.enc(), f.count);
    }
    out
}
