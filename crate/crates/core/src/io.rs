//! Text and JSON formats for barcodes, samples and distance matrices.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cyclic::Convention;
use crate::error::{Error, Result};
use crate::oracle::DistanceMatrix;
use crate::predictor::{Barcode, Interval};

pub const SCHEMA_VERSION: u32 = 1;
/// Significant digits written for every decimal in barcode JSON.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap()
}

#[derive(Serialize, Deserialize)]
struct BarcodeDoc {
    schema_version: u32,
    n: usize,
    convention: Convention,
    intervals: Vec<Interval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unknown_beyond_dim: Option<usize>,
}

pub fn barcode_to_json(b: &Barcode) -> String {
    let doc = BarcodeDoc {
        schema_version: SCHEMA_VERSION,
        n: b.n,
        convention: b.convention,
        intervals: b
            .intervals
            .iter()
            .map(|i| Interval { birth: round_sig(i.birth), death: round_sig(i.death), ..i.clone() })
            .collect(),
        unknown_beyond_dim: b.unknown_beyond_dim,
    };
    serde_json::to_string_pretty(&doc).expect("barcode serialises")
}

pub fn barcode_from_json(s: &str) -> Result<Barcode> {
    let doc: BarcodeDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::Parse(format!("unsupported schema version {}", doc.schema_version)));
    }
    Ok(Barcode {
        n: doc.n,
        convention: doc.convention,
        intervals: doc.intervals,
        unknown_beyond_dim: doc.unknown_beyond_dim,
    })
}

fn interval_text(i: &Interval) -> String {
    let open = if i.birth_closed { '[' } else { '(' };
    let close = if i.death_closed { ']' } else { ')' };
    let mut s = format!("{open}{:.10}, {:.10}{close}", i.birth, i.death);
    if i.multiplicity != 1 {
        let _ = write!(s, " x{}", i.multiplicity);
    }
    if i.ephemeral {
        s.push_str(" ephemeral");
    }
    if i.clipped_at_rn {
        s.push_str(" clipped");
    }
    s
}

/// One row per homological dimension.
pub fn barcode_to_text(b: &Barcode) -> String {
    let mut out = format!("P_{} barcode, {} convention\n", b.n, b.convention.as_str());
    let top = b.max_dim();
    for dim in 1..=top {
        let row: Vec<String> = b.intervals.iter().filter(|i| i.dim == dim).map(interval_text).collect();
        if !row.is_empty() {
            let _ = writeln!(out, "H{dim}: {}", row.join("  "));
        }
    }
    if let Some(d) = b.unknown_beyond_dim {
        let _ = writeln!(out, "H{d} and above: not certified");
    }
    out
}

/// Sample file: `n=<int>` then one arc coordinate per line, ascending.
pub fn sample_to_text(n: usize, points: &[f64]) -> String {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out = format!("n={n}\n");
    for p in pts {
        let _ = writeln!(out, "{p}");
    }
    out
}

pub fn sample_from_text(s: &str) -> Result<(usize, Vec<f64>)> {
    let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
    let head = lines.next().ok_or_else(|| Error::Parse("empty sample file".into()))?;
    let n = head
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("expected a header line n=<int>, got {head:?}")))?;
    let pts = lines
        .enumerate()
        .map(|(i, l)| {
            let t: f64 = l.parse().map_err(|_| Error::Parse(format!("line {}: bad coordinate {l:?}", i + 2)))?;
            if !(0.0..1.0).contains(&t) {
                return Err(Error::Parse(format!("line {}: coordinate {t} outside [0, 1)", i + 2)));
            }
            Ok(t)
        })
        .collect::<Result<Vec<f64>>>()?;
    if pts.is_empty() {
        return Err(Error::Parse("sample file has no points".into()));
    }
    if pts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse("coordinates must be strictly ascending".into()));
    }
    Ok((n, pts))
}

/// Distance matrix file: `m`, then `m` rows of `m` decimals.
pub fn matrix_to_text(d: &DistanceMatrix) -> String {
    let mut out = format!("{}\n", d.len());
    for row in d.rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

pub fn matrix_from_text(s: &str) -> Result<DistanceMatrix> {
    let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
    let head = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let m: usize = head.parse().map_err(|_| Error::Parse(format!("bad size line {head:?}")))?;
    let rows = lines
        .map(|l| {
            l.split_whitespace()
                .map(|x| x.parse::<f64>().map_err(|_| Error::Parse(format!("bad entry {x:?}"))))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != m {
        return Err(Error::Parse(format!("expected {m} rows, found {}", rows.len())));
    }
    DistanceMatrix::new(rows)
}
