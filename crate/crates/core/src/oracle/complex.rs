use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering as AtomicOrdering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclic::Convention;
use crate::error::{Error, Result};
use crate::geometry::Polygon;

pub const DEFAULT_SIMPLEX_BUDGET: usize = 10_000_000;

/// Symmetric matrix of pairwise distances with zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    m: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidInput("distance matrix must be nonempty".into()));
        }
        let mut data = Vec::with_capacity(m * m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidInput(format!("row {i} has {} entries, expected {m}", row.len())));
            }
            data.extend_from_slice(row);
        }
        for i in 0..m {
            if data[i * m + i] != 0.0 {
                return Err(Error::InvalidInput(format!("nonzero diagonal entry at {i}")));
            }
            for j in 0..m {
                let d = data[i * m + j];
                if !(d >= 0.0) || !d.is_finite() {
                    return Err(Error::InvalidInput(format!("bad entry {d} at ({i}, {j})")));
                }
                if (d - data[j * m + i]).abs() > 1e-12 {
                    return Err(Error::InvalidInput(format!("asymmetric entries at ({i}, {j})")));
                }
            }
        }
        Ok(Self { m, data })
    }

    /// Euclidean distances between arc coordinates on `P_n`.
    pub fn from_polygon_points(n: usize, points: &[f64]) -> Result<Self> {
        let poly = Polygon::new(n)?;
        let emb: Vec<[f64; 2]> = points.iter().map(|&t| poly.embed(t)).collect();
        let m = emb.len();
        if m == 0 {
            return Err(Error::InvalidInput("distance matrix must be nonempty".into()));
        }
        let mut data = vec![0.0; m * m];
        for i in 0..m {
            for j in (i + 1)..m {
                let d = (emb[i][0] - emb[j][0]).hypot(emb[i][1] - emb[j][1]);
                data[i * m + j] = d;
                data[j * m + i] = d;
            }
        }
        Ok(Self { m, data })
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.m + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.m).map(|c| c.to_vec()).collect()
    }
}

/// Clique complex truncated at `max_dim`, simplices stored per dimension
/// as sorted vertex tuples in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct FlagComplex {
    max_dim: usize,
    simplices: Vec<Vec<u32>>,
}

impl FlagComplex {
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn count(&self, dim: usize) -> usize {
        if dim > self.max_dim {
            0
        } else {
            self.simplices[dim].len() / (dim + 1)
        }
    }

    pub fn total(&self) -> usize {
        (0..=self.max_dim).map(|d| self.count(d)).sum()
    }

    pub fn simplex(&self, dim: usize, idx: usize) -> &[u32] {
        &self.simplices[dim][idx * (dim + 1)..(idx + 1) * (dim + 1)]
    }

    pub fn iter(&self, dim: usize) -> impl Iterator<Item = &[u32]> {
        self.simplices[dim].chunks(dim + 1)
    }

    /// Index of a sorted vertex tuple of dimension `dim`.
    pub fn index_of(&self, dim: usize, verts: &[u32]) -> Option<usize> {
        let w = dim + 1;
        let list = &self.simplices[dim];
        let (mut lo, mut hi) = (0usize, list.len() / w);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match list[mid * w..(mid + 1) * w].cmp(verts) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Alternating sum of simplex counts.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.max_dim)
            .map(|d| if d % 2 == 0 { self.count(d) as i64 } else { -(self.count(d) as i64) })
            .sum()
    }
}

/// All cliques with at most `max_dim + 1` vertices of the graph
/// `{d(i, j) < r}` (strict) or `{d(i, j) <= r}` (closed).
pub fn vr_complex(d: &DistanceMatrix, r: f64, convention: Convention, max_dim: usize) -> Result<FlagComplex> {
    vr_complex_with_budget(d, r, convention, max_dim, DEFAULT_SIMPLEX_BUDGET)
}

pub fn vr_complex_with_budget(
    d: &DistanceMatrix,
    r: f64,
    convention: Convention,
    max_dim: usize,
    budget: usize,
) -> Result<FlagComplex> {
    let m = d.len();
    if m > u32::MAX as usize {
        return Err(Error::Resource("too many points".into()));
    }
    let words = m.div_ceil(64);
    // higher-indexed neighbours only
    let adj: Vec<Vec<u64>> = (0..m)
        .map(|i| {
            let mut row = vec![0u64; words];
            for j in (i + 1)..m {
                if convention.admits(d.get(i, j), r) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();

    let counter = AtomicUsize::new(0);
    let over = AtomicBool::new(false);
    let per_root: Vec<Vec<Vec<u32>>> = (0..m)
        .into_par_iter()
        .map(|root| {
            let mut out: Vec<Vec<u32>> = vec![Vec::new(); max_dim + 1];
            let mut stack = vec![root as u32];
            extend(&adj, &adj[root], &mut stack, &mut out, max_dim, &counter, &over, budget);
            out
        })
        .collect();
    if over.load(AtomicOrdering::Relaxed) {
        return Err(Error::Resource(format!("simplex budget of {budget} exceeded")));
    }
    let mut simplices: Vec<Vec<u32>> = vec![Vec::new(); max_dim + 1];
    for root in per_root {
        for (dim, list) in root.into_iter().enumerate() {
            simplices[dim].extend(list);
        }
    }
    Ok(FlagComplex { max_dim, simplices })
}

#[allow(clippy::too_many_arguments)]
fn extend(
    adj: &[Vec<u64>],
    cand: &[u64],
    stack: &mut Vec<u32>,
    out: &mut [Vec<u32>],
    max_dim: usize,
    counter: &AtomicUsize,
    over: &AtomicBool,
    budget: usize,
) {
    if over.load(AtomicOrdering::Relaxed) {
        return;
    }
    let dim = stack.len() - 1;
    out[dim].extend_from_slice(stack);
    if counter.fetch_add(1, AtomicOrdering::Relaxed) + 1 > budget {
        over.store(true, AtomicOrdering::Relaxed);
        return;
    }
    if dim == max_dim {
        return;
    }
    for (w, &word) in cand.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let v = w * 64 + b;
            let next: Vec<u64> = cand.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
            stack.push(v as u32);
            extend(adj, &next, stack, out, max_dim, counter, over, budget);
            stack.pop();
        }
    }
}
