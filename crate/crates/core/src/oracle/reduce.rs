use crate::cyclic::Convention;
use crate::error::{Error, Result};

use super::complex::{vr_complex_with_budget, DistanceMatrix, FlagComplex, DEFAULT_SIMPLEX_BUDGET};

const NONE: u32 = u32::MAX;

/// Column reduction of one boundary matrix over F2.
struct Reduction {
    /// For each row position, the column (simplex id) whose pivot it is.
    pivot_of_row: Vec<u32>,
    /// Simplex ids whose reduced column is zero.
    zero: Vec<bool>,
    rank: usize,
}

/// Symmetric difference of two sorted lists.
fn symdiff(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else if a[i] > b[j] {
            out.push(b[j]);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Reduces the boundary of `dim`-simplices. Rows are ordered by `row_pos`
/// (position of each `(dim-1)`-simplex), columns processed in `col_order`;
/// columns flagged in `skip` are known to reduce to zero.
fn reduce(k: &FlagComplex, dim: usize, row_pos: &[u32], col_order: &[u32], skip: &[bool]) -> Reduction {
    let rows = k.count(dim - 1);
    let cols = k.count(dim);
    let mut pivot_of_row = vec![NONE; rows];
    let mut reduced: Vec<Vec<u32>> = vec![Vec::new(); cols];
    let mut zero = vec![true; cols];
    let mut rank = 0;
    let mut face = Vec::with_capacity(dim);
    let mut scratch = Vec::new();
    for &c in col_order {
        let c = c as usize;
        if skip[c] {
            continue;
        }
        let s = k.simplex(dim, c);
        let mut col: Vec<u32> = (0..=dim)
            .map(|drop| {
                face.clear();
                face.extend(s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v));
                let idx = k.index_of(dim - 1, &face).expect("flag complex is downward closed");
                row_pos[idx]
            })
            .collect();
        col.sort_unstable();
        while let Some(&low) = col.last() {
            let other = pivot_of_row[low as usize];
            if other == NONE {
                break;
            }
            symdiff(&col, &reduced[other as usize], &mut scratch);
            std::mem::swap(&mut col, &mut scratch);
        }
        if let Some(&low) = col.last() {
            pivot_of_row[low as usize] = c as u32;
            zero[c] = false;
            reduced[c] = col;
            rank += 1;
        }
    }
    Reduction { pivot_of_row, zero, rank }
}

fn identity(n: usize) -> Vec<u32> {
    (0..n as u32).collect()
}

/// Betti numbers `b_0, ..., b_{max_dim-1}` over F2.
pub fn betti(k: &FlagComplex, max_dim: usize) -> Result<Vec<usize>> {
    if max_dim > k.max_dim() {
        return Err(Error::InvalidInput(format!(
            "Betti numbers below dimension {max_dim} need simplices up to dimension {max_dim}, complex stops at {}",
            k.max_dim()
        )));
    }
    // rank[d] = rank of the boundary from d-simplices, computed top down so
    // pivots of d+1 clear columns of d
    let mut rank = vec![0usize; max_dim + 2];
    let mut cleared: Vec<bool> = vec![false; k.count(max_dim)];
    for dim in (1..=max_dim).rev() {
        let red = reduce(k, dim, &identity(k.count(dim - 1)), &identity(k.count(dim)), &cleared);
        rank[dim] = red.rank;
        cleared = red.pivot_of_row.iter().map(|&p| p != NONE).collect();
    }
    Ok((0..max_dim).map(|d| k.count(d) - rank[d] - rank[d + 1]).collect())
}

/// Rank of `H_dim(VR(D, r)) -> H_dim(VR(D, r2))` induced by inclusion.
pub fn two_scale_rank(
    d: &DistanceMatrix,
    r: f64,
    r2: f64,
    convention: Convention,
    dim: usize,
    max_dim: usize,
) -> Result<usize> {
    two_scale_rank_with_budget(d, r, r2, convention, dim, max_dim, DEFAULT_SIMPLEX_BUDGET)
}

pub fn two_scale_rank_with_budget(
    d: &DistanceMatrix,
    r: f64,
    r2: f64,
    convention: Convention,
    dim: usize,
    max_dim: usize,
    budget: usize,
) -> Result<usize> {
    if r > r2 {
        return Err(Error::InvalidInput(format!("need r <= r2, got {r} > {r2}")));
    }
    if dim >= max_dim {
        return Err(Error::InvalidInput(format!("dimension {dim} needs max_dim > {dim}, got {max_dim}")));
    }
    let k = vr_complex_with_budget(d, r2, convention, dim + 1, budget)?;
    let in_first = |s: &[u32]| {
        s.iter()
            .enumerate()
            .all(|(i, &a)| s[i + 1..].iter().all(|&b| convention.admits(d.get(a as usize, b as usize), r)))
    };
    // filtration order: the smaller complex first, lexicographic inside
    let order = |dm: usize| -> (Vec<u32>, Vec<u32>, Vec<bool>) {
        let flags: Vec<bool> = k.iter(dm).map(in_first).collect();
        let mut ord: Vec<u32> = (0..flags.len() as u32).filter(|&i| flags[i as usize]).collect();
        ord.extend((0..flags.len() as u32).filter(|&i| !flags[i as usize]));
        let mut pos = vec![0u32; flags.len()];
        for (p, &i) in ord.iter().enumerate() {
            pos[i as usize] = p as u32;
        }
        (ord, pos, flags)
    };
    let (ord_d, pos_d, first_d) = order(dim);
    let (ord_up, _, _) = order(dim + 1);
    let upper = reduce(&k, dim + 1, &pos_d, &ord_up, &vec![false; k.count(dim + 1)]);
    let killed: Vec<bool> = (0..k.count(dim)).map(|i| upper.pivot_of_row[pos_d[i] as usize] != NONE).collect();
    let positive: Vec<bool> = if dim == 0 {
        vec![true; k.count(0)]
    } else {
        let (_, pos_lo, _) = order(dim - 1);
        reduce(&k, dim, &pos_lo, &ord_d, &killed).zero
    };
    Ok((0..k.count(dim)).filter(|&i| first_d[i] && positive[i] && !killed[i]).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::FiniteCyclicGraph;
    use crate::oracle::vr_complex;
    use proptest::prelude::*;

    fn polygon_matrix(n: usize) -> DistanceMatrix {
        DistanceMatrix::from_polygon_points(n, &(0..n).map(|i| i as f64 / n as f64).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn small_examples() {
        let two_clusters = DistanceMatrix::new(vec![
            vec![0.0, 0.5, 10.0, 10.0],
            vec![0.5, 0.0, 10.0, 10.0],
            vec![10.0, 10.0, 0.0, 0.5],
            vec![10.0, 10.0, 0.5, 0.0],
        ])
        .unwrap();
        let k = vr_complex(&two_clusters, 1.0, Convention::Strict, 2).unwrap();
        assert_eq!(betti(&k, 2).unwrap(), vec![2, 0]);
        assert_eq!(two_scale_rank(&two_clusters, 1.0, 11.0, Convention::Strict, 0, 1).unwrap(), 1);

        let hex = polygon_matrix(6);
        let cycle = vr_complex(&hex, 1.2, Convention::Strict, 2).unwrap();
        assert_eq!(betti(&cycle, 2).unwrap(), vec![1, 1]);
        let octa = vr_complex(&hex, 1.8, Convention::Strict, 3).unwrap();
        assert_eq!(betti(&octa, 3).unwrap(), vec![1, 0, 1]);
        assert!(betti(&octa, 4).is_err());
    }

    #[test]
    fn regular_12_4() {
        let g = FiniteCyclicGraph::regular(12, 4).unwrap();
        let d = DistanceMatrix::new(g.hop_matrix()).unwrap();
        let k = vr_complex(&d, 1.0, Convention::Closed, 5).unwrap();
        assert_eq!(betti(&k, 5).unwrap(), vec![1, 0, 3, 0, 0]);
        // the top dimension is empty, so the Euler characteristic is exact
        assert_eq!(k.count(5), 0);
        assert_eq!(k.euler_characteristic(), 4);
    }

    #[test]
    fn equal_scales_give_betti() {
        let d = polygon_matrix(6);
        for r in [1.2, 1.8] {
            let k = vr_complex(&d, r, Convention::Strict, 3).unwrap();
            let b = betti(&k, 3).unwrap();
            for dim in 0..3 {
                assert_eq!(two_scale_rank(&d, r, r, Convention::Strict, dim, 3).unwrap(), b[dim]);
            }
        }
        // circle dies when the octahedron appears
        assert_eq!(two_scale_rank(&d, 1.2, 1.8, Convention::Strict, 1, 3).unwrap(), 0);
    }

    fn random_matrix(m: usize, seed: &[f64]) -> DistanceMatrix {
        let mut rows = vec![vec![0.0; m]; m];
        let mut k = 0;
        for i in 0..m {
            for j in (i + 1)..m {
                rows[i][j] = seed[k % seed.len()];
                rows[j][i] = rows[i][j];
                k += 1;
            }
        }
        DistanceMatrix::new(rows).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn euler_poincare(m in 2usize..10, seed in proptest::collection::vec(0.0f64..1.0, 45), r in 0.0f64..1.0) {
            let d = random_matrix(m, &seed);
            let k = vr_complex(&d, r, Convention::Strict, m).unwrap();
            let b = betti(&k, m).unwrap();
            let chi: i64 = b.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
            prop_assert_eq!(chi, k.euler_characteristic());
        }

        #[test]
        fn betti_ignores_labels(m in 3usize..10, seed in proptest::collection::vec(0.0f64..1.0, 45), r in 0.2f64..0.9, rot in 0usize..10) {
            let d = random_matrix(m, &seed);
            let perm: Vec<usize> = (0..m).map(|i| (i * 7 + rot) % m).collect();
            prop_assume!({ let mut p = perm.clone(); p.sort(); p.dedup(); p.len() == m });
            let rows: Vec<Vec<f64>> = (0..m).map(|i| (0..m).map(|j| d.get(perm[i], perm[j])).collect()).collect();
            let e = DistanceMatrix::new(rows).unwrap();
            let b1 = betti(&vr_complex(&d, r, Convention::Strict, 4).unwrap(), 4).unwrap();
            let b2 = betti(&vr_complex(&e, r, Convention::Strict, 4).unwrap(), 4).unwrap();
            prop_assert_eq!(b1, b2);
        }

        #[test]
        fn rank_shrinks_with_wider_window(m in 3usize..9, seed in proptest::collection::vec(0.0f64..1.0, 36),
                                          a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.0f64..1.0, dim in 0usize..2) {
            let d = random_matrix(m, &seed);
            let mut v = [a, b, c];
            v.sort_by(|x, y| x.partial_cmp(y).unwrap());
            let wide = two_scale_rank(&d, v[0], v[2], Convention::Strict, dim, 3).unwrap();
            let narrow = two_scale_rank(&d, v[1], v[2], Convention::Strict, dim, 3).unwrap();
            let narrow2 = two_scale_rank(&d, v[0], v[1], Convention::Strict, dim, 3).unwrap();
            prop_assert!(wide <= narrow && wide <= narrow2);
        }
    }
}
