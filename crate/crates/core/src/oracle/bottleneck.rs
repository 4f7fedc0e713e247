/// A finite persistence pair `(birth, death)`. Endpoint closedness is
/// dropped; the bottleneck metric does not see it.
pub type DiagramPoint = (f64, f64);

fn linf(a: DiagramPoint, b: DiagramPoint) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn to_diagonal(a: DiagramPoint) -> f64 {
    (a.1 - a.0).abs() / 2.0
}

/// Exact bottleneck distance: binary search over the finite set of
/// candidate costs, each tested by bipartite matching where every point
/// may also be matched to its diagonal projection.
pub fn bottleneck(a: &[DiagramPoint], b: &[DiagramPoint]) -> f64 {
    let (na, nb) = (a.len(), b.len());
    let size = na + nb;
    if size == 0 {
        return 0.0;
    }
    // left: a then diagonal copies of b; right: b then diagonal copies of a
    let cost = |i: usize, j: usize| -> Option<f64> {
        match (i < na, j < nb) {
            (true, true) => Some(linf(a[i], b[j])),
            (true, false) => (j - nb == i).then(|| to_diagonal(a[i])),
            (false, true) => (i - na == j).then(|| to_diagonal(b[j])),
            (false, false) => Some(0.0),
        }
    };
    let mut cands: Vec<f64> = (0..size).flat_map(|i| (0..size).filter_map(move |j| cost(i, j))).collect();
    cands.push(0.0);
    cands.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cands.dedup();

    let feasible = |eps: f64| -> bool {
        let adj: Vec<Vec<usize>> = (0..size)
            .map(|i| (0..size).filter(|&j| cost(i, j).is_some_and(|c| c <= eps)).collect())
            .collect();
        perfect_matching(&adj, size)
    };
    let (mut lo, mut hi) = (0usize, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    cands[lo]
}

/// Kuhn's augmenting-path algorithm.
fn perfect_matching(adj: &[Vec<usize>], size: usize) -> bool {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none() || augment(owner[v].unwrap(), adj, seen, owner) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; size];
    for u in 0..size {
        let mut seen = vec![false; size];
        if !augment(u, adj, &mut seen, &mut owner) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let a = [(0.0, 1.0), (0.2, 0.9)];
        assert_eq!(bottleneck(&a, &a), 0.0);
        let c = (std::f64::consts::PI / 6.0).cos();
        let s3 = 3f64.sqrt();
        assert_abs_diff_eq!(bottleneck(&[(0.0, s3 * c)], &[(0.0, s3)]), s3 * (1.0 - c), epsilon = 1e-15);
        assert_abs_diff_eq!(bottleneck(&[(0.0, s3 * c)], &[(0.0, s3)]), 0.2320508, epsilon = 1e-7);
        assert_eq!(bottleneck(&[(0.0, 1.0)], &[]), 0.5);
        assert_eq!(bottleneck(&[], &[]), 0.0);
    }

    fn pts() -> impl Strategy<Value = Vec<DiagramPoint>> {
        proptest::collection::vec((0.0f64..2.0, 0.0f64..1.0).prop_map(|(b, l)| (b, b + l)), 0..5)
    }

    proptest! {
        #[test]
        fn is_a_metric(a in pts(), b in pts(), c in pts()) {
            let ab = bottleneck(&a, &b);
            prop_assert_eq!(ab, bottleneck(&b, &a));
            prop_assert!(ab <= bottleneck(&a, &c) + bottleneck(&c, &b) + 1e-12);
            prop_assert_eq!(bottleneck(&a, &a), 0.0);
        }
    }
}
