//! Finite cyclic graphs and their furthest-point dynamics.
//!
//! A graph is stored as circularly ordered positions plus a reach array:
//! vertex `i` has out-neighbours `i+1, ..., i+reach[i]` (indices mod `m`).
//! Cyclicity is then the condition `reach[i+1] >= reach[i] - 1`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{wrap, Polygon, TOL};

/// Distance tolerance used when deciding whether a pair spans an edge.
pub const EDGE_TOL: f64 = 1e-9;

/// Whether Vietoris-Rips faces need diameter `< r` or `<= r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    #[serde(rename = "lt")]
    Strict,
    #[serde(rename = "leq")]
    Closed,
}

impl Convention {
    /// Edge predicate with a fixed tolerance band around `r`.
    pub fn admits(self, d: f64, r: f64) -> bool {
        match self {
            Convention::Strict => d < r - EDGE_TOL,
            Convention::Closed => d <= r + EDGE_TOL,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Strict => "lt",
            Convention::Closed => "leq",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lt" | "<" | "strict" => Ok(Convention::Strict),
            "leq" | "<=" | "closed" => Ok(Convention::Closed),
            _ => Err(Error::Parse(format!("unknown convention {s:?}"))),
        }
    }
}

/// An exact fraction `num/den` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let g = num.gcd(&den).max(1);
        Self { num: num / g, den: den / g }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Homotopy type of a clique complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HomotopyType {
    /// `S^dim` with `dim` odd; `dim = 1` is the circle.
    OddSphere { dim: usize },
    /// A wedge of `count` copies of `S^dim`, `dim` even.
    Wedge { count: usize, dim: usize },
}

impl HomotopyType {
    pub fn kind(&self) -> &'static str {
        match self {
            HomotopyType::OddSphere { dim: 1 } => "Circle",
            HomotopyType::OddSphere { .. } => "OddSphere",
            HomotopyType::Wedge { .. } => "WedgeOfEvenSpheres",
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            HomotopyType::OddSphere { dim } | HomotopyType::Wedge { dim, .. } => dim,
        }
    }

    /// Betti numbers `b_0, ..., b_{len-1}`.
    pub fn betti(&self, len: usize) -> Vec<usize> {
        let mut b = vec![0; len];
        if len == 0 {
            return b;
        }
        b[0] = 1;
        match *self {
            HomotopyType::OddSphere { dim } => {
                if dim < len {
                    b[dim] = 1;
                }
            }
            HomotopyType::Wedge { count, dim: 0 } => b[0] = count + 1,
            HomotopyType::Wedge { count, dim } => {
                if dim < len {
                    b[dim] = count;
                }
            }
        }
        b
    }

    /// Homotopy type of a clique complex whose cyclic graph has winding
    /// fraction `wf` (< 1/2) and `periodic` periodic orbits.
    pub fn from_winding(wf: Fraction, periodic: usize) -> Self {
        let (a, b) = (wf.num, wf.den);
        debug_assert!(2 * a < b);
        let l = a / (b - 2 * a);
        if a * (2 * l + 1) == l * b {
            HomotopyType::Wedge { count: periodic.saturating_sub(1), dim: 2 * l as usize }
        } else {
            HomotopyType::OddSphere { dim: 2 * l as usize + 1 }
        }
    }
}

impl fmt::Display for HomotopyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            HomotopyType::OddSphere { dim } => write!(f, "S^{dim}"),
            HomotopyType::Wedge { count, dim } => write!(f, "∨^{count} S^{dim}"),
        }
    }
}

/// Per-vertex role under the furthest-point map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexClass {
    Periodic,
    Fast,
    Slow,
}

/// Outcome of iterating the furthest-point map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    /// Common orbit length.
    pub length: usize,
    /// Common winding number of the orbits.
    pub winding: usize,
    /// `winding / length` in lowest terms.
    pub wf: Fraction,
    /// The periodic orbits, each listed from its smallest vertex.
    pub orbits: Vec<Vec<usize>>,
    pub classes: Vec<VertexClass>,
    /// Number of steps before a vertex lands on its orbit (0 for periodic).
    pub tail: Vec<usize>,
}

impl OrbitReport {
    /// Number of periodic orbits.
    pub fn periodic_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn count(&self, class: VertexClass) -> usize {
        self.classes.iter().filter(|&&c| c == class).count()
    }

    /// Vertices that are not periodic and have not yet reached a cycle
    /// after one step.
    pub fn pre_periodic(&self) -> usize {
        self.tail.iter().filter(|&&t| t > 1).count()
    }
}

/// Result of a cyclicity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicCheck {
    pub cyclic: bool,
    /// A violating triple `(u0, w, u1)`: the edge `u0 -> u1` jumps over
    /// `w` without `u0 -> w -> u1`. A 2-cycle is reported as `(u, v, u)`.
    pub witness: Option<(usize, usize, usize)>,
}

/// Checks the cyclic condition on a directed graph whose vertices
/// `0..m` are listed in counterclockwise order.
pub fn is_cyclic(m: usize, edges: &[(usize, usize)]) -> CyclicCheck {
    let mut adj = vec![vec![false; m]; m];
    for &(u, v) in edges {
        if u < m && v < m && u != v {
            adj[u][v] = true;
        }
    }
    for u in 0..m {
        for v in 0..m {
            if adj[u][v] && adj[v][u] {
                return CyclicCheck { cyclic: false, witness: Some((u, v, u)) };
            }
        }
    }
    for &(u0, u1) in edges {
        let span = (u1 + m - u0) % m;
        for d in 1..span {
            let w = (u0 + d) % m;
            if !adj[u0][w] || !adj[w][u1] {
                return CyclicCheck { cyclic: false, witness: Some((u0, w, u1)) };
            }
        }
    }
    CyclicCheck { cyclic: true, witness: None }
}

/// A finite cyclic graph in reach-array form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteCyclicGraph {
    positions: Vec<f64>,
    reach: Vec<usize>,
}

impl FiniteCyclicGraph {
    /// Builds a graph from positions and reach counts, checking cyclicity.
    pub fn from_reach(positions: Vec<f64>, reach: Vec<usize>) -> Result<Self> {
        let m = positions.len();
        if m == 0 || reach.len() != m {
            return Err(Error::InvalidInput(format!(
                "need equal nonzero lengths, got {} positions and {} reach counts",
                m,
                reach.len()
            )));
        }
        if positions.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidInput("positions must be strictly increasing".into()));
        }
        let g = Self { positions, reach };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let m = self.len();
        for i in 0..m {
            let ri = self.reach[i];
            if ri >= m {
                return Err(Error::NotCyclic(i, i, i));
            }
            let next = (i + 1) % m;
            if ri >= 1 && self.reach[next] + 1 < ri {
                return Err(Error::NotCyclic(i, next, (i + ri) % m));
            }
            for d in 1..=ri {
                let j = (i + d) % m;
                if self.reach[j] >= m - d {
                    return Err(Error::NotCyclic(i, j, i));
                }
            }
        }
        Ok(())
    }

    /// The regular graph `C_n^k`: `n` evenly spaced vertices, `i -> i+1..i+k`.
    pub fn regular(n: usize, k: usize) -> Result<Self> {
        if n == 0 || 2 * k >= n {
            return Err(Error::InvalidInput(format!("regular graph needs 0 <= k < n/2, got n={n}, k={k}")));
        }
        let positions = (0..n).map(|i| i as f64 / n as f64).collect();
        Ok(Self { positions, reach: vec![k; n] })
    }

    /// Vietoris-Rips graph of a finite subset of `P_n` at scale `r`.
    ///
    /// Each edge is oriented along the counterclockwise ball arc of its
    /// tail. The result is checked for contiguity and absence of 2-cycles.
    pub fn from_points(n: usize, points: &[f64], r: f64, convention: Convention) -> Result<Self> {
        let poly = Polygon::new(n)?;
        if n == 3 {
            return Err(Error::NoCyclicRegime);
        }
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidInput(format!("scale must be positive, got {r}")));
        }
        if r > poly.rn() + TOL {
            return Err(Error::CyclicityThresholdExceeded { n, r, rn: poly.rn() });
        }
        if points.is_empty() {
            return Err(Error::InvalidInput("empty point set".into()));
        }
        let mut pos: Vec<f64> = points.iter().map(|&t| wrap(t)).collect();
        if pos.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidInput("non-finite arc coordinate".into()));
        }
        pos.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for w in pos.windows(2) {
            if w[1] - w[0] <= 1e-12 {
                return Err(Error::InvalidInput(format!("duplicate point at arc coordinate {}", w[0])));
            }
        }
        let m = pos.len();
        if m > 1 && pos[0] + 1.0 - pos[m - 1] <= 1e-12 {
            return Err(Error::InvalidInput(format!("duplicate point at arc coordinate {}", pos[0])));
        }

        let emb: Vec<[f64; 2]> = pos.iter().map(|&t| poly.embed(t)).collect();
        let dist = |i: usize, j: usize| (emb[i][0] - emb[j][0]).hypot(emb[i][1] - emb[j][1]);
        let mut reach = vec![0usize; m];
        let mut arc_end = vec![0.0f64; m];
        for i in 0..m {
            let adv = poly.ccw_advance(pos[i], r);
            arc_end[i] = adv;
            let mut k = 0;
            while k + 1 < m {
                let j = (i + k + 1) % m;
                let off = wrap(pos[j] - pos[i]);
                if off <= adv + EDGE_TOL && convention.admits(dist(i, j), r) {
                    k += 1;
                } else {
                    break;
                }
            }
            reach[i] = k;
        }
        for i in 0..m {
            for d in 1..m {
                let j = (i + d) % m;
                let edge = convention.admits(dist(i, j), r);
                let oriented = d <= reach[i] || m - d <= reach[j];
                if edge != oriented {
                    return Err(Error::InconsistentBall {
                        vertex: i,
                        detail: format!(
                            "pair ({i}, {j}) at distance {} with ball arc length {}",
                            dist(i, j),
                            arc_end[i]
                        ),
                    });
                }
            }
        }
        let g = Self { positions: pos, reach };
        g.validate()?;
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn reach(&self) -> &[usize] {
        &self.reach
    }

    /// The furthest-point map.
    pub fn f(&self, i: usize) -> usize {
        (i + self.reach[i]) % self.len()
    }

    /// Whether `i` and `j` span an (undirected) edge.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let m = self.len();
        if i == j {
            return false;
        }
        let d = (j + m - i) % m;
        d <= self.reach[i] || m - d <= self.reach[j]
    }

    /// Directed edge list `u -> v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        (0..m)
            .flat_map(|i| (1..=self.reach[i]).map(move |d| (i, (i + d) % m)))
            .collect()
    }

    /// Hop-count style distance matrix: adjacent pairs at distance 1,
    /// others at 2. Its clique complex at scale 1 is the clique complex of
    /// the graph.
    pub fn hop_matrix(&self) -> Vec<Vec<f64>> {
        let m = self.len();
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { 0.0 } else if self.adjacent(i, j) { 1.0 } else { 2.0 })
                    .collect()
            })
            .collect()
    }

    /// Iterates the furthest-point map from every vertex.
    pub fn analyze(&self) -> OrbitReport {
        let m = self.len();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; m];
        let mut on_cycle = vec![false; m];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for start in 0..m {
            if state[start] != 0 {
                continue;
            }
            let mut path = Vec::new();
            let mut u = start;
            while state[u] == 0 {
                state[u] = 1;
                path.push(u);
                u = self.f(u);
            }
            if state[u] == 1 {
                let k = path.iter().position(|&x| x == u).unwrap();
                let mut cyc: Vec<usize> = path[k..].to_vec();
                for &x in &cyc {
                    on_cycle[x] = true;
                }
                let rot = cyc.iter().enumerate().min_by_key(|(_, &x)| x).unwrap().0;
                cyc.rotate_left(rot);
                orbits.push(cyc);
            }
            for &x in &path {
                state[x] = 2;
            }
        }
        orbits.sort();

        let total = |cyc: &[usize]| cyc.iter().map(|&x| self.reach[x]).sum::<usize>();
        let length = orbits[0].len();
        let winding = total(&orbits[0]) / m;
        debug_assert!(orbits.iter().all(|c| c.len() == length && total(c) == winding * m));
        let wf = Fraction::new(winding as u64, length as u64);

        let mut tail = vec![0usize; m];
        for i in 0..m {
            let mut u = i;
            let mut k = 0;
            while !on_cycle[u] {
                u = self.f(u);
                k += 1;
            }
            tail[i] = k;
        }

        let q = wf.den as usize;
        let p = wf.num as usize;
        let classes = (0..m)
            .map(|i| {
                if on_cycle[i] {
                    return VertexClass::Periodic;
                }
                let mut u = i;
                let mut adv = 0;
                for _ in 0..q {
                    adv += self.reach[u];
                    u = self.f(u);
                }
                if adv > p * m {
                    VertexClass::Fast
                } else {
                    VertexClass::Slow
                }
            })
            .collect();

        #[cfg(debug_assertions)]
        self.check_step_monotone();

        OrbitReport { length, winding, wf, orbits, classes, tail }
    }

    /// `u < w <= f(u)` implies `f(w)` lies in `[f(u), f(f(u))]`.
    #[cfg(debug_assertions)]
    fn check_step_monotone(&self) {
        let m = self.len();
        for u in 0..m {
            let fu = self.reach[u];
            let ffu = fu + self.reach[self.f(u)];
            for d in 1..=fu {
                let w = (u + d) % m;
                let fw = d + self.reach[w];
                debug_assert!(fu <= fw && fw <= ffu, "step monotonicity fails at {u}");
            }
        }
    }

    /// Homotopy type of the clique complex.
    pub fn homotopy_type(&self) -> HomotopyType {
        let rep = self.analyze();
        HomotopyType::from_winding(rep.wf, rep.periodic_count())
    }
}
