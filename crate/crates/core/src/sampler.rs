//! Finite dense samples of `P_n` with a prescribed number of periodic
//! orbits at a scale inside a singular window.
//!
//! Write `n = q(2l+1)` and fix `s_{n,l} < r < t_{n,l}`. Each edge carries
//! one fast interval `(a, b)` (in barycentric coordinates) around its
//! midpoint, bounded by two crossings. The map `g_r` sends edge `e` to edge
//! `e + lq`, so edges split into `q` classes `e mod q`, and on the fast
//! interval it acts as the same increasing map `w` with fixed points `a`
//! and `b`. A class whose fast intervals all carry the same barycentric
//! values `u_0 < ... < u_k` has one periodic orbit per `u_i` with
//! `u_{i+1} > w(u_i)` (and one for `u_k`).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclic::{Convention, FiniteCyclicGraph};
use crate::error::{Error, Result};
use crate::geometry::{wrap, Polygon};
use crate::stars::{crossings_with, thresholds, CrossingStatus, StarSolver, Thresholds};

/// Gap between a crossing and the nearest slow-region sample point,
/// in barycentric units.
const SLOW_MARGIN: f64 = 1e-6;
/// Smallest gap tolerated between a sample point and a threshold it
/// must stay on one side of.
const SPACING_FLOOR: f64 = 1e-9;
/// Spacing, relative to the density radius, used when filling.
const FILL_RATIO: f64 = 1.8;
/// Relative jitter of slow-region points.
const JITTER: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub n: usize,
    pub l: usize,
    /// Number of periodic orbits to realise.
    pub z: usize,
    /// Euclidean density radius.
    pub eps: f64,
    pub r: f64,
    pub seed: u64,
}

impl SampleSpec {
    /// Checks the hypotheses and returns the star thresholds.
    pub fn validate(&self) -> Result<Thresholds> {
        let (n, l) = (self.n, self.l);
        if l == 0 {
            return Err(Error::InvalidInput("l must be at least 1".into()));
        }
        if n % (2 * l + 1) != 0 {
            return Err(Error::NotApplicable(format!("{} does not divide n = {n}", 2 * l + 1)));
        }
        if !(self.eps > 0.0) || !self.eps.is_finite() {
            return Err(Error::InvalidInput(format!("eps must be positive, got {}", self.eps)));
        }
        let th = thresholds(n, l)?;
        let q = th.q();
        if self.z < q {
            return Err(Error::InvalidInput(format!("z = {} is below q = {q}", self.z)));
        }
        if !(th.s < self.r && self.r < th.t) {
            return Err(Error::InvalidInput(format!(
                "scale {} is outside the open window ({}, {})",
                self.r, th.s, th.t
            )));
        }
        Ok(th)
    }
}

/// Fast interval `(a, b)` on edge 0 in barycentric coordinates, with the
/// map `w` it carries.
struct FastEdge {
    poly: Polygon,
    r: f64,
    a: f64,
    b: f64,
    shift: usize,
}

impl FastEdge {
    fn new(th: &Thresholds, r: f64) -> Result<Self> {
        let n = th.n;
        let c = crossings_with(th, r)?;
        if c.status != CrossingStatus::Interior {
            return Err(Error::InvalidInput(format!("scale {r} is not inside the window")));
        }
        let on_first: Vec<f64> = c.points.iter().map(|&p| p * n as f64).filter(|&x| x < 1.0).collect();
        if on_first.len() != 2 {
            return Err(Error::InvalidInput(format!(
                "expected two crossings on each edge, found {}",
                on_first.len()
            )));
        }
        let solver = StarSolver::new(n, th.l)?;
        // the fast side contains the midpoint
        if solver.defect(0.5 / n as f64, r) <= 0.0 {
            return Err(Error::InvalidInput("edge midpoint is not fast".into()));
        }
        Ok(Self {
            poly: Polygon::new(n)?,
            r,
            a: on_first[0],
            b: on_first[1],
            shift: th.l * th.q(),
        })
    }

    /// Barycentric image under `g_r` on the edge `shift` steps ahead.
    fn w(&self, u: f64) -> Result<f64> {
        let n = self.poly.n();
        let x = self.poly.step(u / n as f64, self.r) * n as f64;
        let edge = x.floor();
        if edge as usize % n != self.shift % n {
            return Err(Error::InvalidInput(format!("fast point {u} leaves its class")));
        }
        Ok(x - edge)
    }

    /// Barycentric values for one class: `orbits` periodic seeds near `b`,
    /// then non-periodic fillers down towards `a`.
    fn class_values(&self, orbits: usize, gap: f64, safety: f64) -> Result<Vec<f64>> {
        let (a, b) = (self.a, self.b);
        let mut seeds = vec![b - (0.5 * gap).min(0.5 * (b - a))];
        while seeds.len() < orbits {
            let last = *seeds.last().unwrap();
            let next = 0.5 * (self.w(last)? + b);
            if b - next < SPACING_FLOOR || next - self.w(last)? < SPACING_FLOOR {
                return Err(Error::Resource(format!("{orbits} orbits do not fit above the crossing")));
            }
            seeds.push(next);
        }
        let mut out = Vec::new();
        let mut y = seeds[0];
        while y - a > gap - SLOW_MARGIN {
            let room = self.w(y)? - y;
            let mut d = (safety * room).min(gap).min(y - a - 0.5 * SLOW_MARGIN);
            // the point above must stay inside the ball of the new point
            loop {
                let cand = y - d;
                let slack = self.w(cand)? - y;
                if slack >= (1.0 - safety) * (self.w(cand)? - cand) && slack > SPACING_FLOOR {
                    break;
                }
                d *= 0.5;
                if d < SPACING_FLOOR {
                    return Err(Error::Resource("filler spacing underflow near a crossing".into()));
                }
            }
            y -= d;
            out.push(y);
        }
        out.reverse();
        out.extend(seeds);
        Ok(out)
    }
}

/// Builds an `eps`-dense sample whose Vietoris-Rips graph at scale `r`
/// (closed convention) has exactly `z` periodic orbits.
pub fn construct(spec: &SampleSpec) -> Result<Vec<f64>> {
    let th = spec.validate()?;
    let (n, l, q) = (spec.n, spec.l, th.q());
    let fast = FastEdge::new(&th, spec.r)?;
    let poly = Polygon::new(n)?;
    let gap = FILL_RATIO * spec.eps / poly.side();
    let split: Vec<usize> = (0..q).map(|c| spec.z / q + usize::from(c < spec.z % q)).collect();
    let mut safety = 0.9;
    let mut last_err = None;
    for _ in 0..20 {
        let per_class = split
            .iter()
            .map(|&z| fast.class_values(z, gap, safety))
            .collect::<Result<Vec<_>>>()?;
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let mut pts = Vec::new();
        for e in 0..n {
            let base = e as f64;
            pts.extend(per_class[e % q].iter().map(|&u| (base + u) / n as f64));
            // slow stretch from b on this edge to a on the next
            let lo = base + fast.b + SLOW_MARGIN;
            let hi = base + 1.0 + fast.a - SLOW_MARGIN;
            let k = ((hi - lo) / gap).ceil().max(1.0) as usize;
            let h = (hi - lo) / k as f64;
            for i in 0..=k {
                let jitter = if i == 0 || i == k { 0.0 } else { rng.gen_range(-JITTER..JITTER) * h };
                pts.push(wrap((lo + i as f64 * h + jitter) / n as f64));
            }
        }
        pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let g = FiniteCyclicGraph::from_points(n, &pts, spec.r, Convention::Closed)?;
        let rep = g.analyze();
        if rep.periodic_count() == spec.z && rep.length == 2 * l + 1 && rep.winding == l {
            let dens = density(&pts, n)?;
            if dens > spec.eps {
                return Err(Error::Resource(format!("density {dens} exceeds eps = {}", spec.eps)));
            }
            return Ok(pts);
        }
        last_err = Some(format!(
            "{} orbits of length {} and winding {}",
            rep.periodic_count(),
            rep.length,
            rep.winding
        ));
        safety *= 0.5;
    }
    Err(Error::Resource(format!(
        "no admissible spacing found, last attempt gave {}",
        last_err.unwrap_or_default()
    )))
}

/// Fast intervals of all edges as arc-coordinate pairs `(a, b)`.
pub fn fast_regions(n: usize, l: usize, r: f64) -> Result<Vec<(f64, f64)>> {
    let spec = SampleSpec { n, l, z: usize::MAX, eps: 1.0, r, seed: 0 };
    let th = spec.validate()?;
    let fast = FastEdge::new(&th, r)?;
    Ok((0..n)
        .map(|e| ((e as f64 + fast.a) / n as f64, (e as f64 + fast.b) / n as f64))
        .collect())
}

/// `k` evenly spaced points together with every level-`l` star vertex
/// of side `r` for each `r` in `scales`.
pub fn certified_sample(n: usize, l: usize, scales: &[f64], k: usize) -> Result<Vec<f64>> {
    let th = thresholds(n, l)?;
    let mut pts: Vec<f64> = (0..k).map(|i| i as f64 / k as f64).collect();
    for &r in scales {
        pts.extend(crossings_with(&th, r)?.points);
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    if pts.len() > 1 && pts[0] + 1.0 - pts[pts.len() - 1] < 1e-9 {
        pts.pop();
    }
    Ok(pts)
}

/// Largest Euclidean distance from a point of `P_n` to the sample.
///
/// Each arc gap is measured against its two end points only, so the
/// value is an upper bound that is exact once gaps are short.
pub fn density(points: &[f64], n: usize) -> Result<f64> {
    let poly = Polygon::new(n)?;
    if points.is_empty() {
        return Err(Error::InvalidInput("empty sample".into()));
    }
    let mut pts: Vec<f64> = points.iter().map(|&t| wrap(t)).collect();
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let m = pts.len();
    let nf = n as f64;
    let mut worst: f64 = 0.0;
    for i in 0..m {
        let lo = pts[i];
        let hi = if i + 1 < m { pts[i + 1] } else { pts[0] + 1.0 };
        let a = poly.embed(lo);
        let b = poly.embed(hi);
        let gap_value = |x: [f64; 2]| (x[0] - a[0]).hypot(x[1] - a[1]).min((x[0] - b[0]).hypot(x[1] - b[1]));
        // split the gap at vertices into straight pieces
        let mut cuts = vec![lo];
        let mut v = (lo * nf).floor() + 1.0;
        while v / nf < hi {
            cuts.push(v / nf);
            v += 1.0;
        }
        cuts.push(hi);
        for piece in cuts.windows(2) {
            let p0 = poly.embed(piece[0]);
            let p1 = poly.embed(piece[1]);
            worst = worst.max(gap_value(p0)).max(gap_value(p1));
            // equidistant point on this piece
            let d = [p1[0] - p0[0], p1[1] - p0[1]];
            let ab = [b[0] - a[0], b[1] - a[1]];
            let denom = 2.0 * (d[0] * ab[0] + d[1] * ab[1]);
            if denom.abs() > 1e-300 {
                let rhs = (b[0] * b[0] + b[1] * b[1]) - (a[0] * a[0] + a[1] * a[1]) - 2.0 * (p0[0] * ab[0] + p0[1] * ab[1]);
                let s = rhs / denom;
                if (0.0..=1.0).contains(&s) {
                    worst = worst.max(gap_value([p0[0] + s * d[0], p0[1] + s * d[1]]));
                }
            }
        }
    }
    Ok(worst)
}

/// Periodic-orbit count of `k` evenly spaced points at scale `r`
/// (closed convention).
pub fn min_orbits_check(n: usize, l: usize, r: f64, k: usize) -> Result<usize> {
    let th = thresholds(n, l)?;
    if !th.certified() {
        return Err(Error::RequiresConjecture { n, l });
    }
    if !(th.s < r && r < th.t) {
        return Err(Error::InvalidInput(format!("scale {r} is outside the open window ({}, {})", th.s, th.t)));
    }
    if k == 0 {
        return Err(Error::InvalidInput("need at least one point".into()));
    }
    let pts: Vec<f64> = (0..k).map(|i| i as f64 / k as f64).collect();
    let g = FiniteCyclicGraph::from_points(n, &pts, r, Convention::Closed)?;
    Ok(g.analyze().periodic_count())
}
