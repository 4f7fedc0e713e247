//! Inscribed equilateral `(2l+1)`-stars of winding `l` in `P_n`.
//!
//! For a basepoint `p` the side length `s(p)` is the unique scale at which
//! `2l+1` steps of the map `g_r` wind exactly `l` times around the polygon.
//! Its extremes `s_{n,l}` (midpoint crossings) and `t_{n,l}` (vertex
//! crossings) are the scales where the Vietoris-Rips complex changes type.

use std::f64::consts::PI;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{wrap, Polygon, TOL};

/// Bisection stops once the bracket on `r` is this narrow.
pub const BISECTION_TOL: f64 = 1e-12;
pub const BISECTION_MAX_ITER: usize = 200;
/// Arc tolerance for identifying a star vertex with a polygon vertex or midpoint.
pub const COINCIDENCE_TOL: f64 = 1e-9;
/// Numerical noise allowed in monotonicity scans.
pub const MONOTONE_NOISE: f64 = 1e-10;
/// Grid used by [`thresholds`] when a monotonicity scan is needed.
pub const DEFAULT_VALIDATION_GRID: usize = 2048;

/// An inscribed `(2l+1)`-star.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarSolution {
    pub n: usize,
    pub l: usize,
    pub basepoint: f64,
    pub side: f64,
    pub vertices: Vec<f64>,
    /// The side equals `r_n`.
    pub boundary: bool,
}

/// How a pair of thresholds was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certification {
    /// `(2l+1) | n`: closed forms.
    Divisible,
    /// Evaluated at the crossings after a passing monotonicity scan.
    Validated,
    /// The scan failed; values are grid extrema.
    GridFallback,
}

/// Minimum and maximum side lengths of inscribed `(2l+1)`-stars.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub n: usize,
    pub l: usize,
    pub s: f64,
    pub t: f64,
    pub exact: bool,
    /// `t` was clamped to `r_n`.
    pub at_rn: bool,
    pub certification: Certification,
    pub warning: Option<String>,
}

impl Thresholds {
    /// `n / gcd(n, 2l+1)`.
    pub fn q(&self) -> usize {
        self.n / self.n.gcd(&(2 * self.l + 1))
    }

    pub fn certified(&self) -> bool {
        self.certification != Certification::GridFallback
    }
}

fn check_level(n: usize, l: usize) -> Result<()> {
    if l == 0 {
        return Err(Error::InvalidInput("stars need l >= 1".into()));
    }
    if n < 4 * l + 2 {
        return Err(Error::ExistenceNotGuaranteed { n, l });
    }
    Ok(())
}

/// Star computations on one polygon for one winding level.
#[derive(Debug, Clone)]
pub struct StarSolver {
    poly: Polygon,
    l: usize,
}

impl StarSolver {
    /// A solver without the existence check, for probing levels that may
    /// have no star below `r_n`.
    pub fn unchecked(n: usize, l: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidInput("stars need l >= 1".into()));
        }
        let poly = Polygon::new(n)?;
        if n == 3 {
            return Err(Error::NoCyclicRegime);
        }
        Ok(Self { poly, l })
    }

    pub fn new(n: usize, l: usize) -> Result<Self> {
        check_level(n, l)?;
        Self::unchecked(n, l)
    }

    pub fn n(&self) -> usize {
        self.poly.n()
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn polygon(&self) -> &Polygon {
        &self.poly
    }

    /// Total arc advance of `2l+1` steps, minus `l`.
    pub fn defect(&self, p: f64, r: f64) -> f64 {
        let mut x = p;
        let mut total = 0.0;
        for _ in 0..(2 * self.l + 1) {
            let a = self.poly.ccw_advance(x, r);
            total += a;
            x = wrap(x + a);
        }
        total - self.l as f64
    }

    /// Bracket `(lo, hi)` around the side length at `p`, with the defect
    /// nonpositive at `lo` and nonnegative at `hi`.
    fn bracket(&self, p: f64, mut lo: f64, mut hi: f64) -> Result<(f64, f64)> {
        if self.defect(p, hi) < -MONOTONE_NOISE {
            return Err(Error::NoSignChange { n: self.n(), l: self.l, p });
        }
        for _ in 0..BISECTION_MAX_ITER {
            if hi - lo <= BISECTION_TOL {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.defect(p, mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok((lo, hi))
    }

    /// Side length `s(p)` of the star based at `p`.
    pub fn side(&self, p: f64) -> Result<f64> {
        let (lo, hi) = self.bracket(p, 0.0, self.poly.rn())?;
        Ok(0.5 * (lo + hi))
    }

    /// Same as [`side`](Self::side) with a caller-chosen initial bracket.
    pub fn side_in(&self, p: f64, lo: f64, hi: f64) -> Result<f64> {
        if !(0.0 <= lo && lo < hi && hi <= self.poly.rn() + TOL) || self.defect(p, lo.max(1e-300)) > 0.0 {
            return Err(Error::InvalidInput(format!("[{lo}, {hi}] does not bracket the side length")));
        }
        let (lo, hi) = self.bracket(p, lo, hi)?;
        Ok(0.5 * (lo + hi))
    }

    pub fn inscribe(&self, p: f64) -> Result<StarSolution> {
        let p = wrap(p);
        let (lo, hi) = self.bracket(p, 0.0, self.poly.rn())?;
        // stepping with the lower end keeps landing points on the near side
        // of vertices, where their dependence on r is linear
        let mut vertices = Vec::with_capacity(2 * self.l + 1);
        let mut x = p;
        for _ in 0..(2 * self.l + 1) {
            vertices.push(x);
            x = self.poly.step(x, lo);
        }
        let side = 0.5 * (lo + hi);
        Ok(StarSolution {
            n: self.n(),
            l: self.l,
            basepoint: p,
            side,
            vertices,
            boundary: (side - self.poly.rn()).abs() <= TOL,
        })
    }
}

/// `f_p(r) - l`: zero exactly when a star of side `r` is based at `p`.
pub fn star_defect(n: usize, l: usize, p: f64, r: f64) -> Result<f64> {
    let solver = StarSolver::new(n, l)?;
    if !(r > 0.0) || r > solver.poly.rn() + TOL {
        return Err(Error::OutsideCyclicRegime { r, rn: solver.poly.rn() });
    }
    Ok(solver.defect(wrap(p), r))
}

/// The star based at arc coordinate `p`.
pub fn inscribe_star(n: usize, l: usize, p: f64) -> Result<StarSolution> {
    StarSolver::new(n, l)?.inscribe(p)
}

/// Closed-form side length when `(2l+1) | n`, at barycentric position
/// `tbary` along an edge.
pub fn side_length_closed_form(n: usize, l: usize, tbary: f64) -> Result<f64> {
    if l == 0 || n % (2 * l + 1) != 0 {
        return Err(Error::NotApplicable(format!("{} does not divide {n}", 2 * l + 1)));
    }
    if !(0.0..=1.0).contains(&tbary) {
        return Err(Error::InvalidInput(format!("barycentric coordinate {tbary} outside [0, 1]")));
    }
    let k = 2.0 * (PI * l as f64 / (2 * l + 1) as f64).sin();
    let s2 = (PI / n as f64).sin().powi(2);
    Ok(k * (4.0 * s2 * tbary * tbary - 4.0 * s2 * tbary + 1.0).sqrt())
}

fn midpoint(n: usize) -> f64 {
    0.5 / n as f64
}

/// Orbit of the star's vertices under rotation by `1/n`, deduplicated.
fn rotate_all(n: usize, pts: &[f64]) -> Vec<f64> {
    let mut all: Vec<f64> = (0..n)
        .flat_map(|k| pts.iter().map(move |&x| wrap(x + k as f64 / n as f64)))
        .collect();
    dedup_circular(&mut all, COINCIDENCE_TOL);
    all
}

fn dedup_circular(v: &mut Vec<f64>, tol: f64) {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.dedup_by(|a, b| (*a - *b).abs() <= tol);
    if v.len() > 1 && v[0] + 1.0 - v[v.len() - 1] <= tol {
        v.pop();
    }
}

/// Basepoints whose star passes through a polygon vertex.
pub fn vertex_crossings(n: usize, l: usize) -> Result<Vec<f64>> {
    Ok(rotate_all(n, &inscribe_star(n, l, 0.0)?.vertices))
}

/// Basepoints whose star passes through an edge midpoint.
pub fn midpoint_crossings(n: usize, l: usize) -> Result<Vec<f64>> {
    Ok(rotate_all(n, &inscribe_star(n, l, midpoint(n))?.vertices))
}

/// Outcome of a monotonicity scan of `s(p)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicReport {
    pub n: usize,
    pub l: usize,
    pub grid_size: usize,
    pub pass: bool,
    /// Largest step against the expected direction, or largest spread among
    /// crossings of one kind, whichever is worse.
    pub worst_violation: f64,
    pub vertex_value: f64,
    pub midpoint_value: f64,
    pub vertex_crossings: usize,
    pub midpoint_crossings: usize,
    pub interleaved: bool,
    pub grid_min: f64,
    pub grid_max: f64,
    pub findings: Vec<String>,
}

/// Scans `s(p)` on a grid and checks that it rises strictly from each
/// midpoint crossing to the next vertex crossing and falls after it.
pub fn validate_monotonic(n: usize, l: usize, grid_size: usize) -> Result<MonotonicReport> {
    let solver = StarSolver::new(n, l)?;
    let vc = vertex_crossings(n, l)?;
    let mc = midpoint_crossings(n, l)?;
    let tv = solver.side(0.0)?;
    let sv = solver.side(midpoint(n))?;
    let mut findings = Vec::new();
    let mut worst: f64 = 0.0;

    let lcm = n.lcm(&(2 * l + 1));
    if vc.len() != lcm || mc.len() != lcm {
        findings.push(format!(
            "expected {lcm} crossings of each kind, found {} vertex and {} midpoint",
            vc.len(),
            mc.len()
        ));
    }

    let spread = |pts: &[f64], v: f64| -> Result<f64> {
        let vals: Vec<f64> = pts.par_iter().map(|&p| solver.side(p)).collect::<Result<_>>()?;
        Ok(vals.iter().map(|x| (x - v).abs()).fold(0.0, f64::max))
    };
    let sv_spread = spread(&mc, sv)?;
    let tv_spread = spread(&vc, tv)?;
    if sv_spread.max(tv_spread) > COINCIDENCE_TOL {
        findings.push(format!("crossing values spread by {:e}", sv_spread.max(tv_spread)));
        worst = worst.max(sv_spread.max(tv_spread));
    }

    // merged crossings tagged true for vertex crossings
    let mut merged: Vec<(f64, bool)> = vc.iter().map(|&x| (x, true)).chain(mc.iter().map(|&x| (x, false))).collect();
    merged.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let k = merged.len();
    let interleaved = k >= 2 && (0..k).all(|i| merged[i].1 != merged[(i + 1) % k].1);
    if !interleaved {
        findings.push("vertex and midpoint crossings do not interleave".into());
    }

    let grid: Vec<f64> = (0..grid_size).map(|i| i as f64 / grid_size as f64).collect();
    let values: Vec<f64> = grid.par_iter().map(|&p| solver.side(p)).collect::<Result<_>>()?;
    let grid_min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let grid_max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if grid_min < sv - MONOTONE_NOISE || grid_max > tv + MONOTONE_NOISE {
        let over = (sv - grid_min).max(grid_max - tv);
        findings.push(format!("grid leaves [s, t] by {over:e}"));
        worst = worst.max(over);
    }

    if interleaved {
        // walk the circle starting at the first crossing
        let start = merged[0].0;
        let mut seq: Vec<(f64, f64)> = grid
            .iter()
            .zip(&values)
            .map(|(&p, &v)| (wrap(p - start), v))
            .filter(|(off, _)| {
                merged.iter().all(|&(c, _)| {
                    let d = (wrap(c - start) - off).abs();
                    d > COINCIDENCE_TOL && (1.0 - d) > COINCIDENCE_TOL
                })
            })
            .collect();
        seq.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut gi = 0;
        for i in 0..k {
            let is_v0 = merged[i].1;
            let hi_off = if i + 1 < k { wrap(merged[i + 1].0 - start) } else { 1.0 };
            let rising = !is_v0;
            let mut prev = if is_v0 { tv } else { sv };
            while gi < seq.len() && seq[gi].0 < hi_off {
                let v = seq[gi].1;
                let back = if rising { prev - v } else { v - prev };
                worst = worst.max(back);
                prev = v;
                gi += 1;
            }
            let end = if is_v0 { sv } else { tv };
            let back = if rising { prev - end } else { end - prev };
            worst = worst.max(back);
        }
    }
    let pass = interleaved && findings.is_empty() && worst <= MONOTONE_NOISE;
    if worst > MONOTONE_NOISE && findings.iter().all(|f| !f.starts_with("non-monotone")) {
        findings.push(format!("non-monotone step of size {worst:e}"));
    }
    Ok(MonotonicReport {
        n,
        l,
        grid_size,
        pass,
        worst_violation: worst,
        vertex_value: tv,
        midpoint_value: sv,
        vertex_crossings: vc.len(),
        midpoint_crossings: mc.len(),
        interleaved,
        grid_min,
        grid_max,
        findings,
    })
}

/// Thresholds `s_{n,l}`, `t_{n,l}` using the default validation grid.
pub fn thresholds(n: usize, l: usize) -> Result<Thresholds> {
    thresholds_with_grid(n, l, DEFAULT_VALIDATION_GRID)
}

pub fn thresholds_with_grid(n: usize, l: usize, grid: usize) -> Result<Thresholds> {
    check_level(n, l)?;
    let rn = crate::geometry::r_n(n)?;
    let clamp = |t: f64| {
        if t >= rn - TOL {
            (rn, true)
        } else {
            (t, false)
        }
    };
    if n % (2 * l + 1) == 0 {
        let k = 2.0 * (PI * l as f64 / (2 * l + 1) as f64).sin();
        let (t, at_rn) = clamp(k);
        return Ok(Thresholds {
            n,
            l,
            s: k * (PI / n as f64).cos(),
            t,
            exact: true,
            at_rn,
            certification: Certification::Divisible,
            warning: None,
        });
    }
    let report = validate_monotonic(n, l, grid)?;
    if report.pass {
        let (t, at_rn) = clamp(report.vertex_value);
        Ok(Thresholds {
            n,
            l,
            s: report.midpoint_value,
            t,
            exact: false,
            at_rn,
            certification: Certification::Validated,
            warning: None,
        })
    } else {
        let (t, at_rn) = clamp(report.grid_max);
        Ok(Thresholds {
            n,
            l,
            s: report.grid_min,
            t,
            exact: false,
            at_rn,
            certification: Certification::GridFallback,
            warning: Some(format!(
                "monotonicity scan failed (worst violation {:e}); using grid extrema",
                report.worst_violation
            )),
        })
    }
}

/// Where a scale sits relative to `[s, t]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrossingStatus {
    /// `s < r < t`: two crossings per monotone piece.
    Interior,
    /// `r = s`: only the midpoint crossings.
    AtMinimum,
    /// `r = t`: only the vertex crossings.
    AtMaximum,
    /// No basepoint has side `r`.
    Outside,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crossings {
    pub status: CrossingStatus,
    pub points: Vec<f64>,
}

/// All basepoints `p` with `s(p) = r`.
pub fn crossings(n: usize, l: usize, r: f64) -> Result<Crossings> {
    let th = thresholds(n, l)?;
    crossings_with(&th, r)
}

/// As [`crossings`], reusing precomputed thresholds.
pub fn crossings_with(th: &Thresholds, r: f64) -> Result<Crossings> {
    let (n, l) = (th.n, th.l);
    if !th.certified() {
        return Err(Error::RequiresConjecture { n, l });
    }
    if (r - th.s).abs() <= COINCIDENCE_TOL {
        return Ok(Crossings { status: CrossingStatus::AtMinimum, points: midpoint_crossings(n, l)? });
    }
    if (r - th.t).abs() <= COINCIDENCE_TOL {
        return Ok(Crossings { status: CrossingStatus::AtMaximum, points: vertex_crossings(n, l)? });
    }
    if r < th.s || r > th.t {
        return Ok(Crossings { status: CrossingStatus::Outside, points: Vec::new() });
    }
    let solver = StarSolver::new(n, l)?;
    let mut merged: Vec<(f64, bool)> = vertex_crossings(n, l)?
        .into_iter()
        .map(|x| (x, true))
        .chain(midpoint_crossings(n, l)?.into_iter().map(|x| (x, false)))
        .collect();
    merged.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let k = merged.len();
    let mut points: Vec<f64> = (0..k)
        .into_par_iter()
        .map(|i| {
            let (a, a_is_vertex) = merged[i];
            let b = if i + 1 < k { merged[i + 1].0 } else { merged[0].0 + 1.0 };
            // defect > 0 means s(p) < r
            let a_fast = !a_is_vertex;
            let (mut lo, mut hi) = (a, b);
            for _ in 0..BISECTION_MAX_ITER {
                if hi - lo <= 1e-15 {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                let fast = solver.defect(wrap(mid), r) > 0.0;
                if fast == a_fast {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            wrap(0.5 * (lo + hi))
        })
        .collect();
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(Crossings { status: CrossingStatus::Interior, points })
}

/// Number of distinct stars of side `r`.
pub fn count_stars(n: usize, l: usize, r: f64) -> Result<usize> {
    let th = thresholds(n, l)?;
    count_stars_with(&th, r)
}

pub fn count_stars_with(th: &Thresholds, r: f64) -> Result<usize> {
    if !th.certified() {
        return Err(Error::RequiresConjecture { n: th.n, l: th.l });
    }
    let q = th.q();
    if (r - th.s).abs() <= COINCIDENCE_TOL || (r - th.t).abs() <= COINCIDENCE_TOL {
        Ok(q)
    } else if th.s < r && r < th.t {
        Ok(2 * q)
    } else {
        Ok(0)
    }
}

/// Number of star vertices that are polygon vertices, plus the number
/// that are edge midpoints.
pub fn coincidence_number(star: &StarSolution) -> usize {
    let nf = star.n as f64;
    let near = |x: f64| {
        let d = (x - x.round()).abs();
        d.min(1.0 - d)
    };
    star.vertices
        .iter()
        .filter(|&&v| {
            let x = wrap(v) * nf;
            near(x) / nf <= COINCIDENCE_TOL || near(x - 0.5) / nf <= COINCIDENCE_TOL
        })
        .count()
}

type P2 = [f64; 2];

fn sub(a: P2, b: P2) -> P2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn norm(a: P2) -> f64 {
    a[0].hypot(a[1])
}

fn cross(a: P2, b: P2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Intersection of the lines `p + s*d` and `q + u*e`.
fn meet(p: P2, d: P2, q: P2, e: P2) -> Result<P2> {
    let den = cross(d, e);
    if den.abs() < 1e-14 {
        return Err(Error::DegenerateCircumscription);
    }
    let s = cross(sub(q, p), e) / den;
    Ok([p[0] + s * d[0], p[1] + s * d[1]])
}

fn angle(at: P2, a: P2, b: P2) -> f64 {
    let u = sub(a, at);
    let v = sub(b, at);
    cross(u, v).abs().atan2(u[0] * v[0] + u[1] * v[1])
}

/// For the 3-star at `basepoint`, extends the three polygon edges holding
/// its vertices to a triangle `ABC`, circumscribes the equilateral triangle
/// `TUV` parallel to the star, and returns `(RQ * VU, reference)` where
/// the reference depends only on `ABC`.
pub fn napoleon_product_check(n: usize, basepoint: f64) -> Result<(f64, f64)> {
    let star = inscribe_star(n, 1, basepoint)?;
    let nf = n as f64;
    let on_vertex = star.vertices.iter().any(|&v| {
        let x = wrap(v) * nf;
        let d = (x - x.round()).abs();
        d.min(nf - d) / nf <= COINCIDENCE_TOL
    });
    if on_vertex {
        return Err(Error::DegenerateCircumscription);
    }
    let poly = StarSolver::new(n, 1)?.poly;
    let edge_line = |t: f64| -> (P2, P2) {
        let k = (wrap(t) * nf).floor() as usize;
        let a = poly.vertex(k);
        (a, sub(poly.vertex(k + 1), a))
    };
    let p = poly.embed(star.vertices[0]);
    let q = poly.embed(star.vertices[1]);
    let r = poly.embed(star.vertices[2]);
    let (lp, dp) = edge_line(star.vertices[0]);
    let (lq, dq) = edge_line(star.vertices[1]);
    let (lr, dr) = edge_line(star.vertices[2]);
    let a = meet(lp, dp, lr, dr)?;
    let b = meet(lp, dp, lq, dq)?;
    let c = meet(lq, dq, lr, dr)?;
    let u = meet(b, sub(q, p), c, sub(r, q))?;
    let v = meet(a, sub(r, p), c, sub(r, q))?;
    let product = norm(sub(r, q)) * norm(sub(u, v));
    let ab = norm(sub(b, a));
    let reference = ab * ab * angle(b, a, c).sin() * angle(a, b, c).sin() / (angle(c, a, b).sin() * (PI / 3.0).sin());
    Ok((product, reference))
}
