//! Geometry of the regular polygon `P_n` inscribed in the unit circle.
//!
//! Points are addressed by a counterclockwise arc coordinate `t ∈ [0, 1)`
//! measured as a fraction of the perimeter, so `t = k/n` is the `k`-th vertex
//! and geodesic distance is a subtraction.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for geometric equalities.
pub const TOL: f64 = 1e-10;

/// A point of `P_n` given by its arc coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolygonPoint {
    pub n: usize,
    pub t: f64,
}

impl PolygonPoint {
    /// Builds a point, reducing `t` modulo 1.
    pub fn new(n: usize, t: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!("polygon needs n >= 3, got {n}")));
        }
        if !t.is_finite() {
            return Err(Error::InvalidInput(format!("arc coordinate {t} is not finite")));
        }
        Ok(Self { n, t: wrap(t) })
    }

    /// The `k`-th vertex.
    pub fn vertex(n: usize, k: usize) -> Result<Self> {
        Self::new(n, (k % n.max(1)) as f64 / n as f64)
    }

    /// Point at barycentric coordinate `s` along edge `k`.
    pub fn on_edge(n: usize, k: usize, s: f64) -> Result<Self> {
        Self::new(n, (k as f64 + s) / n as f64)
    }
}

/// Reduces an arc coordinate into `[0, 1)`.
pub fn wrap(t: f64) -> f64 {
    let w = t.rem_euclid(1.0);
    if w >= 1.0 {
        0.0
    } else {
        w
    }
}

/// A counterclockwise arc from `lo` to `hi`, possibly wrapping through 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcInterval {
    pub n: usize,
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub empty: bool,
}

impl ArcInterval {
    /// Counterclockwise length of the arc as a fraction of the perimeter.
    pub fn length(&self) -> f64 {
        if self.empty {
            0.0
        } else {
            (self.hi - self.lo).rem_euclid(1.0)
        }
    }

    /// Whether `t` lies on the arc, up to `TOL`.
    pub fn contains(&self, t: f64) -> bool {
        if self.empty {
            return false;
        }
        let off = (t - self.lo).rem_euclid(1.0);
        let len = self.length();
        off <= len + TOL || off >= 1.0 - TOL
    }
}

/// Side length of `P_n`.
pub fn side_length(n: usize) -> f64 {
    2.0 * (PI / n as f64).sin()
}

/// The cyclicity threshold `r_n`: below it every ball meets `P_n` in one arc.
pub fn r_n(n: usize) -> Result<f64> {
    match n {
        0..=2 => Err(Error::InvalidInput(format!("polygon needs n >= 3, got {n}"))),
        3 => Ok(0.0),
        _ => {
            let x = PI / n as f64;
            if n % 2 == 0 {
                Ok(2.0 * x.cos())
            } else {
                Ok(1.0 + (2.0 * x).cos() / x.cos())
            }
        }
    }
}

/// Precomputed vertex table for repeated geometry on one polygon.
#[derive(Debug, Clone)]
pub struct Polygon {
    n: usize,
    verts: Vec<[f64; 2]>,
    side: f64,
    rn: f64,
}

impl Polygon {
    pub fn new(n: usize) -> Result<Self> {
        let rn = r_n(n)?;
        let verts = (0..n)
            .map(|k| {
                let a = 2.0 * PI * k as f64 / n as f64;
                [a.cos(), a.sin()]
            })
            .collect();
        Ok(Self { n, verts, side: side_length(n), rn })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn rn(&self) -> f64 {
        self.rn
    }

    pub fn vertex(&self, k: usize) -> [f64; 2] {
        self.verts[k % self.n]
    }

    /// Planar position of arc coordinate `t`.
    pub fn embed(&self, t: f64) -> [f64; 2] {
        let x = wrap(t) * self.n as f64;
        let k = x.floor();
        let s = x - k;
        let a = self.vertex(k as usize);
        let b = self.vertex(k as usize + 1);
        [(1.0 - s) * a[0] + s * b[0], (1.0 - s) * a[1] + s * b[1]]
    }

    pub fn dist(&self, t: f64, u: f64) -> f64 {
        let a = self.embed(t);
        let b = self.embed(u);
        (a[0] - b[0]).hypot(a[1] - b[1])
    }

    /// Counterclockwise arc advance from `t` to the far end of the ball of
    /// radius `r`. No range checks; callers keep `0 < r <= r_n`.
    pub fn ccw_advance(&self, t: f64, r: f64) -> f64 {
        let n = self.n;
        let nf = n as f64;
        let x = wrap(t) * nf;
        let kf = x.floor();
        let s0 = x - kf;
        let k = kf as usize % n;
        let first = r / self.side;
        if s0 + first <= 1.0 {
            return first / nf;
        }
        let p = self.embed(t);
        let a2 = self.side * self.side;
        let mut edges = 1.0 - s0;
        for j in 1..=n {
            let a = self.vertex(k + j);
            let b = self.vertex(k + j + 1);
            let d = [b[0] - a[0], b[1] - a[1]];
            let w = [a[0] - p[0], a[1] - p[1]];
            let bb = w[0] * d[0] + w[1] * d[1];
            let cc = w[0] * w[0] + w[1] * w[1] - r * r;
            let disc = (bb * bb - a2 * cc).max(0.0);
            let sp = (-bb + disc.sqrt()) / a2;
            if sp <= 1.0 {
                return (edges + sp.max(0.0)) / nf;
            }
            edges += 1.0;
        }
        1.0
    }

    /// Clockwise arc advance, by reflecting through the real axis.
    pub fn cw_advance(&self, t: f64, r: f64) -> f64 {
        self.ccw_advance(wrap(-t), r)
    }

    /// Arc coordinate of `g_r(t)`.
    pub fn step(&self, t: f64, r: f64) -> f64 {
        wrap(t + self.ccw_advance(t, r))
    }
}

/// Planar position of a polygon point.
pub fn embed(p: PolygonPoint) -> [f64; 2] {
    let x = wrap(p.t) * p.n as f64;
    let k = x.floor();
    let s = x - k;
    let ang = |j: f64| 2.0 * PI * j / p.n as f64;
    let (a, b) = (ang(k), ang(k + 1.0));
    [
        (1.0 - s) * a.cos() + s * b.cos(),
        (1.0 - s) * a.sin() + s * b.sin(),
    ]
}

fn same_polygon(p: PolygonPoint, q: PolygonPoint) -> Result<()> {
    if p.n != q.n {
        return Err(Error::InvalidInput(format!(
            "points live on different polygons (n = {} and n = {})",
            p.n, q.n
        )));
    }
    Ok(())
}

pub fn euclid_dist(p: PolygonPoint, q: PolygonPoint) -> Result<f64> {
    same_polygon(p, q)?;
    let a = embed(p);
    let b = embed(q);
    Ok((a[0] - b[0]).hypot(a[1] - b[1]))
}

/// Counterclockwise geodesic distance `(q - p) mod 1`.
pub fn geodesic_dist(p: PolygonPoint, q: PolygonPoint) -> Result<f64> {
    same_polygon(p, q)?;
    Ok(wrap(q.t - p.t))
}

fn check_scale(n: usize, r: f64) -> Result<f64> {
    let rn = r_n(n)?;
    if n == 3 {
        return Err(Error::NoCyclicRegime);
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidInput(format!("scale must be positive, got {r}")));
    }
    if r > rn + TOL {
        return Err(Error::CyclicityThresholdExceeded { n, r, rn });
    }
    Ok(rn)
}

/// The arc `{w : |p - w| <= r}`. Scales up to and including `r_n` are
/// accepted; at `r_n` itself the arc is the one-sided limit from below.
pub fn ball_arc(p: PolygonPoint, r: f64) -> Result<ArcInterval> {
    check_scale(p.n, r)?;
    let poly = Polygon::new(p.n)?;
    let hi = wrap(p.t + poly.ccw_advance(p.t, r));
    let lo = wrap(p.t - poly.cw_advance(p.t, r));
    Ok(ArcInterval { n: p.n, lo, hi, lo_closed: true, hi_closed: true, empty: false })
}

/// Result of the step map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub point: PolygonPoint,
    /// Set when `r` sits on the cyclicity threshold.
    pub boundary: bool,
}

/// The counterclockwise endpoint `g_r(p)` of the ball arc.
pub fn g_r(p: PolygonPoint, r: f64) -> Result<Step> {
    let rn = check_scale(p.n, r)?;
    let poly = Polygon::new(p.n)?;
    Ok(Step {
        point: PolygonPoint { n: p.n, t: poly.step(p.t, r) },
        boundary: (r - rn).abs() <= TOL,
    })
}

/// Number of arcs in which the closed ball of radius `r` about `t` meets
/// `P_n`, counted on a grid of `per_edge` points per edge.
pub fn ball_arc_count(poly: &Polygon, t: f64, r: f64, per_edge: usize) -> usize {
    let total = poly.n() * per_edge;
    let inside: Vec<bool> = (0..total).map(|i| poly.dist(t, i as f64 / total as f64) <= r + 1e-12).collect();
    if inside.iter().all(|&b| b) {
        return 1;
    }
    (0..total).filter(|&i| inside[i] && !inside[(i + total - 1) % total]).count()
}

/// A centre whose closed ball of radius `r` meets `P_n` in more than one
/// arc, with the number of arcs, found by scanning one edge.
pub fn disconnected_ball(n: usize, r: f64) -> Result<Option<(f64, usize)>> {
    let poly = Polygon::new(n)?;
    let centres = 64;
    Ok((0..=centres)
        .map(|i| i as f64 / (centres as f64 * n as f64))
        .map(|t| (t, ball_arc_count(&poly, t, r, 256)))
        .find(|&(_, k)| k > 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn pt(n: usize, t: f64) -> PolygonPoint {
        PolygonPoint::new(n, t).unwrap()
    }

    #[test]
    fn embed_examples() {
        let v = embed(pt(4, 0.0));
        assert_abs_diff_eq!(v[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v[1], 0.0, epsilon = 1e-12);
        let m = embed(pt(4, 0.125));
        assert_abs_diff_eq!(m[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(m[1], 0.5, epsilon = 1e-12);
        let h = embed(pt(6, 1.0 / 6.0));
        assert_abs_diff_eq!(h[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(h[1], 0.8660254, epsilon = 1e-7);
    }

    #[test]
    fn distances() {
        assert_abs_diff_eq!(euclid_dist(pt(6, 0.0), pt(6, 1.0 / 6.0)).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(euclid_dist(pt(6, 0.0), pt(6, 0.5)).unwrap(), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(euclid_dist(pt(4, 0.0), pt(4, 0.25)).unwrap(), std::f64::consts::SQRT_2, epsilon = 1e-12);
        assert!(euclid_dist(pt(4, 0.0), pt(5, 0.0)).is_err());

        assert_abs_diff_eq!(geodesic_dist(pt(6, 0.0), pt(6, 1.0 / 6.0)).unwrap(), 1.0 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(geodesic_dist(pt(6, 1.0 / 6.0), pt(6, 0.0)).unwrap(), 5.0 / 6.0, epsilon = 1e-12);
        assert_eq!(geodesic_dist(pt(9, 0.3), pt(9, 0.3)).unwrap(), 0.0);
    }

    #[test]
    fn thresholds_rn() {
        assert_abs_diff_eq!(r_n(6).unwrap(), 1.7320508, epsilon = 1e-7);
        assert_abs_diff_eq!(r_n(5).unwrap(), 1.3819660, epsilon = 1e-7);
        assert_abs_diff_eq!(r_n(4).unwrap(), std::f64::consts::SQRT_2, epsilon = 1e-12);
        assert_eq!(r_n(3).unwrap(), 0.0);
        assert!(r_n(2).is_err());
    }

    #[test]
    fn disconnected_balls() {
        assert_eq!(disconnected_ball(6, 1.5).unwrap(), None);
        let (t, k) = disconnected_ball(6, 1.8).unwrap().unwrap();
        assert!(k >= 2);
        assert_eq!(ball_arc_count(&Polygon::new(6).unwrap(), t, 1.8, 256), k);
        assert!(disconnected_ball(5, r_n(5).unwrap() + 0.05).unwrap().is_some());
        assert_eq!(disconnected_ball(9, r_n(9).unwrap() - 1e-3).unwrap(), None);
    }

    #[test]
    fn ball_arc_examples() {
        let a = ball_arc(pt(4, 0.0), 2f64.sqrt()).unwrap();
        // the next edge is tangent to the ball here, so rounding in r shows up
        // at the square root of machine precision
        assert_abs_diff_eq!(a.lo, 0.75, epsilon = 1e-7);
        assert_abs_diff_eq!(a.hi, 0.25, epsilon = 1e-7);

        let b = ball_arc(pt(4, 0.0), 1.0).unwrap();
        assert_abs_diff_eq!(b.hi, 0.1767767, epsilon = 1e-7);

        let c = ball_arc(pt(6, 0.0), 0.5).unwrap();
        assert_abs_diff_eq!(c.hi, 0.5 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.lo, 1.0 - 0.5 / 6.0, epsilon = 1e-12);

        assert!(matches!(
            ball_arc(pt(6, 0.0), 1.9),
            Err(Error::CyclicityThresholdExceeded { .. })
        ));
        assert!(matches!(ball_arc(pt(3, 0.0), 0.1), Err(Error::NoCyclicRegime)));
    }

    #[test]
    fn step_examples() {
        let s = g_r(pt(4, 0.0), 2f64.sqrt()).unwrap();
        assert_abs_diff_eq!(s.point.t, 0.25, epsilon = 1e-7);
        assert!(s.boundary);
        assert_abs_diff_eq!(g_r(pt(4, 0.0), 1.0).unwrap().point.t, 0.1767767, epsilon = 1e-7);
        let h = g_r(pt(6, 0.0), 1.0).unwrap();
        assert_abs_diff_eq!(h.point.t, 1.0 / 6.0, epsilon = 1e-12);
        assert!(!h.boundary);
    }

    #[test]
    fn step_lands_at_distance_r() {
        for n in [4usize, 5, 7, 12, 31] {
            let poly = Polygon::new(n).unwrap();
            for i in 0..200 {
                let t = i as f64 / 200.0 + 0.0013;
                for j in 1..20 {
                    let r = poly.rn() * j as f64 / 20.0;
                    let d = poly.dist(t, poly.step(t, r));
                    assert!((d - r).abs() < 1e-9, "n={n} t={t} r={r} d={d}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn ball_is_one_arc(n in 4usize..40, t in 0.0f64..1.0, frac in 0.01f64..0.999) {
            let poly = Polygon::new(n).unwrap();
            let r = frac * poly.rn();
            let arc = ball_arc(pt(n, t), r).unwrap();
            for i in 0..400 {
                let u = i as f64 / 400.0;
                let d = poly.dist(t, u);
                if arc.contains(u) {
                    prop_assert!(d <= r + 1e-9);
                } else {
                    prop_assert!(d > r - 1e-9);
                }
            }
        }

        #[test]
        fn step_monotone_in_scale(n in 4usize..40, t in 0.0f64..1.0, a in 0.01f64..0.99, b in 0.01f64..0.99) {
            let poly = Polygon::new(n).unwrap();
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assume!(hi - lo > 1e-6);
            let s1 = poly.ccw_advance(t, lo * poly.rn());
            let s2 = poly.ccw_advance(t, hi * poly.rn());
            prop_assert!(0.0 < s1 && s1 < s2 && s2 < 1.0);
        }

        #[test]
        fn step_continuous(n in 4usize..40, t in 0.0f64..1.0, frac in 0.01f64..0.99) {
            let poly = Polygon::new(n).unwrap();
            let r = frac * poly.rn();
            let base = poly.ccw_advance(t, r);
            prop_assert!((poly.ccw_advance(t, r + 1e-6) - base).abs() <= 1e-3);
            let moved = poly.ccw_advance(wrap(t + 1e-6), r) + 1e-6;
            prop_assert!((moved - base).abs() <= 1e-3);
        }

        #[test]
        fn vertex_step_is_minimal(n in 4usize..30, t in 0.0f64..1.0, frac in 0.01f64..0.999) {
            let poly = Polygon::new(n).unwrap();
            let r = frac * poly.rn();
            prop_assert!(poly.ccw_advance(0.0, r) <= poly.ccw_advance(t, r) + 1e-12);
        }
    }
}
