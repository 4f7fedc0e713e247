//! Bounds on the Gromov-Hausdorff distance between `P_n` and the unit
//! circle, both with the Euclidean metric.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Polygon;
use crate::oracle::bottleneck;
use crate::stars::thresholds;

pub const DEFAULT_GRID: usize = 10_000;

/// Hausdorff distance between `P_n` and its circumscribed circle.
pub fn hausdorff_polygon_circle(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("a polygon needs n >= 3, got {n}")));
    }
    Ok(1.0 - (PI / n as f64).cos())
}

/// Half the bottleneck distance between the `H_1` barcodes of `P_n` and
/// the circle, `(sqrt(3)/2)(1 - cos(pi/n))`, available when `3 | n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhBound {
    pub value: f64,
    /// The same quantity from the bottleneck matcher.
    pub bottleneck_half: f64,
}

pub fn ph_lower_bound(n: usize) -> Result<PhBound> {
    if n < 6 || n % 3 != 0 {
        return Err(Error::NotApplicable(format!("no closed form for the H_1 bar when 3 does not divide n = {n}")));
    }
    let s = thresholds(n, 1)?.s;
    let circle = 3f64.sqrt();
    let value = 0.5 * circle * (1.0 - (PI / n as f64).cos());
    let bottleneck_half = 0.5 * bottleneck(&[(0.0, s)], &[(0.0, circle)]);
    Ok(PhBound { value, bottleneck_half })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricBound {
    /// Half the Hausdorff distance between the images of the two metrics.
    pub weak: f64,
    /// Half the largest distance-image discrepancy along the radial
    /// correspondence, maximised over a grid of polygon points.
    pub strong_radial: f64,
    pub grid: usize,
    /// Grid resolution of `strong_radial`.
    pub resolution: f64,
}

/// Farthest polygon vertex from arc coordinate `t`; the farthest point of
/// `P_n` from any point is a vertex.
fn eccentricity(poly: &Polygon, t: f64) -> f64 {
    let x = poly.embed(t);
    (0..poly.n())
        .map(|k| {
            let v = poly.vertex(k);
            (x[0] - v[0]).hypot(x[1] - v[1])
        })
        .fold(0.0, f64::max)
}

pub fn metric_lower_bound(n: usize, grid: usize) -> Result<MetricBound> {
    if n < 4 {
        return Err(Error::InvalidInput(format!("need n >= 4, got {n}")));
    }
    if grid == 0 {
        return Err(Error::InvalidInput("grid must be positive".into()));
    }
    let poly = Polygon::new(n)?;
    // both images are intervals starting at 0; the circle's ends at 2
    let diam = (0..n).map(|k| eccentricity(&poly, k as f64 / n as f64)).fold(0.0, f64::max);
    let weak = 0.5 * (2.0 - diam);
    // edge midpoints are added to the grid
    let strong_radial = (0..grid)
        .into_par_iter()
        .map(|i| i as f64 / grid as f64)
        .chain((0..n).into_par_iter().map(|k| (k as f64 + 0.5) / n as f64))
        .map(|t| 0.5 * (2.0 - eccentricity(&poly, t)))
        .reduce(|| 0.0, f64::max);
    Ok(MetricBound { weak, strong_radial, grid, resolution: 2.0 / grid as f64 })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GHReport {
    pub n: usize,
    pub hausdorff_upper: f64,
    pub ph_lower: Option<PhBound>,
    pub metric: MetricBound,
    /// Certified bracket: the larger of the valid lower bounds, and the
    /// Hausdorff upper bound.
    pub interval: (f64, f64),
    /// Whether the persistence bound beats what the radial correspondence
    /// can certify.
    pub ph_dominates: Option<bool>,
}

pub fn gh_report(n: usize) -> Result<GHReport> {
    gh_report_with_grid(n, DEFAULT_GRID)
}

pub fn gh_report_with_grid(n: usize, grid: usize) -> Result<GHReport> {
    let hausdorff_upper = hausdorff_polygon_circle(n)?;
    let metric = metric_lower_bound(n, grid)?;
    let ph_lower = match ph_lower_bound(n) {
        Ok(b) => Some(b),
        Err(Error::NotApplicable(_)) => None,
        Err(e) => return Err(e),
    };
    let lower = ph_lower.map_or(metric.weak, |b| b.value.max(metric.weak));
    debug_assert!(lower <= hausdorff_upper);
    Ok(GHReport {
        n,
        hausdorff_upper,
        ph_lower,
        metric,
        interval: (lower, hausdorff_upper),
        ph_dominates: ph_lower.map(|b| b.value > metric.strong_radial),
    })
}
