//! Homotopy types and barcodes of `VR(P_n; r)` for `0 < r < r_n`.
//!
//! Between consecutive star thresholds the complex is an odd sphere; on
//! `[s_{n,l}, t_{n,l}]` it is a wedge of even spheres whose count depends on
//! the convention and on whether `r` is an endpoint.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclic::{Convention, HomotopyType};
use crate::error::{Error, Result};
use crate::geometry::{r_n, TOL};
use crate::stars::{thresholds, StarSolver, Thresholds};

/// Scales closer than this to a threshold count as equal to it.
pub const SCALE_TOL: f64 = 1e-10;
const PROBE_GRID: usize = 512;

/// One persistence interval, possibly with multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
    pub birth_closed: bool,
    pub death_closed: bool,
    pub multiplicity: usize,
    /// A summary of zero-length classes rather than a real bar.
    pub ephemeral: bool,
    pub clipped_at_rn: bool,
}

/// Barcode of `VR(P_n; r)` restricted to `(0, r_n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Barcode {
    pub n: usize,
    pub convention: Convention,
    pub intervals: Vec<Interval>,
    /// First homological dimension whose bars could not be certified.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unknown_beyond_dim: Option<usize>,
}

impl Barcode {
    /// Total multiplicity of non-ephemeral bars in `dim`.
    pub fn multiplicity(&self, dim: usize) -> usize {
        self.intervals.iter().filter(|i| i.dim == dim && !i.ephemeral).map(|i| i.multiplicity).sum()
    }

    /// Non-ephemeral bars of `dim` as `(birth, death)` points, one per unit
    /// of multiplicity.
    pub fn points(&self, dim: usize) -> Vec<(f64, f64)> {
        self.intervals
            .iter()
            .filter(|i| i.dim == dim && !i.ephemeral)
            .flat_map(|i| std::iter::repeat((i.birth, i.death)).take(i.multiplicity))
            .collect()
    }

    pub fn max_dim(&self) -> usize {
        self.intervals.iter().map(|i| i.dim).max().unwrap_or(0)
    }
}

/// A certified star level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub l: usize,
    pub thresholds: Thresholds,
}

impl Level {
    pub fn q(&self) -> usize {
        self.thresholds.q()
    }
}

/// What happens above the last certified level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tail {
    /// The last level's maximum already equals `r_n`.
    EndsAtRn,
    /// Level `l` has no star with side below `r_n` on a probe grid, so the
    /// last odd sphere persists up to `r_n`.
    NoStarBelowRn { l: usize },
    /// Level `l` could not be certified.
    Uncertified { l: usize },
}

/// Precomputed thresholds for one polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonPredictor {
    pub n: usize,
    pub rn: f64,
    pub levels: Vec<Level>,
    pub tail: Tail,
}

fn no_star_below_rn(n: usize, l: usize, rn: f64) -> Result<bool> {
    let solver = StarSolver::unchecked(n, l)?;
    // s is invariant under rotation by 1/n, so one edge suffices
    let worst = (0..=PROBE_GRID)
        .map(|i| solver.defect(i as f64 / (PROBE_GRID as f64 * n as f64), rn))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(worst < -1e-9)
}

impl PolygonPredictor {
    pub fn new(n: usize) -> Result<Self> {
        let rn = r_n(n)?;
        if n == 3 {
            return Err(Error::NoCyclicRegime);
        }
        let mut levels = Vec::new();
        let mut l = 1;
        let tail = loop {
            if n < 4 * l + 2 {
                break if no_star_below_rn(n, l, rn)? { Tail::NoStarBelowRn { l } } else { Tail::Uncertified { l } };
            }
            let th = thresholds(n, l)?;
            if !th.certified() {
                break Tail::Uncertified { l };
            }
            if th.s >= rn - TOL {
                break Tail::NoStarBelowRn { l };
            }
            let ends = th.at_rn;
            levels.push(Level { l, thresholds: th });
            if ends {
                break Tail::EndsAtRn;
            }
            l += 1;
        };
        Ok(Self { n, rn, levels, tail })
    }

    fn tail_certified(&self) -> bool {
        !matches!(self.tail, Tail::Uncertified { .. })
    }

    pub fn level(&self, l: usize) -> Option<&Level> {
        self.levels.iter().find(|lv| lv.l == l)
    }

    /// Homotopy type of `VR(P_n; r)`.
    pub fn homotopy_type(&self, r: f64, convention: Convention) -> Result<HomotopyType> {
        if !(r > 0.0) || r >= self.rn {
            return Err(Error::OutsideCyclicRegime { r, rn: self.rn });
        }
        let strict = convention == Convention::Strict;
        for lv in &self.levels {
            let (s, t, q, l) = (lv.thresholds.s, lv.thresholds.t, lv.q(), lv.l);
            let at_s = (r - s).abs() <= SCALE_TOL;
            let at_t = (r - t).abs() <= SCALE_TOL;
            let odd = HomotopyType::OddSphere { dim: 2 * l - 1 };
            if strict {
                if r < s || at_s {
                    return Ok(odd);
                }
                if r < t || at_t {
                    return Ok(HomotopyType::Wedge { count: q - 1, dim: 2 * l });
                }
            } else {
                if at_s {
                    return Ok(HomotopyType::Wedge { count: q - 1, dim: 2 * l });
                }
                if r < s {
                    return Ok(odd);
                }
                if at_t {
                    return Ok(HomotopyType::Wedge { count: 2 * q - 1, dim: 2 * l });
                }
                if r < t {
                    return Ok(HomotopyType::Wedge { count: 3 * q - 1, dim: 2 * l });
                }
            }
        }
        if self.tail_certified() {
            let top = self.levels.last().map_or(0, |lv| lv.l);
            Ok(HomotopyType::OddSphere { dim: 2 * top + 1 })
        } else {
            let l = match self.tail {
                Tail::Uncertified { l } => l,
                _ => unreachable!(),
            };
            Err(Error::RequiresConjecture { n: self.n, l })
        }
    }

    pub fn barcode(&self, convention: Convention) -> Barcode {
        let strict = convention == Convention::Strict;
        let mut intervals = Vec::new();
        let mut birth = 0.0;
        let mut birth_at_rn = false;
        for lv in &self.levels {
            let (s, t, q, l) = (lv.thresholds.s, lv.thresholds.t, lv.q(), lv.l);
            intervals.push(Interval {
                dim: 2 * l - 1,
                birth,
                death: s,
                birth_closed: false,
                death_closed: strict,
                multiplicity: 1,
                ephemeral: false,
                clipped_at_rn: false,
            });
            let clipped = lv.thresholds.at_rn;
            intervals.push(Interval {
                dim: 2 * l,
                birth: s,
                death: t,
                birth_closed: !strict,
                death_closed: !clipped,
                multiplicity: q - 1,
                ephemeral: false,
                clipped_at_rn: clipped,
            });
            if !strict {
                intervals.push(Interval {
                    dim: 2 * l,
                    birth: s,
                    death: t,
                    birth_closed: false,
                    death_closed: false,
                    multiplicity: 2 * q,
                    ephemeral: true,
                    clipped_at_rn: false,
                });
                intervals.push(Interval {
                    dim: 2 * l,
                    birth: t,
                    death: t,
                    birth_closed: true,
                    death_closed: true,
                    multiplicity: q,
                    ephemeral: true,
                    clipped_at_rn: clipped,
                });
            }
            birth = t;
            birth_at_rn = clipped;
        }
        let top = self.levels.last().map_or(0, |lv| lv.l);
        if !birth_at_rn {
            intervals.push(Interval {
                dim: 2 * top + 1,
                birth,
                death: self.rn,
                birth_closed: false,
                death_closed: false,
                multiplicity: 1,
                ephemeral: false,
                clipped_at_rn: true,
            });
        }
        let unknown_beyond_dim = match self.tail {
            Tail::Uncertified { l } => Some(2 * l),
            _ => None,
        };
        Barcode { n: self.n, convention, intervals, unknown_beyond_dim }
    }

    /// Rank of `H_{2l}(VR_<=(P_n; r)) -> H_{2l}(VR_<=(P_n; r2))`.
    pub fn inclusion_rank(&self, l: usize, r: f64, r2: f64) -> Result<usize> {
        if !(r <= r2) {
            return Err(Error::InvalidInput(format!("need r <= r2, got {r} > {r2}")));
        }
        let lv = self.level(l).ok_or(match self.tail {
            Tail::Uncertified { l: lu } if lu <= l => Error::RequiresConjecture { n: self.n, l },
            _ => Error::InvalidInput(format!("no star level l = {l} below r_{}", self.n)),
        })?;
        let (s, t) = (lv.thresholds.s, lv.thresholds.t);
        if s - SCALE_TOL <= r && r2 <= t + SCALE_TOL {
            return Ok(lv.q() - 1);
        }
        let a = self.homotopy_type(r, Convention::Closed)?;
        let b = self.homotopy_type(r2, Convention::Closed)?;
        let same_odd_window = matches!((a, b), (HomotopyType::OddSphere { dim: x }, HomotopyType::OddSphere { dim: y }) if x == y);
        if same_odd_window {
            return Ok(a.betti(2 * l + 1)[2 * l]);
        }
        Err(Error::RegimeMismatch {
            r,
            r2,
            detail: format!("types {a} and {b}; the singular window for l = {l} is [{s}, {t}]"),
        })
    }
}

/// Homotopy type of `VR(P_n; r)`.
pub fn homotopy_type_polygon(n: usize, r: f64, convention: Convention) -> Result<HomotopyType> {
    PolygonPredictor::new(n)?.homotopy_type(r, convention)
}

/// Barcode of `VR(P_n; -)` on `(0, r_n)`.
pub fn barcode(n: usize, convention: Convention) -> Result<Barcode> {
    Ok(PolygonPredictor::new(n)?.barcode(convention))
}

/// Rank of the inclusion-induced map on `H_{2l}` between two scales of the
/// closed complex.
pub fn inclusion_rank(n: usize, l: usize, r: f64, r2: f64) -> Result<usize> {
    PolygonPredictor::new(n)?.inclusion_rank(l, r, r2)
}

/// `n / gcd(n, 2l+1)`.
pub fn orbit_count(n: usize, l: usize) -> usize {
    n / n.gcd(&(2 * l + 1))
}
