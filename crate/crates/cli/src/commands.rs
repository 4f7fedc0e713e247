use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_integer::Integer;
use polyrips_core::geometry::disconnected_ball;
use polyrips_core::io::{barcode_to_json, barcode_to_text, sample_from_text, sample_to_text};
use polyrips_core::oracle::{vr_complex_with_budget, DEFAULT_SIMPLEX_BUDGET};
use polyrips_core::predictor::{homotopy_type_polygon, orbit_count, PolygonPredictor};
use polyrips_core::sampler::{certified_sample, construct, density as sample_density, SampleSpec};
use polyrips_core::stars::{thresholds_with_grid, validate_monotonic, Certification};
use polyrips_core::{betti, r_n, Convention, DistanceMatrix, Error, FiniteCyclicGraph, HomotopyType, Polygon, VertexClass};
use serde::Serialize;
use thiserror::Error as ThisError;

use crate::{svg, BarcodeFormat, ReportFormat};

pub const BUDGET_VAR: &str = "POLYRIPS_SIMPLEX_BUDGET";

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    NotCertifiable(String),
    #[error("{0}")]
    NotCyclic(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::NotCertifiable(_) => 3,
            CliError::NotCyclic(_) => 4,
            CliError::Core(e) => match e {
                Error::ExistenceNotGuaranteed { .. }
                | Error::NoSignChange { .. }
                | Error::ConjectureViolated { .. }
                | Error::RequiresConjecture { .. } => 3,
                Error::CyclicityThresholdExceeded { .. }
                | Error::NotCyclic(..)
                | Error::InconsistentBall { .. }
                | Error::OutsideCyclicRegime { .. } => 4,
                Error::Resource(_) => 5,
                _ => 2,
            },
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content).map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|source| CliError::Io { path: "stdout".into(), source })
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 3 {
        return Err(Error::NoCyclicRegime.into());
    }
    if n < 3 {
        return Err(CliError::Usage(format!("a polygon needs n >= 4, got {n}")));
    }
    Ok(())
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string().bytes().map(|b| DIGITS[(b - b'0') as usize]).collect()
}

/// `S¹`, `S³`, `∨²S²`, or `pt` for an empty wedge.
pub fn pretty_type(t: HomotopyType) -> String {
    match t {
        HomotopyType::OddSphere { dim } => format!("S{}", superscript(dim)),
        HomotopyType::Wedge { count: 0, .. } => "pt".into(),
        HomotopyType::Wedge { count: 1, dim } => format!("S{}", superscript(dim)),
        HomotopyType::Wedge { count, dim } => format!("∨{}S{}", superscript(count), superscript(dim)),
    }
}

pub fn barcode(n: usize, convention: Convention, format: BarcodeFormat, out: Option<&Path>) -> Result<u8> {
    check_n(n)?;
    let pred = PolygonPredictor::new(n)?;
    let b = pred.barcode(convention);
    let body = match format {
        BarcodeFormat::Text => barcode_to_text(&b),
        BarcodeFormat::Json => barcode_to_json(&b) + "\n",
        BarcodeFormat::Svg => svg::render(&b, pred.rn),
    };
    emit(out, &body)?;
    match b.unknown_beyond_dim {
        Some(d) => Err(CliError::NotCertifiable(format!(
            "bars in dimension {d} and above are not certified for n = {n}"
        ))),
        None => Ok(0),
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    n: usize,
    scale: f64,
    convention: Convention,
    points: usize,
    wf: String,
    length: usize,
    winding: usize,
    periodic_orbits: usize,
    homotopy_type: String,
    periodic: usize,
    fast: usize,
    slow: usize,
}

pub fn analyze(points: &Path, scale: f64, convention: Convention, format: ReportFormat) -> Result<u8> {
    let text = fs::read_to_string(points).map_err(|source| CliError::Io { path: points.display().to_string(), source })?;
    let (n, pts) = sample_from_text(&text)?;
    check_n(n)?;
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(CliError::Usage(format!("scale must be positive, got {scale}")));
    }
    let rn = r_n(n)?;
    if scale >= rn {
        let witness = match disconnected_ball(n, scale)? {
            Some((t, k)) => format!("; the ball of radius {scale} about arc coordinate {t:.6} meets P_{n} in {k} arcs"),
            None => format!("; balls about edge midpoints are tangent to the opposite side at r_{n}"),
        };
        return Err(CliError::NotCyclic(format!("scale {scale} is not below r_{n} = {rn}{witness}")));
    }
    let g = FiniteCyclicGraph::from_points(n, &pts, scale, convention)?;
    let rep = g.analyze();
    let ty = g.homotopy_type();
    let report = AnalyzeReport {
        n,
        scale,
        convention,
        points: pts.len(),
        wf: rep.wf.to_string(),
        length: rep.length,
        winding: rep.winding,
        periodic_orbits: rep.periodic_count(),
        homotopy_type: pretty_type(ty),
        periodic: rep.count(VertexClass::Periodic),
        fast: rep.count(VertexClass::Fast),
        slow: rep.count(VertexClass::Slow),
    };
    let body = match format {
        ReportFormat::Json => serde_json::to_string_pretty(&report).expect("report serialises") + "\n",
        ReportFormat::Text => format!(
            "wf={}, length={}, winding={}, P={}, type={}\nvertices: {} (periodic {}, fast {}, slow {})\n",
            report.wf,
            report.length,
            report.winding,
            report.periodic_orbits,
            report.homotopy_type,
            report.points,
            report.periodic,
            report.fast,
            report.slow
        ),
    };
    emit(None, &body)?;
    Ok(0)
}

pub fn stars(n: usize, l: usize, grid: usize, validate: bool) -> Result<u8> {
    check_n(n)?;
    if l == 0 {
        return Err(CliError::Usage("l must be at least 1".into()));
    }
    if grid < 16 {
        return Err(CliError::Usage(format!("grid must be at least 16, got {grid}")));
    }
    let th = thresholds_with_grid(n, l, grid)?;
    let how = match th.certification {
        Certification::Divisible => "closed form",
        Certification::Validated => "validated crossings",
        Certification::GridFallback => "grid extrema",
    };
    let mut out = format!("n={n}, l={l}: s={:.10}, t={:.10} ({how})\n", th.s, th.t);
    if th.at_rn {
        out.push_str("t equals r_n\n");
    }
    if let Some(w) = &th.warning {
        out.push_str(&format!("warning: {w}\n"));
    }
    let mut code = 0;
    if validate {
        let rep = validate_monotonic(n, l, grid)?;
        let k = 2 * l + 1;
        let lcm = n.lcm(&k);
        out.push_str(&format!(
            "monotonic: {}, crossings: {}/{lcm}\n",
            if rep.pass { "PASS" } else { "FAIL" },
            rep.vertex_crossings.min(rep.midpoint_crossings)
        ));
        out.push_str(&format!(
            "vertex crossings {}, midpoint crossings {}, worst violation {:e}\n",
            rep.vertex_crossings, rep.midpoint_crossings, rep.worst_violation
        ));
        for f in &rep.findings {
            out.push_str(&format!("finding: {f}\n"));
        }
        if !rep.pass {
            code = 3;
        }
    }
    emit(None, &out)?;
    Ok(code)
}

#[allow(clippy::too_many_arguments)]
pub fn sample(n: usize, l: usize, z: Option<usize>, eps: f64, scale: f64, seed: u64, out: Option<&Path>) -> Result<u8> {
    check_n(n)?;
    let spec = SampleSpec { n, l, z: z.unwrap_or_else(|| orbit_count(n, l)), eps, r: scale, seed };
    let pts = construct(&spec)?;
    let dens = sample_density(&pts, n)?;
    emit(out, &sample_to_text(n, &pts))?;
    eprintln!("{} points, density {dens:.6}, {} periodic orbits at r = {scale}", pts.len(), spec.z);
    Ok(0)
}

pub fn gh(n: usize, grid: usize) -> Result<u8> {
    check_n(n)?;
    if n < 4 {
        return Err(CliError::Usage(format!("need n >= 4, got {n}")));
    }
    let rep = polyrips_core::gh::gh_report_with_grid(n, grid)?;
    let (lo, hi) = rep.interval;
    let mut out = format!("[{lo:.3}, {hi:.3}], metric bound {:.4}\n", rep.metric.strong_radial);
    out.push_str(&format!("Hausdorff upper bound {:.7}\n", rep.hausdorff_upper));
    match rep.ph_lower {
        Some(b) => out.push_str(&format!(
            "persistence lower bound {:.7} (bottleneck {:.7})\n",
            b.value, b.bottleneck_half
        )),
        None => out.push_str(&format!("persistence lower bound: not applicable, 3 does not divide {n}\n")),
    }
    out.push_str(&format!(
        "metric bounds: weak {:.7}, radial correspondence {:.7} +/- {:.1e}\n",
        rep.metric.weak, rep.metric.strong_radial, rep.metric.resolution
    ));
    match rep.ph_dominates {
        Some(true) => out.push_str("PH bound dominates\n"),
        Some(false) => out.push_str("metric bound dominates\n"),
        None => {}
    }
    emit(None, &out)?;
    Ok(0)
}

fn simplex_budget() -> Result<usize> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{BUDGET_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_SIMPLEX_BUDGET),
    }
}

pub fn verify(n: usize, l: usize, scale: f64, density: f64, max_dim: usize) -> Result<u8> {
    check_n(n)?;
    if !(density > 0.0) || !density.is_finite() {
        return Err(CliError::Usage(format!("density must be positive, got {density}")));
    }
    if max_dim == 0 {
        return Err(CliError::Usage("max-dim must be at least 1".into()));
    }
    let budget = simplex_budget()?;
    let poly = Polygon::new(n)?;
    if scale >= poly.rn() || !(scale > 0.0) {
        return Err(CliError::NotCyclic(format!("scale {scale} is not in (0, r_{n}) = (0, {})", poly.rn())));
    }
    let k = (n as f64 * poly.side() / (2.0 * density)).ceil().max(1.0) as usize;
    let pts = certified_sample(n, l, &[scale], k)?;
    let dens = sample_density(&pts, n)?;
    let g = FiniteCyclicGraph::from_points(n, &pts, scale, Convention::Closed)?;
    let rep = g.analyze();
    let engine = g.homotopy_type();
    let continuum = homotopy_type_polygon(n, scale, Convention::Closed)?;
    let d = DistanceMatrix::from_polygon_points(n, &pts)?;
    let cx = vr_complex_with_budget(&d, scale, Convention::Closed, max_dim, budget).map_err(|e| match e {
        Error::Resource(m) => Error::Resource(format!("{m}; raise {BUDGET_VAR} or the density")),
        e => e,
    })?;
    let oracle = betti(&cx, max_dim)?;
    let predicted = engine.betti(max_dim);

    let mut out = format!(
        "sample: {} points, density {dens:.6}, {} simplices up to dimension {max_dim}\n",
        pts.len(),
        cx.total()
    );
    out.push_str(&format!(
        "engine: wf={}, P={}, type={}\ncontinuum: type={}\n",
        rep.wf,
        rep.periodic_count(),
        pretty_type(engine),
        pretty_type(continuum)
    ));
    let mut all = true;
    for (dim, (&o, &p)) in oracle.iter().zip(&predicted).enumerate() {
        let ok = o == p;
        all &= ok;
        out.push_str(&format!("b{dim}: oracle {o}, engine {p} {}\n", if ok { "MATCH" } else { "MISMATCH" }));
    }
    let same_kind = std::mem::discriminant(&engine) == std::mem::discriminant(&continuum) && engine.dim() == continuum.dim();
    all &= same_kind;
    out.push_str(&format!(
        "engine and continuum dimension: {}\n",
        if same_kind { "MATCH" } else { "MISMATCH" }
    ));
    out.push_str(if all { "MATCH\n" } else { "MISMATCH\n" });
    emit(None, &out)?;
    Ok(if all { 0 } else { 1 })
}
