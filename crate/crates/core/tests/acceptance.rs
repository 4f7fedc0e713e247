//! End-to-end acceptance checks, one line of output per criterion.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polyrips_core::geometry::{geodesic_dist, PolygonPoint};
use polyrips_core::oracle::{betti, bottleneck, two_scale_rank, vr_complex, DistanceMatrix};
use polyrips_core::predictor::barcode;
use polyrips_core::sampler::{certified_sample, construct, density, SampleSpec};
use polyrips_core::stars::{
    coincidence_number, count_stars_with, crossings_with, inscribe_star, midpoint_crossings, napoleon_product_check,
    thresholds, thresholds_with_grid, validate_monotonic, vertex_crossings, Certification,
};
use polyrips_core::{g_r, gh_report, r_n, Convention, FiniteCyclicGraph, Fraction, Polygon};

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> std::result::Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:.0?}"))?;
    Ok(t)
}

fn c1_p15_barcode() -> Outcome {
    let start = Instant::now();
    let b = barcode(15, Convention::Strict).map_err(|e| e.to_string())?;
    let t = within(Duration::from_secs(1), start)?;
    let c = (PI / 15.0).cos();
    let s5 = (2.0 * PI / 5.0).sin();
    let want = [(2, 3f64.sqrt() * c, 3f64.sqrt()), (4, 2.0 * s5 * c, 2.0 * s5)];
    for (dim, s, t) in want {
        let bar = b
            .intervals
            .iter()
            .find(|i| i.dim == dim && !i.ephemeral)
            .ok_or_else(|| format!("no H{dim} bar"))?;
        ensure((bar.birth - s).abs() <= 1e-9 && (bar.death - t).abs() <= 1e-9, || {
            format!("H{dim} bar ({}, {}) vs ({s}, {t})", bar.birth, bar.death)
        })?;
    }
    let mult: Vec<usize> = (1..=5).map(|d| b.multiplicity(d)).collect();
    ensure(mult == [1, 4, 1, 2, 1], || format!("multiplicities {mult:?}"))?;
    Ok(format!("multiplicities {mult:?} in {t:.2?}"))
}

fn c2_regular_graphs() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 3..=13 {
        for k in 1..(n + 1) / 2 {
            let g = FiniteCyclicGraph::regular(n, k).map_err(|e| e.to_string())?;
            let d = DistanceMatrix::new(g.hop_matrix()).map_err(|e| e.to_string())?;
            let cx = vr_complex(&d, 1.0, Convention::Closed, 5).map_err(|e| e.to_string())?;
            let got = betti(&cx, 5).map_err(|e| e.to_string())?;
            let ty = g.homotopy_type();
            ensure(got == ty.betti(5), || format!("C({n},{k}): oracle {got:?}, predicted {ty}"))?;
            checked += 1;
        }
    }
    let b = |n, k, d| {
        let g = FiniteCyclicGraph::regular(n, k).unwrap();
        let d2 = DistanceMatrix::new(g.hop_matrix()).unwrap();
        betti(&vr_complex(&d2, 1.0, Convention::Closed, 5).unwrap(), 5).unwrap()[d]
    };
    ensure(b(12, 4, 2) == 3, || "C(12,4) b2 != 3".into())?;
    ensure(b(8, 3, 3) == 1, || "C(8,3) b3 != 1".into())?;
    let t = within(Duration::from_secs(60), start)?;
    Ok(format!("{checked} graphs agree in {t:.2?}"))
}

fn c3_nonagon_sample() -> Outcome {
    let start = Instant::now();
    let (n, r) = (9, 1.65);
    let pts = certified_sample(n, 1, &[r], 72).map_err(|e| e.to_string())?;
    ensure(pts.len() <= 150, || format!("{} points", pts.len()))?;
    let rep = FiniteCyclicGraph::from_points(n, &pts, r, Convention::Closed).map_err(|e| e.to_string())?.analyze();
    ensure(rep.wf == Fraction::new(1, 3), || format!("wf = {}", rep.wf))?;
    let d = DistanceMatrix::from_polygon_points(n, &pts).map_err(|e| e.to_string())?;
    let b = betti(&vr_complex(&d, r, Convention::Closed, 4).map_err(|e| e.to_string())?, 4).map_err(|e| e.to_string())?;
    let p = rep.periodic_count();
    ensure(p == b[2] + 1 && b[1] == 0 && b[3] == 0, || format!("P = {p}, oracle betti {b:?}"))?;
    let t = within(Duration::from_secs(120), start)?;
    Ok(format!("{} points, wf = 1/3, P = {p}, betti {b:?} in {t:.2?}", pts.len()))
}

fn c4_constructed_samples() -> Outcome {
    let mut notes = Vec::new();
    for z in [2, 3, 5] {
        let start = Instant::now();
        let spec = SampleSpec { n: 6, l: 1, z, eps: 0.1, r: 1.6, seed: 2024 };
        let pts = construct(&spec).map_err(|e| e.to_string())?;
        let dens = density(&pts, 6).map_err(|e| e.to_string())?;
        ensure(dens <= 0.1, || format!("z = {z}: density {dens}"))?;
        let rep = FiniteCyclicGraph::from_points(6, &pts, 1.6, Convention::Closed)
            .map_err(|e| e.to_string())?
            .analyze();
        ensure(rep.periodic_count() == z, || format!("z = {z}: {} orbits", rep.periodic_count()))?;
        let d = DistanceMatrix::from_polygon_points(6, &pts).map_err(|e| e.to_string())?;
        let b = betti(&vr_complex(&d, 1.6, Convention::Closed, 3).map_err(|e| e.to_string())?, 3)
            .map_err(|e| e.to_string())?;
        ensure(b[2] == z - 1, || format!("z = {z}: oracle betti {b:?}"))?;
        let t = within(Duration::from_secs(120), start)?;
        notes.push(format!("z={z}: {} pts {t:.2?}", pts.len()));
    }
    Ok(notes.join(", "))
}

fn c5_inclusion_rank() -> Outcome {
    let start = Instant::now();
    let pts = certified_sample(6, 1, &[1.55, 1.70], 60).map_err(|e| e.to_string())?;
    let d = DistanceMatrix::from_polygon_points(6, &pts).map_err(|e| e.to_string())?;
    let rank = two_scale_rank(&d, 1.55, 1.70, Convention::Closed, 2, 3).map_err(|e| e.to_string())?;
    ensure(rank == 1, || format!("rank {rank}"))?;
    let t = within(Duration::from_secs(120), start)?;
    Ok(format!("{} points, rank 1 in {t:.2?}", pts.len()))
}

fn c6_gh_bounds() -> Outcome {
    let start = Instant::now();
    let rep = gh_report(6).map_err(|e| e.to_string())?;
    let (lo, hi) = rep.interval;
    ensure((lo - 0.116).abs() <= 1e-3 && (hi - 0.134).abs() <= 1e-3, || format!("interval [{lo}, {hi}]"))?;
    let sr = rep.metric.strong_radial;
    ensure((sr - 0.0986).abs() <= 1e-3, || format!("strong radial {sr}"))?;
    let s = thresholds(6, 1).map_err(|e| e.to_string())?.s;
    let half = 0.5 * bottleneck(&[(0.0, s)], &[(0.0, 3f64.sqrt())]);
    let ph = rep.ph_lower.ok_or("no persistence bound")?.value;
    ensure((ph - half).abs() <= 1e-12, || format!("ph {ph} vs half bottleneck {half}"))?;
    let t = within(Duration::from_secs(5), start)?;
    Ok(format!("[{lo:.4}, {hi:.4}], strong radial {sr:.4} in {t:.2?}"))
}

fn c7_counting_laws() -> Outcome {
    let start = Instant::now();
    for (n, l) in [(6, 1), (8, 1), (9, 1), (11, 2), (15, 1), (15, 2)] {
        let k = 2 * l + 1;
        let lcm = n.lcm(&k);
        let g = n.gcd(&k);
        let (vc, mc) = (vertex_crossings(n, l).unwrap(), midpoint_crossings(n, l).unwrap());
        ensure(vc.len() == lcm && mc.len() == lcm, || {
            format!("({n},{l}): {} vertex and {} midpoint crossings, want {lcm}", vc.len(), mc.len())
        })?;
        let th = thresholds(n, l).map_err(|e| e.to_string())?;
        let mut bases: Vec<f64> = (0..200).map(|i| i as f64 / 200.0 + 1e-4).collect();
        bases.extend(&vc);
        bases.extend(&mc);
        for r in [th.s, 0.5 * (th.s + th.t), th.t] {
            bases.extend(crossings_with(&th, r).map_err(|e| e.to_string())?.points);
        }
        for p in bases {
            let star = inscribe_star(n, l, p).map_err(|e| e.to_string())?;
            let c = coincidence_number(&star);
            ensure(c == 0 || c == g, || format!("({n},{l}) basepoint {p}: coincidence {c}"))?;
        }
        for r in [th.s, 0.5 * (th.s + th.t), th.t] {
            let count = count_stars_with(&th, r).map_err(|e| e.to_string())?;
            let pts = crossings_with(&th, r).map_err(|e| e.to_string())?.points.len();
            ensure(count * k == pts, || format!("({n},{l}) r = {r}: {count} stars, {pts} crossing basepoints"))?;
        }
    }
    let t = within(Duration::from_secs(60), start)?;
    Ok(format!("6 cases in {t:.2?}"))
}

fn c8_monotonic() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    for l in 1..=3 {
        for n in (4 * l + 2)..=30 {
            let rep = validate_monotonic(n, l, 10_000).map_err(|e| e.to_string())?;
            checked += 1;
            if !rep.pass {
                let th = thresholds_with_grid(n, l, 10_000).map_err(|e| e.to_string())?;
                ensure(th.certification == Certification::GridFallback, || {
                    format!("({n},{l}) failed validation without falling back")
                })?;
                failures.push(format!("({n},{l}): {}", rep.findings.join("; ")));
            }
        }
    }
    ensure(failures.is_empty(), || format!("findings: {}", failures.join(" | ")))?;
    let t = within(Duration::from_secs(600), start)?;
    Ok(format!("{checked} (n, l) pairs pass in {t:.2?}"))
}

fn c9_numeric_lemmas() -> Outcome {
    let start = Instant::now();
    for n in 4..=10_000u32 {
        let x = n as f64;
        ensure((x - 1.0) / (x + 1.0) < (PI / x).cos(), || format!("first inequality fails at {n}"))?;
        if n >= 6 {
            let gap = (PI / x).cos() - (2.0 * PI / x).sin();
            ensure(if n == 6 { gap.abs() < 1e-15 } else { gap > 0.0 }, || format!("second inequality at {n}: {gap}"))?;
        }
    }
    for n in [4, 5, 6, 7, 9, 12] {
        let poly = Polygon::new(n).unwrap();
        let rn = poly.rn();
        for j in 1..=1000 {
            let r = rn * j as f64 / 1001.0;
            let at_vertex = poly.ccw_advance(0.0, r);
            for i in 0..1000 {
                let p = i as f64 / 1000.0;
                let adv = poly.ccw_advance(p, r);
                ensure(at_vertex <= adv + 1e-12, || format!("n = {n}: step at p = {p}, r = {r} is below the vertex step"))?;
            }
        }
    }
    for n in [4, 5, 6, 9, 15] {
        let rn = r_n(n).unwrap();
        for i in 0..200 {
            let t = i as f64 / 200.0 + 1e-3;
            for j in 1..50 {
                let r = rn * j as f64 / 50.0;
                let base = g_r(PolygonPoint::new(n, t).unwrap(), r).unwrap().point;
                for (dt, dr) in [(1e-6, 0.0), (-1e-6, 0.0), (0.0, 1e-6), (0.0, -1e-6)] {
                    let moved = g_r(PolygonPoint::new(n, (t + dt).rem_euclid(1.0)).unwrap(), (r + dr).min(rn)).unwrap().point;
                    let ccw = geodesic_dist(base, moved).unwrap();
                    let shift = ccw.min(1.0 - ccw);
                    ensure(shift <= 1e-3, || format!("n = {n}: g_r jumps by {shift} at t = {t}, r = {r}"))?;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut done = 0;
    let mut worst: f64 = 0.0;
    while done < 100 {
        let n = rng.gen_range(6..=30);
        let p: f64 = rng.gen();
        if let Ok((lhs, rhs)) = napoleon_product_check(n, p) {
            worst = worst.max((lhs - rhs).abs());
            done += 1;
        }
    }
    ensure(worst <= 1e-8, || format!("Napoleon identity off by {worst:e}"))?;
    let t = within(Duration::from_secs(60), start)?;
    Ok(format!("inequalities, minimality, continuity, identity (worst {worst:.1e}) in {t:.2?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("barcode of P_15", c1_p15_barcode),
        ("regular cyclic graphs", c2_regular_graphs),
        ("nonagon sample at r = 1.65", c3_nonagon_sample),
        ("constructed hexagon samples", c4_constructed_samples),
        ("inclusion rank on a hexagon sample", c5_inclusion_rank),
        ("Gromov-Hausdorff bounds", c6_gh_bounds),
        ("counting laws", c7_counting_laws),
        ("monotonic side length", c8_monotonic),
        ("numeric lemmas", c9_numeric_lemmas),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
