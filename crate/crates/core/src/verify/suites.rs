use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Check, SuiteConfig};
use crate::constructions::{self as cons, build_family, Family, FamilyParams};
use crate::curves::{
    count_inflections, count_vertices_adaptive, curvature_profile, random_antipodal_sphere_curve,
    random_simple_closed_curve, ClosedCurve, Differentiation, InflectionReport, VertexReport,
};
use crate::error::{GeomError, Result};
use crate::geom::{
    metric_circle, neck_curvature_closed_form, revolution_geodesic_curvature, Ambient, ConformalChart,
    RevolutionSurface, ShootOptions,
};
use crate::jet::Jet;
use crate::maps::{
    halfplane_inclusion_transfer, mobius_apply, quotient_simplicity_check, stereographic_transfer, MobiusKind,
    MobiusMap, StereoDirection,
};

/// Metric circles are nearly round: their κ′ is `O(|dK| r)` against
/// `κ ≈ 1/r`, far below the default relative tolerance.
pub const JACKSON_TOL: f64 = 1e-10;
const JACKSON_RADII: [f64; 3] = [0.01, 0.03, 0.05];
const JACKSON_DIRECTIONS: usize = 128;
const KNESER_CASES: usize = 200;
const INFLECTION_CASES: usize = 50;
const SET_TOL: f64 = 1e-6;

fn check(name: impl Into<String>, f: impl FnOnce() -> Result<(bool, Option<usize>, String)>) -> Check {
    let name = name.into();
    match f() {
        Ok((passed, count, detail)) => Check { name, passed, count, detail },
        Err(e) => Check { name, passed: false, count: None, detail: format!("error: {e}") },
    }
}

fn vertices(curve: &ClosedCurve, cfg: &SuiteConfig) -> Result<VertexReport> {
    vertices_with(curve, cfg, cfg.tol)
}

fn vertices_with(curve: &ClosedCurve, cfg: &SuiteConfig, tol: f64) -> Result<VertexReport> {
    count_vertices_adaptive(curve, cfg.samples, tol, Differentiation::Analytic).map(|(r, _)| r)
}

fn inflections(curve: &ClosedCurve, cfg: &SuiteConfig) -> Result<InflectionReport> {
    let mut n = cfg.samples;
    for _ in 0..4 {
        match count_inflections(&curvature_profile(curve, n)?, cfg.tol) {
            Err(GeomError::Resolution { .. }) => n *= 2,
            other => return other,
        }
    }
    count_inflections(&curvature_profile(curve, n)?, cfg.tol)
}

fn count_str(r: &VertexReport) -> String {
    r.count().map_or("all critical".to_string(), |n| n.to_string())
}

/// Largest cyclic distance between matched parameters of two sorted sets,
/// or `None` when their sizes differ.
pub fn max_parameter_gap(a: &[f64], b: &[f64], period: f64) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let gap = a
        .iter()
        .map(|&x| {
            b.iter()
                .map(|&y| {
                    let d = (x - y).rem_euclid(period);
                    d.min(period - d)
                })
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    Some(gap)
}

/// Compares vertex sets of a curve and its image under a chart swap or map.
fn transfer_gap(base: &VertexReport, other: &VertexReport, period: f64) -> Option<f64> {
    if base.all_critical || other.all_critical {
        return (base.all_critical == other.all_critical).then_some(0.0);
    }
    max_parameter_gap(&base.parameters(), &other.parameters(), period)
}

fn shifted_up(curve: &ClosedCurve, min_y: f64) -> Result<ClosedCurve> {
    let lowest = curve.polyline(4096).iter().map(|p| p[1]).fold(f64::INFINITY, f64::min);
    let shift = min_y - lowest;
    let path = curve.path_fn();
    ClosedCurve::new(curve.label(), curve.ambient().clone(), curve.period(), move |t: Jet| {
        let p = path(t);
        [p[0], p[1] + shift]
    })
}

struct KneserCase {
    count: usize,
    sphere_gap: Option<f64>,
    plane_gap: Option<f64>,
}

fn kneser_case(seed: u64, cfg: &SuiteConfig) -> Result<KneserCase> {
    let curve = random_simple_closed_curve(seed, 6, 0.5)?;
    let base = vertices(&curve, cfg)?;
    let sphere = vertices(&stereographic_transfer(&curve, StereoDirection::PlaneToSphere)?, cfg)?;
    let lifted = shifted_up(&curve, 1.0)?;
    let lifted_base = vertices(&lifted, cfg)?;
    let hyp = vertices(&halfplane_inclusion_transfer(&lifted)?, cfg)?;
    Ok(KneserCase {
        count: base.count().unwrap_or(0),
        sphere_gap: transfer_gap(&base, &sphere, curve.period()),
        plane_gap: transfer_gap(&lifted_base, &hyp, curve.period()),
    })
}

fn gap_check(name: &str, gaps: &[Option<f64>], count: usize) -> Check {
    let mismatched = gaps.iter().filter(|g| g.is_none()).count();
    let worst = gaps.iter().flatten().cloned().fold(0.0, f64::max);
    Check {
        name: name.to_string(),
        passed: mismatched == 0 && worst < SET_TOL,
        count: Some(count),
        detail: format!("{} cases, {mismatched} count mismatches, max parameter gap {worst:.2e}", gaps.len()),
    }
}

pub(super) fn kneser(cfg: &SuiteConfig) -> Vec<Check> {
    let cases = cfg.cases.unwrap_or(KNESER_CASES);
    let results: Vec<(u64, Result<KneserCase>)> = (0..cases as u64)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.seed.wrapping_add(i);
            (seed, kneser_case(seed, cfg))
        })
        .collect();
    if let Some((seed, Err(e))) = results.iter().find(|(_, r)| r.is_err()) {
        return vec![Check {
            name: "random curves".into(),
            passed: false,
            count: None,
            detail: format!("seed {seed}: {e}"),
        }];
    }
    let ok: Vec<(u64, KneserCase)> = results.into_iter().map(|(s, r)| (s, r.unwrap())).collect();
    let total: usize = ok.iter().map(|(_, c)| c.count).sum();
    let fewest = ok.iter().min_by_key(|(_, c)| c.count);
    let mut checks = vec![Check {
        name: "at least four vertices".into(),
        passed: ok.iter().all(|(_, c)| c.count >= 4),
        count: Some(total),
        detail: match fewest {
            Some((s, c)) => format!("{cases} curves, fewest {} (seed {s})", c.count),
            None => "no cases".into(),
        },
    }];
    let sphere: Vec<_> = ok.iter().map(|(_, c)| c.sphere_gap).collect();
    let plane: Vec<_> = ok.iter().map(|(_, c)| c.plane_gap).collect();
    checks.push(gap_check("sphere transfer keeps vertex sets", &sphere, total));
    checks.push(gap_check("half-plane transfer keeps vertex sets", &plane, total));
    checks
}

fn ellipse(chart: ConformalChart, a: f64, b: f64, center: [f64; 2]) -> Result<ClosedCurve> {
    ClosedCurve::new("ellipse", chart.into(), TAU, move |t: Jet| {
        let (s, c) = t.sin_cos();
        [c * a + center[0], s * b + center[1]]
    })
}

fn same_vertices(name: &str, a: &ClosedCurve, b: &ClosedCurve, expect: Option<usize>, cfg: &SuiteConfig) -> Check {
    check(name, || {
        let (ra, rb) = (vertices(a, cfg)?, vertices(b, cfg)?);
        let gap = transfer_gap(&ra, &rb, a.period());
        let passed = ra.count() == expect && rb.count() == expect && gap.is_some_and(|g| g < SET_TOL);
        Ok((
            passed,
            rb.count(),
            format!("{} vs {}, gap {}", count_str(&ra), count_str(&rb), gap.map_or("n/a".into(), |g| format!("{g:.2e}"))),
        ))
    })
}

fn random_mobius(rng: &mut ChaCha8Rng, curve: &ClosedCurve) -> MobiusMap {
    let pts = curve.polyline(512);
    loop {
        let mut z = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let (a, b, c, d) = (z() + 1.0, z(), z() * 0.3, z() + 1.0);
        let Ok(m) = MobiusMap::new(a, b, c, d, false, MobiusKind::Planar) else { continue };
        if (a * d - b * c).norm() > 0.2 && pts.iter().all(|&p| m.pole_distance(p) > 0.5) {
            return m;
        }
    }
}

pub(super) fn maps(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let plane = |c: Result<ClosedCurve>| c.and_then(|c| Ok((stereographic_transfer(&c, StereoDirection::PlaneToSphere)?, c)));
    match plane(ellipse(ConformalChart::Euclidean, 2.0, 1.0, [0.0, 0.0])) {
        Ok((s, e)) => out.push(same_vertices("ellipse plane vs sphere", &e, &s, Some(4), cfg)),
        Err(e) => out.push(check("ellipse plane vs sphere", || Err(e))),
    }
    match plane(ellipse(ConformalChart::Euclidean, 1.0, 1.0, [0.0, 0.0])) {
        Ok((s, e)) => out.push(same_vertices("unit circle plane vs sphere", &e, &s, None, cfg)),
        Err(e) => out.push(check("unit circle plane vs sphere", || Err(e))),
    }
    match plane(Ok(cons::polar_cos5())) {
        Ok((s, e)) => out.push(same_vertices("polar curve plane vs sphere", &e, &s, Some(2), cfg)),
        Err(e) => out.push(check("polar curve plane vs sphere", || Err(e))),
    }
    out.push(check("horocycle half-plane vs Euclidean", || {
        let h = cons::horocycle_perturbation(1.0, 1.0, 0.0)?;
        let e = halfplane_inclusion_transfer(&h)?;
        let (rh, re) = (vertices(&h, cfg)?, vertices(&e, cfg)?);
        Ok((rh.all_critical && re.all_critical, None, format!("{} vs {}", count_str(&rh), count_str(&re))))
    }));
    match cons::two_vertex_cylinder_curve(cons::DEFAULT_A).and_then(|c| shifted_up(&c, 1.0)) {
        Ok(e) => match halfplane_inclusion_transfer(&e) {
            Ok(h) => out.push(same_vertices("cylinder curve Euclidean vs half-plane", &e, &h, Some(2), cfg)),
            Err(err) => out.push(check("cylinder curve Euclidean vs half-plane", || Err(err))),
        },
        Err(err) => out.push(check("cylinder curve Euclidean vs half-plane", || Err(err))),
    }
    out.push(check("inversion of the cylinder curve", || {
        let r = cons::cyl2v_inversion_residual(cons::DEFAULT_A, 1000)?;
        Ok((r < 1e-10, None, format!("residual {r:.2e}")))
    }));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    match ellipse(ConformalChart::Euclidean, 2.0, 1.0, [0.0, 0.0]) {
        Ok(e) => {
            for i in 0..5 {
                let m = random_mobius(&mut rng, &e);
                match mobius_apply(&m, &e) {
                    Ok(img) => out.push(same_vertices(&format!("ellipse under Möbius map {i}"), &e, &img, Some(4), cfg)),
                    Err(err) => out.push(check(format!("ellipse under Möbius map {i}"), || Err(err))),
                }
            }
        }
        Err(err) => out.push(check("ellipse", || Err(err))),
    }
    out
}

fn neck_profiles() -> Result<Vec<(&'static str, RevolutionSurface)>> {
    Ok(vec![
        ("r = 1", RevolutionSurface::cylinder(1.0, (-1.0, 1.0))?),
        ("r = cos t", RevolutionSurface::normalized("cos", |t: Jet| t.cos(), (-1.0, 1.0))?),
        ("r = cosh t", RevolutionSurface::normalized("cosh", |t: Jet| t.cosh(), (-1.0, 1.0))?),
    ])
}

pub(super) fn neck_limit(_cfg: &SuiteConfig) -> Vec<Check> {
    let profiles = match neck_profiles() {
        Ok(p) => p,
        Err(e) => return vec![check("profiles", || Err(e))],
    };
    let mut out = Vec::new();
    for (name, s) in &profiles {
        out.push(check(format!("closed form vs ⟨T′,ν⟩ on {name}"), || {
            let mut worst: f64 = 0.0;
            for lambda in [1e-3, 1e-2, 1e-1] {
                let (mut err, mut sup) = (0.0f64, 0.0f64);
                for i in 0..256 {
                    let th = TAU * i as f64 / 256.0;
                    let closed = neck_curvature_closed_form(s, lambda, th)?;
                    let general = revolution_geodesic_curvature(s, |t| t.cos() * lambda, th)?;
                    sup = sup.max(closed.abs());
                    err = err.max((closed - general).abs());
                }
                worst = worst.max(if sup > 0.0 { err / sup } else { err });
            }
            Ok((worst < 1e-9, None, format!("max relative difference {worst:.2e}")))
        }));
    }
    for (name, s) in profiles.iter().filter(|(n, _)| *n != "r = cos t") {
        out.push(check(format!("Taylor limit on {name}"), || {
            let c = cons::neck_limit_constant(s)?;
            let d = cons::neck_taylor_defect(s, 1e-3, 256)?;
            let coarse = cons::neck_taylor_defect(s, 1e-1, 256)? / 1e-1;
            let fine = cons::neck_taylor_defect(s, 1e-2, 256)? / 1e-2;
            let slope = d / 1e-3;
            let linear = slope <= 2.0 * coarse.max(fine) + 1e-9 && fine <= 2.0 * coarse + 1e-9;
            Ok((
                d < 1e-2 * c.abs() && linear,
                None,
                format!("C = {c}, defect at λ=1e-3 {d:.2e}, defect/λ {coarse:.3} {fine:.3} {slope:.3}"),
            ))
        }));
    }
    out
}

pub(super) fn dichotomy(cfg: &SuiteConfig) -> Vec<Check> {
    let l = TAU;
    let mut out = Vec::new();
    for (name, k, sphere) in [("sphere", (TAU / l).powi(2), true), ("cylinder", 0.0, false), ("K = -1", -1.0, false)] {
        out.push(check(format!("{name} neck"), || {
            let s = cons::constant_curvature_profile(k, l)?;
            let mut counts = Vec::new();
            for lambda in [0.05, 0.1, 0.2] {
                counts.push(vertices(&cons::neck_perturbation(&s, lambda)?, cfg)?.count());
            }
            let passed = counts.iter().all(|c| match c {
                Some(n) if sphere => *n >= 4,
                Some(n) => *n == 2,
                None => false,
            });
            let shown: Vec<String> = counts.iter().map(|c| c.map_or("∞".into(), |n| n.to_string())).collect();
            Ok((passed, Some(counts.iter().flatten().sum()), format!("counts at λ = 0.05, 0.1, 0.2: {}", shown.join(", "))))
        }));
    }
    out
}

/// Arclength profile `r(s) = 1 + s²/2`, with `K = −1/(1 + s²/2)` and
/// `dK/ds ≈ 0.40` at `s = 0.5`.
pub fn jackson_surface() -> Result<RevolutionSurface> {
    RevolutionSurface::arclength("1+s²/2", |s: Jet| s * s * 0.5 + 1.0, (-0.9, 0.9))
}

pub(super) fn jackson(cfg: &SuiteConfig) -> Vec<Check> {
    let center = [0.5, 0.0];
    let surface = match jackson_surface() {
        Ok(s) => s,
        Err(e) => return vec![check("surface", || Err(e))],
    };
    let mut out = vec![check("curvature gradient at the center", || {
        let dk = surface.gauss_curvature_slope(center[0])?;
        Ok((dk.abs() > 0.1, None, format!("dK/ds = {dk:.4}")))
    })];
    let ambient = Ambient::Surface(surface);
    let tol = cfg.tol.min(JACKSON_TOL);
    for r in JACKSON_RADII {
        out.push(check(format!("metric circle r = {r}"), || {
            let c = metric_circle(&ambient, center, r, JACKSON_DIRECTIONS, &ShootOptions::default())?;
            let rep = vertices_with(&c, cfg, tol)?;
            Ok((rep.count() == Some(2), rep.count(), format!("{} vertices", count_str(&rep))))
        }));
    }
    out
}

fn family(f: Family, l: f64, lambda: f64) -> FamilyParams {
    let _ = f;
    FamilyParams { l: Some(l), lambda: Some(lambda), ..Default::default() }
}

pub(super) fn families(cfg: &SuiteConfig) -> Vec<Check> {
    let grid: Vec<(f64, f64)> =
        [0.5, 1.0, 3.0].iter().flat_map(|&l| [1e-3, 1e-2, 1e-1].map(|lam| (l, lam))).collect();
    let mut out = Vec::new();
    for f in [Family::FlatTranslation, Family::Horocycle, Family::HypTranslation, Family::FlatGlide, Family::HypGlide] {
        let glide = matches!(f, Family::FlatGlide | Family::HypGlide);
        out.push(check(format!("{f} counts"), || {
            let mut counts = Vec::new();
            let mut worst: f64 = 0.0;
            let mut ok = true;
            for &(l, lambda) in &grid {
                let built = build_family(f, &family(f, l, lambda))?;
                worst = worst.max(built.invariance_residual.unwrap_or(0.0));
                let n = vertices(&built.curve, cfg)?.count();
                ok &= n == Some(if glide { 1 } else { 2 });
                if glide {
                    let d = vertices(&built.curve.double_cover()?, cfg)?.count();
                    ok &= d == Some(2);
                    counts.push(format!("{}/{}", n.unwrap_or(0), d.unwrap_or(0)));
                } else {
                    counts.push(n.unwrap_or(0).to_string());
                }
            }
            ok &= worst < 1e-10;
            let total = counts.iter().flat_map(|c| c.split('/')).filter_map(|c| c.parse::<usize>().ok()).sum();
            Ok((ok, Some(total), format!("counts [{}], max invariance residual {worst:.1e}", counts.join(" "))))
        }));
        out.push(check(format!("{f} at λ = 0"), || {
            let built = build_family(f, &family(f, 1.0, 0.0))?;
            let rep = vertices(&built.curve, cfg)?;
            Ok((rep.all_critical, None, count_str(&rep)))
        }));
    }
    for (f, lambda) in [(Family::PairFlat, 0.05), (Family::PairHyp, 0.01)] {
        out.push(check(format!("{f} quotient curve"), || {
            let p = FamilyParams { l: Some(1.0), lambda: Some(lambda), eps: Some(0.5), ..Default::default() };
            let built = build_family(f, &p)?;
            let rep = vertices(&built.curve, cfg)?;
            let res = built.invariance_residual.unwrap_or(0.0);
            Ok((rep.count() == Some(2) && res < 1e-10, rep.count(), format!("{} vertices, residual {res:.1e}", count_str(&rep))))
        }));
    }
    for lambda in [0.05, 10.0] {
        out.push(check(format!("flat-translation λ = {lambda} is simple"), || {
            let c = cons::flat_translation_perturbation(1.0, lambda)?;
            let q = c.quotient().cloned().ok_or_else(|| crate::error::param_error("no quotient"))?;
            let r = quotient_simplicity_check(&c, Some(&q), 2048)?;
            Ok((r.is_simple(), None, format!("{:?}", r.status)))
        }));
    }
    out.push(check("cylinder curve", || {
        let c = cons::two_vertex_cylinder_curve(cons::DEFAULT_A)?;
        let rep = vertices(&c, cfg)?;
        let polar = vertices(&cons::polar_cos5(), cfg)?;
        let passed = rep.count() == Some(2) && rep.nondegenerate() && polar.count() == Some(2) && polar.nondegenerate();
        let at = polar.parameters().iter().map(|t| format!("{:.6}π", t / PI)).collect::<Vec<_>>().join(", ");
        Ok((passed, rep.count(), format!("{} vertices; polar form at θ = {at}", count_str(&rep))))
    }));
    out
}

pub(super) fn moebius_inflections(cfg: &SuiteConfig) -> Vec<Check> {
    let cases = cfg.cases.unwrap_or(INFLECTION_CASES);
    let results: Vec<(u64, Result<usize>)> = (0..cases as u64)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.seed.wrapping_add(i);
            let n = random_antipodal_sphere_curve(seed, 3, 0.5)
                .and_then(|c| inflections(&c, cfg))
                .map(|r| r.count().unwrap_or(0));
            (seed, n)
        })
        .collect();
    vec![check("at least six inflections", || {
        let mut counts = Vec::new();
        for (seed, r) in results {
            match r {
                Ok(n) => counts.push((seed, n)),
                Err(e) => return Err(GeomError::Parameter(format!("seed {seed}: {e}"))),
            }
        }
        let fewest = counts.iter().min_by_key(|c| c.1).cloned();
        let odd = counts.iter().filter(|c| c.1 % 4 != 2).count();
        let passed = counts.iter().all(|c| c.1 >= 6);
        Ok((
            passed,
            Some(counts.iter().map(|c| c.1).sum()),
            match fewest {
                Some((s, n)) => format!("{cases} curves, fewest {n} (seed {s}), {odd} counts not of the form 2m with m odd"),
                None => "no cases".into(),
            },
        ))
    })]
}
