use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::deck::{DeckMotion, QuotientModel};
use crate::curves::ClosedCurve;
use crate::error::{param_error, Result};
use crate::Point;

const MAX_TRANSLATES: i64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub t1: f64,
    pub t2: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimplicityStatus {
    Simple,
    SelfIntersecting,
    /// Two non-adjacent pieces come within the polyline sagitta.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplicityReport {
    pub status: SimplicityStatus,
    pub witnesses: Vec<Witness>,
    pub samples: usize,
}

impl SimplicityReport {
    pub fn is_simple(&self) -> bool {
        self.status == SimplicityStatus::Simple
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({ "simple": self.is_simple(), "witnesses": self.witnesses });
        if self.status == SimplicityStatus::Inconclusive {
            v["inconclusive"] = serde_json::Value::Bool(true);
        }
        v
    }
}

struct Segment {
    a: Point,
    b: Point,
    /// Translate index and position in the chain.
    k: i64,
    i: usize,
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

/// Closed-segment intersection test; returns the parameter along `p`.
fn intersect(p: &Segment, q: &Segment) -> Option<f64> {
    let (d1, d2) = (orient(q.a, q.b, p.a), orient(q.a, q.b, p.b));
    let (d3, d4) = (orient(p.a, p.b, q.a), orient(p.a, p.b, q.b));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return Some(d1 / (d1 - d2));
    }
    if d1 == 0.0 && on_segment(q.a, q.b, p.a) {
        return Some(0.0);
    }
    if d2 == 0.0 && on_segment(q.a, q.b, p.b) {
        return Some(1.0);
    }
    if (d3 == 0.0 && on_segment(p.a, p.b, q.a)) || (d4 == 0.0 && on_segment(p.a, p.b, q.b)) {
        return Some(0.5);
    }
    None
}

fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let u = if len2 > 0.0 { (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0) } else { 0.0 };
    (p[0] - a[0] - u * dx).hypot(p[1] - a[1] - u * dy)
}

fn segment_distance(p: &Segment, q: &Segment) -> f64 {
    point_segment_distance(p.a, q.a, q.b)
        .min(point_segment_distance(p.b, q.a, q.b))
        .min(point_segment_distance(q.a, p.a, p.b))
        .min(point_segment_distance(q.b, p.a, p.b))
}

fn bbox(points: &[Point]) -> [f64; 4] {
    points.iter().fold([f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY], |b, p| {
        [b[0].min(p[0]), b[1].min(p[1]), b[2].max(p[0]), b[3].max(p[1])]
    })
}

fn overlaps(a: &[f64; 4], b: &[f64; 4]) -> bool {
    a[0] <= b[2] && b[0] <= a[2] && a[1] <= b[3] && b[1] <= a[3]
}

/// Checks a closed polyline (implicitly joined last-to-first) for crossings.
pub fn polyline_is_simple(points: &[Point]) -> bool {
    let n = points.len();
    let segs: Vec<Segment> = (0..n)
        .map(|i| Segment { a: points[i], b: points[(i + 1) % n], k: 0, i })
        .collect();
    find_crossings(&segs, &segs, |s, o| s.i.abs_diff(o.i) <= 1 || s.i.abs_diff(o.i) == n - 1, 0.0)
        .0
        .is_empty()
}

/// Crossings and near misses between `probe` segments and `all` segments.
/// Pairs accepted by `adjacent` are skipped.
fn find_crossings<A>(probe: &[Segment], all: &[Segment], adjacent: A, near: f64) -> (Vec<(usize, usize, f64)>, bool)
where
    A: Fn(&Segment, &Segment) -> bool,
{
    let max_len = all
        .iter()
        .map(|s| (s.b[0] - s.a[0]).hypot(s.b[1] - s.a[1]))
        .fold(0.0, f64::max);
    let cell = (max_len + 2.0 * near).max(1e-300);
    let key = |x: f64, y: f64| ((x / cell).floor() as i64, (y / cell).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (idx, s) in all.iter().enumerate() {
        let (x0, y0) = key(s.a[0].min(s.b[0]) - near, s.a[1].min(s.b[1]) - near);
        let (x1, y1) = key(s.a[0].max(s.b[0]) + near, s.a[1].max(s.b[1]) + near);
        for gx in x0..=x1 {
            for gy in y0..=y1 {
                grid.entry((gx, gy)).or_default().push(idx);
            }
        }
    }
    let mut hits = Vec::new();
    let mut close = false;
    for (pi, p) in probe.iter().enumerate() {
        let (x0, y0) = key(p.a[0].min(p.b[0]), p.a[1].min(p.b[1]));
        let (x1, y1) = key(p.a[0].max(p.b[0]), p.a[1].max(p.b[1]));
        let mut seen: Vec<usize> = Vec::new();
        for gx in x0..=x1 {
            for gy in y0..=y1 {
                if let Some(list) = grid.get(&(gx, gy)) {
                    seen.extend(list);
                }
            }
        }
        seen.sort_unstable();
        seen.dedup();
        for qi in seen {
            let q = &all[qi];
            if adjacent(p, q) {
                continue;
            }
            if let Some(u) = intersect(p, q) {
                hits.push((pi, qi, u));
            } else if near > 0.0 && segment_distance(p, q) < near {
                close = true;
            }
        }
    }
    (hits, close)
}

/// Simplicity of a closed curve on its quotient (or in its chart when no
/// quotient is given).
///
/// One fundamental lift is polylinized with `n` segments, and tested against
/// itself and its deck translates `g^k` for every `k` whose image bounding
/// box meets the lift's, padded by one. Near misses closer than twice the
/// polyline sagitta make the result inconclusive; that triggers one 4×
/// resample before being reported.
pub fn quotient_simplicity_check(
    curve: &ClosedCurve,
    quotient: Option<&QuotientModel>,
    n: usize,
) -> Result<SimplicityReport> {
    let first = simplicity_at(curve, quotient, n)?;
    if first.status != SimplicityStatus::Inconclusive {
        return Ok(first);
    }
    simplicity_at(curve, quotient, 4 * n)
}

fn simplicity_at(curve: &ClosedCurve, quotient: Option<&QuotientModel>, n: usize) -> Result<SimplicityReport> {
    if n < 8 {
        return Err(param_error("simplicity check needs at least 8 segments"));
    }
    let period = curve.period();
    let generator = quotient.map(|q| q.generator);
    let same = |a: DeckMotion, b: DeckMotion| a.kind == b.kind && (a.l - b.l).abs() <= 1e-12 * b.l;
    // generator powers per closure period; 0 for curves closed in the chart
    let step: i64 = match (curve.closure(), generator) {
        (None, _) => 0,
        (Some(_), None) => return Err(param_error("a curve closed by a deck motion needs its quotient")),
        (Some(c), Some(g)) if same(c, g) => 1,
        (Some(c), Some(g)) if same(c, g.power(2)) => 2,
        _ => return Err(param_error("curve closure is not generated by the quotient")),
    };
    let h = period / n as f64;
    let base: Vec<Point> = (0..=n).map(|i| curve.point(h * i as f64)).collect();
    let mut sagitta: f64 = 0.0;
    for i in 1..n {
        let d = [base[i - 1][0] - 2.0 * base[i][0] + base[i + 1][0], base[i - 1][1] - 2.0 * base[i][1] + base[i + 1][1]];
        sagitta = sagitta.max(0.125 * d[0].hypot(d[1]));
    }
    let near = 2.0 * sagitta;

    // deck translates whose bounding boxes meet the base lift
    let mut ks = vec![0i64];
    if let Some(g) = generator {
        let b0 = bbox(&base);
        for dir in [1i64, -1] {
            let mut k = dir;
            let mut padded = false;
            while k.abs() <= MAX_TRANSLATES {
                let img: Vec<Point> = base.iter().map(|&p| g.power_apply(p, k)).collect();
                let hit = overlaps(&bbox(&img), &b0);
                ks.push(k);
                if !hit {
                    if padded {
                        break;
                    }
                    padded = true;
                }
                k += dir;
            }
        }
    }
    ks.sort_unstable();

    let mut all = Vec::with_capacity(ks.len() * n);
    for &k in &ks {
        for i in 0..n {
            let (a, b) = match generator {
                Some(g) => (g.power_apply(base[i], k), g.power_apply(base[i + 1], k)),
                None => (base[i], base[i + 1]),
            };
            all.push(Segment { a, b, k, i });
        }
    }
    let probe: Vec<Segment> = (0..n).map(|i| Segment { a: base[i], b: base[i + 1], k: 0, i }).collect();
    let adjacent = |p: &Segment, q: &Segment| -> bool {
        if step > 0 {
            // segment positions along the infinite lift
            if q.k % step != 0 {
                return false;
            }
            let along = (q.k / step) * n as i64 + q.i as i64;
            (along - p.i as i64).abs() <= 1
        } else {
            q.k == 0 && (p.i.abs_diff(q.i) <= 1 || p.i.abs_diff(q.i) == n - 1)
        }
    };
    let (hits, close) = find_crossings(&probe, &all, adjacent, near);

    let mut witnesses: Vec<Witness> = hits
        .iter()
        .map(|&(pi, qi, u)| {
            let t1 = h * (pi as f64 + u);
            let q = &all[qi];
            let t2 = (h * q.i as f64).rem_euclid(period);
            let (a, b) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            Witness { t1: a, t2: b }
        })
        .collect();
    witnesses.sort_by(|a, b| a.t1.total_cmp(&b.t1).then(a.t2.total_cmp(&b.t2)));
    let tol = 3.0 * h;
    let mut dedup: Vec<Witness> = Vec::new();
    for w in witnesses {
        if !dedup.iter().any(|d| (d.t1 - w.t1).abs() < tol && (d.t2 - w.t2).abs() < tol) {
            dedup.push(w);
        }
    }
    let status = if !dedup.is_empty() {
        SimplicityStatus::SelfIntersecting
    } else if close {
        SimplicityStatus::Inconclusive
    } else {
        SimplicityStatus::Simple
    };
    Ok(SimplicityReport { status, witnesses: dedup, samples: n })
}
