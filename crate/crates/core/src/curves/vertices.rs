use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use super::curve::ClosedCurve;
use super::profile::{curvature_profile_with, CurvatureProfile, Differentiation};
use crate::error::{GeomError, Result};

/// Relative threshold for declaring κ′ identically zero.
pub const DEFAULT_TOL: f64 = 1e-7;

/// Samples below this fraction of the sup norm are treated as exact zeros
/// when looking for sign changes.
const NOISE_FLOOR: f64 = 1e-12;
const ROOT_TOL: f64 = 1e-10;
const MERGE_TOL: f64 = 1e-6;
const DEGENERACY: f64 = 1e-4;
const TANGENCY: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub t: f64,
    pub kind: VertexKind,
    pub degenerate: bool,
}

/// Refined critical points of geodesic curvature over one period.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct VertexReport {
    pub all_critical: bool,
    pub vertices: Vec<Vertex>,
    /// Zeros of κ′ without a sign change; not counted.
    pub tangencies: Vec<f64>,
}

impl VertexReport {
    /// Number of vertices, or `None` when every point is critical.
    pub fn count(&self) -> Option<usize> {
        if self.all_critical {
            None
        } else {
            Some(self.vertices.len())
        }
    }

    pub fn nondegenerate(&self) -> bool {
        self.vertices.iter().all(|v| !v.degenerate)
    }

    pub fn parameters(&self) -> Vec<f64> {
        self.vertices.iter().map(|v| v.t).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn count_value(count: Option<usize>) -> serde_json::Value {
    match count {
        Some(n) => serde_json::Value::from(n),
        None => serde_json::Value::from("inf"),
    }
}

impl Serialize for VertexReport {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(None)?;
        map.serialize_entry("all_critical", &self.all_critical)?;
        map.serialize_entry("count", &count_value(self.count()))?;
        if !self.tangencies.is_empty() {
            map.serialize_entry("tangencies", &self.tangencies)?;
        }
        map.serialize_entry("vertices", &self.vertices)?;
        map.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Inflection {
    pub t: f64,
}

/// Sign-changing zeros of geodesic curvature over one period.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct InflectionReport {
    /// κ vanishes identically (a geodesic).
    pub identically_zero: bool,
    pub inflections: Vec<Inflection>,
    pub tangencies: Vec<f64>,
}

impl InflectionReport {
    pub fn count(&self) -> Option<usize> {
        if self.identically_zero {
            None
        } else {
            Some(self.inflections.len())
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl Serialize for InflectionReport {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(None)?;
        map.serialize_entry("count", &count_value(self.count()))?;
        map.serialize_entry("identically_zero", &self.identically_zero)?;
        map.serialize_entry("inflections", &self.inflections)?;
        if !self.tangencies.is_empty() {
            map.serialize_entry("tangencies", &self.tangencies)?;
        }
        map.end()
    }
}

struct Root {
    t: f64,
    /// Sign of the signal just before the root.
    before: f64,
}

/// Sign-changing roots of a sampled periodic signal `f(t + P) = σ f(t)`,
/// refined by bisection on `eval`.
fn sign_change_roots<F>(profile: &CurvatureProfile, values: &[f64], eval: F) -> Result<(Vec<Root>, Vec<f64>)>
where
    F: Fn(f64) -> Result<f64>,
{
    let n = values.len();
    let period = profile.period();
    let h = profile.step();
    let sigma = profile.wrap_sign();
    let sup = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = NOISE_FLOOR * sup;
    let nonzero: Vec<usize> = (0..n).filter(|&i| values[i].abs() > floor).collect();
    if nonzero.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }

    let mut roots = Vec::new();
    for (k, &a) in nonzero.iter().enumerate() {
        let (vb, tb) = match nonzero.get(k + 1) {
            Some(&b) => (values[b], profile.t[b]),
            None => (sigma * values[nonzero[0]], profile.t[nonzero[0]] + period),
        };
        let va = values[a];
        if va.signum() == vb.signum() {
            continue;
        }
        let (mut lo, mut hi) = (profile.t[a], tb);
        let sa = va.signum();
        let mut iter = 0;
        while hi - lo > ROOT_TOL * period && iter < 200 {
            let mid = 0.5 * (lo + hi);
            let fm = eval(mid)?;
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if fm.signum() == sa {
                lo = mid;
            } else {
                hi = mid;
            }
            iter += 1;
        }
        let t = (0.5 * (lo + hi)).rem_euclid(period);
        roots.push(Root { t, before: sa });
    }
    roots.sort_by(|a, b| a.t.total_cmp(&b.t));

    // duplicates from brackets that straddle the seam
    let mut merged: Vec<Root> = Vec::with_capacity(roots.len());
    for r in roots {
        match merged.last() {
            Some(last) if r.t - last.t < MERGE_TOL * period => {}
            _ => merged.push(r),
        }
    }
    if merged.len() > 1 && merged[0].t + period - merged[merged.len() - 1].t < MERGE_TOL * period {
        merged.pop();
    }

    for w in 0..merged.len() {
        if merged.len() < 2 {
            break;
        }
        let next = if w + 1 < merged.len() { merged[w + 1].t } else { merged[0].t + period };
        if next - merged[w].t < 2.0 * h {
            return Err(GeomError::Resolution { t: merged[w].t, samples: n });
        }
    }

    let tangencies = tangencies(profile, values, sup, &eval)?;
    Ok((merged, tangencies))
}

/// Local minima of `|f|` that touch zero without a sign change.
fn tangencies<F>(profile: &CurvatureProfile, values: &[f64], sup: f64, eval: &F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    let n = values.len();
    let sigma = profile.wrap_sign();
    let h = profile.step();
    let at = |i: isize| -> f64 {
        let n = n as isize;
        let v = values[i.rem_euclid(n) as usize];
        if i.div_euclid(n) % 2 == 0 {
            v
        } else {
            sigma * v
        }
    };
    let mut found = Vec::new();
    for i in 0..n as isize {
        let (a, b, c) = (at(i - 1), at(i), at(i + 1));
        if !(b.abs() <= a.abs() && b.abs() < c.abs() && b.abs() < 1e-2 * sup) {
            continue;
        }
        if a.signum() != b.signum() || b.signum() != c.signum() || b == 0.0 {
            continue;
        }
        // golden-section search for the minimum of |f|
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let t0 = profile.t[i as usize];
        let (mut lo, mut hi) = (t0 - h, t0 + h);
        let mut x1 = hi - g * (hi - lo);
        let mut x2 = lo + g * (hi - lo);
        let (mut f1, mut f2) = (eval(x1)?.abs(), eval(x2)?.abs());
        for _ in 0..60 {
            if f1 < f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = eval(x1)?.abs();
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = eval(x2)?.abs();
            }
        }
        if f1.min(f2) <= TANGENCY * sup {
            found.push(0.5 * (lo + hi));
        }
    }
    Ok(found)
}

/// Natural curvature scale `2π / length`.
fn scale(profile: &CurvatureProfile) -> f64 {
    std::f64::consts::TAU / profile.length()
}

/// Vertices of the profiled curve, as sign changes of `dκ/ds`.
///
/// On curves whose closure reverses orientation, κ is only defined up to sign
/// and the count is taken on one fundamental interval using
/// `κ(t + P) = −κ(t)`.
pub fn count_vertices(profile: &CurvatureProfile, tol: f64) -> Result<VertexReport> {
    let scale = scale(profile);
    let kp_sup = profile.kappa_prime_sup();
    let floor = 1e-6 * scale;
    if kp_sup <= tol * profile.kappa_sup().max(floor) * scale {
        return Ok(VertexReport { all_critical: true, ..Default::default() });
    }
    let (roots, tangencies) = sign_change_roots(profile, &profile.kappa_prime, |t| profile.kappa_prime_at(t))?;
    let mut vertices = Vec::with_capacity(roots.len());
    for r in roots {
        let k2 = profile.kappa_second_at(r.t)?;
        vertices.push(Vertex {
            t: r.t,
            kind: if r.before > 0.0 { VertexKind::Max } else { VertexKind::Min },
            degenerate: k2.abs() < DEGENERACY * kp_sup * scale,
        });
    }
    Ok(VertexReport { all_critical: false, vertices, tangencies })
}

/// Inflections of the profiled curve, as sign changes of κ.
pub fn count_inflections(profile: &CurvatureProfile, tol: f64) -> Result<InflectionReport> {
    let scale = scale(profile);
    if profile.kappa_sup() <= tol * 1e-3 * scale {
        return Ok(InflectionReport { identically_zero: true, ..Default::default() });
    }
    let (roots, tangencies) = sign_change_roots(profile, &profile.kappa, |t| profile.kappa_at(t))?;
    Ok(InflectionReport {
        identically_zero: false,
        inflections: roots.into_iter().map(|r| Inflection { t: r.t }).collect(),
        tangencies,
    })
}

/// Profiles and counts vertices, doubling the grid (up to 16×) while the
/// sign changes are too close to resolve. Returns the grid size used.
pub fn count_vertices_adaptive(
    curve: &ClosedCurve,
    n: usize,
    tol: f64,
    scheme: Differentiation,
) -> Result<(VertexReport, usize)> {
    let mut n = n;
    let mut tries = 0;
    loop {
        let profile = curvature_profile_with(curve, n, scheme)?;
        match count_vertices(&profile, tol) {
            Err(GeomError::Resolution { .. }) if tries < 4 => {
                log::debug!("resampling {} at {} points", curve.label(), 2 * n);
                n *= 2;
                tries += 1;
            }
            other => return other.map(|r| (r, n)),
        }
    }
}
