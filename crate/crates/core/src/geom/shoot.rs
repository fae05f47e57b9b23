//! Geodesic shooting with an embedded Dormand–Prince 5(4) pair.

use rayon::prelude::*;

use super::Ambient;
use crate::curves::{ClosedCurve, TrigInterpolant};
use crate::error::{param_error, GeomError, Result};
use crate::jet::Jet;
use crate::Point;

type State = [f64; 4];

#[derive(Clone, Copy, Debug)]
pub struct ShootOptions {
    /// Local error tolerance per unit length (absolute and relative).
    pub tol: f64,
    pub max_steps: usize,
    /// Metric circles shrink the tolerance by this factor; their curvature
    /// is sensitive to tiny endpoint errors.
    pub circle_tol: f64,
}

impl Default for ShootOptions {
    fn default() -> Self {
        ShootOptions { tol: 1e-9, max_steps: 200_000, circle_tol: 1e-13 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Shot {
    pub point: Point,
    pub velocity: Point,
    pub steps: usize,
}

fn rhs(ambient: &Ambient, y: &State) -> State {
    let (p, v) = ([y[0], y[1]], [y[2], y[3]]);
    match ambient {
        Ambient::Chart(c) => {
            // Christoffel symbols of e^{2ψ}δ: a = -2v(∇ψ·v) + |v|²∇ψ
            let g = c.log_factor_grad(p);
            let gv = g[0] * v[0] + g[1] * v[1];
            let vv = v[0] * v[0] + v[1] * v[1];
            [v[0], v[1], -2.0 * v[0] * gv + vv * g[0], -2.0 * v[1] * gv + vv * g[1]]
        }
        Ambient::Surface(s) => {
            let t = Jet::variable(p[0]);
            let rp = s.radius_rate_jet(t);
            let hp = s.height_rate_jet(t);
            let e = rp * rp + hp * hp;
            let r = s.radius_jet(t);
            let g = r * r;
            let (e0, e1) = (e.value(), e.derivative(1));
            let (g0, g1) = (g.value(), g.derivative(1));
            let (dt, dth) = (v[0], v[1]);
            [
                dt,
                dth,
                -e1 / (2.0 * e0) * dt * dt + g1 / (2.0 * e0) * dth * dth,
                -g1 / g0 * dt * dth,
            ]
        }
    }
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One Dormand–Prince step. Returns the fifth-order solution and the
/// embedded error estimate, or `None` if a stage left the domain.
fn dp_step(ambient: &Ambient, y: &State, h: f64) -> Option<(State, State)> {
    debug_assert_eq!(C[0], 0.0);
    let mut k = [[0.0; 4]; 7];
    for i in 0..7 {
        let mut yi = *y;
        for j in 0..i {
            for m in 0..4 {
                yi[m] += h * A[i][j] * k[j][m];
            }
        }
        if !ambient.contains([yi[0], yi[1]]) {
            return None;
        }
        k[i] = rhs(ambient, &yi);
    }
    let mut y5 = *y;
    let mut err = [0.0; 4];
    for i in 0..7 {
        for m in 0..4 {
            y5[m] += h * B5[i] * k[i][m];
            err[m] += h * (B5[i] - B4[i]) * k[i][m];
        }
    }
    if !ambient.contains([y5[0], y5[1]]) || y5.iter().any(|v| !v.is_finite()) {
        return None;
    }
    Some((y5, err))
}

fn check_unit(ambient: &Ambient, p: Point, v: Point) -> Result<()> {
    ambient.check(p)?;
    let norm = ambient.metric_norm(p, v);
    if (norm - 1.0).abs() > 1e-8 {
        return Err(param_error(format!("initial tangent has metric length {norm}, not 1")));
    }
    Ok(())
}

/// Follows the unit-speed geodesic from `p` with initial velocity `v` for
/// arclength `s`, with adaptive step control.
pub fn geodesic_shoot(ambient: &Ambient, p: Point, v: Point, s: f64, opts: &ShootOptions) -> Result<Shot> {
    shoot_adaptive(ambient, p, v, s, opts.tol, opts.max_steps)
}

fn shoot_adaptive(ambient: &Ambient, p: Point, v: Point, s: f64, tol: f64, max_steps: usize) -> Result<Shot> {
    check_unit(ambient, p, v)?;
    if !(s >= 0.0) {
        return Err(param_error(format!("arclength {s} must be non-negative")));
    }
    let mut y = [p[0], p[1], v[0], v[1]];
    let mut done = 0.0;
    let mut h = (s / 8.0).clamp(f64::MIN_POSITIVE, 0.1);
    let h_min = 1e-14 * s.max(1.0);
    let mut steps = 0;
    while done < s {
        if steps >= max_steps {
            return Err(GeomError::Integration(format!("step budget exhausted at s = {done}")));
        }
        let step = h.min(s - done);
        match dp_step(ambient, &y, step) {
            None => {
                if step <= h_min {
                    return Err(GeomError::Escape { at: done });
                }
                h = step * 0.5;
            }
            Some((yn, err)) => {
                let mut norm: f64 = 0.0;
                for m in 0..4 {
                    let sc = tol * (1.0 + y[m].abs().max(yn[m].abs()));
                    norm = norm.max(err[m].abs() / sc);
                }
                if norm <= 1.0 {
                    y = yn;
                    done += step;
                    steps += 1;
                }
                let factor = if norm == 0.0 { 5.0 } else { (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0) };
                if norm > 1.0 && step <= h_min {
                    return Err(GeomError::Escape { at: done });
                }
                h = step * factor;
            }
        }
    }
    Ok(Shot { point: [y[0], y[1]], velocity: [y[2], y[3]], steps })
}

/// Geodesic shot with `steps` uniform fifth-order steps. The result is a
/// smooth function of the initial data, which matters when many shots are
/// interpolated together.
pub fn shoot_fixed(ambient: &Ambient, p: Point, v: Point, s: f64, steps: usize) -> Result<Shot> {
    check_unit(ambient, p, v)?;
    let h = s / steps.max(1) as f64;
    let mut y = [p[0], p[1], v[0], v[1]];
    for i in 0..steps {
        match dp_step(ambient, &y, h) {
            Some((yn, _)) => y = yn,
            None => return Err(GeomError::Escape { at: h * i as f64 }),
        }
    }
    Ok(Shot { point: [y[0], y[1]], velocity: [y[2], y[3]], steps })
}

/// The metric circle of `radius` about `center`, built from `n` geodesic
/// shots in equispaced directions and interpolated by a trigonometric
/// polynomial in the direction angle (period 2π).
pub fn metric_circle(
    ambient: &Ambient,
    center: Point,
    radius: f64,
    n: usize,
    opts: &ShootOptions,
) -> Result<ClosedCurve> {
    if n < 64 {
        return Err(param_error(format!("metric circle needs at least 64 directions, got {n}")));
    }
    if !(radius > 0.0) {
        return Err(param_error(format!("radius {radius} must be positive")));
    }
    let guard = 0.25 * ambient.focal_distance_estimate();
    if radius > guard {
        return Err(param_error(format!("radius {radius} exceeds the injectivity guard {guard}")));
    }
    ambient.check(center)?;
    let angles: Vec<f64> = (0..n).map(|j| std::f64::consts::TAU * j as f64 / n as f64).collect();
    let pilot: Vec<Shot> = angles
        .par_iter()
        .map(|&a| {
            let v = ambient.unit_vector(center, a);
            shoot_adaptive(ambient, center, v, radius, opts.circle_tol, opts.max_steps)
        })
        .collect::<Result<_>>()?;
    let steps = 2 * pilot.iter().map(|s| s.steps).max().unwrap_or(1).max(8);
    let offsets: Vec<Point> = angles
        .par_iter()
        .map(|&a| {
            let v = ambient.unit_vector(center, a);
            shoot_fixed(ambient, center, v, radius, steps)
                .map(|s| [s.point[0] - center[0], s.point[1] - center[1]])
        })
        .collect::<Result<_>>()?;
    let xs: Vec<f64> = offsets.iter().map(|p| p[0]).collect();
    let ys: Vec<f64> = offsets.iter().map(|p| p[1]).collect();
    let period = std::f64::consts::TAU;
    let fx = TrigInterpolant::from_samples(&xs, period).truncated(1e-14);
    let fy = TrigInterpolant::from_samples(&ys, period).truncated(1e-14);
    ClosedCurve::new(
        &format!("metric-circle(r={radius})"),
        ambient.clone(),
        period,
        move |t| [fx.eval_jet(t) + center[0], fy.eval_jet(t) + center[1]],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{ConformalChart, RevolutionSurface};

    #[test]
    fn straight_line_in_euclidean_chart() {
        let a = Ambient::Chart(ConformalChart::Euclidean);
        let shot = geodesic_shoot(&a, [0.0, 0.0], [1.0, 0.0], 2.0, &ShootOptions::default()).unwrap();
        assert!((shot.point[0] - 2.0).abs() < 1e-12 && shot.point[1].abs() < 1e-12);
    }

    #[test]
    fn vertical_geodesic_in_half_plane() {
        let a = Ambient::Chart(ConformalChart::HalfPlane);
        for l in [0.5, 1.0, 3.0] {
            let shot = geodesic_shoot(&a, [0.0, 1.0], [0.0, 1.0], l, &ShootOptions::default()).unwrap();
            let expected = f64::exp(l);
            assert!(shot.point[0].abs() < 1e-12);
            assert!(((shot.point[1] - expected) / expected).abs() < 1e-8 * l, "{l}: {:?}", shot.point);
        }
    }

    #[test]
    fn great_circle_through_stereographic_pole() {
        // x = tan(s/2) along the great circle through the origin.
        let a = Ambient::Chart(ConformalChart::SphereStereo);
        let v = [0.5, 0.0];
        let s = std::f64::consts::PI - 0.01;
        let shot = geodesic_shoot(&a, [0.0, 0.0], v, s, &ShootOptions::default()).unwrap();
        let expected = (s / 2.0).tan();
        assert!(((shot.point[0] - expected) / expected).abs() < 1e-7, "{:?} {expected}", shot.point);
        match geodesic_shoot(&a, [0.0, 0.0], v, std::f64::consts::PI, &ShootOptions::default()) {
            Err(GeomError::Escape { at }) => assert!((at - std::f64::consts::PI).abs() < 1e-4, "{at}"),
            other => panic!("expected escape, got {other:?}"),
        }
    }

    #[test]
    fn speed_is_preserved() {
        let surface = RevolutionSurface::normalized("paraboloid", |t| t.sqrt(), (0.1, 3.0)).unwrap();
        let ambients = [
            Ambient::Chart(ConformalChart::HalfPlane),
            Ambient::Chart(ConformalChart::SphereStereo),
            Ambient::Surface(surface),
        ];
        for a in &ambients {
            let p = [0.8, 0.7];
            let v = a.unit_vector(p, 0.7);
            let shot = geodesic_shoot(a, p, v, 0.5, &ShootOptions::default()).unwrap();
            let drift = (a.metric_norm(shot.point, shot.velocity) - 1.0).abs();
            assert!(drift < 1e-8 * 0.5, "{}: {drift}", a.name());
        }
    }

    #[test]
    fn non_unit_tangent_rejected() {
        let a = Ambient::Chart(ConformalChart::Euclidean);
        assert!(geodesic_shoot(&a, [0.0, 0.0], [2.0, 0.0], 1.0, &ShootOptions::default()).is_err());
    }

    #[test]
    fn euclidean_metric_circle_is_round() {
        let a = Ambient::Chart(ConformalChart::Euclidean);
        let c = metric_circle(&a, [0.0, 0.0], 1.0, 64, &ShootOptions::default()).unwrap();
        for i in 0..50 {
            let p = c.point(0.13 * i as f64);
            assert!((p[0].hypot(p[1]) - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn hyperbolic_metric_circle_closed_form() {
        let a = Ambient::Chart(ConformalChart::HalfPlane);
        for rho in [0.1, 0.5, 1.0] {
            let c = metric_circle(&a, [0.0, 1.0], rho, 128, &ShootOptions::default()).unwrap();
            let (cy, re) = (f64::cosh(rho), f64::sinh(rho));
            for i in 0..50 {
                let p = c.point(0.13 * i as f64);
                assert!((p[0].hypot(p[1] - cy) - re).abs() < 1e-6, "ρ={rho}");
            }
        }
    }

    #[test]
    fn injectivity_guard() {
        let a = Ambient::Chart(ConformalChart::SphereStereo);
        assert!(metric_circle(&a, [0.0, 0.0], 1.0, 64, &ShootOptions::default()).is_err());
        assert!(metric_circle(&a, [0.0, 0.0], 0.5, 32, &ShootOptions::default()).is_err());
    }
}
