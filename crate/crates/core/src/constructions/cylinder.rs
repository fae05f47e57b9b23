//! The two-vertex curve on the flat cylinder and the polar curve
//! `r(θ) = cos(θ/5)` it inverts to.

use std::f64::consts::PI;

use crate::curves::ClosedCurve;
use crate::error::{param_error, Result};
use crate::geom::ConformalChart;
use crate::jet::Jet;
use crate::maps::{DeckKind, DeckMotion, MobiusMap, QuotientModel};
use crate::Point;

pub const DEFAULT_A: f64 = 9.0 / 100.0;

/// Both curves close after `θ ↦ θ + 5π`: `cos(θ/5)` and `(cos θ, sin θ)`
/// change sign together.
pub const POLAR_PERIOD: f64 = 5.0 * PI;

const DENOMINATOR_GUARD: f64 = 1e-6;

/// `r(θ) = cos(θ/5)` in polar coordinates, `θ ∈ [0, 5π)`.
pub fn polar_cos5() -> ClosedCurve {
    ClosedCurve::new("polar-cos5", ConformalChart::Euclidean.into(), POLAR_PERIOD, |th| {
        let r = (th * 0.2).cos();
        let (s, c) = th.sin_cos();
        [r * c, r * s]
    })
    .expect("polar curve closes")
}

/// `dκ/dθ` of the polar curve in closed form:
/// `24 (8 + 6 cos(2θ/5)) sin(2θ/5) / (13 + 12 cos(2θ/5))^{5/2}`.
pub fn kappa_prime_formula(theta: f64) -> f64 {
    let (s, c) = (0.4 * theta).sin_cos();
    24.0 * (8.0 + 6.0 * c) * s / (13.0 + 12.0 * c).powf(2.5)
}

fn denominator(a: f64, t: f64) -> f64 {
    let c5 = (t / 5.0).cos();
    a * a + 2.0 * a * c5 * t.cos() + c5 * c5
}

/// Smallest value of `a² + 2a cos(t/5) cos t + cos²(t/5)` on a fine grid.
pub fn cyl2v_min_denominator(a: f64) -> f64 {
    let n = 20_000;
    (0..n).map(|i| denominator(a, POLAR_PERIOD * i as f64 / n as f64)).fold(f64::INFINITY, f64::min)
}

/// The planar lift of the two-vertex cylinder curve,
/// `γ(t) = (a + cos(t/5) cos t, cos(t/5) sin t) / (a² + 2a cos(t/5) cos t + cos²(t/5))`.
///
/// It is the inversion in the unit circle of the polar curve shifted right
/// by `a`. The quotient is a translation cylinder whose circumference clears
/// the curve's width, so the lift projects one-to-one.
pub fn two_vertex_cylinder_curve(a: f64) -> Result<ClosedCurve> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(param_error(format!("a = {a} must be positive")));
    }
    let min = cyl2v_min_denominator(a);
    if !(min > DENOMINATOR_GUARD) {
        return Err(param_error(format!("denominator of γ nearly vanishes ({min:e}) for a = {a}")));
    }
    let curve = ClosedCurve::new(&format!("cyl2v(a={a})"), ConformalChart::Euclidean.into(), POLAR_PERIOD, move |t| {
        let c5 = (t * 0.2).cos();
        let (s, c) = t.sin_cos();
        let x = c5 * c + a;
        let y = c5 * s;
        let d = (x * x + y * y).recip();
        [x * d, y * d]
    })?;
    let xs: Vec<f64> = curve.polyline(4096).iter().map(|p| p[0]).collect();
    let width = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let circumference = 2.0 * (0.75 * width).ceil().max(8.0);
    let g = DeckMotion::new(DeckKind::EuclTranslation, circumference)?;
    Ok(curve.on_quotient(QuotientModel::new(g)))
}

/// Inversion in the unit circle followed by translation left by `a`.
pub fn cyl2v_to_polar_map(a: f64) -> MobiusMap {
    MobiusMap::translation([-a, 0.0]).compose(&MobiusMap::unit_inversion())
}

/// Largest pointwise distance between the mapped cylinder curve and the
/// polar curve at equal parameters.
pub fn cyl2v_inversion_residual(a: f64, samples: usize) -> Result<f64> {
    let gamma = two_vertex_cylinder_curve(a)?;
    let polar = polar_cos5();
    let map = cyl2v_to_polar_map(a);
    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let t = POLAR_PERIOD * (i as f64 + 0.5) / samples as f64;
        let p = map.apply(gamma.point(t))?;
        let q = polar.point(t);
        worst = worst.max((p[0] - q[0]).hypot(p[1] - q[1]));
    }
    Ok(worst)
}

/// A copy of the cylinder curve placed along the geodesic `x = 0` of the
/// half-plane, scaled by `scale` and lifted to height `y0`; its images under
/// `(x, y) ↦ (e^L x, e^L y)` are the rescaled copies on the hyperbolic
/// cylinder.
pub fn cyl2v_halfplane_copy(a: f64, scale: f64, y0: f64, l: f64) -> Result<ClosedCurve> {
    let base = two_vertex_cylinder_curve(a)?;
    let pts = base.polyline(4096);
    let bottom = pts.iter().map(|p| scale * p[1] + y0).fold(f64::INFINITY, f64::min);
    if !(bottom > 0.0) {
        return Err(param_error(format!("copy reaches y = {bottom}; raise y0")));
    }
    let path = base.path_fn();
    let g = DeckMotion::new(DeckKind::HypTranslation, l)?;
    let curve = ClosedCurve::new(
        &format!("cyl2v-halfplane(a={a},y0={y0})"),
        ConformalChart::HalfPlane.into(),
        POLAR_PERIOD,
        move |t: Jet| {
            let p = path(t);
            [p[0] * scale, p[1] * scale + y0]
        },
    )?;
    Ok(curve.on_quotient(QuotientModel::new(g)))
}

/// Bounding box `[xmin, ymin, xmax, ymax]` of a sampled curve.
pub fn bounding_box(points: &[Point]) -> [f64; 4] {
    points.iter().fold([f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY], |b, p| {
        [b[0].min(p[0]), b[1].min(p[1]), b[2].max(p[0]), b[3].max(p[1])]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{count_vertices, curvature_profile, curvature_profile_with, Differentiation, DEFAULT_TOL};

    #[test]
    fn formula_values() {
        assert_eq!(kappa_prime_formula(0.0), 0.0);
        assert!(kappa_prime_formula(2.5 * PI).abs() < 1e-13);
        let expect = 192.0 / 13f64.powf(2.5);
        assert!((kappa_prime_formula(1.25 * PI) - expect).abs() < 1e-15);
        assert!((expect - 0.315).abs() < 1e-3);
    }

    #[test]
    fn formula_is_the_theta_derivative_of_curvature() {
        let c = polar_cos5();
        for i in 1..40 {
            let th = POLAR_PERIOD * i as f64 / 40.0 + 0.01;
            let s = c.curvature_sample(th).unwrap();
            let dk_dtheta = s.kappa_prime * s.speed;
            assert!((dk_dtheta.abs() - kappa_prime_formula(th).abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn polar_curve_has_two_vertices() {
        let r = count_vertices(&curvature_profile(&polar_cos5(), 4096).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(r.count(), Some(2));
        assert!(r.vertices[0].t.abs() < 1e-9);
        assert!((r.vertices[1].t - 2.5 * PI).abs() < 1e-9);
        assert!(r.nondegenerate());
    }

    #[test]
    fn cylinder_curve() {
        let g = two_vertex_cylinder_curve(DEFAULT_A).unwrap();
        for scheme in [Differentiation::Analytic, Differentiation::FivePoint] {
            let r = count_vertices(&curvature_profile_with(&g, 4096, scheme).unwrap(), DEFAULT_TOL).unwrap();
            assert_eq!(r.count(), Some(2), "{scheme:?}");
            assert!(r.nondegenerate());
        }
        assert!(cyl2v_inversion_residual(DEFAULT_A, 1000).unwrap() < 1e-10);
        assert!(two_vertex_cylinder_curve(-1.0).is_err());
    }

    #[test]
    fn halfplane_copy_keeps_two_vertices() {
        let c = cyl2v_halfplane_copy(DEFAULT_A, 0.05, 2.0, 1.0).unwrap();
        let r = count_vertices(&curvature_profile(&c, 4096).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(r.count(), Some(2));
    }
}
