//! Metric structures: conformal charts, surfaces of revolution, geodesic
//! curvature, Gauss curvature and geodesic shooting.

mod chart;
mod revolution;
mod shoot;

pub use chart::{ConformalChart, POLE_GUARD};
pub use revolution::{
    gauss_curvature_revolution, neck_curvature_closed_form, revolution_geodesic_curvature,
    RevolutionSurface, ScalarFn,
};
pub use shoot::{geodesic_shoot, metric_circle, shoot_fixed, Shot, ShootOptions};

use crate::curves::ClosedCurve;
use crate::error::Result;
use crate::jet::Jet;
use crate::Point;

/// The Riemannian surface a curve lives in.
///
/// Chart curves use planar coordinates `(x, y)`; surface curves use the
/// parameters `(t, θ)` of the revolution parametrization.
#[derive(Clone, Debug)]
pub enum Ambient {
    Chart(ConformalChart),
    Surface(RevolutionSurface),
}

impl From<ConformalChart> for Ambient {
    fn from(c: ConformalChart) -> Self {
        Ambient::Chart(c)
    }
}

impl From<RevolutionSurface> for Ambient {
    fn from(s: RevolutionSurface) -> Self {
        Ambient::Surface(s)
    }
}

impl Ambient {
    pub fn name(&self) -> String {
        match self {
            Ambient::Chart(c) => c.name().to_string(),
            Ambient::Surface(s) => format!("revolution:{}", s.label()),
        }
    }

    pub fn chart(&self) -> Option<ConformalChart> {
        match self {
            Ambient::Chart(c) => Some(*c),
            Ambient::Surface(_) => None,
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        match self {
            Ambient::Chart(c) => c.contains(p),
            Ambient::Surface(s) => s.contains(p[0]) && p[1].is_finite(),
        }
    }

    pub fn check(&self, p: Point) -> Result<()> {
        match self {
            Ambient::Chart(c) => c.check(p),
            Ambient::Surface(s) => s.check(p[0], p[1]),
        }
    }

    /// Jets of geodesic curvature and metric speed along a curve.
    pub fn curvature_jets(&self, pos: &[Jet; 2]) -> Result<(Jet, Jet)> {
        match self {
            Ambient::Chart(c) => c.curvature_jets(pos),
            Ambient::Surface(s) => s.curvature_jets(pos),
        }
    }

    pub fn gauss_curvature(&self, p: Point) -> Result<f64> {
        match self {
            Ambient::Chart(c) => {
                c.check(p)?;
                Ok(c.gauss_curvature(p))
            }
            Ambient::Surface(s) => s.gauss_curvature(p[0]),
        }
    }

    /// Diagonal metric coefficients `(g11, g22)` at `p`.
    pub fn metric_diag(&self, p: Point) -> (f64, f64) {
        match self {
            Ambient::Chart(c) => {
                let f = c.factor(p);
                (f * f, f * f)
            }
            Ambient::Surface(s) => s.metric(p[0]),
        }
    }

    pub fn metric_norm(&self, p: Point, v: Point) -> f64 {
        let (g1, g2) = self.metric_diag(p);
        (g1 * v[0] * v[0] + g2 * v[1] * v[1]).sqrt()
    }

    /// Coordinate components of the unit vector at angle `alpha` in the
    /// orthonormal frame aligned with the coordinate axes.
    pub fn unit_vector(&self, p: Point, alpha: f64) -> Point {
        let (g1, g2) = self.metric_diag(p);
        [alpha.cos() / g1.sqrt(), alpha.sin() / g2.sqrt()]
    }

    /// Conservative lower estimate of the distance to the first focal point,
    /// `π/√K_max`, or infinity when curvature is nowhere positive.
    pub fn focal_distance_estimate(&self) -> f64 {
        let k_max = match self {
            Ambient::Chart(c) => c.nominal_curvature(),
            Ambient::Surface(s) => {
                let (lo, hi) = s.interval();
                (0..=200)
                    .filter_map(|i| s.gauss_curvature(lo + (hi - lo) * i as f64 / 200.0).ok())
                    .fold(f64::NEG_INFINITY, f64::max)
            }
        };
        if k_max > 0.0 {
            std::f64::consts::PI / k_max.sqrt()
        } else {
            f64::INFINITY
        }
    }
}

/// Geodesic curvature of a chart curve at parameter `t`.
pub fn conformal_geodesic_curvature(chart: ConformalChart, curve: &ClosedCurve, t: f64) -> Result<f64> {
    let pos = curve.jets(Jet::variable(t));
    crate::curves::check_speed(&pos, t)?;
    let (k, _) = chart.curvature_jets(&pos)?;
    Ok(k.value())
}
