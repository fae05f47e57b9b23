//! Planar charts carrying a conformal metric `φ²(dx² + dy²)`.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::jet::{cross2, dot2, Jet};
use crate::Point;

/// Coordinates beyond this radius count as the projection pole of the
/// stereographic chart.
pub const POLE_GUARD: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConformalChart {
    /// The flat plane, `φ ≡ 1`.
    Euclidean,
    /// Upper half-plane model of the hyperbolic plane, `φ = 1/y` on `y > 0`.
    HalfPlane,
    /// Unit sphere in stereographic coordinates, `φ = 2/(1 + x² + y²)`.
    SphereStereo,
}

impl ConformalChart {
    pub fn name(&self) -> &'static str {
        match self {
            ConformalChart::Euclidean => "euclidean",
            ConformalChart::HalfPlane => "half-plane",
            ConformalChart::SphereStereo => "sphere-stereo",
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        if !(p[0].is_finite() && p[1].is_finite()) {
            return false;
        }
        match self {
            ConformalChart::Euclidean => true,
            ConformalChart::HalfPlane => p[1] > 0.0,
            ConformalChart::SphereStereo => p[0].hypot(p[1]) < POLE_GUARD,
        }
    }

    pub fn check(&self, p: Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(GeomError::Domain { domain: self.name(), x: p[0], y: p[1] })
        }
    }

    /// Curvature the metric is built to have.
    pub fn nominal_curvature(&self) -> f64 {
        match self {
            ConformalChart::Euclidean => 0.0,
            ConformalChart::HalfPlane => -1.0,
            ConformalChart::SphereStereo => 1.0,
        }
    }

    pub fn factor(&self, p: Point) -> f64 {
        match self {
            ConformalChart::Euclidean => 1.0,
            ConformalChart::HalfPlane => 1.0 / p[1],
            ConformalChart::SphereStereo => 2.0 / (1.0 + p[0] * p[0] + p[1] * p[1]),
        }
    }

    pub fn factor_jet(&self, p: &[Jet; 2]) -> Jet {
        match self {
            ConformalChart::Euclidean => Jet::constant(1.0),
            ConformalChart::HalfPlane => p[1].recip(),
            ConformalChart::SphereStereo => 2.0 / (1.0 + p[0] * p[0] + p[1] * p[1]),
        }
    }

    pub fn log_factor_jet(&self, p: &[Jet; 2]) -> Jet {
        match self {
            ConformalChart::Euclidean => Jet::constant(0.0),
            ConformalChart::HalfPlane => -p[1].ln(),
            ConformalChart::SphereStereo => {
                Jet::constant(std::f64::consts::LN_2) - (1.0 + p[0] * p[0] + p[1] * p[1]).ln()
            }
        }
    }

    /// Gradient of `ln φ`.
    pub fn log_factor_grad_jet(&self, p: &[Jet; 2]) -> [Jet; 2] {
        match self {
            ConformalChart::Euclidean => [Jet::constant(0.0); 2],
            ConformalChart::HalfPlane => [Jet::constant(0.0), -p[1].recip()],
            ConformalChart::SphereStereo => {
                let q = -2.0 / (1.0 + p[0] * p[0] + p[1] * p[1]);
                [p[0] * q, p[1] * q]
            }
        }
    }

    pub fn log_factor_grad(&self, p: Point) -> Point {
        let g = self.log_factor_grad_jet(&[Jet::constant(p[0]), Jet::constant(p[1])]);
        [g[0].value(), g[1].value()]
    }

    /// Gauss curvature `-Δ(ln φ)/φ²`, with the Laplacian taken from exact
    /// second derivatives along each axis.
    pub fn gauss_curvature(&self, p: Point) -> f64 {
        let along_x = self.log_factor_jet(&[Jet::variable(p[0]), Jet::constant(p[1])]);
        let along_y = self.log_factor_jet(&[Jet::constant(p[0]), Jet::variable(p[1])]);
        let laplacian = along_x.derivative(2) + along_y.derivative(2);
        let phi = self.factor(p);
        -laplacian / (phi * phi)
    }

    /// Jets of geodesic curvature and metric speed for a curve given by the
    /// jets of its coordinates.
    ///
    /// `κ_g = (κ_e - ∂_n ln φ)/φ` where `n` is the Euclidean unit normal
    /// obtained by rotating the tangent by +90°.
    pub fn curvature_jets(&self, pos: &[Jet; 2]) -> Result<(Jet, Jet)> {
        self.check([pos[0].value(), pos[1].value()])?;
        let d1 = [pos[0].deriv(), pos[1].deriv()];
        let d2 = [d1[0].deriv(), d1[1].deriv()];
        let speed_e = dot2(&d1, &d1).sqrt();
        let kappa_e = cross2(&d1, &d2) / speed_e.powi(3);
        let normal = [-d1[1] / speed_e, d1[0] / speed_e];
        let grad = self.log_factor_grad_jet(pos);
        let dn = dot2(&grad, &normal);
        let phi = self.factor_jet(pos);
        Ok(((kappa_e - dn) / phi, phi * speed_e))
    }
}
