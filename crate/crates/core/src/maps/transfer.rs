use serde::{Deserialize, Serialize};

use super::deck::{DeckKind, DeckMotion, QuotientModel};
use crate::curves::ClosedCurve;
use crate::error::{param_error, GeomError, Result};
use crate::geom::{Ambient, ConformalChart, POLE_GUARD};

const GRID: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StereoDirection {
    SphereToPlane,
    PlaneToSphere,
}

fn grid_points(curve: &ClosedCurve) -> impl Iterator<Item = crate::Point> + '_ {
    let p = curve.period();
    (0..GRID).map(move |i| curve.point(p * i as f64 / GRID as f64))
}

fn expect_chart(curve: &ClosedCurve, chart: ConformalChart) -> Result<()> {
    match curve.ambient() {
        Ambient::Chart(c) if *c == chart => Ok(()),
        other => Err(param_error(format!("expected a {} curve, got {}", chart.name(), other.name()))),
    }
}

/// Reinterprets stereographic coordinates between the sphere and the plane.
/// Coordinates are unchanged; only the metric is swapped.
pub fn stereographic_transfer(curve: &ClosedCurve, direction: StereoDirection) -> Result<ClosedCurve> {
    if curve.closure().is_some() {
        return Err(param_error("stereographic transfer needs a curve closed in its chart"));
    }
    let target = match direction {
        StereoDirection::PlaneToSphere => {
            expect_chart(curve, ConformalChart::Euclidean)?;
            ConformalChart::SphereStereo
        }
        StereoDirection::SphereToPlane => {
            expect_chart(curve, ConformalChart::SphereStereo)?;
            let far = grid_points(curve).map(|p| p[0].hypot(p[1])).fold(0.0, f64::max);
            if !(far < POLE_GUARD) {
                return Err(GeomError::Pole { distance: 1.0 / far });
            }
            ConformalChart::Euclidean
        }
    };
    Ok(curve.with_ambient(target.into()))
}

/// Swaps between the half-plane metric and the Euclidean metric on `y > 0`.
///
/// Horizontal translations are isometries of both, so curves closed by one
/// keep their closure (and quotient) with the kind relabeled.
pub fn halfplane_inclusion_transfer(curve: &ClosedCurve) -> Result<ClosedCurve> {
    let target = match curve.ambient() {
        Ambient::Chart(ConformalChart::HalfPlane) => ConformalChart::Euclidean,
        Ambient::Chart(ConformalChart::Euclidean) => ConformalChart::HalfPlane,
        other => return Err(param_error(format!("inclusion transfer needs a Euclidean or half-plane curve, got {}", other.name()))),
    };
    for p in grid_points(curve) {
        ConformalChart::HalfPlane.check(p)?;
    }
    let closure = match curve.closure() {
        None => None,
        Some(g) => Some(match (g.kind, target) {
            (DeckKind::Parabolic, ConformalChart::Euclidean) => DeckMotion::unchecked(DeckKind::EuclTranslation, g.l),
            (DeckKind::EuclTranslation, ConformalChart::HalfPlane) => DeckMotion::unchecked(DeckKind::Parabolic, g.l),
            _ => return Err(param_error(format!("{:?} is not an isometry of both metrics", g.kind))),
        }),
    };
    let mut out = ClosedCurve::from_path(
        curve.label(),
        target.into(),
        curve.period(),
        curve.path_fn(),
        closure,
    )?;
    if let Some(g) = closure {
        out = out.on_quotient(QuotientModel::new(g));
    }
    Ok(out)
}
