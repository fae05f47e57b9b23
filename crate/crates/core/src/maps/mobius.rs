use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curves::ClosedCurve;
use crate::error::{param_error, GeomError, Result};
use crate::geom::{Ambient, ConformalChart};
use crate::jet::Jet;
use crate::Point;

const DET_TOL: f64 = 1e-12;
const POLE_TOL: f64 = 1e-9;
const GRID: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MobiusKind {
    Planar,
    HalfPlane,
}

/// `z ↦ (a w + b) / (c w + d)` with `w = z`, or `w = z̄` when `conjugate`
/// is set (orientation-reversing maps such as circle inversion).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub conjugate: bool,
    pub kind: MobiusKind,
}

/// Complex number with jet components.
#[derive(Clone, Copy)]
struct CJet {
    re: Jet,
    im: Jet,
}

impl CJet {
    fn mul_c(self, z: Complex64) -> CJet {
        CJet { re: self.re * z.re - self.im * z.im, im: self.re * z.im + self.im * z.re }
    }

    fn add_c(self, z: Complex64) -> CJet {
        CJet { re: self.re + z.re, im: self.im + z.im }
    }

    fn div(self, o: CJet) -> CJet {
        let den = (o.re * o.re + o.im * o.im).recip();
        CJet {
            re: (self.re * o.re + self.im * o.im) * den,
            im: (self.im * o.re - self.re * o.im) * den,
        }
    }
}

impl MobiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64, conjugate: bool, kind: MobiusKind) -> Result<Self> {
        let det = a * d - b * c;
        if !(det.norm() > DET_TOL) {
            return Err(param_error(format!("Möbius determinant {det} vanishes")));
        }
        if kind == MobiusKind::HalfPlane {
            let real = [a, b, c, d].iter().all(|z| z.im == 0.0);
            if !real || conjugate || det.re <= 0.0 {
                return Err(param_error("half-plane Möbius maps need real coefficients with ad − bc > 0"));
            }
        }
        Ok(MobiusMap { a, b, c, d, conjugate, kind })
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        MobiusMap { a: o, b: z, c: z, d: o, conjugate: false, kind: MobiusKind::Planar }
    }

    /// Inversion in the unit circle, `z ↦ 1/z̄`.
    pub fn unit_inversion() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        MobiusMap { a: z, b: o, c: o, d: z, conjugate: true, kind: MobiusKind::Planar }
    }

    pub fn translation(by: Point) -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        MobiusMap { a: o, b: Complex64::new(by[0], by[1]), c: z, d: o, conjugate: false, kind: MobiusKind::Planar }
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &MobiusMap) -> MobiusMap {
        let g = if self.conjugate {
            [inner.a.conj(), inner.b.conj(), inner.c.conj(), inner.d.conj()]
        } else {
            [inner.a, inner.b, inner.c, inner.d]
        };
        let kind = if self.kind == MobiusKind::HalfPlane && inner.kind == MobiusKind::HalfPlane {
            MobiusKind::HalfPlane
        } else {
            MobiusKind::Planar
        };
        MobiusMap {
            a: self.a * g[0] + self.b * g[2],
            b: self.a * g[1] + self.b * g[3],
            c: self.c * g[0] + self.d * g[2],
            d: self.c * g[1] + self.d * g[3],
            conjugate: self.conjugate != inner.conjugate,
            kind,
        }
    }

    fn input(&self, p: Point) -> Complex64 {
        let z = Complex64::new(p[0], p[1]);
        if self.conjugate {
            z.conj()
        } else {
            z
        }
    }

    /// Distance from `p` to the point sent to infinity (infinite when the map
    /// is affine).
    pub fn pole_distance(&self, p: Point) -> f64 {
        if self.c.norm() == 0.0 {
            return f64::INFINITY;
        }
        (self.input(p) + self.d / self.c).norm()
    }

    pub fn apply(&self, p: Point) -> Result<Point> {
        let dist = self.pole_distance(p);
        if !(dist > POLE_TOL) {
            return Err(GeomError::Pole { distance: dist });
        }
        let w = self.input(p);
        let z = (self.a * w + self.b) / (self.c * w + self.d);
        Ok([z.re, z.im])
    }

    pub fn apply_jets(&self, p: [Jet; 2]) -> [Jet; 2] {
        let w = CJet { re: p[0], im: if self.conjugate { -p[1] } else { p[1] } };
        let num = w.mul_c(self.a).add_c(self.b);
        let den = w.mul_c(self.c).add_c(self.d);
        let z = num.div(den);
        [z.re, z.im]
    }
}

/// The image of a chart-closed curve under a Möbius map, with exact
/// derivatives composed through the jets.
///
/// Planar maps keep the curve's ambient chart; half-plane maps require and
/// keep the half-plane.
pub fn mobius_apply(map: &MobiusMap, curve: &ClosedCurve) -> Result<ClosedCurve> {
    if curve.closure().is_some() {
        return Err(param_error("Möbius images are only defined for curves closed in their chart"));
    }
    if map.kind == MobiusKind::HalfPlane && curve.ambient().chart() != Some(ConformalChart::HalfPlane) {
        return Err(param_error("half-plane Möbius maps act on half-plane curves"));
    }
    let chart = match curve.ambient() {
        Ambient::Chart(c) => *c,
        Ambient::Surface(_) => return Err(param_error("Möbius maps act on chart curves")),
    };
    let period = curve.period();
    let mut nearest = f64::INFINITY;
    for i in 0..GRID {
        let p = curve.point(period * i as f64 / GRID as f64);
        nearest = nearest.min(map.pole_distance(p));
    }
    if !(nearest > POLE_TOL) {
        return Err(GeomError::Pole { distance: nearest });
    }
    let path = curve.path_fn();
    let m = *map;
    let image = ClosedCurve::from_path(
        &format!("mobius({})", curve.label()),
        chart.into(),
        period,
        Arc::new(move |t| m.apply_jets(path(t))),
        None,
    )?;
    for i in 0..GRID {
        image.ambient().check(image.point(period * i as f64 / GRID as f64))?;
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{count_vertices, curvature_profile, DEFAULT_TOL};
    use std::f64::consts::TAU;

    fn ellipse() -> ClosedCurve {
        ClosedCurve::new("ellipse", ConformalChart::Euclidean.into(), TAU, |t| {
            let (s, c) = t.sin_cos();
            [c * 2.0, s]
        })
        .unwrap()
    }

    #[test]
    fn identity_leaves_curve_unchanged() {
        let e = ellipse();
        let i = mobius_apply(&MobiusMap::identity(), &e).unwrap();
        for k in 0..50 {
            let t = 0.13 * k as f64;
            assert_eq!(e.point(t), i.point(t));
        }
    }

    #[test]
    fn inversion_is_an_involution() {
        let inv = MobiusMap::unit_inversion();
        let twice = inv.compose(&inv);
        let p = [0.3, -1.2];
        let q = twice.apply(p).unwrap();
        assert!((q[0] - p[0]).abs() < 1e-14 && (q[1] - p[1]).abs() < 1e-14);
        let one = inv.apply(p).unwrap();
        let r2 = p[0] * p[0] + p[1] * p[1];
        assert!((one[0] - p[0] / r2).abs() < 1e-15 && (one[1] - p[1] / r2).abs() < 1e-15);
    }

    #[test]
    fn composition_matches_sequential_application() {
        let f = MobiusMap::new(
            Complex64::new(1.0, 0.5),
            Complex64::new(0.2, 0.0),
            Complex64::new(0.1, -0.3),
            Complex64::new(1.0, 0.0),
            false,
            MobiusKind::Planar,
        )
        .unwrap();
        let g = MobiusMap::unit_inversion().compose(&MobiusMap::translation([0.5, 0.1]));
        let fg = f.compose(&g);
        let p = [0.7, 0.4];
        let a = fg.apply(p).unwrap();
        let b = f.apply(g.apply(p).unwrap()).unwrap();
        assert!((a[0] - b[0]).abs() < 1e-13 && (a[1] - b[1]).abs() < 1e-13);
    }

    #[test]
    fn ellipse_keeps_four_vertices() {
        let f = MobiusMap::new(
            Complex64::new(1.0, 0.2),
            Complex64::new(0.3, -0.1),
            Complex64::new(0.05, 0.08),
            Complex64::new(1.0, 0.0),
            false,
            MobiusKind::Planar,
        )
        .unwrap();
        let img = mobius_apply(&f, &ellipse()).unwrap();
        let r = count_vertices(&curvature_profile(&img, 2048).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(r.count(), Some(4));
    }

    #[test]
    fn pole_on_curve_is_rejected() {
        let inv = MobiusMap::unit_inversion().compose(&MobiusMap::translation([-2.0, 0.0]));
        assert!(matches!(mobius_apply(&inv, &ellipse()), Err(GeomError::Pole { .. })));
        let sing = MobiusMap::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(1.0, 0.0),
            false,
            MobiusKind::Planar,
        );
        assert!(sing.is_err());
    }
}
