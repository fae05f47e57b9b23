use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{param_error, GeomError, Result};
use crate::geom::Ambient;
use crate::jet::Jet;
use crate::maps::{DeckMotion, QuotientModel};
use crate::Point;

pub type PathFn = Arc<dyn Fn(Jet) -> [Jet; 2] + Send + Sync>;

/// Speeds below this count as a singular parametrization.
pub const MIN_SPEED: f64 = 1e-8;

const CLOSURE_PROBES: usize = 16;
const CLOSURE_TOL: f64 = 1e-10;

/// Nodes and weights of 5-point Gauss–Legendre quadrature on [0, 1].
const GL5: [(f64, f64); 5] = [
    (0.046_910_077_030_668_0, 0.118_463_442_528_094_5),
    (0.230_765_344_947_158_5, 0.239_314_335_249_683_2),
    (0.5, 0.284_444_444_444_444_4),
    (0.769_234_655_052_841_5, 0.239_314_335_249_683_2),
    (0.953_089_922_969_332, 0.118_463_442_528_094_5),
];

/// A regular parametrized curve with `γ(t + P) = g(γ(t))`, where `g` is the
/// closure motion (identity for curves closed in their chart).
#[derive(Clone)]
pub struct ClosedCurve {
    label: String,
    path: PathFn,
    period: f64,
    ambient: Ambient,
    closure: Option<DeckMotion>,
    quotient: Option<QuotientModel>,
}

impl fmt::Debug for ClosedCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosedCurve")
            .field("label", &self.label)
            .field("period", &self.period)
            .field("ambient", &self.ambient.name())
            .field("closure", &self.closure)
            .finish()
    }
}

/// Geodesic curvature and its derivatives at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureSample {
    pub t: f64,
    pub position: Point,
    pub kappa: f64,
    /// `dκ/ds`
    pub kappa_prime: f64,
    /// `d²κ/ds²`
    pub kappa_second: f64,
    /// `ds/dt` in the ambient metric.
    pub speed: f64,
}

pub(crate) fn check_speed(pos: &[Jet; 2], t: f64) -> Result<()> {
    let speed = pos[0].coeff(1).hypot(pos[1].coeff(1));
    if !(speed > MIN_SPEED) {
        return Err(GeomError::Regularity { t, speed });
    }
    Ok(())
}

impl ClosedCurve {
    /// Builds a curve closed in its chart and checks `γ(t + P) = γ(t)`.
    pub fn new<F>(label: &str, ambient: Ambient, period: f64, path: F) -> Result<Self>
    where
        F: Fn(Jet) -> [Jet; 2] + Send + Sync + 'static,
    {
        Self::from_path(label, ambient, period, Arc::new(path), None)
    }

    /// Builds a curve whose lift satisfies `γ(t + P) = closure(γ(t))`.
    pub fn with_closure<F>(
        label: &str,
        ambient: Ambient,
        period: f64,
        closure: DeckMotion,
        path: F,
    ) -> Result<Self>
    where
        F: Fn(Jet) -> [Jet; 2] + Send + Sync + 'static,
    {
        Self::from_path(label, ambient, period, Arc::new(path), Some(closure))
    }

    pub(crate) fn from_path(
        label: &str,
        ambient: Ambient,
        period: f64,
        path: PathFn,
        closure: Option<DeckMotion>,
    ) -> Result<Self> {
        if !(period > 0.0) || !period.is_finite() {
            return Err(param_error(format!("period {period} must be positive")));
        }
        let curve = ClosedCurve { label: label.to_string(), path, period, ambient, closure, quotient: None };
        let residual = curve.closure_residual();
        if !(residual <= CLOSURE_TOL) {
            return Err(param_error(format!("curve '{label}' does not close: residual {residual:e}")));
        }
        Ok(curve)
    }

    pub fn on_quotient(mut self, quotient: QuotientModel) -> Self {
        self.quotient = Some(quotient);
        self
    }

    /// The same lift traversed over two periods, closed by `g²`. For glide
    /// closures this is the orientation double cover.
    pub fn double_cover(&self) -> Result<ClosedCurve> {
        let closure = self.closure.map(|g| g.power(2));
        let mut c = Self::from_path(&format!("{}x2", self.label), self.ambient.clone(), 2.0 * self.period, self.path.clone(), closure)?;
        c.quotient = closure.map(QuotientModel::new);
        Ok(c)
    }

    pub fn relabeled(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    /// Same coordinates, different ambient metric.
    pub(crate) fn with_ambient(&self, ambient: Ambient) -> Self {
        let mut c = self.clone();
        c.ambient = ambient;
        c
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn closure(&self) -> Option<DeckMotion> {
        self.closure
    }

    pub fn quotient(&self) -> Option<&QuotientModel> {
        self.quotient.as_ref()
    }

    pub(crate) fn path_fn(&self) -> PathFn {
        self.path.clone()
    }

    /// `κ(t + P) = wrap_sign · κ(t)`; negative when the closure motion
    /// reverses orientation.
    pub fn wrap_sign(&self) -> f64 {
        match self.closure {
            Some(g) if g.reverses_orientation() => -1.0,
            _ => 1.0,
        }
    }

    pub fn jets(&self, t: Jet) -> [Jet; 2] {
        (self.path)(t)
    }

    pub fn point(&self, t: f64) -> Point {
        let p = (self.path)(Jet::constant(t));
        [p[0].value(), p[1].value()]
    }

    /// Coordinate velocity `γ'(t)`.
    pub fn velocity(&self, t: f64) -> Point {
        let p = (self.path)(Jet::variable(t));
        [p[0].coeff(1), p[1].coeff(1)]
    }

    /// Largest distance between `γ(t + P)` and `g(γ(t))` over the probes.
    /// Angular coordinates of surface curves are compared modulo 2π.
    pub fn closure_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..CLOSURE_PROBES {
            let t = self.period * (i as f64 + 0.37) / CLOSURE_PROBES as f64;
            let p = self.point(t);
            let q = self.point(t + self.period);
            let image = match self.closure {
                Some(g) => g.apply(p),
                None => p,
            };
            let (dx, mut dy) = (q[0] - image[0], q[1] - image[1]);
            if matches!(self.ambient, Ambient::Surface(_)) {
                dy -= std::f64::consts::TAU * (dy / std::f64::consts::TAU).round();
            }
            let scale = 1.0 + image[0].hypot(image[1]);
            let r = dx.hypot(dy) / scale;
            worst = if r.is_nan() { f64::INFINITY } else { worst.max(r) };
        }
        worst
    }

    /// Jets of geodesic curvature and metric speed at `t`.
    pub fn curvature_jets(&self, t: f64) -> Result<(Jet, Jet)> {
        let pos = (self.path)(Jet::variable(t));
        check_speed(&pos, t)?;
        self.ambient.curvature_jets(&pos)
    }

    pub fn curvature_sample(&self, t: f64) -> Result<CurvatureSample> {
        let pos = (self.path)(Jet::variable(t));
        check_speed(&pos, t)?;
        let (k, v) = self.ambient.curvature_jets(&pos)?;
        let (v0, v1) = (v.derivative(0), v.derivative(1));
        let (k1, k2) = (k.derivative(1), k.derivative(2));
        Ok(CurvatureSample {
            t,
            position: [pos[0].value(), pos[1].value()],
            kappa: k.value(),
            kappa_prime: k1 / v0,
            kappa_second: (k2 * v0 - k1 * v1) / (v0 * v0 * v0),
            speed: v0,
        })
    }

    pub fn speed(&self, t: f64) -> Result<f64> {
        Ok(self.curvature_jets(t)?.1.value())
    }

    /// Arclength over `[a, b]` by composite Gauss–Legendre quadrature.
    pub fn arclength_between(&self, a: f64, b: f64, pieces: usize) -> Result<f64> {
        let h = (b - a) / pieces as f64;
        let mut total = 0.0;
        for i in 0..pieces {
            let t0 = a + h * i as f64;
            for (x, w) in GL5 {
                total += w * h * self.speed(t0 + x * h)?;
            }
        }
        Ok(total)
    }

    pub fn length(&self) -> Result<f64> {
        self.arclength_between(0.0, self.period, 256)
    }

    /// Vertices of the polyline through `n` equispaced parameter samples of
    /// one period.
    pub fn polyline(&self, n: usize) -> Vec<Point> {
        (0..n).map(|i| self.point(self.period * i as f64 / n as f64)).collect()
    }

    /// The same curve parametrized by arclength in the ambient metric.
    ///
    /// Parameter values are found by Newton iteration against a tabulated
    /// arclength function; derivative jets come from series reversion of
    /// the arclength jet, so the result keeps exact derivatives.
    pub fn arclength_reparametrized(&self, table_size: usize) -> Result<ClosedCurve> {
        let n = table_size.max(16);
        let h = self.period / n as f64;
        let mut cumulative = Vec::with_capacity(n + 1);
        cumulative.push(0.0);
        for i in 0..n {
            let seg = self.arclength_between(h * i as f64, h * (i + 1) as f64, 1)?;
            cumulative.push(cumulative[i] + seg);
        }
        let total = cumulative[n];
        let original = self.clone();
        let table = Arc::new(cumulative);
        let period = self.period;
        let ambient = self.ambient.clone();
        let path = move |s: Jet| -> [Jet; 2] {
            let s0 = s.value();
            let laps = (s0 / total).floor();
            let target = s0 - laps * total;
            let idx = match table.binary_search_by(|v| v.partial_cmp(&target).unwrap()) {
                Ok(i) => i.min(n - 1),
                Err(i) => i.saturating_sub(1).min(n - 1),
            };
            let node = h * idx as f64;
            let mut t = node + h * (target - table[idx]) / (table[idx + 1] - table[idx]);
            for _ in 0..30 {
                let arc = table[idx] + original.arclength_between(node, t, 1).unwrap_or(f64::NAN);
                let speed = original.speed(t).unwrap_or(f64::NAN);
                let step = (arc - target) / speed;
                t -= step;
                if !(step.abs() > 1e-15 * period) {
                    break;
                }
            }
            let t_abs = t + laps * period;
            let speed_jet = match original.curvature_jets(t_abs) {
                Ok((_, v)) => v,
                Err(_) => return [Jet::constant(f64::NAN); 2],
            };
            let inverse = speed_jet.integral().reversion();
            let param = s.compose(&inverse) + t_abs;
            original.jets(param)
        };
        let mut curve = ClosedCurve::from_path(
            &format!("{}@arclength", self.label),
            ambient,
            total,
            Arc::new(path),
            self.closure,
        )?;
        curve.quotient = self.quotient.clone();
        Ok(curve)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ConformalChart;

    fn ellipse() -> ClosedCurve {
        ClosedCurve::new("ellipse", ConformalChart::Euclidean.into(), std::f64::consts::TAU, |t| {
            let (s, c) = t.sin_cos();
            [c * 2.0, s]
        })
        .unwrap()
    }

    #[test]
    fn rejects_open_curves() {
        let r = ClosedCurve::new("open", ConformalChart::Euclidean.into(), 1.0, |t| [t, t * t]);
        assert!(matches!(r, Err(GeomError::Parameter(_))));
    }

    #[test]
    fn ellipse_curvature_at_axis_points() {
        let e = ellipse();
        // κ = ab / (a² sin² + b² cos²)^{3/2}
        let at0 = e.curvature_sample(0.0).unwrap();
        assert!((at0.kappa - 2.0).abs() < 1e-13);
        assert!(at0.kappa_prime.abs() < 1e-13);
        let at1 = e.curvature_sample(std::f64::consts::FRAC_PI_2).unwrap();
        assert!((at1.kappa - 0.25).abs() < 1e-13);
    }

    #[test]
    fn kappa_prime_matches_finite_differences() {
        let e = ellipse();
        let t = 0.7;
        let h = 1e-4;
        let k = |t: f64| e.curvature_sample(t).unwrap().kappa;
        let s = e.curvature_sample(t).unwrap();
        let fd = (k(t + h) - k(t - h)) / (2.0 * h) / s.speed;
        assert!((s.kappa_prime - fd).abs() < 1e-7);
    }

    #[test]
    fn arclength_reparametrization_has_unit_speed() {
        let e = ellipse();
        let r = e.arclength_reparametrized(256).unwrap();
        assert!((r.period() - e.length().unwrap()).abs() < 1e-10);
        for i in 0..25 {
            let s = r.period() * i as f64 / 25.0 + 0.01;
            assert!((r.speed(s).unwrap() - 1.0).abs() < 1e-9);
            // curvature is a geometric quantity
            let k = r.curvature_sample(s).unwrap();
            let p = k.position;
            let t = p[1].atan2(p[0] / 2.0);
            let k0 = e.curvature_sample(t).unwrap();
            assert!((k.kappa - k0.kappa).abs() < 1e-8);
            assert!((k.kappa_prime - k0.kappa_prime).abs() < 1e-7);
        }
    }

    #[test]
    fn singular_parametrization_is_reported() {
        let c = ClosedCurve::new("cusp", ConformalChart::Euclidean.into(), std::f64::consts::TAU, |t| {
            let (s, c) = t.sin_cos();
            [c * c * c, s * s * s]
        })
        .unwrap();
        assert!(matches!(c.curvature_sample(0.0), Err(GeomError::Regularity { .. })));
    }
}
