//! Surfaces of revolution `X(t,θ) = (r(t)cosθ, r(t)sinθ, h(t))`.
//!
//! Only `h'` ever enters curvature or geodesic computations, so a surface
//! stores its profile radius and the height rate. The normalized form has
//! `h(t) = t`; arclength profiles have `h' = sqrt(1 - r'²)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{param_error, GeomError, Result};
use crate::jet::{cross3, deriv3, dot3, Jet};

pub type ScalarFn = Arc<dyn Fn(Jet) -> Jet + Send + Sync>;

#[derive(Clone)]
enum Height {
    /// `h(t) = t`
    Identity,
    /// `h'(t) = sqrt(1 - r'(t)²)`
    Arclength,
    Rate(ScalarFn),
}

#[derive(Clone)]
pub struct RevolutionSurface {
    label: String,
    radius: ScalarFn,
    height: Height,
    interval: (f64, f64),
}

impl fmt::Debug for RevolutionSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RevolutionSurface")
            .field("label", &self.label)
            .field("interval", &self.interval)
            .field("normalized", &self.is_normalized())
            .finish()
    }
}

impl RevolutionSurface {
    fn build(label: &str, radius: ScalarFn, height: Height, interval: (f64, f64)) -> Result<Self> {
        let (lo, hi) = interval;
        if !(lo < hi) {
            return Err(param_error(format!("empty profile interval [{lo}, {hi}]")));
        }
        let surface = RevolutionSurface { label: label.to_string(), radius, height, interval };
        for i in 0..=64 {
            let t = lo + (hi - lo) * i as f64 / 64.0;
            let r = surface.radius(t);
            if !(r > 0.0) || !r.is_finite() {
                return Err(param_error(format!("profile radius {r} is not positive at t = {t}")));
            }
            let hp = surface.height_rate_jet(Jet::constant(t)).value();
            if !hp.is_finite() {
                return Err(param_error(format!("height rate undefined at t = {t}")));
            }
        }
        Ok(surface)
    }

    /// Normalized form `X(t,θ) = (r(t)cosθ, r(t)sinθ, t)`.
    pub fn normalized<F>(label: &str, radius: F, interval: (f64, f64)) -> Result<Self>
    where
        F: Fn(Jet) -> Jet + Send + Sync + 'static,
    {
        Self::build(label, Arc::new(radius), Height::Identity, interval)
    }

    /// Profile parametrized by arclength; requires `|r'| < 1` on the interval.
    pub fn arclength<F>(label: &str, radius: F, interval: (f64, f64)) -> Result<Self>
    where
        F: Fn(Jet) -> Jet + Send + Sync + 'static,
    {
        Self::build(label, Arc::new(radius), Height::Arclength, interval)
    }

    /// General profile with an explicit height rate `h'(t)`.
    pub fn with_height_rate<F, G>(
        label: &str,
        radius: F,
        height_rate: G,
        interval: (f64, f64),
    ) -> Result<Self>
    where
        F: Fn(Jet) -> Jet + Send + Sync + 'static,
        G: Fn(Jet) -> Jet + Send + Sync + 'static,
    {
        Self::build(label, Arc::new(radius), Height::Rate(Arc::new(height_rate)), interval)
    }

    pub fn cylinder(radius: f64, interval: (f64, f64)) -> Result<Self> {
        Self::normalized("cylinder", move |_| Jet::constant(radius), interval)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn is_normalized(&self) -> bool {
        matches!(self.height, Height::Identity)
    }

    pub fn contains(&self, t: f64) -> bool {
        t.is_finite() && t >= self.interval.0 && t <= self.interval.1
    }

    pub fn check(&self, t: f64, theta: f64) -> Result<()> {
        if self.contains(t) && theta.is_finite() {
            Ok(())
        } else {
            Err(GeomError::Domain { domain: "profile interval", x: t, y: theta })
        }
    }

    pub fn radius(&self, t: f64) -> f64 {
        (self.radius)(Jet::constant(t)).value()
    }

    pub fn radius_jet(&self, t: Jet) -> Jet {
        (self.radius)(t)
    }

    /// `(r, r', r'')` at `t`.
    pub fn profile_derivatives(&self, t: f64) -> [f64; 3] {
        let j = (self.radius)(Jet::variable(t));
        [j.derivative(0), j.derivative(1), j.derivative(2)]
    }

    /// Jet of `h'(t)` for a jet argument.
    pub fn height_rate_jet(&self, t: Jet) -> Jet {
        match &self.height {
            Height::Identity => Jet::constant(1.0),
            Height::Arclength => {
                let rp = self.radius_rate_jet(t);
                (1.0 - rp * rp).sqrt()
            }
            Height::Rate(f) => f(t),
        }
    }

    /// Jet of `r'(t)` for a jet argument.
    pub fn radius_rate_jet(&self, t: Jet) -> Jet {
        let series = (self.radius)(Jet::variable(t.value())).deriv();
        t.compose(&series)
    }

    /// First fundamental form coefficients `(E, G)`: `ds² = E dt² + G dθ²`.
    pub fn metric(&self, t: f64) -> (f64, f64) {
        let tj = Jet::constant(t);
        let rp = self.radius_rate_jet(tj).value();
        let hp = self.height_rate_jet(tj).value();
        let r = self.radius(t);
        (rp * rp + hp * hp, r * r)
    }

    /// Gauss curvature from the fundamental forms,
    /// `K = h'(r'h'' - r''h') / (r (r'² + h'²)²)`.
    pub fn gauss_curvature(&self, t: f64) -> Result<f64> {
        self.check(t, 0.0)?;
        let tj = Jet::variable(t);
        let r = (self.radius)(tj);
        let h = self.height_rate_jet(tj);
        let (r0, r1, r2) = (r.derivative(0), r.derivative(1), r.derivative(2));
        let (h1, h2) = (h.derivative(0), h.derivative(1));
        let e = r1 * r1 + h1 * h1;
        Ok(h1 * (r1 * h2 - r2 * h1) / (r0 * e * e))
    }

    /// Derivative of the Gauss curvature along `t`, by central differences
    /// of [`Self::gauss_curvature`].
    pub fn gauss_curvature_slope(&self, t: f64) -> Result<f64> {
        let h = 1e-4 * (self.interval.1 - self.interval.0);
        let k = |s: f64| self.gauss_curvature(s);
        Ok((k(t - 2.0 * h)? - 8.0 * k(t - h)? + 8.0 * k(t + h)? - k(t + 2.0 * h)?) / (12.0 * h))
    }

    pub fn has_neck_at(&self, t0: f64, tol: f64) -> bool {
        self.contains(t0) && self.profile_derivatives(t0)[1].abs() < tol
    }

    /// Jets of the embedded point `X(t(u), θ(u))`. The height coordinate is
    /// only determined up to a constant.
    pub fn embed_jets(&self, pos: &[Jet; 2]) -> [Jet; 3] {
        let (t, theta) = (pos[0], pos[1]);
        let r = (self.radius)(t);
        let (s, c) = theta.sin_cos();
        let z = match self.height {
            Height::Identity => t,
            _ => (self.height_rate_jet(t) * t.deriv()).integral() + t.value(),
        };
        [r * c, r * s, z]
    }

    /// Unit normal `n = X_t × X_θ / |X_t × X_θ|` along the curve.
    pub fn normal_jets(&self, pos: &[Jet; 2]) -> [Jet; 3] {
        let (t, theta) = (pos[0], pos[1]);
        let rp = self.radius_rate_jet(t);
        let hp = self.height_rate_jet(t);
        let (s, c) = theta.sin_cos();
        let norm = (rp * rp + hp * hp).sqrt();
        [-(hp * c) / norm, -(hp * s) / norm, rp / norm]
    }

    /// Jets of geodesic curvature `⟨c'', n × c'⟩ / |c'|³` and speed `|c'|`
    /// for a curve `u ↦ X(t(u), θ(u))`.
    pub fn curvature_jets(&self, pos: &[Jet; 2]) -> Result<(Jet, Jet)> {
        self.check(pos[0].value(), pos[1].value())?;
        let c = self.embed_jets(pos);
        let d1 = deriv3(&c);
        let d2 = deriv3(&d1);
        let n = self.normal_jets(pos);
        let nu = cross3(&n, &d1);
        let speed = dot3(&d1, &d1).sqrt();
        Ok((dot3(&d2, &nu) / speed.powi(3), speed))
    }
}

pub fn gauss_curvature_revolution(surface: &RevolutionSurface, t: f64) -> Result<f64> {
    surface.gauss_curvature(t)
}

/// Geodesic curvature of the path `θ ↦ X(t(θ), θ)` at `θ`, where `path`
/// gives the jet of `t(θ)`.
pub fn revolution_geodesic_curvature<F>(surface: &RevolutionSurface, path: F, theta: f64) -> Result<f64>
where
    F: Fn(Jet) -> Jet,
{
    let th = Jet::variable(theta);
    let (k, _) = surface.curvature_jets(&[path(th), th])?;
    Ok(k.value())
}

/// Closed form of the geodesic curvature of `c_λ(θ) = X(λcosθ, θ)` on a
/// normalized surface, written in terms of `r̄ = r(λcosθ)` and its first two
/// derivatives.
pub fn neck_curvature_closed_form(surface: &RevolutionSurface, lambda: f64, theta: f64) -> Result<f64> {
    if !surface.is_normalized() {
        return Err(param_error("closed-form neck curvature needs the normalized form h(t) = t"));
    }
    let t = lambda * theta.cos();
    surface.check(t, theta)?;
    let [r, r1, r2] = surface.profile_derivatives(t);
    let (s, c) = theta.sin_cos();
    let s2 = s * s;
    let q = r1 * r1 + 1.0;
    let num = r1 * r * r
        + lambda * r * (-lambda * r1 * r2 * s2 + c * r1 * r1 + c)
        + 2.0 * lambda * lambda * s2 * r1 * q;
    let den = q.sqrt() * (r * r + lambda * lambda * s2 * q).powf(1.5);
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sphere() -> RevolutionSurface {
        RevolutionSurface::arclength("sphere", |t| t.cos(), (-1.2, 1.2)).unwrap()
    }

    #[test]
    fn curvature_of_standard_profiles() {
        let cyl = RevolutionSurface::cylinder(1.0, (-1.0, 1.0)).unwrap();
        let pseudo = RevolutionSurface::arclength("cosh", |t| t.cosh(), (-0.8, 0.8)).unwrap();
        for t in [-0.5, 0.0, 0.3] {
            assert!(cyl.gauss_curvature(t).unwrap().abs() < 1e-15);
            assert!((sphere().gauss_curvature(t).unwrap() - 1.0).abs() < 1e-12);
            assert!((pseudo.gauss_curvature(t).unwrap() + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn arclength_profiles_agree_with_minus_r2_over_r() {
        let surfaces = [
            RevolutionSurface::arclength("a", |t| 1.0 + 0.2 * t.sin(), (-1.0, 1.0)).unwrap(),
            RevolutionSurface::arclength("b", |t| (2.0 + t * t * 0.1).sqrt(), (-1.0, 1.0)).unwrap(),
        ];
        for s in &surfaces {
            for i in 0..20 {
                let t = -0.9 + 0.09 * i as f64;
                let [r, _, r2] = s.profile_derivatives(t);
                assert!((s.gauss_curvature(t).unwrap() + r2 / r).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn geodesic_necks() {
        let cyl = RevolutionSurface::cylinder(1.0, (-1.0, 1.0)).unwrap();
        for th in [0.0, 1.0, 2.5] {
            let k = revolution_geodesic_curvature(&cyl, |_| Jet::constant(0.0), th).unwrap();
            assert!(k.abs() < 1e-15);
            let k = revolution_geodesic_curvature(&sphere(), |_| Jet::constant(0.0), th).unwrap();
            assert!(k.abs() < 1e-14);
        }
    }

    #[test]
    fn unrolled_cylinder_oracle() {
        // The flat cylinder unrolls isometrically to the (θ, t) plane; the
        // path (θ, 0.1cosθ) there has curvature y''/(1+y'²)^{3/2}.
        let cyl = RevolutionSurface::cylinder(1.0, (-1.0, 1.0)).unwrap();
        let lambda = 0.1;
        let th = PI / 2.0;
        let k = revolution_geodesic_curvature(&cyl, |t| t.cos() * lambda, th).unwrap();
        let (yp, ypp) = (-lambda * th.sin(), -lambda * th.cos());
        let planar = ypp / (1.0 + yp * yp).powf(1.5);
        assert!((k.abs() - planar.abs()).abs() < 1e-10, "{k} {planar}");
    }

    #[test]
    fn neck_closed_form_matches_general_route() {
        type Profile = (&'static str, fn(Jet) -> Jet);
        let profiles: [Profile; 3] = [
            ("one", |_| Jet::constant(1.0)),
            ("cos", |t| t.cos()),
            ("cosh", |t| t.cosh()),
        ];
        for (name, r) in profiles {
            let s = RevolutionSurface::normalized(name, r, (-1.0, 1.0)).unwrap();
            for lambda in [1e-3, 1e-2, 1e-1] {
                let mut max_k: f64 = 0.0;
                let mut max_err: f64 = 0.0;
                for i in 0..256 {
                    let th = 2.0 * PI * i as f64 / 256.0;
                    let closed = neck_curvature_closed_form(&s, lambda, th).unwrap();
                    let general =
                        revolution_geodesic_curvature(&s, |t| t.cos() * lambda, th).unwrap();
                    max_k = max_k.max(closed.abs());
                    max_err = max_err.max((closed - general).abs());
                }
                assert!(max_err <= 1e-9 * max_k, "{name} λ={lambda}: {max_err} vs {max_k}");
            }
        }
    }

    #[test]
    fn rejects_nonpositive_radius() {
        assert!(RevolutionSurface::normalized("bad", |t| t, (-1.0, 1.0)).is_err());
        assert!(RevolutionSurface::cylinder(1.0, (1.0, 1.0)).is_err());
    }

    #[test]
    fn neck_detection() {
        assert!(sphere().has_neck_at(0.0, 1e-12));
        assert!(!sphere().has_neck_at(0.5, 1e-12));
    }
}
