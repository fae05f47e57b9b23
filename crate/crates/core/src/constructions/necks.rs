//! Constant-curvature necks and their perturbations `θ ↦ X(λ cos θ, θ)`.

use std::f64::consts::TAU;

use crate::curves::ClosedCurve;
use crate::error::{param_error, GeomError, Result};
use crate::geom::RevolutionSurface;
use crate::jet::Jet;

/// Default half-width of the profile interval.
pub const DEFAULT_HALF_WIDTH: f64 = 1.0;

/// Arclength profile with constant curvature `K` and a neck of length `L`
/// at `t = 0`:
/// `r(s) = (L/2π) cos(√K s)` for `K > 0`, `(L/2π) cosh(√−K s)` for `K < 0`,
/// and the cylinder `r ≡ L/2π` for `K = 0`.
///
/// For `K > 0` the radius vanishes at `s = π/(2√K)`; for either sign the
/// profile stops being a graph once `|r'|` reaches 1. The interval
/// `[−ε, ε]` is clamped to 95% of that bound, with a warning.
pub fn constant_curvature_profile(k: f64, l: f64) -> Result<RevolutionSurface> {
    constant_curvature_profile_on(k, l, DEFAULT_HALF_WIDTH)
}

pub fn constant_curvature_profile_on(k: f64, l: f64, half_width: f64) -> Result<RevolutionSurface> {
    if !(l > 0.0) || !l.is_finite() {
        return Err(param_error(format!("neck length {l} must be positive")));
    }
    if !k.is_finite() || !(half_width > 0.0) {
        return Err(param_error(format!("bad curvature {k} or half-width {half_width}")));
    }
    let r0 = l / TAU;
    let w = k.abs().sqrt();
    let bound = if k > 0.0 {
        // first of r = 0 and |r'| = r0 w |sin(w s)| = 1
        let radius_zero = std::f64::consts::FRAC_PI_2 / w;
        if r0 * w > 1.0 {
            (1.0 / (r0 * w)).asin() / w
        } else {
            radius_zero
        }
    } else if k < 0.0 {
        (1.0 / (r0 * w)).asinh() / w
    } else {
        f64::INFINITY
    };
    let eps = if half_width > 0.95 * bound {
        log::warn!("profile interval for K = {k}, L = {l} clamped from {half_width} to {}", 0.95 * bound);
        0.95 * bound
    } else {
        half_width
    };
    let interval = (-eps, eps);
    if k > 0.0 {
        RevolutionSurface::arclength(&format!("K={k},L={l}"), move |s: Jet| (s * w).cos() * r0, interval)
    } else if k < 0.0 {
        RevolutionSurface::arclength(&format!("K={k},L={l}"), move |s: Jet| (s * w).cosh() * r0, interval)
    } else {
        RevolutionSurface::arclength(&format!("K=0,L={l}"), move |_s: Jet| Jet::constant(r0), interval)
    }
}

/// The literal profile `r(t) = (L/2π) cos(t/K)` (or cosh for `K < 0`), whose
/// curvature is `1/K²` rather than `K`; kept for comparison.
pub fn literal_profile(k: f64, l: f64) -> Result<RevolutionSurface> {
    if k == 0.0 {
        return Err(param_error("the literal profile is undefined at K = 0"));
    }
    let r0 = l / TAU;
    let bound = 0.5 * k.abs();
    if k > 0.0 {
        RevolutionSurface::arclength("literal", move |t: Jet| (t * (1.0 / k)).cos() * r0, (-bound, bound))
    } else {
        RevolutionSurface::arclength("literal", move |t: Jet| (t * (1.0 / k)).cosh() * r0, (-bound, bound))
    }
}

/// `c_λ(θ) = X(λ cos θ, θ)` on a surface with a neck at `t = 0`.
pub fn neck_perturbation(surface: &RevolutionSurface, lambda: f64) -> Result<ClosedCurve> {
    if !surface.has_neck_at(0.0, 1e-9) {
        return Err(param_error(format!("surface {} has no neck at t = 0", surface.label())));
    }
    let (lo, hi) = surface.interval();
    if !(lambda >= 0.0) || lambda > hi.min(-lo) {
        return Err(GeomError::Domain { domain: "profile interval", x: lambda, y: 0.0 });
    }
    ClosedCurve::new(
        &format!("neck({},λ={lambda})", surface.label()),
        surface.clone().into(),
        TAU,
        move |th: Jet| [th.cos() * lambda, th],
    )
}

/// `C = (1 + r(0) r''(0)) / r(0)²`, the limit of `k_λ(θ) / (λ cos θ)`.
pub fn neck_limit_constant(surface: &RevolutionSurface) -> Result<f64> {
    if !surface.has_neck_at(0.0, 1e-9) {
        return Err(param_error(format!("surface {} has no neck at t = 0", surface.label())));
    }
    let [r, _, r2] = surface.profile_derivatives(0.0);
    Ok((1.0 + r * r2) / (r * r))
}

/// `max_θ |k_λ(θ)/λ − C cos θ|` over `samples` angles, taking the global
/// sign of `k` that fits best (orientation of the normal is a convention).
pub fn neck_taylor_defect(surface: &RevolutionSurface, lambda: f64, samples: usize) -> Result<f64> {
    let c = neck_limit_constant(surface)?;
    let curve = neck_perturbation(surface, lambda)?;
    let mut worst = [0.0f64; 2];
    for i in 0..samples {
        let th = TAU * i as f64 / samples as f64;
        let k = curve.curvature_sample(th)?.kappa / lambda;
        for (j, sign) in [1.0, -1.0].iter().enumerate() {
            worst[j] = worst[j].max((sign * k - c * th.cos()).abs());
        }
    }
    Ok(worst[0].min(worst[1]))
}
