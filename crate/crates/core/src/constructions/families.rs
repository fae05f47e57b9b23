//! Sine perturbations of closed geodesics and horocycles on flat and
//! hyperbolic quotients, and the embedded glide pairs.

use std::f64::consts::{PI, TAU};

use crate::curves::ClosedCurve;
use crate::error::{param_error, GeomError, Result};
use crate::geom::ConformalChart;
use crate::jet::Jet;
use crate::maps::{DeckKind, DeckMotion, QuotientModel};
use crate::Point;

fn check_length(l: f64) -> Result<()> {
    if l > 0.0 && l.is_finite() {
        Ok(())
    } else {
        Err(param_error(format!("L = {l} must be positive")))
    }
}

fn check_amplitude(lambda: f64) -> Result<()> {
    if lambda >= 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(param_error(format!("λ = {lambda} must be non-negative")))
    }
}

fn quotient_curve(
    label: String,
    chart: ConformalChart,
    period: f64,
    closure: DeckMotion,
    quotient: DeckMotion,
    path: impl Fn(Jet) -> [Jet; 2] + Send + Sync + 'static,
) -> Result<ClosedCurve> {
    Ok(ClosedCurve::with_closure(&label, chart.into(), period, closure, path)?.on_quotient(QuotientModel::new(quotient)))
}

/// `γ̃(t) = (t, λ sin(2πt/L))` on the flat cylinder `ℝ²/(x ↦ x + L)`.
pub fn flat_translation_perturbation(l: f64, lambda: f64) -> Result<ClosedCurve> {
    check_length(l)?;
    check_amplitude(lambda)?;
    let g = DeckMotion::new(DeckKind::EuclTranslation, l)?;
    quotient_curve(format!("flat-translation(L={l},λ={lambda})"), ConformalChart::Euclidean, l, g, g, move |t| {
        [t, (t * (TAU / l)).sin() * lambda]
    })
}

/// `γ̃(t) = (t, λ sin(πt/L))` on the twisted cylinder `ℝ²/((x,y) ↦ (x + L, −y))`.
pub fn flat_glide_perturbation(l: f64, lambda: f64) -> Result<ClosedCurve> {
    check_length(l)?;
    check_amplitude(lambda)?;
    let g = DeckMotion::new(DeckKind::EuclGlide, l)?;
    quotient_curve(format!("flat-glide(L={l},λ={lambda})"), ConformalChart::Euclidean, l, g, g, move |t| {
        [t, (t * (PI / l)).sin() * lambda]
    })
}

/// `γ̃(t) = (t, h + λ sin(2πt/L))` in the half-plane modulo `x ↦ x + L`.
pub fn horocycle_perturbation(l: f64, h: f64, lambda: f64) -> Result<ClosedCurve> {
    check_length(l)?;
    check_amplitude(lambda)?;
    if !(h > lambda) {
        return Err(GeomError::Domain { domain: "half-plane", x: 0.0, y: h - lambda });
    }
    let g = DeckMotion::new(DeckKind::Parabolic, l)?;
    quotient_curve(
        format!("horocycle(L={l},h={h},λ={lambda})"),
        ConformalChart::HalfPlane,
        l,
        g,
        g,
        move |t| [t, (t * (TAU / l)).sin() * lambda + h],
    )
}

/// `t ↦ (λ t sin(2π ln t / L), t)`, the lift in its original parameter.
pub fn hyp_translation_lift(l: f64, lambda: f64) -> impl Fn(f64) -> Point {
    move |t: f64| [lambda * t * (TAU * t.ln() / l).sin(), t]
}

/// `t ↦ (λ t sin(π ln t / L), t)`.
pub fn hyp_glide_lift(l: f64, lambda: f64) -> impl Fn(f64) -> Point {
    move |t: f64| [lambda * t * (PI * t.ln() / l).sin(), t]
}

/// Perturbation of the geodesic `x = 0` of the hyperbolic cylinder
/// `ℍ²/((x,y) ↦ (e^L x, e^L y))`.
///
/// The lift `(λ t sin(2π ln t / L), t)` is parametrized by `u = ln t`, so
/// one period is `u ∈ [0, L)` (that is `t ∈ [1, e^L)`) and the deck motion is
/// a shift by `L`. Uniform grids in `u` are log-uniform in `t`.
pub fn hyperbolic_translation_perturbation(l: f64, lambda: f64) -> Result<ClosedCurve> {
    check_length(l)?;
    check_amplitude(lambda)?;
    let g = DeckMotion::new(DeckKind::HypTranslation, l)?;
    quotient_curve(
        format!("hyp-translation(L={l},λ={lambda})"),
        ConformalChart::HalfPlane,
        l,
        g,
        g,
        move |u| {
            let y = u.exp();
            [y * (u * (TAU / l)).sin() * lambda, y]
        },
    )
}

/// Perturbation of `x = 0` on `ℍ²/((x,y) ↦ (−e^L x, e^L y))`, in `u = ln t`.
pub fn hyperbolic_glide_perturbation(l: f64, lambda: f64) -> Result<ClosedCurve> {
    check_length(l)?;
    check_amplitude(lambda)?;
    let g = DeckMotion::new(DeckKind::HypGlide, l)?;
    quotient_curve(
        format!("hyp-glide(L={l},λ={lambda})"),
        ConformalChart::HalfPlane,
        l,
        g,
        g,
        move |u| {
            let y = u.exp();
            [y * (u * (PI / l)).sin() * lambda, y]
        },
    )
}

/// The two lifts `γ̃±` of an embedded pair and the single closed curve they
/// project to.
#[derive(Clone, Debug)]
pub struct EmbeddedPair {
    pub plus: ClosedCurve,
    pub minus: ClosedCurve,
    /// `γ̃₊` over two fundamental intervals, closed by the square of the
    /// glide; this is the projected curve on the quotient.
    pub quotient_curve: ClosedCurve,
    pub glide: DeckMotion,
}

impl EmbeddedPair {
    /// Distance between `g(γ̃₊(t))` and `γ̃₋(t + L)` over the probes.
    pub fn glide_residual(&self, probes: &[f64]) -> f64 {
        probes.iter().fold(0.0, |worst, &t| {
            let a = self.glide.apply(self.plus.point(t));
            let b = self.minus.point(t + self.glide.l);
            worst.max((a[0] - b[0]).hypot(a[1] - b[1]))
        })
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps >= 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(param_error(format!("ε = {eps} must be non-negative")))
    }
}

/// `γ̃±(t) = (t, λ(sin(πt/L) ± ε))` on the twisted cylinder.
pub fn embedded_pair_flat(l: f64, lambda: f64, eps: f64) -> Result<EmbeddedPair> {
    check_length(l)?;
    check_amplitude(lambda)?;
    check_eps(eps)?;
    let g = DeckMotion::new(DeckKind::EuclGlide, l)?;
    let lift = move |sign: f64| move |t: Jet| [t, ((t * (PI / l)).sin() + sign * eps) * lambda];
    let (g2, chart) = (g.power(2), ConformalChart::Euclidean);
    let label = |s: &str| format!("pair-flat{s}(L={l},λ={lambda},ε={eps})");
    Ok(EmbeddedPair {
        plus: quotient_curve(label("+"), chart, 2.0 * l, g2, g, lift(1.0))?,
        minus: quotient_curve(label("-"), chart, 2.0 * l, g2, g, lift(-1.0))?,
        quotient_curve: quotient_curve(label(""), chart, 2.0 * l, g2, g, lift(1.0))?,
        glide: g,
    })
}

/// `γ̃±(t) = (λ t (sin(π ln t / L) ± ε), t)` on the hyperbolic twisted
/// cylinder, in `u = ln t`.
pub fn embedded_pair_hyperbolic(l: f64, lambda: f64, eps: f64) -> Result<EmbeddedPair> {
    check_length(l)?;
    check_amplitude(lambda)?;
    check_eps(eps)?;
    let g = DeckMotion::new(DeckKind::HypGlide, l)?;
    let lift = move |sign: f64| {
        move |u: Jet| {
            let y = u.exp();
            [y * ((u * (PI / l)).sin() + sign * eps) * lambda, y]
        }
    };
    let (g2, chart) = (g.power(2), ConformalChart::HalfPlane);
    let label = |s: &str| format!("pair-hyp{s}(L={l},λ={lambda},ε={eps})");
    Ok(EmbeddedPair {
        plus: quotient_curve(label("+"), chart, 2.0 * l, g2, g, lift(1.0))?,
        minus: quotient_curve(label("-"), chart, 2.0 * l, g2, g, lift(-1.0))?,
        quotient_curve: quotient_curve(label(""), chart, 2.0 * l, g2, g, lift(1.0))?,
        glide: g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{count_vertices, curvature_profile, DEFAULT_TOL};
    use crate::maps::{check_deck_invariance, Reparam};

    fn count(c: &ClosedCurve) -> Option<usize> {
        count_vertices(&curvature_profile(c, 2048).unwrap(), DEFAULT_TOL).unwrap().count()
    }

    #[test]
    fn base_curves_are_all_critical() {
        for c in [
            flat_translation_perturbation(1.0, 0.0).unwrap(),
            flat_glide_perturbation(1.0, 0.0).unwrap(),
            horocycle_perturbation(1.0, 1.0, 0.0).unwrap(),
            hyperbolic_translation_perturbation(1.0, 0.0).unwrap(),
            hyperbolic_glide_perturbation(1.0, 0.0).unwrap(),
        ] {
            assert_eq!(count(&c), None, "{}", c.label());
        }
    }

    #[test]
    fn perturbations_have_two_vertices() {
        assert_eq!(count(&flat_translation_perturbation(1.0, 0.05).unwrap()), Some(2));
        assert_eq!(count(&flat_translation_perturbation(1.0, 5.0).unwrap()), Some(2));
        assert_eq!(count(&horocycle_perturbation(1.0, 1.0, 0.05).unwrap()), Some(2));
        assert_eq!(count(&horocycle_perturbation(2.0, 3.0, 0.1).unwrap()), Some(2));
        assert_eq!(count(&hyperbolic_translation_perturbation(1.0, 0.01).unwrap()), Some(2));
    }

    #[test]
    fn glides_have_one_vertex_per_fundamental_interval() {
        assert_eq!(count(&flat_glide_perturbation(1.0, 0.05).unwrap()), Some(1));
        assert_eq!(count(&hyperbolic_glide_perturbation(1.0, 0.01).unwrap()), Some(1));
    }

    #[test]
    fn horocycle_must_stay_in_half_plane() {
        assert!(matches!(horocycle_perturbation(1.0, 0.1, 0.2), Err(GeomError::Domain { .. })));
    }

    #[test]
    fn hyperbolic_lift_is_dilation_invariant() {
        let l: f64 = 1.3;
        let probes: Vec<f64> = (0..64).map(|i| 1.0 + (l.exp() - 1.0) * i as f64 / 64.0).collect();
        let g = DeckMotion::new(DeckKind::HypTranslation, l).unwrap();
        let r = check_deck_invariance(hyp_translation_lift(l, 0.01), &g, Reparam::Scale(l.exp()), &probes);
        assert!(r < 1e-12, "{r}");
        let g = DeckMotion::new(DeckKind::HypGlide, l).unwrap();
        let r = check_deck_invariance(hyp_glide_lift(l, 0.01), &g, Reparam::Scale(l.exp()), &probes);
        assert!(r < 1e-12, "{r}");
        let c = hyperbolic_translation_perturbation(l, 0.01).unwrap();
        let lift = hyp_translation_lift(l, 0.01);
        for &t in &probes {
            let (a, b) = (c.point(t.ln()), lift(t));
            assert!((a[0] - b[0]).abs() < 1e-14 && (a[1] - b[1]).abs() < 1e-14);
        }
    }

    #[test]
    fn pairs() {
        let probes: Vec<f64> = (0..50).map(|i| 0.04 * i as f64).collect();
        let flat = embedded_pair_flat(1.0, 0.05, 0.5).unwrap();
        assert!(flat.glide_residual(&probes) < 1e-12);
        assert_eq!(count(&flat.quotient_curve), Some(2));
        let hyp = embedded_pair_hyperbolic(1.0, 0.01, 0.5).unwrap();
        assert!(hyp.glide_residual(&probes) < 1e-12);
        assert_eq!(count(&hyp.quotient_curve), Some(2));

        let reduced = embedded_pair_flat(1.0, 0.05, 0.0).unwrap();
        let glide = flat_glide_perturbation(1.0, 0.05).unwrap();
        for &t in &probes {
            assert_eq!(reduced.plus.point(t), glide.point(t));
            assert_eq!(reduced.minus.point(t), glide.point(t));
        }
    }
}
