use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{cylinder, families, necks};
use crate::curves::ClosedCurve;
use crate::error::{param_error, Result};
use crate::maps::{QuotientModel, Reparam};

/// Shared parameters of the curve families. Unset values take per-family
/// defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
}

impl FamilyParams {
    /// Amplitude default `0.05 · min(L, 1)`, inside the small regime.
    pub fn lambda_or_default(&self, l: f64) -> f64 {
        self.lambda.unwrap_or(0.05 * l.min(1.0))
    }

    /// Whether `λ < 0.1 L`.
    pub fn small_regime(&self, l: f64) -> bool {
        self.lambda_or_default(l) < 0.1 * l
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    FlatTranslation,
    FlatGlide,
    Horocycle,
    HypTranslation,
    HypGlide,
    Cyl2v,
    PairFlat,
    PairHyp,
    Neck,
    PolarCos5,
}

pub const FAMILIES: [Family; 10] = [
    Family::FlatTranslation,
    Family::FlatGlide,
    Family::Horocycle,
    Family::HypTranslation,
    Family::HypGlide,
    Family::Cyl2v,
    Family::PairFlat,
    Family::PairHyp,
    Family::Neck,
    Family::PolarCos5,
];

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::FlatTranslation => "flat-translation",
            Family::FlatGlide => "flat-glide",
            Family::Horocycle => "horocycle",
            Family::HypTranslation => "hyp-translation",
            Family::HypGlide => "hyp-glide",
            Family::Cyl2v => "cyl2v",
            Family::PairFlat => "pair-flat",
            Family::PairHyp => "pair-hyp",
            Family::Neck => "neck",
            Family::PolarCos5 => "polar-cos5",
        }
    }

    pub fn from_name(name: &str) -> Result<Family> {
        FAMILIES
            .iter()
            .copied()
            .find(|f| f.name() == name)
            .ok_or_else(|| param_error(format!("unknown family '{name}'")))
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A constructed family member.
#[derive(Clone, Debug)]
pub struct FamilyCurve {
    pub family: Family,
    /// Parameters with defaults filled in.
    pub params: FamilyParams,
    /// The curve whose vertices are counted.
    pub curve: ClosedCurve,
    pub quotient: Option<QuotientModel>,
    /// Deck-invariance residual of the lift, when the curve is closed by a
    /// deck motion.
    pub invariance_residual: Option<f64>,
}

fn residual_probes(period: f64) -> Vec<f64> {
    (0..64).map(|i| period * (i as f64 + 0.25) / 64.0).collect()
}

pub fn build_family(family: Family, params: &FamilyParams) -> Result<FamilyCurve> {
    let mut filled = FamilyParams::default();
    let curve = match family {
        Family::FlatTranslation | Family::FlatGlide | Family::HypTranslation | Family::HypGlide => {
            let l = params.l.unwrap_or(1.0);
            let lambda = params.lambda_or_default(l);
            filled.l = Some(l);
            filled.lambda = Some(lambda);
            match family {
                Family::FlatTranslation => families::flat_translation_perturbation(l, lambda)?,
                Family::FlatGlide => families::flat_glide_perturbation(l, lambda)?,
                Family::HypTranslation => families::hyperbolic_translation_perturbation(l, lambda)?,
                _ => families::hyperbolic_glide_perturbation(l, lambda)?,
            }
        }
        Family::Horocycle => {
            let l = params.l.unwrap_or(1.0);
            let lambda = params.lambda_or_default(l);
            let h = params.h.unwrap_or(1.0);
            filled.l = Some(l);
            filled.lambda = Some(lambda);
            filled.h = Some(h);
            families::horocycle_perturbation(l, h, lambda)?
        }
        Family::PairFlat | Family::PairHyp => {
            let l = params.l.unwrap_or(1.0);
            let lambda = params.lambda_or_default(l);
            let eps = params.eps.unwrap_or(0.5);
            filled.l = Some(l);
            filled.lambda = Some(lambda);
            filled.eps = Some(eps);
            let pair = if family == Family::PairFlat {
                families::embedded_pair_flat(l, lambda, eps)?
            } else {
                families::embedded_pair_hyperbolic(l, lambda, eps)?
            };
            let residual = pair.glide_residual(&residual_probes(l));
            let curve = pair.quotient_curve;
            let quotient = curve.quotient().cloned();
            let own = curve.closure_residual();
            return Ok(FamilyCurve {
                family,
                params: filled,
                curve,
                quotient,
                invariance_residual: Some(residual.max(own)),
            });
        }
        Family::Cyl2v => {
            let a = params.a.unwrap_or(cylinder::DEFAULT_A);
            filled.a = Some(a);
            cylinder::two_vertex_cylinder_curve(a)?
        }
        Family::PolarCos5 => cylinder::polar_cos5(),
        Family::Neck => {
            let l = params.l.unwrap_or(TAU);
            let k = params.k.unwrap_or(0.0);
            let lambda = params.lambda_or_default(l);
            filled.l = Some(l);
            filled.k = Some(k);
            filled.lambda = Some(lambda);
            let surface = necks::constant_curvature_profile(k, l)?;
            necks::neck_perturbation(&surface, lambda)?
        }
    };
    let invariance_residual = curve.closure().map(|g| {
        let probes = residual_probes(curve.period());
        crate::maps::check_deck_invariance(|t| curve.point(t), &g, Reparam::Shift(curve.period()), &probes)
    });
    Ok(FamilyCurve { family, params: filled, quotient: curve.quotient().cloned(), curve, invariance_residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in FAMILIES {
            assert_eq!(Family::from_name(f.name()).unwrap(), f);
            assert_eq!(serde_json::to_value(f).unwrap(), f.name());
        }
        assert!(Family::from_name("nope").is_err());
    }

    #[test]
    fn every_family_builds_with_small_residual() {
        for f in FAMILIES {
            let built = build_family(f, &FamilyParams::default()).unwrap();
            if let Some(r) = built.invariance_residual {
                assert!(r < 1e-10, "{f}: {r}");
            }
        }
    }

    #[test]
    fn defaults_are_small_regime() {
        let p = FamilyParams { l: Some(3.0), ..Default::default() };
        assert_eq!(p.lambda_or_default(3.0), 0.05);
        assert!(p.small_regime(3.0));
    }
}
