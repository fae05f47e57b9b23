use serde::{Deserialize, Serialize};

use crate::error::{param_error, Result};
use crate::geom::ConformalChart;
use crate::jet::Jet;
use crate::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeckKind {
    /// `(x, y) ↦ (x + L, y)` on ℝ²
    EuclTranslation,
    /// `(x, y) ↦ (x + L, −y)` on ℝ²
    EuclGlide,
    /// `(x, y) ↦ (x + L, y)` on ℍ²
    Parabolic,
    /// `(x, y) ↦ (e^L x, e^L y)` on ℍ²
    HypTranslation,
    /// `(x, y) ↦ (−e^L x, e^L y)` on ℍ²
    HypGlide,
}

/// A single deck-group generator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeckMotion {
    pub kind: DeckKind,
    pub l: f64,
}

impl DeckMotion {
    pub fn new(kind: DeckKind, l: f64) -> Result<Self> {
        if !(l > 0.0) || !l.is_finite() {
            return Err(param_error(format!("deck length {l} must be positive")));
        }
        Ok(DeckMotion { kind, l })
    }

    pub(crate) fn unchecked(kind: DeckKind, l: f64) -> Self {
        DeckMotion { kind, l }
    }

    pub fn chart(&self) -> ConformalChart {
        match self.kind {
            DeckKind::EuclTranslation | DeckKind::EuclGlide => ConformalChart::Euclidean,
            _ => ConformalChart::HalfPlane,
        }
    }

    pub fn reverses_orientation(&self) -> bool {
        matches!(self.kind, DeckKind::EuclGlide | DeckKind::HypGlide)
    }

    pub fn apply(&self, p: Point) -> Point {
        self.power_apply(p, 1)
    }

    /// `g^k(p)` for any integer `k`.
    pub fn power_apply(&self, p: Point, k: i64) -> Point {
        let kf = k as f64;
        let flip = if k.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
        match self.kind {
            DeckKind::EuclTranslation | DeckKind::Parabolic => [p[0] + kf * self.l, p[1]],
            DeckKind::EuclGlide => [p[0] + kf * self.l, flip * p[1]],
            DeckKind::HypTranslation => {
                let s = (kf * self.l).exp();
                [s * p[0], s * p[1]]
            }
            DeckKind::HypGlide => {
                let s = (kf * self.l).exp();
                [flip * s * p[0], s * p[1]]
            }
        }
    }

    pub fn apply_jets(&self, p: [Jet; 2]) -> [Jet; 2] {
        match self.kind {
            DeckKind::EuclTranslation | DeckKind::Parabolic => [p[0] + self.l, p[1]],
            DeckKind::EuclGlide => [p[0] + self.l, -p[1]],
            DeckKind::HypTranslation => {
                let s = self.l.exp();
                [p[0] * s, p[1] * s]
            }
            DeckKind::HypGlide => {
                let s = self.l.exp();
                [p[0] * -s, p[1] * s]
            }
        }
    }

    /// `g^k` as a motion of the same family, when it is one (`k ≥ 1`).
    pub fn power(&self, k: u32) -> DeckMotion {
        let kind = match (self.kind, k % 2) {
            (DeckKind::EuclGlide, 0) => DeckKind::EuclTranslation,
            (DeckKind::HypGlide, 0) => DeckKind::HypTranslation,
            (kind, _) => kind,
        };
        DeckMotion { kind, l: self.l * k as f64 }
    }

    /// Linear part of `g`, as the diagonal of its Jacobian.
    fn jacobian(&self) -> Point {
        match self.kind {
            DeckKind::EuclTranslation | DeckKind::Parabolic => [1.0, 1.0],
            DeckKind::EuclGlide => [1.0, -1.0],
            DeckKind::HypTranslation => [self.l.exp(), self.l.exp()],
            DeckKind::HypGlide => [-self.l.exp(), self.l.exp()],
        }
    }

    /// Largest entry of `g*m − m` relative to `m` at `p`, where `m` is the
    /// chart metric.
    pub fn pullback_residual(&self, p: Point) -> f64 {
        let chart = self.chart();
        let q = self.apply(p);
        let (f0, f1) = (chart.factor(p), chart.factor(q));
        let j = self.jacobian();
        let base = f0 * f0;
        let r11 = (f1 * f1 * j[0] * j[0] - base).abs();
        let r22 = (f1 * f1 * j[1] * j[1] - base).abs();
        r11.max(r22) / base
    }
}

/// Canonical region of the quotient.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum FundamentalDomain {
    /// `x0 ≤ x < x1`
    Strip { x0: f64, x1: f64 },
    /// `r0 ≤ |z| < r1`
    Annulus { r0: f64, r1: f64 },
}

/// A space form `X/G` with `G` generated by a single deck motion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientModel {
    pub chart: ConformalChart,
    pub generator: DeckMotion,
    pub domain: FundamentalDomain,
}

impl QuotientModel {
    pub fn new(generator: DeckMotion) -> Self {
        let domain = match generator.kind {
            DeckKind::EuclTranslation | DeckKind::EuclGlide | DeckKind::Parabolic => {
                FundamentalDomain::Strip { x0: 0.0, x1: generator.l }
            }
            DeckKind::HypTranslation | DeckKind::HypGlide => FundamentalDomain::Annulus { r0: 1.0, r1: generator.l.exp() },
        };
        QuotientModel { chart: generator.chart(), generator, domain }
    }

    /// Index `k` with `g^{−k}(p)` in the fundamental domain.
    pub fn domain_index(&self, p: Point) -> i64 {
        let l = self.generator.l;
        let coord = match self.domain {
            FundamentalDomain::Strip { .. } => p[0] / l,
            FundamentalDomain::Annulus { .. } => p[0].hypot(p[1]).ln() / l,
        };
        // snap values within rounding of an edge to the left edge
        let k = coord.floor();
        if coord - k > 1.0 - 1e-12 {
            k as i64 + 1
        } else {
            k as i64
        }
    }
}

pub fn deck_apply(motion: &DeckMotion, p: Point) -> Point {
    motion.apply(p)
}

/// Maps `p` into the fundamental domain by the appropriate power of the
/// generator. Points on the left (inner) edge are canonical.
pub fn project_to_fundamental_domain(p: Point, quotient: &QuotientModel) -> Point {
    let k = quotient.domain_index(p);
    quotient.generator.power_apply(p, -k)
}

/// Parameter change relating a lift to its deck image.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Reparam {
    /// `t ↦ t + L`
    Shift(f64),
    /// `t ↦ s·t`
    Scale(f64),
}

impl Reparam {
    pub fn apply(&self, t: f64) -> f64 {
        match *self {
            Reparam::Shift(l) => t + l,
            Reparam::Scale(s) => s * t,
        }
    }
}

/// `max_t |γ(reparam(t)) − g(γ(t))|` over the probe parameters.
pub fn check_deck_invariance<F>(curve: F, motion: &DeckMotion, reparam: Reparam, probes: &[f64]) -> f64
where
    F: Fn(f64) -> Point,
{
    probes.iter().fold(0.0, |worst, &t| {
        let a = curve(reparam.apply(t));
        let b = motion.apply(curve(t));
        let d = (a[0] - b[0]).hypot(a[1] - b[1]);
        if d.is_nan() {
            f64::INFINITY
        } else {
            worst.max(d)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    const KINDS: [DeckKind; 5] = [
        DeckKind::EuclTranslation,
        DeckKind::EuclGlide,
        DeckKind::Parabolic,
        DeckKind::HypTranslation,
        DeckKind::HypGlide,
    ];

    #[test]
    fn motions_are_isometries() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for kind in KINDS {
            let g = DeckMotion::new(kind, 0.7).unwrap();
            for _ in 0..100 {
                let p = [rng.gen_range(-3.0..3.0), rng.gen_range(0.1..3.0)];
                assert!(g.pullback_residual(p) < 1e-10, "{kind:?}");
            }
            assert_eq!(g.reverses_orientation(), matches!(kind, DeckKind::EuclGlide | DeckKind::HypGlide));
        }
    }

    #[test]
    fn documented_images() {
        let t = DeckMotion::new(DeckKind::EuclTranslation, 1.0).unwrap();
        assert_eq!(t.apply([0.0, 0.0]), [1.0, 0.0]);
        let l = 0.8;
        let h = DeckMotion::new(DeckKind::HypTranslation, l).unwrap();
        let q = h.apply([0.0, 1.0]);
        assert!(q[0].abs() < 1e-15 && (q[1] - l.exp()).abs() < 1e-15);
        let g = DeckMotion::new(DeckKind::HypGlide, l).unwrap();
        let q = g.apply([0.3, 2.0]);
        assert!((q[0] + l.exp() * 0.3).abs() < 1e-15 && (q[1] - 2.0 * l.exp()).abs() < 1e-14);
    }

    #[test]
    fn powers_and_jets_agree_with_apply() {
        for kind in KINDS {
            let g = DeckMotion::new(kind, 0.4).unwrap();
            let p = [0.3, 1.7];
            let twice = g.apply(g.apply(p));
            let pw = g.power_apply(p, 2);
            let g2 = g.power(2).apply(p);
            for (a, b) in [(twice, pw), (twice, g2)] {
                assert!((a[0] - b[0]).abs() < 1e-14 && (a[1] - b[1]).abs() < 1e-14);
            }
            let back = g.power_apply(g.apply(p), -1);
            assert!((back[0] - p[0]).abs() < 1e-14 && (back[1] - p[1]).abs() < 1e-14);
            let j = g.apply_jets([Jet::constant(p[0]), Jet::constant(p[1])]);
            assert_eq!([j[0].value(), j[1].value()], g.apply(p));
        }
    }

    #[test]
    fn fundamental_domain_projection() {
        let strip = QuotientModel::new(DeckMotion::new(DeckKind::EuclTranslation, 1.0).unwrap());
        let p = project_to_fundamental_domain([2.3, 0.5], &strip);
        assert!((p[0] - 0.3).abs() < 1e-12 && p[1] == 0.5);
        assert_eq!(project_to_fundamental_domain([1.0, 0.5], &strip), [0.0, 0.5]);
        let l = 0.9;
        let ann = QuotientModel::new(DeckMotion::new(DeckKind::HypTranslation, l).unwrap());
        let p = project_to_fundamental_domain([0.0, (2.5 * l).exp()], &ann);
        assert!((p[1] - (0.5 * l).exp()).abs() < 1e-12);
        let edge = project_to_fundamental_domain([0.0, l.exp()], &ann);
        assert!((edge[1] - 1.0).abs() < 1e-12);
        let again = project_to_fundamental_domain(p, &ann);
        assert_eq!(again, p);
    }

    #[test]
    fn broken_curve_has_large_residual() {
        let g = DeckMotion::new(DeckKind::EuclTranslation, 1.0).unwrap();
        let probes: Vec<f64> = (0..64).map(|i| i as f64 / 64.0).collect();
        let good = |t: f64| [t, 0.05 * (std::f64::consts::TAU * t).sin()];
        let bad = |t: f64| [t, 0.05 * (std::f64::consts::TAU * t / 1.1).sin()];
        assert!(check_deck_invariance(good, &g, Reparam::Shift(1.0), &probes) < 1e-12);
        assert!(check_deck_invariance(bad, &g, Reparam::Shift(1.0), &probes) > 0.01);
    }
}
