use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::curve::ClosedCurve;
use crate::error::{param_error, GeomError, Result};
use crate::geom::ConformalChart;
use crate::jet::Jet;
use crate::maps::polyline_is_simple;

const BUDGET: usize = 1000;
const CHECK_GRID: usize = 1024;
/// Reject nearly singular samples; their vertices need huge grids.
const MIN_SPEED_RATIO: f64 = 0.1;

/// A random simple closed curve in the Euclidean chart,
/// `(x, y)(t) = Σ_{k=1}^{m} (a_k cos kt + b_k sin kt, c_k cos kt + d_k sin kt)`
/// with coefficients uniform in `[−1, 1]` scaled by `decay^{k−1}`.
///
/// Candidates are drawn from a ChaCha8 stream seeded by `seed` until one is
/// regular and its polyline is simple.
pub fn random_simple_closed_curve(seed: u64, m: usize, decay: f64) -> Result<ClosedCurve> {
    if m < 2 {
        return Err(param_error(format!("need at least 2 harmonics, got {m}")));
    }
    if !(0.0..=1.0).contains(&decay) {
        return Err(param_error(format!("decay {decay} must lie in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..BUDGET {
        let coeffs: Vec<[f64; 4]> = (1..=m)
            .map(|k| {
                let w = decay.powi(k as i32 - 1);
                [0; 4].map(|_| w * rng.gen_range(-1.0..1.0))
            })
            .collect();
        let path = move |t: Jet| {
            let (mut x, mut y) = (Jet::constant(0.0), Jet::constant(0.0));
            for (k, c) in coeffs.iter().enumerate() {
                let (s, co) = (t * (k + 1) as f64).sin_cos();
                x += co * c[0] + s * c[1];
                y += co * c[2] + s * c[3];
            }
            [x, y]
        };
        let curve = ClosedCurve::new(&format!("random(seed={seed})"), ConformalChart::Euclidean.into(), std::f64::consts::TAU, path)?;
        let speeds: Vec<f64> = (0..CHECK_GRID)
            .map(|i| {
                let v = curve.velocity(std::f64::consts::TAU * i as f64 / CHECK_GRID as f64);
                v[0].hypot(v[1])
            })
            .collect();
        let mean = speeds.iter().sum::<f64>() / CHECK_GRID as f64;
        let min = speeds.iter().cloned().fold(f64::INFINITY, f64::min);
        if !(min > MIN_SPEED_RATIO * mean) {
            continue;
        }
        if polyline_is_simple(&curve.polyline(CHECK_GRID)) {
            return Ok(curve);
        }
    }
    Err(GeomError::Generation { tries: BUDGET })
}

/// A random curve on the sphere, in stereographic coordinates, that is
/// symmetric under the antipodal map.
///
/// On the unit sphere the curve is `(cos θ, sin θ, g(θ)) / √(1 + g²)` with
/// `g(θ) = Σ_{k odd ≤ 2m−1} (a_k cos kθ + b_k sin kθ)`, so `θ ↦ θ + π` sends
/// each point to its antipode. It is a graph over the equator, hence simple.
/// Samples whose harmonics above the first are negligible (nearly great
/// circles) are redrawn.
pub fn random_antipodal_sphere_curve(seed: u64, m: usize, decay: f64) -> Result<ClosedCurve> {
    if m < 2 {
        return Err(param_error(format!("need at least 2 odd harmonics, got {m}")));
    }
    if !(0.0..=1.0).contains(&decay) || decay == 0.0 {
        return Err(param_error(format!("decay {decay} must lie in (0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..BUDGET {
        let coeffs: Vec<(usize, f64, f64)> = (0..m)
            .map(|j| {
                let w = decay.powi(j as i32);
                (2 * j + 1, w * rng.gen_range(-1.0..1.0), w * rng.gen_range(-1.0..1.0))
            })
            .collect();
        let upper: f64 = coeffs[1..].iter().map(|c| c.1.hypot(c.2)).sum();
        if upper < 0.05 * decay {
            continue;
        }
        let path = move |t: Jet| {
            let mut g = Jet::constant(0.0);
            for &(k, a, b) in &coeffs {
                let (s, c) = (t * k as f64).sin_cos();
                g += c * a + s * b;
            }
            let norm = (g * g + 1.0).sqrt();
            let (s, c) = t.sin_cos();
            // stereographic projection from the north pole
            let den = (norm - g).recip();
            [c * den, s * den]
        };
        return ClosedCurve::new(
            &format!("antipodal(seed={seed})"),
            ConformalChart::SphereStereo.into(),
            std::f64::consts::TAU,
            path,
        );
    }
    Err(GeomError::Generation { tries: BUDGET })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{count_vertices, curvature_profile, DEFAULT_TOL};

    #[test]
    fn deterministic_per_seed() {
        let a = random_simple_closed_curve(42, 6, 0.5).unwrap();
        let b = random_simple_closed_curve(42, 6, 0.5).unwrap();
        for i in 0..100 {
            let t = 0.0631 * i as f64;
            assert_eq!(a.point(t).map(f64::to_bits), b.point(t).map(f64::to_bits));
        }
        let c = random_simple_closed_curve(43, 6, 0.5).unwrap();
        assert_ne!(a.point(0.3), c.point(0.3));
    }

    #[test]
    fn pure_first_harmonic_is_an_ellipse() {
        let c = random_simple_closed_curve(1, 3, 0.0).unwrap();
        let r = count_vertices(&curvature_profile(&c, 1024).unwrap(), DEFAULT_TOL).unwrap();
        assert!(r.all_critical || r.count() == Some(4));
    }

    #[test]
    fn antipodal_curves_have_six_inflections() {
        use crate::curves::count_inflections;
        for seed in 0..5 {
            let c = random_antipodal_sphere_curve(seed, 3, 0.5).unwrap();
            let (x, y) = (c.point(0.4), c.point(0.4 + std::f64::consts::PI));
            // antipode in stereographic coordinates is −p/|p|²
            let r2 = x[0] * x[0] + x[1] * x[1];
            assert!((y[0] + x[0] / r2).abs() < 1e-12 && (y[1] + x[1] / r2).abs() < 1e-12);
            let r = count_inflections(&curvature_profile(&c, 4096).unwrap(), DEFAULT_TOL).unwrap();
            let n = r.count().unwrap();
            assert!(n >= 6 && n % 4 == 2, "seed {seed}: {n}");
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(random_simple_closed_curve(0, 1, 0.5).is_err());
        assert!(random_simple_closed_curve(0, 4, 1.5).is_err());
    }
}
