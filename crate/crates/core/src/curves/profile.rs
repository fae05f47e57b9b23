use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::curve::ClosedCurve;
use crate::error::{param_error, Result};

/// Grid size used when the caller does not choose one.
pub const DEFAULT_SAMPLES: usize = 4096;

/// How `dκ/ds` is obtained from the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Differentiation {
    /// Exact derivatives carried by the curve's jets.
    Analytic,
    /// 5-point central differences of κ on the uniform parameter grid.
    FivePoint,
}

/// Geodesic curvature sampled on a uniform grid over one period.
#[derive(Clone, Debug)]
pub struct CurvatureProfile {
    pub t: Vec<f64>,
    pub s: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub kappa: Vec<f64>,
    pub kappa_prime: Vec<f64>,
    pub kappa_second: Vec<f64>,
    pub speed: Vec<f64>,
    period: f64,
    length: f64,
    scheme: Differentiation,
    curve: ClosedCurve,
}

struct RawSample {
    x: f64,
    y: f64,
    kappa: f64,
    kappa_prime: f64,
    kappa_second: f64,
    speed: f64,
    speed_rate: f64,
}

pub fn curvature_profile(curve: &ClosedCurve, n: usize) -> Result<CurvatureProfile> {
    curvature_profile_with(curve, n, Differentiation::Analytic)
}

pub fn curvature_profile_with(curve: &ClosedCurve, n: usize, scheme: Differentiation) -> Result<CurvatureProfile> {
    if n < 16 {
        return Err(param_error(format!("profile needs at least 16 samples, got {n}")));
    }
    let period = curve.period();
    let h = period / n as f64;
    let t: Vec<f64> = (0..n).map(|i| h * i as f64).collect();
    let raw: Vec<RawSample> = t
        .par_iter()
        .map(|&ti| {
            let pos = curve.point(ti);
            curve.ambient().check(pos)?;
            let sample = curve.curvature_sample(ti)?;
            let (_, v) = curve.curvature_jets(ti)?;
            Ok(RawSample {
                x: pos[0],
                y: pos[1],
                kappa: sample.kappa,
                kappa_prime: sample.kappa_prime,
                kappa_second: sample.kappa_second,
                speed: sample.speed,
                speed_rate: v.derivative(1),
            })
        })
        .collect::<Result<_>>()?;

    let mut s = Vec::with_capacity(n);
    let mut acc = 0.0;
    for i in 0..n {
        s.push(acc);
        let (a, b) = (&raw[i], &raw[(i + 1) % n]);
        // cubic Hermite rule; speed is periodic even under glide closures
        acc += 0.5 * h * (a.speed + b.speed) + h * h / 12.0 * (a.speed_rate - b.speed_rate);
    }
    let length = acc;

    let kappa: Vec<f64> = raw.iter().map(|r| r.kappa).collect();
    let (kappa_prime, kappa_second) = match scheme {
        Differentiation::Analytic => (
            raw.iter().map(|r| r.kappa_prime).collect(),
            raw.iter().map(|r| r.kappa_second).collect(),
        ),
        Differentiation::FivePoint => {
            let sigma = curve.wrap_sign();
            let at = |i: isize| -> f64 {
                let n = n as isize;
                let wraps = i.div_euclid(n);
                let k = kappa[i.rem_euclid(n) as usize];
                if wraps % 2 == 0 {
                    k
                } else {
                    sigma * k
                }
            };
            let mut kp = Vec::with_capacity(n);
            let mut kpp = Vec::with_capacity(n);
            for i in 0..n as isize {
                let (m2, m1, c, p1, p2) = (at(i - 2), at(i - 1), at(i), at(i + 1), at(i + 2));
                let kt = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
                let ktt = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
                let r = &raw[i as usize];
                kp.push(kt / r.speed);
                kpp.push((ktt - kt * r.speed_rate / r.speed) / (r.speed * r.speed));
            }
            (kp, kpp)
        }
    };

    Ok(CurvatureProfile {
        s,
        x: raw.iter().map(|r| r.x).collect(),
        y: raw.iter().map(|r| r.y).collect(),
        speed: raw.iter().map(|r| r.speed).collect(),
        t,
        kappa,
        kappa_prime,
        kappa_second,
        period,
        length,
        scheme,
        curve: curve.clone(),
    })
}

impl CurvatureProfile {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn step(&self) -> f64 {
        self.period / self.len() as f64
    }

    /// Metric length of one period.
    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn wrap_sign(&self) -> f64 {
        self.curve.wrap_sign()
    }

    pub fn scheme(&self) -> Differentiation {
        self.scheme
    }

    pub fn curve(&self) -> &ClosedCurve {
        &self.curve
    }

    pub fn kappa_sup(&self) -> f64 {
        self.kappa.iter().fold(0.0, |m, k| m.max(k.abs()))
    }

    pub fn kappa_prime_sup(&self) -> f64 {
        self.kappa_prime.iter().fold(0.0, |m, k| m.max(k.abs()))
    }

    pub fn kappa_at(&self, t: f64) -> Result<f64> {
        Ok(self.curve.curvature_jets(t)?.0.value())
    }

    /// `dκ/ds` off the grid, using the same scheme as the profile.
    pub fn kappa_prime_at(&self, t: f64) -> Result<f64> {
        match self.scheme {
            Differentiation::Analytic => Ok(self.curve.curvature_sample(t)?.kappa_prime),
            Differentiation::FivePoint => Ok(self.stencil(t)?.0),
        }
    }

    /// `d²κ/ds²` off the grid.
    pub fn kappa_second_at(&self, t: f64) -> Result<f64> {
        match self.scheme {
            Differentiation::Analytic => Ok(self.curve.curvature_sample(t)?.kappa_second),
            Differentiation::FivePoint => Ok(self.stencil(t)?.1),
        }
    }

    fn stencil(&self, t: f64) -> Result<(f64, f64)> {
        let h = self.step();
        let mut k = [0.0; 5];
        for (j, slot) in k.iter_mut().enumerate() {
            *slot = self.kappa_at(t + h * (j as f64 - 2.0))?;
        }
        let (_, v) = self.curve.curvature_jets(t)?;
        let (v0, v1) = (v.value(), v.derivative(1));
        let kt = (k[0] - 8.0 * k[1] + 8.0 * k[3] - k[4]) / (12.0 * h);
        let ktt = (-k[0] + 16.0 * k[1] - 30.0 * k[2] + 16.0 * k[3] - k[4]) / (12.0 * h * h);
        Ok((kt / v0, (ktt - kt * v1 / v0) / (v0 * v0)))
    }

    /// CSV with header `t,s,x,y,kappa,kappa_prime`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,s,x,y,kappa,kappa_prime\n");
        for i in 0..self.len() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                self.t[i], self.s[i], self.x[i], self.y[i], self.kappa[i], self.kappa_prime[i]
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ConformalChart;
    use std::f64::consts::TAU;

    fn ellipse() -> ClosedCurve {
        ClosedCurve::new("ellipse", ConformalChart::Euclidean.into(), TAU, |t| {
            let (s, c) = t.sin_cos();
            [c * 2.0, s]
        })
        .unwrap()
    }

    #[test]
    fn unit_circle_profile_is_constant() {
        let c = ClosedCurve::new("circle", ConformalChart::Euclidean.into(), TAU, |t| {
            let (s, c) = t.sin_cos();
            [c, s]
        })
        .unwrap();
        let p = curvature_profile(&c, 128).unwrap();
        assert!(p.kappa.iter().all(|k| (k - 1.0).abs() < 1e-14));
        assert!(p.kappa_prime_sup() < 1e-13);
        assert!((p.length() - TAU).abs() < 1e-12);
    }

    #[test]
    fn horocycle_has_unit_curvature() {
        // a horizontal line only closes on a quotient; check the chart directly
        let pos = [crate::jet::Jet::variable(0.3), crate::jet::Jet::constant(1.0)];
        let (k, _) = ConformalChart::HalfPlane.curvature_jets(&pos).unwrap();
        assert!((k.value() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn ellipse_length_and_schemes_agree() {
        let e = ellipse();
        let a = curvature_profile(&e, 512).unwrap();
        let f = curvature_profile_with(&e, 512, Differentiation::FivePoint).unwrap();
        assert!((a.length() - e.length().unwrap()).abs() < 1e-9);
        let scale = a.kappa_prime_sup();
        for i in 0..a.len() {
            assert!((a.kappa_prime[i] - f.kappa_prime[i]).abs() < 1e-5 * scale);
        }
        assert!(a.s.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn csv_header_and_rows() {
        let csv = curvature_profile(&ellipse(), 32).unwrap().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("t,s,x,y,kappa,kappa_prime"));
        assert_eq!(lines.count(), 32);
    }
}
