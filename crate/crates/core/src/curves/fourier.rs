use crate::jet::Jet;

/// Real trigonometric polynomial
/// `a0 + Σ_{k=1}^{m} (a_k cos kωt + b_k sin kωt)` with `ω = 2π/period`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigInterpolant {
    omega: f64,
    a0: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TrigInterpolant {
    pub fn new(period: f64, a0: f64, cos: Vec<f64>, sin: Vec<f64>) -> Self {
        assert_eq!(cos.len(), sin.len());
        TrigInterpolant { omega: std::f64::consts::TAU / period, a0, cos, sin }
    }

    /// Interpolates equispaced samples `values[j] = f(j·period/n)`. The
    /// Nyquist mode of an even-length grid is dropped.
    pub fn from_samples(values: &[f64], period: f64) -> Self {
        let n = values.len();
        let m = (n - 1) / 2;
        let mut cos = vec![0.0; m];
        let mut sin = vec![0.0; m];
        let a0 = values.iter().sum::<f64>() / n as f64;
        for k in 1..=m {
            let (mut a, mut b) = (0.0, 0.0);
            for (j, v) in values.iter().enumerate() {
                // reduce the phase index exactly before converting to an angle
                let phase = std::f64::consts::TAU * ((k * j) % n) as f64 / n as f64;
                a += v * phase.cos();
                b += v * phase.sin();
            }
            cos[k - 1] = 2.0 * a / n as f64;
            sin[k - 1] = 2.0 * b / n as f64;
        }
        TrigInterpolant::new(period, a0, cos, sin)
    }

    /// Drops the tail of harmonics whose amplitude is below `rel` times the
    /// largest amplitude.
    pub fn truncated(mut self, rel: f64) -> Self {
        let amp: Vec<f64> = self.cos.iter().zip(&self.sin).map(|(a, b)| a.hypot(*b)).collect();
        let max = amp.iter().cloned().fold(0.0, f64::max);
        let keep = amp.iter().rposition(|&a| a > rel * max).map_or(0, |i| i + 1);
        self.cos.truncate(keep);
        self.sin.truncate(keep);
        self
    }

    pub fn harmonics(&self) -> usize {
        self.cos.len()
    }

    pub fn eval_jet(&self, t: Jet) -> Jet {
        let (s1, c1) = (t * self.omega).sin_cos();
        let (mut s, mut c) = (s1, c1);
        let mut acc = Jet::constant(self.a0);
        for k in 0..self.cos.len() {
            acc += c * self.cos[k] + s * self.sin[k];
            let next_c = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = next_c;
        }
        acc
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_jet(Jet::constant(t)).value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_band_limited_signal() {
        let f = |t: f64| 0.5 + (2.0 * t).cos() - 0.25 * (3.0 * t).sin();
        let n = 16;
        let samples: Vec<f64> = (0..n).map(|j| f(std::f64::consts::TAU * j as f64 / n as f64)).collect();
        let tp = TrigInterpolant::from_samples(&samples, std::f64::consts::TAU).truncated(1e-12);
        assert_eq!(tp.harmonics(), 3);
        for i in 0..40 {
            let t = 0.17 * i as f64;
            assert!((tp.eval(t) - f(t)).abs() < 1e-13);
            let d = tp.eval_jet(Jet::variable(t)).derivative(1);
            assert!((d - (-2.0 * (2.0 * t).sin() - 0.75 * (3.0 * t).cos())).abs() < 1e-12);
        }
    }
}
