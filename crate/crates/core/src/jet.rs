//! Truncated Taylor arithmetic.
//!
//! A [`Jet`] holds the normalized Taylor coefficients `c_k = f^(k)(t0) / k!`
//! of a scalar function at a base point, for `k < JET_LEN`. Arithmetic and
//! the elementary functions propagate all coefficients exactly (up to
//! rounding), which gives every curve built from closed-form expressions
//! analytic derivatives of all orders we need without symbolic work.
//!
//! Differentiating a jet ([`Jet::deriv`]) shifts the coefficients down and
//! loses the top one, so a quantity built from `m`-th derivatives of a curve
//! is exact through degree `JET_LEN - 1 - m`.

use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Number of Taylor coefficients carried (degrees `0..JET_LEN`).
pub const JET_LEN: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    c: [f64; JET_LEN],
}

impl Default for Jet {
    fn default() -> Self {
        Jet::constant(0.0)
    }
}

impl Jet {
    pub const fn from_coeffs(c: [f64; JET_LEN]) -> Self {
        Jet { c }
    }

    pub const fn constant(v: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = v;
        Jet { c }
    }

    /// The independent variable expanded at `t0`.
    pub const fn variable(t0: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = t0;
        c[1] = 1.0;
        Jet { c }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    #[inline]
    pub fn coeff(&self, k: usize) -> f64 {
        self.c[k]
    }

    pub fn coeffs(&self) -> &[f64; JET_LEN] {
        &self.c
    }

    /// `k`-th derivative at the base point.
    pub fn derivative(&self, k: usize) -> f64 {
        let mut f = 1.0;
        for j in 2..=k {
            f *= j as f64;
        }
        self.c[k] * f
    }

    /// Jet of the derivative. The top coefficient becomes zero (unknown).
    pub fn deriv(&self) -> Jet {
        let mut c = [0.0; JET_LEN];
        for k in 0..JET_LEN - 1 {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Jet { c }
    }

    /// Jet of the antiderivative vanishing at the base point.
    pub fn integral(&self) -> Jet {
        let mut c = [0.0; JET_LEN];
        for k in 1..JET_LEN {
            c[k] = self.c[k - 1] / k as f64;
        }
        Jet { c }
    }

    pub fn scale(&self, s: f64) -> Jet {
        let mut c = self.c;
        c.iter_mut().for_each(|v| *v *= s);
        Jet { c }
    }

    pub fn recip(&self) -> Jet {
        Jet::constant(1.0) / *self
    }

    pub fn square(&self) -> Jet {
        *self * *self
    }

    pub fn sin_cos(&self) -> (Jet, Jet) {
        let a = &self.c;
        let mut s = [0.0; JET_LEN];
        let mut c = [0.0; JET_LEN];
        s[0] = a[0].sin();
        c[0] = a[0].cos();
        for k in 1..JET_LEN {
            let (mut sk, mut ck) = (0.0, 0.0);
            for j in 1..=k {
                let ja = j as f64 * a[j];
                sk += ja * c[k - j];
                ck -= ja * s[k - j];
            }
            s[k] = sk / k as f64;
            c[k] = ck / k as f64;
        }
        (Jet { c: s }, Jet { c })
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }

    pub fn sinh_cosh(&self) -> (Jet, Jet) {
        let a = &self.c;
        let mut s = [0.0; JET_LEN];
        let mut c = [0.0; JET_LEN];
        s[0] = a[0].sinh();
        c[0] = a[0].cosh();
        for k in 1..JET_LEN {
            let (mut sk, mut ck) = (0.0, 0.0);
            for j in 1..=k {
                let ja = j as f64 * a[j];
                sk += ja * c[k - j];
                ck += ja * s[k - j];
            }
            s[k] = sk / k as f64;
            c[k] = ck / k as f64;
        }
        (Jet { c: s }, Jet { c })
    }

    pub fn sinh(&self) -> Jet {
        self.sinh_cosh().0
    }

    pub fn cosh(&self) -> Jet {
        self.sinh_cosh().1
    }

    pub fn exp(&self) -> Jet {
        let a = &self.c;
        let mut e = [0.0; JET_LEN];
        e[0] = a[0].exp();
        for k in 1..JET_LEN {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * a[j] * e[k - j];
            }
            e[k] = acc / k as f64;
        }
        Jet { c: e }
    }

    pub fn ln(&self) -> Jet {
        let a = &self.c;
        let mut l = [0.0; JET_LEN];
        l[0] = a[0].ln();
        for k in 1..JET_LEN {
            let mut acc = 0.0;
            for j in 1..k {
                acc += j as f64 * l[j] * a[k - j];
            }
            l[k] = (a[k] - acc / k as f64) / a[0];
        }
        Jet { c: l }
    }

    pub fn sqrt(&self) -> Jet {
        let a = &self.c;
        let mut q = [0.0; JET_LEN];
        q[0] = a[0].sqrt();
        for k in 1..JET_LEN {
            let mut acc = 0.0;
            for j in 1..k {
                acc += q[j] * q[k - j];
            }
            q[k] = (a[k] - acc) / (2.0 * q[0]);
        }
        Jet { c: q }
    }

    /// Real power `self^p`; requires a positive base value.
    pub fn powf(&self, p: f64) -> Jet {
        let a = &self.c;
        let mut w = [0.0; JET_LEN];
        w[0] = a[0].powf(p);
        for k in 1..JET_LEN {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += (p * j as f64 - (k - j) as f64) * a[j] * w[k - j];
            }
            w[k] = acc / (k as f64 * a[0]);
        }
        Jet { c: w }
    }

    pub fn powi(&self, n: u32) -> Jet {
        let mut out = Jet::constant(1.0);
        for _ in 0..n {
            out *= *self;
        }
        out
    }

    /// Evaluates the power series `Σ outer[k] h^k` at `h = self - self.value()`.
    ///
    /// `outer` is a Taylor expansion of some function around `self.value()`;
    /// the result is the jet of the composition.
    pub fn compose(&self, outer: &Jet) -> Jet {
        let mut h = *self;
        h.c[0] = 0.0;
        let mut acc = Jet::constant(outer.c[JET_LEN - 1]);
        for k in (0..JET_LEN - 1).rev() {
            acc = acc * h + outer.c[k];
        }
        acc
    }

    /// Series reversion. `self` is `A(h) = a0 + a1 h + ...` with `a1 != 0`;
    /// returns the jet of `h(δ)` solving `A(h) = a0 + δ`, expanded at `δ = 0`.
    pub fn reversion(&self) -> Jet {
        let a1 = self.c[1];
        let delta = Jet::variable(0.0);
        let mut h = delta.scale(1.0 / a1);
        for _ in 0..JET_LEN {
            // h = (δ - Σ_{k≥2} a_k h^k) / a1
            let mut higher = Jet::constant(0.0);
            let mut hp = h * h;
            for k in 2..JET_LEN {
                higher += hp.scale(self.c[k]);
                hp *= h;
            }
            h = (delta - higher).scale(1.0 / a1);
        }
        h
    }
}

impl From<f64> for Jet {
    fn from(v: f64) -> Self {
        Jet::constant(v)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Jet) -> Jet {
        for k in 0..JET_LEN {
            self.c[k] += rhs.c[k];
        }
        self
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.c[0] += rhs;
        self
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        rhs + self
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        *self = *self + rhs;
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: Jet) -> Jet {
        for k in 0..JET_LEN {
            self.c[k] -= rhs.c[k];
        }
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: f64) -> Jet {
        self.c[0] -= rhs;
        self
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        -rhs + self
    }
}

impl SubAssign for Jet {
    fn sub_assign(&mut self, rhs: Jet) {
        *self = *self - rhs;
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut c = [0.0; JET_LEN];
        for k in 0..JET_LEN {
            let mut acc = 0.0;
            for j in 0..=k {
                acc += self.c[j] * rhs.c[k - j];
            }
            c[k] = acc;
        }
        Jet { c }
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        rhs.scale(self)
    }
}

impl MulAssign for Jet {
    fn mul_assign(&mut self, rhs: Jet) {
        *self = *self * rhs;
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        let mut w = [0.0; JET_LEN];
        for k in 0..JET_LEN {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= rhs.c[j] * w[k - j];
            }
            w[k] = acc / rhs.c[0];
        }
        Jet { c: w }
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, rhs: f64) -> Jet {
        self.scale(1.0 / rhs)
    }
}

impl Div<Jet> for f64 {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        Jet::constant(self) / rhs
    }
}

/// 2D cross product `a.x b.y - a.y b.x` of jet vectors.
pub fn cross2(a: &[Jet; 2], b: &[Jet; 2]) -> Jet {
    a[0] * b[1] - a[1] * b[0]
}

pub fn dot2(a: &[Jet; 2], b: &[Jet; 2]) -> Jet {
    a[0] * b[0] + a[1] * b[1]
}

pub fn dot3(a: &[Jet; 3], b: &[Jet; 3]) -> Jet {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: &[Jet; 3], b: &[Jet; 3]) -> [Jet; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn deriv2(v: &[Jet; 2]) -> [Jet; 2] {
    [v[0].deriv(), v[1].deriv()]
}

pub fn deriv3(v: &[Jet; 3]) -> [Jet; 3] {
    [v[0].deriv(), v[1].deriv(), v[2].deriv()]
}

#[cfg(test)]
mod tests {
    use super::*;

    // Finite-difference oracle for the k-th derivative of a scalar function.
    fn fd(f: impl Fn(f64) -> f64, t: f64, k: usize) -> f64 {
        let h = 1e-2;
        match k {
            1 => (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h),
            2 => {
                (-f(t - 2.0 * h) + 16.0 * f(t - h) - 30.0 * f(t) + 16.0 * f(t + h)
                    - f(t + 2.0 * h))
                    / (12.0 * h * h)
            }
            3 => {
                (f(t + 2.0 * h) - 2.0 * f(t + h) + 2.0 * f(t - h) - f(t - 2.0 * h))
                    / (2.0 * h * h * h)
            }
            _ => unreachable!(),
        }
    }

    fn check(jf: impl Fn(Jet) -> Jet, f: impl Fn(f64) -> f64 + Copy, t: f64) {
        let j = jf(Jet::variable(t));
        assert!((j.value() - f(t)).abs() < 1e-12);
        assert!((j.derivative(1) - fd(f, t, 1)).abs() < 1e-6, "d1");
        assert!((j.derivative(2) - fd(f, t, 2)).abs() < 1e-5, "d2");
        assert!((j.derivative(3) - fd(f, t, 3)).abs() < 1e-2, "d3");
    }

    #[test]
    fn elementary_functions_match_finite_differences() {
        let t = 0.37;
        check(|x| x.sin() * x.exp(), |x| x.sin() * x.exp(), t);
        check(|x| x.cos() / (1.0 + x * x), |x| x.cos() / (1.0 + x * x), t);
        check(|x| (x + 2.0).ln(), |x| (x + 2.0).ln(), t);
        check(|x| (x * x + 1.0).sqrt(), |x| (x * x + 1.0).sqrt(), t);
        check(|x| (x + 1.5).powf(-1.5), |x| (x + 1.5).powf(-1.5), t);
        check(|x| x.cosh() * x.sinh(), |x| x.cosh() * x.sinh(), t);
    }

    #[test]
    fn exact_polynomial_coefficients() {
        let x = Jet::variable(2.0);
        let p = x * x * x;
        assert_eq!(p.coeffs()[..4], [8.0, 12.0, 6.0, 1.0]);
        assert_eq!(p.deriv().coeffs()[..3], [12.0, 12.0, 3.0]);
    }

    #[test]
    fn compose_matches_direct_evaluation() {
        let t = Jet::variable(0.4);
        let inner = t.sin() * 2.0;
        let outer = Jet::variable(inner.value()).exp();
        let composed = inner.compose(&outer);
        let direct = inner.exp();
        for k in 0..JET_LEN {
            assert!((composed.coeff(k) - direct.coeff(k)).abs() < 1e-12);
        }
    }

    #[test]
    fn reversion_inverts_the_series() {
        // A(h) = sinh(h) around 0 has inverse asinh(δ).
        let a = Jet::variable(0.0).sinh();
        let h = a.reversion();
        let back = h.compose(&a);
        assert!((back.coeff(1) - 1.0).abs() < 1e-14);
        for k in 2..JET_LEN {
            assert!(back.coeff(k).abs() < 1e-13, "k={k}");
        }
        // asinh'''(0) = -1
        assert!((h.derivative(3) + 1.0).abs() < 1e-12);
    }
}
