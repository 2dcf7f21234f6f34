//! Scaled complex arithmetic for overflow-safe products.
//!
//! Quasi-periodic products reach magnitudes like e^{2 pi m Im w} that
//! overflow f64 long before the mathematics becomes ill-conditioned.
//! `ScaledC` keeps a value as m * e^ln with the mantissa m renormalized
//! into a moderate band, so products of many large or tiny factors stay
//! representable and relative comparisons remain meaningful.

use num_complex::Complex64;

pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// The value m * e^ln.  After renormalization |m| lies in [1e-8, 1e8]
/// (or m = 0 with ln = 0 for the zero value).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledC {
    m: Complex64,
    ln: f64,
}

impl ScaledC {
    pub fn one() -> Self {
        ScaledC { m: Complex64::new(1.0, 0.0), ln: 0.0 }
    }

    pub fn zero() -> Self {
        ScaledC { m: Complex64::new(0.0, 0.0), ln: 0.0 }
    }

    pub fn from_c(c: Complex64) -> Self {
        ScaledC { m: c, ln: 0.0 }.renormed()
    }

    pub fn is_zero(&self) -> bool {
        self.m.re == 0.0 && self.m.im == 0.0
    }

    fn renormed(mut self) -> Self {
        let a = self.m.norm();
        if a == 0.0 {
            self.ln = 0.0;
            return self;
        }
        if !(1e-8..=1e8).contains(&a) {
            self.m /= a;
            self.ln += a.ln();
        }
        self
    }

    pub fn mul_c(self, c: Complex64) -> Self {
        self * ScaledC::from_c(c)
    }

    /// Multiply by exp(e) without ever forming exp(e) as an f64.
    pub fn mul_exp(self, e: Complex64) -> Self {
        if self.is_zero() {
            return ScaledC::zero();
        }
        ScaledC { m: self.m * Complex64::from_polar(1.0, e.im), ln: self.ln + e.re }.renormed()
    }

    pub fn powu(self, k: u32) -> Self {
        let mut acc = ScaledC::one();
        for _ in 0..k {
            acc = acc * self;
        }
        acc
    }

    /// ln |value|; -inf for zero.
    pub fn norm_ln(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.ln + self.m.norm().ln()
        }
    }

    /// Argument of the value (the scale e^ln is positive real).
    pub fn arg(&self) -> f64 {
        self.m.arg()
    }

    /// Collapse to a plain complex number; may overflow to infinity for
    /// extreme scales, which is acceptable for display purposes.
    pub fn to_c64(&self) -> Complex64 {
        if self.is_zero() {
            Complex64::new(0.0, 0.0)
        } else {
            self.m * self.ln.exp()
        }
    }
}

impl std::ops::Mul for ScaledC {
    type Output = ScaledC;

    fn mul(self, rhs: ScaledC) -> ScaledC {
        if self.is_zero() || rhs.is_zero() {
            return ScaledC::zero();
        }
        ScaledC { m: self.m * rhs.m, ln: self.ln + rhs.ln }.renormed()
    }
}

/// |a - b| / max(|a|, |b|), computed in the common scale so that values
/// far outside f64 range still compare correctly.  Returns 0 when both
/// are zero and 1 when exactly one is.
pub fn rel_diff(a: &ScaledC, b: &ScaledC) -> f64 {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return 0.0,
        (true, false) | (false, true) => return 1.0,
        _ => {}
    }
    let s = a.norm_ln().max(b.norm_ln());
    let va = a.m * (a.ln - s).exp();
    let vb = b.m * (b.ln - s).exp();
    (va - vb).norm() / va.norm().max(vb.norm())
}

/// exp(xi) - 1 with full relative accuracy near xi = 0.
pub fn expm1_c(xi: Complex64) -> Complex64 {
    let ex = xi.re.exp_m1();
    let (sy, cy) = xi.im.sin_cos();
    let cym1 = -2.0 * (xi.im / 2.0).sin().powi(2);
    Complex64::new(ex * cy + cym1, (ex + 1.0) * sy)
}

/// 1 - exp(xi) as a scaled value, stable for any Re xi: growing
/// exponentials are factored out as 1 - e^xi = -e^xi (1 - e^{-xi}).
pub fn one_minus_exp(xi: Complex64) -> ScaledC {
    if xi.re <= 0.0 {
        ScaledC::from_c(-expm1_c(xi))
    } else {
        ScaledC::from_c(expm1_c(-xi)).mul_exp(xi)
    }
}

/// Wrap an angle into (-pi, pi].
pub fn wrap_pi(x: f64) -> f64 {
    let y = x.rem_euclid(TWO_PI);
    if y > std::f64::consts::PI {
        y - TWO_PI
    } else {
        y
    }
}
