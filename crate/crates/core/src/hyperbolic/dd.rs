//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64`s
//! carrying about 32 significant digits.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::Mat2;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.2246467991473532e-16,
    };

    pub const fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let y = self.hi.sqrt();
        let (p, e) = two_prod(y, y);
        let r = (self - Dd { hi: p, lo: e }).to_f64();
        let (s, t) = quick_two_sum(y, r / (2.0 * y));
        Dd { hi: s, lo: t }
    }

    /// Natural logarithm to about `f64` precision relative to the result.
    pub fn ln(self) -> f64 {
        self.hi.ln() + self.lo / self.hi
    }

    /// `(sin x, cos x)` for moderate `|x|`.
    pub fn sin_cos(self) -> (Dd, Dd) {
        const HALVINGS: i32 = 3;
        let x = self * Dd::new((-HALVINGS as f64).exp2());
        let (mut s, mut c) = (Dd::ZERO, Dd::ZERO);
        let mut term = Dd::ONE;
        for k in 0..20 {
            // term = x^(2k) / (2k)!
            c = if k % 2 == 0 { c + term } else { c - term };
            let odd = term * x / Dd::new((2 * k + 1) as f64);
            s = if k % 2 == 0 { s + odd } else { s - odd };
            term = odd * x / Dd::new((2 * k + 2) as f64);
        }
        let two = Dd::new(2.0);
        for _ in 0..HALVINGS {
            let (s2, c2) = (two * s * c, c * c - s * s);
            s = s2;
            c = c2;
        }
        (s, c)
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::new(x)
    }
}

impl Neg for Dd {
    type Output = Dd;

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;

    fn sub(self, o: Dd) -> Dd {
        self + -o
    }
}

impl Mul for Dd {
    type Output = Dd;

    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi));
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;

    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub fn polar(angle: Dd) -> Cdd {
        let (s, c) = angle.sin_cos();
        Cdd { re: c, im: s }
    }

    pub fn real(x: Dd) -> Cdd {
        Cdd { re: x, im: Dd::ZERO }
    }
}

impl Add for Cdd {
    type Output = Cdd;

    fn add(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Mul for Cdd {
    type Output = Cdd;

    fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

/// Real 2×2 matrix with double-double entries.
#[derive(Debug, Clone, Copy)]
pub(crate) struct DdMat2 {
    pub a: Dd,
    pub b: Dd,
    pub c: Dd,
    pub d: Dd,
}

impl DdMat2 {
    pub const IDENTITY: DdMat2 = DdMat2 {
        a: Dd::ONE,
        b: Dd::ZERO,
        c: Dd::ZERO,
        d: Dd::ONE,
    };

    pub fn new(a: Dd, b: Dd, c: Dd, d: Dd) -> DdMat2 {
        DdMat2 { a, b, c, d }
    }

    pub fn to_mat2(self) -> Mat2 {
        Mat2::new(self.a.to_f64(), self.b.to_f64(), self.c.to_f64(), self.d.to_f64())
    }

    pub fn trace(&self) -> Dd {
        self.a + self.d
    }

    /// Inverse assuming unit determinant.
    pub fn inverse(&self) -> DdMat2 {
        DdMat2::new(self.d, -self.b, -self.c, self.a)
    }

    /// `diag(σ, 1/σ) · self`.
    pub fn scale_rows(&self, sigma: Dd) -> DdMat2 {
        let inv = Dd::ONE / sigma;
        DdMat2::new(self.a * sigma, self.b * sigma, self.c * inv, self.d * inv)
    }

    /// `|self(i)|²`.
    pub fn image_of_i_norm_sqr(&self) -> Dd {
        (self.a * self.a + self.b * self.b) / (self.c * self.c + self.d * self.d)
    }

    pub fn apply_i(&self) -> Complex64 {
        let den = self.c * self.c + self.d * self.d;
        let re = (self.a * self.c + self.b * self.d) / den;
        // unit determinant gives Im = 1/den
        Complex64::new(re.to_f64(), (Dd::ONE / den).to_f64())
    }

    pub fn max_abs(&self) -> f64 {
        self.a.hi.abs().max(self.b.hi.abs()).max(self.c.hi.abs()).max(self.d.hi.abs())
    }
}

impl Mul for DdMat2 {
    type Output = DdMat2;

    fn mul(self, o: DdMat2) -> DdMat2 {
        DdMat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}
