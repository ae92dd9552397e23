use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use super::KleinianError;

/// Tolerance on `|ad - bc - 1|` for a normalized matrix.
pub const DET_TOLERANCE: f64 = 1e-12;
/// Tolerance on `tr² - 4` for parabolics and on `Im tr²` for elliptics.
pub const TRACE_TOLERANCE: f64 = 1e-9;

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Finite(Complex64),
    Infinity,
}

impl Point {
    pub fn new(re: f64, im: f64) -> Point {
        Point::Finite(Complex64::new(re, im))
    }

    pub fn finite(self) -> Option<Complex64> {
        match self {
            Point::Finite(z) => Some(z),
            Point::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Point::Infinity)
    }

    /// Chordal distance on the sphere of diameter 2; at most 2.
    pub fn chordal(self, other: Point) -> f64 {
        match (self, other) {
            (Point::Infinity, Point::Infinity) => 0.0,
            (Point::Finite(z), Point::Infinity) | (Point::Infinity, Point::Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
            (Point::Finite(z), Point::Finite(w)) => {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
            }
        }
    }

    /// Lexicographic by real then imaginary part, `∞` last.
    pub fn canonical_cmp(&self, other: &Point) -> std::cmp::Ordering {
        match (self, other) {
            (Point::Infinity, Point::Infinity) => std::cmp::Ordering::Equal,
            (Point::Infinity, _) => std::cmp::Ordering::Greater,
            (_, Point::Infinity) => std::cmp::Ordering::Less,
            (Point::Finite(z), Point::Finite(w)) => z.re.total_cmp(&w.re).then(z.im.total_cmp(&w.im)),
        }
    }
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Point {
        if z.is_finite() {
            Point::Finite(z)
        } else {
            Point::Infinity
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "inf"),
            Point::Finite(z) => write!(f, "{:.16e} {:.16e}", z.re, z.im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

/// Fixed points of a non-identity transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedPoints {
    One(Point),
    /// Attracting first when loxodromic.
    Two(Point, Point),
}

impl FixedPoints {
    pub fn points(&self) -> Vec<Point> {
        match *self {
            FixedPoints::One(p) => vec![p],
            FixedPoints::Two(p, q) => vec![p, q],
        }
    }
}

/// An element of `PSL(2, C)` stored with unit determinant and canonical sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mobius {
    /// Normalizes to unit determinant with the first significant entry in the
    /// right half-plane.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Mobius, KleinianError> {
        let det = a * d - b * c;
        let scale = [a, b, c, d].iter().map(|x| x.norm_sqr()).fold(0.0, f64::max);
        if !det.is_finite() || det.norm() <= 1e-300 || det.norm() <= 1e-24 * scale {
            return Err(KleinianError::Singular);
        }
        let k = det.sqrt().inv();
        Ok(Mobius::from_normalized(a * k, b * k, c * k, d * k))
    }

    fn from_normalized(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Mobius {
        let m = Mobius { a, b, c, d };
        let big = m.max_abs();
        let lead = [a, b, c, d].into_iter().find(|x| x.norm() > 1e-14 * big).unwrap_or(a);
        if lead.re < 0.0 || (lead.re == 0.0 && lead.im < 0.0) {
            Mobius { a: -a, b: -b, c: -c, d: -d }
        } else {
            m
        }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Result<Mobius, KleinianError> {
        Mobius::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Mobius {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Mobius { a: one, b: zero, c: zero, d: one }
    }

    /// `z -> k z`.
    pub fn dilation(k: Complex64) -> Result<Mobius, KleinianError> {
        Mobius::new(k, 0.0.into(), 0.0.into(), 1.0.into())
    }

    pub fn compose(&self, other: &Mobius) -> Mobius {
        *self * *other
    }

    pub fn inverse(&self) -> Mobius {
        Mobius::from_normalized(self.d, -self.b, -self.c, self.a)
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn max_abs(&self) -> f64 {
        [self.a, self.b, self.c, self.d].iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference, minimized over the sign of `other`.
    pub fn distance(&self, other: &Mobius) -> f64 {
        let diff = |s: f64| {
            [(self.a, other.a), (self.b, other.b), (self.c, other.c), (self.d, other.d)]
                .iter()
                .map(|(x, y)| (x - y * s).norm())
                .fold(0.0, f64::max)
        };
        diff(1.0).min(diff(-1.0))
    }

    pub fn apply(&self, p: Point) -> Point {
        match p {
            Point::Infinity => {
                if self.c.norm() == 0.0 {
                    Point::Infinity
                } else {
                    Point::Finite(self.a / self.c)
                }
            }
            Point::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() == 0.0 {
                    Point::Infinity
                } else {
                    Point::from((self.a * z + self.b) / den)
                }
            }
        }
    }

    pub fn classify(&self) -> Kind {
        if self.distance(&Mobius::identity()) <= DET_TOLERANCE {
            return Kind::Identity;
        }
        let t2 = self.trace() * self.trace();
        if (t2 - 4.0).norm() <= TRACE_TOLERANCE {
            Kind::Parabolic
        } else if t2.im.abs() <= TRACE_TOLERANCE && (0.0..4.0).contains(&t2.re) {
            Kind::Elliptic
        } else {
            Kind::Loxodromic
        }
    }

    pub fn fixed_points(&self) -> Result<FixedPoints, KleinianError> {
        let kind = self.classify();
        if kind == Kind::Identity {
            return Err(KleinianError::IsIdentity);
        }
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let tiny = 1e-14 * self.max_abs();
        let (p, q) = if c.norm() <= tiny {
            // affine map z -> (a z + b)/d fixes ∞
            if kind == Kind::Parabolic {
                return Ok(FixedPoints::One(Point::Infinity));
            }
            (Point::Infinity, Point::Finite(b / (d - a)))
        } else {
            if kind == Kind::Parabolic {
                return Ok(FixedPoints::One(Point::Finite((a - d) / (2.0 * c))));
            }
            // roots of c z² + (d - a) z - b, the second from the product -b/c
            let disc = ((a + d) * (a + d) - 4.0).sqrt();
            let big = if (a - d + disc).norm() >= (a - d - disc).norm() { a - d + disc } else { a - d - disc };
            (Point::Finite(big / (2.0 * c)), Point::from(-2.0 * b / big))
        };
        if kind == Kind::Loxodromic && self.multiplier_at(p).norm() > 1.0 {
            Ok(FixedPoints::Two(q, p))
        } else {
            Ok(FixedPoints::Two(p, q))
        }
    }

    /// Derivative at a fixed point; below one in modulus at an attracting
    /// point.
    pub fn multiplier_at(&self, p: Point) -> Complex64 {
        match p {
            // conjugating by z -> 1/z turns the affine map into w -> (d/a) w
            Point::Infinity => self.d / self.a,
            Point::Finite(z) => (self.c * z + self.d).powi(-2),
        }
    }

    /// Attracting fixed point of a loxodromic, the fixed point of a
    /// parabolic, and the first fixed point otherwise.
    pub fn attracting(&self) -> Option<Point> {
        match self.fixed_points().ok()? {
            FixedPoints::One(p) | FixedPoints::Two(p, _) => Some(p),
        }
    }
}

/// `tr(A B A⁻¹ B⁻¹)`, which does not depend on the signs of `A` and `B`.
pub fn commutator_trace(a: &Mobius, b: &Mobius) -> Complex64 {
    type M = [Complex64; 4];
    let mul = |x: M, y: M| -> M {
        [
            x[0] * y[0] + x[1] * y[2],
            x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3],
        ]
    };
    let am = [a.a, a.b, a.c, a.d];
    let bm = [b.a, b.b, b.c, b.d];
    let ai = [a.d, -a.b, -a.c, a.a];
    let bi = [b.d, -b.b, -b.c, b.a];
    let m = mul(mul(am, bm), mul(ai, bi));
    m[0] + m[3]
}

impl Mul for Mobius {
    type Output = Mobius;

    fn mul(self, o: Mobius) -> Mobius {
        Mobius::from_normalized(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inverse_composes_to_identity() {
        let m = Mobius::new(c(1.0, 2.0), c(0.5, -1.0), c(3.0, 0.1), c(-2.0, 1.0)).unwrap();
        assert!((m * m.inverse()).distance(&Mobius::identity()) <= 1e-12);
        assert!((m.det() - 1.0).norm() <= DET_TOLERANCE);
    }

    #[test]
    fn sign_is_canonical() {
        let m = Mobius::real(-2.0, -1.0, -1.0, -1.0).unwrap();
        assert!(m.a.re > 0.0);
        assert_eq!(m, Mobius::real(2.0, 1.0, 1.0, 1.0).unwrap());
    }

    #[test]
    fn infinity_handling() {
        let t = Mobius::real(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(t.apply(Point::Infinity), Point::Infinity);
        let s = Mobius::real(0.0, -1.0, 1.0, 0.0).unwrap();
        assert_eq!(s.apply(Point::new(0.0, 0.0)), Point::Infinity);
        assert_eq!(s.apply(Point::Infinity), Point::new(0.0, 0.0));
    }

    #[test]
    fn classification() {
        assert_eq!(Mobius::real(1.0, 1.0, 0.0, 1.0).unwrap().classify(), Kind::Parabolic);
        assert_eq!(Mobius::real(2.0, 1.0, 1.0, 1.0).unwrap().classify(), Kind::Loxodromic);
        assert_eq!(Mobius::real(0.0, -1.0, 1.0, 0.0).unwrap().classify(), Kind::Elliptic);
        assert_eq!(Mobius::identity().classify(), Kind::Identity);
        // purely imaginary trace: tr² = -1 is loxodromic
        let m = Mobius::new(c(0.0, 0.5), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.5)).unwrap();
        assert_eq!(m.classify(), Kind::Loxodromic);
    }

    #[test]
    fn fixed_point_examples() {
        let t = Mobius::real(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(t.fixed_points().unwrap(), FixedPoints::One(Point::Infinity));
        let k = Mobius::dilation(c(3.0, 0.0)).unwrap();
        assert_eq!(k.fixed_points().unwrap(), FixedPoints::Two(Point::Infinity, Point::new(0.0, 0.0)));
        let g = Mobius::real(2.0, 1.0, 1.0, 1.0).unwrap();
        let FixedPoints::Two(Point::Finite(p), Point::Finite(q)) = g.fixed_points().unwrap() else {
            panic!()
        };
        let s5 = 5f64.sqrt();
        assert!((p - (1.0 + s5) / 2.0).norm() < 1e-14);
        assert!((q - (1.0 - s5) / 2.0).norm() < 1e-14);
        assert!(matches!(Mobius::identity().fixed_points(), Err(KleinianError::IsIdentity)));
    }

    #[test]
    fn chordal_metric_bounds() {
        let z = Point::new(0.0, 0.0);
        assert!((z.chordal(Point::Infinity) - 2.0).abs() < 1e-15);
        assert_eq!(Point::Infinity.chordal(Point::Infinity), 0.0);
        let w = Point::new(1.0, 0.0);
        assert!((z.chordal(w) - 2f64.sqrt()).abs() < 1e-15);
    }
}
