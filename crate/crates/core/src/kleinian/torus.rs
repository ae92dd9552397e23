use std::f64::consts::TAU;

use num_complex::Complex64;

use super::mobius::{FixedPoints, Kind, Mobius, Point};
use super::KleinianError;

/// Points of the torus `(C∖fix η)/⟨η⟩` in logarithmic coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientTorusCoords {
    /// `k` with `η` conjugate to `z -> k z`, `|k| > 1`.
    pub multiplier: Complex64,
    /// `(log k, 2πi)`.
    pub lattice: (Complex64, Complex64),
    /// Representatives `s·log k + t·2πi` with `s, t ∈ [0, 1)`.
    pub points: Vec<Complex64>,
    /// Sample points on a fixed point of `η`, which have no image.
    pub dropped: usize,
}

impl QuotientTorusCoords {
    /// Lattice coordinates `(s, t)` of `w`.
    fn coords(&self, w: Complex64) -> (f64, f64) {
        let (l1, l2) = self.lattice;
        let det = l1.re * l2.im - l1.im * l2.re;
        let s = (w.re * l2.im - w.im * l2.re) / det;
        let t = (l1.re * w.im - l1.im * w.re) / det;
        (s, t)
    }

    /// Representative of `w` in the fundamental parallelogram.
    pub fn reduce(&self, w: Complex64) -> Complex64 {
        let wrap = |x: f64| {
            let r = x - x.floor();
            if r >= 1.0 - 1e-12 {
                0.0
            } else {
                r
            }
        };
        let (s, t) = self.coords(w);
        let (l1, l2) = self.lattice;
        l1 * wrap(s) + l2 * wrap(t)
    }

    /// Distance on the torus between two representatives.
    pub fn torus_distance(&self, w1: Complex64, w2: Complex64) -> f64 {
        let (s, t) = self.coords(w1 - w2);
        let (l1, l2) = self.lattice;
        let (s0, t0) = (s.round(), t.round());
        let mut best = f64::INFINITY;
        for ds in -1..=1 {
            for dt in -1..=1 {
                let v = w1 - w2 - l1 * (s0 + ds as f64) - l2 * (t0 + dt as f64);
                best = best.min(v.norm());
            }
        }
        best
    }
}

/// A map sending the repelling fixed point of `η` to `0` and the attracting
/// one to `∞`, conjugating `η` to `z -> k z`.
struct Normalizer {
    attracting: Point,
    repelling: Point,
}

impl Normalizer {
    fn apply(&self, p: Point) -> Option<Complex64> {
        match (self.attracting, self.repelling, p) {
            (_, _, x) if x == self.attracting || x == self.repelling => None,
            (Point::Infinity, Point::Finite(q), Point::Finite(z)) => Some(z - q),
            (Point::Infinity, Point::Finite(_), Point::Infinity) => None,
            (Point::Finite(a), Point::Infinity, Point::Finite(z)) => Some(1.0 / (z - a)),
            (Point::Finite(_), Point::Infinity, Point::Infinity) => Some(Complex64::new(0.0, 0.0)),
            (Point::Finite(a), Point::Finite(q), Point::Finite(z)) => Some((z - q) / (z - a)),
            (Point::Finite(_), Point::Finite(_), Point::Infinity) => Some(Complex64::new(1.0, 0.0)),
            _ => None,
        }
    }
}

/// Projects the sample to the quotient torus of the loxodromic `η`.
pub fn quotient_torus_pullback(points: &[Point], eta: &Mobius) -> Result<QuotientTorusCoords, KleinianError> {
    if eta.classify() != Kind::Loxodromic {
        return Err(KleinianError::NotLoxodromic);
    }
    let FixedPoints::Two(attracting, repelling) = eta.fixed_points()? else {
        return Err(KleinianError::NotLoxodromic);
    };
    let k = eta.multiplier_at(repelling);
    let log_k = k.ln();
    let mut torus = QuotientTorusCoords {
        multiplier: k,
        lattice: (log_k, Complex64::new(0.0, TAU)),
        points: Vec::with_capacity(points.len()),
        dropped: 0,
    };
    let normalizer = Normalizer { attracting, repelling };
    let near_fixed = |p: Point| p.chordal(attracting) <= 1e-12 || p.chordal(repelling) <= 1e-12;
    for &p in points {
        match normalizer.apply(p) {
            Some(z) if !near_fixed(p) && z.norm() > 0.0 && z.is_finite() => {
                let w = torus.reduce(z.ln());
                torus.points.push(w);
            }
            _ => torus.dropped += 1,
        }
    }
    Ok(torus)
}
