//! Brute-force crossing count in global coordinates.
//!
//! Every crossing of the closed geodesics of `c` and `d` has a lift on the
//! fundamental segment `σ` of `axis(c)`, lying on a translate `g·axis(d)`
//! with `g = h·k⁻¹`, where `h·P` meets `σ` and `k·P` meets the fundamental
//! segment `τ` of `axis(d)`. Both tile sets are enumerated over the Cayley
//! graph by reduced words of bounded length; translates are kept when their
//! endpoints separate the endpoints of `axis(c)` on the boundary circle, and
//! crossings are identified by their parameter modulo `ℓ(c)`.

use graftlab::hyperbolic::{FuchsianModel, Mat2};
use graftlab::word::Word;
use num_complex::Complex64;
use std::collections::VecDeque;
use std::f64::consts::TAU;

fn fixed_points(m: &Mat2) -> (f64, f64) {
    let disc = ((m.a - m.d).powi(2) + 4.0 * m.b * m.c).sqrt();
    assert!(m.c.abs() > 1e-300, "oracle assumes finite fixed points");
    let r1 = (m.a - m.d + disc) / (2.0 * m.c);
    let r2 = (m.a - m.d - disc) / (2.0 * m.c);
    // derivative at the attracting point is (cz + d)⁻² < 1
    if (m.c * r1 + m.d).abs() > 1.0 {
        (r1, r2)
    } else {
        (r2, r1)
    }
}

fn circle_angle(x: f64) -> f64 {
    (Complex64::new(x, -1.0) / Complex64::new(x, 1.0)).arg().rem_euclid(TAU)
}

fn hyp_dist(z: Complex64, w: Complex64) -> f64 {
    (1.0 + (z - w).norm_sqr() / (2.0 * z.im * w.im)).max(1.0).acosh()
}

fn apply(m: &Mat2, z: Complex64) -> Complex64 {
    (z * m.a + m.b) / (z * m.c + m.d)
}

fn apply_real(m: &Mat2, x: f64) -> f64 {
    (m.a * x + m.b) / (m.c * x + m.d)
}

/// Orientation-preserving map sending `repelling -> 0`, `attracting -> ∞`.
fn normalizer(attracting: f64, repelling: f64) -> impl Fn(Complex64) -> Complex64 {
    let sign = if repelling > attracting { 1.0 } else { -1.0 };
    move |z| (z - repelling) / (z - attracting) * sign
}

struct Segment {
    attracting: f64,
    repelling: f64,
    base: f64,
    len: f64,
}

impl Segment {
    fn new(m: &Mat2) -> Segment {
        let (attracting, repelling) = fixed_points(m);
        let t = normalizer(attracting, repelling);
        Segment {
            attracting,
            repelling,
            base: t(Complex64::i()).norm(),
            len: 2.0 * ((m.a + m.d).abs() / 2.0).acosh(),
        }
    }

    fn distance(&self, z: Complex64) -> f64 {
        let t = normalizer(self.attracting, self.repelling);
        let w = t(z);
        let s = (w.norm() / self.base).ln().clamp(0.0, self.len);
        hyp_dist(w, Complex64::new(0.0, self.base * s.exp()))
    }
}

/// Tiles whose centers lie within `radius` of the segment, as reduced words
/// of length at most `max_len`.
fn tiles(model: &FuchsianModel, seg: &Segment, radius: f64, max_len: usize) -> (Vec<Mat2>, bool) {
    let i = Complex64::i();
    let letters: Vec<_> = model.surface().letters().collect();
    let mut queue = VecDeque::from([(Word::empty(), Mat2::identity())]);
    let mut centers = vec![i];
    let mut out = Vec::new();
    let mut truncated = false;
    while let Some((word, g)) = queue.pop_front() {
        out.push(g);
        for &l in &letters {
            if word.letters().last() == Some(&l.inverse()) {
                continue;
            }
            let h = g * model.letter(l);
            let center = apply(&h, i);
            if seg.distance(center) > radius || centers.iter().any(|&z| hyp_dist(z, center) < 1e-6) {
                continue;
            }
            if word.len() >= max_len {
                truncated = true;
                continue;
            }
            centers.push(center);
            let mut next = word.clone();
            next.push(l);
            queue.push_back((next, h));
        }
    }
    (out, truncated)
}

pub struct OracleCount {
    pub crossings: usize,
    /// Crossing parameters along the fundamental segment of `c`.
    pub params: Vec<f64>,
    pub candidates: usize,
    /// True when the word-length cap cut off a tile inside the search radius.
    pub truncated: bool,
}

pub fn oracle_crossings(model: &FuchsianModel, c: &Word, d: &Word, max_len: usize) -> OracleCount {
    let i = Complex64::i();
    let sc = Segment::new(&model.word_matrix(c));
    let sd = Segment::new(&model.word_matrix(d));
    let margin = model.circumradius() + 1e-6;
    let (hs, tr_c) = tiles(model, &sc, sc.distance(i) + margin, max_len);
    let (ks, tr_d) = tiles(model, &sd, sd.distance(i) + margin, max_len);

    let (lo, hi) = {
        let (x, y) = (circle_angle(sc.attracting), circle_angle(sc.repelling));
        (x.min(y), x.max(y))
    };
    let inside = |t: f64| lo < t && t < hi;
    let tc = normalizer(sc.attracting, sc.repelling);
    let mut params = Vec::new();
    let mut candidates = 0;
    for h in &hs {
        for k in &ks {
            candidates += 1;
            let g = *h * k.inverse();
            let (ea, er) = (apply_real(&g, sd.attracting), apply_real(&g, sd.repelling));
            let (aa, ar) = (circle_angle(ea), circle_angle(er));
            let own = |x: f64, y: f64| (x - y).abs() < 1e-9;
            let on_axis = (own(aa, lo) || own(aa, hi)) && (own(ar, lo) || own(ar, hi));
            if on_axis || inside(aa) == inside(ar) {
                continue;
            }
            let (u, v) = (tc(Complex64::new(ea, 0.0)).re, tc(Complex64::new(er, 0.0)).re);
            let s = ((-(u * v)).sqrt() / sc.base).ln().rem_euclid(sc.len);
            if !params.iter().any(|&p: &f64| {
                let gap = (p - s).rem_euclid(sc.len);
                gap.min(sc.len - gap) < 1e-4
            }) {
                params.push(s);
            }
        }
    }
    params.sort_by(f64::total_cmp);
    OracleCount {
        crossings: params.len(),
        params,
        candidates,
        truncated: tr_c || tr_d,
    }
}
