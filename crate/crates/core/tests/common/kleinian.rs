//! Independent reference computations for the Kleinian layer.

use graftlab::kleinian::{Mobius, Point};
use num_complex::Complex64;

/// Walks the Stern–Brocot tree from `1/1` (`false` = left) and returns the
/// fraction reached together with its word in `X` (`false`) and `Y` (`true`),
/// built as `W(l ⊕ r) = W(l) W(r)`.
pub fn stern_brocot(moves: &[bool]) -> ((u64, u64), Vec<bool>) {
    let (mut l, mut r) = (((0u64, 1u64), vec![false]), ((1u64, 0u64), vec![true]));
    let mediant = |l: &((u64, u64), Vec<bool>), r: &((u64, u64), Vec<bool>)| {
        let f = (l.0 .0 + r.0 .0, l.0 .1 + r.0 .1);
        let mut w = l.1.clone();
        w.extend(&r.1);
        (f, w)
    };
    let mut m = mediant(&l, &r);
    for &right in moves {
        if right {
            l = m;
        } else {
            r = m;
        }
        m = mediant(&l, &r);
    }
    m
}

/// Raw `SL(2, C)` trace of the word, without any sign normalization.
pub fn word_trace(x: &Mobius, y: &Mobius, word: &[bool]) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut m = [one, zero, zero, one];
    for &letter in word {
        let g = if letter { y } else { x };
        m = [
            m[0] * g.a + m[1] * g.c,
            m[0] * g.b + m[1] * g.d,
            m[2] * g.a + m[3] * g.c,
            m[2] * g.b + m[3] * g.d,
        ];
    }
    m[0] + m[3]
}

/// Stereographic image on the unit sphere.
pub fn sphere(p: Point) -> [f64; 3] {
    match p {
        Point::Infinity => [0.0, 0.0, 1.0],
        Point::Finite(z) => {
            let n = z.norm_sqr();
            [2.0 * z.re / (1.0 + n), 2.0 * z.im / (1.0 + n), (n - 1.0) / (n + 1.0)]
        }
    }
}

/// Hausdorff distance by exhaustive search in the sphere embedding.
pub fn brute_hausdorff(a: &[Point], b: &[Point]) -> f64 {
    let d = |p: Point, q: Point| {
        let (u, v) = (sphere(p), sphere(q));
        ((u[0] - v[0]).powi(2) + (u[1] - v[1]).powi(2) + (u[2] - v[2]).powi(2)).sqrt()
    };
    let directed = |a: &[Point], b: &[Point]| {
        a.iter()
            .map(|&p| b.iter().map(|&q| d(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}
