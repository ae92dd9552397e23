#![allow(dead_code)]

pub mod kleinian;
pub mod oracle;

use graftlab::multicurve::{CurveCalculus, Multicurve};
use graftlab::word::{CurveWord, Letter, Word};
use rand::seq::SliceRandom;
use rand::Rng;

/// Distinct simple classes found among random words of at most `max_len`
/// letters.
pub fn simple_pool<R: Rng>(calc: &CurveCalculus, rng: &mut R, size: usize, max_len: usize) -> Vec<CurveWord> {
    let letters: Vec<Letter> = calc.surface().letters().collect();
    let mut pool: Vec<CurveWord> = Vec::new();
    let mut attempts = 0;
    while pool.len() < size && attempts < 200 * size {
        attempts += 1;
        let len = rng.gen_range(1..=max_len);
        let w = Word::new((0..len).map(|_| *letters.choose(rng).unwrap()).collect());
        let Some(c) = CurveWord::from_word(&w, calc.surface()).unwrap() else { continue };
        if c.len() > max_len || pool.contains(&c) {
            continue;
        }
        if calc.normalize(&[(1, c.clone())]).is_ok() {
            pool.push(c);
        }
    }
    pool
}

/// A random multicurve with up to `max_components` components drawn from
/// `pool` and weights in `1..=max_weight`.
pub fn random_multicurve<R: Rng>(
    calc: &CurveCalculus,
    rng: &mut R,
    pool: &[CurveWord],
    max_components: usize,
    max_weight: u32,
) -> Multicurve {
    let target = rng.gen_range(1..=max_components);
    let mut chosen: Vec<(u32, CurveWord)> = Vec::new();
    for _ in 0..8 * target {
        if chosen.len() == target {
            break;
        }
        let c = pool.choose(rng).unwrap().clone();
        let mut parts = chosen.clone();
        parts.push((rng.gen_range(1..=max_weight), c));
        if let Ok(m) = calc.normalize(&parts) {
            if m.len() == parts.len() {
                chosen = parts;
            }
        }
    }
    calc.normalize(&chosen).unwrap()
}

/// Exponent sums of `a_h` and `b_h`, ordered `a1 b1 a2 b2 ...`.
pub fn homology(w: &Word, genus: u32) -> Vec<i64> {
    let mut v = vec![0; 2 * genus as usize];
    for l in w.letters() {
        v[l.generator()] += if l.is_inverse() { -1 } else { 1 };
    }
    v
}

/// Algebraic intersection pairing with `a_h · b_h = 1`.
pub fn algebraic_intersection(x: &[i64], y: &[i64]) -> i64 {
    x.chunks(2).zip(y.chunks(2)).map(|(p, q)| p[0] * q[1] - p[1] * q[0]).sum()
}

pub fn seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
