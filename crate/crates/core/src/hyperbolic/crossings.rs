//! Crossings between the closed geodesics of two curve words.
//!
//! Fix the axis of `c` with a fundamental segment `σ` of length `ℓ(c)`.
//! Every lift of `d` meeting `σ` has the form `h k⁻¹ · axis(d)` where `h`
//! is a tile of the tiling by fundamental polygons meeting `σ` and `k` a tile
//! meeting a fundamental segment of `axis(d)`. Both tile sets are collected
//! by breadth-first search pruned at the circumradius, kept in coordinates
//! relative to a moving point of the axis in double-double arithmetic, since
//! rounding errors grow like `e^{ℓ/2}` along a segment of length `ℓ`.
//! Linking is decided from the endpoint configuration.

use std::collections::HashMap;

use num_complex::Complex64;

use super::dd::{Dd, DdMat2};
use super::{distance, AxisFrame, FuchsianModel, HyperbolicError};
use crate::word::{dehn_reduce, Word};

#[derive(Debug, Clone, Copy)]
pub struct CrossingOptions {
    /// Midpoint of the fundamental segment on the first axis, as arc length
    /// from the foot of the perpendicular from `i`. Rounding errors grow
    /// like `e^{|base| + ℓ/2}`, so offsets should stay small.
    pub base_c: f64,
    pub base_d: f64,
    /// Candidates closer than this along both geodesics are compared
    /// combinatorially and merged when they are the same crossing.
    pub dedup_tol: f64,
    /// Distinct crossings closer than this along the first geodesic are
    /// reported as degenerate.
    pub degenerate_tol: f64,
    pub max_tiles: usize,
}

impl Default for CrossingOptions {
    fn default() -> Self {
        CrossingOptions {
            base_c: 0.0,
            base_d: 0.0,
            dedup_tol: 1e-3,
            degenerate_tol: 1e-10,
            max_tiles: 200_000,
        }
    }
}

/// One transverse crossing of the geodesics of `c` and `d`.
#[derive(Debug, Clone)]
pub struct Crossing {
    /// Arc length along the fundamental segment of `c`.
    pub s: f64,
    /// Arc length along the fundamental segment of `d`.
    pub t: f64,
    /// `+1` when `(c', d')` is a positively oriented frame.
    pub sign: i8,
    /// Cosine of the angle from the tangent of `c` to the tangent of `d`.
    pub cos_angle: f64,
    /// Group element `g` with `axis(c) ∩ g·axis(d)` equal to `point`.
    pub element: Word,
    /// The crossing point on the reference lift of `c`.
    pub point: Complex64,
}

/// Self-crossing data of one word.
#[derive(Debug, Clone)]
pub struct SelfIntersection {
    /// Number of transverse self-intersection points of the closed geodesic.
    pub points: usize,
    /// False when the word is a proper power (its axis is invariant under
    /// a shorter translation).
    pub primitive: bool,
}

impl SelfIntersection {
    pub fn is_simple(&self) -> bool {
        self.points == 0 && self.primitive
    }
}

struct Tile {
    word: Word,
    /// Arc length of the foot of the tile center on the axis.
    anchor: f64,
    /// `shift(-anchor) · frame⁻¹ · M(word)`.
    rel: DdMat2,
}

/// Axis coordinates of a hyperbolic element, as in [`AxisFrame`].
struct Frame {
    from: DdMat2,
    to: DdMat2,
    length: f64,
}

impl Frame {
    fn new(m: &DdMat2) -> Result<Frame, HyperbolicError> {
        let tr = m.trace();
        if tr.hi.abs() <= 2.0 + 1e-12 {
            return Err(HyperbolicError::NoAxis(tr.hi.abs()));
        }
        let disc = (tr * tr - Dd::new(4.0)).sqrt();
        let big = if tr.hi > 0.0 { tr + disc } else { tr - disc } / Dd::new(2.0);
        let small = Dd::ONE / big;
        let eigenvector = |lambda: Dd| {
            let v1 = (m.b, lambda - m.a);
            let v2 = (lambda - m.d, m.c);
            let norm = |v: (Dd, Dd)| v.0.hi.hypot(v.1.hi);
            if norm(v1) >= norm(v2) {
                v1
            } else {
                v2
            }
        };
        let va = eigenvector(big);
        let mut vr = eigenvector(small);
        let mut det = va.0 * vr.1 - vr.0 * va.1;
        if det.hi < 0.0 {
            vr = (-vr.0, -vr.1);
            det = -det;
        }
        let s = det.sqrt();
        let g = DdMat2::new(va.0 / s, vr.0 / s, va.1 / s, vr.1 / s);
        // right multiplication by shift(foot) moves i to the foot of the
        // perpendicular; e^(foot/2) = |g⁻¹(i)|^(1/2)
        let q = g.inverse().image_of_i_norm_sqr().sqrt().sqrt();
        let qi = Dd::ONE / q;
        let from = DdMat2::new(g.a * q, g.b * qi, g.c * q, g.d * qi);
        Ok(Frame {
            from,
            to: from.inverse(),
            length: 2.0 * big.abs().ln(),
        })
    }

    fn to_axis_frame(&self) -> AxisFrame {
        let from_frame = self.from.to_mat2();
        AxisFrame {
            from_frame,
            to_frame: from_frame.inverse(),
            length: self.length,
        }
    }
}

/// `shift(-anchor) · m` normalized so that the image of `i` has modulus
/// close to one, with `anchor` tracking the exact scale used.
fn normalize(m: DdMat2) -> (f64, DdMat2) {
    let sigma = m.image_of_i_norm_sqr().hi.powf(-0.25);
    (-2.0 * sigma.ln(), m.scale_rows(Dd::new(sigma)))
}

/// Tiles whose centers lie within the circumradius of the axis segment
/// `[start, start + len]`.
fn tiles_near_segment(
    model: &FuchsianModel,
    frame: &Frame,
    start: f64,
    len: f64,
    max_tiles: usize,
) -> Result<Vec<Tile>, HyperbolicError> {
    let reach = model.circumradius() + 1e-9;
    // errors grow like e^L along a breadth-first path of length L
    let (h0, _) = model.locate(frame.to_axis_frame().point(start + len / 2.0));
    let (anchor, rel) = normalize(frame.to * model.word_matrix_dd(&h0));
    let mut tiles = vec![Tile { word: h0, anchor, rel }];
    let mut buckets: HashMap<i64, Vec<usize>> = HashMap::new();
    let key = |a: f64| (a * 4.0).floor() as i64;
    buckets.entry(key(anchor)).or_default().push(0);
    let letters: Vec<_> = model.surface().letters().collect();
    let mut head = 0;
    while head < tiles.len() {
        for &l in &letters {
            let (delta, rel) = normalize(tiles[head].rel * model.letter_dd(l));
            let anchor = tiles[head].anchor + delta;
            let w = rel.apply_i();
            let foot = 0.0f64.clamp(start - anchor, start + len - anchor);
            if distance(w, Complex64::new(0.0, foot.exp())) > reach {
                continue;
            }
            let k = key(anchor);
            let seen = (k - 1..=k + 1).any(|kk| {
                buckets.get(&kk).is_some_and(|ids| {
                    ids.iter().any(|&id| {
                        (tiles[id].anchor - anchor).abs() < 1e-7
                            && (tiles[id].rel.apply_i() - w).norm() < 1e-7
                    })
                })
            });
            if seen {
                continue;
            }
            if tiles.len() >= max_tiles {
                return Err(HyperbolicError::EnumerationBudgetExceeded(max_tiles));
            }
            let mut word = tiles[head].word.clone();
            word.push(l);
            buckets.entry(k).or_default().push(tiles.len());
            tiles.push(Tile { word, anchor, rel });
        }
        head += 1;
    }
    Ok(tiles)
}

struct RawCrossing {
    s: f64,
    t: f64,
    sign: i8,
    cos_angle: f64,
    tile: usize,
    lift: usize,
    wraps_c: i64,
    wraps_d: i64,
}

struct Enumeration {
    raw: Vec<RawCrossing>,
    /// Translation amounts of elements preserving the first axis.
    axis_shifts: Vec<f64>,
    tiles: Vec<Tile>,
    lifts: Vec<Tile>,
    frame_c: AxisFrame,
    len_c: f64,
    len_d: f64,
}

fn enumerate(
    model: &FuchsianModel,
    c: &Word,
    d: &Word,
    opts: &CrossingOptions,
) -> Result<Enumeration, HyperbolicError> {
    let frame_c = Frame::new(&model.word_matrix_dd(c))?;
    let frame_d = Frame::new(&model.word_matrix_dd(d))?;
    let len_c = frame_c.length;
    let len_d = frame_d.length;
    let start_c = opts.base_c - len_c / 2.0;
    let start_d = opts.base_d - len_d / 2.0;
    let tiles = tiles_near_segment(model, &frame_c, start_c, len_c, opts.max_tiles)?;
    let near_d = tiles_near_segment(model, &frame_d, start_d, len_d, opts.max_tiles)?;

    // distinct lifts k⁻¹·axis(d) through the polygon, stored with rel⁻¹
    let mut lifts: Vec<Tile> = Vec::new();
    for k in near_d {
        let inv = k.rel.inverse();
        if !lifts.iter().any(|l| same_lift(&l.rel, &inv)) {
            lifts.push(Tile {
                word: k.word,
                anchor: k.anchor,
                rel: inv,
            });
        }
    }

    let reach = model.circumradius() + 1e-7;
    let mut raw = Vec::new();
    let mut axis_shifts = Vec::new();
    for (ti, tile) in tiles.iter().enumerate() {
        let center = tile.rel.apply_i();
        for (li, lift) in lifts.iter().enumerate() {
            let w = tile.rel * lift.rel;
            let (a, b, cc, dd) = (w.a, w.b, w.c, w.d);
            let scale = w.max_abs() * 1e-24;
            let near = w.max_abs() * 1e-8;
            if b.hi.abs() <= near && cc.hi.abs() <= near && preserves_axis(model, c, d, &tile.word, &lift.word) {
                axis_shifts.push(tile.anchor + (a / dd).abs().ln() - lift.anchor);
                continue;
            }
            if [a, b, cc, dd].iter().any(|x| x.hi.abs() <= scale) {
                continue;
            }
            let negatives = [a, b, cc, dd].iter().filter(|x| x.hi < 0.0).count();
            if negatives % 2 == 0 {
                continue;
            }
            let s_rel = 0.5 * (-(a * b) / (cc * dd)).ln();
            // every crossing on the segment lies in a tile meeting it
            if distance(Complex64::new(0.0, s_rel.exp()), center) > reach {
                continue;
            }
            let t_rel = 0.5 * (-(b * dd) / (a * cc)).ln();
            let xr = (b / dd).to_f64();
            let xa = (a / cc).to_f64();
            let sign: i8 = if xa < 0.0 { 1 } else { -1 };
            let mid = 0.5 * (xr + xa);
            let radius = 0.5 * (xa - xr).abs();
            let cos_angle = xa.signum() * mid / radius;
            let s = tile.anchor + s_rel;
            let t = lift.anchor + t_rel;
            let wraps_c = ((s - start_c) / len_c).floor() as i64;
            let wraps_d = ((t - start_d) / len_d).floor() as i64;
            raw.push(RawCrossing {
                s: s - wraps_c as f64 * len_c,
                t: t - wraps_d as f64 * len_d,
                sign,
                cos_angle,
                tile: ti,
                lift: li,
                wraps_c,
                wraps_d,
            });
        }
    }
    Ok(Enumeration {
        raw,
        axis_shifts,
        tiles,
        lifts,
        frame_c: frame_c.to_axis_frame(),
        len_c,
        len_d,
    })
}

/// Whether `h k⁻¹ · axis(d)` is `axis(c)`, decided exactly: both axes agree
/// iff the conjugate of `d` commutes with `c`.
fn preserves_axis(model: &FuchsianModel, c: &Word, d: &Word, h: &Word, k: &Word) -> bool {
    let mut g = h.clone();
    g.append(&k.inverse());
    let mut conj = g.clone();
    conj.append(d);
    conj.append(&g.inverse());
    let mut commutator = conj.clone();
    commutator.append(c);
    commutator.append(&conj.inverse());
    commutator.append(&c.inverse());
    dehn_reduce(&commutator, model.surface()).is_empty()
}

/// Whether two matrices send `∞` and `0` to the same boundary points.
fn same_lift(x: &DdMat2, y: &DdMat2) -> bool {
    let same = |p: (Dd, Dd), q: (Dd, Dd)| {
        let cross = (p.0 * q.1 - p.1 * q.0).hi.abs();
        let size = (p.0.hi.abs() + p.1.hi.abs()) * (q.0.hi.abs() + q.1.hi.abs());
        cross <= 1e-24 * size
    };
    same((x.a, x.c), (y.a, y.c)) && same((x.b, x.d), (y.b, y.d))
}

fn circular_gap(x: f64, y: f64, len: f64) -> f64 {
    let d = (x - y).rem_euclid(len);
    d.min(len - d)
}

/// Crossings of the closed geodesics of `c` and `d`, one per intersection
/// point of the two curves on the surface, sorted along `c`.
///
/// For `c == d` every self-intersection point appears twice, once for each
/// of its branches.
pub fn geodesic_crossings(
    model: &FuchsianModel,
    c: &Word,
    d: &Word,
    opts: &CrossingOptions,
) -> Result<Vec<Crossing>, HyperbolicError> {
    let en = enumerate(model, c, d, opts)?;
    let mut order: Vec<usize> = (0..en.raw.len()).collect();
    order.sort_by(|&x, &y| en.raw[x].s.total_cmp(&en.raw[y].s));

    let element = |r: &RawCrossing| {
        let mut w = c.pow(-r.wraps_c);
        w.append(&en.tiles[r.tile].word);
        w.append(&en.lifts[r.lift].word.inverse());
        w.append(&d.pow(r.wraps_d));
        dehn_reduce(&w, model.surface())
    };
    let elements: Vec<Word> = en.raw.iter().map(element).collect();
    // same crossing iff the elements agree modulo <c> on the left and <d>
    // on the right; near the base points the wrap counts may differ by one
    let same_crossing = |x: &Word, y: &Word| {
        let xi = x.inverse();
        (-1..=1).any(|i| {
            (-1..=1).any(|j| {
                let mut w = xi.clone();
                w.append(&c.pow(i));
                w.append(y);
                w.append(&d.pow(j));
                dehn_reduce(&w, model.surface()).is_empty()
            })
        })
    };

    let tol = opts.dedup_tol;
    let mut kept: Vec<usize> = Vec::new();
    for idx in order {
        let r = &en.raw[idx];
        let duplicate = kept.iter().any(|&k| {
            let q = &en.raw[k];
            circular_gap(q.s, r.s, en.len_c) < tol
                && circular_gap(q.t, r.t, en.len_d) < tol
                && same_crossing(&elements[k], &elements[idx])
        });
        if duplicate {
            continue;
        }
        if kept
            .iter()
            .any(|&k| circular_gap(en.raw[k].s, r.s, en.len_c) < opts.degenerate_tol)
        {
            return Err(HyperbolicError::DegenerateCrossing {
                at: r.s,
                tol: opts.degenerate_tol,
            });
        }
        kept.push(idx);
    }

    let mut out: Vec<Crossing> = kept
        .into_iter()
        .map(|idx| {
            let r = &en.raw[idx];
            Crossing {
                s: r.s,
                t: r.t,
                sign: r.sign,
                cos_angle: r.cos_angle,
                element: elements[idx].clone(),
                point: en.frame_c.point(r.s),
            }
        })
        .collect();
    out.sort_by(|x, y| x.s.total_cmp(&y.s));
    Ok(out)
}

/// Self-intersection count and primitivity of the closed geodesic of `c`.
pub fn self_intersection(
    model: &FuchsianModel,
    c: &Word,
    opts: &CrossingOptions,
) -> Result<SelfIntersection, HyperbolicError> {
    let en = enumerate(model, c, c, opts)?;
    let primitive = en.axis_shifts.iter().all(|&shift| {
        let r = shift.rem_euclid(en.len_c);
        r.min(en.len_c - r) < 1e-6
    });
    let crossings = geodesic_crossings(model, c, c, opts)?;
    Ok(SelfIntersection {
        points: crossings.len() / 2,
        primitive,
    })
}
