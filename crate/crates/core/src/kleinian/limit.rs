use std::fmt::Write as _;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use num_complex::Complex64;
use rayon::prelude::*;

use super::mobius::{Mobius, Point};
use super::ptorus::{GroupSpec, TraceTriple};
use super::KleinianError;

pub const DEFAULT_EPS: f64 = 1e-3;
pub const DEFAULT_DEPTH: usize = 18;
pub const DEFAULT_NODE_BUDGET: usize = 50_000_000;
/// Points closer than this are merged.
pub const DEDUP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LimitSetSample {
    pub points: Vec<Point>,
    pub depth: usize,
    pub eps: f64,
    pub traces: Option<TraceTriple>,
    /// False when the enumeration budget ran out.
    pub complete: bool,
}

impl LimitSetSample {
    pub fn new(points: Vec<Point>, depth: usize, eps: f64, traces: Option<TraceTriple>) -> LimitSetSample {
        LimitSetSample {
            points: canonical(points),
            depth,
            eps,
            traces,
            complete: true,
        }
    }

    /// Header line, then one `re im` pair (or `inf`) per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("# eps {:e} depth {}", self.eps, self.depth);
        if let Some(t) = &self.traces {
            for v in [t.x, t.y, t.z] {
                let _ = write!(out, " {:.16e} {:.16e}", v.re, v.im);
            }
        }
        if !self.complete {
            out.push_str(" incomplete");
        }
        out.push('\n');
        for p in &self.points {
            let _ = writeln!(out, "{p}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<LimitSetSample, KleinianError> {
        let mut points = Vec::new();
        let mut eps = DEFAULT_EPS;
        let mut depth = 0;
        let mut traces = None;
        let mut complete = true;
        for (n, line) in text.lines().enumerate() {
            let err = |message: String| KleinianError::Parse { line: n + 1, message };
            let line = line.trim();
            if let Some(header) = line.strip_prefix('#') {
                let toks: Vec<&str> = header.split_whitespace().collect();
                if toks.len() >= 4 && toks[0] == "eps" && toks[2] == "depth" {
                    eps = toks[1].parse().map_err(|_| err(format!("bad eps `{}`", toks[1])))?;
                    depth = toks[3].parse().map_err(|_| err(format!("bad depth `{}`", toks[3])))?;
                    let nums: Vec<f64> = toks[4..].iter().filter_map(|t| t.parse().ok()).collect();
                    if nums.len() == 6 {
                        let c = |k: usize| Complex64::new(nums[2 * k], nums[2 * k + 1]);
                        traces = Some(TraceTriple::new(c(0), c(1), c(2)));
                    }
                    complete = !toks.contains(&"incomplete");
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            if line == "inf" {
                points.push(Point::Infinity);
                continue;
            }
            let nums: Vec<&str> = line.split_whitespace().collect();
            let [re, im] = nums.as_slice() else {
                return Err(err(format!("expected `re im` or `inf`, got `{line}`")));
            };
            let re: f64 = re.parse().map_err(|_| err(format!("bad number `{re}`")))?;
            let im: f64 = im.parse().map_err(|_| err(format!("bad number `{im}`")))?;
            points.push(Point::new(re, im));
        }
        let mut sample = LimitSetSample::new(points, depth, eps, traces);
        sample.complete = complete;
        Ok(sample)
    }

    pub fn finite_points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.points.iter().filter_map(|p| p.finite())
    }
}

/// Sorts lexicographically and merges points within [`DEDUP_TOLERANCE`].
pub fn canonical(mut points: Vec<Point>) -> Vec<Point> {
    points.retain(|p| p.finite().is_none_or(|z| z.is_finite()));
    points.sort_by(Point::canonical_cmp);
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        let dup = match p {
            Point::Infinity => out.last() == Some(&Point::Infinity),
            Point::Finite(z) => out
                .iter()
                .rev()
                .map_while(|q| q.finite().filter(|w| z.re - w.re <= DEDUP_TOLERANCE))
                .any(|w| (z - w).norm() <= DEDUP_TOLERANCE),
        };
        if !dup {
            out.push(p);
        }
    }
    out
}

struct Alphabet {
    /// Generators followed by their inverses.
    maps: Vec<Mobius>,
    n: usize,
    /// Per letter, fixed points of the short words starting with it.
    seeds: Vec<Vec<Point>>,
}

impl Alphabet {
    fn new(generators: &[Mobius]) -> Alphabet {
        let n = generators.len();
        let maps: Vec<Mobius> = generators.iter().copied().chain(generators.iter().map(Mobius::inverse)).collect();
        let inv = |k: usize| (k + n) % (2 * n);
        let seeds = (0..2 * n)
            .map(|h| {
                // the set {h} ∪ {h k : k ∉ {h, h⁻¹}} is closed under cyclic
                // rotation, which makes refinement reproduce emitted points
                let mut words = vec![maps[h]];
                words.extend((0..2 * n).filter(|&k| k != h && k != inv(h)).map(|k| maps[h] * maps[k]));
                words.iter().filter_map(Mobius::attracting).collect()
            })
            .collect();
        Alphabet { maps, n, seeds }
    }

    fn inverse(&self, k: usize) -> usize {
        (k + self.n) % (2 * self.n)
    }
}

fn diameter(points: &[Point]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.max(p.chordal(*q));
        }
    }
    d
}

struct Search<'a> {
    alphabet: &'a Alphabet,
    eps: f64,
    max_depth: usize,
    budget: usize,
    nodes: &'a AtomicUsize,
    exhausted: &'a AtomicBool,
}

impl Search<'_> {
    /// Depth-first enumeration below the word `prefix` (matrix `m`, last
    /// letter `last`), appending emitted points.
    fn run(&self, m: Mobius, last: usize, len: usize, out: &mut Vec<Point>) {
        let mut stack = vec![(m, last, len)];
        let mut base = Vec::new();
        while let Some((m, last, len)) = stack.pop() {
            if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
                self.exhausted.store(true, Ordering::Relaxed);
                return;
            }
            let forbidden = self.alphabet.inverse(last);
            base.clear();
            for h in (0..2 * self.alphabet.n).filter(|&h| h != forbidden) {
                base.extend(self.alphabet.seeds[h].iter().map(|p| m.apply(*p)));
            }
            if len >= self.max_depth || diameter(&base) < self.eps {
                out.extend_from_slice(&base);
                continue;
            }
            for h in (0..2 * self.alphabet.n).rev().filter(|&h| h != forbidden) {
                stack.push((m * self.alphabet.maps[h], h, len + 1));
            }
        }
    }
}

/// Samples the limit set by depth-first enumeration of reduced words,
/// emitting the images of the seed fixed points once their chordal
/// diameter drops below `eps` or the word length reaches `max_depth`.
pub fn limit_set(group: &GroupSpec, eps: f64, max_depth: usize) -> Result<LimitSetSample, KleinianError> {
    limit_set_with_budget(group, eps, max_depth, DEFAULT_NODE_BUDGET)
}

pub fn limit_set_with_budget(
    group: &GroupSpec,
    eps: f64,
    max_depth: usize,
    budget: usize,
) -> Result<LimitSetSample, KleinianError> {
    if group.generators.is_empty() {
        return Err(KleinianError::EmptyGroup);
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(KleinianError::Parse {
            line: 0,
            message: format!("eps must be positive, got {eps}"),
        });
    }
    let alphabet = Alphabet::new(&group.generators);
    let nodes = AtomicUsize::new(0);
    let exhausted = AtomicBool::new(false);
    let search = Search {
        alphabet: &alphabet,
        eps,
        max_depth: max_depth.max(1),
        budget,
        nodes: &nodes,
        exhausted: &exhausted,
    };
    // split at the second letter so the workers get balanced subtrees
    let letters = 2 * alphabet.n;
    let mut roots = Vec::new();
    for h in 0..letters {
        if search.max_depth == 1 {
            roots.push((alphabet.maps[h], h, 1));
            continue;
        }
        for k in (0..letters).filter(|&k| k != alphabet.inverse(h)) {
            roots.push((alphabet.maps[h] * alphabet.maps[k], k, 2));
        }
    }
    let parts: Vec<Vec<Point>> = roots
        .par_iter()
        .map(|&(m, last, len)| {
            let mut out = Vec::new();
            search.run(m, last, len, &mut out);
            out
        })
        .collect();
    let mut sample = LimitSetSample::new(parts.concat(), max_depth, eps, group.traces);
    if exhausted.load(Ordering::Relaxed) {
        sample.complete = false;
        return Err(KleinianError::BudgetExceeded {
            budget,
            partial: Box::new(sample),
        });
    }
    Ok(sample)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dilation_group_has_two_limit_points() {
        let g = GroupSpec::from_generators(vec![Mobius::dilation(Complex64::new(2.0, 0.0)).unwrap()]);
        let s = limit_set(&g, 1e-3, 10).unwrap();
        assert_eq!(s.points, vec![Point::new(0.0, 0.0), Point::Infinity]);
    }

    #[test]
    fn empty_group_is_rejected() {
        let g = GroupSpec::from_generators(vec![]);
        assert!(matches!(limit_set(&g, 1e-3, 5), Err(KleinianError::EmptyGroup)));
    }

    #[test]
    fn canonical_dedup_and_order() {
        let pts = vec![
            Point::Infinity,
            Point::new(1.0, 0.0),
            Point::new(0.0, 2.0),
            Point::new(1.0 + 1e-14, 0.0),
            Point::Infinity,
            Point::new(0.0, -1.0),
        ];
        let c = canonical(pts);
        assert_eq!(c, vec![Point::new(0.0, -1.0), Point::new(0.0, 2.0), Point::new(1.0, 0.0), Point::Infinity]);
    }

    #[test]
    fn text_round_trip() {
        let s = LimitSetSample::new(vec![Point::new(0.1, -0.2), Point::Infinity], 7, 1e-3, None);
        let back = LimitSetSample::from_text(&s.to_text()).unwrap();
        assert_eq!(back, s);
    }
}
