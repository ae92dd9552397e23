use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::mobius::{commutator_trace, Mobius};
use super::KleinianError;

/// Tolerance for the Markov identity and `tr[X,Y] = -2`, relative to the
/// size of the traces involved.
pub const MARKOV_TOLERANCE: f64 = 1e-9;

/// Which root of the Markov quadratic gives `tr XY`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Root {
    Plus,
    #[default]
    Minus,
}

impl FromStr for Root {
    type Err = KleinianError;

    fn from_str(s: &str) -> Result<Root, KleinianError> {
        match s {
            "plus" | "+" => Ok(Root::Plus),
            "minus" | "-" => Ok(Root::Minus),
            other => Err(KleinianError::Parse {
                line: 0,
                message: format!("unknown root `{other}` (expected plus or minus)"),
            }),
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Root::Plus => "plus",
            Root::Minus => "minus",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Fuchsian,
    QuasifuchsianCandidate,
    Unknown,
}

/// Trace coordinates `(tr X, tr Y, tr XY)` of a punctured-torus group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceTriple {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl TraceTriple {
    pub fn new(x: Complex64, y: Complex64, z: Complex64) -> TraceTriple {
        TraceTriple { x, y, z }
    }

    /// Completes `(x, y)` by a root of `z² - xyz + x² + y² = 0`.
    pub fn from_pair(x: Complex64, y: Complex64, root: Root) -> TraceTriple {
        let disc = (x * x * y * y - 4.0 * (x * x + y * y)).sqrt();
        let z = match root {
            Root::Plus => (x * y + disc) / 2.0,
            Root::Minus => (x * y - disc) / 2.0,
        };
        TraceTriple { x, y, z }
    }

    /// `x² + y² + z² - xyz` relative to the size of its terms.
    pub fn markov_residual(&self) -> f64 {
        let (x, y, z) = (self.x, self.y, self.z);
        let terms = [x * x, y * y, z * z, x * y * z];
        let size = terms.iter().map(|t| t.norm()).fold(1.0, f64::max);
        (terms[0] + terms[1] + terms[2] - terms[3]).norm() / size
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupSpec {
    pub generators: Vec<Mobius>,
    pub kind: GroupKind,
    pub traces: Option<TraceTriple>,
}

impl GroupSpec {
    /// A group given only by generators.
    pub fn from_generators(generators: Vec<Mobius>) -> GroupSpec {
        GroupSpec {
            generators,
            kind: GroupKind::Unknown,
            traces: None,
        }
    }
}

fn nonzero(z: Complex64, scale: f64) -> Result<Complex64, KleinianError> {
    if z.norm() <= 1e-12 * scale.max(1.0) {
        Err(KleinianError::DegenerateTraces)
    } else {
        Ok(z)
    }
}

/// Punctured-torus group with `tr X = x`, `tr Y = y`, `tr XY = z` and
/// parabolic commutator.
pub fn ptor_group(x: Complex64, y: Complex64, root: Root) -> Result<GroupSpec, KleinianError> {
    if x.norm() == 0.0 || y.norm() == 0.0 {
        return Err(KleinianError::DegenerateTraces);
    }
    let t = TraceTriple::from_pair(x, y, root);
    let z = t.z;
    let i = Complex64::i();
    let scale = (x * y).norm();
    let z0 = (z - 2.0) * y / nonzero(y * z - 2.0 * x + 2.0 * i * z, scale)?;
    let gen_x = Mobius::new(
        x / 2.0,
        (x * z - 2.0 * y + 4.0 * i) / nonzero((2.0 * z + 4.0) * z0, scale)?,
        (x * z - 2.0 * y - 4.0 * i) * z0 / nonzero(2.0 * z - 4.0, scale)?,
        x / 2.0,
    )?;
    let gen_y = Mobius::new((y - 2.0 * i) / 2.0, y / 2.0, y / 2.0, (y + 2.0 * i) / 2.0)?;

    let close = |a: Complex64, b: Complex64| (a - b).norm() <= 1e-12 * (1.0 + b.norm());
    let traces_ok = |m: &Mobius, target: Complex64| close(m.trace(), target) || close(m.trace(), -target);
    let xy = gen_x * gen_y;
    if !(traces_ok(&gen_x, x) && traces_ok(&gen_y, y) && traces_ok(&xy, z)) {
        return Err(KleinianError::DegenerateTraces);
    }
    if t.markov_residual() > MARKOV_TOLERANCE
        || (commutator_trace(&gen_x, &gen_y) + 2.0).norm() > MARKOV_TOLERANCE * (1.0 + scale)
    {
        return Err(KleinianError::DegenerateTraces);
    }
    let real = [x, y, z].iter().all(|v| v.im.abs() <= 1e-12 * (1.0 + v.norm()));
    let kind = if real && [x, y, z].iter().all(|v| v.re.abs() > 2.0) {
        GroupKind::Fuchsian
    } else {
        GroupKind::QuasifuchsianCandidate
    };
    Ok(GroupSpec {
        generators: vec![gen_x, gen_y],
        kind,
        traces: Some(t),
    })
}

/// Result of the Jørgensen test on a pair of generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jorgensen {
    pub value: f64,
    /// `J < 1`: the group is not discrete.
    pub violates: bool,
}

/// `|tr²A - 4| + |tr[A,B] - 2|`.
pub fn jorgensen(a: &Mobius, b: &Mobius) -> Result<Jorgensen, KleinianError> {
    let fa = a.fixed_points().map_err(|_| KleinianError::Elementary)?.points();
    let fb = b.fixed_points().map_err(|_| KleinianError::Elementary)?.points();
    if fa.iter().any(|p| fb.iter().any(|q| p.chordal(*q) <= 1e-9)) {
        return Err(KleinianError::Elementary);
    }
    let ta = a.trace();
    let comm = commutator_trace(a, b);
    let value = (ta * ta - 4.0).norm() + (comm - 2.0).norm();
    Ok(Jorgensen {
        value,
        violates: value < 1.0,
    })
}

/// A nonnegative fraction `p/q` in lowest terms; `1/0` is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub p: u64,
    pub q: u64,
}

impl Fraction {
    pub fn new(p: u64, q: u64) -> Result<Fraction, KleinianError> {
        if gcd(p, q) != 1 {
            return Err(KleinianError::NotReduced { p, q });
        }
        Ok(Fraction { p, q })
    }

    fn mediant(self, o: Fraction) -> Fraction {
        Fraction {
            p: self.p + o.p,
            q: self.q + o.q,
        }
    }

    fn cmp_value(self, o: Fraction) -> std::cmp::Ordering {
        (self.p as u128 * o.q as u128).cmp(&(o.p as u128 * self.q as u128))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Fraction {
    type Err = KleinianError;

    fn from_str(s: &str) -> Result<Fraction, KleinianError> {
        let bad = || KleinianError::Parse {
            line: 0,
            message: format!("expected p/q, got `{s}`"),
        };
        let (p, q) = s.split_once('/').ok_or_else(bad)?;
        let p = p.trim().parse().map_err(|_| bad())?;
        let q = q.trim().parse().map_err(|_| bad())?;
        Fraction::new(p, q)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A vertex of the Stern–Brocot tree: the mediant of its two parents with
/// the traces of all three words.
#[derive(Debug, Clone, Copy)]
struct Vertex {
    left: Fraction,
    right: Fraction,
    t_left: Complex64,
    t_right: Complex64,
    t_mid: Complex64,
}

impl Vertex {
    fn root(t: &TraceTriple) -> Vertex {
        Vertex {
            left: Fraction { p: 0, q: 1 },
            right: Fraction { p: 1, q: 0 },
            t_left: t.x,
            t_right: t.y,
            t_mid: t.z,
        }
    }

    fn mid(&self) -> Fraction {
        self.left.mediant(self.right)
    }

    /// `tr(W_{l ⊕ m}) = tr W_l · tr W_m - tr W_r`.
    fn go_left(&self) -> Vertex {
        Vertex {
            left: self.left,
            right: self.mid(),
            t_left: self.t_left,
            t_right: self.t_mid,
            t_mid: self.t_left * self.t_mid - self.t_right,
        }
    }

    fn go_right(&self) -> Vertex {
        Vertex {
            left: self.mid(),
            right: self.right,
            t_left: self.t_mid,
            t_right: self.t_right,
            t_mid: self.t_mid * self.t_right - self.t_left,
        }
    }

    fn triple(&self) -> TraceTriple {
        TraceTriple::new(self.t_left, self.t_right, self.t_mid)
    }
}

/// Trace of the primitive word with slope `p/q`: `0/1 -> X`, `1/0 -> Y`,
/// `1/1 -> XY`, and mediants multiply.
pub fn farey_trace(f: Fraction, t: &TraceTriple) -> Complex64 {
    farey_path(f, t).last().map(|v| v.t_mid).unwrap_or(t.z)
}

/// Like [`farey_trace`] from raw numerator and denominator.
pub fn farey_trace_of(p: u64, q: u64, t: &TraceTriple) -> Result<Complex64, KleinianError> {
    let f = Fraction::new(p, q)?;
    Ok(farey_trace(f, t))
}

/// Trace triples at the Stern–Brocot vertices from the root down to `f`.
pub fn farey_triples(f: Fraction, t: &TraceTriple) -> Vec<TraceTriple> {
    let mut out = vec![*t];
    out.extend(farey_path(f, t).iter().map(Vertex::triple));
    out
}

fn farey_path(f: Fraction, t: &TraceTriple) -> Vec<Vertex> {
    let mut path = Vec::new();
    let mut v = Vertex::root(t);
    if f == v.left || f == v.right {
        path.push(Vertex {
            t_mid: if f == v.left { t.x } else { t.y },
            ..v
        });
        return path;
    }
    loop {
        match f.cmp_value(v.mid()) {
            std::cmp::Ordering::Equal => return path,
            std::cmp::Ordering::Less => v = v.go_left(),
            std::cmp::Ordering::Greater => v = v.go_right(),
        }
        path.push(v);
    }
}

/// Outcome of the primitive-trace scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BqResult {
    Pass,
    Fail {
        witness: Fraction,
        trace: Complex64,
        /// Stern–Brocot depth of the witness; `0` for the three base words.
        depth: u32,
    },
}

impl BqResult {
    pub fn passed(&self) -> bool {
        matches!(self, BqResult::Pass)
    }
}

fn bad_trace(t: Complex64) -> bool {
    let real_elliptic = t.im.abs() <= 1e-12 && t.re.abs() < 2.0;
    real_elliptic || t.norm() < 2.0
}

/// Scans the primitive traces of the nonnegative Stern–Brocot tree to
/// `depth` levels below `1/1`, breadth first.
pub fn bq_classify(t: &TraceTriple, depth: u32) -> BqResult {
    for (f, tr) in [((0, 1), t.x), ((1, 0), t.y), ((1, 1), t.z)] {
        if bad_trace(tr) {
            return BqResult::Fail {
                witness: Fraction { p: f.0, q: f.1 },
                trace: tr,
                depth: 0,
            };
        }
    }
    let mut level = vec![Vertex::root(t)];
    for d in 1..=depth {
        let mut next = Vec::with_capacity(level.len() * 2);
        for v in &level {
            for child in [v.go_left(), v.go_right()] {
                if bad_trace(child.t_mid) {
                    return BqResult::Fail {
                        witness: child.mid(),
                        trace: child.t_mid,
                        depth: d,
                    };
                }
                next.push(child);
            }
        }
        level = next;
    }
    BqResult::Pass
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn fuchsian_base_point() {
        let g = ptor_group(c(3.0, 0.0), c(3.0, 0.0), Root::Minus).unwrap();
        let t = g.traces.unwrap();
        assert!((t.z - 3.0).norm() < 1e-12);
        assert_eq!(g.kind, GroupKind::Fuchsian);
        let [x, y] = g.generators.as_slice() else { panic!() };
        let comm = commutator_trace(x, y);
        assert!((comm + 2.0).norm() < 1e-9, "{comm}");
        assert!(((*x * *y).trace().norm() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn farey_base_cases_and_first_step() {
        let t = TraceTriple::new(c(3.0, 0.0), c(3.0, 0.0), c(3.0, 0.0));
        assert_eq!(farey_trace_of(0, 1, &t).unwrap(), c(3.0, 0.0));
        assert_eq!(farey_trace_of(1, 0, &t).unwrap(), c(3.0, 0.0));
        assert_eq!(farey_trace_of(1, 1, &t).unwrap(), c(3.0, 0.0));
        assert_eq!(farey_trace_of(1, 2, &t).unwrap(), c(6.0, 0.0));
        assert!(matches!(farey_trace_of(2, 4, &t), Err(KleinianError::NotReduced { p: 2, q: 4 })));
        // asymmetric triple separates x z - y from z y - x
        let u = TraceTriple::new(c(2.0, 0.0), c(5.0, 0.0), c(7.0, 0.0));
        assert_eq!(farey_trace_of(1, 2, &u).unwrap(), c(2.0 * 7.0 - 5.0, 0.0));
        assert_eq!(farey_trace_of(2, 1, &u).unwrap(), c(7.0 * 5.0 - 2.0, 0.0));
    }

    #[test]
    fn classifier_examples() {
        let t = TraceTriple::new(c(3.0, 0.0), c(3.0, 0.0), c(3.0, 0.0));
        assert!(bq_classify(&t, 8).passed());
        let bad = TraceTriple::from_pair(c(1.0, 0.0), c(1.0, 0.0), Root::Minus);
        assert!(matches!(bq_classify(&bad, 0), BqResult::Fail { depth: 0, .. }));
    }

    #[test]
    fn jorgensen_on_parabolic_commutator() {
        let g = ptor_group(c(3.0, 0.1), c(3.0, 0.0), Root::Minus).unwrap();
        let j = jorgensen(&g.generators[0], &g.generators[1]).unwrap();
        assert!(j.value >= 4.0 - 1e-9 && !j.violates);
        let a = Mobius::real(2.0, 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(jorgensen(&a, &a), Err(KleinianError::Elementary)));
    }
}
