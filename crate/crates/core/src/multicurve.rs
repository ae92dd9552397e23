//! Integral multicurves on a closed surface: normalization, intersection
//! numbers and the two smoothing operations `♯` and `♭`.
//!
//! Smoothing convention: at every crossing the `λ`-strand turns
//! counterclockwise onto the `μ`-strand for `♯` and clockwise for `♭`.
//! Equivalently, a `μ`-strand turns clockwise onto `λ` for `♯`, so that
//! `(λ, μ)♯ = (μ, λ)♭`.
//!
//! A component of weight `k` is realized by `k` parallel copies of its
//! geodesic, copy `a` pushed `a·ε` to the left. The push-offs are handled
//! combinatorially (as `ε → 0`), so no push-off can create or lose a
//! crossing.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::hyperbolic::{
    geodesic_crossings, self_intersection, AxisFrame, CrossingOptions, FuchsianModel, HyperbolicError,
};
use crate::word::{CurveWord, SurfaceSpec, Word, WordError, DEFAULT_WORD_CAP};

/// Default hyperbolic offset between parallel copies in a diagram.
pub const DEFAULT_PUSH_OFF: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MulticurveError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Hyperbolic(HyperbolicError),
    #[error("components {first} and {second} intersect {count} times")]
    NotDisjoint { first: String, second: String, count: usize },
    #[error("class {0} is not simple")]
    NotSimple(String),
    #[error("multicurves live on surfaces of genus {0} and {1}")]
    SurfaceMismatch(u32, u32),
    #[error("two crossings within {tol} of each other at parameter {at}")]
    DegenerateCrossing { at: f64, tol: f64 },
    #[error("{0} is a component of both multicurves")]
    SharedParallelComponent(String),
    #[error("weights must be positive")]
    ZeroWeight,
    #[error("trivial class where a curve is required")]
    TrivialCurve,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl From<HyperbolicError> for MulticurveError {
    fn from(e: HyperbolicError) -> Self {
        match e {
            HyperbolicError::Word(w) => MulticurveError::Word(w),
            HyperbolicError::DegenerateCrossing { at, tol } => MulticurveError::DegenerateCrossing { at, tol },
            other => MulticurveError::Hyperbolic(other),
        }
    }
}

/// Smoothing mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `♯`: counterclockwise turn from `λ` onto `μ`.
    Sharp,
    /// `♭`: clockwise turn from `λ` onto `μ`.
    Flat,
}

impl Mode {
    fn turn(self) -> i8 {
        match self {
            Mode::Sharp => 1,
            Mode::Flat => -1,
        }
    }

    pub fn opposite(self) -> Mode {
        match self {
            Mode::Sharp => Mode::Flat,
            Mode::Flat => Mode::Sharp,
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Mode, String> {
        match s {
            "sharp" | "♯" | "#" => Ok(Mode::Sharp),
            "flat" | "♭" | "b" => Ok(Mode::Flat),
            _ => Err(format!("unknown smoothing mode `{s}` (expected sharp or flat)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Sharp => "sharp",
            Mode::Flat => "flat",
        })
    }
}

/// Direction of the grafting sequence: `+` for `n → ∞`, `-` for `n → -∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraftDirection {
    Plus,
    Minus,
}

impl FromStr for GraftDirection {
    type Err = String;

    fn from_str(s: &str) -> Result<GraftDirection, String> {
        match s {
            "+" | "plus" => Ok(GraftDirection::Plus),
            "-" | "minus" => Ok(GraftDirection::Minus),
            _ => Err(format!("unknown direction `{s}` (expected plus or minus)")),
        }
    }
}

/// A weighted set of disjoint, pairwise non-parallel simple closed curves.
///
/// Values are only produced by [`CurveCalculus`], which checks disjointness
/// and simplicity; the empty multicurve is the zero lamination.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multicurve {
    surface: SurfaceSpec,
    components: BTreeMap<CurveWord, u32>,
}

impl Multicurve {
    pub fn zero(surface: SurfaceSpec) -> Multicurve {
        Multicurve {
            surface,
            components: BTreeMap::new(),
        }
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.surface
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Components in canonical order.
    pub fn components(&self) -> impl Iterator<Item = (&CurveWord, u32)> {
        self.components.iter().map(|(c, &w)| (c, w))
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn weight(&self, c: &CurveWord) -> u32 {
        self.components.get(c).copied().unwrap_or(0)
    }

    pub fn total_weight(&self) -> u64 {
        self.components.values().map(|&w| w as u64).sum()
    }

    /// `k·λ`; `k = 0` gives the zero lamination.
    pub fn scale(&self, k: u32) -> Multicurve {
        if k == 0 {
            return Multicurve::zero(self.surface);
        }
        Multicurve {
            surface: self.surface,
            components: self.components.iter().map(|(c, &w)| (c.clone(), w * k)).collect(),
        }
    }

    fn shares_component(&self, other: &Multicurve) -> Option<&CurveWord> {
        self.components.keys().find(|c| other.components.contains_key(c))
    }
}

/// Text form: one `<weight>*<word>` line per component, or `0`.
impl fmt::Display for Multicurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return writeln!(f, "0");
        }
        for (c, w) in &self.components {
            writeln!(f, "{w}*{c}")?;
        }
        Ok(())
    }
}

/// Which multicurve a strand belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lambda,
    Mu,
}

/// One parallel copy of one component.
#[derive(Debug, Clone)]
pub struct Strand {
    pub side: Side,
    pub component: CurveWord,
    pub copy: u32,
    /// Crossing ids in the order met when traversing the strand forward from
    /// its base point.
    pub events: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct DiagramCrossing {
    /// Position in the upper half-plane, push-offs applied to first order.
    pub point: Complex64,
    pub lambda_strand: usize,
    pub mu_strand: usize,
    /// Index of this crossing in the event list of each strand.
    pub lambda_event: usize,
    pub mu_event: usize,
    /// Orientation of the frame (λ-tangent, μ-tangent).
    pub sign: i8,
    /// `g` with the λ-lift `axis(c)` meeting `g·axis(d)` here.
    pub element: Word,
}

/// Realization of `λ ∪ μ` in minimal position.
#[derive(Debug, Clone)]
pub struct CrossingDiagram {
    pub strands: Vec<Strand>,
    pub crossings: Vec<DiagramCrossing>,
    pub push_off: f64,
}

/// Result of resolving every crossing of a diagram.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub multicurve: Multicurve,
    pub resolved: usize,
}

/// Curve calculus on a fixed Fuchsian model.
#[derive(Debug, Clone)]
pub struct CurveCalculus {
    model: FuchsianModel,
    options: CrossingOptions,
    word_cap: usize,
    push_off: f64,
}

impl CurveCalculus {
    pub fn new(genus: u32) -> Result<CurveCalculus, MulticurveError> {
        Ok(CurveCalculus::with_model(FuchsianModel::standard(genus)?))
    }

    pub fn with_model(model: FuchsianModel) -> CurveCalculus {
        CurveCalculus {
            model,
            options: CrossingOptions::default(),
            word_cap: DEFAULT_WORD_CAP,
            push_off: DEFAULT_PUSH_OFF,
        }
    }

    pub fn with_options(mut self, options: CrossingOptions) -> CurveCalculus {
        self.options = options;
        self
    }

    pub fn with_word_cap(mut self, cap: usize) -> CurveCalculus {
        self.word_cap = cap;
        self
    }

    pub fn with_push_off(mut self, eps: f64) -> CurveCalculus {
        self.push_off = eps;
        self
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.model.surface()
    }

    pub fn model(&self) -> &FuchsianModel {
        &self.model
    }

    pub fn options(&self) -> &CrossingOptions {
        &self.options
    }

    /// Parses a nontrivial curve class, enforcing the word-length cap.
    pub fn curve(&self, text: &str) -> Result<CurveWord, MulticurveError> {
        let w = Word::parse(text, self.surface())?;
        w.check_cap(self.word_cap)?;
        CurveWord::from_word(&w, self.surface())?.ok_or(MulticurveError::TrivialCurve)
    }

    /// Merges parallel parts, drops trivial ones, and checks that the
    /// result is a multicurve.
    pub fn normalize(&self, parts: &[(u32, CurveWord)]) -> Result<Multicurve, MulticurveError> {
        let mut components: BTreeMap<CurveWord, u32> = BTreeMap::new();
        for (w, c) in parts {
            if *w == 0 {
                return Err(MulticurveError::ZeroWeight);
            }
            *components.entry(c.clone()).or_default() += w;
        }
        self.validated(components)
    }

    /// Like [`CurveCalculus::normalize`] from raw words; trivial words are
    /// dropped.
    pub fn normalize_words(&self, parts: &[(u32, Word)]) -> Result<Multicurve, MulticurveError> {
        let mut curves = Vec::with_capacity(parts.len());
        for (w, word) in parts {
            if *w == 0 {
                return Err(MulticurveError::ZeroWeight);
            }
            if let Some(c) = CurveWord::from_word(word, self.surface())? {
                curves.push((*w, c));
            }
        }
        self.normalize(&curves)
    }

    fn validated(&self, components: BTreeMap<CurveWord, u32>) -> Result<Multicurve, MulticurveError> {
        let keys: Vec<&CurveWord> = components.keys().collect();
        for c in &keys {
            if !self_intersection(&self.model, c.word(), &self.options)?.is_simple() {
                return Err(MulticurveError::NotSimple(c.to_string()));
            }
        }
        for (i, c) in keys.iter().enumerate() {
            for d in &keys[i + 1..] {
                let count = self.curve_intersection(c, d)?;
                if count > 0 {
                    return Err(MulticurveError::NotDisjoint {
                        first: c.to_string(),
                        second: d.to_string(),
                        count,
                    });
                }
            }
        }
        Ok(Multicurve {
            surface: self.surface(),
            components,
        })
    }

    /// Parses the line format `<weight>*<word>` (or `0`).
    pub fn parse_multicurve(&self, text: &str) -> Result<Multicurve, MulticurveError> {
        let mut parts = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line == "0" {
                continue;
            }
            let (w, word) = line.split_once('*').ok_or_else(|| MulticurveError::Parse {
                line: n + 1,
                message: format!("expected <weight>*<word>, got `{line}`"),
            })?;
            let weight: u32 = w.trim().parse().map_err(|_| MulticurveError::Parse {
                line: n + 1,
                message: format!("bad weight `{}`", w.trim()),
            })?;
            if weight == 0 {
                return Err(MulticurveError::ZeroWeight);
            }
            let word = Word::parse(word, self.surface())?;
            word.check_cap(self.word_cap)?;
            parts.push((weight, word));
        }
        self.normalize_words(&parts)
    }

    /// Geometric intersection number of two classes.
    pub fn curve_intersection(&self, c: &CurveWord, d: &CurveWord) -> Result<usize, MulticurveError> {
        if c == d {
            return Ok(0);
        }
        Ok(geodesic_crossings(&self.model, c.word(), d.word(), &self.options)?.len())
    }

    fn same_surface(&self, l: &Multicurve, m: &Multicurve) -> Result<(), MulticurveError> {
        let g = self.surface().genus();
        for x in [l, m] {
            if x.surface.genus() != g {
                return Err(MulticurveError::SurfaceMismatch(g, x.surface.genus()));
            }
        }
        Ok(())
    }

    /// `Σ k_c k_d i(c, d)`.
    pub fn intersection_number(&self, l: &Multicurve, m: &Multicurve) -> Result<u64, MulticurveError> {
        self.same_surface(l, m)?;
        let mut total = 0u64;
        for (c, kc) in l.components() {
            for (d, kd) in m.components() {
                total += kc as u64 * kd as u64 * self.curve_intersection(c, d)? as u64;
            }
        }
        Ok(total)
    }

    /// `λ + μ` for disjoint multicurves.
    pub fn sum(&self, l: &Multicurve, m: &Multicurve) -> Result<Multicurve, MulticurveError> {
        self.same_surface(l, m)?;
        let mut components = l.components.clone();
        for (c, w) in m.components() {
            *components.entry(c.clone()).or_default() += w;
        }
        let keys: Vec<&CurveWord> = components.keys().collect();
        for (i, c) in keys.iter().enumerate() {
            for d in &keys[i + 1..] {
                let count = self.curve_intersection(c, d)?;
                if count > 0 {
                    return Err(MulticurveError::NotDisjoint {
                        first: c.to_string(),
                        second: d.to_string(),
                        count,
                    });
                }
            }
        }
        Ok(Multicurve {
            surface: self.surface(),
            components,
        })
    }

    /// Geodesic realization of `λ ∪ μ` with parallel copies for weights.
    pub fn realize_pair(&self, l: &Multicurve, m: &Multicurve) -> Result<CrossingDiagram, MulticurveError> {
        self.same_surface(l, m)?;
        let mut strands = Vec::new();
        let mut first_copy: BTreeMap<(u8, usize), usize> = BTreeMap::new();
        for (tag, side, mc) in [(0u8, Side::Lambda, l), (1u8, Side::Mu, m)] {
            for (ci, (c, k)) in mc.components().enumerate() {
                first_copy.insert((tag, ci), strands.len());
                for copy in 0..k {
                    strands.push(Strand {
                        side,
                        component: c.clone(),
                        copy,
                        events: Vec::new(),
                    });
                }
            }
        }

        // per strand: (crossing id, parameter, infinitesimal offset)
        let mut keyed: Vec<Vec<(usize, f64, f64)>> = vec![Vec::new(); strands.len()];
        let mut crossings = Vec::new();
        let eps = self.push_off;
        for (ci, (c, kc)) in l.components().enumerate() {
            let frame = AxisFrame::new(&self.model.word_matrix(c.word()))?;
            for (di, (d, kd)) in m.components().enumerate() {
                if c == d {
                    continue;
                }
                for x in geodesic_crossings(&self.model, c.word(), d.word(), &self.options)? {
                    let cos = x.cos_angle.clamp(-1.0, 1.0);
                    let sin = x.sign as f64 * (1.0 - cos * cos).sqrt().max(1e-300);
                    let y = Complex64::new(0.0, x.s.exp());
                    let f = frame.from_frame;
                    let tangent = y / (Complex64::new(f.c, 0.0) * y + f.d).powi(2);
                    for a in 0..kc {
                        for b in 0..kd {
                            let along_l = (a as f64 * cos - b as f64) / sin;
                            let along_m = (a as f64 - b as f64 * cos) / sin;
                            let ls = first_copy[&(0, ci)] + a as usize;
                            let ms = first_copy[&(1, di)] + b as usize;
                            let id = crossings.len();
                            keyed[ls].push((id, x.s, along_l));
                            keyed[ms].push((id, x.t, along_m));
                            let offset = tangent * Complex64::new(along_l, a as f64) * eps;
                            crossings.push(DiagramCrossing {
                                point: x.point + offset,
                                lambda_strand: ls,
                                mu_strand: ms,
                                lambda_event: 0,
                                mu_event: 0,
                                sign: x.sign,
                                element: x.element.clone(),
                            });
                        }
                    }
                }
            }
        }

        let tol = self.options.degenerate_tol;
        for (si, keys) in keyed.iter_mut().enumerate() {
            keys.sort_by(|p, q| p.1.total_cmp(&q.1).then(p.2.total_cmp(&q.2)));
            for pair in keys.windows(2) {
                let same_site = pair[0].1 == pair[1].1;
                if !same_site && (pair[1].1 - pair[0].1).abs() < tol {
                    return Err(MulticurveError::DegenerateCrossing { at: pair[1].1, tol });
                }
            }
            for (pos, &(id, _, _)) in keys.iter().enumerate() {
                let x = &mut crossings[id];
                if strands[si].side == Side::Lambda {
                    x.lambda_event = pos;
                } else {
                    x.mu_event = pos;
                }
            }
            strands[si].events = keys.iter().map(|k| k.0).collect();
        }
        Ok(CrossingDiagram {
            strands,
            crossings,
            push_off: eps,
        })
    }

    /// Resolves every crossing of `λ ∪ μ` by `mode`.
    pub fn resolve(&self, l: &Multicurve, m: &Multicurve, mode: Mode) -> Result<Resolution, MulticurveError> {
        if self.intersection_number(l, m)? == 0 {
            return Ok(Resolution {
                multicurve: self.sum(l, m)?,
                resolved: 0,
            });
        }
        let diagram = self.realize_pair(l, m)?;
        let mut parts: Vec<(u32, Word)> = Vec::new();
        let mut visited: Vec<Vec<bool>> = diagram.strands.iter().map(|s| vec![false; s.events.len()]).collect();
        let turn = mode.turn();
        for (s0, strand) in diagram.strands.iter().enumerate() {
            if strand.events.is_empty() {
                parts.push((1, strand.component.word().clone()));
                continue;
            }
            for a0 in 0..strand.events.len() {
                if visited[s0][a0] {
                    continue;
                }
                let mut word = Word::empty();
                let (mut s, mut arc, mut dir) = (s0, a0, 1i8);
                loop {
                    visited[s][arc] = true;
                    let st = &diagram.strands[s];
                    let n = st.events.len();
                    if arc == n - 1 {
                        let w = st.component.word();
                        word.append(&if dir > 0 { w.clone() } else { w.inverse() });
                    }
                    let event = if dir > 0 { (arc + 1) % n } else { arc };
                    let x = &diagram.crossings[st.events[event]];
                    let (next, next_event) = match st.side {
                        Side::Lambda => {
                            word.append(&x.element);
                            (x.mu_strand, x.mu_event)
                        }
                        Side::Mu => {
                            word.append(&x.element.inverse());
                            (x.lambda_strand, x.lambda_event)
                        }
                    };
                    dir *= turn * x.sign;
                    let m = diagram.strands[next].events.len();
                    arc = if dir > 0 { next_event } else { (next_event + m - 1) % m };
                    s = next;
                    if (s, arc, dir) == (s0, a0, 1) {
                        break;
                    }
                    debug_assert!(!visited[s][arc], "arc traversed twice");
                }
                parts.push((1, word.free_reduce()));
            }
        }
        Ok(Resolution {
            multicurve: self.normalize_words(&parts)?,
            resolved: diagram.crossings.len(),
        })
    }

    /// `(λ, μ)♯` or `(λ, μ)♭`.
    pub fn smooth(&self, l: &Multicurve, m: &Multicurve, mode: Mode) -> Result<Multicurve, MulticurveError> {
        Ok(self.resolve(l, m, mode)?.multicurve)
    }

    /// Component label of the regrafted sequence in the given direction.
    pub fn graft_component_label(
        &self,
        l: &Multicurve,
        m: &Multicurve,
        direction: GraftDirection,
    ) -> Result<Multicurve, MulticurveError> {
        self.same_surface(l, m)?;
        if let Some(c) = l.shares_component(m) {
            return Err(MulticurveError::SharedParallelComponent(c.to_string()));
        }
        let mode = match direction {
            GraftDirection::Plus => Mode::Sharp,
            GraftDirection::Minus => Mode::Flat,
        };
        self.smooth(l, m, mode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn calc() -> CurveCalculus {
        CurveCalculus::new(2).unwrap()
    }

    fn mc(c: &CurveCalculus, text: &str) -> Multicurve {
        c.parse_multicurve(&text.replace(';', "\n")).unwrap()
    }

    #[test]
    fn normalize_merges_parallel_parts() {
        let c = calc();
        assert_eq!(mc(&c, "1*a1;2*a1").to_string(), "3*a1\n");
        assert_eq!(mc(&c, "1*a1;1*b1 a1 B1").to_string(), "2*a1\n");
        assert_eq!(mc(&c, "1*A1").to_string(), "1*a1\n");
        assert!(matches!(
            c.parse_multicurve("1*a1\n1*b1"),
            Err(MulticurveError::NotDisjoint { count: 1, .. })
        ));
        assert!(matches!(c.parse_multicurve("1*a1 a1 b1 b1"), Err(MulticurveError::NotSimple(_))));
        assert!(c.parse_multicurve("1*a1 A1").unwrap().is_zero());
    }

    #[test]
    fn text_round_trip() {
        let c = calc();
        let l = mc(&c, "2*a1;1*b2");
        assert_eq!(c.parse_multicurve(&l.to_string()).unwrap(), l);
        let z = Multicurve::zero(c.surface());
        assert_eq!(z.to_string(), "0\n");
        assert_eq!(c.parse_multicurve("0").unwrap(), z);
    }

    #[test]
    fn intersection_numbers() {
        let c = calc();
        let a1 = mc(&c, "1*a1");
        assert_eq!(c.intersection_number(&a1, &a1).unwrap(), 0);
        assert_eq!(c.intersection_number(&a1, &mc(&c, "1*b1")).unwrap(), 1);
        assert_eq!(c.intersection_number(&mc(&c, "2*a1;1*b2"), &mc(&c, "3*b1")).unwrap(), 6);
    }

    #[test]
    fn sums() {
        let c = calc();
        let z = Multicurve::zero(c.surface());
        let b2 = mc(&c, "1*b2");
        assert_eq!(c.sum(&z, &b2).unwrap(), b2);
        assert_eq!(c.sum(&mc(&c, "1*a1"), &mc(&c, "2*a1")).unwrap(), mc(&c, "3*a1"));
        assert!(matches!(
            c.sum(&mc(&c, "1*a1"), &mc(&c, "1*b1")),
            Err(MulticurveError::NotDisjoint { .. })
        ));
    }

    #[test]
    fn diagrams_count_crossings() {
        let c = calc();
        let d = c.realize_pair(&mc(&c, "1*a1"), &mc(&c, "1*b2")).unwrap();
        assert!(d.crossings.is_empty());
        let d = c.realize_pair(&mc(&c, "1*a1"), &mc(&c, "1*b1")).unwrap();
        assert_eq!(d.crossings.len(), 1);
        let d = c.realize_pair(&mc(&c, "2*a1"), &mc(&c, "1*b1")).unwrap();
        assert_eq!(d.crossings.len(), 2);
        let lambda_strands: Vec<_> = d.crossings.iter().map(|x| x.lambda_strand).collect();
        assert_ne!(lambda_strands[0], lambda_strands[1]);
        assert!((d.crossings[0].point - d.crossings[1].point).norm() > 0.0);
    }

    #[test]
    fn smoothing_a_single_crossing() {
        let c = calc();
        let a1 = mc(&c, "1*a1");
        let b1 = mc(&c, "1*b1");
        let sharp = c.smooth(&a1, &b1, Mode::Sharp).unwrap();
        assert_eq!(sharp, mc(&c, "1*a1 b1"));
        let flat = c.smooth(&a1, &b1, Mode::Flat).unwrap();
        assert_eq!(flat, mc(&c, "1*a1 B1"));
        assert_eq!(c.smooth(&sharp, &b1, Mode::Flat).unwrap(), a1);
        assert_eq!(c.smooth(&flat, &b1, Mode::Sharp).unwrap(), a1);
    }

    #[test]
    fn disjoint_smoothing_is_the_sum() {
        let c = calc();
        let a1 = mc(&c, "1*a1");
        let b2 = mc(&c, "1*b2");
        for mode in [Mode::Sharp, Mode::Flat] {
            assert_eq!(c.smooth(&a1, &b2, mode).unwrap(), mc(&c, "1*a1;1*b2"));
        }
    }

    #[test]
    fn graft_labels() {
        let c = calc();
        let z = Multicurve::zero(c.surface());
        let a1 = mc(&c, "1*a1");
        let b1 = mc(&c, "1*b1");
        assert_eq!(c.graft_component_label(&z, &b1, GraftDirection::Plus).unwrap(), b1);
        assert_eq!(c.graft_component_label(&a1, &z, GraftDirection::Minus).unwrap(), a1);
        assert_eq!(
            c.graft_component_label(&a1, &b1, GraftDirection::Plus).unwrap(),
            c.smooth(&a1, &b1, Mode::Sharp).unwrap()
        );
        assert!(matches!(
            c.graft_component_label(&a1, &mc(&c, "1*a1;1*b2"), GraftDirection::Plus),
            Err(MulticurveError::SharedParallelComponent(_))
        ));
    }

    #[test]
    fn weighted_smoothing() {
        let c = calc();
        let l = mc(&c, "2*a1");
        let m = mc(&c, "1*b1");
        let r = c.resolve(&l, &m, Mode::Sharp).unwrap();
        assert_eq!(r.resolved, 2);
        assert_eq!(c.smooth(&r.multicurve, &m, Mode::Flat).unwrap(), l);
        assert_eq!(c.smooth(&l, &m, Mode::Sharp).unwrap(), c.smooth(&m, &l, Mode::Flat).unwrap());
    }
}
