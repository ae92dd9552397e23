//! Words in the one-relator presentation
//! `<a1, b1, ..., ag, bg | [a1,b1]...[ag,bg]>` of a closed surface group,
//! Dehn reduction, and a conjugacy normal form for unoriented curve classes.
//!
//! Every letter and every inverse letter occurs exactly once in the relator,
//! so a subword of a cyclic permutation of the relator is just a run of
//! letters where each one is the relator-successor of the previous one.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Default cap on the length of user-supplied curve words.
pub const DEFAULT_WORD_CAP: usize = 64;

/// Upper bound on the number of cyclic words explored while searching for a
/// conjugacy normal form.
const MAX_CLOSURE: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u32),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("word has {len} letters, above the cap of {cap}")]
    TooLong { len: usize, cap: usize },
    #[error("conjugacy search exceeded {0} cyclic words")]
    ClosureTooLarge(usize),
}

/// A closed orientable surface of genus at least two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceSpec {
    genus: u32,
}

impl SurfaceSpec {
    pub fn new(genus: u32) -> Result<Self, WordError> {
        if genus < 2 {
            return Err(WordError::GenusTooSmall(genus));
        }
        Ok(SurfaceSpec { genus })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Number of generators, `2g`.
    pub fn rank(&self) -> usize {
        2 * self.genus as usize
    }

    /// Length of the relator, `4g`.
    pub fn relator_len(&self) -> usize {
        4 * self.genus as usize
    }

    /// All `4g` letters in code order (`a1 A1 b1 B1 a2 ...`).
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.relator_len() as u16).map(Letter)
    }

    /// The relator `a1 b1 A1 B1 a2 b2 A2 B2 ...`.
    pub fn relator(&self) -> Word {
        let mut out = Vec::with_capacity(self.relator_len());
        for i in 1..=self.genus {
            let a = Letter::a(i);
            let b = Letter::b(i);
            out.extend([a, b, a.inverse(), b.inverse()]);
        }
        Word(out)
    }

    pub fn contains(&self, l: Letter) -> bool {
        (l.0 as usize) < self.relator_len()
    }

    /// Successor of `l` in the cyclic relator.
    fn succ(&self, l: Letter) -> Letter {
        // position of l in R = a1 b1 A1 B1 ...
        let g = l.generator();
        let handle = g / 2;
        let is_b = g % 2 == 1;
        let pos = 4 * handle + match (is_b, l.is_inverse()) {
            (false, false) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (true, true) => 3,
        };
        self.relator_letter((pos + 1) % self.relator_len())
    }

    /// Successor of `l` in the cyclic inverse relator.
    fn succ_inv(&self, l: Letter) -> Letter {
        // x y in R^-1 iff Y X in R, i.e. y = inverse(pred_R(inverse(x)))
        let target = l.inverse();
        let pred = self
            .letters()
            .find(|&m| self.succ(m) == target)
            .expect("every letter occurs in the relator");
        pred.inverse()
    }

    fn relator_letter(&self, pos: usize) -> Letter {
        let handle = (pos / 4) as u32 + 1;
        match pos % 4 {
            0 => Letter::a(handle),
            1 => Letter::b(handle),
            2 => Letter::a(handle).inverse(),
            _ => Letter::b(handle).inverse(),
        }
    }
}

/// A generator or inverse generator.
///
/// Codes are ordered `a1 < A1 < b1 < B1 < a2 < ...`; that order is the one
/// used by every lexicographic comparison in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u16);

impl Letter {
    pub fn a(i: u32) -> Letter {
        assert!(i >= 1);
        Letter(4 * (i as u16 - 1))
    }

    pub fn b(i: u32) -> Letter {
        assert!(i >= 1);
        Letter(4 * (i as u16 - 1) + 2)
    }

    pub fn from_code(code: u16) -> Letter {
        Letter(code)
    }

    pub fn code(self) -> u16 {
        self.0
    }

    /// Generator index in `0..2g`, ordered `a1 b1 a2 b2 ...`.
    pub fn generator(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 % 2 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// 1-based handle index.
    pub fn handle(self) -> u32 {
        (self.0 / 4) as u32 + 1
    }

    pub fn is_a(self) -> bool {
        (self.0 / 2).is_multiple_of(2)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match (self.is_a(), self.is_inverse()) {
            (true, false) => 'a',
            (true, true) => 'A',
            (false, false) => 'b',
            (false, true) => 'B',
        };
        write!(f, "{}{}", c, self.handle())
    }
}

/// A finite word in the generators. No reduction is implied.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `self * other`, freely reduced at the seam.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    pub fn push(&mut self, l: Letter) {
        push_reduced(&mut self.0, l);
    }

    pub fn append(&mut self, other: &Word) {
        for &l in &other.0 {
            push_reduced(&mut self.0, l);
        }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out.append(&base);
        }
        out
    }

    pub fn free_reduce(&self) -> Word {
        let mut out = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            push_reduced(&mut out, l);
        }
        Word(out)
    }

    /// Parses whitespace-separated (or juxtaposed) letters such as
    /// `a1 b1 A1 B1`; `a1^-1` and `a1⁻¹` are accepted for inverses.
    pub fn parse(text: &str, surface: SurfaceSpec) -> Result<Word, WordError> {
        let word: Word = text.parse()?;
        if let Some(bad) = word.0.iter().find(|&&l| !surface.contains(l)) {
            return Err(WordError::UnknownSymbol(bad.to_string()));
        }
        Ok(word)
    }

    pub fn check_cap(&self, cap: usize) -> Result<(), WordError> {
        if self.len() > cap {
            return Err(WordError::TooLong { len: self.len(), cap });
        }
        Ok(())
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(text: &str) -> Result<Word, WordError> {
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        let mut letters = Vec::new();
        while i < chars.len() {
            let ch = chars[i];
            if ch.is_whitespace() || ch == '·' {
                i += 1;
                continue;
            }
            let (is_a, inv) = match ch {
                'a' => (true, false),
                'A' => (true, true),
                'b' => (false, false),
                'B' => (false, true),
                _ => return Err(WordError::UnknownSymbol(token_at(&chars, i))),
            };
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(WordError::UnknownSymbol(token_at(&chars, start - 1)));
            }
            let digits: String = chars[start..i].iter().collect();
            let handle: u32 = digits
                .parse()
                .map_err(|_| WordError::UnknownSymbol(digits.clone()))?;
            if handle == 0 || handle > 1 << 12 {
                return Err(WordError::UnknownSymbol(format!("{ch}{digits}")));
            }
            let mut flip = inv;
            let rest: String = chars[i..].iter().take(3).collect();
            if rest.starts_with("^-1") {
                flip = !flip;
                i += 3;
            } else if rest.starts_with("⁻¹") {
                flip = !flip;
                i += 2;
            }
            let base = if is_a { Letter::a(handle) } else { Letter::b(handle) };
            letters.push(if flip { base.inverse() } else { base });
        }
        Ok(Word(letters))
    }
}

fn token_at(chars: &[char], i: usize) -> String {
    chars[i..]
        .iter()
        .take_while(|c| !c.is_whitespace())
        .collect()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Outcome of cyclic reduction: either the trivial class or a nonempty
/// normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduced {
    Trivial,
    Curve(CurveWord),
}

impl Reduced {
    pub fn curve(self) -> Option<CurveWord> {
        match self {
            Reduced::Trivial => None,
            Reduced::Curve(c) => Some(c),
        }
    }
}

/// Canonical representative of an unoriented conjugacy class.
///
/// The stored word is the lexicographically least rotation, over the class
/// and its inverse, among all cyclic words of minimal length reachable by
/// half-relator exchanges. Two `CurveWord`s are equal iff they are
/// conjugate up to inversion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveWord {
    word: Word,
}

impl CurveWord {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn letters(&self) -> &[Letter] {
        self.word.letters()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Canonicalizes an arbitrary word; `None` for the trivial class.
    pub fn from_word(word: &Word, surface: SurfaceSpec) -> Result<Option<CurveWord>, WordError> {
        Ok(conjugacy_normal_form(word, surface)?.map(|word| CurveWord { word }))
    }

    pub fn parse(text: &str, surface: SurfaceSpec) -> Result<Option<CurveWord>, WordError> {
        CurveWord::from_word(&Word::parse(text, surface)?, surface)
    }
}

impl fmt::Display for CurveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// Linear (non-cyclic) Dehn reduction: free reduction plus replacement of
/// any subword longer than half a cyclic relator by the inverse of its
/// complement. The result represents the same group element.
pub fn dehn_reduce(word: &Word, surface: SurfaceSpec) -> Word {
    let half = 2 * surface.genus as usize;
    let rl = surface.relator_len();
    let mut w = word.free_reduce().0;
    'outer: loop {
        for start in 0..w.len() {
            for succ in [SurfaceSpec::succ as fn(&SurfaceSpec, Letter) -> Letter, SurfaceSpec::succ_inv] {
                let mut run = 1;
                while start + run < w.len() && w[start + run] == succ(&surface, w[start + run - 1]) {
                    run += 1;
                }
                if run > half {
                    let run = run.min(rl);
                    let replacement = complement_inverse(&surface, succ, w[start + run - 1], rl - run);
                    let mut next: Vec<Letter> = w[..start].to_vec();
                    next.extend(replacement);
                    next.extend_from_slice(&w[start + run..]);
                    w = Word(next).free_reduce().0;
                    continue 'outer;
                }
            }
        }
        break;
    }
    Word(w)
}

/// Inverse of the `len` relator letters following `last`.
fn complement_inverse(
    surface: &SurfaceSpec,
    succ: fn(&SurfaceSpec, Letter) -> Letter,
    last: Letter,
    len: usize,
) -> Vec<Letter> {
    let mut comp = Vec::with_capacity(len);
    let mut cur = last;
    for _ in 0..len {
        cur = succ(surface, cur);
        comp.push(cur);
    }
    comp.iter().rev().map(|l| l.inverse()).collect()
}

/// Cyclic free reduction.
fn cyclic_free_reduce(w: Vec<Letter>) -> Vec<Letter> {
    let mut out = Vec::with_capacity(w.len());
    for l in w {
        push_reduced(&mut out, l);
    }
    let mut lo = 0;
    let mut hi = out.len();
    while hi - lo >= 2 && out[lo] == out[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    out[lo..hi].to_vec()
}

fn rotate(w: &[Letter], k: usize) -> Vec<Letter> {
    let mut out = w[k..].to_vec();
    out.extend_from_slice(&w[..k]);
    out
}

/// Length of the relator run starting at cyclic position `start`.
fn cyclic_run(w: &[Letter], start: usize, surface: &SurfaceSpec, succ: fn(&SurfaceSpec, Letter) -> Letter) -> usize {
    let n = w.len();
    let mut run = 1;
    while run < n && w[(start + run) % n] == succ(surface, w[(start + run - 1) % n]) {
        run += 1;
    }
    run
}

/// Cyclic Dehn reduction. Returns an empty vector for the trivial class.
fn cyclic_dehn(w: Vec<Letter>, surface: &SurfaceSpec) -> Vec<Letter> {
    let half = 2 * surface.genus as usize;
    let rl = surface.relator_len();
    let mut w = cyclic_free_reduce(w);
    'outer: loop {
        let n = w.len();
        if n == 0 {
            return w;
        }
        for start in 0..n {
            for succ in [SurfaceSpec::succ as fn(&SurfaceSpec, Letter) -> Letter, SurfaceSpec::succ_inv] {
                let run = cyclic_run(&w, start, surface, succ);
                if run > half {
                    if run >= rl && n == rl {
                        // the whole cyclic word is a relator
                        return Vec::new();
                    }
                    let run = run.min(rl);
                    let rot = rotate(&w, start);
                    let mut next = complement_inverse(surface, succ, rot[run - 1], rl - run);
                    next.extend_from_slice(&rot[run..]);
                    w = cyclic_free_reduce(next);
                    continue 'outer;
                }
            }
        }
        return w;
    }
}

/// All words obtained by exchanging one exactly-half relator subword.
fn half_flips(w: &[Letter], surface: &SurfaceSpec) -> Vec<Vec<Letter>> {
    let half = 2 * surface.genus as usize;
    let n = w.len();
    let mut out = Vec::new();
    if n < half {
        return out;
    }
    for start in 0..n {
        for succ in [SurfaceSpec::succ as fn(&SurfaceSpec, Letter) -> Letter, SurfaceSpec::succ_inv] {
            if cyclic_run(w, start, surface, succ) >= half {
                let rot = rotate(w, start);
                let mut next = complement_inverse(surface, succ, rot[half - 1], half);
                next.extend_from_slice(&rot[half..]);
                out.push(next);
            }
        }
    }
    out
}

fn min_rotation(w: &[Letter]) -> Vec<Letter> {
    (0..w.len().max(1))
        .map(|k| if w.is_empty() { Vec::new() } else { rotate(w, k) })
        .min()
        .unwrap_or_default()
}

/// Conjugacy normal form of the unoriented class of `word`, or `None` when
/// the word is trivial in the group.
pub fn conjugacy_normal_form(word: &Word, surface: SurfaceSpec) -> Result<Option<Word>, WordError> {
    let mut start = cyclic_dehn(word.0.clone(), &surface);
    'restart: loop {
        if start.is_empty() {
            return Ok(None);
        }
        let mut seen: BTreeSet<Vec<Letter>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(min_rotation(&start));
        queue.push_back(start.clone());
        while let Some(u) = queue.pop_front() {
            for v in half_flips(&u, &surface) {
                let reduced = cyclic_dehn(v, &surface);
                if reduced.len() < u.len() {
                    start = reduced;
                    continue 'restart;
                }
                let key = min_rotation(&reduced);
                if seen.insert(key) {
                    if seen.len() > MAX_CLOSURE {
                        return Err(WordError::ClosureTooLarge(MAX_CLOSURE));
                    }
                    queue.push_back(reduced);
                }
            }
        }
        let best = seen
            .iter()
            .flat_map(|w| {
                let inv = Word(w.clone()).inverse().0;
                [w.clone(), min_rotation(&inv)]
            })
            .min()
            .expect("closure is nonempty");
        return Ok(Some(Word(best)));
    }
}

/// Cyclic reduction of a raw symbol sequence into a curve normal form.
pub fn cyclic_reduce(text: &str, surface: SurfaceSpec) -> Result<Reduced, WordError> {
    let w = Word::parse(text, surface)?;
    Ok(match CurveWord::from_word(&w, surface)? {
        None => Reduced::Trivial,
        Some(c) => Reduced::Curve(c),
    })
}

/// True when the word is trivial in the surface group.
pub fn is_trivial(word: &Word, surface: SurfaceSpec) -> bool {
    cyclic_dehn(word.0.clone(), &surface).is_empty() && dehn_reduce(word, surface).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> SurfaceSpec {
        SurfaceSpec::new(2).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s, g2()).unwrap()
    }

    #[test]
    fn genus_one_rejected() {
        assert_eq!(SurfaceSpec::new(1), Err(WordError::GenusTooSmall(1)));
    }

    #[test]
    fn relator_text() {
        assert_eq!(g2().relator().to_string(), "a1 b1 A1 B1 a2 b2 A2 B2");
    }

    #[test]
    fn successor_tables_match_relator() {
        let s = SurfaceSpec::new(3).unwrap();
        let r = s.relator();
        let n = r.len();
        for i in 0..n {
            assert_eq!(s.succ(r.letters()[i]), r.letters()[(i + 1) % n]);
        }
        let ri = r.inverse();
        for i in 0..n {
            assert_eq!(s.succ_inv(ri.letters()[i]), ri.letters()[(i + 1) % n]);
        }
    }

    #[test]
    fn parse_variants() {
        assert_eq!(w("a1 A1 b1"), w("a1a1^-1b1"));
        assert_eq!(w("a1⁻¹"), w("A1"));
        assert!(matches!(Word::parse("c1", g2()), Err(WordError::UnknownSymbol(_))));
        assert!(matches!(Word::parse("a3", g2()), Err(WordError::UnknownSymbol(_))));
    }

    #[test]
    fn free_and_cyclic_reduction() {
        let r = cyclic_reduce("a1 a1⁻¹ b1", g2()).unwrap();
        assert_eq!(r.curve().unwrap().to_string(), "b1");
        let r = cyclic_reduce("b1 a1 b1⁻¹ b1 a1⁻¹", g2()).unwrap();
        assert_eq!(r.curve().unwrap().to_string(), "b1");
        assert_eq!(cyclic_reduce("a1 A1", g2()).unwrap(), Reduced::Trivial);
        assert_eq!(cyclic_reduce("a1 b1 A1 B1 a2 b2 A2 B2", g2()).unwrap(), Reduced::Trivial);
        assert_eq!(cyclic_reduce("b2 A2 B2 a1 b1 A1 B1 a2", g2()).unwrap(), Reduced::Trivial);
    }

    #[test]
    fn more_than_half_relator_is_replaced() {
        assert_eq!(dehn_reduce(&w("a1 b1 A1 B1 a2"), g2()).to_string(), "b2 a2 B2");
        // cyclically, b2 a2 B2 is conjugate to a2
        let r = cyclic_reduce("a1 b1 A1 B1 a2", g2()).unwrap();
        assert_eq!(r.curve().unwrap().to_string(), "a2");
    }

    #[test]
    fn conjugates_and_inverses_share_normal_form() {
        let s = g2();
        let base = CurveWord::parse("a1 b2", s).unwrap().unwrap();
        let conj = CurveWord::parse("b1 a1 b2 B1", s).unwrap().unwrap();
        let inv = CurveWord::parse("B2 A1", s).unwrap().unwrap();
        assert_eq!(base, conj);
        assert_eq!(base, inv);
    }

    #[test]
    fn half_relator_exchange_is_a_conjugacy_invariant() {
        let s = g2();
        // a1 b1 A1 B1 = b2 a2 B2 A2 in the group
        let x = CurveWord::parse("a1 b1 A1 B1 a1", s).unwrap().unwrap();
        let y = CurveWord::parse("b2 a2 B2 A2 a1", s).unwrap().unwrap();
        assert_eq!(x, y);
    }
}
