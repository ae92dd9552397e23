//! An explicit Fuchsian model of the closed genus-`g` surface in the upper
//! half-plane, geodesic axes of group elements, and the crossing kernel that
//! realizes pairs of closed geodesics in minimal position.
//!
//! The model is the side-pairing group of the regular `4g`-gon with interior
//! angles `2π/4g`, centered at `i`. Edge `k` (clockwise, starting from the
//! edge facing the boundary point `+1` of the disk model) is paired with
//! edge `k + 2` or `k - 2` inside each block of four, and the generators are
//! chosen so that `[a1,b1]...[ag,bg]` is the identity.

mod crossings;
mod dd;
mod mat2;

use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

use crate::word::{Letter, SurfaceSpec, Word, WordError};

pub use crossings::{geodesic_crossings, self_intersection, Crossing, CrossingOptions, SelfIntersection};
use dd::{Cdd, Dd, DdMat2};
pub use mat2::Mat2;

/// Entrywise tolerance for the relator check.
pub const RELATOR_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HyperbolicError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("matrix with |trace| = {0} has no axis")]
    NoAxis(f64),
    #[error("two crossings within {tol} of each other at parameter {at}")]
    DegenerateCrossing { at: f64, tol: f64 },
    #[error("translate enumeration exceeded {0} tiles")]
    EnumerationBudgetExceeded(usize),
    #[error("relator residual {0} above tolerance")]
    RelatorResidual(f64),
}

/// A point of `R ∪ {∞}`, the boundary of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    /// Angle in `[0, 2π)` of the image on the unit circle under the Cayley
    /// map `z -> (z - i)/(z + i)`; increasing along `R` and `0` at `∞`.
    pub fn angle(self) -> f64 {
        match self {
            BoundaryPoint::Infinity => 0.0,
            BoundaryPoint::Finite(x) => {
                let z = Complex64::new(x, -1.0) / Complex64::new(x, 1.0);
                let a = z.arg();
                if a < 0.0 {
                    a + std::f64::consts::TAU
                } else {
                    a
                }
            }
        }
    }

    pub fn from_ratio(num: f64, den: f64) -> BoundaryPoint {
        if den == 0.0 || (num / den).abs() > 1e300 {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Finite(num / den)
        }
    }
}

/// Fixed points of a hyperbolic element, attracting first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub attracting: BoundaryPoint,
    pub repelling: BoundaryPoint,
}

/// The two real fixed points of a hyperbolic matrix.
pub fn axis(m: &Mat2) -> Result<Axis, HyperbolicError> {
    let frame = AxisFrame::new(m)?;
    let g = frame.from_frame;
    Ok(Axis {
        attracting: BoundaryPoint::from_ratio(g.a, g.c),
        repelling: BoundaryPoint::from_ratio(g.b, g.d),
    })
}

/// Coordinates adapted to the axis of a hyperbolic element `M`.
///
/// `from_frame` maps `0 -> repelling`, `∞ -> attracting`, and `i` to the foot
/// of the perpendicular from `i` to the axis; in frame coordinates `M` acts
/// as `z -> e^length z`.
#[derive(Debug, Clone, Copy)]
pub struct AxisFrame {
    pub from_frame: Mat2,
    pub to_frame: Mat2,
    pub length: f64,
}

impl AxisFrame {
    pub fn new(m: &Mat2) -> Result<AxisFrame, HyperbolicError> {
        let tr = m.trace();
        if tr.abs() <= 2.0 + 1e-12 {
            return Err(HyperbolicError::NoAxis(tr.abs()));
        }
        let disc = (tr * tr - 4.0).sqrt();
        let (big, small) = if tr > 0.0 {
            ((tr + disc) / 2.0, (tr - disc) / 2.0)
        } else {
            ((tr - disc) / 2.0, (tr + disc) / 2.0)
        };
        let va = m.eigenvector(big);
        let mut vr = m.eigenvector(small);
        let mut det = va.0 * vr.1 - vr.0 * va.1;
        if det < 0.0 {
            vr = (-vr.0, -vr.1);
            det = -det;
        }
        let s = det.sqrt();
        let g = Mat2::new(va.0 / s, vr.0 / s, va.1 / s, vr.1 / s);
        let foot = g.inverse().apply(Complex64::i()).norm().ln();
        let from_frame = g * Mat2::shift(foot);
        Ok(AxisFrame {
            from_frame,
            to_frame: from_frame.inverse(),
            length: 2.0 * (big.abs()).ln(),
        })
    }

    /// The point at signed arc length `s` from the base point.
    pub fn point(&self, s: f64) -> Complex64 {
        self.from_frame.apply(Complex64::new(0.0, s.exp()))
    }
}

/// Hyperbolic distance in the upper half-plane.
pub fn distance(z: Complex64, w: Complex64) -> f64 {
    let arg = 1.0 + (z - w).norm_sqr() / (2.0 * z.im * w.im);
    arg.max(1.0).acosh()
}

/// Side-pairing group of the regular `4g`-gon.
#[derive(Debug, Clone)]
pub struct FuchsianModel {
    surface: SurfaceSpec,
    letters: Vec<Mat2>,
    exact: Vec<DdMat2>,
    vertices: Vec<Complex64>,
    inradius: f64,
    circumradius: f64,
    tolerance: f64,
}

impl FuchsianModel {
    pub fn standard(genus: u32) -> Result<FuchsianModel, HyperbolicError> {
        let surface = SurfaceSpec::new(genus)?;
        let n = surface.relator_len();
        let nf = n as f64;
        let inradius = (1.0 / (std::f64::consts::PI / nf).tan()).acosh();
        let circumradius = ((1.0 / (std::f64::consts::PI / nf).tan()).powi(2)).acosh();

        type CMat = [[Cdd; 2]; 2];
        let mul = |x: &CMat, y: &CMat| -> CMat {
            let mut o = [[Cdd::default(); 2]; 2];
            for r in 0..2 {
                for c in 0..2 {
                    o[r][c] = x[r][0] * y[0][c] + x[r][1] * y[1][c];
                }
            }
            o
        };
        let zero = Cdd::default();
        let rot = |t: Dd| -> CMat {
            let half = t / Dd::new(2.0);
            [[Cdd::polar(half), zero], [zero, Cdd::polar(-half)]]
        };
        let (sin_n, cos_n) = (Dd::PI / Dd::new(nf)).sin_cos();
        let ch = cos_n / sin_n;
        let sh = (ch * ch - Dd::ONE).sqrt();
        let translate: CMat = [[Cdd::real(ch), Cdd::real(sh)], [Cdd::real(sh), Cdd::real(ch)]];
        let theta = |k: usize| Dd::PI * Dd::new(2.0 * k as f64) / Dd::new(nf);
        // maps edge j onto edge k and the polygon onto its neighbour across k
        let pairing = |j: usize, k: usize| mul(&mul(&rot(theta(k)), &translate), &rot(Dd::PI - theta(j)));
        let partner = |k: usize| if k % 4 < 2 { k + 2 } else { k - 2 };
        let one = Cdd::real(Dd::ONE);
        let half = Cdd::real(Dd::new(0.5));
        let i = Cdd { re: Dd::ZERO, im: Dd::ONE };
        let cayley: CMat = [[one, Cdd { re: Dd::ZERO, im: -Dd::ONE }], [one, i]];
        let cayley_inv: CMat = [[half, half], [Cdd { re: Dd::ZERO, im: Dd::new(0.5) }, Cdd { re: Dd::ZERO, im: Dd::new(-0.5) }]];
        let to_half_plane = |m: &CMat| -> DdMat2 {
            let u = mul(&mul(&cayley_inv, m), &cayley);
            // mirrored by z -> -conj(z) so that edges run clockwise
            DdMat2::new(u[0][0].re, -u[0][1].re, -u[1][0].re, u[1][1].re)
        };
        let edge_map: Vec<DdMat2> = (0..n).map(|k| to_half_plane(&pairing(partner(k), k))).collect();

        let mut exact = vec![DdMat2::IDENTITY; n];
        for h in 1..=genus {
            let base = 4 * (h as usize - 1);
            let a = Letter::a(h);
            let b = Letter::b(h);
            exact[a.code() as usize] = edge_map[base];
            exact[a.inverse().code() as usize] = edge_map[base].inverse();
            exact[b.code() as usize] = edge_map[base + 3];
            exact[b.inverse().code() as usize] = edge_map[base + 3].inverse();
        }
        let letters = exact.iter().copied().map(DdMat2::to_mat2).collect();

        let i = Complex64::i();
        let one = Complex64::new(1.0, 0.0);
        let pi = std::f64::consts::PI;
        let vr = (circumradius / 2.0).tanh();
        let vertices = (0..n)
            .map(|k| {
                let zeta = Complex64::from_polar(vr, -theta(k).to_f64() - pi / nf);
                i * (one + zeta) / (one - zeta)
            })
            .collect();

        let model = FuchsianModel {
            surface,
            letters,
            exact,
            vertices,
            inradius,
            circumradius,
            tolerance: RELATOR_TOLERANCE,
        };
        let residual = model.relator_residual();
        if residual > model.tolerance {
            return Err(HyperbolicError::RelatorResidual(residual));
        }
        Ok(model)
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.surface
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Generator matrices in the order `a1 b1 a2 b2 ...`.
    pub fn generators(&self) -> Vec<Mat2> {
        (1..=self.surface.genus())
            .flat_map(|h| [self.letter(Letter::a(h)), self.letter(Letter::b(h))])
            .collect()
    }

    pub fn letter(&self, l: Letter) -> Mat2 {
        self.letters[l.code() as usize]
    }

    /// Polygon vertices in the upper half-plane, clockwise.
    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    /// Distance from the polygon center `i` to each edge.
    pub fn inradius(&self) -> f64 {
        self.inradius
    }

    /// Distance from the polygon center `i` to each vertex.
    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    pub fn word_matrix(&self, w: &Word) -> Mat2 {
        w.letters()
            .iter()
            .fold(Mat2::identity(), |acc, &l| acc * self.letter(l))
    }

    pub(crate) fn letter_dd(&self, l: Letter) -> DdMat2 {
        self.exact[l.code() as usize]
    }

    pub(crate) fn word_matrix_dd(&self, w: &Word) -> DdMat2 {
        w.letters()
            .iter()
            .fold(DdMat2::IDENTITY, |acc, &l| acc * self.letter_dd(l))
    }

    /// Entrywise distance of the relator product from `±I`.
    pub fn relator_residual(&self) -> f64 {
        let m = self.word_matrix(&self.surface.relator());
        let plus = (m.a - 1.0).abs().max(m.b.abs()).max(m.c.abs()).max((m.d - 1.0).abs());
        let minus = (m.a + 1.0).abs().max(m.b.abs()).max(m.c.abs()).max((m.d + 1.0).abs());
        plus.min(minus)
    }

    /// Geodesic realization of a word's conjugacy class: the axis of the
    /// word's matrix.
    pub fn geodesic(&self, w: &Word) -> Result<Geodesic, HyperbolicError> {
        let element = self.word_matrix(w);
        let ax = axis(&element)?;
        Ok(Geodesic {
            attracting: ax.attracting,
            repelling: ax.repelling,
            element,
            word: w.clone(),
        })
    }

    /// Finds a word `h` with `h^-1 z` in the fundamental polygon.
    pub fn locate(&self, z: Complex64) -> (Word, Complex64) {
        let center = Complex64::i();
        let mut h = Word::empty();
        let mut z = z;
        let mut current = distance(z, center);
        loop {
            let mut best: Option<(f64, Letter, Complex64)> = None;
            for l in self.surface.letters() {
                let moved = self.letter(l).inverse().apply(z);
                let dist = distance(moved, center);
                if dist < current - 1e-12 && best.is_none_or(|(b, _, _)| dist < b) {
                    best = Some((dist, l, moved));
                }
            }
            match best {
                Some((dist, l, moved)) => {
                    h.push(l);
                    z = moved;
                    current = dist;
                }
                None => return (h, z),
            }
        }
    }

    /// Text dump of the generator matrices with 17 significant digits.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# genus {} regular {}-gon side pairings", self.surface.genus(), self.surface.relator_len());
        for h in 1..=self.surface.genus() {
            for l in [Letter::a(h), Letter::b(h)] {
                let m = self.letter(l);
                let _ = writeln!(out, "{l} {:.16e} {:.16e} {:.16e} {:.16e}", m.a, m.b, m.c, m.d);
            }
        }
        let _ = writeln!(out, "# relator residual {:.3e}", self.relator_residual());
        out
    }
}

/// Realization of a curve class as the axis of one of its group elements.
#[derive(Debug, Clone)]
pub struct Geodesic {
    pub attracting: BoundaryPoint,
    pub repelling: BoundaryPoint,
    pub element: Mat2,
    pub word: Word,
}
