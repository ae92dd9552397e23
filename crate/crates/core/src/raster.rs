//! Parameter-plane rasters of the discreteness screen and occupancy images
//! of point clouds, with a byte-exact binary PPM writer.

use std::fmt::Write as _;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::kleinian::{bq_classify, BqResult, Point, Root, TraceTriple};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RasterError {
    #[error("raster needs at least one row and one column")]
    ZeroResolution,
    #[error("pixel size must be positive and finite")]
    DegenerateViewport,
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error("write failed: {0}")]
    IoFailure(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub class: Class,
    /// Stern–Brocot depth of the failing witness.
    pub depth: Option<u32>,
}

impl Cell {
    pub const PASS: Cell = Cell {
        class: Class::Pass,
        depth: None,
    };
    pub const ERROR: Cell = Cell {
        class: Class::Error,
        depth: None,
    };

    pub fn fail(depth: Option<u32>) -> Cell {
        Cell {
            class: Class::Fail,
            depth,
        }
    }
}

/// Axis-aligned pixel grid in the complex plane. Pixel `(i, j)` has center
/// `origin + (i + ½)·size + (j + ½)·size·i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub origin: Complex64,
    pub pixel_size: f64,
    pub width: usize,
    pub height: usize,
}

impl Region {
    /// `width × height` pixels of side `span / width` centered on `center`.
    pub fn centered(center: Complex64, span: f64, width: usize, height: usize) -> Region {
        let pixel_size = span / width.max(1) as f64;
        let half = Complex64::new(width as f64, height as f64) * (pixel_size / 2.0);
        Region {
            origin: center - half,
            pixel_size,
            width,
            height,
        }
    }

    /// Smallest square-pixel region of the given width covering the box.
    pub fn bounding(lo: Complex64, hi: Complex64, width: usize) -> Region {
        let span = (hi.re - lo.re).max(hi.im - lo.im);
        let pixel_size = span / width.max(1) as f64;
        let height = if pixel_size > 0.0 {
            (((hi.im - lo.im) / pixel_size).ceil() as usize).max(1)
        } else {
            width
        };
        Region {
            origin: lo,
            pixel_size,
            width,
            height,
        }
    }

    fn validate(&self) -> Result<(), RasterError> {
        if self.width == 0 || self.height == 0 {
            return Err(RasterError::ZeroResolution);
        }
        if !(self.pixel_size > 0.0 && self.pixel_size.is_finite()) {
            return Err(RasterError::DegenerateViewport);
        }
        Ok(())
    }

    pub fn pixel_center(&self, i: usize, j: usize) -> Complex64 {
        self.offset(i as f64 + 0.5, j as f64 + 0.5)
    }

    fn offset(&self, x: f64, y: f64) -> Complex64 {
        self.origin + Complex64::new(x, y) * self.pixel_size
    }

    /// Pixel containing `z`, if any.
    pub fn locate(&self, z: Complex64) -> Option<(usize, usize)> {
        let u = (z - self.origin) / self.pixel_size;
        if !(u.re >= 0.0 && u.im >= 0.0) {
            return None;
        }
        let (i, j) = (u.re.floor(), u.im.floor());
        (i < self.width as f64 && j < self.height as f64).then_some((i as usize, j as usize))
    }
}

/// Row-major grid of cells; row `j` holds pixels `(0, j) .. (width-1, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    pub region: Region,
    pub cells: Vec<Cell>,
}

impl Raster {
    pub fn width(&self) -> usize {
        self.region.width
    }

    pub fn height(&self) -> usize {
        self.region.height
    }

    pub fn get(&self, i: usize, j: usize) -> Cell {
        self.cells[j * self.region.width + i]
    }

    pub fn count(&self, class: Class) -> usize {
        self.cells.iter().filter(|c| c.class == class).count()
    }

    /// One line per row, `0` pass, `1` fail, `2` error.
    pub fn to_grid_text(&self) -> String {
        let mut out = String::with_capacity(self.cells.len() + self.region.height);
        for row in self.cells.chunks(self.region.width) {
            for c in row {
                out.push(match c.class {
                    Class::Pass => '0',
                    Class::Fail => '1',
                    Class::Error => '2',
                });
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SliceOptions {
    pub depth: u32,
    pub root: Root,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Classify by majority over a 2×2 subgrid instead of the center.
    pub supersample: bool,
}

impl Default for SliceOptions {
    fn default() -> Self {
        SliceOptions {
            depth: 6,
            root: Root::Minus,
            threads: None,
            supersample: false,
        }
    }
}

fn classify_point(x: Complex64, fixed_y: Complex64, options: &SliceOptions) -> Cell {
    let t = TraceTriple::from_pair(x, fixed_y, options.root);
    if ![t.x, t.y, t.z].iter().all(|v| v.is_finite()) {
        return Cell::ERROR;
    }
    match bq_classify(&t, options.depth) {
        BqResult::Pass => Cell::PASS,
        BqResult::Fail { depth, .. } => Cell::fail(Some(depth)),
    }
}

fn classify_pixel(region: &Region, i: usize, j: usize, fixed_y: Complex64, options: &SliceOptions) -> Cell {
    if !options.supersample {
        return classify_point(region.pixel_center(i, j), fixed_y, options);
    }
    let subs: Vec<Cell> = [(0.25, 0.25), (0.75, 0.25), (0.25, 0.75), (0.75, 0.75)]
        .iter()
        .map(|&(dx, dy)| classify_point(region.offset(i as f64 + dx, j as f64 + dy), fixed_y, options))
        .collect();
    let passes = subs.iter().filter(|c| c.class == Class::Pass).count();
    if passes >= 2 {
        return Cell::PASS;
    }
    let depth = subs.iter().filter_map(|c| c.depth).min();
    if subs.iter().any(|c| c.class == Class::Fail) {
        Cell::fail(depth)
    } else {
        Cell::ERROR
    }
}

fn run_in_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T, RasterError> {
    match threads {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| RasterError::ThreadPool(e.to_string()))?;
            Ok(pool.install(job))
        }
    }
}

/// Classifies each pixel center `x` by the primitive-trace scan of the
/// punctured-torus group with traces `(x, fixed_y)`.
pub fn raster_slice(region: &Region, fixed_y: Complex64, options: &SliceOptions) -> Result<Raster, RasterError> {
    region.validate()?;
    let (w, h) = (region.width, region.height);
    let cells = run_in_pool(options.threads, || {
        (0..w * h)
            .into_par_iter()
            .map(|k| classify_pixel(region, k % w, k / w, fixed_y, options))
            .collect()
    })?;
    Ok(Raster { region: *region, cells })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointImage {
    /// Occupied pixels are `Fail`, empty ones `Pass`.
    pub raster: Raster,
    /// Points outside the viewport, including `∞`.
    pub dropped: usize,
}

/// Marks every pixel containing at least one of the points.
pub fn render_points<'a>(points: impl IntoIterator<Item = &'a Point>, viewport: &Region) -> Result<PointImage, RasterError> {
    viewport.validate()?;
    let mut raster = Raster {
        region: *viewport,
        cells: vec![Cell::PASS; viewport.width * viewport.height],
    };
    let mut dropped = 0;
    for p in points {
        match p.finite().and_then(|z| viewport.locate(z)) {
            Some((i, j)) => raster.cells[j * viewport.width + i] = Cell::fail(None),
            None => dropped += 1,
        }
    }
    Ok(PointImage { raster, dropped })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Palette {
    pub pass: [u8; 3],
    pub fail: [u8; 3],
    pub error: [u8; 3],
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            pass: [0xff, 0xff, 0xff],
            fail: [0x00, 0x00, 0x00],
            error: [0xff, 0x00, 0x00],
        }
    }
}

impl Palette {
    pub fn color(&self, class: Class) -> [u8; 3] {
        match class {
            Class::Pass => self.pass,
            Class::Fail => self.fail,
            Class::Error => self.error,
        }
    }
}

/// Writes a binary P6 image, cells in row-major order, and returns the
/// number of bytes written.
pub fn write_ppm(raster: &Raster, palette: &Palette, out: &mut impl Write) -> Result<usize, RasterError> {
    let mut header = String::new();
    let _ = write!(header, "P6\n{} {}\n255\n", raster.width(), raster.height());
    let mut bytes = header.into_bytes();
    bytes.reserve(3 * raster.cells.len());
    for c in &raster.cells {
        bytes.extend_from_slice(&palette.color(c.class));
    }
    out.write_all(&bytes).map_err(|e| RasterError::IoFailure(e.to_string()))?;
    Ok(bytes.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_pixel_slices() {
        let opts = SliceOptions::default();
        let r = raster_slice(&Region::centered(c(3.0, 0.0), 0.1, 1, 1), c(3.0, 0.0), &opts).unwrap();
        assert_eq!(r.cells, vec![Cell::PASS]);
        let opts0 = SliceOptions { depth: 0, ..opts };
        let r = raster_slice(&Region::centered(c(1.0, 0.0), 0.1, 1, 1), c(3.0, 0.0), &opts0).unwrap();
        assert_eq!(r.cells, vec![Cell::fail(Some(0))]);
        let zero = Region::centered(c(3.0, 0.0), 1.0, 0, 1);
        assert_eq!(raster_slice(&zero, c(3.0, 0.0), &opts), Err(RasterError::ZeroResolution));
    }

    #[test]
    fn pixel_centers() {
        let r = Region {
            origin: c(-1.0, -1.0),
            pixel_size: 0.5,
            width: 4,
            height: 4,
        };
        assert_eq!(r.pixel_center(0, 0), c(-0.75, -0.75));
        assert_eq!(r.pixel_center(3, 1), c(0.75, -0.25));
        assert_eq!(r.locate(c(0.75, -0.25)), Some((3, 1)));
        assert_eq!(r.locate(c(1.0, 0.0)), None);
    }

    #[test]
    fn render_examples() {
        let vp = Region {
            origin: c(0.0, 0.0),
            pixel_size: 1.0,
            width: 3,
            height: 3,
        };
        let empty = render_points(&[], &vp).unwrap();
        assert_eq!(empty.raster.count(Class::Fail), 0);
        let one = render_points(&[Point::new(1.5, 1.5)], &vp).unwrap();
        assert_eq!(one.raster.count(Class::Fail), 1);
        assert_eq!(one.raster.get(1, 1).class, Class::Fail);
        let two = render_points(&[Point::new(0.2, 0.2), Point::new(0.7, 0.4), Point::Infinity], &vp).unwrap();
        assert_eq!(two.raster.count(Class::Fail), 1);
        assert_eq!(two.dropped, 1);
    }

    #[test]
    fn ppm_bytes() {
        let region = Region::centered(c(0.0, 0.0), 1.0, 1, 1);
        let white = Raster {
            region,
            cells: vec![Cell::PASS],
        };
        let mut buf = Vec::new();
        assert_eq!(write_ppm(&white, &Palette::default(), &mut buf).unwrap(), 14);
        assert_eq!(buf, b"P6\n1 1\n255\n\xff\xff\xff");
        let pair = Raster {
            region: Region::centered(c(0.0, 0.0), 2.0, 2, 1),
            cells: vec![Cell::PASS, Cell::fail(None)],
        };
        let mut buf = Vec::new();
        write_ppm(&pair, &Palette::default(), &mut buf).unwrap();
        assert_eq!(buf, b"P6\n2 1\n255\n\xff\xff\xff\x00\x00\x00");
    }

    #[test]
    fn grid_dump() {
        let r = Raster {
            region: Region::centered(c(0.0, 0.0), 3.0, 3, 1),
            cells: vec![Cell::PASS, Cell::fail(Some(2)), Cell::ERROR],
        };
        assert_eq!(r.to_grid_text(), "012\n");
    }
}
