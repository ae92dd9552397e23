use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use super::mobius::Point;
use super::KleinianError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleFit {
    pub center: Complex64,
    pub radius: f64,
    /// Largest `| |p - center| - radius |` over the input.
    pub max_residual: f64,
}

/// Algebraic least-squares circle through the finite points.
pub fn circle_fit(points: &[Point]) -> Result<CircleFit, KleinianError> {
    let pts: Vec<Complex64> = points.iter().filter_map(|p| p.finite()).collect();
    if pts.len() < 3 {
        return Err(KleinianError::Degenerate("fewer than three finite points".into()));
    }
    // center and scale first so the normal equations stay well conditioned
    let mean = pts.iter().sum::<Complex64>() / pts.len() as f64;
    let scale = pts.iter().map(|p| (p - mean).norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(KleinianError::Degenerate("all points coincide".into()));
    }
    let local: Vec<Complex64> = pts.iter().map(|p| (p - mean) / scale).collect();
    let n = local.len();
    let a = DMatrix::from_fn(n, 3, |r, c| match c {
        0 => local[r].re,
        1 => local[r].im,
        _ => 1.0,
    });
    let b = DVector::from_fn(n, |r, _| -local[r].norm_sqr());
    let svd = a.svd(true, true);
    let sv = &svd.singular_values;
    let (smax, smin) = (sv.max(), sv.min());
    if smin <= 1e-12 * smax {
        return Err(KleinianError::Degenerate("points are collinear".into()));
    }
    let sol = svd
        .solve(&b, 1e-14)
        .map_err(|e| KleinianError::Degenerate(e.to_string()))?;
    let (d, e, f) = (sol[0], sol[1], sol[2]);
    let center_local = Complex64::new(-d / 2.0, -e / 2.0);
    let r2 = center_local.norm_sqr() - f;
    if r2.is_nan() || r2 <= 0.0 || r2.sqrt() > 1e8 {
        return Err(KleinianError::Degenerate("fitted radius is not finite".into()));
    }
    let center = mean + center_local * scale;
    let radius = r2.sqrt() * scale;
    let max_residual = pts.iter().map(|p| ((p - center).norm() - radius).abs()).fold(0.0, f64::max);
    Ok(CircleFit {
        center,
        radius,
        max_residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    /// Chordal distance on the Riemann sphere; `∞` is an ordinary point.
    #[default]
    Chordal,
    /// Euclidean distance; `∞` is not allowed.
    Planar,
}

fn metric_distance(metric: Metric, p: Point, q: Point) -> f64 {
    match metric {
        Metric::Chordal => p.chordal(q),
        Metric::Planar => match (p, q) {
            (Point::Finite(z), Point::Finite(w)) => (z - w).norm(),
            (Point::Infinity, Point::Infinity) => 0.0,
            _ => f64::INFINITY,
        },
    }
}

/// Sort key that is 1-Lipschitz for the metric, so a sweep along it can
/// stop once the key gap exceeds the best distance found.
fn sweep_key(metric: Metric, p: Point) -> f64 {
    match (metric, p) {
        (_, Point::Infinity) => f64::INFINITY,
        (Metric::Planar, Point::Finite(z)) => z.re,
        // first coordinate of the stereographic image on the unit sphere
        (Metric::Chordal, Point::Finite(z)) => 2.0 * z.re / (1.0 + z.norm_sqr()),
    }
}

fn directed(a: &[Point], b: &[Point], metric: Metric) -> f64 {
    let mut keyed: Vec<(f64, Point)> = b.iter().map(|&q| (sweep_key(metric, q), q)).collect();
    keyed.sort_by(|x, y| x.0.total_cmp(&y.0));
    let has_infinity = b.iter().any(|q| q.is_infinite());
    let nearest = |p: Point| -> f64 {
        if p.is_infinite() {
            return match metric {
                Metric::Planar if has_infinity => 0.0,
                Metric::Planar => f64::INFINITY,
                Metric::Chordal => b.iter().map(|&q| p.chordal(q)).fold(f64::INFINITY, f64::min),
            };
        }
        let key = sweep_key(metric, p);
        let start = keyed.partition_point(|x| x.0 < key);
        let mut best = f64::INFINITY;
        let slack = 1e-12;
        for &(k, q) in &keyed[start..] {
            if k - key > best + slack {
                break;
            }
            best = best.min(metric_distance(metric, p, q));
        }
        for &(k, q) in keyed[..start].iter().rev() {
            if key - k > best + slack {
                break;
            }
            best = best.min(metric_distance(metric, p, q));
        }
        if metric == Metric::Chordal && has_infinity {
            best = best.min(p.chordal(Point::Infinity));
        }
        best
    };
    a.par_iter().map(|&p| nearest(p)).reduce(|| 0.0, f64::max)
}

/// Hausdorff distance between two finite samples.
pub fn hausdorff_distance(a: &[Point], b: &[Point], metric: Metric) -> Result<f64, KleinianError> {
    if a.is_empty() || b.is_empty() {
        return Err(KleinianError::EmptySet);
    }
    Ok(directed(a, b, metric).max(directed(b, a, metric)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_circle_points() {
        let pts: Vec<Point> = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]
            .iter()
            .map(|&(x, y)| Point::new(x, y))
            .collect();
        let fit = circle_fit(&pts).unwrap();
        assert!((fit.radius - 1.0).abs() < 1e-12);
        assert!(fit.center.norm() < 1e-12);
        assert!(fit.max_residual <= 1e-12);
    }

    #[test]
    fn collinear_points_are_degenerate() {
        let pts = [Point::new(0.0, 0.0), Point::new(1.0, 1.0), Point::new(2.0, 2.0)];
        assert!(matches!(circle_fit(&pts), Err(KleinianError::Degenerate(_))));
    }

    #[test]
    fn planar_example() {
        let a = [Point::new(0.0, 0.0)];
        let b = [Point::new(3.0, 4.0)];
        assert_eq!(hausdorff_distance(&a, &b, Metric::Planar).unwrap(), 5.0);
        assert_eq!(hausdorff_distance(&a, &a, Metric::Chordal).unwrap(), 0.0);
        assert!(matches!(hausdorff_distance(&a, &[], Metric::Chordal), Err(KleinianError::EmptySet)));
    }
}
