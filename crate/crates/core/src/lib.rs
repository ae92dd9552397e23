//! Exact calculus on integral multicurves of closed surfaces (intersection
//! numbers and the two smoothing operations), backed by an explicit Fuchsian
//! model, together with numerical tools for punctured-torus Kleinian groups:
//! limit sets, trace-based discreteness scans, quotient-torus pullbacks,
//! Hausdorff distances and parameter-plane rasters.

pub mod hyperbolic;
pub mod kleinian;
pub mod multicurve;
pub mod raster;
pub mod word;
