//! Scattered-data interpolation baselines: piecewise-linear and cubic
//! spline interpolation over a Delaunay triangulation, and Gaussian kernel
//! regression.
//!
//! All three resolve a mesh of irregularly placed samples onto the full
//! pixel grid and clamp the assembled frame to the byte range. Pixels their
//! method cannot cover (outside the convex hull, or with no kernel support)
//! fall back to the nearest mesh point.

mod cubic;
mod linear;
mod nwe;

pub use cubic::interpolate_cubic;
pub use linear::interpolate_linear;
pub use nwe::interpolate_nwe;

use spade::{DelaunayTriangulation, HasPosition, Point2, Triangulation};

use crate::error::{Error, Result};
use crate::mesh::MeshPointSet;

/// One mesh sample inside the triangulation.
pub(crate) struct SampleVertex {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

impl HasPosition for SampleVertex {
    type Scalar = f64;

    fn position(&self) -> Point2<f64> {
        Point2::new(self.x, self.y)
    }
}

pub(crate) type SampleTriangulation = DelaunayTriangulation<SampleVertex>;

/// Mesh points in canonical `(y, x, value)` order with coincident positions
/// collapsed to their smallest value.
///
/// The canonical order fixes the triangulation's internal structure, so
/// interpolation results do not depend on the order mesh points arrive in.
pub(crate) fn canonical_points(mesh: &MeshPointSet) -> Vec<(f64, f64, f64)> {
    let mut pts: Vec<(f64, f64, f64)> = mesh
        .xs()
        .iter()
        .zip(mesh.ys())
        .zip(mesh.values())
        .map(|((&x, &y), &v)| (x, y, v))
        .collect();
    pts.sort_unstable_by(|a, b| {
        a.1.total_cmp(&b.1)
            .then(a.0.total_cmp(&b.0))
            .then(a.2.total_cmp(&b.2))
    });
    pts.dedup_by(|next, kept| next.0 == kept.0 && next.1 == kept.1);
    pts
}

/// Triangulates the canonical point set.
pub(crate) fn triangulate(points: &[(f64, f64, f64)]) -> Result<SampleTriangulation> {
    let mut tri = SampleTriangulation::new();
    for &(x, y, value) in points {
        tri.insert(SampleVertex { x, y, value }).map_err(|e| {
            Error::InvalidInput(format!(
                "mesh point ({x}, {y}) cannot be triangulated: {e:?}"
            ))
        })?;
    }
    Ok(tri)
}

/// Checks the output frame dimensions.
pub(crate) fn check_frame_size(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidInput(format!(
            "output frame must be at least 1x1, got {width}x{height}"
        )));
    }
    Ok(())
}
