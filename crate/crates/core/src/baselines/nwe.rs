//! Gaussian kernel regression over scattered mesh points.

use super::check_frame_size;
use crate::error::{Error, Result};
use crate::frame::GrayFrame;
use crate::mesh::MeshPointSet;
use crate::spatial::BinGrid;

/// Kernel support radius in units of the bandwidth. Contributions beyond
/// this distance are below `exp(-4.5)` of the peak weight and are skipped.
const SUPPORT_RADII: f64 = 3.0;

/// Resolves `mesh` onto a `width` x `height` pixel grid with Gaussian
/// kernel regression: each pixel takes the kernel-weighted mean of the
/// mesh values within the support radius.
///
/// `bandwidth` is the Gaussian scale in pixels and must be positive and
/// finite. Pixels with no mesh point inside the support radius take the
/// value of the nearest mesh point. Assembled values are clamped to
/// `[0, 255]`.
pub fn interpolate_nwe(
    mesh: &MeshPointSet,
    width: usize,
    height: usize,
    bandwidth: f64,
) -> Result<GrayFrame> {
    check_frame_size(width, height)?;
    if !bandwidth.is_finite() || bandwidth <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "kernel bandwidth must be positive and finite, got {bandwidth}"
        )));
    }

    let grid = BinGrid::build(mesh, bandwidth);
    let radius = SUPPORT_RADII * bandwidth;
    let inv_two_h2 = 1.0 / (2.0 * bandwidth * bandwidth);

    let mut values = vec![0.0f64; width * height];
    let mut hits: Vec<u32> = Vec::new();
    for n in 0..height {
        for m in 0..width {
            let (px, py) = (m as f64, n as f64);
            grid.within_radius(px, py, radius, &mut hits);
            let mut num = 0.0f64;
            let mut den = 0.0f64;
            for &i in &hits {
                let (x, y, v) = grid.point(i as usize);
                let d2 = (x - px) * (x - px) + (y - py) * (y - py);
                let w = (-d2 * inv_two_h2).exp();
                num += w * v;
                den += w;
            }
            let v = if den > 0.0 {
                num / den
            } else {
                grid.value(grid.nearest(px, py))
            };
            values[n * width + m] = v.clamp(0.0, 255.0);
        }
    }
    GrayFrame::new(width, height, values)
}
