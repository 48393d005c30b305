//! Motion fields and forward motion compensation.
//!
//! Every pixel of the previous frame is shifted part-way along its forward
//! displacement and keeps its sample value; the result is a mesh of
//! scattered points at the target time instant. No occlusion handling
//! happens here: colliding or escaping points are passed through, and the
//! resampler copes with arbitrary density.

mod block_match;
mod synthetic;

pub use block_match::{estimate_block_matching, BlockMatchConfig};
pub use synthetic::{synthesize_flow, SyntheticFlowSpec};

use crate::error::{Error, Result};
use crate::flow::MotionField;
use crate::frame::GrayFrame;
use crate::mesh::MeshPointSet;

/// Builds the mesh for the temporal midpoint: each pixel `(m, n)` lands at
/// `(m + dm/2, n + dn/2)` carrying `prev[m, n]`. Points may leave the frame
/// bounds; they are retained.
pub fn compensate_forward(prev: &GrayFrame, flow: &MotionField) -> Result<MeshPointSet> {
    compensate_at(prev, flow, 0.5)
}

/// Same as [`compensate_forward`] for an arbitrary temporal position
/// `t ∈ (0, 1)`: displacements are scaled by `t` instead of ½.
pub fn compensate_at(prev: &GrayFrame, flow: &MotionField, t: f64) -> Result<MeshPointSet> {
    if prev.width() != flow.width() || prev.height() != flow.height() {
        return Err(Error::DimensionMismatch {
            left_w: prev.width(),
            left_h: prev.height(),
            right_w: flow.width(),
            right_h: flow.height(),
        });
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidInput(format!(
            "temporal position must lie strictly inside (0, 1), got {t}"
        )));
    }
    let n_points = prev.width() * prev.height();
    let mut xs = Vec::with_capacity(n_points);
    let mut ys = Vec::with_capacity(n_points);
    let mut values = Vec::with_capacity(n_points);
    for n in 0..prev.height() {
        for m in 0..prev.width() {
            let (dm, dn) = flow.at(m, n);
            xs.push(m as f64 + t * dm);
            ys.push(n as f64 + t * dn);
            values.push(prev.at(m, n));
        }
    }
    MeshPointSet::from_columns(xs, ys, values)
}
