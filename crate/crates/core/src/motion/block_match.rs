//! Exhaustive integer-pel block matching.
//!
//! This estimator exists so the pipeline runs self-contained; it does not try
//! to compete with proper optical flow. Dense flows from external estimators
//! enter through `.flo` files instead.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::MotionField;
use crate::frame::GrayFrame;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct BlockMatchConfig {
    /// Side length of the (square) blocks tiling the previous frame.
    pub block_size: usize,
    /// Displacements searched exhaustively in `[-search_range, search_range]`
    /// on both axes.
    pub search_range: usize,
}

impl Default for BlockMatchConfig {
    fn default() -> Self {
        Self {
            block_size: 8,
            search_range: 8,
        }
    }
}

impl BlockMatchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.block_size == 0 {
            return Err(Error::InvalidConfig(
                "block_size must be at least 1".to_owned(),
            ));
        }
        Ok(())
    }
}

/// Sum of absolute differences between a block of `prev` anchored at
/// `(bx, by)` and the displaced block in `next`. Out-of-bounds samples of
/// `next` replicate the border.
fn sad(
    prev: &GrayFrame,
    next: &GrayFrame,
    bx: usize,
    by: usize,
    bw: usize,
    bh: usize,
    dm: isize,
    dn: isize,
) -> f64 {
    let (w, h) = (next.width() as isize, next.height() as isize);
    let mut cost = 0.0;
    for y in 0..bh {
        for x in 0..bw {
            let sx = (bx + x) as isize + dm;
            let sy = (by + y) as isize + dn;
            let sx = sx.clamp(0, w - 1) as usize;
            let sy = sy.clamp(0, h - 1) as usize;
            cost += (prev.at(bx + x, by + y) - next.at(sx, sy)).abs();
        }
    }
    cost
}

/// Estimates a dense displacement field by exhaustive SAD search per block.
/// Every pixel of a block receives the block's winning displacement. Ties go
/// to the smallest displacement magnitude, then to the lexicographically
/// smallest `(dn, dm)`.
pub fn estimate_block_matching(
    prev: &GrayFrame,
    next: &GrayFrame,
    cfg: &BlockMatchConfig,
) -> Result<MotionField> {
    if !prev.same_size(next) {
        return Err(Error::DimensionMismatch {
            left_w: prev.width(),
            left_h: prev.height(),
            right_w: next.width(),
            right_h: next.height(),
        });
    }
    cfg.validate()?;

    let (w, h) = (prev.width(), prev.height());
    let r = cfg.search_range as isize;
    let mut dm_plane = vec![0.0; w * h];
    let mut dn_plane = vec![0.0; w * h];

    let mut by = 0;
    while by < h {
        let bh = cfg.block_size.min(h - by);
        let mut bx = 0;
        while bx < w {
            let bw = cfg.block_size.min(w - bx);

            // Minimize (cost, |d|^2, dn, dm); scanning order never decides.
            let mut best = (f64::INFINITY, isize::MAX, isize::MAX, isize::MAX);
            for dn in -r..=r {
                for dm in -r..=r {
                    let cost = sad(prev, next, bx, by, bw, bh, dm, dn);
                    let key = (cost, dm * dm + dn * dn, dn, dm);
                    if key < best {
                        best = key;
                    }
                }
            }

            let (_, _, dn, dm) = best;
            for y in by..by + bh {
                for x in bx..bx + bw {
                    dm_plane[y * w + x] = dm as f64;
                    dn_plane[y * w + x] = dn as f64;
                }
            }
            bx += cfg.block_size;
        }
        by += cfg.block_size;
    }
    MotionField::new(w, h, dm_plane, dn_plane)
}
