//! Frame partitioning into blocks with surrounding support areas, and
//! assignment of scattered mesh points to those areas.

use crate::mesh::MeshPointSet;

use super::ResamplerConfig;

/// One reconstruction area: a central block plus its support border, both in
/// frame coordinates and cropped to the frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AreaDescriptor {
    /// Left edge of the central block.
    pub block_x: usize,
    /// Top edge of the central block.
    pub block_y: usize,
    /// Block width; the configured block size except at the right frame edge.
    pub block_width: usize,
    /// Block height; the configured block size except at the bottom frame edge.
    pub block_height: usize,
    /// Left edge of the support area, `block_x - border` cropped to 0.
    pub area_x: usize,
    /// Top edge of the support area, `block_y - border` cropped to 0.
    pub area_y: usize,
    /// Support area width after cropping to the frame.
    pub area_width: usize,
    /// Support area height after cropping to the frame.
    pub area_height: usize,
}

impl AreaDescriptor {
    /// Offset of the central block inside the area, in local coordinates.
    pub fn block_offset(&self) -> (usize, usize) {
        (self.block_x - self.area_x, self.block_y - self.area_y)
    }

    /// True if the frame position `(x, y)` lies inside the support area.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.area_x as f64
            && x < (self.area_x + self.area_width) as f64
            && y >= self.area_y as f64
            && y < (self.area_y + self.area_height) as f64
    }
}

/// Splits a frame into reconstruction areas.
///
/// Central blocks tile the frame exactly; support areas extend each block by
/// the configured border on every side and are cropped at the frame edges.
/// Areas are emitted in row-major block order.
pub fn partition(width: usize, height: usize, cfg: &ResamplerConfig) -> Vec<AreaDescriptor> {
    assert!(
        width >= 1 && height >= 1,
        "frame must be at least 1x1, got {width}x{height}"
    );
    let b = cfg.block_size;
    let d = cfg.border;
    let blocks_x = width.div_ceil(b);
    let blocks_y = height.div_ceil(b);
    let mut areas = Vec::with_capacity(blocks_x * blocks_y);
    for by in 0..blocks_y {
        for bx in 0..blocks_x {
            let block_x = bx * b;
            let block_y = by * b;
            let block_width = b.min(width - block_x);
            let block_height = b.min(height - block_y);
            let area_x = block_x.saturating_sub(d);
            let area_y = block_y.saturating_sub(d);
            let area_end_x = (block_x + block_width + d).min(width);
            let area_end_y = (block_y + block_height + d).min(height);
            areas.push(AreaDescriptor {
                block_x,
                block_y,
                block_width,
                block_height,
                area_x,
                area_y,
                area_width: area_end_x - area_x,
                area_height: area_end_y - area_y,
            });
        }
    }
    areas
}

/// Mesh points assigned to one area, in coordinates relative to the area
/// origin and sorted by `(y, x, value)`.
///
/// The canonical ordering makes every downstream sum independent of the
/// mesh's point order, so resampling results are bit-identical under input
/// permutation.
#[derive(Debug, Clone, Default)]
pub struct AreaPoints {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<f64>,
}

impl AreaPoints {
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

/// Assigns every mesh point to all areas whose support contains it.
///
/// Membership uses half-open extents, so a point on an area's left or top
/// edge belongs to it while a point on the right or bottom edge does not;
/// points inside overlapping borders are assigned to several areas.
pub fn gather_area_points(
    areas: &[AreaDescriptor],
    mesh: &MeshPointSet,
    cfg: &ResamplerConfig,
) -> Vec<AreaPoints> {
    if areas.is_empty() {
        return Vec::new();
    }
    let blocks_x = areas
        .iter()
        .take_while(|a| a.block_y == areas[0].block_y)
        .count();
    let blocks_y = areas.len() / blocks_x;
    let b = cfg.block_size;
    let d = cfg.border;

    let mut members: Vec<Vec<u32>> = vec![Vec::new(); areas.len()];
    let reach = (b + d) as f64;
    for (i, ((&x, &y), _)) in mesh
        .xs()
        .iter()
        .zip(mesh.ys())
        .zip(mesh.values())
        .enumerate()
    {
        let lo_x = candidate_lo(x, reach, b);
        let hi_x = candidate_hi(x, d as f64, b);
        let lo_y = candidate_lo(y, reach, b);
        let hi_y = candidate_hi(y, d as f64, b);
        let lo_x = lo_x.clamp(0, blocks_x as isize - 1) as usize;
        let hi_x = hi_x.clamp(0, blocks_x as isize - 1) as usize;
        let lo_y = lo_y.clamp(0, blocks_y as isize - 1) as usize;
        let hi_y = hi_y.clamp(0, blocks_y as isize - 1) as usize;
        for ay in lo_y..=hi_y {
            for ax in lo_x..=hi_x {
                let idx = ay * blocks_x + ax;
                if areas[idx].contains(x, y) {
                    members[idx].push(i as u32);
                }
            }
        }
    }

    areas
        .iter()
        .zip(members)
        .map(|(area, mut idxs)| {
            idxs.sort_unstable_by(|&p, &q| {
                let (p, q) = (p as usize, q as usize);
                let a = (mesh.ys()[p], mesh.xs()[p], mesh.values()[p]);
                let b = (mesh.ys()[q], mesh.xs()[q], mesh.values()[q]);
                a.0.total_cmp(&b.0)
                    .then(a.1.total_cmp(&b.1))
                    .then(a.2.total_cmp(&b.2))
            });
            let mut points = AreaPoints {
                xs: Vec::with_capacity(idxs.len()),
                ys: Vec::with_capacity(idxs.len()),
                values: Vec::with_capacity(idxs.len()),
            };
            for &i in &idxs {
                let i = i as usize;
                points.xs.push(mesh.xs()[i] - area.area_x as f64);
                points.ys.push(mesh.ys()[i] - area.area_y as f64);
                points.values.push(mesh.values()[i]);
            }
            points
        })
        .collect()
}

/// Smallest block index whose uncropped area could reach the coordinate.
fn candidate_lo(coord: f64, reach: f64, block: usize) -> isize {
    ((coord - reach) / block as f64).floor() as isize + 1
}

/// Largest block index whose uncropped area could reach the coordinate.
fn candidate_hi(coord: f64, border: f64, block: usize) -> isize {
    ((coord + border) / block as f64).floor() as isize
}
