//! Uniform bin grid over scattered points.
//!
//! Supports nearest-neighbour queries with a deterministic tie rule and
//! radius queries, both used by the scattered-data interpolators and by the
//! empty-block fallback of the resampler.

use crate::mesh::MeshPointSet;

/// Spatial index over a point set, bucketing points into square cells.
///
/// The grid owns copies of the coordinates and values so query results can be
/// resolved without holding a borrow of the original mesh.
pub struct BinGrid {
    xs: Vec<f64>,
    ys: Vec<f64>,
    values: Vec<f64>,
    min_x: f64,
    min_y: f64,
    cell: f64,
    cols: usize,
    rows: usize,
    bins: Vec<Vec<u32>>,
}

impl BinGrid {
    /// Builds the index with the given cell edge length.
    ///
    /// `cell` should be on the order of the typical point spacing; any
    /// positive value is valid and only affects query speed.
    pub fn build(mesh: &MeshPointSet, cell: f64) -> Self {
        assert!(
            cell.is_finite() && cell > 0.0,
            "bin cell size must be positive and finite, got {cell}"
        );
        let xs = mesh.xs().to_vec();
        let ys = mesh.ys().to_vec();
        let values = mesh.values().to_vec();
        assert!(
            xs.len() <= u32::MAX as usize,
            "bin grid indexes points with u32, got {} points",
            xs.len()
        );

        let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..xs.len() {
            min_x = min_x.min(xs[i]);
            max_x = max_x.max(xs[i]);
            min_y = min_y.min(ys[i]);
            max_y = max_y.max(ys[i]);
        }

        let cols = (((max_x - min_x) / cell).floor() as usize + 1).max(1);
        let rows = (((max_y - min_y) / cell).floor() as usize + 1).max(1);
        let mut bins = vec![Vec::new(); cols * rows];
        for i in 0..xs.len() {
            let cx = cell_index(xs[i], min_x, cell, cols);
            let cy = cell_index(ys[i], min_y, cell, rows);
            bins[cy * cols + cx].push(i as u32);
        }

        Self {
            xs,
            ys,
            values,
            min_x,
            min_y,
            cell,
            cols,
            rows,
            bins,
        }
    }

    /// Number of indexed points.
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    /// The grid always indexes at least one point; meshes cannot be empty.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coordinates and value of point `i` in insertion order.
    pub fn point(&self, i: usize) -> (f64, f64, f64) {
        (self.xs[i], self.ys[i], self.values[i])
    }

    /// Value of point `i`.
    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Index of the point closest to `(x, y)` in Euclidean distance.
    ///
    /// Equidistant candidates are resolved by the smallest `(y, x, value)`
    /// triple, so the result does not depend on insertion order.
    pub fn nearest(&self, x: f64, y: f64) -> usize {
        let qx = cell_index(x, self.min_x, self.cell, self.cols);
        let qy = cell_index(y, self.min_y, self.cell, self.rows);

        let mut best: Option<usize> = None;
        let mut best_d2 = f64::INFINITY;
        let max_ring = self.cols.max(self.rows);
        for ring in 0..=max_ring {
            // Cells on this ring are at least (ring - 1) cell widths away
            // from every point that clamps into the query cell, so once that
            // bound exceeds the best distance no further ring can win.
            if best.is_some() {
                let ring_min = (ring as f64 - 1.0) * self.cell;
                if ring_min > 0.0 && ring_min * ring_min > best_d2 {
                    break;
                }
            }
            self.for_each_ring_cell(qx, qy, ring, |bin| {
                for &i in bin {
                    let i = i as usize;
                    let dx = self.xs[i] - x;
                    let dy = self.ys[i] - y;
                    let d2 = dx * dx + dy * dy;
                    if better_candidate(d2, i, best_d2, best, &self.xs, &self.ys, &self.values) {
                        best_d2 = d2;
                        best = Some(i);
                    }
                }
            });
        }
        best.expect("bin grid holds at least one point")
    }

    /// Indices of all points within `radius` of `(x, y)`, inclusive.
    pub fn within_radius(&self, x: f64, y: f64, radius: f64, out: &mut Vec<u32>) {
        out.clear();
        if !(radius >= 0.0) {
            return;
        }
        let r2 = radius * radius;
        let lo_x = cell_index(x - radius, self.min_x, self.cell, self.cols);
        let hi_x = cell_index(x + radius, self.min_x, self.cell, self.cols);
        let lo_y = cell_index(y - radius, self.min_y, self.cell, self.rows);
        let hi_y = cell_index(y + radius, self.min_y, self.cell, self.rows);
        for cy in lo_y..=hi_y {
            for cx in lo_x..=hi_x {
                for &i in &self.bins[cy * self.cols + cx] {
                    let dx = self.xs[i as usize] - x;
                    let dy = self.ys[i as usize] - y;
                    if dx * dx + dy * dy <= r2 {
                        out.push(i);
                    }
                }
            }
        }
    }

    fn for_each_ring_cell(&self, qx: usize, qy: usize, ring: usize, mut visit: impl FnMut(&[u32])) {
        let (qx, qy, ring) = (qx as isize, qy as isize, ring as isize);
        let in_grid = |cx: isize, cy: isize| {
            cx >= 0 && cy >= 0 && (cx as usize) < self.cols && (cy as usize) < self.rows
        };
        if ring == 0 {
            if in_grid(qx, qy) {
                visit(&self.bins[qy as usize * self.cols + qx as usize]);
            }
            return;
        }
        for cx in (qx - ring)..=(qx + ring) {
            for &cy in &[qy - ring, qy + ring] {
                if in_grid(cx, cy) {
                    visit(&self.bins[cy as usize * self.cols + cx as usize]);
                }
            }
        }
        for cy in (qy - ring + 1)..=(qy + ring - 1) {
            for &cx in &[qx - ring, qx + ring] {
                if in_grid(cx, cy) {
                    visit(&self.bins[cy as usize * self.cols + cx as usize]);
                }
            }
        }
    }
}

fn cell_index(coord: f64, min: f64, cell: f64, count: usize) -> usize {
    let raw = ((coord - min) / cell).floor();
    if raw <= 0.0 {
        0
    } else {
        (raw as usize).min(count - 1)
    }
}

fn better_candidate(
    d2: f64,
    i: usize,
    best_d2: f64,
    best: Option<usize>,
    xs: &[f64],
    ys: &[f64],
    values: &[f64],
) -> bool {
    if d2 < best_d2 {
        return true;
    }
    if d2 > best_d2 {
        return false;
    }
    let Some(b) = best else { return true };
    let key = (ys[i], xs[i], values[i]);
    let cur = (ys[b], xs[b], values[b]);
    lex_less(key, cur)
}

fn lex_less(a: (f64, f64, f64), b: (f64, f64, f64)) -> bool {
    use std::cmp::Ordering;
    match a.0.total_cmp(&b.0) {
        Ordering::Less => return true,
        Ordering::Greater => return false,
        Ordering::Equal => {}
    }
    match a.1.total_cmp(&b.1) {
        Ordering::Less => return true,
        Ordering::Greater => return false,
        Ordering::Equal => {}
    }
    a.2.total_cmp(&b.2) == Ordering::Less
}
