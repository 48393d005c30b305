//! Irregularly positioned samples produced by motion compensation.

use crate::error::{ensure_finite, Error, Result};

/// A set of scattered sample points. Positions are continuous coordinates in
/// the frame plane (`x` horizontal, `y` vertical, origin top-left); each
/// point carries the sample value it transports. Points may lie outside the
/// frame bounds; consumers that need in-bounds points clip themselves.
///
/// Stored column-wise so the numeric kernels can borrow each coordinate
/// array directly.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshPointSet {
    xs: Vec<f64>,
    ys: Vec<f64>,
    values: Vec<f64>,
}

impl MeshPointSet {
    /// Builds a mesh from parallel columns. Fails on length mismatch, on
    /// non-finite entries, and on an empty point list.
    pub fn from_columns(xs: Vec<f64>, ys: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "mesh columns disagree in length: {} xs, {} ys, {} values",
                xs.len(),
                ys.len(),
                values.len()
            )));
        }
        if xs.is_empty() {
            return Err(Error::EmptyMesh);
        }
        ensure_finite(&xs)?;
        ensure_finite(&ys)?;
        ensure_finite(&values)?;
        Ok(Self { xs, ys, values })
    }

    /// Builds a mesh from `(x, y, value)` triples.
    pub fn from_points(points: &[(f64, f64, f64)]) -> Result<Self> {
        let xs = points.iter().map(|p| p.0).collect();
        let ys = points.iter().map(|p| p.1).collect();
        let values = points.iter().map(|p| p.2).collect();
        Self::from_columns(xs, ys, values)
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one point
    }

    #[inline]
    pub fn point(&self, i: usize) -> (f64, f64, f64) {
        (self.xs[i], self.ys[i], self.values[i])
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }
}
