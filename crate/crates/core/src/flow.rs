//! Dense per-pixel displacement fields.

use crate::error::{ensure_finite, Error, Result};

/// A dense motion field: one `(dm, dn)` displacement per pixel, stored
/// row-major like [`crate::GrayFrame`]. `dm` is the horizontal component,
/// `dn` the vertical component, both in pixels and both real-valued.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionField {
    width: usize,
    height: usize,
    dm: Vec<f64>,
    dn: Vec<f64>,
}

impl MotionField {
    /// Wraps existing component planes. Fails on length mismatch or any
    /// non-finite component.
    pub fn new(width: usize, height: usize, dm: Vec<f64>, dn: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidInput(format!(
                "motion field dimensions must be positive, got {width}x{height}"
            )));
        }
        let expected = width * height;
        for (name, plane) in [("dm", &dm), ("dn", &dn)] {
            if plane.len() != expected {
                return Err(Error::InvalidInput(format!(
                    "{name} plane holds {} entries, expected {expected}",
                    plane.len()
                )));
            }
        }
        ensure_finite(&dm)?;
        ensure_finite(&dn)?;
        Ok(Self {
            width,
            height,
            dm,
            dn,
        })
    }

    /// A field with the same displacement at every pixel.
    pub fn constant(width: usize, height: usize, dm: f64, dn: f64) -> Result<Self> {
        Self::new(
            width,
            height,
            vec![dm; width * height],
            vec![dn; width * height],
        )
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Displacement at column `m`, row `n`.
    #[inline]
    pub fn at(&self, m: usize, n: usize) -> (f64, f64) {
        debug_assert!(m < self.width && n < self.height);
        let i = n * self.width + m;
        (self.dm[i], self.dn[i])
    }

    pub fn dm(&self) -> &[f64] {
        &self.dm
    }

    pub fn dn(&self) -> &[f64] {
        &self.dn
    }
}
