//! Single-channel image plane with real-valued samples.

use crate::error::{ensure_finite, Error, Result};

/// A grayscale frame: `width * height` samples stored row-major, so the
/// sample at column `m`, row `n` lives at index `n * width + m`. The origin
/// is the top-left corner. Samples are kept as `f64` so that reconstructions
/// can be evaluated before any quantization; byte-backed sources map
/// losslessly into `[0, 255]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayFrame {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl GrayFrame {
    /// Wraps an existing sample buffer. Fails when the length does not match
    /// the dimensions or any sample is non-finite.
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidInput(format!(
                "frame dimensions must be positive, got {width}x{height}"
            )));
        }
        if values.len() != width * height {
            return Err(Error::LengthMismatch {
                width,
                height,
                expected: width * height,
                actual: values.len(),
            });
        }
        ensure_finite(&values)?;
        Ok(Self {
            width,
            height,
            values,
        })
    }

    /// A frame with every sample set to `value`.
    pub fn filled(width: usize, height: usize, value: f64) -> Self {
        assert!(width > 0 && height > 0, "frame dimensions must be positive");
        assert!(value.is_finite(), "fill value must be finite");
        Self {
            width,
            height,
            values: vec![value; width * height],
        }
    }

    /// Converts 8-bit samples; each byte maps to its exact integer value.
    pub fn from_bytes(width: usize, height: usize, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != width * height {
            return Err(Error::LengthMismatch {
                width,
                height,
                expected: width * height,
                actual: bytes.len(),
            });
        }
        let values = bytes.iter().map(|&b| f64::from(b)).collect();
        Self::new(width, height, values)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sample at column `m`, row `n`.
    #[inline]
    pub fn at(&self, m: usize, n: usize) -> f64 {
        debug_assert!(m < self.width && n < self.height);
        self.values[n * self.width + m]
    }

    #[inline]
    pub fn set(&mut self, m: usize, n: usize, value: f64) {
        debug_assert!(m < self.width && n < self.height);
        self.values[n * self.width + m] = value;
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Quantizes to 8-bit: round to nearest, clamp into `[0, 255]`.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.values
            .iter()
            .map(|&v| v.round().clamp(0.0, 255.0) as u8)
            .collect()
    }

    /// Returns true when both frames have identical dimensions.
    pub fn same_size(&self, other: &GrayFrame) -> bool {
        self.width == other.width && self.height == other.height
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_length_mismatch() {
        let err = GrayFrame::new(3, 2, vec![0.0; 5]).unwrap_err();
        assert!(matches!(
            err,
            Error::LengthMismatch {
                expected: 6,
                actual: 5,
                ..
            }
        ));
    }

    #[test]
    fn rejects_non_finite_samples() {
        let err = GrayFrame::new(2, 1, vec![1.0, f64::NAN]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { index: 1, .. }));
    }

    #[test]
    fn row_major_addressing() {
        let frame = GrayFrame::new(3, 2, vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(frame.at(0, 0), 0.0);
        assert_eq!(frame.at(2, 0), 2.0);
        assert_eq!(frame.at(0, 1), 3.0);
        assert_eq!(frame.at(2, 1), 5.0);
    }

    #[test]
    fn byte_round_trip_is_exact_for_integer_samples() {
        let bytes: Vec<u8> = (0..=255).map(|b| b as u8).collect();
        let frame = GrayFrame::from_bytes(16, 16, &bytes).unwrap();
        assert_eq!(frame.to_bytes(), bytes);
    }

    #[test]
    fn quantization_rounds_and_clamps() {
        let frame = GrayFrame::new(4, 1, vec![255.4, -3.0, 127.5, 260.0]).unwrap();
        assert_eq!(frame.to_bytes(), vec![255, 0, 128, 255]);
    }
}
