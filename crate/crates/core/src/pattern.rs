//! Procedural grayscale test imagery.
//!
//! A fixed smooth field over the whole plane, combining broad luminance
//! waves, a soft diagonal edge, localized blobs, and mild texture. Frames
//! sampled from it at shifted origins form perfectly known translating
//! sequences: the motion between two samples is exactly the origin
//! difference, which makes the field useful for round-trip and ranking
//! experiments where ground truth motion must be beyond doubt.

use crate::frame::GrayFrame;

/// Continuous test field evaluated at plane position `(x, y)`, with the
/// default fine-texture strength of 1.
pub fn sample_field(x: f64, y: f64) -> f64 {
    sample_field_textured(x, y, 1.0)
}

/// Continuous test field with adjustable fine-texture strength.
///
/// `texture` scales only the two high-frequency grain terms; the broad
/// waves, blob, and edge stay fixed. Strength 0 leaves a smooth scene,
/// strength around 3 resembles heavily textured natural content. Values
/// stay inside the byte range for strengths up to about 5, and every term
/// is smooth, so sub-pixel samples are meaningful.
pub fn sample_field_textured(x: f64, y: f64, texture: f64) -> f64 {
    let waves = 40.0 * (0.031 * x + 0.7 * (0.011 * y).sin()).sin() * (0.023 * y - 0.4).cos();

    let (bx, by) = (x - 140.0, y - 90.0);
    let blob = 26.0 * (-(bx * bx + by * by) / 1800.0).exp() * (0.15 * (0.8 * x + 0.6 * y)).cos();

    let edge = 24.0 * ((y - 0.6 * x - 40.0) / 5.0).tanh();

    let ripple = 6.0 * (0.21 * x).sin() * (0.17 * y).sin();

    let grain_mid = texture
        * 3.2
        * (1.05 * x + 0.35 * y + 0.8 * (0.013 * x).sin()).sin()
        * (0.6 + 0.4 * (0.017 * x - 0.011 * y).sin());

    let grain_fine = texture
        * 2.3
        * (2.3 * x - 0.7 * y + 0.6 * (0.009 * y).cos()).sin()
        * (0.5 + 0.5 * (0.019 * x + 0.023 * y).cos());

    118.0 + waves + blob + edge + ripple + grain_mid + grain_fine
}

/// Samples a `width` x `height` frame whose pixel `(m, n)` reads the field
/// at `(origin_x + m, origin_y + n)`.
///
/// Sliding the origin by `(dx, dy)` moves the depicted content by
/// `(-dx, -dy)` in pixel coordinates; equivalently, a sequence of frames
/// with origins `c * (vx, vy)` shows content translating by `(-vx, -vy)`
/// per frame.
pub fn field_frame(width: usize, height: usize, origin_x: f64, origin_y: f64) -> GrayFrame {
    field_frame_textured(width, height, origin_x, origin_y, 1.0)
}

/// Same as [`field_frame`] with adjustable fine-texture strength.
pub fn field_frame_textured(
    width: usize,
    height: usize,
    origin_x: f64,
    origin_y: f64,
    texture: f64,
) -> GrayFrame {
    let mut values = vec![0.0f64; width * height];
    for n in 0..height {
        for m in 0..width {
            let v = sample_field_textured(origin_x + m as f64, origin_y + n as f64, texture);
            values[n * width + m] = v.clamp(0.0, 255.0);
        }
    }
    GrayFrame::new(width, height, values).expect("field frame dimensions are positive")
}
