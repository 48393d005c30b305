//! Full-reference image quality metrics over byte-range grayscale frames.

use crate::error::{Error, Result};
use crate::frame::GrayFrame;

/// Peak signal level the metrics assume; frames hold 8-bit data.
const PEAK: f64 = 255.0;

/// Gaussian window width for the structural similarity index.
const WINDOW: usize = 11;

/// Gaussian window scale in pixels.
const WINDOW_SIGMA: f64 = 1.5;

/// Stabilizer `(0.01 * PEAK)^2` for the luminance term.
const C1: f64 = 6.5025;

/// Stabilizer `(0.03 * PEAK)^2` for the contrast term.
const C2: f64 = 58.5225;

fn check_same_size(reference: &GrayFrame, test: &GrayFrame) -> Result<()> {
    if reference.width() != test.width() || reference.height() != test.height() {
        return Err(Error::DimensionMismatch {
            left_w: reference.width(),
            left_h: reference.height(),
            right_w: test.width(),
            right_h: test.height(),
        });
    }
    Ok(())
}

/// Mean squared error between two equally sized frames.
pub fn mse(reference: &GrayFrame, test: &GrayFrame) -> Result<f64> {
    check_same_size(reference, test)?;
    let sum: f64 = reference
        .values()
        .iter()
        .zip(test.values())
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum();
    Ok(sum / reference.values().len() as f64)
}

/// Peak signal-to-noise ratio in decibels, `10 * log10(255^2 / MSE)`.
///
/// Identical frames have zero error and yield `f64::INFINITY`.
pub fn psnr(reference: &GrayFrame, test: &GrayFrame) -> Result<f64> {
    let mse = mse(reference, test)?;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (PEAK * PEAK / mse).log10())
}

/// Mean structural similarity index over all fully interior 11x11
/// Gaussian windows (scale 1.5), with the standard stabilizers for
/// 8-bit data.
///
/// Windows never extend past the frame edge, so both dimensions must be
/// at least 11 pixels. Comparing a frame against itself yields exactly 1.
pub fn ssim(reference: &GrayFrame, test: &GrayFrame) -> Result<f64> {
    check_same_size(reference, test)?;
    let (width, height) = (reference.width(), reference.height());
    if width < WINDOW || height < WINDOW {
        return Err(Error::InvalidInput(format!(
            "structural similarity needs at least {WINDOW}x{WINDOW} pixels, got {width}x{height}"
        )));
    }

    let kernel = gaussian_window();
    let a = reference.values();
    let b = test.values();
    let products: [Vec<f64>; 3] = [
        a.iter().zip(b).map(|(&x, &y)| x * y).collect(),
        a.iter().map(|&x| x * x).collect(),
        b.iter().map(|&y| y * y).collect(),
    ];

    let mu_a = blur_valid(a, width, height, &kernel);
    let mu_b = blur_valid(b, width, height, &kernel);
    let mu_ab = blur_valid(&products[0], width, height, &kernel);
    let mu_aa = blur_valid(&products[1], width, height, &kernel);
    let mu_bb = blur_valid(&products[2], width, height, &kernel);

    let mut sum = 0.0f64;
    for i in 0..mu_a.len() {
        let (ma, mb) = (mu_a[i], mu_b[i]);
        let var_a = mu_aa[i] - ma * ma;
        let var_b = mu_bb[i] - mb * mb;
        let cov = mu_ab[i] - ma * mb;
        let num = (2.0 * ma * mb + C1) * (2.0 * cov + C2);
        let den = (ma * ma + mb * mb + C1) * (var_a + var_b + C2);
        sum += num / den;
    }
    Ok(sum / mu_a.len() as f64)
}

/// Normalized 11-tap Gaussian window.
fn gaussian_window() -> [f64; WINDOW] {
    let mut kernel = [0.0f64; WINDOW];
    let center = (WINDOW / 2) as f64;
    let mut total = 0.0;
    for (i, k) in kernel.iter_mut().enumerate() {
        let d = i as f64 - center;
        *k = (-d * d / (2.0 * WINDOW_SIGMA * WINDOW_SIGMA)).exp();
        total += *k;
    }
    for k in &mut kernel {
        *k /= total;
    }
    kernel
}

/// Separable Gaussian blur keeping only windows fully inside the image.
///
/// Input is `width * height` row-major; output is
/// `(width - 10) * (height - 10)` row-major.
fn blur_valid(data: &[f64], width: usize, height: usize, kernel: &[f64; WINDOW]) -> Vec<f64> {
    let out_w = width - (WINDOW - 1);
    let out_h = height - (WINDOW - 1);

    let mut horizontal = vec![0.0f64; out_w * height];
    for n in 0..height {
        let row = &data[n * width..(n + 1) * width];
        let out_row = &mut horizontal[n * out_w..(n + 1) * out_w];
        for (j, out) in out_row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (t, &k) in kernel.iter().enumerate() {
                acc += k * row[j + t];
            }
            *out = acc;
        }
    }

    let mut output = vec![0.0f64; out_w * out_h];
    for i in 0..out_h {
        for j in 0..out_w {
            let mut acc = 0.0;
            for (t, &k) in kernel.iter().enumerate() {
                acc += k * horizontal[(i + t) * out_w + j];
            }
            output[i * out_w + j] = acc;
        }
    }
    output
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Deterministic 32x32 frame pair with closed-form integer-derived
    /// values, matching the pair the frozen metric constants below were
    /// computed from.
    fn reference_pair() -> (GrayFrame, GrayFrame) {
        let (w, h) = (32usize, 32usize);
        let mut a = vec![0.0f64; w * h];
        let mut b = vec![0.0f64; w * h];
        for i in 0..h {
            for j in 0..w {
                let va = ((3 * i + 5 * j) % 256) as f64;
                let vb = (va * 0.9 + 20.0 + ((i * j) % 7) as f64).clamp(0.0, 255.0);
                a[i * w + j] = va;
                b[i * w + j] = vb;
            }
        }
        (
            GrayFrame::new(w, h, a).unwrap(),
            GrayFrame::new(w, h, b).unwrap(),
        )
    }

    #[test]
    fn psnr_of_unit_mean_squared_error_matches_closed_form() {
        let w = 16;
        let a = GrayFrame::new(w, w, vec![100.0; w * w]).unwrap();
        let b = GrayFrame::new(w, w, vec![101.0; w * w]).unwrap();
        let got = psnr(&a, &b).unwrap();
        assert!(
            (got - 48.13080360867910).abs() < 1e-12,
            "unit-error psnr: got {got}"
        );
    }

    #[test]
    fn psnr_of_identical_frames_is_infinite() {
        let a = GrayFrame::new(8, 8, vec![42.0; 64]).unwrap();
        assert_eq!(psnr(&a, &a).unwrap(), f64::INFINITY);
    }

    #[test]
    fn psnr_matches_reference_value_on_fixed_pair() {
        let (a, b) = reference_pair();
        let got = psnr(&a, &b).unwrap();
        assert!(
            (got - 26.85347186658731).abs() < 1e-9,
            "fixed-pair psnr: got {got}"
        );
    }

    #[test]
    fn ssim_matches_reference_value_on_fixed_pair() {
        let (a, b) = reference_pair();
        let got = ssim(&a, &b).unwrap();
        assert!(
            (got - 0.9675219381495843).abs() < 1e-9,
            "fixed-pair ssim: got {got}"
        );
    }

    #[test]
    fn ssim_of_identical_frames_is_exactly_one() {
        let (_, b) = reference_pair();
        assert_eq!(ssim(&b, &b).unwrap(), 1.0);
    }

    #[test]
    fn ssim_is_symmetric() {
        let (a, b) = reference_pair();
        assert_eq!(ssim(&a, &b).unwrap(), ssim(&b, &a).unwrap());
    }

    #[test]
    fn metrics_reject_mismatched_dimensions() {
        let a = GrayFrame::new(16, 16, vec![0.0; 256]).unwrap();
        let b = GrayFrame::new(16, 8, vec![0.0; 128]).unwrap();
        assert!(psnr(&a, &b).is_err());
        assert!(ssim(&a, &b).is_err());
    }

    #[test]
    fn ssim_rejects_frames_smaller_than_the_window() {
        let a = GrayFrame::new(10, 16, vec![0.0; 160]).unwrap();
        assert!(ssim(&a, &a).is_err(), "10 pixel width has no valid window");
    }

    #[test]
    fn ssim_decreases_for_stronger_distortion() {
        let (a, b) = reference_pair();
        let mut heavier = b.values().to_vec();
        for (i, v) in heavier.iter_mut().enumerate() {
            *v = (*v + ((i % 13) as f64) * 4.0).clamp(0.0, 255.0);
        }
        let c = GrayFrame::new(b.width(), b.height(), heavier).unwrap();
        let light = ssim(&a, &b).unwrap();
        let heavy = ssim(&a, &c).unwrap();
        assert!(
            heavy < light,
            "added distortion must lower similarity: {heavy} vs {light}"
        );
    }
}
