//! Spatial and spectral weighting functions of the area model.

/// Isotropic spatial weight of a position inside a reconstruction area.
///
/// Decays as `rho` raised to the Euclidean distance from the area centre
/// `((w-1)/2, (h-1)/2)`, so points near the centre dominate coefficient
/// estimation while border support still contributes. Accepts continuous
/// coordinates; mesh points and integer grid positions are treated alike.
pub fn spatial_weight(x: f64, y: f64, area_width: usize, area_height: usize, rho: f64) -> f64 {
    let cx = (area_width as f64 - 1.0) / 2.0;
    let cy = (area_height as f64 - 1.0) / 2.0;
    let dx = x - cx;
    let dy = y - cy;
    rho.powf((dx * dx + dy * dy).sqrt())
}

/// Frequency weight favouring low-frequency basis functions during selection.
///
/// Decays as `sigma` raised to the Euclidean norm of the frequency index
/// `(k, l)`.
pub fn spectral_weight(k: usize, l: usize, sigma: f64) -> f64 {
    sigma.powf(((k * k + l * l) as f64).sqrt())
}

/// One axis factor of the separable cosine basis: `cos(pi k (2x+1) / (2M))`.
pub fn basis_axis(freq: usize, coord: f64, extent: usize) -> f64 {
    (std::f64::consts::PI * freq as f64 * (2.0 * coord + 1.0) / (2.0 * extent as f64)).cos()
}

/// Two-dimensional basis function value at a continuous position.
pub fn basis_value(
    k: usize,
    l: usize,
    x: f64,
    y: f64,
    area_width: usize,
    area_height: usize,
) -> f64 {
    basis_axis(k, x, area_width) * basis_axis(l, y, area_height)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn assert_close(actual: f64, expected: f64, rel: f64, what: &str) {
        let scale = expected.abs().max(1e-300);
        assert!(
            (actual - expected).abs() / scale <= rel,
            "{what}: got {actual}, expected {expected}"
        );
    }

    #[test]
    fn spatial_weight_is_one_at_area_centre() {
        assert_eq!(spatial_weight(15.5, 15.5, 32, 32, 0.8), 1.0);
        assert_eq!(spatial_weight(3.0, 2.0, 7, 5, 0.3), 1.0);
    }

    #[test]
    fn spatial_weight_at_unit_distance_equals_rho() {
        assert_close(
            spatial_weight(16.5, 15.5, 32, 32, 0.8),
            0.8,
            1e-15,
            "unit horizontal offset",
        );
        assert_close(
            spatial_weight(15.5, 14.5, 32, 32, 0.8),
            0.8,
            1e-15,
            "unit vertical offset",
        );
    }

    #[test]
    fn spatial_weight_at_far_corner_of_default_area() {
        // Corner (0, 0) of a 32x32 area lies sqrt(2) * 15.5 = 21.9203...
        // from the centre; the value was frozen from a high-precision
        // evaluation of 0.8^d.
        assert_close(
            spatial_weight(0.0, 0.0, 32, 32, 0.8),
            7.511081108693646e-3,
            1e-12,
            "corner weight",
        );
    }

    #[test]
    fn spectral_weight_known_values() {
        assert_eq!(spectral_weight(0, 0, 0.7), 1.0);
        assert_close(spectral_weight(1, 0, 0.7), 0.7, 1e-15, "unit frequency");
        assert_close(spectral_weight(0, 1, 0.7), 0.7, 1e-15, "unit frequency");
        // 3-4-5 triple: exponent is exactly 5.
        assert_close(spectral_weight(3, 4, 0.7), 0.16807, 1e-12, "0.7^5");
        // Frozen from a high-precision evaluation of 0.7^sqrt(2).
        assert_close(
            spectral_weight(1, 1, 0.7),
            0.6038590053932679,
            1e-12,
            "0.7^sqrt(2)",
        );
    }

    #[test]
    fn basis_axis_zero_frequency_is_constant_one() {
        for &x in &[0.0, 0.25, 7.9, 31.0] {
            assert_eq!(basis_axis(0, x, 32), 1.0);
        }
        assert_eq!(basis_value(0, 0, 4.7, 9.1, 32, 32), 1.0);
    }

    #[test]
    fn basis_value_is_separable_product() {
        let v = basis_value(3, 5, 2.25, 7.5, 16, 24);
        let expected = basis_axis(3, 2.25, 16) * basis_axis(5, 7.5, 24);
        assert_eq!(v, expected);
    }

    proptest! {
        #[test]
        fn spatial_weight_is_radially_symmetric(
            qx in -62i32..=62,
            qy in -62i32..=62,
        ) {
            // Quarter-pixel offsets keep every coordinate sum exact, so the
            // eight reflections and swaps see bitwise-identical distances.
            let (dx, dy) = (qx as f64 * 0.25, qy as f64 * 0.25);
            let (cx, cy) = (15.5, 15.5);
            let base = spatial_weight(cx + dx, cy + dy, 32, 32, 0.8);
            for (ox, oy) in [
                (-dx, dy), (dx, -dy), (-dx, -dy),
                (dy, dx), (-dy, dx), (dy, -dx), (-dy, -dx),
            ] {
                prop_assert_eq!(base, spatial_weight(cx + ox, cy + oy, 32, 32, 0.8));
            }
        }

        #[test]
        fn spatial_weight_lies_in_unit_interval(
            x in 0.0f64..32.0,
            y in 0.0f64..32.0,
            rho in 0.01f64..0.99,
        ) {
            let w = spatial_weight(x, y, 32, 32, rho);
            prop_assert!(w > 0.0 && w <= 1.0, "weight {} out of (0, 1]", w);
        }

        #[test]
        fn spectral_weight_decreases_with_frequency_norm(
            k in 0usize..31,
            l in 0usize..31,
        ) {
            let w = spectral_weight(k, l, 0.7);
            prop_assert!(spectral_weight(k + 1, l, 0.7) < w);
            prop_assert!(spectral_weight(k, l + 1, 0.7) < w);
        }
    }
}
