//! Iterative model generation for one reconstruction area.
//!
//! The area signal is approximated as a sparse expansion over a separable
//! cosine basis. Each iteration estimates, for every frequency, the
//! coefficient minimising the spatially weighted residual energy, selects
//! the frequency with the largest spectrally weighted energy decrease, and
//! accumulates its contribution into the model.

use ndarray::linalg::general_mat_mul;
use ndarray::{Array1, Array2};

use super::weights::{basis_axis, spatial_weight, spectral_weight};

/// One accepted basis function during model generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection {
    /// Iteration counter, starting at 0.
    pub iteration: usize,
    /// Horizontal frequency index.
    pub k: usize,
    /// Vertical frequency index.
    pub l: usize,
    /// Coefficient added to the model for this frequency in this iteration.
    pub coefficient: f64,
    /// Weighted residual energy after applying the contribution.
    pub energy_after: f64,
}

/// Sparse cosine model of one area, fitted to scattered points.
pub struct AreaModel {
    area_width: usize,
    area_height: usize,
    /// Horizontal basis factors per point: `P x M`, entry `(p, k)`.
    basis_x: Array2<f64>,
    /// Vertical basis factors per point: `P x N`, entry `(p, l)`.
    basis_y: Array2<f64>,
    /// Spatial weight per point.
    weights: Array1<f64>,
    /// Sum of `w * phi^2` per frequency; zero marks an unavailable frequency.
    denominators: Array2<f64>,
    /// Spectral selection weight per frequency.
    spectral: Array2<f64>,
    /// Current residual per point.
    residual: Array1<f64>,
    /// Accumulated expansion coefficients, `M x N`, entry `(k, l)`.
    coefficients: Array2<f64>,
    /// Scratch: basis_x scaled row-wise by `residual * weight`.
    scaled: Array2<f64>,
    /// Scratch: coefficient numerators per frequency.
    numerators: Array2<f64>,
    /// Scratch: weighted selection scores per frequency.
    scores: Array2<f64>,
}

/// Position of the largest strictly positive, finite entry; ties resolve to
/// the smaller `(k, l)` in lexicographic order.
fn argmax_positive(scores: &Array2<f64>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_score = 0.0;
    for (kl, &score) in scores.indexed_iter() {
        if score.is_finite() && score > best_score {
            best_score = score;
            best = Some(kl);
        }
    }
    best
}

impl AreaModel {
    /// Builds the model state for an area of `area_width x area_height`
    /// holding the given local points.
    ///
    /// Points must lie inside the area extent; there must be at least one.
    pub fn new(
        area_width: usize,
        area_height: usize,
        xs: &[f64],
        ys: &[f64],
        values: &[f64],
        rho: f64,
        sigma: f64,
    ) -> Self {
        let p = xs.len();
        assert_eq!(p, ys.len(), "coordinate arrays must have equal length");
        assert_eq!(p, values.len(), "value array must match coordinate length");
        assert!(p > 0, "an area model needs at least one point");
        let (m, n) = (area_width, area_height);

        let mut basis_x = Array2::zeros((p, m));
        let mut basis_y = Array2::zeros((p, n));
        let mut weights = Array1::zeros(p);
        for i in 0..p {
            for k in 0..m {
                basis_x[[i, k]] = basis_axis(k, xs[i], m);
            }
            for l in 0..n {
                basis_y[[i, l]] = basis_axis(l, ys[i], n);
            }
            weights[i] = spatial_weight(xs[i], ys[i], m, n, rho);
        }

        // den[k, l] = sum_p w_p * phi_x(p, k)^2 * phi_y(p, l)^2, computed as
        // one matrix product of the squared factor matrices.
        let squared_x = basis_x.mapv(|v| v * v);
        let mut weighted_squared_y = basis_y.mapv(|v| v * v);
        for (mut row, &w) in weighted_squared_y.outer_iter_mut().zip(weights.iter()) {
            row.map_inplace(|v| *v *= w);
        }
        let mut denominators = Array2::zeros((m, n));
        general_mat_mul(
            1.0,
            &squared_x.t(),
            &weighted_squared_y,
            0.0,
            &mut denominators,
        );

        let mut spectral = Array2::zeros((m, n));
        for k in 0..m {
            for l in 0..n {
                spectral[[k, l]] = spectral_weight(k, l, sigma);
            }
        }

        Self {
            area_width,
            area_height,
            basis_x,
            basis_y,
            weights,
            denominators,
            spectral,
            residual: Array1::from(values.to_vec()),
            coefficients: Array2::zeros((m, n)),
            scaled: Array2::zeros((p, m)),
            numerators: Array2::zeros((m, n)),
            scores: Array2::zeros((m, n)),
        }
    }

    pub fn area_width(&self) -> usize {
        self.area_width
    }

    pub fn area_height(&self) -> usize {
        self.area_height
    }

    /// Number of points the model is fitted to.
    pub fn point_count(&self) -> usize {
        self.residual.len()
    }

    /// Current residual per point, in the order the points were passed in.
    pub fn residuals(&self) -> &[f64] {
        self.residual
            .as_slice()
            .expect("residual array is contiguous")
    }

    /// Accumulated coefficient array, indexed `(k, l)`.
    pub fn coefficients(&self) -> &Array2<f64> {
        &self.coefficients
    }

    /// Current spatially weighted residual energy.
    pub fn energy(&self) -> f64 {
        self.residual
            .iter()
            .zip(self.weights.iter())
            .map(|(&r, &w)| w * r * r)
            .sum()
    }

    /// Least-squares coefficient for frequency `(k, l)` against the current
    /// residual, or `None` when the basis function vanishes at every point.
    pub fn estimate_coefficient(&self, k: usize, l: usize) -> Option<f64> {
        let den = self.denominators[[k, l]];
        if den == 0.0 {
            return None;
        }
        let mut num = 0.0;
        for p in 0..self.residual.len() {
            num += self.residual[p] * self.weights[p] * self.basis_x[[p, k]] * self.basis_y[[p, l]];
        }
        Some(num / den)
    }

    /// Adds the optimal contribution of frequency `(k, l)` to the model and
    /// updates the residual. Returns the coefficient, or `None` when the
    /// frequency is unavailable.
    pub fn apply_basis(&mut self, k: usize, l: usize) -> Option<f64> {
        let coefficient = self.estimate_coefficient(k, l)?;
        self.accumulate(k, l, coefficient);
        Some(coefficient)
    }

    /// Runs one iteration: estimates all coefficients, selects the frequency
    /// with the largest spectrally weighted energy decrease, and applies it.
    ///
    /// Returns `None` when no frequency offers a positive decrease, which
    /// also covers an all-zero residual.
    pub fn step(&mut self) -> Option<(usize, usize, f64)> {
        // scaled[p, k] = r_p * w_p * phi_x(p, k); one matrix product then
        // yields every frequency numerator at once.
        self.scaled.assign(&self.basis_x);
        for (mut row, (&r, &w)) in self
            .scaled
            .outer_iter_mut()
            .zip(self.residual.iter().zip(self.weights.iter()))
        {
            let f = r * w;
            row.map_inplace(|v| *v *= f);
        }
        general_mat_mul(
            1.0,
            &self.scaled.t(),
            &self.basis_y,
            0.0,
            &mut self.numerators,
        );

        // The energy decrease from adding the optimal coefficient of a
        // frequency is num^2 / den; unavailable frequencies score zero.
        for k in 0..self.area_width {
            for l in 0..self.area_height {
                let den = self.denominators[[k, l]];
                self.scores[[k, l]] = if den == 0.0 {
                    0.0
                } else {
                    let num = self.numerators[[k, l]];
                    num * num / den * self.spectral[[k, l]]
                };
            }
        }

        let (k, l) = argmax_positive(&self.scores)?;
        let coefficient = self.numerators[[k, l]] / self.denominators[[k, l]];
        self.accumulate(k, l, coefficient);
        Some((k, l, coefficient))
    }

    /// Runs the greedy loop until the iteration budget is exhausted, the
    /// weighted residual energy falls to `energy_stop` or below, or no
    /// frequency can decrease the energy further.
    pub fn run(&mut self, max_iterations: usize, energy_stop: f64) -> Vec<Selection> {
        let mut selections = Vec::new();
        for iteration in 0..max_iterations {
            if self.energy() <= energy_stop {
                break;
            }
            let Some((k, l, coefficient)) = self.step() else {
                break;
            };
            selections.push(Selection {
                iteration,
                k,
                l,
                coefficient,
                energy_after: self.energy(),
            });
        }
        selections
    }

    /// Evaluates the accumulated model at a continuous local position by
    /// direct summation over all coefficients.
    pub fn evaluate_at(&self, x: f64, y: f64) -> f64 {
        let mut col = vec![0.0; self.area_height];
        for (l, c) in col.iter_mut().enumerate() {
            *c = basis_axis(l, y, self.area_height);
        }
        let mut sum = 0.0;
        for k in 0..self.area_width {
            let fx = basis_axis(k, x, self.area_width);
            if fx == 0.0 {
                continue;
            }
            let mut inner = 0.0;
            for l in 0..self.area_height {
                inner += self.coefficients[[k, l]] * col[l];
            }
            sum += fx * inner;
        }
        sum
    }

    /// Evaluates the model on an integer sub-grid of the area via the
    /// separable inverse transform.
    ///
    /// Returns a `height x width` array indexed `[y][x]` for the local
    /// positions `(offset_x + x, offset_y + y)`.
    pub fn synthesize(
        &self,
        offset_x: usize,
        offset_y: usize,
        width: usize,
        height: usize,
    ) -> Array2<f64> {
        let mut grid_x = Array2::zeros((width, self.area_width));
        for gx in 0..width {
            for k in 0..self.area_width {
                grid_x[[gx, k]] = basis_axis(k, (offset_x + gx) as f64, self.area_width);
            }
        }
        let mut grid_y = Array2::zeros((height, self.area_height));
        for gy in 0..height {
            for l in 0..self.area_height {
                grid_y[[gy, l]] = basis_axis(l, (offset_y + gy) as f64, self.area_height);
            }
        }
        grid_y.dot(&self.coefficients.t()).dot(&grid_x.t())
    }

    fn accumulate(&mut self, k: usize, l: usize, coefficient: f64) {
        self.coefficients[[k, l]] += coefficient;
        for p in 0..self.residual.len() {
            self.residual[p] -= coefficient * self.basis_x[[p, k]] * self.basis_y[[p, l]];
        }
    }
}
