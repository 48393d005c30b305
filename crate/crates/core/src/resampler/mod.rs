//! Mesh-to-grid resampling through block-wise frequency-selective models.
//!
//! The frame is partitioned into blocks with overlapping support areas. Each
//! area's scattered points feed an iterative sparse-model fit over a cosine
//! basis; the model is then evaluated at the block's integer grid positions.
//! Two variants exist: the key-point-agnostic form models the mesh points
//! alone, while the key-point form first augments every area with regular
//! grid samples taken from a cubic-interpolated estimate and refines that
//! estimate.

mod area;
mod model;
mod weights;

pub use area::{gather_area_points, partition, AreaDescriptor, AreaPoints};
pub use model::{AreaModel, Selection};
pub use weights::{basis_axis, basis_value, spatial_weight, spectral_weight};

use ndarray::Array2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::GrayFrame;
use crate::mesh::MeshPointSet;
use crate::spatial::BinGrid;

/// Resampling algorithm variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Model the mesh points alone.
    #[default]
    Afsmr,
    /// Augment every area with key points from a cubic-interpolated
    /// estimate before modelling.
    Fsmr,
}

impl Variant {
    /// Lower-case token used in configuration files and result tables.
    pub fn name(self) -> &'static str {
        match self {
            Variant::Afsmr => "afsmr",
            Variant::Fsmr => "fsmr",
        }
    }
}

/// Grid positions that receive key points in the key-point variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KeyPointPlacement {
    /// One key point per grid position of the whole support area.
    #[default]
    FullArea,
    /// Key points only at the central block's grid positions.
    CentralBlock,
}

/// Parameters of the block-wise resampler.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ResamplerConfig {
    /// Central block edge length in pixels.
    pub block_size: usize,
    /// Support border width in pixels; an uncropped area spans
    /// `block_size + 2 * border` pixels per axis.
    pub border: usize,
    /// Spatial weight decay, in (0, 1).
    pub rho: f64,
    /// Spectral selection weight decay, in (0, 1).
    pub sigma: f64,
    /// Iteration budget per area.
    pub max_iterations: usize,
    /// Early-stop threshold on the weighted residual energy; zero disables
    /// early stopping.
    pub residual_energy_stop: f64,
    /// Algorithm variant.
    pub variant: Variant,
    /// Key point coverage for the key-point variant.
    pub key_points: KeyPointPlacement,
}

impl Default for ResamplerConfig {
    fn default() -> Self {
        Self {
            block_size: 16,
            border: 8,
            rho: 0.8,
            sigma: 0.7,
            max_iterations: 100,
            residual_energy_stop: 0.0,
            variant: Variant::Afsmr,
            key_points: KeyPointPlacement::FullArea,
        }
    }
}

impl ResamplerConfig {
    /// Checks parameter ranges.
    pub fn validate(&self) -> Result<()> {
        if self.block_size == 0 {
            return Err(Error::InvalidConfig("block_size must be at least 1".into()));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "rho must lie strictly between 0 and 1, got {}",
                self.rho
            )));
        }
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "sigma must lie strictly between 0 and 1, got {}",
                self.sigma
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "max_iterations must be at least 1".into(),
            ));
        }
        if !(self.residual_energy_stop >= 0.0 && self.residual_energy_stop.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "residual_energy_stop must be finite and non-negative, got {}",
                self.residual_energy_stop
            )));
        }
        Ok(())
    }
}

/// Model-generation record for one reconstruction area.
#[derive(Debug, Clone)]
pub struct AreaTrace {
    /// Index of the area in row-major block order.
    pub area_index: usize,
    /// Frame position of the central block.
    pub block_x: usize,
    pub block_y: usize,
    /// Number of points the model was fitted to, key points included.
    pub point_count: usize,
    /// True when the block was filled from the nearest mesh point because
    /// the area contained no mesh points.
    pub fallback: bool,
    /// Accepted basis functions in selection order.
    pub selections: Vec<Selection>,
}

/// Resamples scattered mesh points onto the full pixel grid of a
/// `width x height` frame.
pub fn resample_frame(
    mesh: &MeshPointSet,
    width: usize,
    height: usize,
    cfg: &ResamplerConfig,
) -> Result<GrayFrame> {
    resample_impl(mesh, width, height, cfg).map(|(frame, _)| frame)
}

/// Like [`resample_frame`], additionally returning per-area model traces.
pub fn resample_frame_traced(
    mesh: &MeshPointSet,
    width: usize,
    height: usize,
    cfg: &ResamplerConfig,
) -> Result<(GrayFrame, Vec<AreaTrace>)> {
    resample_impl(mesh, width, height, cfg)
}

fn resample_impl(
    mesh: &MeshPointSet,
    width: usize,
    height: usize,
    cfg: &ResamplerConfig,
) -> Result<(GrayFrame, Vec<AreaTrace>)> {
    cfg.validate()?;
    if width == 0 || height == 0 {
        return Err(Error::InvalidInput(format!(
            "output frame must be at least 1x1, got {width}x{height}"
        )));
    }

    let areas = partition(width, height, cfg);
    let gathered = gather_area_points(&areas, mesh, cfg);

    let baseline = match cfg.variant {
        Variant::Afsmr => None,
        Variant::Fsmr => Some(crate::baselines::interpolate_cubic(mesh, width, height)?),
    };
    let fallback_grid = if gathered.iter().any(AreaPoints::is_empty) {
        Some(BinGrid::build(mesh, 1.0))
    } else {
        None
    };

    let results: Vec<(Array2<f64>, AreaTrace)> = areas
        .par_iter()
        .zip(gathered.par_iter())
        .enumerate()
        .map(|(area_index, (area, points))| {
            reconstruct_area(
                area_index,
                area,
                points,
                cfg,
                baseline.as_ref(),
                fallback_grid.as_ref(),
            )
        })
        .collect();

    let mut values = vec![0.0; width * height];
    let mut traces = Vec::with_capacity(results.len());
    for (area, (patch, trace)) in areas.iter().zip(results) {
        for y in 0..area.block_height {
            for x in 0..area.block_width {
                let v = patch[[y, x]].clamp(0.0, 255.0);
                values[(area.block_y + y) * width + area.block_x + x] = v;
            }
        }
        traces.push(trace);
    }
    Ok((GrayFrame::new(width, height, values)?, traces))
}

fn reconstruct_area(
    area_index: usize,
    area: &AreaDescriptor,
    points: &AreaPoints,
    cfg: &ResamplerConfig,
    baseline: Option<&GrayFrame>,
    fallback_grid: Option<&BinGrid>,
) -> (Array2<f64>, AreaTrace) {
    let (off_x, off_y) = area.block_offset();
    let mut trace = AreaTrace {
        area_index,
        block_x: area.block_x,
        block_y: area.block_y,
        point_count: points.len(),
        fallback: false,
        selections: Vec::new(),
    };

    if points.is_empty() {
        let grid = fallback_grid.expect("fallback grid exists when any area is empty");
        let centre_x = area.block_x as f64 + (area.block_width as f64 - 1.0) / 2.0;
        let centre_y = area.block_y as f64 + (area.block_height as f64 - 1.0) / 2.0;
        let value = grid.value(grid.nearest(centre_x, centre_y));
        trace.fallback = true;
        let patch = Array2::from_elem((area.block_height, area.block_width), value);
        return (patch, trace);
    }

    let mut xs = points.xs.clone();
    let mut ys = points.ys.clone();
    let mut values = points.values.clone();
    if let Some(base) = baseline {
        append_key_points(area, cfg.key_points, base, &mut xs, &mut ys, &mut values);
        trace.point_count = xs.len();
    }

    let mut model = AreaModel::new(
        area.area_width,
        area.area_height,
        &xs,
        &ys,
        &values,
        cfg.rho,
        cfg.sigma,
    );
    trace.selections = model.run(cfg.max_iterations, cfg.residual_energy_stop);
    let patch = model.synthesize(off_x, off_y, area.block_width, area.block_height);
    (patch, trace)
}

/// Appends one point per covered grid position, valued from the baseline
/// estimate, in row-major order.
fn append_key_points(
    area: &AreaDescriptor,
    placement: KeyPointPlacement,
    baseline: &GrayFrame,
    xs: &mut Vec<f64>,
    ys: &mut Vec<f64>,
    values: &mut Vec<f64>,
) {
    let (x_range, y_range) = match placement {
        KeyPointPlacement::FullArea => (0..area.area_width, 0..area.area_height),
        KeyPointPlacement::CentralBlock => {
            let (off_x, off_y) = area.block_offset();
            (
                off_x..off_x + area.block_width,
                off_y..off_y + area.block_height,
            )
        }
    };
    for ly in y_range {
        for lx in x_range.clone() {
            xs.push(lx as f64);
            ys.push(ly as f64);
            values.push(baseline.at(area.area_x + lx, area.area_y + ly));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn smooth_value(x: f64, y: f64) -> f64 {
        128.0 + 50.0 * (0.11 * x).sin() * (0.07 * y).cos() + 20.0 * (0.05 * (x + y)).sin()
    }

    fn grid_mesh(width: usize, height: usize) -> MeshPointSet {
        let mut pts = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pts.push((x as f64, y as f64, smooth_value(x as f64, y as f64)));
            }
        }
        MeshPointSet::from_points(&pts).unwrap()
    }

    #[test]
    fn config_validation_rejects_out_of_range_parameters() {
        let mut cfg = ResamplerConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.rho = 1.0;
        assert!(
            cfg.validate().is_err(),
            "rho = 1 is outside the open interval"
        );
        cfg.rho = 0.8;
        cfg.sigma = 0.0;
        assert!(
            cfg.validate().is_err(),
            "sigma = 0 is outside the open interval"
        );
        cfg.sigma = 0.7;
        cfg.max_iterations = 0;
        assert!(cfg.validate().is_err());
        cfg.max_iterations = 1;
        cfg.residual_energy_stop = f64::NAN;
        assert!(cfg.validate().is_err());
        cfg.residual_energy_stop = 0.0;
        cfg.block_size = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn single_point_mesh_fills_frame_via_fallback() {
        let mesh = MeshPointSet::from_points(&[(5.0, 5.0, 42.0)]).unwrap();
        let cfg = ResamplerConfig::default();
        let frame = resample_frame(&mesh, 40, 24, &cfg).unwrap();
        assert!(
            frame.values().iter().all(|&v| (v - 42.0).abs() < 1e-9),
            "every block is filled from the only mesh point"
        );
        assert_eq!(
            frame.at(39, 23),
            42.0,
            "fallback blocks copy the value exactly"
        );
        let (_, traces) = resample_frame_traced(&mesh, 40, 24, &cfg).unwrap();
        // The point lies in the first area only; all other blocks fall back.
        assert!(!traces[0].fallback);
        assert!(traces[1..].iter().all(|t| t.fallback));
    }

    #[test]
    fn identity_grid_mesh_reconstructs_smooth_frame() {
        let (w, h) = (32, 32);
        let mesh = grid_mesh(w, h);
        let cfg = ResamplerConfig {
            max_iterations: 300,
            ..ResamplerConfig::default()
        };
        let frame = resample_frame(&mesh, w, h, &cfg).unwrap();
        let mut worst = 0.0f64;
        let mut sse = 0.0f64;
        for y in 0..h {
            for x in 0..w {
                let err = frame.at(x, y) - smooth_value(x as f64, y as f64);
                worst = worst.max(err.abs());
                sse += err * err;
            }
        }
        let rmse = (sse / (w * h) as f64).sqrt();
        assert!(
            worst < 1.6 && rmse < 0.16,
            "grid-aligned mesh of a smooth signal reconstructs in place, worst {worst}, rmse {rmse}"
        );
    }

    #[test]
    fn output_is_invariant_under_mesh_permutation() {
        let mut rng = StdRng::seed_from_u64(41);
        let mut pts: Vec<(f64, f64, f64)> = (0..400)
            .map(|_| {
                (
                    rng.random_range(0.0..32.0),
                    rng.random_range(0.0..32.0),
                    rng.random_range(0.0..255.0),
                )
            })
            .collect();
        let forward = MeshPointSet::from_points(&pts).unwrap();
        // Deterministic shuffle: reverse plus a couple of swaps.
        pts.reverse();
        pts.swap(3, 77);
        pts.swap(120, 200);
        let shuffled = MeshPointSet::from_points(&pts).unwrap();
        let cfg = ResamplerConfig {
            max_iterations: 40,
            ..ResamplerConfig::default()
        };
        let a = resample_frame(&forward, 32, 32, &cfg).unwrap();
        let b = resample_frame(&shuffled, 32, 32, &cfg).unwrap();
        assert_eq!(
            a.values(),
            b.values(),
            "canonical gathering makes sums order-independent"
        );
    }

    #[test]
    fn output_values_are_clamped_to_byte_range() {
        let mut rng = StdRng::seed_from_u64(42);
        let pts: Vec<(f64, f64, f64)> = (0..120)
            .map(|_| {
                let v = if rng.random_range(0..2) == 0 {
                    0.0
                } else {
                    255.0
                };
                (rng.random_range(0.0..24.0), rng.random_range(0.0..24.0), v)
            })
            .collect();
        let mesh = MeshPointSet::from_points(&pts).unwrap();
        let frame = resample_frame(&mesh, 24, 24, &ResamplerConfig::default()).unwrap();
        assert!(
            frame.values().iter().all(|&v| (0.0..=255.0).contains(&v)),
            "synthesis overshoot is clamped at assembly"
        );
    }

    #[test]
    fn traces_expose_monotone_energy_and_block_layout() {
        let mesh = grid_mesh(32, 32);
        let cfg = ResamplerConfig {
            max_iterations: 25,
            ..ResamplerConfig::default()
        };
        let (_, traces) = resample_frame_traced(&mesh, 32, 32, &cfg).unwrap();
        assert_eq!(traces.len(), 4);
        assert_eq!((traces[1].block_x, traces[1].block_y), (16, 0));
        for trace in &traces {
            assert!(!trace.fallback);
            assert!(!trace.selections.is_empty());
            for pair in trace.selections.windows(2) {
                assert!(
                    pair[1].energy_after <= pair[0].energy_after * (1.0 + 1e-9),
                    "weighted energy must not increase between selections"
                );
            }
        }
    }

    #[test]
    fn traced_and_untraced_outputs_agree() {
        let mesh = grid_mesh(20, 20);
        let cfg = ResamplerConfig {
            max_iterations: 30,
            ..ResamplerConfig::default()
        };
        let plain = resample_frame(&mesh, 20, 20, &cfg).unwrap();
        let (traced, _) = resample_frame_traced(&mesh, 20, 20, &cfg).unwrap();
        assert_eq!(plain.values(), traced.values());
    }

    #[test]
    fn key_point_variant_matches_agnostic_variant_on_exact_grid_mesh() {
        let (w, h) = (32, 32);
        let mesh = grid_mesh(w, h);
        let afsmr = ResamplerConfig {
            max_iterations: 200,
            ..ResamplerConfig::default()
        };
        let fsmr = ResamplerConfig {
            variant: Variant::Fsmr,
            ..afsmr.clone()
        };
        let a = resample_frame(&mesh, w, h, &afsmr).unwrap();
        let b = resample_frame(&mesh, w, h, &fsmr).unwrap();
        let mse: f64 = a
            .values()
            .iter()
            .zip(b.values())
            .map(|(&p, &q)| (p - q) * (p - q))
            .sum::<f64>()
            / (w * h) as f64;
        assert!(
            mse.sqrt() < 1e-3,
            "with exact grid samples both variants converge to the same frame, rms {}",
            mse.sqrt()
        );
    }

    #[test]
    fn rejects_zero_sized_output() {
        let mesh = MeshPointSet::from_points(&[(0.0, 0.0, 1.0)]).unwrap();
        let err = resample_frame(&mesh, 0, 5, &ResamplerConfig::default());
        assert!(err.is_err());
    }
}
