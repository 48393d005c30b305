//! Evaluation protocol: reconstruct every second frame of a sequence from
//! its two neighbors and score the result against the dropped original.
//!
//! Timing covers mesh construction plus the method's resampling; file I/O,
//! flow acquisition, and metric computation stay outside the clock.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};

use afsmr_core::baselines::{interpolate_cubic, interpolate_linear, interpolate_nwe};
use afsmr_core::io::{count_yuv_frames, read_flo, read_yuv_frame, write_frame_pgm};
use afsmr_core::metrics::{psnr, ssim};
use afsmr_core::motion::{compensate_forward, estimate_block_matching, synthesize_flow};
use afsmr_core::resampler::{resample_frame, ResamplerConfig, Variant};
use afsmr_core::{GrayFrame, MeshPointSet, MotionField};

use crate::config::{echo_config, FlowSource, Method, RunConfig};

/// Reconstructs one frame from a compensated mesh with the given method.
pub fn reconstruct(
    method: Method,
    mesh: &MeshPointSet,
    width: usize,
    height: usize,
    resampler: &ResamplerConfig,
    nwe_bandwidth: f64,
) -> afsmr_core::Result<GrayFrame> {
    match method {
        Method::Lin => interpolate_linear(mesh, width, height),
        Method::Cub => interpolate_cubic(mesh, width, height),
        Method::Nwe => interpolate_nwe(mesh, width, height, nwe_bandwidth),
        Method::Fsmr => {
            let mut cfg = resampler.clone();
            cfg.variant = Variant::Fsmr;
            resample_frame(mesh, width, height, &cfg)
        }
        Method::Afsmr => {
            let mut cfg = resampler.clone();
            cfg.variant = Variant::Afsmr;
            resample_frame(mesh, width, height, &cfg)
        }
    }
}

/// Fetches the displacement field spanning frames `target - 1` to
/// `target + 1` (1-based) from the configured source.
pub fn obtain_flow(
    source: &FlowSource,
    prev: &GrayFrame,
    next: &GrayFrame,
    target: usize,
) -> Result<MotionField> {
    let field = match source {
        FlowSource::FloDirectory { directory } => {
            let path = directory.join(format!("flow_{}_{}.flo", target - 1, target + 1));
            read_flo(&path).with_context(|| format!("reading flow {}", path.display()))?
        }
        FlowSource::BlockMatching { config } => estimate_block_matching(prev, next, config)
            .with_context(|| format!("estimating flow for frame {target}"))?,
        FlowSource::Synthetic { spec } => synthesize_flow(spec, prev.width(), prev.height()),
    };
    if field.width() != prev.width() || field.height() != prev.height() {
        bail!(
            "flow for frame {target} is {}x{} but frames are {}x{}",
            field.width(),
            field.height(),
            prev.width(),
            prev.height()
        );
    }
    Ok(field)
}

fn ensure_sequence_length(cfg: &RunConfig, last_target: usize) -> Result<()> {
    let frames = count_yuv_frames(&cfg.sequence, cfg.width, cfg.height)
        .with_context(|| format!("inspecting {}", cfg.sequence.display()))?;
    let needed = last_target + 1;
    if frames < needed {
        bail!(
            "sequence {} holds {frames} frames of {}x{} but the protocol \
             (first_n = {}, stride = {}) needs {needed}",
            cfg.sequence.display(),
            cfg.width,
            cfg.height,
            cfg.first_n,
            cfg.stride
        );
    }
    Ok(())
}

/// Loads the 1-based frame `index` from the configured sequence.
fn load_frame(cfg: &RunConfig, index: usize) -> Result<GrayFrame> {
    read_yuv_frame(&cfg.sequence, index - 1, cfg.width, cfg.height)
        .with_context(|| format!("reading frame {index} of {}", cfg.sequence.display()))
}

#[derive(Debug, Default, Clone, Copy)]
struct Totals {
    psnr_sum: f64,
    ssim_sum: f64,
    runtime_sum: f64,
    count: usize,
}

impl Totals {
    fn add(&mut self, psnr_db: f64, ssim_val: f64, runtime_s: f64) {
        self.psnr_sum += psnr_db;
        self.ssim_sum += ssim_val;
        self.runtime_sum += runtime_s;
        self.count += 1;
    }
}

/// Summary of a full evaluation run.
#[derive(Debug)]
pub struct FrucReport {
    pub csv_path: PathBuf,
    /// Per-frame rows written, excluding the average rows.
    pub frame_rows: usize,
    /// `(method, mean PSNR, mean SSIM, mean runtime)` in method order.
    pub averages: Vec<(Method, f64, f64, f64)>,
}

/// Runs the full protocol: reconstruct, score, and write `results.csv`
/// plus an echo of the effective configuration into the output directory.
pub fn run_fruc(cfg: &RunConfig) -> Result<FrucReport> {
    cfg.validate()?;
    let targets = cfg.target_frames();
    let last = *targets.last().expect("validate guarantees first_n >= 3");
    ensure_sequence_length(cfg, last)?;
    std::fs::create_dir_all(&cfg.output_dir)
        .with_context(|| format!("creating {}", cfg.output_dir.display()))?;
    echo_config(cfg, &cfg.output_dir)?;

    let sequence = cfg.sequence_label();
    let csv_path = cfg.output_dir.join("results.csv");
    let mut writer = csv::Writer::from_path(&csv_path)
        .with_context(|| format!("creating {}", csv_path.display()))?;
    writer.write_record([
        "sequence",
        "frame",
        "method",
        "psnr_db",
        "ssim",
        "runtime_s",
    ])?;

    let mut totals = vec![Totals::default(); cfg.methods.len()];
    for &target in &targets {
        let prev = load_frame(cfg, target - 1)?;
        let next = load_frame(cfg, target + 1)?;
        let reference = load_frame(cfg, target)?;
        let flow = obtain_flow(&cfg.flow, &prev, &next, target)?;

        let mesh_clock = Instant::now();
        let mesh = compensate_forward(&prev, &flow)?;
        let mesh_seconds = mesh_clock.elapsed().as_secs_f64();

        for (slot, &method) in cfg.methods.iter().enumerate() {
            let clock = Instant::now();
            let rebuilt = reconstruct(
                method,
                &mesh,
                cfg.width,
                cfg.height,
                &cfg.resampler,
                cfg.nwe_bandwidth,
            )
            .with_context(|| format!("{} on frame {target}", method.label()))?;
            let runtime_s = mesh_seconds + clock.elapsed().as_secs_f64();

            let psnr_db = psnr(&reference, &rebuilt)?;
            let ssim_val = ssim(&reference, &rebuilt)?;
            writer.write_record([
                sequence.as_str(),
                &target.to_string(),
                method.label(),
                &psnr_db.to_string(),
                &ssim_val.to_string(),
                &runtime_s.to_string(),
            ])?;
            totals[slot].add(psnr_db, ssim_val, runtime_s);

            if cfg.write_frames {
                let name = format!(
                    "{sequence}_{target:04}_{}.pgm",
                    method.label().to_lowercase()
                );
                write_frame_pgm(cfg.output_dir.join(&name), &rebuilt)
                    .with_context(|| format!("writing {name}"))?;
            }
            eprintln!(
                "frame {target:>4}  {:<5}  psnr {psnr_db:>7.3} dB  ssim {ssim_val:.5}  {runtime_s:.3} s",
                method.label()
            );
        }
    }

    let mut averages = Vec::with_capacity(cfg.methods.len());
    for (slot, &method) in cfg.methods.iter().enumerate() {
        let t = totals[slot];
        let n = t.count as f64;
        let (p, s, r) = (t.psnr_sum / n, t.ssim_sum / n, t.runtime_sum / n);
        writer.write_record([
            sequence.as_str(),
            "avg",
            method.label(),
            &p.to_string(),
            &s.to_string(),
            &r.to_string(),
        ])?;
        averages.push((method, p, s, r));
    }
    writer.flush()?;

    Ok(FrucReport {
        csv_path,
        frame_rows: targets.len() * cfg.methods.len(),
        averages,
    })
}

/// Summary of a timing-only run.
#[derive(Debug)]
pub struct TimingReport {
    pub csv_path: PathBuf,
    /// `(method, mean runtime in seconds)` in method order.
    pub averages: Vec<(Method, f64)>,
}

/// Runs the protocol without metrics or frame output and writes
/// `timing.csv`. When FSMR is among the methods, every row also reports
/// FSMR's mean runtime divided by the row's, so values above 1 mean
/// faster than FSMR.
pub fn run_timing(cfg: &RunConfig) -> Result<TimingReport> {
    cfg.validate()?;
    let targets = cfg.target_frames();
    let last = *targets.last().expect("validate guarantees first_n >= 3");
    ensure_sequence_length(cfg, last)?;
    std::fs::create_dir_all(&cfg.output_dir)
        .with_context(|| format!("creating {}", cfg.output_dir.display()))?;
    echo_config(cfg, &cfg.output_dir)?;

    let mut sums = vec![0.0f64; cfg.methods.len()];
    for &target in &targets {
        let prev = load_frame(cfg, target - 1)?;
        let next = load_frame(cfg, target + 1)?;
        let flow = obtain_flow(&cfg.flow, &prev, &next, target)?;

        let mesh_clock = Instant::now();
        let mesh = compensate_forward(&prev, &flow)?;
        let mesh_seconds = mesh_clock.elapsed().as_secs_f64();

        for (slot, &method) in cfg.methods.iter().enumerate() {
            let clock = Instant::now();
            reconstruct(
                method,
                &mesh,
                cfg.width,
                cfg.height,
                &cfg.resampler,
                cfg.nwe_bandwidth,
            )
            .with_context(|| format!("{} on frame {target}", method.label()))?;
            sums[slot] += mesh_seconds + clock.elapsed().as_secs_f64();
            eprintln!("frame {target:>4}  {:<5}  timed", method.label());
        }
    }

    let n = targets.len() as f64;
    let averages: Vec<(Method, f64)> = cfg
        .methods
        .iter()
        .zip(&sums)
        .map(|(&m, &s)| (m, s / n))
        .collect();
    let fsmr_avg = averages
        .iter()
        .find(|(m, _)| *m == Method::Fsmr)
        .map(|&(_, r)| r);

    let csv_path = cfg.output_dir.join("timing.csv");
    let mut writer = csv::Writer::from_path(&csv_path)
        .with_context(|| format!("creating {}", csv_path.display()))?;
    match fsmr_avg {
        Some(reference) => {
            writer.write_record(["method", "avg_runtime_s", "speedup_vs_fsmr"])?;
            for &(method, avg) in &averages {
                writer.write_record([
                    method.label(),
                    &avg.to_string(),
                    &(reference / avg).to_string(),
                ])?;
            }
        }
        None => {
            writer.write_record(["method", "avg_runtime_s"])?;
            for &(method, avg) in &averages {
                writer.write_record([method.label(), &avg.to_string()])?;
            }
        }
    }
    writer.flush()?;

    Ok(TimingReport { csv_path, averages })
}

/// Reads a frame for the metrics command, dispatching on file extension:
/// PGM loads directly, anything else is treated as raw 4:2:0 YUV and needs
/// dimensions plus a 1-based frame index.
pub fn load_frame_flexible(
    path: &Path,
    width: Option<usize>,
    height: Option<usize>,
    frame: usize,
) -> Result<GrayFrame> {
    let is_pgm = path
        .extension()
        .map(|e| e.eq_ignore_ascii_case("pgm"))
        .unwrap_or(false);
    if is_pgm {
        return afsmr_core::io::read_frame_pgm(path)
            .with_context(|| format!("reading {}", path.display()));
    }
    let (Some(w), Some(h)) = (width, height) else {
        bail!(
            "{} is not a PGM file, so --width and --height are required",
            path.display()
        );
    };
    if frame == 0 {
        bail!("frame indices are 1-based, got 0");
    }
    read_yuv_frame(path, frame - 1, w, h)
        .with_context(|| format!("reading frame {frame} of {}", path.display()))
}
