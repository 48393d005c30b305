//! One-shot reconstruction of a single frame from scattered points.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Args;

use afsmr_core::io::{read_flo, read_frame_pgm, read_mesh_csv, read_yuv_frame, write_frame_pgm};
use afsmr_core::metrics::{psnr, ssim};
use afsmr_core::motion::compensate_forward;
use afsmr_core::resampler::{resample_frame_traced, AreaTrace, ResamplerConfig, Variant};
use afsmr_core::MeshPointSet;

use crate::config::{Method, ResamplerFlags};
use crate::protocol::reconstruct;

#[derive(Args, Debug)]
pub struct ResampleArgs {
    /// Scattered mesh points as CSV columns x,y,value; resampled directly.
    #[arg(long, conflicts_with = "sequence")]
    mesh: Option<PathBuf>,
    /// Raw 8-bit 4:2:0 YUV sequence; the mesh comes from the frame before
    /// --frame-index pushed halfway along --flow.
    #[arg(long)]
    sequence: Option<PathBuf>,
    /// 1-based index of the frame to reconstruct.
    #[arg(long)]
    frame_index: Option<usize>,
    /// Dense displacement field (.flo) spanning the two frames around
    /// --frame-index.
    #[arg(long)]
    flow: Option<PathBuf>,
    /// Output frame width in pixels.
    #[arg(long)]
    width: usize,
    /// Output frame height in pixels.
    #[arg(long)]
    height: usize,
    #[arg(long, value_enum, default_value = "afsmr")]
    method: Method,
    /// Gaussian bandwidth for NWE, in pixels.
    #[arg(long, default_value_t = 1.0)]
    nwe_bandwidth: f64,
    /// Write the reconstruction as a binary PGM file.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Reference frame (PGM) to score the reconstruction against.
    #[arg(long)]
    reference: Option<PathBuf>,
    /// Write per-area model traces as CSV; FSMR and AFSMR only.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[command(flatten)]
    resampler: ResamplerFlags,
}

fn build_mesh(args: &ResampleArgs) -> Result<MeshPointSet> {
    match (&args.mesh, &args.sequence) {
        (Some(path), None) => {
            read_mesh_csv(path).with_context(|| format!("reading mesh {}", path.display()))
        }
        (None, Some(seq)) => {
            let target = args
                .frame_index
                .context("--frame-index is required with --sequence")?;
            if target < 2 {
                bail!("--frame-index is 1-based and needs a predecessor, got {target}");
            }
            let flow_path = args
                .flow
                .as_ref()
                .context("--flow is required with --sequence")?;
            let prev = read_yuv_frame(seq, target - 2, args.width, args.height)
                .with_context(|| format!("reading frame {} of {}", target - 1, seq.display()))?;
            let flow = read_flo(flow_path)
                .with_context(|| format!("reading flow {}", flow_path.display()))?;
            Ok(compensate_forward(&prev, &flow)?)
        }
        (None, None) => bail!("either --mesh or --sequence must be given"),
        (Some(_), Some(_)) => unreachable!("clap rejects --mesh together with --sequence"),
    }
}

fn write_traces(path: &Path, traces: &[AreaTrace]) -> Result<()> {
    let mut writer =
        csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    writer.write_record([
        "area_index",
        "block_x",
        "block_y",
        "point_count",
        "fallback",
        "iteration",
        "k",
        "l",
        "coefficient",
        "energy_after",
    ])?;
    for trace in traces {
        let head = [
            trace.area_index.to_string(),
            trace.block_x.to_string(),
            trace.block_y.to_string(),
            trace.point_count.to_string(),
            trace.fallback.to_string(),
        ];
        if trace.selections.is_empty() {
            let empty = std::iter::repeat(String::new()).take(5);
            writer.write_record(head.iter().cloned().chain(empty))?;
        } else {
            for s in &trace.selections {
                writer.write_record(head.iter().cloned().chain([
                    s.iteration.to_string(),
                    s.k.to_string(),
                    s.l.to_string(),
                    s.coefficient.to_string(),
                    s.energy_after.to_string(),
                ]))?;
            }
        }
    }
    writer.flush()?;
    Ok(())
}

pub fn run(args: &ResampleArgs) -> Result<()> {
    if args.trace.is_some() && !matches!(args.method, Method::Fsmr | Method::Afsmr) {
        bail!("--trace is only available for the fsmr and afsmr methods");
    }
    let mesh = build_mesh(args)?;
    let mut cfg = ResamplerConfig::default();
    args.resampler.apply(&mut cfg);

    let clock = Instant::now();
    let (rebuilt, traces) = match args.method {
        Method::Fsmr | Method::Afsmr => {
            cfg.variant = match args.method {
                Method::Fsmr => Variant::Fsmr,
                _ => Variant::Afsmr,
            };
            let (frame, traces) = resample_frame_traced(&mesh, args.width, args.height, &cfg)?;
            (frame, Some(traces))
        }
        _ => {
            let frame = reconstruct(
                args.method,
                &mesh,
                args.width,
                args.height,
                &cfg,
                args.nwe_bandwidth,
            )?;
            (frame, None)
        }
    };
    let runtime_s = clock.elapsed().as_secs_f64();

    println!("method: {}", args.method.label());
    println!("points: {}", mesh.len());
    println!("runtime_s: {runtime_s}");

    if let Some(out) = &args.output {
        write_frame_pgm(out, &rebuilt).with_context(|| format!("writing {}", out.display()))?;
        println!("wrote {}", out.display());
    }
    if let Some(ref_path) = &args.reference {
        let reference = read_frame_pgm(ref_path)
            .with_context(|| format!("reading reference {}", ref_path.display()))?;
        println!("psnr_db: {}", psnr(&reference, &rebuilt)?);
        println!("ssim: {}", ssim(&reference, &rebuilt)?);
    }
    if let (Some(trace_path), Some(traces)) = (&args.trace, traces) {
        write_traces(trace_path, &traces)?;
        println!("wrote {}", trace_path.display());
    }
    Ok(())
}
