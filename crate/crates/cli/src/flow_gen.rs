//! Displacement field generation: analytic fields and block matching.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Subcommand};

use afsmr_core::io::{read_yuv_frame, write_flo};
use afsmr_core::motion::{
    estimate_block_matching, synthesize_flow, BlockMatchConfig, SyntheticFlowSpec,
};

#[derive(Args, Debug)]
pub struct FlowGenArgs {
    #[command(subcommand)]
    kind: FlowKind,
}

#[derive(Subcommand, Debug)]
enum FlowKind {
    /// Constant displacement at every pixel.
    #[command(allow_negative_numbers = true)]
    Translation {
        #[arg(long)]
        width: usize,
        #[arg(long)]
        height: usize,
        /// Horizontal displacement in pixels.
        #[arg(long)]
        dx: f64,
        /// Vertical displacement in pixels.
        #[arg(long)]
        dy: f64,
        /// Destination .flo file.
        #[arg(long)]
        output: PathBuf,
    },
    /// Affine map: pixel (m, n) goes to (a11 m + a12 n + tx, a21 m + a22 n + ty).
    #[command(allow_negative_numbers = true)]
    Affine {
        #[arg(long)]
        width: usize,
        #[arg(long)]
        height: usize,
        #[arg(long, default_value_t = 1.0)]
        a11: f64,
        #[arg(long, default_value_t = 0.0)]
        a12: f64,
        #[arg(long, default_value_t = 0.0)]
        a21: f64,
        #[arg(long, default_value_t = 1.0)]
        a22: f64,
        #[arg(long, default_value_t = 0.0)]
        tx: f64,
        #[arg(long, default_value_t = 0.0)]
        ty: f64,
        /// Destination .flo file.
        #[arg(long)]
        output: PathBuf,
    },
    /// Exhaustive integer-pel block matching between two frames of a
    /// raw 8-bit 4:2:0 YUV sequence.
    BlockMatching {
        #[arg(long)]
        sequence: PathBuf,
        #[arg(long)]
        width: usize,
        #[arg(long)]
        height: usize,
        /// 1-based index of the earlier frame.
        #[arg(long)]
        prev: usize,
        /// 1-based index of the later frame.
        #[arg(long)]
        next: usize,
        /// Side length of the matched blocks.
        #[arg(long, default_value_t = BlockMatchConfig::default().block_size)]
        block_size: usize,
        /// Largest displacement searched on each axis.
        #[arg(long, default_value_t = BlockMatchConfig::default().search_range)]
        search_range: usize,
        /// Destination .flo file.
        #[arg(long)]
        output: PathBuf,
    },
}

pub fn run(args: &FlowGenArgs) -> Result<()> {
    match &args.kind {
        FlowKind::Translation {
            width,
            height,
            dx,
            dy,
            output,
        } => {
            let spec = SyntheticFlowSpec::GlobalTranslation { dx: *dx, dy: *dy };
            let field = synthesize_flow(&spec, *width, *height);
            write_flo(output, &field).with_context(|| format!("writing {}", output.display()))?;
            println!("wrote {} ({}x{})", output.display(), width, height);
        }
        FlowKind::Affine {
            width,
            height,
            a11,
            a12,
            a21,
            a22,
            tx,
            ty,
            output,
        } => {
            let spec = SyntheticFlowSpec::Affine {
                a11: *a11,
                a12: *a12,
                a21: *a21,
                a22: *a22,
                tx: *tx,
                ty: *ty,
            };
            let field = synthesize_flow(&spec, *width, *height);
            write_flo(output, &field).with_context(|| format!("writing {}", output.display()))?;
            println!("wrote {} ({}x{})", output.display(), width, height);
        }
        FlowKind::BlockMatching {
            sequence,
            width,
            height,
            prev,
            next,
            block_size,
            search_range,
            output,
        } => {
            if *prev == 0 || *next == 0 {
                anyhow::bail!("frame indices are 1-based, got prev {prev} and next {next}");
            }
            let prev_frame = read_yuv_frame(sequence, prev - 1, *width, *height)
                .with_context(|| format!("reading frame {prev} of {}", sequence.display()))?;
            let next_frame = read_yuv_frame(sequence, next - 1, *width, *height)
                .with_context(|| format!("reading frame {next} of {}", sequence.display()))?;
            let cfg = BlockMatchConfig {
                block_size: *block_size,
                search_range: *search_range,
            };
            let field = estimate_block_matching(&prev_frame, &next_frame, &cfg)?;
            write_flo(output, &field).with_context(|| format!("writing {}", output.display()))?;
            println!(
                "wrote {} (frames {prev} to {next}, {}x{})",
                output.display(),
                width,
                height
            );
        }
    }
    Ok(())
}
