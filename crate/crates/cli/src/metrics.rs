//! Frame comparison: PSNR and SSIM between two stored frames.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;

use afsmr_core::metrics::{psnr, ssim};

use crate::protocol::load_frame_flexible;

#[derive(Args, Debug)]
pub struct MetricsArgs {
    /// Reference frame: PGM directly, or raw 4:2:0 YUV with --width and
    /// --height.
    #[arg(long)]
    reference: PathBuf,
    /// Frame under test, same formats as --reference.
    #[arg(long)]
    test: PathBuf,
    /// Frame width for YUV inputs.
    #[arg(long)]
    width: Option<usize>,
    /// Frame height for YUV inputs.
    #[arg(long)]
    height: Option<usize>,
    /// 1-based frame index into YUV inputs.
    #[arg(long, default_value_t = 1)]
    frame: usize,
    /// Separate 1-based frame index for the test input when it differs.
    #[arg(long)]
    test_frame: Option<usize>,
}

pub fn run(args: &MetricsArgs) -> Result<()> {
    let reference = load_frame_flexible(&args.reference, args.width, args.height, args.frame)?;
    let test = load_frame_flexible(
        &args.test,
        args.width,
        args.height,
        args.test_frame.unwrap_or(args.frame),
    )?;
    println!("psnr_db: {}", psnr(&reference, &test)?);
    println!("ssim: {}", ssim(&reference, &test)?);
    Ok(())
}
