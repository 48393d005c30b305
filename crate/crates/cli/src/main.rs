//! Command-line frontend for motion-compensated frame rate up-conversion.

mod config;
mod flow_gen;
mod metrics;
mod protocol;
mod resample;

use clap::{Parser, Subcommand};

use config::ProtocolArgs;

#[derive(Parser, Debug)]
#[command(
    name = "afsmr",
    version,
    about = "Frame rate up-conversion by resampling motion-compensated meshes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reconstruct dropped frames across a sequence and score them.
    Fruc(ProtocolArgs),
    /// Reconstruct a single frame from a mesh or a frame pair.
    Resample(resample::ResampleArgs),
    /// Measure average per-frame runtimes across a sequence.
    Timing(ProtocolArgs),
    /// Generate a dense displacement field as a .flo file.
    FlowGen(flow_gen::FlowGenArgs),
    /// Compare two stored frames with PSNR and SSIM.
    Metrics(metrics::MetricsArgs),
}

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Fruc(args) => args.resolve().and_then(|cfg| {
            let report = protocol::run_fruc(&cfg)?;
            println!(
                "wrote {} ({} frame rows)",
                report.csv_path.display(),
                report.frame_rows
            );
            for (method, psnr_db, ssim_val, runtime_s) in &report.averages {
                println!(
                    "{:<5}  avg psnr {psnr_db:.4} dB  avg ssim {ssim_val:.5}  avg runtime {runtime_s:.3} s",
                    method.label()
                );
            }
            Ok(())
        }),
        Command::Resample(args) => resample::run(args),
        Command::Timing(args) => args.resolve().and_then(|cfg| {
            let report = protocol::run_timing(&cfg)?;
            println!("wrote {}", report.csv_path.display());
            for (method, runtime_s) in &report.averages {
                println!("{:<5}  avg runtime {runtime_s:.3} s", method.label());
            }
            Ok(())
        }),
        Command::FlowGen(args) => flow_gen::run(args),
        Command::Metrics(args) => metrics::run(args),
    };
    if let Err(err) = outcome {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
