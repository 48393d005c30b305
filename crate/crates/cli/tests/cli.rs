//! End-to-end runs of the compiled binary on small synthetic inputs.

use std::path::Path;
use std::process::{Command, Output};

use afsmr_core::io::{append_yuv_frame, read_flo, write_frame_pgm, write_mesh_csv};
use afsmr_core::pattern::field_frame;
use afsmr_core::{GrayFrame, MeshPointSet};

fn afsmr() -> Command {
    Command::new(env!("CARGO_BIN_EXE_afsmr"))
}

fn run_ok(cmd: &mut Command) -> Output {
    let output = cmd.output().expect("binary must launch");
    assert!(
        output.status.success(),
        "command failed\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
    output
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

/// Writes `count` frames of the synthetic field translating by
/// `(dx, dy)` pixels per frame.
fn write_sequence(path: &Path, width: usize, height: usize, count: usize, dx: f64, dy: f64) {
    for i in 0..count {
        let frame = field_frame(width, height, i as f64 * dx, i as f64 * dy);
        append_yuv_frame(path, &frame).expect("sequence frames must append");
    }
}

#[test]
fn fruc_writes_results_and_config_echo() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("clip.yuv");
    write_sequence(&seq, 64, 48, 6, 1.0, 0.0);
    let out_dir = dir.path().join("out");

    let config = format!(
        r#"
sequence = "{}"
width = 64
height = 48
first_n = 5
stride = 2
methods = ["lin", "nwe"]
output_dir = "{}"

[flow]
source = "synthetic"

[flow.spec]
kind = "global_translation"
dx = 2.0
dy = 0.0
"#,
        seq.display(),
        out_dir.display()
    );
    let config_path = dir.path().join("run.toml");
    std::fs::write(&config_path, config).unwrap();

    let output = run_ok(afsmr().args(["fruc", "--config"]).arg(&config_path));
    let stdout = stdout_of(&output);
    assert!(
        stdout.contains("4 frame rows"),
        "2 targets x 2 methods must yield 4 rows, got: {stdout}"
    );

    let csv = std::fs::read_to_string(out_dir.join("results.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0], "sequence,frame,method,psnr_db,ssim,runtime_s",
        "header row"
    );
    assert_eq!(lines.len(), 1 + 4 + 2, "4 frame rows plus 2 average rows");
    assert_eq!(
        lines.iter().filter(|l| l.contains(",avg,")).count(),
        2,
        "one average row per method"
    );
    for target in ["2", "4"] {
        assert!(
            lines.iter().any(|l| l.contains(&format!(",{target},LIN,"))),
            "LIN row for frame {target} in: {csv}"
        );
    }

    let echo = std::fs::read_to_string(out_dir.join("effective_config.toml")).unwrap();
    assert!(echo.contains("threads ="), "thread count echoed: {echo}");
    assert!(echo.contains("first_n = 5"), "protocol echoed: {echo}");
}

#[test]
fn fruc_rejects_missing_sequence() {
    let output = afsmr()
        .args(["fruc", "--width", "64", "--height", "48"])
        .output()
        .expect("binary must launch");
    assert!(!output.status.success(), "missing sequence must fail");
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("error:"), "diagnostic on stderr: {stderr}");
}

#[test]
fn timing_reports_speedup_against_fsmr() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("clip.yuv");
    write_sequence(&seq, 48, 32, 4, 0.5, 0.5);
    let out_dir = dir.path().join("out");

    run_ok(
        afsmr()
            .args(["timing", "--sequence"])
            .arg(&seq)
            .args([
                "--width",
                "48",
                "--height",
                "32",
                "--first-n",
                "3",
                "--stride",
                "2",
                "--methods",
                "fsmr,afsmr",
                "--max-iterations",
                "5",
                "--block-matching",
                "--output-dir",
            ])
            .arg(&out_dir),
    );

    let csv = std::fs::read_to_string(out_dir.join("timing.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "method,avg_runtime_s,speedup_vs_fsmr");
    assert_eq!(lines.len(), 3, "one row per method: {csv}");
    let fsmr_row: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fsmr_row[0], "FSMR");
    let self_speedup: f64 = fsmr_row[2].parse().unwrap();
    assert!(
        (self_speedup - 1.0).abs() < 1e-12,
        "FSMR speedup against itself must be 1, got {self_speedup}"
    );
}

#[test]
fn flow_gen_translation_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let flo = dir.path().join("shift.flo");
    run_ok(
        afsmr()
            .args([
                "flow-gen",
                "translation",
                "--width",
                "32",
                "--height",
                "16",
                "--dx",
                "2",
                "--dy",
                "-1",
                "--output",
            ])
            .arg(&flo),
    );
    let field = read_flo(&flo).unwrap();
    assert_eq!((field.width(), field.height()), (32, 16));
    assert_eq!(field.at(7, 9), (2.0, -1.0), "constant displacement");
}

#[test]
fn flow_gen_block_matching_recovers_global_shift() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("pair.yuv");
    // Frames 1 and 2 differ by an integer shift of (3, 2) pixels.
    write_sequence(&seq, 64, 48, 2, 3.0, 2.0);
    let flo = dir.path().join("est.flo");
    run_ok(
        afsmr()
            .args(["flow-gen", "block-matching", "--sequence"])
            .arg(&seq)
            .args([
                "--width", "64", "--height", "48", "--prev", "1", "--next", "2", "--output",
            ])
            .arg(&flo),
    );
    let field = read_flo(&flo).unwrap();
    // Away from borders the shift is unambiguous. Content at position p in
    // frame 2 equals content at p + (3, 2) in frame 1, so the estimated
    // forward displacement of frame 1 is (-3, -2).
    assert_eq!(field.at(32, 24), (-3.0, -2.0), "central block displacement");
}

#[test]
fn resample_reproduces_mesh_from_full_grid() {
    let dir = tempfile::tempdir().unwrap();
    // Integer-valued frame so that quantized PGM and mesh values agree.
    let pattern = field_frame(32, 24, 0.0, 0.0);
    let frame = GrayFrame::from_bytes(32, 24, &pattern.to_bytes()).unwrap();
    let reference = dir.path().join("ref.pgm");
    write_frame_pgm(&reference, &frame).unwrap();

    let mut points = Vec::new();
    for n in 0..24 {
        for m in 0..32 {
            points.push((m as f64, n as f64, frame.at(m, n)));
        }
    }
    let mesh = MeshPointSet::from_points(&points).unwrap();
    let mesh_path = dir.path().join("mesh.csv");
    write_mesh_csv(&mesh_path, &mesh).unwrap();

    let out = dir.path().join("rebuilt.pgm");
    let output = run_ok(
        afsmr()
            .args(["resample", "--mesh"])
            .arg(&mesh_path)
            .args(["--width", "32", "--height", "24", "--method", "lin"])
            .args(["--output"])
            .arg(&out)
            .args(["--reference"])
            .arg(&reference),
    );
    let stdout = stdout_of(&output);
    assert!(
        stdout.contains("psnr_db: inf"),
        "grid mesh reproduces the frame exactly: {stdout}"
    );
    assert!(stdout.contains("ssim: 1"), "identical frames: {stdout}");
    assert!(out.exists(), "reconstruction written");
}

#[test]
fn resample_writes_model_traces() {
    let dir = tempfile::tempdir().unwrap();
    let frame = field_frame(32, 16, 0.0, 0.0);
    let mut points = Vec::new();
    for n in 0..16 {
        for m in 0..32 {
            points.push((m as f64, n as f64, frame.at(m, n)));
        }
    }
    let mesh = MeshPointSet::from_points(&points).unwrap();
    let mesh_path = dir.path().join("mesh.csv");
    write_mesh_csv(&mesh_path, &mesh).unwrap();

    let trace = dir.path().join("trace.csv");
    run_ok(
        afsmr()
            .args(["resample", "--mesh"])
            .arg(&mesh_path)
            .args([
                "--width",
                "32",
                "--height",
                "16",
                "--method",
                "afsmr",
                "--max-iterations",
                "4",
                "--trace",
            ])
            .arg(&trace),
    );
    let text = std::fs::read_to_string(&trace).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "area_index,block_x,block_y,point_count,fallback,iteration,k,l,coefficient,energy_after"
    );
    assert!(lines.count() >= 2, "each area contributes rows: {text}");
}

#[test]
fn trace_is_rejected_for_triangulation_methods() {
    let output = afsmr()
        .args([
            "resample", "--mesh", "m.csv", "--width", "8", "--height", "8", "--method", "lin",
            "--trace", "t.csv",
        ])
        .output()
        .expect("binary must launch");
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(
        stderr.contains("fsmr and afsmr"),
        "explains the restriction: {stderr}"
    );
}

#[test]
fn metrics_reports_identity_scores() {
    let dir = tempfile::tempdir().unwrap();
    let frame = field_frame(32, 24, 0.0, 0.0);
    let path = dir.path().join("frame.pgm");
    write_frame_pgm(&path, &frame).unwrap();

    let output = run_ok(
        afsmr()
            .args(["metrics", "--reference"])
            .arg(&path)
            .arg("--test")
            .arg(&path),
    );
    let stdout = stdout_of(&output);
    assert!(stdout.contains("psnr_db: inf"), "identity PSNR: {stdout}");
    assert!(stdout.contains("ssim: 1"), "identity SSIM: {stdout}");
}

#[test]
fn metrics_compares_yuv_frames_by_index() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("clip.yuv");
    write_sequence(&seq, 32, 24, 3, 5.0, 0.0);

    let output = run_ok(
        afsmr()
            .args(["metrics", "--reference"])
            .arg(&seq)
            .arg("--test")
            .arg(&seq)
            .args(["--width", "32", "--height", "24", "--frame", "2"]),
    );
    let stdout = stdout_of(&output);
    assert!(
        stdout.contains("psnr_db: inf"),
        "same frame index compares equal: {stdout}"
    );

    let output = run_ok(
        afsmr()
            .args(["metrics", "--reference"])
            .arg(&seq)
            .arg("--test")
            .arg(&seq)
            .args([
                "--width",
                "32",
                "--height",
                "24",
                "--frame",
                "1",
                "--test-frame",
                "3",
            ]),
    );
    let stdout = stdout_of(&output);
    let psnr_line = stdout
        .lines()
        .find(|l| l.starts_with("psnr_db:"))
        .expect("psnr line printed");
    let value: f64 = psnr_line
        .trim_start_matches("psnr_db:")
        .trim()
        .parse()
        .unwrap();
    assert!(
        value.is_finite() && value < 40.0,
        "translated frames differ noticeably, got {value} dB"
    );
}
