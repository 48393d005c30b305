//! Declarative run configuration: TOML file plus command-line overrides.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use afsmr_core::motion::{BlockMatchConfig, SyntheticFlowSpec};
use afsmr_core::resampler::{KeyPointPlacement, ResamplerConfig};

/// Reconstruction methods selectable for a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Barycentric interpolation over a Delaunay triangulation.
    Lin,
    /// C1 cubic spline over a Delaunay triangulation.
    Cub,
    /// Gaussian kernel regression.
    Nwe,
    /// Frequency-selective resampling with key-point augmentation.
    Fsmr,
    /// Frequency-selective resampling from mesh points alone.
    Afsmr,
}

impl Method {
    /// Upper-case label used in CSV rows and summaries.
    pub fn label(self) -> &'static str {
        match self {
            Method::Lin => "LIN",
            Method::Cub => "CUB",
            Method::Nwe => "NWE",
            Method::Fsmr => "FSMR",
            Method::Afsmr => "AFSMR",
        }
    }
}

/// Where the displacement field for each frame pair comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum FlowSource {
    /// Read `flow_<c-1>_<c+1>.flo` from a directory.
    FloDirectory { directory: PathBuf },
    /// Estimate block-matching flow between the two source frames.
    BlockMatching {
        #[serde(default)]
        config: BlockMatchConfig,
    },
    /// Evaluate an analytic flow.
    Synthetic { spec: SyntheticFlowSpec },
}

impl Default for FlowSource {
    fn default() -> Self {
        FlowSource::FloDirectory {
            directory: PathBuf::from("flows"),
        }
    }
}

/// Full description of an evaluation run.
///
/// Frame indices are 1-based throughout: frame 1 is the first frame of the
/// sequence file. Reconstruction targets are `2, 2+stride, ...` up to
/// `first_n`, each rebuilt from its two neighbors, so the sequence file
/// must hold one frame past the last target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Raw 8-bit 4:2:0 YUV input; only the luma plane is used.
    pub sequence: PathBuf,
    /// Name recorded in the CSV `sequence` column; defaults to the file stem.
    pub sequence_name: Option<String>,
    pub width: usize,
    pub height: usize,
    /// Protocol horizon: targets are drawn from `[2, first_n]`.
    pub first_n: usize,
    /// Distance between consecutive reconstruction targets.
    pub stride: usize,
    pub methods: Vec<Method>,
    pub output_dir: PathBuf,
    /// Also write every reconstruction as a PGM file.
    pub write_frames: bool,
    pub flow: FlowSource,
    pub resampler: ResamplerConfig,
    /// Gaussian bandwidth for the NWE method, in pixels.
    pub nwe_bandwidth: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            sequence: PathBuf::new(),
            sequence_name: None,
            width: 0,
            height: 0,
            first_n: 100,
            stride: 2,
            methods: vec![
                Method::Lin,
                Method::Cub,
                Method::Nwe,
                Method::Fsmr,
                Method::Afsmr,
            ],
            output_dir: PathBuf::from("fruc_out"),
            write_frames: false,
            flow: FlowSource::default(),
            resampler: ResamplerConfig::default(),
            nwe_bandwidth: 1.0,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: RunConfig =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sequence.as_os_str().is_empty() {
            bail!("no input sequence given (set `sequence` in the config or pass --sequence)");
        }
        if self.width == 0 || self.height == 0 {
            bail!(
                "frame dimensions must be positive, got {}x{}",
                self.width,
                self.height
            );
        }
        if self.first_n < 3 {
            bail!("first_n must be at least 3, got {}", self.first_n);
        }
        if self.stride < 2 {
            bail!("stride must be at least 2, got {}", self.stride);
        }
        if self.methods.is_empty() {
            bail!("at least one method must be selected");
        }
        let mut seen = Vec::new();
        for m in &self.methods {
            if seen.contains(m) {
                bail!("method {} listed more than once", m.label());
            }
            seen.push(*m);
        }
        if !self.nwe_bandwidth.is_finite() || self.nwe_bandwidth <= 0.0 {
            bail!(
                "nwe_bandwidth must be positive and finite, got {}",
                self.nwe_bandwidth
            );
        }
        self.resampler
            .validate()
            .context("resampler configuration")?;
        Ok(())
    }

    /// The 1-based frame indices the protocol reconstructs.
    pub fn target_frames(&self) -> Vec<usize> {
        (2..=self.first_n).step_by(self.stride).collect()
    }

    /// Name recorded in CSV rows.
    pub fn sequence_label(&self) -> String {
        self.sequence_name.clone().unwrap_or_else(|| {
            self.sequence
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "sequence".to_owned())
        })
    }
}

/// Resampler parameter overrides shared by the protocol and resample
/// commands. Unset flags keep the configured value.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct ResamplerFlags {
    /// Central block edge length in pixels.
    #[arg(long)]
    pub block_size: Option<usize>,
    /// Support border width in pixels.
    #[arg(long)]
    pub border: Option<usize>,
    /// Spatial weight decay, strictly between 0 and 1.
    #[arg(long)]
    pub rho: Option<f64>,
    /// Spectral selection weight decay, strictly between 0 and 1.
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Iteration budget per area.
    #[arg(long)]
    pub max_iterations: Option<usize>,
    /// Early-stop threshold on weighted residual energy; zero disables it.
    #[arg(long)]
    pub residual_energy_stop: Option<f64>,
    /// Key point coverage for FSMR.
    #[arg(long, value_enum)]
    pub key_points: Option<KeyPointsArg>,
}

/// Command-line face of [`KeyPointPlacement`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KeyPointsArg {
    FullArea,
    CentralBlock,
}

impl From<KeyPointsArg> for KeyPointPlacement {
    fn from(arg: KeyPointsArg) -> Self {
        match arg {
            KeyPointsArg::FullArea => KeyPointPlacement::FullArea,
            KeyPointsArg::CentralBlock => KeyPointPlacement::CentralBlock,
        }
    }
}

impl ResamplerFlags {
    pub fn apply(&self, cfg: &mut ResamplerConfig) {
        if let Some(v) = self.block_size {
            cfg.block_size = v;
        }
        if let Some(v) = self.border {
            cfg.border = v;
        }
        if let Some(v) = self.rho {
            cfg.rho = v;
        }
        if let Some(v) = self.sigma {
            cfg.sigma = v;
        }
        if let Some(v) = self.max_iterations {
            cfg.max_iterations = v;
        }
        if let Some(v) = self.residual_energy_stop {
            cfg.residual_energy_stop = v;
        }
        if let Some(v) = self.key_points {
            cfg.key_points = v.into();
        }
    }
}

/// Arguments of the `fruc` and `timing` commands: an optional TOML
/// configuration plus flag overrides for its fields.
#[derive(Debug, clap::Args)]
pub struct ProtocolArgs {
    /// TOML run configuration; the flags below override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Raw 8-bit 4:2:0 YUV input sequence.
    #[arg(long)]
    pub sequence: Option<PathBuf>,
    /// Name recorded in the CSV sequence column.
    #[arg(long)]
    pub sequence_name: Option<String>,
    #[arg(long)]
    pub width: Option<usize>,
    #[arg(long)]
    pub height: Option<usize>,
    /// Protocol horizon: targets are drawn from [2, first_n].
    #[arg(long)]
    pub first_n: Option<usize>,
    /// Distance between consecutive reconstruction targets.
    #[arg(long)]
    pub stride: Option<usize>,
    /// Methods to run, comma separated.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub methods: Vec<Method>,
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
    /// Also write every reconstruction as a PGM file.
    #[arg(long)]
    pub write_frames: bool,
    /// Directory holding flow_<a>_<b>.flo files; replaces the configured
    /// flow source.
    #[arg(long, conflicts_with = "block_matching")]
    pub flow_dir: Option<PathBuf>,
    /// Estimate flows by block matching; replaces the configured flow
    /// source.
    #[arg(long)]
    pub block_matching: bool,
    /// Gaussian bandwidth for the NWE method, in pixels.
    #[arg(long)]
    pub nwe_bandwidth: Option<f64>,
    #[command(flatten)]
    pub resampler: ResamplerFlags,
}

impl ProtocolArgs {
    /// Resolves the final run configuration: file first, then overrides,
    /// then validation.
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(v) = &self.sequence {
            cfg.sequence = v.clone();
        }
        if self.sequence_name.is_some() {
            cfg.sequence_name = self.sequence_name.clone();
        }
        if let Some(v) = self.width {
            cfg.width = v;
        }
        if let Some(v) = self.height {
            cfg.height = v;
        }
        if let Some(v) = self.first_n {
            cfg.first_n = v;
        }
        if let Some(v) = self.stride {
            cfg.stride = v;
        }
        if !self.methods.is_empty() {
            cfg.methods = self.methods.clone();
        }
        if let Some(v) = &self.output_dir {
            cfg.output_dir = v.clone();
        }
        if self.write_frames {
            cfg.write_frames = true;
        }
        if let Some(dir) = &self.flow_dir {
            cfg.flow = FlowSource::FloDirectory {
                directory: dir.clone(),
            };
        } else if self.block_matching {
            cfg.flow = FlowSource::BlockMatching {
                config: afsmr_core::motion::BlockMatchConfig::default(),
            };
        }
        if let Some(v) = self.nwe_bandwidth {
            cfg.nwe_bandwidth = v;
        }
        self.resampler.apply(&mut cfg.resampler);
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Effective settings echoed into the output directory, including the
/// parallelism the measurements ran under.
#[derive(Debug, Serialize)]
pub struct EffectiveConfig<'a> {
    pub threads: usize,
    #[serde(flatten)]
    pub run: &'a RunConfig,
}

/// Writes the effective configuration next to the run outputs.
pub fn echo_config(cfg: &RunConfig, output_dir: &Path) -> Result<()> {
    let effective = EffectiveConfig {
        threads: rayon::current_num_threads(),
        run: cfg,
    };
    let text = toml::to_string_pretty(&effective).context("serializing effective config")?;
    let path = output_dir.join("effective_config.toml");
    std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
