//! Motion-compensated frame interpolation built on frequency-selective
//! mesh-to-grid resampling.
//!
//! The pipeline: two frames and a displacement field between them produce a
//! mesh of scattered, continuously positioned samples
//! ([`motion::compensate_forward`]); a resampler turns that mesh back into a
//! regular pixel grid at the intermediate time instant. The headline
//! resampler ([`resampler::resample_frame`]) fits a sparse weighted cosine
//! model per reconstruction area; classic scattered-data interpolators
//! ([`baselines`]) and full-reference quality metrics ([`metrics`]) round out
//! an evaluation toolkit.
//!
//! Coordinate convention used everywhere: `m`/`x` run horizontally (columns),
//! `n`/`y` vertically (rows), origin at the top-left; buffers are row-major.

pub mod baselines;
pub mod error;
pub mod flow;
pub mod frame;
pub mod io;
pub mod mesh;
pub mod metrics;
pub mod motion;
pub mod pattern;
pub mod resampler;
pub mod spatial;

pub use error::{Error, Result};
pub use flow::MotionField;
pub use frame::GrayFrame;
pub use mesh::MeshPointSet;
pub use resampler::{resample_frame, KeyPointPlacement, ResamplerConfig, Variant};
