//! File formats: planar YUV 4:2:0 sequences, Middlebury `.flo` displacement
//! fields, binary PGM frames, and a plain CSV form for scattered mesh points.

mod flo;
mod mesh_csv;
mod pgm;
mod yuv;

pub use flo::{read_flo, read_flo_with, write_flo, SentinelPolicy, FLO_MAGIC};
pub use mesh_csv::{read_mesh_csv, write_mesh_csv};
pub use pgm::{read_frame_pgm, write_frame_pgm};
pub use yuv::{append_yuv_frame, count_yuv_frames, read_yuv_frame};
