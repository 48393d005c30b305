//! Headerless planar YUV 4:2:0 (I420), 8 bits per sample.
//!
//! Only the luma plane is ever interpolated or measured; chroma is carried
//! so files stay playable in standard tools.

use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::frame::GrayFrame;

fn frame_byte_size(width: usize, height: usize) -> usize {
    width * height * 3 / 2
}

fn check_dimensions(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidInput(format!(
            "frame dimensions must be positive, got {width}x{height}"
        )));
    }
    if width % 2 != 0 || height % 2 != 0 {
        return Err(Error::OddDimensions { width, height });
    }
    Ok(())
}

/// Reads the luma plane of frame `frame_index` (0-based) from a raw I420
/// file. The frame must be complete in the file; a trailing partial frame is
/// treated as absent.
pub fn read_yuv_frame(
    path: impl AsRef<Path>,
    frame_index: usize,
    width: usize,
    height: usize,
) -> Result<GrayFrame> {
    let path = path.as_ref();
    check_dimensions(width, height)?;
    let mut file = File::open(path).map_err(|e| Error::io("open", path, e))?;
    let file_len = file
        .metadata()
        .map_err(|e| Error::io("stat", path, e))?
        .len();
    let frame_size = frame_byte_size(width, height) as u64;
    let available = (file_len / frame_size) as usize;
    if frame_index >= available {
        return Err(Error::FrameOutOfRange {
            path: path.to_path_buf(),
            frame_index,
            available,
        });
    }
    let offset = frame_index as u64 * frame_size;
    file.seek(SeekFrom::Start(offset))
        .map_err(|e| Error::io("seek", path, e))?;
    let mut luma = vec![0u8; width * height];
    file.read_exact(&mut luma)
        .map_err(|e| Error::io("read", path, e))?;
    GrayFrame::from_bytes(width, height, &luma)
}

/// Number of complete frames in a raw I420 file.
pub fn count_yuv_frames(path: impl AsRef<Path>, width: usize, height: usize) -> Result<usize> {
    let path = path.as_ref();
    check_dimensions(width, height)?;
    let meta = std::fs::metadata(path).map_err(|e| Error::io("stat", path, e))?;
    Ok((meta.len() / frame_byte_size(width, height) as u64) as usize)
}

/// Appends one frame to a raw I420 file (created when missing). The luma
/// plane is the quantized frame; both chroma planes are written as neutral
/// gray (128).
pub fn append_yuv_frame(path: impl AsRef<Path>, frame: &GrayFrame) -> Result<()> {
    let path = path.as_ref();
    check_dimensions(frame.width(), frame.height())?;
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::io("open", path, e))?;
    let luma = frame.to_bytes();
    let chroma = vec![128u8; frame.width() * frame.height() / 2];
    file.write_all(&luma)
        .and_then(|()| file.write_all(&chroma))
        .map_err(|e| Error::io("write", path, e))
}
