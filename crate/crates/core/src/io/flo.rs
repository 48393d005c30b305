//! Middlebury `.flo` displacement files.
//!
//! Layout, all little-endian: a 4-byte magic (the float 202021.25, which is
//! the byte string "PIEH"), `i32` width, `i32` height, then `width * height`
//! interleaved `(u, v)` pairs of `f32`, row-major.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::flow::MotionField;

/// Magic constant opening every `.flo` file.
pub const FLO_MAGIC: f32 = 202021.25;

/// Components whose magnitude exceeds this mark "unknown flow" pixels.
const SENTINEL_THRESHOLD: f32 = 1e9;

/// What to do with unknown-flow sentinel components (magnitude above 1e9 or
/// non-finite) encountered while reading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SentinelPolicy {
    /// Fail the read. The default: silent zeros can mask a broken estimator.
    #[default]
    Reject,
    /// Replace the whole displacement vector of an affected pixel by (0, 0).
    MapToZero,
}

/// Reads a `.flo` file, rejecting unknown-flow sentinels.
pub fn read_flo(path: impl AsRef<Path>) -> Result<MotionField> {
    read_flo_with(path, SentinelPolicy::Reject)
}

/// Reads a `.flo` file with an explicit sentinel policy.
pub fn read_flo_with(path: impl AsRef<Path>, policy: SentinelPolicy) -> Result<MotionField> {
    let path = path.as_ref();
    let mut file = File::open(path).map_err(|e| Error::io("open", path, e))?;
    let mut bytes = Vec::new();
    file.read_to_end(&mut bytes)
        .map_err(|e| Error::io("read", path, e))?;

    if bytes.len() < 12 {
        return Err(Error::bad_format(
            path,
            "file shorter than the 12-byte header",
        ));
    }
    let magic = f32::from_le_bytes(bytes[0..4].try_into().unwrap());
    if magic != FLO_MAGIC {
        return Err(Error::bad_format(
            path,
            format!("bad magic {magic:?}, expected {FLO_MAGIC:?}"),
        ));
    }
    let width = i32::from_le_bytes(bytes[4..8].try_into().unwrap());
    let height = i32::from_le_bytes(bytes[8..12].try_into().unwrap());
    if width <= 0 || height <= 0 {
        return Err(Error::bad_format(
            path,
            format!("non-positive dimensions {width}x{height}"),
        ));
    }
    let (width, height) = (width as usize, height as usize);
    let expected = 12 + width * height * 8;
    if bytes.len() != expected {
        return Err(Error::bad_format(
            path,
            format!(
                "payload size mismatch: {width}x{height} needs {expected} bytes, file has {}",
                bytes.len()
            ),
        ));
    }

    let mut dm = Vec::with_capacity(width * height);
    let mut dn = Vec::with_capacity(width * height);
    for i in 0..width * height {
        let off = 12 + i * 8;
        let u = f32::from_le_bytes(bytes[off..off + 4].try_into().unwrap());
        let v = f32::from_le_bytes(bytes[off + 4..off + 8].try_into().unwrap());
        let unknown = |c: f32| !c.is_finite() || c.abs() > SENTINEL_THRESHOLD;
        if unknown(u) || unknown(v) {
            match policy {
                SentinelPolicy::Reject => {
                    return Err(Error::bad_format(
                        path,
                        format!(
                            "unknown-flow sentinel ({u}, {v}) at pixel ({}, {})",
                            i % width,
                            i / width
                        ),
                    ));
                }
                SentinelPolicy::MapToZero => {
                    dm.push(0.0);
                    dn.push(0.0);
                    continue;
                }
            }
        }
        dm.push(f64::from(u));
        dn.push(f64::from(v));
    }
    MotionField::new(width, height, dm, dn)
}

/// Writes a motion field as a `.flo` file. Components are stored as `f32`.
pub fn write_flo(path: impl AsRef<Path>, field: &MotionField) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io("create", path, e))?;
    let mut out = BufWriter::new(file);
    let mut write = |buf: &[u8]| out.write_all(buf).map_err(|e| Error::io("write", path, e));

    write(&FLO_MAGIC.to_le_bytes())?;
    write(&(field.width() as i32).to_le_bytes())?;
    write(&(field.height() as i32).to_le_bytes())?;
    for i in 0..field.width() * field.height() {
        write(&(field.dm()[i] as f32).to_le_bytes())?;
        write(&(field.dn()[i] as f32).to_le_bytes())?;
    }
    out.flush().map_err(|e| Error::io("write", path, e))
}
