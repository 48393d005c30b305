//! Binary PGM (P5), 8-bit, for single-frame dumps that image viewers open.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::frame::GrayFrame;

/// Writes a frame as binary PGM with maxval 255. Samples are rounded to the
/// nearest integer and clamped into `[0, 255]`.
pub fn write_frame_pgm(path: impl AsRef<Path>, frame: &GrayFrame) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io("create", path, e))?;
    let mut out = BufWriter::new(file);
    let header = format!("P5\n{} {}\n255\n", frame.width(), frame.height());
    out.write_all(header.as_bytes())
        .and_then(|()| out.write_all(&frame.to_bytes()))
        .and_then(|()| out.flush())
        .map_err(|e| Error::io("write", path, e))
}

/// Reads a binary PGM file with maxval at most 255.
pub fn read_frame_pgm(path: impl AsRef<Path>) -> Result<GrayFrame> {
    let path = path.as_ref();
    let mut bytes = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io("open", path, e))?;

    let mut pos = 0usize;
    let mut next_token = || -> Result<String> {
        // Skip whitespace and '#' comment lines between header tokens.
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
                continue;
            }
            break;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::bad_format(path, "unexpected end of header"));
        }
        Ok(String::from_utf8_lossy(&bytes[start..pos]).into_owned())
    };

    let magic = next_token()?;
    if magic != "P5" {
        return Err(Error::bad_format(path, format!("expected P5, got {magic}")));
    }
    let parse = |tok: String, what: &str| -> Result<usize> {
        tok.parse::<usize>()
            .map_err(|_| Error::bad_format(path, format!("bad {what}: {tok}")))
    };
    let width = parse(next_token()?, "width")?;
    let height = parse(next_token()?, "height")?;
    let maxval = parse(next_token()?, "maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(Error::bad_format(
            path,
            format!("unsupported maxval {maxval}"),
        ));
    }
    // Exactly one whitespace byte separates the header from the raster.
    pos += 1;
    let expected = width * height;
    if bytes.len() < pos || bytes.len() - pos != expected {
        return Err(Error::bad_format(
            path,
            format!(
                "raster size mismatch: expected {expected} bytes, found {}",
                bytes.len().saturating_sub(pos)
            ),
        ));
    }
    GrayFrame::from_bytes(width, height, &bytes[pos..])
}
