//! Mesh points as `x,y,value` CSV, one point per line.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::mesh::MeshPointSet;

/// Writes a mesh as CSV with an `x,y,value` header. Floats are printed with
/// shortest round-trip precision, so a read-back reproduces them exactly.
pub fn write_mesh_csv(path: impl AsRef<Path>, mesh: &MeshPointSet) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io("create", path, e))?;
    let mut out = BufWriter::new(file);
    let mut write = |s: String| {
        out.write_all(s.as_bytes())
            .map_err(|e| Error::io("write", path, e))
    };
    write("x,y,value\n".to_owned())?;
    for (x, y, v) in mesh.iter() {
        write(format!("{x},{y},{v}\n"))?;
    }
    out.flush().map_err(|e| Error::io("write", path, e))
}

/// Reads a mesh from CSV. A leading `x,y,value` header line is optional.
pub fn read_mesh_csv(path: impl AsRef<Path>) -> Result<MeshPointSet> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io("read", path, e))?;
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if lineno == 0 && fields.first().map(|f| f.parse::<f64>().is_err()) == Some(true) {
            continue; // header
        }
        if fields.len() != 3 {
            return Err(Error::bad_format(
                path,
                format!(
                    "line {}: expected 3 fields, got {}",
                    lineno + 1,
                    fields.len()
                ),
            ));
        }
        let mut parsed = [0.0f64; 3];
        for (slot, field) in parsed.iter_mut().zip(&fields) {
            *slot = field.parse::<f64>().map_err(|_| {
                Error::bad_format(path, format!("line {}: bad number {field:?}", lineno + 1))
            })?;
        }
        points.push((parsed[0], parsed[1], parsed[2]));
    }
    MeshPointSet::from_points(&points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mesh.csv");
        let mesh = MeshPointSet::from_points(&[
            (0.5, 1.25, 10.0),
            (-3.0, 7.125, 200.5),
            (1.0 / 3.0, 2.0 / 7.0, 0.1),
        ])
        .unwrap();
        write_mesh_csv(&path, &mesh).unwrap();
        assert_eq!(read_mesh_csv(&path).unwrap(), mesh);
    }

    #[test]
    fn header_is_optional() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bare.csv");
        std::fs::write(&path, "1.0,2.0,3.0\n").unwrap();
        let mesh = read_mesh_csv(&path).unwrap();
        assert_eq!(mesh.point(0), (1.0, 2.0, 3.0));
    }

    #[test]
    fn reports_malformed_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "x,y,value\n1.0,2.0\n").unwrap();
        let err = read_mesh_csv(&path).unwrap_err();
        assert!(err.to_string().contains("line 2"), "got: {err}");
    }
}
