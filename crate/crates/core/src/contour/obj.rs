//! Wavefront OBJ text for [`TriMesh`]: `v x y z` lines with six decimals,
//! then `f i j k` lines with 1-based indices.

use std::fmt::Write as _;

use thiserror::Error;

use super::TriMesh;

#[derive(Debug, Error, PartialEq)]
pub enum ObjError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
}

fn coord(v: f64) -> String {
    let s = format!("{v:.6}");
    // -0.000000 and 0.000000 describe the same point
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_owned()
    } else {
        s
    }
}

pub fn write_obj(mesh: &TriMesh) -> String {
    let mut out = String::new();
    for [x, y, z] in &mesh.vertices {
        let _ = writeln!(out, "v {} {} {}", coord(*x), coord(*y), coord(*z));
    }
    for [a, b, c] in &mesh.faces {
        let _ = writeln!(out, "f {} {} {}", a + 1, b + 1, c + 1);
    }
    out
}

/// Parses the subset of OBJ that [`write_obj`] emits. Comments, blank lines,
/// and other record types are skipped; `f` entries may carry `/vt/vn` suffixes.
pub fn read_obj(text: &str) -> Result<TriMesh, ObjError> {
    let mut mesh = TriMesh::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |reason: String| ObjError::Parse { line, reason };
        let mut parts = raw.split_whitespace();
        match parts.next() {
            Some("v") => {
                let vals: Vec<f64> = parts
                    .map(|p| {
                        p.parse::<f64>()
                            .map_err(|_| err(format!("bad coordinate `{p}`")))
                    })
                    .collect::<Result<_, _>>()?;
                if vals.len() < 3 {
                    return Err(err(format!(
                        "vertex needs 3 coordinates, got {}",
                        vals.len()
                    )));
                }
                mesh.vertices.push([vals[0], vals[1], vals[2]]);
            }
            Some("f") => {
                let idx: Vec<usize> = parts
                    .map(|p| {
                        let head = p.split('/').next().unwrap_or(p);
                        match head.parse::<usize>() {
                            Ok(i) if i >= 1 => Ok(i - 1),
                            _ => Err(err(format!("bad face index `{p}`"))),
                        }
                    })
                    .collect::<Result<_, _>>()?;
                if idx.len() != 3 {
                    return Err(err(format!(
                        "only triangles are supported, got {} indices",
                        idx.len()
                    )));
                }
                mesh.faces.push([idx[0], idx[1], idx[2]]);
            }
            _ => {}
        }
    }
    mesh.validate().map_err(ObjError::InvalidMesh)?;
    Ok(mesh)
}
