//! Limb contour capture with elliptic rings.
//!
//! The user pinches across a limb segment twice (horizontally, then
//! vertically) and moves to the next station. Each station becomes an
//! [`EllipticRing`]; consecutive rings are lofted into a triangle band and the
//! result is exported as OBJ.

mod mesh;
mod obj;
mod scan;

pub use mesh::{band_faces, build_cast_mesh, split_halves, TriMesh};
pub use obj::{read_obj, write_obj, ObjError};
pub use scan::{scan_step, ScanEvent, ScanPhase, ScanSession, DEFAULT_RING_SPACING_MM};

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calib::CalibError;

pub const DEFAULT_VERTEX_COUNT: usize = 64;

#[derive(Debug, Error, PartialEq)]
pub enum ContourError {
    #[error("protocol violation: {0}")]
    ProtocolViolation(String),
    #[error("unknown command token `{0}`")]
    UnknownToken(String),
    #[error("a ring needs at least 3 vertices, got {0}")]
    InvalidRingSize(usize),
    #[error("need at least 2 rings to build a mesh, got {count}{suffix}", count = .0, suffix = if *.0 == 0 { " (no rings)" } else { "" })]
    TooFewRings(usize),
    #[error("scan session is not finished (say `done` first)")]
    ScanNotFinished,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error(transparent)]
    Calibration(#[from] CalibError),
}

/// Planar elliptic cross-section at `axial_pos` along the limb axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticRing {
    pub semi_major: f64,
    pub semi_minor: f64,
    pub axial_pos: f64,
    pub vertex_count: usize,
}

impl EllipticRing {
    pub fn new(
        semi_major: f64,
        semi_minor: f64,
        axial_pos: f64,
        vertex_count: usize,
    ) -> Result<Self, ContourError> {
        if vertex_count < 3 {
            return Err(ContourError::InvalidRingSize(vertex_count));
        }
        if !(semi_minor > 0.0 && semi_major >= semi_minor && semi_major.is_finite()) {
            return Err(ContourError::InvalidRing(format!(
                "semi-axes must satisfy semi_major >= semi_minor > 0, got {semi_major} / {semi_minor}"
            )));
        }
        if !axial_pos.is_finite() {
            return Err(ContourError::InvalidRing(
                "axial position must be finite".into(),
            ));
        }
        Ok(Self {
            semi_major,
            semi_minor,
            axial_pos,
            vertex_count,
        })
    }

    /// Vertex `i` sits at angle `2*pi*i/n`, starting on the +x (major) axis.
    pub fn vertices(&self) -> Vec<[f64; 3]> {
        ring_vertices(self)
    }
}

pub fn ring_vertices(ring: &EllipticRing) -> Vec<[f64; 3]> {
    let n = ring.vertex_count;
    (0..n)
        .map(|i| {
            let theta = TAU * i as f64 / n as f64;
            [
                ring.semi_major * theta.cos(),
                ring.semi_minor * theta.sin(),
                ring.axial_pos,
            ]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn unit_circle_quarter_turns() {
        let ring = EllipticRing::new(1.0, 1.0, 0.0, 4).unwrap();
        let expected = [
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, -1.0, 0.0],
        ];
        for (v, e) in ring.vertices().iter().zip(expected) {
            for k in 0..3 {
                assert_abs_diff_eq!(v[k], e[k], epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn points_lie_on_ellipse() {
        let ring = EllipticRing::new(2.0, 1.0, 0.0, 3).unwrap();
        for [x, y, _] in ring.vertices() {
            assert_abs_diff_eq!((x / 2.0).powi(2) + y * y, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn forearm_ring_spacing() {
        let ring = EllipticRing::new(40.0, 30.0, 75.0, 64).unwrap();
        let vs = ring.vertices();
        assert_eq!(vs.len(), 64);
        let step = TAU / 64.0;
        for (i, v) in vs.iter().enumerate() {
            assert_eq!(v[2], 75.0);
            let angle = (v[1] / 30.0).atan2(v[0] / 40.0).rem_euclid(TAU);
            assert_abs_diff_eq!(angle, i as f64 * step, epsilon = 1e-12);
        }
    }

    #[test]
    fn ring_invariants() {
        assert_eq!(
            EllipticRing::new(1.0, 1.0, 0.0, 2).unwrap_err(),
            ContourError::InvalidRingSize(2)
        );
        assert!(EllipticRing::new(1.0, 2.0, 0.0, 8).is_err());
        assert!(EllipticRing::new(1.0, 0.0, 0.0, 8).is_err());
    }
}
