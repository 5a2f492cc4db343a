use std::f64::consts::{PI, TAU};

use super::{ring_vertices, ContourError, EllipticRing, ScanPhase, ScanSession};

/// Indexed triangle mesh in millimetres. Face indices are 0-based.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TriMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

impl TriMesh {
    /// Builds a mesh after checking that every face references three distinct,
    /// existing vertices.
    pub fn new(vertices: Vec<[f64; 3]>, faces: Vec<[usize; 3]>) -> Result<Self, String> {
        let mesh = Self { vertices, faces };
        mesh.validate()?;
        Ok(mesh)
    }

    pub fn validate(&self) -> Result<(), String> {
        let n = self.vertices.len();
        for (i, &[a, b, c]) in self.faces.iter().enumerate() {
            if a >= n || b >= n || c >= n {
                return Err(format!("face {i} references a vertex past {n}"));
            }
            if a == b || b == c || a == c {
                return Err(format!("face {i} is degenerate: [{a}, {b}, {c}]"));
            }
        }
        if self.vertices.iter().flatten().any(|v| !v.is_finite()) {
            return Err("non-finite vertex coordinate".into());
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.faces.is_empty()
    }
}

/// Triangles joining ring 1 (indices `0..n`) to ring 2 (`n..2n`).
///
/// For each `i` in `0..n-1` the quad between vertices `i` and `i+1` is split as
/// `[v2(i), v1(i), v1(i+1)]` and `[v1(i+1), v2(i+1), v2(i)]`. With
/// `close_seam` the quad between vertex `n-1` and vertex `0` is added last.
/// Winding gives outward normals when ring 2 sits further along +z.
pub fn band_faces(n: usize, close_seam: bool) -> Result<Vec<[usize; 3]>, ContourError> {
    if n < 3 {
        return Err(ContourError::InvalidRingSize(n));
    }
    let quad = |i: usize, j: usize| [[n + i, i, j], [j, n + j, n + i]];
    let mut faces: Vec<[usize; 3]> = (0..n - 1).flat_map(|i| quad(i, i + 1)).collect();
    if close_seam {
        faces.extend(quad(n - 1, 0));
    }
    Ok(faces)
}

/// Lofts every consecutive ring pair of a finished session.
///
/// All rings are resampled with `vertex_count` vertices sharing the same
/// angular phase.
pub fn build_cast_mesh(
    session: &ScanSession,
    vertex_count: usize,
    close_seam: bool,
) -> Result<TriMesh, ContourError> {
    if session.rings.len() < 2 {
        return Err(ContourError::TooFewRings(session.rings.len()));
    }
    if session.phase != ScanPhase::Done {
        return Err(ContourError::ScanNotFinished);
    }
    loft_rings(&session.rings, vertex_count, close_seam)
}

/// Lofting without the session bookkeeping.
pub(crate) fn loft_rings(
    rings: &[EllipticRing],
    vertex_count: usize,
    close_seam: bool,
) -> Result<TriMesh, ContourError> {
    if rings.len() < 2 {
        return Err(ContourError::TooFewRings(rings.len()));
    }
    let band = band_faces(vertex_count, close_seam)?;
    let mut vertices = Vec::with_capacity(rings.len() * vertex_count);
    for ring in rings {
        let ring = EllipticRing::new(
            ring.semi_major,
            ring.semi_minor,
            ring.axial_pos,
            vertex_count,
        )?;
        vertices.extend(ring_vertices(&ring));
    }
    let faces = (0..rings.len() - 1)
        .flat_map(|k| {
            let offset = k * vertex_count;
            band.iter().map(move |f| f.map(|i| i + offset))
        })
        .collect();
    Ok(TriMesh { vertices, faces })
}

/// Splits a lofted shell into the two halves a printer can handle.
///
/// Faces whose centroid angle `atan2(y, x)` falls in `[0, pi)` go to the first
/// half, the rest to the second. Each half keeps only the vertices it uses,
/// renumbered in original order.
pub fn split_halves(mesh: &TriMesh) -> (TriMesh, TriMesh) {
    let (first, second): (Vec<[usize; 3]>, Vec<[usize; 3]>) = mesh.faces.iter().partition(|face| {
        let [cx, cy] = face.iter().fold([0.0, 0.0], |acc, &i| {
            [acc[0] + mesh.vertices[i][0], acc[1] + mesh.vertices[i][1]]
        });
        cy.atan2(cx).rem_euclid(TAU) < PI
    });
    (
        compact(&mesh.vertices, first),
        compact(&mesh.vertices, second),
    )
}

fn compact(vertices: &[[f64; 3]], faces: Vec<[usize; 3]>) -> TriMesh {
    let mut remap = vec![usize::MAX; vertices.len()];
    for &i in faces.iter().flatten() {
        remap[i] = 0;
    }
    let mut kept = Vec::new();
    for (i, slot) in remap.iter_mut().enumerate() {
        if *slot == 0 {
            *slot = kept.len();
            kept.push(vertices[i]);
        }
    }
    let faces = faces.into_iter().map(|f| f.map(|i| remap[i])).collect();
    TriMesh {
        vertices: kept,
        faces,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calib::LinearMap;
    use crate::contour::ScanEvent;

    #[test]
    fn triangle_band_matches_unrolled_loop() {
        // n = 3: ring 1 is 0,1,2 and ring 2 is 3,4,5.
        let faces = band_faces(3, false).unwrap();
        assert_eq!(faces, vec![[3, 0, 1], [1, 4, 3], [4, 1, 2], [2, 5, 4]]);
        let closed = band_faces(3, true).unwrap();
        assert_eq!(closed.len(), 6);
        assert_eq!(&closed[4..], &[[5, 2, 0], [0, 3, 5]]);
    }

    #[test]
    fn band_rejects_small_rings() {
        assert_eq!(
            band_faces(2, true).unwrap_err(),
            ContourError::InvalidRingSize(2)
        );
    }

    fn finished_session(rings: usize) -> ScanSession {
        let mut events = Vec::new();
        for _ in 0..rings {
            events.extend([
                ScanEvent::pinch(0.8),
                ScanEvent::command("vertical"),
                ScanEvent::pinch(0.6),
                ScanEvent::command("next"),
            ]);
        }
        events.push(ScanEvent::command("done"));
        ScanSession::new(LinearMap::new(100.0, 0.0).unwrap())
            .replay(&events)
            .unwrap()
    }

    #[test]
    fn cast_mesh_sizes() {
        let m = build_cast_mesh(&finished_session(2), 4, false).unwrap();
        assert_eq!((m.vertices.len(), m.faces.len()), (8, 6));
        let m = build_cast_mesh(&finished_session(3), 64, true).unwrap();
        assert_eq!((m.vertices.len(), m.faces.len()), (192, 256));
        m.validate().unwrap();
    }

    #[test]
    fn cast_mesh_needs_two_finished_rings() {
        assert_eq!(
            build_cast_mesh(&finished_session(1), 64, true).unwrap_err(),
            ContourError::TooFewRings(1)
        );
        let mut open = finished_session(2);
        open.phase = ScanPhase::AwaitHorizontal;
        assert_eq!(
            build_cast_mesh(&open, 64, true).unwrap_err(),
            ContourError::ScanNotFinished
        );
    }

    #[test]
    fn symmetric_tube_splits_evenly() {
        let ring = |z| EllipticRing::new(10.0, 10.0, z, 16).unwrap();
        let mesh = loft_rings(&[ring(0.0), ring(75.0)], 16, true).unwrap();
        let (a, b) = split_halves(&mesh);
        assert_eq!(a.faces.len(), 16);
        assert_eq!(b.faces.len(), 16);
        assert_eq!(a.vertices.len(), 18);
        a.validate().unwrap();
        b.validate().unwrap();
    }

    #[test]
    fn split_of_empty_mesh() {
        let (a, b) = split_halves(&TriMesh::default());
        assert!(a.is_empty() && b.is_empty());
    }

    #[test]
    fn validate_catches_bad_faces() {
        let v = vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        assert!(TriMesh::new(v.clone(), vec![[0, 1, 3]]).is_err());
        assert!(TriMesh::new(v.clone(), vec![[0, 1, 1]]).is_err());
        assert!(TriMesh::new(v, vec![[0, 1, 2]]).is_ok());
    }
}
