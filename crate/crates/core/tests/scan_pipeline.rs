//! Scripted scans replayed through the state machine, and frame sync.

use haptic_core::calib::LinearMap;
use haptic_core::contour::{build_cast_mesh, read_obj, write_obj, ScanEvent, ScanSession};
use haptic_core::devicesim::{
    scripted_scan_session, sync_frames, ArmProfile, GloveState, RigidTransform, Station,
};
use nalgebra::Vector3;
use proptest::prelude::*;

fn arm() -> ArmProfile {
    ArmProfile::new(vec![
        Station {
            z_mm: 0.0,
            width_mm: 62.0,
            height_mm: 48.0,
        },
        Station {
            z_mm: 75.0,
            width_mm: 70.3,
            height_mm: 55.5,
        },
        Station {
            z_mm: 150.0,
            width_mm: 81.7,
            height_mm: 60.2,
        },
    ])
    .unwrap()
}

#[test]
fn three_station_scan_reconstructs_semi_axes() {
    let map = LinearMap::default();
    let events = scripted_scan_session(&arm(), &map).unwrap();
    let session = ScanSession::new(map).replay(&events).unwrap();
    assert_eq!(session.rings.len(), 3);
    for (ring, st) in session.rings.iter().zip(&arm().stations) {
        assert!(
            (2.0 * ring.semi_major - st.width_mm).abs() <= map.quantum(),
            "{ring:?} {st:?}"
        );
        assert!(
            (2.0 * ring.semi_minor - st.height_mm).abs() <= map.quantum(),
            "{ring:?} {st:?}"
        );
        assert_eq!(ring.axial_pos, st.z_mm);
    }
    let mesh = build_cast_mesh(&session, 64, true).unwrap();
    assert_eq!((mesh.vertices.len(), mesh.faces.len()), (192, 256));
    let obj = write_obj(&mesh);
    assert_eq!(read_obj(&obj).unwrap().faces.len(), 256);
}

#[test]
fn script_serializes_as_tagged_json() {
    let events = scripted_scan_session(&arm(), &LinearMap::default()).unwrap();
    let json = serde_json::to_string(&events).unwrap();
    let back: Vec<ScanEvent> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, events);
    assert!(json.contains(r#""type":"command""#));
}

fn pose() -> impl Strategy<Value = RigidTransform> {
    (
        (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0),
        -3.0f64..3.0,
        (-500.0f64..500.0, -500.0f64..500.0, -500.0f64..500.0),
    )
        .prop_filter("axis must be non-zero", |((x, y, z), _, _)| {
            x * x + y * y + z * z > 1e-3
        })
        .prop_map(|((x, y, z), angle, (tx, ty, tz))| {
            RigidTransform::from_axis_angle(Vector3::new(x, y, z), angle, Vector3::new(tx, ty, tz))
        })
}

proptest! {
    #[test]
    fn sync_maps_tracker_pose_onto_world_pose(tracker in pose(), world in pose()) {
        let t = sync_frames(&tracker, &world).unwrap();
        let (dr, dt) = t.compose(&tracker).max_abs_diff(&world);
        prop_assert!(dr < 1e-9 && dt < 1e-9);
        let glove = GloveState::new([0.3; 5], tracker).unwrap();
        let (dr, dt) = glove.palm_in_world(&t).max_abs_diff(&world);
        prop_assert!(dr < 1e-9 && dt < 1e-9);
    }

    #[test]
    fn scripted_scans_stay_within_one_quantum(
        widths in prop::collection::vec((40.0f64..85.0, 0.5f64..1.0), 2..6)
    ) {
        let map = LinearMap::default();
        let stations: Vec<Station> = widths.iter().enumerate()
            .map(|(i, &(w, ratio))| Station { z_mm: i as f64 * 75.0, width_mm: w, height_mm: (w * ratio).max(10.0) })
            .collect();
        let profile = ArmProfile::new(stations).unwrap();
        let events = scripted_scan_session(&profile, &map).unwrap();
        let session = ScanSession::new(map).replay(&events).unwrap();
        for (ring, st) in session.rings.iter().zip(&profile.stations) {
            prop_assert!((2.0 * ring.semi_major - st.width_mm).abs() <= map.quantum() + 1e-9);
            prop_assert!((2.0 * ring.semi_minor - st.height_mm).abs() <= map.quantum() + 1e-9);
        }
    }
}
