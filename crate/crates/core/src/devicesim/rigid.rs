use nalgebra::{Matrix3, Vector3};
use thiserror::Error;

/// Largest entry of `R^T R - I` (and `|det R - 1|`) accepted for a rotation.
pub const ORTHONORMAL_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum RigidError {
    #[error("invalid rotation: {0}")]
    InvalidRotation(String),
    #[error("digit {digit} reading {value} is outside [0, 1]")]
    InvalidReading { digit: usize, value: f64 },
}

/// `p -> rotation * p + translation`, translation in mm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidTransform {
    rotation: Matrix3<f64>,
    translation: Vector3<f64>,
}

impl RigidTransform {
    /// Rejects rotations that are not orthonormal with determinant +1. Inputs
    /// are never re-orthonormalized.
    pub fn new(rotation: Matrix3<f64>, translation: Vector3<f64>) -> Result<Self, RigidError> {
        let err = (rotation.transpose() * rotation - Matrix3::identity()).amax();
        if err.is_nan() || err > ORTHONORMAL_TOL {
            return Err(RigidError::InvalidRotation(format!(
                "R^T R deviates from identity by {err:e}"
            )));
        }
        let det = rotation.determinant();
        if det.is_nan() || (det - 1.0).abs() > ORTHONORMAL_TOL {
            return Err(RigidError::InvalidRotation(format!(
                "determinant {det} is not +1"
            )));
        }
        if !translation.iter().all(|v| v.is_finite()) {
            return Err(RigidError::InvalidRotation(
                "translation must be finite".into(),
            ));
        }
        Ok(Self {
            rotation,
            translation,
        })
    }

    pub fn identity() -> Self {
        Self {
            rotation: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    /// Rotation of `angle` radians about the unit `axis`, then translation.
    pub fn from_axis_angle(axis: Vector3<f64>, angle: f64, translation: Vector3<f64>) -> Self {
        let axis = nalgebra::Unit::new_normalize(axis);
        Self {
            rotation: *nalgebra::Rotation3::from_axis_angle(&axis, angle).matrix(),
            translation,
        }
    }

    pub fn rotation(&self) -> &Matrix3<f64> {
        &self.rotation
    }

    pub fn translation(&self) -> &Vector3<f64> {
        &self.translation
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &RigidTransform) -> RigidTransform {
        RigidTransform {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> RigidTransform {
        let rt = self.rotation.transpose();
        RigidTransform {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }

    pub fn apply(&self, point: Vector3<f64>) -> Vector3<f64> {
        self.rotation * point + self.translation
    }

    /// Largest entry-wise difference in rotation and translation.
    pub fn max_abs_diff(&self, other: &RigidTransform) -> (f64, f64) {
        (
            (self.rotation - other.rotation).amax(),
            (self.translation - other.translation).amax(),
        )
    }
}

/// Transform `T` taking tracker (base-station) coordinates to world
/// coordinates, captured while the hand rests on the virtual hand model:
/// `T ∘ tracker_pose = world_pose`.
pub fn sync_frames(
    tracker_pose: &RigidTransform,
    world_pose: &RigidTransform,
) -> Result<RigidTransform, RigidError> {
    let t = world_pose.compose(&tracker_pose.inverse());
    RigidTransform::new(t.rotation, t.translation)
}

/// Per-digit flexion readings (thumb to little finger) and the tracked palm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GloveState {
    pub digit_readings: [f64; 5],
    pub palm_pose: RigidTransform,
}

impl GloveState {
    pub fn new(digit_readings: [f64; 5], palm_pose: RigidTransform) -> Result<Self, RigidError> {
        for (digit, &value) in digit_readings.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(RigidError::InvalidReading { digit, value });
            }
        }
        RigidTransform::new(palm_pose.rotation, palm_pose.translation)?;
        Ok(Self {
            digit_readings,
            palm_pose,
        })
    }

    pub fn index_reading(&self) -> f64 {
        self.digit_readings[1]
    }

    /// Palm pose in world coordinates under a synchronisation transform.
    pub fn palm_in_world(&self, sync: &RigidTransform) -> RigidTransform {
        sync.compose(&self.palm_pose)
    }
}
