use serde::{Deserialize, Serialize};

use super::HapticsError;

pub const STIFFNESS_MAX: f64 = 5.0;
pub const OFFSET_MAX: f64 = 1.0;

/// The glove motor's two control parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ActuatorCommand {
    /// Feedback strength in `[0, 5]`.
    pub stiffness: f64,
    /// Flexion reading in `[0, 1]` where feedback engages.
    pub offset: f64,
}

impl ActuatorCommand {
    pub fn new(stiffness: f64, offset: f64) -> Result<Self, HapticsError> {
        let cmd = Self { stiffness, offset };
        cmd.validate()?;
        Ok(cmd)
    }

    /// Clamps both parameters into their ranges (NaN maps to the lower bound).
    pub fn clamped(stiffness: f64, offset: f64) -> Self {
        let clamp = |v: f64, hi: f64| if v.is_nan() { 0.0 } else { v.clamp(0.0, hi) };
        Self {
            stiffness: clamp(stiffness, STIFFNESS_MAX),
            offset: clamp(offset, OFFSET_MAX),
        }
    }

    /// No force anywhere.
    pub fn released() -> Self {
        Self {
            stiffness: 0.0,
            offset: OFFSET_MAX,
        }
    }

    pub fn validate(&self) -> Result<(), HapticsError> {
        if !(0.0..=STIFFNESS_MAX).contains(&self.stiffness) {
            return Err(HapticsError::OutOfRange {
                what: "stiffness",
                value: self.stiffness,
                lo: 0.0,
                hi: STIFFNESS_MAX,
            });
        }
        if !(0.0..=OFFSET_MAX).contains(&self.offset) {
            return Err(HapticsError::OutOfRange {
                what: "offset",
                value: self.offset,
                lo: 0.0,
                hi: OFFSET_MAX,
            });
        }
        Ok(())
    }
}

/// Finger motion relative to the motor, which decides how the transmission
/// loads the fingertip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Motion {
    /// Flexing into the spring (reading increasing); the finger back-drives the motor.
    Compressing,
    /// Extending (reading decreasing); the motor drives the finger.
    Releasing,
}

/// Stand-in for the glove's motor and inner control loop.
///
/// The static curve is a saturating engagement
/// `F = f_max * (stiffness / 5) * (1 - exp(-beta * max(0, position - offset)))`.
/// While the finger moves, the fingertip sees that force scaled by a
/// direction-dependent transmission gain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ActuatorModel {
    /// Peak force, N.
    pub f_max: f64,
    /// Engagement gain per unit reading past the offset.
    pub beta: f64,
    /// Fingertip/motor force ratio while compressing.
    pub compress_gain: f64,
    /// Fingertip/motor force ratio while releasing.
    pub release_gain: f64,
}

impl Default for ActuatorModel {
    fn default() -> Self {
        Self {
            f_max: 10.0,
            beta: 4.0,
            compress_gain: 1.2,
            release_gain: 0.7,
        }
    }
}

impl ActuatorModel {
    pub fn validate(&self) -> Result<(), HapticsError> {
        let positive = |name: &'static str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(HapticsError::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        positive("f_max", self.f_max)?;
        positive("beta", self.beta)?;
        positive("compress_gain", self.compress_gain)?;
        positive("release_gain", self.release_gain)
    }

    /// Largest force reachable at `position` (full stiffness, zero offset).
    pub fn max_force_at(&self, position: f64) -> f64 {
        self.f_max * (1.0 - (-self.beta * position.max(0.0)).exp())
    }

    fn gain(&self, motion: Motion) -> f64 {
        match motion {
            Motion::Compressing => self.compress_gain,
            Motion::Releasing => self.release_gain,
        }
    }
}

fn check_position(position: f64) -> Result<(), HapticsError> {
    if (0.0..=1.0).contains(&position) {
        Ok(())
    } else {
        Err(HapticsError::OutOfRange {
            what: "position",
            value: position,
            lo: 0.0,
            hi: 1.0,
        })
    }
}

/// Static motor force at `position` for `cmd`.
pub fn simulate_actuator(
    model: &ActuatorModel,
    cmd: ActuatorCommand,
    position: f64,
) -> Result<f64, HapticsError> {
    cmd.validate()?;
    check_position(position)?;
    Ok(engagement_force(model, cmd.stiffness, cmd.offset, position))
}

/// Force felt at the fingertip while moving, capped at `f_max`.
pub fn delivered_force(
    model: &ActuatorModel,
    cmd: ActuatorCommand,
    position: f64,
    motion: Motion,
) -> Result<f64, HapticsError> {
    let f = simulate_actuator(model, cmd, position)?;
    Ok((f * model.gain(motion)).min(model.f_max))
}

/// Unchecked engagement curve, also used by the trainer on raw network outputs.
pub(crate) fn engagement_force(
    model: &ActuatorModel,
    stiffness: f64,
    offset: f64,
    position: f64,
) -> f64 {
    let engaged = (position - offset).max(0.0);
    model.f_max * (stiffness / STIFFNESS_MAX) * (1.0 - (-model.beta * engaged).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cmd(s: f64, o: f64) -> ActuatorCommand {
        ActuatorCommand::new(s, o).unwrap()
    }

    #[test]
    fn disengaged_below_offset() {
        let m = ActuatorModel::default();
        assert_eq!(simulate_actuator(&m, cmd(5.0, 0.6), 0.6).unwrap(), 0.0);
        assert_eq!(simulate_actuator(&m, cmd(5.0, 0.6), 0.2).unwrap(), 0.0);
        assert_eq!(simulate_actuator(&m, cmd(0.0, 0.0), 1.0).unwrap(), 0.0);
    }

    #[test]
    fn full_command_at_full_flexion() {
        let f = simulate_actuator(&ActuatorModel::default(), cmd(5.0, 0.0), 1.0).unwrap();
        assert_relative_eq!(f, 10.0 * (1.0 - (-4.0f64).exp()), max_relative = 1e-15);
        assert_relative_eq!(f, 9.8168, epsilon = 1e-4);
    }

    #[test]
    fn range_checks() {
        let m = ActuatorModel::default();
        assert!(ActuatorCommand::new(5.1, 0.0).is_err());
        assert!(ActuatorCommand::new(1.0, -0.1).is_err());
        assert!(simulate_actuator(&m, cmd(1.0, 0.0), 1.1).is_err());
        let bad = ActuatorCommand {
            stiffness: 6.0,
            offset: 0.0,
        };
        assert!(simulate_actuator(&m, bad, 0.5).is_err());
    }

    #[test]
    fn motion_scales_and_caps() {
        let m = ActuatorModel::default();
        let c = cmd(2.0, 0.1);
        let f = simulate_actuator(&m, c, 0.7).unwrap();
        assert_relative_eq!(
            delivered_force(&m, c, 0.7, Motion::Compressing).unwrap(),
            1.2 * f
        );
        assert_relative_eq!(
            delivered_force(&m, c, 0.7, Motion::Releasing).unwrap(),
            0.7 * f
        );
        let top = delivered_force(&m, cmd(5.0, 0.0), 1.0, Motion::Compressing).unwrap();
        assert_eq!(top, 10.0);
    }

    #[test]
    fn clamped_command() {
        let c = ActuatorCommand::clamped(7.0, f64::NAN);
        assert_eq!((c.stiffness, c.offset), (5.0, 0.0));
    }
}
