use serde::{Deserialize, Serialize};

use super::actuator::{delivered_force, simulate_actuator, ActuatorCommand, ActuatorModel, Motion};
use super::mlp::{mlp_infer, Mlp};
use super::HapticsError;
use crate::calib::LinearMap;
use crate::elasticity::{ForceDisplacementTrace, TraceSample, FORCE_CAP_N};

/// Default integral gain per control step.
pub const DEFAULT_KI: f64 = 0.2;

/// A virtual compression spring rendered through the glove.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VirtualSpring {
    /// N/mm.
    pub k: f64,
    /// Position reading to spring compression in mm.
    pub calibration: LinearMap,
}

impl VirtualSpring {
    pub fn new(k: f64, calibration: LinearMap) -> Result<Self, HapticsError> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(HapticsError::InvalidParameter(format!(
                "spring rate must be positive, got {k}"
            )));
        }
        calibration.validate()?;
        Ok(Self { k, calibration })
    }

    /// Compression in mm at `position`, floored at zero.
    pub fn displacement(&self, position: f64) -> Result<f64, HapticsError> {
        Ok(self.calibration.reading_to_distance(position)?.max(0.0))
    }

    /// Hooke force `k x`, capped at `f_max`.
    pub fn desired_force(&self, position: f64, f_max: f64) -> Result<f64, HapticsError> {
        Ok((self.k * self.displacement(position)?).min(f_max))
    }
}

/// Feed-forward control: ask the network for the Hooke force directly.
/// Returns the command and the static actuator force it produces.
pub fn open_loop_step(
    spring: &VirtualSpring,
    mlp: &Mlp,
    model: &ActuatorModel,
    position: f64,
) -> Result<(ActuatorCommand, f64), HapticsError> {
    let desired = spring.desired_force(position, model.f_max)?;
    let cmd = mlp_infer(mlp, position, desired)?;
    Ok((cmd, simulate_actuator(model, cmd, position)?))
}

/// Integral corrector state.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct IntegralState {
    /// Force offset added to the network's target, N.
    pub accumulator: f64,
}

/// Closed-loop control: integrate the force-sensor error into the network's
/// target.
///
/// `accumulator <- clamp(accumulator + ki * (desired - measured), -f_max, f_max)`,
/// then the network is asked for `clamp(desired + accumulator, 0, f_max)`.
pub fn closed_loop_step(
    state: IntegralState,
    spring: &VirtualSpring,
    mlp: &Mlp,
    model: &ActuatorModel,
    ki: f64,
    position: f64,
    measured_force: f64,
) -> Result<(ActuatorCommand, IntegralState), HapticsError> {
    if !(0.0..=model.f_max).contains(&measured_force) {
        return Err(HapticsError::OutOfRange {
            what: "measured force",
            value: measured_force,
            lo: 0.0,
            hi: model.f_max,
        });
    }
    if !(ki >= 0.0 && ki.is_finite()) {
        return Err(HapticsError::InvalidParameter(format!(
            "ki must be non-negative, got {ki}"
        )));
    }
    let desired = spring.desired_force(position, model.f_max)?;
    let accumulator =
        (state.accumulator + ki * (desired - measured_force)).clamp(-model.f_max, model.f_max);
    let target = (desired + accumulator).clamp(0.0, model.f_max);
    let cmd = mlp_infer(mlp, position, target)?;
    Ok((cmd, IntegralState { accumulator }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ControlMode {
    Open,
    Closed,
}

impl std::str::FromStr for ControlMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "open" => Ok(ControlMode::Open),
            "closed" => Ok(ControlMode::Closed),
            other => Err(format!(
                "unknown control mode `{other}` (expected open or closed)"
            )),
        }
    }
}

/// Result of driving a controller along a finger trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionRun {
    /// Spring displacement against the force felt at the fingertip.
    pub trace: ForceDisplacementTrace,
    /// Hooke force the spring should have produced at each sample.
    pub desired: Vec<f64>,
    pub commands: Vec<ActuatorCommand>,
}

impl InteractionRun {
    /// RMS of delivered minus desired force, N.
    pub fn tracking_rms(&self) -> f64 {
        if self.desired.is_empty() {
            return 0.0;
        }
        let sq: f64 = self
            .trace
            .samples()
            .iter()
            .zip(&self.desired)
            .map(|(s, d)| (s.f - d) * (s.f - d))
            .sum();
        (sq / self.desired.len() as f64).sqrt()
    }
}

/// Steps a controller along `trajectory` (`(t, position)` pairs) against the
/// moving actuator.
///
/// At each sample the finger direction is taken from the change in reading
/// (unchanged readings keep the previous direction; the first sample counts
/// as compressing). In closed mode the force sensor is read at the new
/// position while the previous command is still applied, the corrector
/// updates, and the new command is issued. The recorded force is what the
/// fingertip feels under the issued command.
pub fn run_interaction(
    spring: &VirtualSpring,
    mlp: &Mlp,
    model: &ActuatorModel,
    trajectory: &[(f64, f64)],
    mode: ControlMode,
    ki: f64,
) -> Result<InteractionRun, HapticsError> {
    model.validate()?;
    let mut samples = Vec::with_capacity(trajectory.len());
    let mut desired = Vec::with_capacity(trajectory.len());
    let mut commands = Vec::with_capacity(trajectory.len());
    let mut state = IntegralState::default();
    let mut applied = ActuatorCommand::released();
    let mut motion = Motion::Compressing;
    let mut last_position: Option<f64> = None;
    for &(t, position) in trajectory {
        if let Some(prev) = last_position {
            if position > prev {
                motion = Motion::Compressing;
            } else if position < prev {
                motion = Motion::Releasing;
            }
        }
        last_position = Some(position);
        let target = spring.desired_force(position, model.f_max)?;
        let cmd = match mode {
            ControlMode::Open => mlp_infer(mlp, position, target)?,
            ControlMode::Closed => {
                let measured = delivered_force(model, applied, position, motion)?;
                let (cmd, next) =
                    closed_loop_step(state, spring, mlp, model, ki, position, measured)?;
                state = next;
                cmd
            }
        };
        applied = cmd;
        let felt = delivered_force(model, cmd, position, motion)?.min(FORCE_CAP_N);
        samples.push(TraceSample {
            t,
            x: spring.displacement(position)?,
            f: felt,
        });
        desired.push(target);
        commands.push(cmd);
    }
    let trace = ForceDisplacementTrace::new(samples).map_err(|e| {
        HapticsError::InvalidParameter(format!("trajectory produced an invalid trace: {e}"))
    })?;
    Ok(InteractionRun {
        trace,
        desired,
        commands,
    })
}
