//! Force feedback for a virtual spring through the glove's index-finger motor.
//!
//! The motor only accepts a `(stiffness, offset)` pair, so a small network
//! learns the inverse map from `(position, desired force)` to that pair. The
//! controllers in [`control`] use it open loop (feed-forward) or with an
//! integral corrector on the fingertip force sensor.

mod actuator;
pub mod control;
mod mlp;
pub mod train;

pub use actuator::{
    delivered_force, simulate_actuator, ActuatorCommand, ActuatorModel, Motion, OFFSET_MAX,
    STIFFNESS_MAX,
};
pub use control::{
    closed_loop_step, open_loop_step, run_interaction, ControlMode, IntegralState, InteractionRun,
    VirtualSpring, DEFAULT_KI,
};
pub use mlp::{
    mlp_infer, Mlp, Normalization, TrainingMetrics, HIDDEN, INPUTS, OUTPUTS, PARAM_COUNT,
};
pub use train::{
    composite_errors, composite_stats, generate_training_set, midpoint_validation_set,
    train_inverse_mlp, CompositeStats, Grid, TrainConfig, TrainReport, TrainingRow,
};

use thiserror::Error;

use crate::calib::CalibError;

#[derive(Debug, Error, PartialEq)]
pub enum HapticsError {
    #[error("{what} {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("training grid {0:?} needs at least 2 points per axis")]
    EmptyGrid(Grid),
    #[error("training dataset is empty")]
    EmptyDataset,
    #[error("training did not converge: validation composite RMS {rms:.4} N exceeds {bound} N")]
    NonConvergence { rms: f64, bound: f64 },
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Calibration(#[from] CalibError),
}
