//! Flat `key = value` configuration shared by every subcommand.

use std::path::{Path, PathBuf};

use anyhow::Context;
use haptic_core::calib::LinearMap;
use haptic_core::contour::{DEFAULT_RING_SPACING_MM, DEFAULT_VERTEX_COUNT};
use haptic_core::elasticity::DEFAULT_FLAT_TOLERANCE_MM;
use haptic_core::haptics::{ActuatorModel, Grid, TrainConfig, VirtualSpring, DEFAULT_KI};
use serde::Deserialize;

use crate::InputError;

/// Every key is optional; missing keys take the defaults below.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,

    /// JSON map written by `calibrate`; overrides the slope/intercept keys.
    pub calibration_map: Option<PathBuf>,
    pub calibration_slope_mm: f64,
    pub calibration_intercept_mm: f64,

    pub ring_spacing_mm: f64,
    pub vertex_count: usize,
    pub close_seam: bool,

    pub flat_tolerance_mm: f64,

    pub actuator_f_max_n: f64,
    pub actuator_beta: f64,
    pub actuator_compress_gain: f64,
    pub actuator_release_gain: f64,

    pub grid_stiffness_steps: usize,
    pub grid_offset_steps: usize,
    pub grid_position_steps: usize,

    pub train_restarts: usize,
    pub train_pretrain_epochs: usize,
    pub train_pretrain_learning_rate: f64,
    pub train_epochs: usize,
    pub train_learning_rate: f64,
    pub train_final_lr_fraction: f64,
    pub train_validation_fraction: f64,
    pub train_eval_every: usize,
    pub train_target_rms_n: f64,

    pub ki: f64,
    pub spring_k: f64,
    /// Maps the index-finger reading to virtual spring compression.
    pub spring_slope_mm: f64,
    pub spring_intercept_mm: f64,
    pub trajectory_cycles: usize,
    pub trajectory_peak: f64,
    pub trajectory_steps_per_stroke: usize,
    pub trajectory_dt_s: f64,
}

impl Default for Config {
    fn default() -> Self {
        let calib = LinearMap::default();
        let actuator = ActuatorModel::default();
        let grid = Grid::default();
        let train = TrainConfig::default();
        Self {
            seed: train.seed,
            calibration_map: None,
            calibration_slope_mm: calib.slope,
            calibration_intercept_mm: calib.intercept,
            ring_spacing_mm: DEFAULT_RING_SPACING_MM,
            vertex_count: DEFAULT_VERTEX_COUNT,
            close_seam: true,
            flat_tolerance_mm: DEFAULT_FLAT_TOLERANCE_MM,
            actuator_f_max_n: actuator.f_max,
            actuator_beta: actuator.beta,
            actuator_compress_gain: actuator.compress_gain,
            actuator_release_gain: actuator.release_gain,
            grid_stiffness_steps: grid.stiffness_steps,
            grid_offset_steps: grid.offset_steps,
            grid_position_steps: grid.position_steps,
            train_restarts: train.restarts,
            train_pretrain_epochs: train.pretrain_epochs,
            train_pretrain_learning_rate: train.pretrain_learning_rate,
            train_epochs: train.epochs,
            train_learning_rate: train.learning_rate,
            train_final_lr_fraction: train.final_lr_fraction,
            train_validation_fraction: train.validation_fraction,
            train_eval_every: train.eval_every,
            train_target_rms_n: train.target_rms,
            ki: DEFAULT_KI,
            spring_k: 0.1,
            spring_slope_mm: 50.0,
            spring_intercept_mm: 0.0,
            trajectory_cycles: 3,
            trajectory_peak: 0.8,
            trajectory_steps_per_stroke: 400,
            trajectory_dt_s: 0.005,
        }
    }
}

impl Config {
    /// Reads `path`, or returns the defaults when no file is given.
    /// Relative `calibration_map` paths resolve against the config file.
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut config: Config =
            toml::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        if let Some(map) = &config.calibration_map {
            if map.is_relative() {
                let base = path.parent().unwrap_or(Path::new("."));
                config.calibration_map = Some(base.join(map));
            }
        }
        config.validate()?;
        Ok(config)
    }

    /// Checks every value against the owning module's rules.
    pub fn validate(&self) -> anyhow::Result<()> {
        let invalid = |e: &dyn std::fmt::Display| InputError(format!("invalid config: {e}"));
        if self.calibration_map.is_none() {
            LinearMap::new(self.calibration_slope_mm, self.calibration_intercept_mm)
                .map_err(|e| invalid(&e))?;
        }
        if !(self.ring_spacing_mm > 0.0 && self.ring_spacing_mm.is_finite()) {
            return Err(invalid(&"ring_spacing_mm must be positive").into());
        }
        if self.vertex_count < 3 {
            return Err(invalid(&"vertex_count must be at least 3").into());
        }
        if !(self.flat_tolerance_mm >= 0.0 && self.flat_tolerance_mm.is_finite()) {
            return Err(invalid(&"flat_tolerance_mm must be non-negative").into());
        }
        self.actuator().validate().map_err(|e| invalid(&e))?;
        self.grid().validate().map_err(|e| invalid(&e))?;
        self.train_config(self.seed)
            .validate()
            .map_err(|e| invalid(&e))?;
        if !(self.ki >= 0.0 && self.ki.is_finite()) {
            return Err(invalid(&"ki must be non-negative").into());
        }
        VirtualSpring::new(
            self.spring_k,
            LinearMap::new(self.spring_slope_mm, self.spring_intercept_mm)
                .map_err(|e| invalid(&e))?,
        )
        .map_err(|e| invalid(&e))?;
        if self.trajectory_cycles == 0 || self.trajectory_steps_per_stroke == 0 {
            return Err(
                invalid(&"trajectory needs at least one cycle and one step per stroke").into(),
            );
        }
        if !(0.0..=1.0).contains(&self.trajectory_peak) || self.trajectory_peak == 0.0 {
            return Err(invalid(&"trajectory_peak must be in (0, 1]").into());
        }
        if !(self.trajectory_dt_s > 0.0 && self.trajectory_dt_s.is_finite()) {
            return Err(invalid(&"trajectory_dt_s must be positive").into());
        }
        Ok(())
    }

    pub fn calibration(&self) -> anyhow::Result<LinearMap> {
        match &self.calibration_map {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let map: LinearMap = serde_json::from_str(&text)
                    .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
                map.validate()
                    .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
                Ok(map)
            }
            None => Ok(LinearMap::new(
                self.calibration_slope_mm,
                self.calibration_intercept_mm,
            )?),
        }
    }

    pub fn actuator(&self) -> ActuatorModel {
        ActuatorModel {
            f_max: self.actuator_f_max_n,
            beta: self.actuator_beta,
            compress_gain: self.actuator_compress_gain,
            release_gain: self.actuator_release_gain,
        }
    }

    pub fn grid(&self) -> Grid {
        Grid {
            stiffness_steps: self.grid_stiffness_steps,
            offset_steps: self.grid_offset_steps,
            position_steps: self.grid_position_steps,
        }
    }

    pub fn train_config(&self, seed: u64) -> TrainConfig {
        TrainConfig {
            seed,
            restarts: self.train_restarts,
            pretrain_epochs: self.train_pretrain_epochs,
            pretrain_learning_rate: self.train_pretrain_learning_rate,
            epochs: self.train_epochs,
            learning_rate: self.train_learning_rate,
            final_lr_fraction: self.train_final_lr_fraction,
            validation_fraction: self.train_validation_fraction,
            eval_every: self.train_eval_every,
            target_rms: self.train_target_rms_n,
        }
    }

    pub fn virtual_spring(&self) -> anyhow::Result<VirtualSpring> {
        Ok(VirtualSpring::new(
            self.spring_k,
            LinearMap::new(self.spring_slope_mm, self.spring_intercept_mm)?,
        )?)
    }
}
