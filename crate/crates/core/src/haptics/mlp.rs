use serde::{Deserialize, Serialize};

use super::actuator::{ActuatorCommand, OFFSET_MAX, STIFFNESS_MAX};
use super::HapticsError;

pub const INPUTS: usize = 2;
pub const HIDDEN: usize = 5;
pub const OUTPUTS: usize = 2;
/// Number of trainable scalars.
pub const PARAM_COUNT: usize = HIDDEN * INPUTS + HIDDEN + OUTPUTS * HIDDEN + OUTPUTS;

/// Affine maps between physical units and the network's working range.
///
/// Inputs are `(position, desired_force)` mapped to `[-1, 1]` by
/// `(value - input_offset) / input_scale`; outputs are normalized
/// `(stiffness / 5, offset / 1)` and scaled back by `output_scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub input_offset: [f64; INPUTS],
    pub input_scale: [f64; INPUTS],
    pub output_scale: [f64; OUTPUTS],
}

impl Normalization {
    pub fn for_force_range(f_max: f64) -> Self {
        Self {
            input_offset: [0.5, f_max / 2.0],
            input_scale: [0.5, f_max / 2.0],
            output_scale: [STIFFNESS_MAX, OFFSET_MAX],
        }
    }

    pub fn inputs(&self, position: f64, force: f64) -> [f64; INPUTS] {
        [
            (position - self.input_offset[0]) / self.input_scale[0],
            (force - self.input_offset[1]) / self.input_scale[1],
        ]
    }

    /// Force range accepted by inference.
    pub fn f_max(&self) -> f64 {
        self.input_offset[1] + self.input_scale[1]
    }
}

/// Summary written alongside trained weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingMetrics {
    /// Composite force RMS on the held-out validation rows, N.
    pub validation_rms_n: f64,
    /// Worst composite force error on the validation rows, N.
    pub validation_max_n: f64,
    /// Restart that produced these weights.
    pub restart: usize,
    /// Stage-two epoch the weights were taken from.
    pub best_epoch: usize,
    pub train_loss_first: f64,
    pub train_loss_last: f64,
    pub training_rows: usize,
    pub validation_rows: usize,
}

/// 2-5-2 inverse actuator network: `(position, force) -> (stiffness, offset)`.
///
/// One tanh hidden layer; the output layer is affine, then scaled and clamped
/// into the command box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mlp {
    pub layer_sizes: [usize; 3],
    pub activation: String,
    /// Row-major `HIDDEN x INPUTS`.
    pub hidden_weights: [[f64; INPUTS]; HIDDEN],
    pub hidden_biases: [f64; HIDDEN],
    /// Row-major `OUTPUTS x HIDDEN`.
    pub output_weights: [[f64; HIDDEN]; OUTPUTS],
    pub output_biases: [f64; OUTPUTS],
    pub normalization: Normalization,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<TrainingMetrics>,
}

/// Hidden activations and normalized outputs for one input.
pub(crate) struct Activations {
    pub input: [f64; INPUTS],
    pub hidden: [f64; HIDDEN],
    pub output: [f64; OUTPUTS],
}

impl Mlp {
    pub fn zeroed(normalization: Normalization, seed: u64) -> Self {
        Self {
            layer_sizes: [INPUTS, HIDDEN, OUTPUTS],
            activation: "tanh".to_owned(),
            hidden_weights: [[0.0; INPUTS]; HIDDEN],
            hidden_biases: [0.0; HIDDEN],
            output_weights: [[0.0; HIDDEN]; OUTPUTS],
            output_biases: [0.0; OUTPUTS],
            normalization,
            seed,
            metrics: None,
        }
    }

    pub fn validate(&self) -> Result<(), HapticsError> {
        if self.layer_sizes != [INPUTS, HIDDEN, OUTPUTS] {
            return Err(HapticsError::InvalidNetwork(format!(
                "expected layer sizes [2, 5, 2], got {:?}",
                self.layer_sizes
            )));
        }
        if self.activation != "tanh" {
            return Err(HapticsError::InvalidNetwork(format!(
                "unsupported activation `{}`",
                self.activation
            )));
        }
        let n = self.normalization;
        let finite = self.params().iter().all(|v| v.is_finite())
            && n.input_offset
                .iter()
                .chain(&n.output_scale)
                .all(|v| v.is_finite())
            && n.input_scale.iter().all(|v| v.is_finite() && *v > 0.0);
        if !finite {
            return Err(HapticsError::InvalidNetwork(
                "weights and normalization must be finite with positive input scales".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn activations(&self, position: f64, force: f64) -> Activations {
        let input = self.normalization.inputs(position, force);
        let mut hidden = [0.0; HIDDEN];
        for (h, (w, b)) in hidden
            .iter_mut()
            .zip(self.hidden_weights.iter().zip(&self.hidden_biases))
        {
            *h = (w[0] * input[0] + w[1] * input[1] + b).tanh();
        }
        let mut output = [0.0; OUTPUTS];
        for (o, (w, b)) in output
            .iter_mut()
            .zip(self.output_weights.iter().zip(&self.output_biases))
        {
            *o = w.iter().zip(&hidden).map(|(w, h)| w * h).sum::<f64>() + b;
        }
        Activations {
            input,
            hidden,
            output,
        }
    }

    /// Unclamped command in physical units.
    pub fn raw_command(&self, position: f64, force: f64) -> [f64; OUTPUTS] {
        let out = self.activations(position, force).output;
        [
            out[0] * self.normalization.output_scale[0],
            out[1] * self.normalization.output_scale[1],
        ]
    }

    /// Flat parameter vector: hidden weights, hidden biases, output weights,
    /// output biases.
    pub fn params(&self) -> [f64; PARAM_COUNT] {
        let mut p = [0.0; PARAM_COUNT];
        let values = self
            .hidden_weights
            .iter()
            .flatten()
            .chain(&self.hidden_biases)
            .chain(self.output_weights.iter().flatten())
            .chain(&self.output_biases);
        for (slot, v) in p.iter_mut().zip(values) {
            *slot = *v;
        }
        p
    }

    pub fn set_params(&mut self, p: &[f64; PARAM_COUNT]) {
        let mut it = p.iter().copied();
        let slots = self
            .hidden_weights
            .iter_mut()
            .flatten()
            .chain(self.hidden_biases.iter_mut())
            .chain(self.output_weights.iter_mut().flatten())
            .chain(self.output_biases.iter_mut());
        for slot in slots {
            *slot = it.next().expect("PARAM_COUNT matches layout");
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("network serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, HapticsError> {
        let mlp: Mlp =
            serde_json::from_str(text).map_err(|e| HapticsError::InvalidNetwork(e.to_string()))?;
        mlp.validate()?;
        Ok(mlp)
    }
}

/// Command the network proposes for `desired_force` at `position`, clamped
/// into `[0, 5] x [0, 1]`.
pub fn mlp_infer(
    mlp: &Mlp,
    position: f64,
    desired_force: f64,
) -> Result<ActuatorCommand, HapticsError> {
    if !(0.0..=1.0).contains(&position) {
        return Err(HapticsError::OutOfRange {
            what: "position",
            value: position,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let f_max = mlp.normalization.f_max();
    if !(0.0..=f_max).contains(&desired_force) {
        return Err(HapticsError::OutOfRange {
            what: "desired force",
            value: desired_force,
            lo: 0.0,
            hi: f_max,
        });
    }
    let [s, o] = mlp.raw_command(position, desired_force);
    Ok(ActuatorCommand::clamped(s, o))
}
