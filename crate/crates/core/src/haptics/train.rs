//! Training data and fitting for the inverse actuator network.
//!
//! The dataset is an exhaustive sweep of `(stiffness, offset, position)`
//! through the actuator, recorded as `(position, force) -> (stiffness, offset)`
//! rows. Many commands produce the same force at a given position, so the
//! network is judged by the force it makes the actuator deliver (the
//! *composite* error), not by how well it recovers the command.
//!
//! Fitting runs in two stages on each restart:
//!
//! 1. mean-squared error on the normalized `(stiffness, offset)` targets,
//!    which places the network in a sensible region of command space;
//! 2. mean-squared composite force error, differentiated through the
//!    engagement curve, with a quadratic penalty keeping raw outputs inside
//!    the command box.
//!
//! Both stages use full-batch Adam. Gradients are accumulated over fixed
//! chunks and reduced in chunk order, so results are bit-identical with or
//! without the thread pool. The stage-two weights with the smallest
//! validation error (checked every `eval_every` epochs) are kept, and the best
//! restart wins.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::actuator::{
    engagement_force, ActuatorCommand, ActuatorModel, OFFSET_MAX, STIFFNESS_MAX,
};
use super::mlp::{Mlp, Normalization, TrainingMetrics, HIDDEN, INPUTS, OUTPUTS, PARAM_COUNT};
use super::HapticsError;
use crate::par::{self, Execution};

/// Rows per gradient chunk. Changing it changes the floating-point reduction
/// order and therefore the trained weights.
const CHUNK: usize = 256;

/// One recorded actuator sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainingRow {
    pub position: f64,
    pub force: f64,
    pub stiffness: f64,
    pub offset: f64,
}

/// Number of evenly spaced values per axis (end points included).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub stiffness_steps: usize,
    pub offset_steps: usize,
    pub position_steps: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            stiffness_steps: 11,
            offset_steps: 11,
            position_steps: 51,
        }
    }
}

impl Grid {
    pub fn len(&self) -> usize {
        self.stiffness_steps * self.offset_steps * self.position_steps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self) -> Result<(), HapticsError> {
        if self.stiffness_steps < 2 || self.offset_steps < 2 || self.position_steps < 2 {
            return Err(HapticsError::EmptyGrid(*self));
        }
        Ok(())
    }
}

fn linspace(hi: f64, steps: usize) -> impl Fn(usize) -> f64 {
    move |i| hi * i as f64 / (steps - 1) as f64
}

fn midspace(hi: f64, steps: usize) -> impl Fn(usize) -> f64 {
    move |i| hi * (i as f64 + 0.5) / (steps - 1) as f64
}

fn sweep(
    model: &ActuatorModel,
    dims: [usize; 3],
    stiffness: impl Fn(usize) -> f64 + Sync,
    offset: impl Fn(usize) -> f64 + Sync,
    position: impl Fn(usize) -> f64 + Sync,
    exec: Execution,
) -> Vec<TrainingRow> {
    let [ns, no, np] = dims;
    par::map_range(exec, ns * no * np, |idx| {
        let (s, rest) = (idx / (no * np), idx % (no * np));
        let (o, p) = (rest / np, rest % np);
        let cmd = ActuatorCommand::clamped(stiffness(s), offset(o));
        let position = position(p).min(1.0);
        TrainingRow {
            position,
            force: engagement_force(model, cmd.stiffness, cmd.offset, position),
            stiffness: cmd.stiffness,
            offset: cmd.offset,
        }
    })
}

/// Evaluates every grid point through the actuator. Rows are ordered
/// stiffness-major, then offset, then position; zero-force rows are kept.
pub fn generate_training_set(
    model: &ActuatorModel,
    grid: Grid,
    exec: Execution,
) -> Result<Vec<TrainingRow>, HapticsError> {
    grid.validate()?;
    model.validate()?;
    Ok(sweep(
        model,
        [grid.stiffness_steps, grid.offset_steps, grid.position_steps],
        linspace(STIFFNESS_MAX, grid.stiffness_steps),
        linspace(OFFSET_MAX, grid.offset_steps),
        linspace(1.0, grid.position_steps),
        exec,
    ))
}

/// Commands halfway between neighbouring grid values on every axis, so none
/// of them appear in the training sweep. Every force is reachable by
/// construction.
pub fn midpoint_validation_set(
    model: &ActuatorModel,
    grid: Grid,
    exec: Execution,
) -> Result<Vec<TrainingRow>, HapticsError> {
    grid.validate()?;
    model.validate()?;
    Ok(sweep(
        model,
        [
            grid.stiffness_steps - 1,
            grid.offset_steps - 1,
            grid.position_steps - 1,
        ],
        midspace(STIFFNESS_MAX, grid.stiffness_steps),
        midspace(OFFSET_MAX, grid.offset_steps),
        midspace(1.0, grid.position_steps),
        exec,
    ))
}

/// Composite force error statistics, in newtons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompositeStats {
    pub rms: f64,
    pub max: f64,
    pub count: usize,
}

/// `actuator(network(position, force), position) - force` for each row.
pub fn composite_errors(
    mlp: &Mlp,
    model: &ActuatorModel,
    rows: &[TrainingRow],
    exec: Execution,
) -> Result<Vec<f64>, HapticsError> {
    par::map(exec, rows, |r| {
        let cmd = super::mlp_infer(mlp, r.position, r.force)?;
        Ok(engagement_force(model, cmd.stiffness, cmd.offset, r.position) - r.force)
    })
    .into_iter()
    .collect()
}

pub fn composite_stats(
    mlp: &Mlp,
    model: &ActuatorModel,
    rows: &[TrainingRow],
    exec: Execution,
) -> Result<CompositeStats, HapticsError> {
    let errs = composite_errors(mlp, model, rows, exec)?;
    Ok(stats(&errs))
}

fn stats(errs: &[f64]) -> CompositeStats {
    if errs.is_empty() {
        return CompositeStats {
            rms: 0.0,
            max: 0.0,
            count: 0,
        };
    }
    let sq: f64 = errs.iter().map(|e| e * e).sum();
    CompositeStats {
        rms: (sq / errs.len() as f64).sqrt(),
        max: errs.iter().fold(0.0_f64, |m, e| m.max(e.abs())),
        count: errs.len(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub seed: u64,
    /// Independent initialisations; the best on validation is returned.
    pub restarts: usize,
    pub pretrain_epochs: usize,
    pub pretrain_learning_rate: f64,
    pub epochs: usize,
    /// Peak stage-two rate; it follows a cosine decay towards
    /// `learning_rate * final_lr_fraction`.
    pub learning_rate: f64,
    pub final_lr_fraction: f64,
    /// Share of rows held out for model selection.
    pub validation_fraction: f64,
    pub eval_every: usize,
    /// Largest acceptable validation composite RMS, N.
    pub target_rms: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            restarts: 3,
            pretrain_epochs: 1000,
            pretrain_learning_rate: 0.02,
            epochs: 8000,
            learning_rate: 0.03,
            final_lr_fraction: 0.02,
            validation_fraction: 0.15,
            eval_every: 25,
            target_rms: 0.25,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), HapticsError> {
        let bad = |msg: String| Err(HapticsError::InvalidParameter(msg));
        if self.restarts == 0 {
            return bad("restarts must be at least 1".into());
        }
        if self.eval_every == 0 {
            return bad("eval_every must be at least 1".into());
        }
        if !(0.0..1.0).contains(&self.validation_fraction) {
            return bad(format!(
                "validation_fraction must be in [0, 1), got {}",
                self.validation_fraction
            ));
        }
        for (name, v) in [
            ("learning_rate", self.learning_rate),
            ("pretrain_learning_rate", self.pretrain_learning_rate),
            ("target_rms", self.target_rms),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if !(0.0..=1.0).contains(&self.final_lr_fraction) {
            return bad("final_lr_fraction must be in [0, 1]".into());
        }
        Ok(())
    }
}

/// Trained network plus the loss curves of the winning restart.
#[derive(Debug, Clone)]
pub struct TrainReport {
    pub mlp: Mlp,
    /// Stage-one target MSE per epoch.
    pub pretrain_loss: Vec<f64>,
    /// Stage-two composite loss per epoch.
    pub loss: Vec<f64>,
}

pub fn train_inverse_mlp(
    dataset: &[TrainingRow],
    model: &ActuatorModel,
    config: &TrainConfig,
    exec: Execution,
) -> Result<TrainReport, HapticsError> {
    if dataset.is_empty() {
        return Err(HapticsError::EmptyDataset);
    }
    config.validate()?;
    model.validate()?;

    let mut order: Vec<usize> = (0..dataset.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(config.seed));
    let held_out = (dataset.len() as f64 * config.validation_fraction).floor() as usize;
    let (val_idx, train_idx) = order.split_at(held_out);
    let pick = |idx: &[usize]| -> Vec<TrainingRow> {
        let mut idx = idx.to_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| dataset[i]).collect()
    };
    let train = pick(train_idx);
    let validation = if val_idx.is_empty() {
        train.clone()
    } else {
        pick(val_idx)
    };

    let norm = Normalization::for_force_range(model.f_max);
    // Restarts are independent; inner loops run sequentially when the
    // restarts themselves are spread over the pool.
    let inner = if config.restarts > 1 {
        Execution::Sequential
    } else {
        exec
    };
    let runs = par::map_range(exec, config.restarts, |r| {
        train_once(&train, &validation, model, norm, config, r, inner)
    });
    let mut best: Option<(usize, Run)> = None;
    for (r, run) in runs.into_iter().enumerate() {
        let run = run?;
        if best.as_ref().is_none_or(|(_, b)| run.score < b.score) {
            best = Some((r, run));
        }
    }
    let (restart, run) = best.expect("at least one restart");

    let mut mlp = Mlp::zeroed(norm, config.seed);
    mlp.set_params(&run.params);
    let val = composite_stats(&mlp, model, &validation, exec)?;
    mlp.metrics = Some(TrainingMetrics {
        validation_rms_n: val.rms,
        validation_max_n: val.max,
        restart,
        best_epoch: run.best_epoch,
        train_loss_first: run.loss.first().copied().unwrap_or(f64::NAN),
        train_loss_last: run.loss.last().copied().unwrap_or(f64::NAN),
        training_rows: train.len(),
        validation_rows: validation.len(),
    });
    if val.rms > config.target_rms {
        return Err(HapticsError::NonConvergence {
            rms: val.rms,
            bound: config.target_rms,
        });
    }
    Ok(TrainReport {
        mlp,
        pretrain_loss: run.pretrain_loss,
        loss: run.loss,
    })
}

struct Run {
    params: [f64; PARAM_COUNT],
    score: f64,
    best_epoch: usize,
    pretrain_loss: Vec<f64>,
    loss: Vec<f64>,
}

#[derive(Clone, Copy)]
enum Objective {
    Targets,
    Composite,
}

fn train_once(
    train: &[TrainingRow],
    validation: &[TrainingRow],
    model: &ActuatorModel,
    norm: Normalization,
    config: &TrainConfig,
    restart: usize,
    exec: Execution,
) -> Result<Run, HapticsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(restart as u64 + 1);
    let mut net = Mlp::zeroed(norm, config.seed);
    let mut params = [0.0; PARAM_COUNT];
    let hidden_bound = (6.0 / (INPUTS + HIDDEN) as f64).sqrt();
    let output_bound = (6.0 / (HIDDEN + OUTPUTS) as f64).sqrt();
    for (i, p) in params.iter_mut().enumerate() {
        *p = match Layout::of(i) {
            Layout::HiddenWeight => rng.random_range(-hidden_bound..hidden_bound),
            Layout::OutputWeight => rng.random_range(-output_bound..output_bound),
            Layout::Bias => 0.0,
        };
    }

    let mut adam = Adam::default();
    let mut pretrain_loss = Vec::with_capacity(config.pretrain_epochs);
    for _ in 0..config.pretrain_epochs {
        net.set_params(&params);
        let (loss, grad) = loss_and_gradient(&net, model, train, Objective::Targets, exec);
        pretrain_loss.push(loss);
        adam.step(&mut params, &grad, config.pretrain_learning_rate);
    }

    let mut adam = Adam::default();
    let mut loss_history = Vec::with_capacity(config.epochs);
    net.set_params(&params);
    let mut best = (selection_score(&net, model, validation, exec)?, 0, params);
    for epoch in 0..config.epochs {
        net.set_params(&params);
        let (loss, grad) = loss_and_gradient(&net, model, train, Objective::Composite, exec);
        loss_history.push(loss);
        let progress = epoch as f64 / config.epochs as f64;
        let cosine = 0.5 * (1.0 + (PI * progress).cos());
        let lr = config.learning_rate
            * (config.final_lr_fraction + (1.0 - config.final_lr_fraction) * cosine);
        adam.step(&mut params, &grad, lr);
        if (epoch + 1) % config.eval_every == 0 || epoch + 1 == config.epochs {
            net.set_params(&params);
            let score = selection_score(&net, model, validation, exec)?;
            if score < best.0 {
                best = (score, epoch + 1, params);
            }
        }
    }
    Ok(Run {
        params: best.2,
        score: best.0,
        best_epoch: best.1,
        pretrain_loss,
        loss: loss_history,
    })
}

/// Worst-case composite error on the validation rows; non-finite scores rank last.
fn selection_score(
    net: &Mlp,
    model: &ActuatorModel,
    validation: &[TrainingRow],
    exec: Execution,
) -> Result<f64, HapticsError> {
    let s = composite_stats(net, model, validation, exec)?;
    Ok(if s.max.is_finite() {
        s.max
    } else {
        f64::INFINITY
    })
}

enum Layout {
    HiddenWeight,
    OutputWeight,
    Bias,
}

impl Layout {
    fn of(i: usize) -> Self {
        const HW: usize = HIDDEN * INPUTS;
        const OW_START: usize = HW + HIDDEN;
        match i {
            _ if i < HW => Layout::HiddenWeight,
            _ if i < OW_START => Layout::Bias,
            _ if i < OW_START + OUTPUTS * HIDDEN => Layout::OutputWeight,
            _ => Layout::Bias,
        }
    }
}

/// Mean loss and its gradient over `rows`.
fn loss_and_gradient(
    net: &Mlp,
    model: &ActuatorModel,
    rows: &[TrainingRow],
    objective: Objective,
    exec: Execution,
) -> (f64, [f64; PARAM_COUNT]) {
    let partials = par::map_chunks(exec, rows, CHUNK, |chunk| {
        let mut grad = [0.0; PARAM_COUNT];
        let mut loss = 0.0;
        for row in chunk {
            loss += accumulate_row(net, model, row, objective, &mut grad);
        }
        (loss, grad)
    });
    let n = rows.len() as f64;
    let mut total = 0.0;
    let mut grad = [0.0; PARAM_COUNT];
    for (loss, g) in partials {
        total += loss;
        for (acc, v) in grad.iter_mut().zip(g) {
            *acc += v;
        }
    }
    for g in &mut grad {
        *g /= n;
    }
    (total / n, grad)
}

/// Adds one row's (unnormalized) gradient into `grad`; returns its loss.
fn accumulate_row(
    net: &Mlp,
    model: &ActuatorModel,
    row: &TrainingRow,
    objective: Objective,
    grad: &mut [f64; PARAM_COUNT],
) -> f64 {
    let act = net.activations(row.position, row.force);
    let y = act.output;
    let scale = net.normalization.output_scale;
    let mut d_out = [0.0; OUTPUTS];
    let mut loss = 0.0;
    match objective {
        Objective::Targets => {
            let target = [row.stiffness / scale[0], row.offset / scale[1]];
            for j in 0..OUTPUTS {
                let diff = y[j] - target[j];
                // mean over both outputs
                loss += 0.5 * diff * diff;
                d_out[j] = diff;
            }
        }
        Objective::Composite => {
            let stiffness = y[0] * scale[0];
            let offset = y[1] * scale[1];
            let engaged = row.position - offset;
            let predicted = engagement_force(model, stiffness, offset, row.position);
            let r = (predicted - row.force) / model.f_max;
            loss += r * r;
            if engaged > 0.0 {
                let decay = (-model.beta * engaged).exp();
                let per_stiffness = (1.0 - decay) / STIFFNESS_MAX;
                d_out[0] = 2.0 * r * per_stiffness * scale[0];
                d_out[1] = 2.0 * r * (stiffness / STIFFNESS_MAX) * (-model.beta * decay) * scale[1];
            }
            for j in 0..OUTPUTS {
                if y[j] < 0.0 {
                    loss += y[j] * y[j];
                    d_out[j] += 2.0 * y[j];
                } else if y[j] > 1.0 {
                    loss += (y[j] - 1.0) * (y[j] - 1.0);
                    d_out[j] += 2.0 * (y[j] - 1.0);
                }
            }
        }
    }

    const HB: usize = HIDDEN * INPUTS;
    const OW: usize = HB + HIDDEN;
    const OB: usize = OW + OUTPUTS * HIDDEN;
    let mut d_hidden = [0.0; HIDDEN];
    for j in 0..OUTPUTS {
        for h in 0..HIDDEN {
            grad[OW + j * HIDDEN + h] += d_out[j] * act.hidden[h];
            d_hidden[h] += d_out[j] * net.output_weights[j][h];
        }
        grad[OB + j] += d_out[j];
    }
    for h in 0..HIDDEN {
        let dz = d_hidden[h] * (1.0 - act.hidden[h] * act.hidden[h]);
        for i in 0..INPUTS {
            grad[h * INPUTS + i] += dz * act.input[i];
        }
        grad[HB + h] += dz;
    }
    loss
}

/// Plain Adam with bias correction.
struct Adam {
    m: [f64; PARAM_COUNT],
    v: [f64; PARAM_COUNT],
    t: i32,
}

impl Default for Adam {
    fn default() -> Self {
        Self {
            m: [0.0; PARAM_COUNT],
            v: [0.0; PARAM_COUNT],
            t: 0,
        }
    }
}

impl Adam {
    const BETA1: f64 = 0.9;
    const BETA2: f64 = 0.999;
    const EPS: f64 = 1e-8;

    fn step(&mut self, params: &mut [f64; PARAM_COUNT], grad: &[f64; PARAM_COUNT], lr: f64) {
        self.t += 1;
        let c1 = 1.0 - Self::BETA1.powi(self.t);
        let c2 = 1.0 - Self::BETA2.powi(self.t);
        for i in 0..PARAM_COUNT {
            self.m[i] = Self::BETA1 * self.m[i] + (1.0 - Self::BETA1) * grad[i];
            self.v[i] = Self::BETA2 * self.v[i] + (1.0 - Self::BETA2) * grad[i] * grad[i];
            params[i] -= lr * (self.m[i] / c1) / ((self.v[i] / c2).sqrt() + Self::EPS);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::haptics::simulate_actuator;

    #[test]
    fn grid_cardinality_and_rows() {
        let m = ActuatorModel::default();
        let small = Grid {
            stiffness_steps: 2,
            offset_steps: 2,
            position_steps: 2,
        };
        let rows = generate_training_set(&m, small, Execution::Sequential).unwrap();
        assert_eq!(rows.len(), 8);
        let rows = generate_training_set(&m, Grid::default(), Execution::Parallel).unwrap();
        assert_eq!(rows.len(), 6171);
        for r in &rows {
            let cmd = ActuatorCommand::new(r.stiffness, r.offset).unwrap();
            assert_eq!(r.force, simulate_actuator(&m, cmd, r.position).unwrap());
        }
        assert_eq!(rows[0].stiffness, 0.0);
        assert_eq!(rows.last().unwrap().position, 1.0);
    }

    #[test]
    fn degenerate_grid_rejected() {
        let g = Grid {
            stiffness_steps: 11,
            offset_steps: 0,
            position_steps: 51,
        };
        assert!(matches!(
            generate_training_set(&ActuatorModel::default(), g, Execution::Sequential),
            Err(HapticsError::EmptyGrid(_))
        ));
    }

    #[test]
    fn validation_set_avoids_training_values() {
        let m = ActuatorModel::default();
        let rows = midpoint_validation_set(&m, Grid::default(), Execution::Sequential).unwrap();
        assert_eq!(rows.len(), 10 * 10 * 50);
        assert!(rows
            .iter()
            .all(|r| ((r.position * 50.0).fract() - 0.5).abs() < 1e-9));
    }

    #[test]
    fn empty_dataset() {
        let err = train_inverse_mlp(
            &[],
            &ActuatorModel::default(),
            &TrainConfig::default(),
            Execution::Sequential,
        )
        .unwrap_err();
        assert_eq!(err, HapticsError::EmptyDataset);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let model = ActuatorModel::default();
        let rows = generate_training_set(
            &model,
            Grid {
                stiffness_steps: 3,
                offset_steps: 3,
                position_steps: 5,
            },
            Execution::Sequential,
        )
        .unwrap();
        let mut net = Mlp::zeroed(Normalization::for_force_range(model.f_max), 0);
        let p0: [f64; PARAM_COUNT] = std::array::from_fn(|i| ((i * 37 % 17) as f64 - 8.0) / 10.0);
        for objective in [Objective::Targets, Objective::Composite] {
            net.set_params(&p0);
            let (_, grad) =
                loss_and_gradient(&net, &model, &rows, objective, Execution::Sequential);
            for i in 0..PARAM_COUNT {
                let h = 1e-6;
                let mut p = p0;
                p[i] += h;
                net.set_params(&p);
                let up = loss_and_gradient(&net, &model, &rows, objective, Execution::Sequential).0;
                p[i] -= 2.0 * h;
                net.set_params(&p);
                let down =
                    loss_and_gradient(&net, &model, &rows, objective, Execution::Sequential).0;
                let fd = (up - down) / (2.0 * h);
                assert!(
                    (fd - grad[i]).abs() <= 1e-6 * (1.0 + fd.abs()),
                    "param {i}: analytic {} vs numeric {fd}",
                    grad[i]
                );
            }
        }
    }

    #[test]
    fn parallel_gradient_is_bit_identical() {
        let model = ActuatorModel::default();
        let rows = generate_training_set(&model, Grid::default(), Execution::Sequential).unwrap();
        let mut net = Mlp::zeroed(Normalization::for_force_range(10.0), 0);
        net.set_params(&std::array::from_fn(|i| (i as f64 * 0.3).sin()));
        let (ls, gs) = loss_and_gradient(
            &net,
            &model,
            &rows,
            Objective::Composite,
            Execution::Sequential,
        );
        let (lp, gp) = loss_and_gradient(
            &net,
            &model,
            &rows,
            Objective::Composite,
            Execution::Parallel,
        );
        assert_eq!(ls.to_bits(), lp.to_bits());
        assert_eq!(gs.map(f64::to_bits), gp.map(f64::to_bits));
    }

    #[test]
    fn memorizes_a_single_row() {
        let model = ActuatorModel::default();
        let row = TrainingRow {
            position: 0.7,
            force: engagement_force(&model, 3.0, 0.2, 0.7),
            stiffness: 3.0,
            offset: 0.2,
        };
        let config = TrainConfig {
            restarts: 1,
            pretrain_epochs: 2000,
            epochs: 200,
            ..TrainConfig::default()
        };
        let report = train_inverse_mlp(&[row; 8], &model, &config, Execution::Sequential).unwrap();
        let cmd = crate::haptics::mlp_infer(&report.mlp, row.position, row.force).unwrap();
        assert!((cmd.stiffness - 3.0).abs() < 0.05, "{cmd:?}");
        assert!((cmd.offset - 0.2).abs() < 0.01, "{cmd:?}");
    }
}
