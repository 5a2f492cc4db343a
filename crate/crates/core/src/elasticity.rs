//! Spring-rate estimation from force/displacement traces.
//!
//! A trace records the fingertip force sensor against the spring displacement
//! `x` (relative to the free length). Hooke's law `F = k x` is fitted over the
//! whole trace; compression and release phases can also be fitted separately
//! to expose hysteresis.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::regression::{self, FitError};

/// Full-scale range of the fingertip force sensor, in newtons.
pub const FORCE_CAP_N: f64 = 10.0;

/// Displacement changes up to this size (mm) count as a plateau.
pub const DEFAULT_FLAT_TOLERANCE_MM: f64 = 0.05;

#[derive(Debug, Error, PartialEq)]
pub enum ElasticityError {
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("displacement has zero variance; the spring rate is undetermined")]
    DegenerateInput,
    #[error("trace has no {0} phase")]
    MissingPhase(&'static str),
    #[error("{name} must be positive, got {value}")]
    NonPositiveInput { name: &'static str, value: f64 },
    #[error("invalid trace at sample {index}: {reason}")]
    InvalidTrace { index: usize, reason: String },
}

impl From<FitError> for ElasticityError {
    fn from(e: FitError) -> Self {
        match e {
            FitError::TooFewPoints(n) => ElasticityError::TooFewSamples(n),
            FitError::ZeroVariance => ElasticityError::DegenerateInput,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceSample {
    /// Seconds.
    pub t: f64,
    /// Millimetres of compression.
    pub x: f64,
    /// Newtons.
    pub f: f64,
}

/// Time-ordered samples with `x >= 0` and `0 <= F <= 10 N`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ForceDisplacementTrace {
    samples: Vec<TraceSample>,
}

impl ForceDisplacementTrace {
    pub fn new(samples: Vec<TraceSample>) -> Result<Self, ElasticityError> {
        for (index, s) in samples.iter().enumerate() {
            let bad = |reason: String| ElasticityError::InvalidTrace { index, reason };
            if !(s.t.is_finite() && s.x.is_finite() && s.f.is_finite()) {
                return Err(bad("non-finite value".into()));
            }
            if s.x < 0.0 {
                return Err(bad(format!("negative displacement {}", s.x)));
            }
            if !(0.0..=FORCE_CAP_N).contains(&s.f) {
                return Err(bad(format!("force {} outside [0, {FORCE_CAP_N}] N", s.f)));
            }
            if index > 0 && s.t <= samples[index - 1].t {
                return Err(bad("timestamps must be strictly increasing".into()));
            }
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[TraceSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn into_samples(self) -> Vec<TraceSample> {
        self.samples
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpringEstimate {
    /// N/mm.
    pub k: f64,
    /// N.
    pub intercept: f64,
    pub r_squared: f64,
}

/// Least-squares `F = k x + b` over every sample of the trace.
pub fn estimate_spring_rate(
    trace: &ForceDisplacementTrace,
) -> Result<SpringEstimate, ElasticityError> {
    let fit = regression::fit(trace.samples.iter().map(|s| (s.x, s.f)))?;
    Ok(SpringEstimate {
        k: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Compression,
    Release,
    /// Displacement never left the flat tolerance band.
    Flat,
}

/// Samples `start..end` of a trace moving in one direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub direction: Direction,
    pub start: usize,
    pub end: usize,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

pub fn segment_cycles(trace: &ForceDisplacementTrace) -> Result<Vec<Segment>, ElasticityError> {
    segment_cycles_with_tolerance(trace, DEFAULT_FLAT_TOLERANCE_MM)
}

/// Splits the trace into maximal monotone displacement runs.
///
/// A reversal is registered once `x` moves more than `flat_tol` back from the
/// running extreme of the current run; samples in between (a plateau at the
/// turning point) stay with the run they follow. A leading plateau joins the
/// first run. The returned segments are contiguous and cover every sample.
pub fn segment_cycles_with_tolerance(
    trace: &ForceDisplacementTrace,
    flat_tol: f64,
) -> Result<Vec<Segment>, ElasticityError> {
    let xs: Vec<f64> = trace.samples.iter().map(|s| s.x).collect();
    if xs.len() < 2 {
        return Err(ElasticityError::TooFewSamples(xs.len()));
    }
    let mut segments = Vec::new();
    let mut start = 0;
    let mut direction = Direction::Flat;
    let mut extreme = 0;
    for (i, &x) in xs.iter().enumerate().skip(1) {
        match direction {
            Direction::Flat => {
                if x - xs[start] > flat_tol {
                    direction = Direction::Compression;
                    extreme = i;
                } else if xs[start] - x > flat_tol {
                    direction = Direction::Release;
                    extreme = i;
                }
            }
            Direction::Compression => {
                if x >= xs[extreme] {
                    extreme = i;
                } else if xs[extreme] - x > flat_tol {
                    segments.push(Segment {
                        direction,
                        start,
                        end: i,
                    });
                    start = i;
                    extreme = i;
                    direction = Direction::Release;
                }
            }
            Direction::Release => {
                if x <= xs[extreme] {
                    extreme = i;
                } else if x - xs[extreme] > flat_tol {
                    segments.push(Segment {
                        direction,
                        start,
                        end: i,
                    });
                    start = i;
                    extreme = i;
                    direction = Direction::Compression;
                }
            }
        }
    }
    segments.push(Segment {
        direction,
        start,
        end: xs.len(),
    });
    Ok(segments)
}

/// Direction-dependent spring behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HysteresisReport {
    /// Pooled slope over compression runs, N/mm.
    pub k_up: f64,
    /// Pooled slope over release runs, N/mm.
    pub k_down: f64,
    /// Mean force lost at the turning points, N.
    pub release_drop: f64,
}

pub fn analyze_hysteresis(
    trace: &ForceDisplacementTrace,
) -> Result<HysteresisReport, ElasticityError> {
    analyze_hysteresis_with_tolerance(trace, DEFAULT_FLAT_TOLERANCE_MM)
}

/// Fits compression and release runs separately.
///
/// `release_drop` averages, over every compression run directly followed by a
/// release run, the gap between the force at the compression peak and the
/// pooled release line evaluated at the peak displacement. Negative means are
/// reported as 0.
pub fn analyze_hysteresis_with_tolerance(
    trace: &ForceDisplacementTrace,
    flat_tol: f64,
) -> Result<HysteresisReport, ElasticityError> {
    let segments = segment_cycles_with_tolerance(trace, flat_tol)?;
    let samples = &trace.samples;
    let pooled = |dir: Direction| {
        segments
            .iter()
            .filter(move |s| s.direction == dir)
            .flat_map(move |s| samples[s.start..s.end].iter().map(|p| (p.x, p.f)))
    };
    if pooled(Direction::Compression).next().is_none() {
        return Err(ElasticityError::MissingPhase("compression"));
    }
    if pooled(Direction::Release).next().is_none() {
        return Err(ElasticityError::MissingPhase("release"));
    }
    let up = regression::fit(pooled(Direction::Compression))?;
    let down = regression::fit(pooled(Direction::Release))?;

    let drops: Vec<f64> = segments
        .windows(2)
        .filter(|w| {
            w[0].direction == Direction::Compression && w[1].direction == Direction::Release
        })
        .map(|w| {
            let peak = samples[w[0].start..w[0].end]
                .iter()
                .fold(None::<&TraceSample>, |best, s| match best {
                    Some(b) if b.x > s.x => Some(b),
                    _ => Some(s),
                })
                .expect("segments are non-empty");
            peak.f - (down.slope * peak.x + down.intercept)
        })
        .collect();
    let release_drop = if drops.is_empty() {
        0.0
    } else {
        (drops.iter().sum::<f64>() / drops.len() as f64).max(0.0)
    };
    Ok(HysteresisReport {
        k_up: up.slope,
        k_down: down.slope,
        release_drop,
    })
}

fn check_positive(name: &'static str, value: f64) -> Result<(), ElasticityError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(ElasticityError::NonPositiveInput { name, value })
    }
}

/// Helical compression spring rate `k = G d^4 / (8 n D^3)` in N/mm, with
/// wire diameter `d` and mean coil diameter `D` in mm and `G` in N/mm^2.
pub fn spring_rate_from_geometry(
    shear_modulus: f64,
    wire_diameter: f64,
    mean_diameter: f64,
    active_coils: f64,
) -> Result<f64, ElasticityError> {
    check_positive("shear modulus", shear_modulus)?;
    check_positive("wire diameter", wire_diameter)?;
    check_positive("mean coil diameter", mean_diameter)?;
    check_positive("active coils", active_coils)?;
    Ok(shear_modulus * wire_diameter.powi(4) / (8.0 * active_coils * mean_diameter.powi(3)))
}

/// Shear modulus implied by a measured spring rate: `G = 8 n k D^3 / d^4`.
pub fn shear_modulus(
    k: f64,
    wire_diameter: f64,
    mean_diameter: f64,
    active_coils: f64,
) -> Result<f64, ElasticityError> {
    check_positive("spring rate", k)?;
    check_positive("wire diameter", wire_diameter)?;
    check_positive("mean coil diameter", mean_diameter)?;
    check_positive("active coils", active_coils)?;
    Ok(8.0 * active_coils * k * mean_diameter.powi(3) / wire_diameter.powi(4))
}
