//! Affine calibration between normalized position-sensor readings and the
//! thumb-to-index fingertip distance.
//!
//! Readings live in `[0, 1]` (normalized between full extension and full
//! flexion). A fixed finger pose is assumed, so a single straight line fitted
//! by least squares is the whole model.

use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::csvio::{self, CsvError};
use crate::regression::{self, FitError};

/// Columns of a calibration CSV file.
pub const SAMPLE_HEADER: [&str; 2] = ["reading", "distance_mm"];

/// Default stand-in map (mm per unit reading, mm).
pub const DEFAULT_SLOPE_MM: f64 = 86.2;
pub const DEFAULT_INTERCEPT_MM: f64 = 3.1;

/// Sensor quantization step used when calibrating and scripting pinches.
pub const READING_STEP: f64 = 0.01;

#[derive(Debug, Error, PartialEq)]
pub enum CalibError {
    #[error("need at least 2 calibration samples, got {0}")]
    TooFewSamples(usize),
    #[error("all readings are identical; the line is undetermined")]
    DegenerateInput,
    #[error("reading {0} is outside [0, 1]")]
    OutOfRange(f64),
    #[error("distance {distance} mm maps to reading {reading}, outside [0, 1]")]
    UnreachableDistance { distance: f64, reading: f64 },
    #[error("invalid calibration sample: {0}")]
    InvalidSample(String),
    #[error("invalid linear map: {0}")]
    InvalidMap(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalSample {
    pub reading: f64,
    pub distance: f64,
}

impl CalSample {
    pub fn new(reading: f64, distance: f64) -> Result<Self, CalibError> {
        if !(0.0..=1.0).contains(&reading) {
            return Err(CalibError::InvalidSample(format!(
                "reading {reading} outside [0, 1]"
            )));
        }
        if !distance.is_finite() || distance < 0.0 {
            return Err(CalibError::InvalidSample(format!(
                "distance {distance} must be finite and non-negative"
            )));
        }
        Ok(Self { reading, distance })
    }
}

/// `distance = slope * reading + intercept`, valid over `reading_range`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearMap {
    pub slope: f64,
    pub intercept: f64,
    pub reading_range: [f64; 2],
    pub r_squared: f64,
}

impl Default for LinearMap {
    fn default() -> Self {
        Self::new(DEFAULT_SLOPE_MM, DEFAULT_INTERCEPT_MM).expect("default map is valid")
    }
}

impl LinearMap {
    /// A hand-specified map over the full reading range.
    pub fn new(slope: f64, intercept: f64) -> Result<Self, CalibError> {
        let map = Self {
            slope,
            intercept,
            reading_range: [0.0, 1.0],
            r_squared: 1.0,
        };
        map.validate()?;
        Ok(map)
    }

    pub fn validate(&self) -> Result<(), CalibError> {
        if !self.slope.is_finite() || self.slope == 0.0 {
            return Err(CalibError::InvalidMap(format!(
                "slope {} must be finite and nonzero",
                self.slope
            )));
        }
        if !self.intercept.is_finite() {
            return Err(CalibError::InvalidMap("intercept must be finite".into()));
        }
        let [lo, hi] = self.reading_range;
        if !(0.0 <= lo && lo < hi && hi <= 1.0) {
            return Err(CalibError::InvalidMap(format!(
                "reading range [{lo}, {hi}] must satisfy 0 <= lo < hi <= 1"
            )));
        }
        if !(0.0..=1.0).contains(&self.r_squared) {
            return Err(CalibError::InvalidMap(format!(
                "r_squared {} outside [0, 1]",
                self.r_squared
            )));
        }
        Ok(())
    }

    pub fn reading_to_distance(&self, reading: f64) -> Result<f64, CalibError> {
        if !(0.0..=1.0).contains(&reading) {
            return Err(CalibError::OutOfRange(reading));
        }
        Ok(self.slope * reading + self.intercept)
    }

    pub fn distance_to_reading(&self, distance: f64) -> Result<f64, CalibError> {
        let reading = (distance - self.intercept) / self.slope;
        if !(0.0..=1.0).contains(&reading) {
            return Err(CalibError::UnreachableDistance { distance, reading });
        }
        Ok(reading)
    }

    /// Distances reachable with readings in `[0, 1]`, as `(min, max)`.
    pub fn distance_span(&self) -> (f64, f64) {
        let a = self.intercept;
        let b = self.slope + self.intercept;
        (a.min(b), a.max(b))
    }

    /// Distance change corresponding to one reading quantum.
    pub fn quantum(&self) -> f64 {
        self.slope.abs() * READING_STEP
    }
}

/// Least-squares line through the samples.
pub fn fit_line(samples: &[CalSample]) -> Result<LinearMap, CalibError> {
    if samples.len() < 2 {
        return Err(CalibError::TooFewSamples(samples.len()));
    }
    let fit =
        regression::fit(samples.iter().map(|s| (s.reading, s.distance))).map_err(|e| match e {
            FitError::TooFewPoints(n) => CalibError::TooFewSamples(n),
            FitError::ZeroVariance => CalibError::DegenerateInput,
        })?;
    if fit.slope == 0.0 {
        return Err(CalibError::DegenerateInput);
    }
    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
            (lo.min(s.reading), hi.max(s.reading))
        });
    Ok(LinearMap {
        slope: fit.slope,
        intercept: fit.intercept,
        reading_range: [lo, hi],
        r_squared: fit.r_squared,
    })
}

#[derive(Debug, Error)]
pub enum LoadSamplesError {
    #[error(transparent)]
    Csv(#[from] CsvError),
    #[error("line {line}: {source}")]
    Sample { line: u64, source: CalibError },
}

/// Reads a `reading,distance_mm` CSV.
pub fn load_samples<R: Read>(reader: R) -> Result<Vec<CalSample>, LoadSamplesError> {
    csvio::read_table(reader, SAMPLE_HEADER)?
        .into_iter()
        .map(|(line, [reading, distance])| {
            CalSample::new(reading, distance)
                .map_err(|source| LoadSamplesError::Sample { line, source })
        })
        .collect()
}

pub fn save_samples<W: std::io::Write>(writer: W, samples: &[CalSample]) -> std::io::Result<()> {
    csvio::write_table(
        writer,
        SAMPLE_HEADER,
        samples.iter().map(|s| [s.reading, s.distance]),
    )
}
