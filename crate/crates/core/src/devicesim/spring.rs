use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::elasticity::{ElasticityError, ForceDisplacementTrace, TraceSample, FORCE_CAP_N};

/// Gaussian sensor noise, standard deviations in N and mm.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SpringNoise {
    pub sigma_f: f64,
    pub sigma_x: f64,
}

/// A user squeezing a real spring `cycles` times up to `peak_x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    /// N/mm.
    pub k: f64,
    pub cycles: usize,
    /// mm.
    pub peak_x: f64,
    pub noise: SpringNoise,
    pub seed: u64,
    pub samples_per_stroke: usize,
    /// Seconds between samples.
    pub dt: f64,
}

impl SynthSpec {
    pub fn new(k: f64, cycles: usize, peak_x: f64, noise: SpringNoise, seed: u64) -> Self {
        Self {
            k,
            cycles,
            peak_x,
            noise,
            seed,
            samples_per_stroke: 100,
            dt: 0.01,
        }
    }
}

/// `(t, value)` pairs.
pub type Trajectory = Vec<(f64, f64)>;

/// Symmetric triangle wave from 0 up to `peak` and back, `cycles` times, with
/// `steps_per_stroke` samples per rise or fall (`2 * cycles * steps + 1`
/// samples in total).
pub fn triangle_trajectory(
    cycles: usize,
    peak: f64,
    steps_per_stroke: usize,
    dt: f64,
) -> Trajectory {
    let steps = steps_per_stroke.max(1);
    let period = 2 * steps;
    (0..=cycles * period)
        .map(|i| {
            let phase = i % period;
            let level = if phase <= steps {
                phase
            } else {
                period - phase
            };
            (i as f64 * dt, peak * level as f64 / steps as f64)
        })
        .collect()
}

/// Triangle-wave compression of a Hooke spring with independent Gaussian
/// noise on both channels. Noisy values are clipped to `x >= 0` and
/// `0 <= F <= 10 N`.
pub fn synth_spring_trace(spec: &SynthSpec) -> Result<ForceDisplacementTrace, ElasticityError> {
    let positive = |name: &'static str, value: f64| {
        if value > 0.0 && value.is_finite() {
            Ok(())
        } else {
            Err(ElasticityError::NonPositiveInput { name, value })
        }
    };
    positive("spring rate", spec.k)?;
    positive("peak displacement", spec.peak_x)?;
    positive("sample interval", spec.dt)?;
    positive("cycles", spec.cycles as f64)?;
    positive("samples per stroke", spec.samples_per_stroke as f64)?;
    let noise = |sigma: f64, name: &'static str| {
        if sigma >= 0.0 && sigma.is_finite() {
            Ok(Normal::new(0.0, sigma).expect("finite sigma"))
        } else {
            Err(ElasticityError::NonPositiveInput { name, value: sigma })
        }
    };
    let force_noise = noise(spec.noise.sigma_f, "force noise")?;
    let disp_noise = noise(spec.noise.sigma_x, "displacement noise")?;

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let samples = triangle_trajectory(spec.cycles, spec.peak_x, spec.samples_per_stroke, spec.dt)
        .into_iter()
        .map(|(t, x)| {
            let f = spec.k * x;
            let x_meas = (x + disp_noise.sample(&mut rng)).max(0.0);
            let f_meas = (f + force_noise.sample(&mut rng)).clamp(0.0, FORCE_CAP_N);
            TraceSample {
                t,
                x: x_meas,
                f: f_meas,
            }
        })
        .collect();
    ForceDisplacementTrace::new(samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elasticity::estimate_spring_rate;

    #[test]
    fn triangle_shape() {
        let tr = triangle_trajectory(2, 1.0, 4, 0.5);
        assert_eq!(tr.len(), 17);
        let xs: Vec<f64> = tr.iter().map(|p| p.1).collect();
        assert_eq!(&xs[..9], &[0.0, 0.25, 0.5, 0.75, 1.0, 0.75, 0.5, 0.25, 0.0]);
        assert_eq!(tr[16], (8.0, 0.0));
    }

    #[test]
    fn noiseless_trace_is_exact() {
        let spec = SynthSpec::new(0.243, 3, 30.0, SpringNoise::default(), 1);
        let est = estimate_spring_rate(&synth_spring_trace(&spec).unwrap()).unwrap();
        assert!((est.k - 0.243).abs() < 1e-12);
        assert!((est.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn seeded_noise_is_deterministic() {
        let noise = SpringNoise {
            sigma_f: 0.05,
            sigma_x: 0.1,
        };
        let a = synth_spring_trace(&SynthSpec::new(0.243, 3, 30.0, noise, 7)).unwrap();
        let b = synth_spring_trace(&SynthSpec::new(0.243, 3, 30.0, noise, 7)).unwrap();
        let c = synth_spring_trace(&SynthSpec::new(0.243, 3, 30.0, noise, 8)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_bad_spec() {
        let mut spec = SynthSpec::new(0.0, 3, 30.0, SpringNoise::default(), 1);
        assert!(synth_spring_trace(&spec).is_err());
        spec.k = 0.2;
        spec.cycles = 0;
        assert!(synth_spring_trace(&spec).is_err());
        spec.cycles = 1;
        spec.noise.sigma_f = -1.0;
        assert!(synth_spring_trace(&spec).is_err());
    }
}
