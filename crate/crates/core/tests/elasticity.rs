//! Spring recovery, hysteresis analysis and the coil-spring material formula.

use haptic_core::devicesim::{synth_spring_trace, SpringNoise, SynthSpec};
use haptic_core::elasticity::{
    analyze_hysteresis, estimate_spring_rate, segment_cycles, shear_modulus,
    spring_rate_from_geometry, Direction, ForceDisplacementTrace, TraceSample,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Compression along `F = 0.12 x` to 20 mm, a 1 N drop at the turn, then
/// release along `F = 0.07 x`, repeated.
fn two_slope_trace(cycles: usize) -> ForceDisplacementTrace {
    let mut samples = Vec::new();
    let mut t = 0.0;
    let mut push = |x: f64, f: f64| {
        samples.push(TraceSample { t, x, f });
        t += 0.01;
    };
    for _ in 0..cycles {
        for i in 0..=40 {
            let x = i as f64 * 0.5;
            push(x, 0.12 * x);
        }
        for i in 1..=40 {
            let x = 20.0 - i as f64 * 0.5;
            push(x, 0.07 * x);
        }
    }
    ForceDisplacementTrace::new(samples).unwrap()
}

#[test]
fn two_slope_trace_is_recovered_exactly() {
    for cycles in [1, 3] {
        let report = analyze_hysteresis(&two_slope_trace(cycles)).unwrap();
        assert!((report.k_up - 0.12).abs() < 1e-9, "{report:?}");
        assert!((report.k_down - 0.07).abs() < 1e-9, "{report:?}");
        assert!((report.release_drop - 1.0).abs() < 1e-9, "{report:?}");
    }
}

#[test]
fn segments_alternate() {
    let segs = segment_cycles(&two_slope_trace(3)).unwrap();
    let dirs: Vec<Direction> = segs.iter().map(|s| s.direction).collect();
    assert_eq!(dirs.len(), 6);
    for pair in dirs.chunks(2) {
        assert_eq!(pair, [Direction::Compression, Direction::Release]);
    }
    assert_eq!(segs.last().unwrap().end, 243);
}

#[test]
fn reference_rates_recovered_within_five_percent() {
    let noise = SpringNoise {
        sigma_f: 0.05,
        sigma_x: 0.1,
    };
    for (i, k) in [0.243, 0.49, 0.6, 0.643, 0.75].into_iter().enumerate() {
        let spec = SynthSpec::new(k, 3, 10.0, noise, 100 + i as u64);
        let est = estimate_spring_rate(&synth_spring_trace(&spec).unwrap()).unwrap();
        assert!((est.k - k).abs() / k < 0.05, "k {k}: estimated {}", est.k);
    }
}

#[test]
fn material_formula_round_trips_on_100_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let g = rng.random_range(20_000.0..90_000.0);
        let d = rng.random_range(0.2..5.0);
        let coil = rng.random_range(3.0..60.0);
        let n = rng.random_range(2.0..40.0);
        let k = spring_rate_from_geometry(g, d, coil, n).unwrap();
        let back = shear_modulus(k, d, coil, n).unwrap();
        assert!((back - g).abs() / g < 1e-9, "{g} -> {k} -> {back}");
    }
}

proptest! {
    #[test]
    fn hysteresis_recovers_arbitrary_slopes(up in 0.05f64..0.3, ratio in 0.2f64..0.9, peak in 5.0f64..30.0) {
        let down = up * ratio;
        let steps = 50;
        let mut samples = Vec::new();
        for i in 0..=steps {
            let x = peak * i as f64 / steps as f64;
            samples.push((x, up * x));
        }
        for i in 1..=steps {
            let x = peak * (steps - i) as f64 / steps as f64;
            samples.push((x, down * x));
        }
        prop_assume!(up * peak <= 10.0);
        let trace = ForceDisplacementTrace::new(
            samples.iter().enumerate().map(|(i, &(x, f))| TraceSample { t: i as f64, x, f }).collect(),
        ).unwrap();
        let r = analyze_hysteresis(&trace).unwrap();
        prop_assert!((r.k_up - up).abs() < 1e-9);
        prop_assert!((r.k_down - down).abs() < 1e-9);
        prop_assert!((r.release_drop - (up - down) * peak).abs() < 1e-9);
    }

    #[test]
    fn release_drop_is_never_negative(seed in 0u64..1000) {
        let spec = SynthSpec::new(0.3, 2, 15.0, SpringNoise { sigma_f: 0.1, sigma_x: 0.0 }, seed);
        let r = analyze_hysteresis(&synth_spring_trace(&spec).unwrap()).unwrap();
        prop_assert!(r.release_drop >= 0.0);
    }

    #[test]
    fn shear_modulus_rejects_non_positive(k in -1.0f64..=0.0) {
        prop_assert!(shear_modulus(k, 1.0, 10.0, 10.0).is_err());
    }
}
