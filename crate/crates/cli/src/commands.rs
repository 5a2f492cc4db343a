use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use haptic_core::calib::{fit_line, load_samples};
use haptic_core::contour::{
    build_cast_mesh, split_halves, write_obj, ScanEvent, ScanSession, TriMesh,
};
use haptic_core::devicesim::{
    load_trace, save_trace, scripted_scan_session, synth_spring_trace, triangle_trajectory,
    ArmProfile, SpringNoise, SynthSpec,
};
use haptic_core::elasticity::{
    analyze_hysteresis_with_tolerance, estimate_spring_rate, ForceDisplacementTrace,
};
use haptic_core::haptics::{
    composite_stats, generate_training_set, midpoint_validation_set, run_interaction,
    train_inverse_mlp, ControlMode, Mlp, VirtualSpring,
};
use haptic_core::Execution;
use serde::Serialize;

use crate::config::Config;
use crate::{Cli, Command, InputError};

pub fn run(cli: Cli) -> Result<()> {
    let config = Config::load(cli.config.as_deref())?;
    let seed = cli.seed.unwrap_or(config.seed);
    let exec = if cli.parallel {
        Execution::Parallel
    } else {
        Execution::Sequential
    };
    match cli.command {
        Command::Calibrate { samples, out } => calibrate(&samples, &out),
        Command::Scan {
            script,
            out,
            halves,
            open_seam,
            summary,
        } => scan(
            &config,
            &script,
            &out,
            halves,
            open_seam,
            summary.as_deref(),
        ),
        Command::EstimateSpring { trace, out } => estimate_spring(&config, &trace, &out),
        Command::AnalyzeHysteresis { trace, out } => analyze(&config, &trace, &out),
        Command::TrainController { out, summary } => {
            train(&config, seed, exec, &out, summary.as_deref())
        }
        Command::Simulate {
            mlp,
            mode,
            k,
            out,
            summary,
        } => simulate(&config, &mlp, mode, k, &out, &summary),
        Command::SynthTrace {
            k,
            cycles,
            peak_mm,
            sigma_f,
            sigma_x,
            samples_per_stroke,
            out,
        } => {
            let spec = SynthSpec {
                samples_per_stroke,
                ..SynthSpec::new(k, cycles, peak_mm, SpringNoise { sigma_f, sigma_x }, seed)
            };
            synth(&spec, &out)
        }
        Command::ScriptScan { profile, out } => script_scan(&config, &profile, &out),
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(BufReader::new(file))
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

fn input_error(path: &Path, err: impl std::fmt::Display) -> InputError {
    InputError(format!("{}: {err}", path.display()))
}

fn read_trace(path: &Path) -> Result<ForceDisplacementTrace> {
    Ok(load_trace(open(path)?).map_err(|e| input_error(path, e))?)
}

fn calibrate(samples: &Path, out: &Path) -> Result<()> {
    let samples_data = load_samples(open(samples)?).map_err(|e| input_error(samples, e))?;
    let map = fit_line(&samples_data)?;
    write_json(out, &map)?;
    println!(
        "fitted {} samples: distance = {:.4} * reading + {:.4} mm (r^2 = {:.6})",
        samples_data.len(),
        map.slope,
        map.intercept,
        map.r_squared
    );
    Ok(())
}

#[derive(Serialize)]
struct ScanSummary {
    rings: usize,
    vertices: usize,
    faces: usize,
    closed_seam: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    halves: Option<[HalfSummary; 2]>,
}

#[derive(Serialize)]
struct HalfSummary {
    path: PathBuf,
    vertices: usize,
    faces: usize,
}

/// `cast.obj` -> `cast.half1.obj`.
fn half_path(out: &Path, index: usize) -> PathBuf {
    let stem = out.file_stem().unwrap_or_default().to_string_lossy();
    out.with_file_name(format!("{stem}.half{index}.obj"))
}

fn scan(
    config: &Config,
    script: &Path,
    out: &Path,
    halves: bool,
    open_seam: bool,
    summary_path: Option<&Path>,
) -> Result<()> {
    let events: Vec<ScanEvent> =
        serde_json::from_str(&read_text(script)?).map_err(|e| input_error(script, e))?;
    let session = ScanSession::new(config.calibration()?)
        .with_ring_spacing(config.ring_spacing_mm)?
        .with_vertex_count(config.vertex_count)?;
    let session = session.replay(&events)?;
    let close = config.close_seam && !open_seam;
    let mesh = build_cast_mesh(&session, config.vertex_count, close)?;
    write_text(out, &write_obj(&mesh))?;
    let halves = if halves {
        let (a, b) = split_halves(&mesh);
        let write_half = |index: usize, half: &TriMesh| -> Result<HalfSummary> {
            let path = half_path(out, index);
            write_text(&path, &write_obj(half))?;
            Ok(HalfSummary {
                path,
                vertices: half.vertices.len(),
                faces: half.faces.len(),
            })
        };
        Some([write_half(1, &a)?, write_half(2, &b)?])
    } else {
        None
    };
    let summary = ScanSummary {
        rings: session.rings.len(),
        vertices: mesh.vertices.len(),
        faces: mesh.faces.len(),
        closed_seam: close,
        halves,
    };
    println!(
        "{} rings -> {} vertices, {} faces written to {}",
        summary.rings,
        summary.vertices,
        summary.faces,
        out.display()
    );
    if let Some([a, b]) = &summary.halves {
        println!(
            "halves: {} ({} faces), {} ({} faces)",
            a.path.display(),
            a.faces,
            b.path.display(),
            b.faces
        );
    }
    if let Some(path) = summary_path {
        write_json(path, &summary)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SpringReport {
    k: f64,
    intercept: f64,
    r_squared: f64,
    /// Absent when the trace lacks a compression or release run.
    k_up: Option<f64>,
    k_down: Option<f64>,
    release_drop: Option<f64>,
}

fn spring_report(config: &Config, trace: &ForceDisplacementTrace) -> Result<SpringReport> {
    let est = estimate_spring_rate(trace)?;
    let hysteresis = analyze_hysteresis_with_tolerance(trace, config.flat_tolerance_mm).ok();
    Ok(SpringReport {
        k: est.k,
        intercept: est.intercept,
        r_squared: est.r_squared,
        k_up: hysteresis.map(|h| h.k_up),
        k_down: hysteresis.map(|h| h.k_down),
        release_drop: hysteresis.map(|h| h.release_drop),
    })
}

fn estimate_spring(config: &Config, trace_path: &Path, out: &Path) -> Result<()> {
    let trace = read_trace(trace_path)?;
    let report = spring_report(config, &trace)?;
    write_json(out, &report)?;
    println!(
        "k = {:.4} N/mm (r^2 = {:.4}) from {} samples",
        report.k,
        report.r_squared,
        trace.len()
    );
    if let (Some(up), Some(down)) = (report.k_up, report.k_down) {
        println!("compression {up:.4} N/mm, release {down:.4} N/mm");
    }
    Ok(())
}

fn analyze(config: &Config, trace_path: &Path, out: &Path) -> Result<()> {
    let trace = read_trace(trace_path)?;
    let report = analyze_hysteresis_with_tolerance(&trace, config.flat_tolerance_mm)?;
    write_json(out, &report)?;
    println!(
        "compression {:.4} N/mm, release {:.4} N/mm, release drop {:.4} N",
        report.k_up, report.k_down, report.release_drop
    );
    Ok(())
}

#[derive(Serialize)]
struct TrainSummary {
    seed: u64,
    training_rows: usize,
    validation_rms_n: f64,
    validation_max_n: f64,
    heldout_rows: usize,
    heldout_rms_n: f64,
    heldout_max_n: f64,
}

fn train(
    config: &Config,
    seed: u64,
    exec: Execution,
    out: &Path,
    summary_path: Option<&Path>,
) -> Result<()> {
    let model = config.actuator();
    let rows = generate_training_set(&model, config.grid(), exec)?;
    let report = train_inverse_mlp(&rows, &model, &config.train_config(seed), exec)?;
    let held_out = midpoint_validation_set(&model, config.grid(), exec)?;
    let stats = composite_stats(&report.mlp, &model, &held_out, exec)?;
    write_text(out, &report.mlp.to_json())?;
    let metrics = report
        .mlp
        .metrics
        .clone()
        .expect("trained networks carry metrics");
    let summary = TrainSummary {
        seed,
        training_rows: rows.len(),
        validation_rms_n: metrics.validation_rms_n,
        validation_max_n: metrics.validation_max_n,
        heldout_rows: stats.count,
        heldout_rms_n: stats.rms,
        heldout_max_n: stats.max,
    };
    println!(
        "trained on {} rows: validation RMS {:.4} N; held-out grid RMS {:.4} N, max {:.4} N",
        summary.training_rows,
        summary.validation_rms_n,
        summary.heldout_rms_n,
        summary.heldout_max_n
    );
    if let Some(path) = summary_path {
        write_json(path, &summary)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SimulationSummary {
    mode: ControlMode,
    k_target: f64,
    ki: f64,
    samples: usize,
    tracking_rms_n: f64,
    estimate: SpringReport,
}

fn simulate(
    config: &Config,
    mlp_path: &Path,
    mode: ControlMode,
    k: Option<f64>,
    out: &Path,
    summary_path: &Path,
) -> Result<()> {
    let mlp = Mlp::from_json(&read_text(mlp_path)?).map_err(|e| input_error(mlp_path, e))?;
    let base = config.virtual_spring()?;
    let spring = match k {
        Some(k) => {
            VirtualSpring::new(k, base.calibration).map_err(|e| InputError(e.to_string()))?
        }
        None => base,
    };
    let trajectory = triangle_trajectory(
        config.trajectory_cycles,
        config.trajectory_peak,
        config.trajectory_steps_per_stroke,
        config.trajectory_dt_s,
    );
    let run = run_interaction(
        &spring,
        &mlp,
        &config.actuator(),
        &trajectory,
        mode,
        config.ki,
    )?;
    save_trace(
        File::create(out).with_context(|| format!("writing {}", out.display()))?,
        &run.trace,
    )?;
    let summary = SimulationSummary {
        mode,
        k_target: spring.k,
        ki: config.ki,
        samples: run.trace.len(),
        tracking_rms_n: run.tracking_rms(),
        estimate: spring_report(config, &run.trace)?,
    };
    write_json(summary_path, &summary)?;
    println!(
        "{:?} loop, k = {}: estimated {:.4} N/mm, tracking RMS {:.4} N",
        mode, spring.k, summary.estimate.k, summary.tracking_rms_n
    );
    if let (Some(up), Some(down)) = (summary.estimate.k_up, summary.estimate.k_down) {
        println!("compression {up:.4} N/mm, release {down:.4} N/mm");
    }
    Ok(())
}

fn synth(spec: &SynthSpec, out: &Path) -> Result<()> {
    let trace = synth_spring_trace(spec).map_err(|e| InputError(e.to_string()))?;
    save_trace(
        File::create(out).with_context(|| format!("writing {}", out.display()))?,
        &trace,
    )?;
    println!(
        "{} samples of a {} N/mm spring written to {}",
        trace.len(),
        spec.k,
        out.display()
    );
    Ok(())
}

fn script_scan(config: &Config, profile_path: &Path, out: &Path) -> Result<()> {
    let profile: ArmProfile = serde_json::from_str(&read_text(profile_path)?)
        .map_err(|e| input_error(profile_path, e))?;
    profile
        .validate()
        .map_err(|e| input_error(profile_path, e))?;
    let events = scripted_scan_session(&profile, &config.calibration()?)?;
    write_json(out, &events)?;
    println!(
        "{} stations -> {} events",
        profile.stations.len(),
        events.len()
    );
    Ok(())
}
