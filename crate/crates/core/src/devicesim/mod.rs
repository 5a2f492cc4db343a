//! Deterministic stand-ins for the glove, the tracker and the human operator.

mod io;
mod rigid;
mod scan;
mod spring;

pub use io::{load_trace, save_trace, trace_to_csv, TraceIoError, TRACE_HEADER};
pub use rigid::{sync_frames, GloveState, RigidError, RigidTransform, ORTHONORMAL_TOL};
pub use scan::{scripted_scan_session, ArmProfile, Station};
pub use spring::{synth_spring_trace, triangle_trajectory, SpringNoise, SynthSpec, Trajectory};
