//! Computational core of a mixed-reality haptic design pipeline.
//!
//! The crate is organised by subsystem:
//!
//! * [`calib`] maps normalized glove position readings to fingertip distances.
//! * [`contour`] turns pinch measurements into elliptic rings, lofts them into a
//!   triangle mesh and exports OBJ text.
//! * [`elasticity`] estimates spring rates, segments compression/release cycles
//!   and quantifies hysteresis from force/displacement traces.
//! * [`haptics`] holds the simulated glove actuator, the 2-5-2 inverse network
//!   and the open/closed-loop virtual spring controllers.
//! * [`devicesim`] produces deterministic synthetic inputs (scan scripts, spring
//!   traces, frame synchronization) and reads/writes trace CSV files.
//!
//! Data-parallel loops go through [`par`], which uses rayon when the `parallel`
//! feature is enabled and falls back to plain iterators otherwise.

pub mod calib;
pub mod contour;
pub mod devicesim;
pub mod elasticity;
pub mod haptics;
pub mod par;

mod csvio;
mod regression;

pub use csvio::CsvError;

pub use calib::{CalSample, LinearMap};
pub use contour::{EllipticRing, ScanEvent, ScanPhase, ScanSession, TriMesh};
pub use elasticity::{ForceDisplacementTrace, HysteresisReport, SpringEstimate, TraceSample};
pub use haptics::{ActuatorCommand, ActuatorModel, Mlp, VirtualSpring};
pub use par::Execution;
