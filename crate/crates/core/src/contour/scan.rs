use serde::{Deserialize, Serialize};

use super::{ContourError, EllipticRing, DEFAULT_VERTEX_COUNT};
use crate::calib::LinearMap;

/// Axial gap between consecutive rings.
pub const DEFAULT_RING_SPACING_MM: f64 = 75.0;

/// One step of a scan script, as ingested from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ScanEvent {
    /// Thumb and index fingertip placed on opposite sides of the limb.
    Pinch { reading: f64 },
    /// Spoken command: `vertical`, `next` or `done`.
    Command { token: String },
}

impl ScanEvent {
    pub fn pinch(reading: f64) -> Self {
        ScanEvent::Pinch { reading }
    }

    pub fn command(token: &str) -> Self {
        ScanEvent::Command {
            token: token.to_owned(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanPhase {
    AwaitHorizontal,
    AwaitVertical,
    Done,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSession {
    pub rings: Vec<EllipticRing>,
    pub phase: ScanPhase,
    pub ring_spacing: f64,
    pub vertex_count: usize,
    pub pending_width: Option<f64>,
    pub pending_height: Option<f64>,
    pub calibration: LinearMap,
}

impl ScanSession {
    pub fn new(calibration: LinearMap) -> Self {
        Self {
            rings: Vec::new(),
            phase: ScanPhase::AwaitHorizontal,
            ring_spacing: DEFAULT_RING_SPACING_MM,
            vertex_count: DEFAULT_VERTEX_COUNT,
            pending_width: None,
            pending_height: None,
            calibration,
        }
    }

    pub fn with_ring_spacing(mut self, spacing: f64) -> Result<Self, ContourError> {
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(ContourError::InvalidRing(format!(
                "ring spacing must be positive, got {spacing}"
            )));
        }
        self.ring_spacing = spacing;
        Ok(self)
    }

    pub fn with_vertex_count(mut self, n: usize) -> Result<Self, ContourError> {
        if n < 3 {
            return Err(ContourError::InvalidRingSize(n));
        }
        self.vertex_count = n;
        Ok(self)
    }

    /// Feeds a whole script through [`scan_step`].
    pub fn replay<'a>(
        self,
        events: impl IntoIterator<Item = &'a ScanEvent>,
    ) -> Result<Self, ContourError> {
        events.into_iter().try_fold(self, scan_step)
    }
}

enum Token {
    Vertical,
    Next,
    Done,
}

fn parse_token(token: &str) -> Result<Token, ContourError> {
    match token.trim().to_ascii_lowercase().as_str() {
        "vertical" => Ok(Token::Vertical),
        "next" => Ok(Token::Next),
        "done" => Ok(Token::Done),
        _ => Err(ContourError::UnknownToken(token.to_owned())),
    }
}

fn violation(msg: &str) -> ContourError {
    ContourError::ProtocolViolation(msg.to_owned())
}

/// Advances the scan state machine by one event.
///
/// A pinch overwrites the axis currently being fitted, so the user may adjust
/// before confirming. `next` closes the ring at `index * ring_spacing`; if the
/// vertical capture came out wider than the horizontal one the axes are
/// swapped so that `semi_major >= semi_minor`.
pub fn scan_step(mut session: ScanSession, event: &ScanEvent) -> Result<ScanSession, ContourError> {
    if session.phase == ScanPhase::Done {
        return Err(violation("scan already finished"));
    }
    match event {
        ScanEvent::Pinch { reading } => {
            let distance = session.calibration.reading_to_distance(*reading)?;
            if distance <= 0.0 {
                return Err(ContourError::InvalidRing(format!(
                    "pinch distance {distance} mm must be positive"
                )));
            }
            match session.phase {
                ScanPhase::AwaitHorizontal => session.pending_width = Some(distance),
                ScanPhase::AwaitVertical => session.pending_height = Some(distance),
                ScanPhase::Done => unreachable!(),
            }
        }
        ScanEvent::Command { token } => match (parse_token(token)?, session.phase) {
            (Token::Vertical, ScanPhase::AwaitHorizontal) => {
                if session.pending_width.is_none() {
                    return Err(violation("`vertical` before the horizontal pinch"));
                }
                session.phase = ScanPhase::AwaitVertical;
            }
            (Token::Vertical, _) => return Err(violation("`vertical` said twice for one ring")),
            (Token::Next, ScanPhase::AwaitVertical) => {
                let (Some(width), Some(height)) = (session.pending_width, session.pending_height)
                else {
                    return Err(violation("`next` before the vertical pinch"));
                };
                let (major, minor) = if height > width {
                    (height, width)
                } else {
                    (width, height)
                };
                let axial = session.rings.len() as f64 * session.ring_spacing;
                session.rings.push(EllipticRing::new(
                    major / 2.0,
                    minor / 2.0,
                    axial,
                    session.vertex_count,
                )?);
                session.pending_width = None;
                session.pending_height = None;
                session.phase = ScanPhase::AwaitHorizontal;
            }
            (Token::Next, _) => return Err(violation("`next` before both axes were captured")),
            (Token::Done, ScanPhase::AwaitHorizontal) => {
                if session.pending_width.is_some() {
                    return Err(violation("`done` with an unfinished ring"));
                }
                session.phase = ScanPhase::Done;
            }
            (Token::Done, _) => return Err(violation("`done` with an unfinished ring")),
        },
    }
    Ok(session)
}
