use serde::{Deserialize, Serialize};

use crate::calib::{CalibError, LinearMap, READING_STEP};
use crate::contour::ScanEvent;

/// Ground-truth cross-section of a limb.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Station {
    pub z_mm: f64,
    pub width_mm: f64,
    pub height_mm: f64,
}

/// Stations along a limb, read from JSON as a list of
/// `{"z_mm": .., "width_mm": .., "height_mm": ..}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArmProfile {
    pub stations: Vec<Station>,
}

impl ArmProfile {
    pub fn new(stations: Vec<Station>) -> Result<Self, String> {
        let profile = Self { stations };
        profile.validate()?;
        Ok(profile)
    }

    pub fn validate(&self) -> Result<(), String> {
        for (i, s) in self.stations.iter().enumerate() {
            if !(s.height_mm > 0.0 && s.width_mm >= s.height_mm && s.width_mm.is_finite()) {
                return Err(format!(
                    "station {i}: need width >= height > 0, got {} x {}",
                    s.width_mm, s.height_mm
                ));
            }
            if i > 0 && s.z_mm <= self.stations[i - 1].z_mm {
                return Err(format!(
                    "station {i}: positions must be strictly increasing"
                ));
            }
        }
        Ok(())
    }
}

/// Reading the glove would report for `distance`, snapped to the sensor step.
fn quantized_reading(calibration: &LinearMap, distance: f64) -> Result<f64, CalibError> {
    let raw = calibration.distance_to_reading(distance)?;
    Ok(((raw / READING_STEP).round() * READING_STEP).clamp(0.0, 1.0))
}

/// Events a user would produce scanning `profile`: per station a horizontal
/// pinch, `vertical`, a vertical pinch and `next`; then `done`.
pub fn scripted_scan_session(
    profile: &ArmProfile,
    calibration: &LinearMap,
) -> Result<Vec<ScanEvent>, CalibError> {
    let mut events = Vec::with_capacity(profile.stations.len() * 4 + 1);
    for s in &profile.stations {
        events.push(ScanEvent::pinch(quantized_reading(
            calibration,
            s.width_mm,
        )?));
        events.push(ScanEvent::command("vertical"));
        events.push(ScanEvent::pinch(quantized_reading(
            calibration,
            s.height_mm,
        )?));
        events.push(ScanEvent::command("next"));
    }
    events.push(ScanEvent::command("done"));
    Ok(events)
}
