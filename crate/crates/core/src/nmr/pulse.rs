//! Pulse events and the fixed sequences used by the experiment.
//!
//! Sequences are listed in time order: the first event acts first.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Channel {
    #[serde(rename = "H")]
    H,
    #[serde(rename = "C")]
    C,
    #[serde(rename = "both")]
    Both,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PulseModel {
    /// Ideal rotation, no evolution during the pulse.
    #[default]
    Instantaneous,
    /// rf and coupling Hamiltonians integrated over the calibrated length.
    Finite,
}

/// Rotation phases: `x`, `y`, `−x`, `−y`.
pub mod phase {
    use super::*;
    pub const X: f64 = 0.0;
    pub const Y: f64 = FRAC_PI_2;
    pub const MINUS_X: f64 = PI;
    pub const MINUS_Y: f64 = 3.0 * FRAC_PI_2;
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PulseEvent {
    Rf {
        channel: Channel,
        angle: f64,
        phase: f64,
        #[serde(default)]
        duration_model: PulseModel,
    },
    /// Free evolution for `j_units / J` seconds.
    Delay { j_units: f64 },
    Gradient,
}

impl PulseEvent {
    pub fn rf(channel: Channel, angle: f64, phase: f64) -> Self {
        PulseEvent::Rf {
            channel,
            angle,
            phase,
            duration_model: PulseModel::Instantaneous,
        }
    }

    pub fn pi2(channel: Channel, phase: f64) -> Self {
        Self::rf(channel, FRAC_PI_2, phase)
    }

    pub fn delay(j_units: f64) -> Self {
        PulseEvent::Delay { j_units }
    }

    pub fn with_model(self, model: PulseModel) -> Self {
        match self {
            PulseEvent::Rf {
                channel, angle, phase, ..
            } => PulseEvent::Rf {
                channel,
                angle,
                phase,
                duration_model: model,
            },
            other => other,
        }
    }

    /// Scales rf angles by `1 + kappa`, modelling flip-angle miscalibration.
    pub fn miscalibrated(self, kappa: f64) -> Self {
        match self {
            PulseEvent::Rf {
                channel,
                angle,
                phase,
                duration_model,
            } => PulseEvent::Rf {
                channel,
                angle: angle * (1.0 + kappa),
                phase,
                duration_model,
            },
            other => other,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PulseEvent::Rf { angle, phase, .. } => {
                if !(angle.is_finite() && angle > 0.0 && angle <= TAU + 1e-12) {
                    return Err(Error::InvalidPulse(format!("rf angle {angle} outside (0, 2π]")));
                }
                if !phase.is_finite() {
                    return Err(Error::InvalidPulse("rf phase is not finite".into()));
                }
            }
            PulseEvent::Delay { j_units } => {
                if !(j_units.is_finite() && j_units >= 0.0) {
                    return Err(Error::InvalidPulse(format!("delay {j_units} is negative or not finite")));
                }
            }
            PulseEvent::Gradient => {}
        }
        Ok(())
    }
}

pub fn validate_sequence(events: &[PulseEvent]) -> Result<()> {
    events.iter().try_for_each(PulseEvent::validate)
}

/// Parses and validates a JSON list of events.
pub fn sequence_from_json(text: &str) -> Result<Vec<PulseEvent>> {
    let events: Vec<PulseEvent> = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    validate_sequence(&events)?;
    Ok(events)
}

/// `(π/2)_y (π/2)_x (π/2)_{−y}` on one channel: a z rotation by π/2.
pub fn composite_z_sequence(channel: Channel) -> Vec<PulseEvent> {
    vec![
        PulseEvent::pi2(channel, phase::Y),
        PulseEvent::pi2(channel, phase::X),
        PulseEvent::pi2(channel, phase::MINUS_Y),
    ]
}

/// CNOT with hydrogen as control, from one `3/(2J)` coupling period.
pub fn composite_cnot_sequence() -> Vec<PulseEvent> {
    use Channel::{C, H};
    vec![
        PulseEvent::pi2(C, phase::Y),
        PulseEvent::delay(1.5),
        PulseEvent::pi2(C, phase::MINUS_X),
        PulseEvent::pi2(C, phase::MINUS_Y),
        PulseEvent::pi2(C, phase::MINUS_X),
        PulseEvent::pi2(C, phase::Y),
        PulseEvent::pi2(H, phase::MINUS_Y),
        PulseEvent::pi2(H, phase::X),
        PulseEvent::pi2(H, phase::Y),
    ]
}

/// Local rotation before the CNOT in witness step `step` (1..=3).
pub fn witness_rotation_sequence(step: usize) -> Result<Vec<PulseEvent>> {
    match step {
        1 => Ok(Vec::new()),
        2 => {
            let mut seq = composite_z_sequence(Channel::H);
            seq.extend(composite_z_sequence(Channel::C));
            Ok(seq)
        }
        3 => Ok(vec![PulseEvent::pi2(Channel::Both, phase::Y)]),
        other => Err(Error::BadIndex(other)),
    }
}

/// Full pulse list for witness step `step`: local rotation, then CNOT.
pub fn witness_step_sequence(step: usize) -> Result<Vec<PulseEvent>> {
    let mut seq = witness_rotation_sequence(step)?;
    seq.extend(composite_cnot_sequence());
    Ok(seq)
}

/// Thermal state to pseudo-pure `|11⟩`, for carbon/hydrogen polarization
/// ratio `g = γ_C/γ_H`.
///
/// A hydrogen nutation and a `1/(2J)` coupling period move part of the
/// hydrogen polarization into `σ_zσ_z`; a second hydrogen rotation and a
/// gradient keep the longitudinal parts, balanced so that hydrogen,
/// carbon and `σ_zσ_z` terms have equal weight. When carbon is the
/// stronger term it is first reduced by a carbon rotation and gradient.
/// A closing π on both spins flips the pattern onto `|11⟩`.
pub fn pseudo_pure_11_sequence(g: f64) -> Vec<PulseEvent> {
    let mut seq = Vec::new();
    let (theta, beta) = if 2.0 * g <= 1.0 {
        let alpha = (2.0 * g).acos();
        ((FRAC_PI_2 + alpha) / 2.0, (FRAC_PI_2 - alpha) / 2.0)
    } else {
        seq.push(PulseEvent::rf(Channel::C, (1.0 / (2.0 * g)).acos(), phase::X));
        seq.push(PulseEvent::Gradient);
        (PI / 4.0, PI / 4.0)
    };
    seq.push(PulseEvent::rf(Channel::H, theta, phase::X));
    seq.push(PulseEvent::delay(0.5));
    if beta > 0.0 {
        seq.push(PulseEvent::rf(Channel::H, beta, phase::MINUS_Y));
    }
    seq.push(PulseEvent::Gradient);
    seq.push(PulseEvent::rf(Channel::Both, PI, phase::X));
    seq
}

/// Pseudo-pure `|11⟩` to the triplet-like Bell-diagonal state.
pub fn pseudo_epr_sequence() -> Vec<PulseEvent> {
    let mut seq = vec![PulseEvent::pi2(Channel::H, phase::MINUS_Y)];
    seq.extend(composite_cnot_sequence());
    seq
}
