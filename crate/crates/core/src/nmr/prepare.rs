//! Initial states of the experiment.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bloch::BlochSpec;
use crate::error::{Error, Result};
use crate::pauli::{self, Op4};
use crate::scalar::Real;
use crate::state::{normalized_trace_distance, DeviationState};

use super::channels::{thermal_deviation, thermal_state};
use super::params::SpinSystemParams;
use super::propagate::apply_sequence;
use super::pulse::{pseudo_epr_sequence, pseudo_pure_11_sequence, PulseEvent};

/// Largest normalized trace distance a noiseless pulse-level preparation may have.
pub const PULSE_LEVEL_LIMIT: f64 = 0.02;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    /// Bell-diagonal with quantum correlations, `c = (2, 2, −2)`.
    #[serde(rename = "qc")]
    Qc,
    /// Bell-diagonal with classical correlations only, `c = (0, 0, −4)`.
    #[serde(rename = "cc")]
    Cc,
    Thermal,
    #[serde(rename = "pseudo_pure_11")]
    PseudoPure11,
}

impl StateKind {
    pub const ALL: [StateKind; 4] = [StateKind::Qc, StateKind::Cc, StateKind::Thermal, StateKind::PseudoPure11];

    pub fn as_str(self) -> &'static str {
        match self {
            StateKind::Qc => "qc",
            StateKind::Cc => "cc",
            StateKind::Thermal => "thermal",
            StateKind::PseudoPure11 => "pseudo_pure_11",
        }
    }
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StateKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qc" => Ok(StateKind::Qc),
            "cc" => Ok(StateKind::Cc),
            "thermal" | "t" => Ok(StateKind::Thermal),
            "pseudo_pure_11" | "pp11" => Ok(StateKind::PseudoPure11),
            _ => Err(Error::UnknownKind(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PreparationLevel {
    /// Inject the target deviation directly.
    #[default]
    Deviation,
    /// Run the preparation pulse sequence from the thermal state.
    Pulse,
}

/// The ideal deviation `Δρ` for each kind.
pub fn target_deviation<T: Real>(kind: StateKind, params: &SpinSystemParams) -> Op4<T> {
    let quarter = pauli::cr(T::lit(0.25));
    let bell = |c: [f64; 3]| BlochSpec::bell_diagonal(c.map(T::lit)).traceless_operator().map(|z| z * quarter);
    match kind {
        StateKind::Qc => bell([2.0, 2.0, -2.0]),
        StateKind::Cc => bell([0.0, 0.0, -4.0]),
        StateKind::Thermal => thermal_deviation(params),
        // Twice |11⟩⟨11| − 𝕀/4, which the pseudo-EPR gate maps onto the QC target.
        StateKind::PseudoPure11 => BlochSpec::new([0.0, 0.0, -1.0].map(T::lit), [0.0, 0.0, -1.0].map(T::lit), [0.0, 0.0, 1.0].map(T::lit))
            .traceless_operator()
            .map(|z| z * pauli::cr(T::lit(0.5))),
    }
}

/// Outcome of a pulse-level preparation.
#[derive(Clone, Debug)]
pub struct PulsePreparation<T: Real = f64> {
    /// Sequence output rescaled to the target amplitude.
    pub deviation: DeviationState<T>,
    /// Sequence output as produced.
    pub raw: DeviationState<T>,
    /// Amplitude of the raw output relative to the target.
    pub amplitude: T,
    /// Normalized trace distance of `deviation` to the target.
    pub distance: T,
    pub events: Vec<PulseEvent>,
}

pub fn preparation_sequence(kind: StateKind, params: &SpinSystemParams) -> Result<Vec<PulseEvent>> {
    let g = 1.0 / params.gamma_ratio;
    match kind {
        StateKind::Thermal => Ok(Vec::new()),
        StateKind::PseudoPure11 => Ok(pseudo_pure_11_sequence(g)),
        StateKind::Qc => {
            let mut seq = pseudo_pure_11_sequence(g);
            seq.extend(pseudo_epr_sequence());
            Ok(seq)
        }
        StateKind::Cc => Err(Error::UnsupportedPreparation("the classically correlated state".into())),
    }
}

/// Runs the preparation pulses on the thermal state.
///
/// Unitaries and dephasing cannot raise the polarization, so the output
/// carries the target pattern at a reduced amplitude; it is rescaled by
/// the least-squares amplitude before comparison with the target.
pub fn prepare_pulse_level<T: Real>(kind: StateKind, params: &SpinSystemParams) -> Result<PulsePreparation<T>> {
    params.validate()?;
    let events = preparation_sequence(kind, params)?;
    let raw = apply_sequence(&thermal_state::<T>(params)?, &events, params)?;
    let target = target_deviation::<T>(kind, params);
    let amplitude = pauli::trace_product(raw.delta(), &target) / pauli::trace_product(&target, &target);
    let rescaled = raw.delta().map(|z| z / pauli::cr(amplitude));
    let deviation = DeviationState::new(raw.epsilon(), rescaled)?;
    let ideal = DeviationState::new(raw.epsilon(), target)?;
    let distance = normalized_trace_distance(&deviation, &ideal)?;
    if distance.as_f64() > PULSE_LEVEL_LIMIT {
        return Err(Error::PreparationMismatch {
            kind: kind.to_string(),
            distance: distance.as_f64(),
            limit: PULSE_LEVEL_LIMIT,
        });
    }
    Ok(PulsePreparation {
        deviation,
        raw,
        amplitude,
        distance,
        events,
    })
}

/// Initial state at `params.epsilon`.
pub fn prepare_state<T: Real>(kind: StateKind, params: &SpinSystemParams, level: PreparationLevel) -> Result<DeviationState<T>> {
    params.validate()?;
    match level {
        PreparationLevel::Deviation => DeviationState::new(T::lit(params.epsilon), target_deviation(kind, params)),
        PreparationLevel::Pulse => Ok(prepare_pulse_level(kind, params)?.deviation),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::PauliCoefficients;

    #[test]
    fn deviation_level_targets() {
        let p = SpinSystemParams::default();
        let qc = prepare_state::<f64>(StateKind::Qc, &p, PreparationLevel::Deviation).unwrap();
        let t = PauliCoefficients::of(qc.delta()).correlations;
        assert!((t[(0, 0)] - 2.0).abs() < 1e-15 && (t[(1, 1)] - 2.0).abs() < 1e-15 && (t[(2, 2)] + 2.0).abs() < 1e-15);
        let cc = prepare_state::<f64>(StateKind::Cc, &p, PreparationLevel::Deviation).unwrap();
        assert!((PauliCoefficients::of(cc.delta()).correlations[(2, 2)] + 4.0).abs() < 1e-15);
        assert!("bogus".parse::<StateKind>().is_err());
        assert_eq!("QC".parse::<StateKind>().unwrap(), StateKind::Qc);
    }

    #[test]
    fn pulse_level_matches_targets() {
        let p = SpinSystemParams::default();
        for kind in [StateKind::Qc, StateKind::PseudoPure11, StateKind::Thermal] {
            let prep = prepare_pulse_level::<f64>(kind, &p).unwrap();
            assert!(prep.distance < 1e-9, "{kind}: {}", prep.distance);
        }
        let qc = prepare_pulse_level::<f64>(StateKind::Qc, &p).unwrap();
        assert!((qc.amplitude - 1.0 / p.gamma_ratio).abs() < 1e-9);
        assert!(matches!(
            prepare_state::<f64>(StateKind::Cc, &p, PreparationLevel::Pulse),
            Err(Error::UnsupportedPreparation(_))
        ));
    }

    #[test]
    fn strong_carbon_branch() {
        let p = SpinSystemParams {
            gamma_ratio: 1.5,
            ..Default::default()
        };
        let prep = prepare_pulse_level::<f64>(StateKind::PseudoPure11, &p).unwrap();
        assert!(prep.distance < 1e-9);
        assert!((prep.amplitude - 0.5).abs() < 1e-9);
    }
}
