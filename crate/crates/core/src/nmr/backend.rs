use crate::circuit::ProtocolBackend;
use crate::error::Result;
use crate::scalar::Real;
use crate::state::TwoQubitState;

use super::params::SpinSystemParams;
use super::propagate::apply_sequence;
use super::pulse::{witness_step_sequence, PulseModel};

/// Runs the witness steps as rf pulse sequences.
#[derive(Clone, Debug)]
pub struct PulseBackend {
    pub params: SpinSystemParams,
    pub model: PulseModel,
    /// Relative flip-angle error applied to every rf pulse.
    pub flip_error: f64,
}

impl PulseBackend {
    pub fn new(params: SpinSystemParams) -> Self {
        Self {
            params,
            model: PulseModel::Instantaneous,
            flip_error: 0.0,
        }
    }
}

impl<T: Real> ProtocolBackend<T> for PulseBackend {
    fn protocol_state<S: TwoQubitState<T>>(&self, state: &S, step: usize) -> Result<S> {
        let events: Vec<_> = witness_step_sequence(step)?
            .into_iter()
            .map(|e| e.with_model(self.model).miscalibrated(self.flip_error))
            .collect();
        apply_sequence(state, &events, &self.params)
    }
}
