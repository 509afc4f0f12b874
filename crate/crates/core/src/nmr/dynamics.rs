//! Witness and correlations under relaxation.

use serde::{Deserialize, Serialize};

use crate::circuit::{witness, EvaluationMode, WitnessDirection};
use crate::correlations::{discord_epsilon, OptimizerConfig};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::state::DeviationState;

use super::channels::{thermal_unit, RelaxationChannel};
use super::params::SpinSystemParams;

/// Step of the decoherence sweep, in seconds.
pub const FIG4_DELTA_T: f64 = 0.0557;
/// Last sweep index; points are `n = 0..=FIG4_LAST_STEP`.
pub const FIG4_LAST_STEP: usize = 11;

/// One relaxed snapshot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct DynamicsPoint<T: Real = f64> {
    pub t: T,
    /// Thermal-normalized witness from the three correlation readouts.
    pub w: T,
    /// Thermal-normalized witness including the local observable.
    pub w_full: T,
    pub i: T,
    pub q: T,
    pub c: T,
    pub deviation: DeviationState<T>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct DynamicsSeries<T: Real = f64> {
    pub points: Vec<DynamicsPoint<T>>,
}

impl<T: Real> DynamicsSeries<T> {
    pub const CSV_HEADER: [&'static str; 5] = ["t_s", "W", "I", "Q", "C"];

    pub fn times(&self) -> Vec<T> {
        self.points.iter().map(|p| p.t).collect()
    }

    pub fn csv_records(&self) -> Vec<[String; 5]> {
        self.points
            .iter()
            .map(|p| [p.t, p.w, p.i, p.q, p.c].map(|v| v.to_string()))
            .collect()
    }

    /// First time at which `value` drops below `threshold`.
    pub fn first_below(&self, value: impl Fn(&DynamicsPoint<T>) -> T, threshold: T) -> Option<T> {
        self.points.iter().find(|p| value(p) < threshold).map(|p| p.t)
    }
}

/// Relaxes `rho0` for `t_n = n·delta_t`, `n = 0..=last_step`, and evaluates
/// the circuit-mode witness and the ε-expansion correlations at each time.
pub fn dynamics_sweep<T: Real>(
    rho0: &DeviationState<T>,
    delta_t: f64,
    last_step: usize,
    params: &SpinSystemParams,
    dir: &WitnessDirection<T>,
    cfg: &OptimizerConfig,
) -> Result<DynamicsSeries<T>> {
    if !(delta_t.is_finite() && delta_t > 0.0) {
        return Err(Error::BadParameter(format!("sweep step {delta_t} must be positive")));
    }
    let unit = thermal_unit(rho0.epsilon());
    let step = RelaxationChannel::new(params, delta_t, rho0.epsilon())?;
    let mut state = rho0.clone();
    let mut points = Vec::with_capacity(last_step + 1);
    for n in 0..=last_step {
        if n > 0 {
            state = step.apply_deviation(&state)?;
        }
        let outcome = witness(&state, dir, EvaluationMode::Circuit)?.scaled(unit);
        let corr = discord_epsilon(&state, cfg)?;
        points.push(DynamicsPoint {
            t: T::lit(n as f64 * delta_t),
            w: outcome.correlations_only(),
            w_full: outcome.w,
            i: corr.mutual_info,
            q: corr.quantum,
            c: corr.classical,
            deviation: state.clone(),
        });
    }
    Ok(DynamicsSeries { points })
}
