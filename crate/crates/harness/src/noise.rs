//! Preparation and readout imperfections.
//!
//! A prepared deviation is depolarized by `p` and then both spins are
//! rotated by the same small angle about independent random axes, with the
//! angle chosen so the normalized trace distance to the ideal state equals
//! `target_distance`. Readout imperfection is a relative flip-angle error
//! on every pulse of the witness protocol.

use nalgebra::{Complex, Vector3};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use quancorr::pauli::{kron, Op2, Pauli};
use quancorr::state::{normalized_trace_distance, DeviationState, TwoQubitState};

use crate::error::{HarnessError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseConfig {
    pub enabled: bool,
    pub depolarizing: f64,
    pub target_distance: f64,
    /// Relative flip-angle error of witness pulses (pulse level only).
    pub flip_error: f64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            enabled: false,
            depolarizing: 0.01,
            target_distance: 0.1,
            flip_error: 0.0,
        }
    }
}

impl NoiseConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.depolarizing) {
            return Err(HarnessError::Config(format!("depolarizing {} outside [0, 1)", self.depolarizing)));
        }
        if !(self.target_distance.is_finite() && self.target_distance >= 0.0) {
            return Err(HarnessError::Config("target_distance must be nonnegative".into()));
        }
        if !(self.flip_error.is_finite() && self.flip_error.abs() < 0.5) {
            return Err(HarnessError::Config("flip_error must be below 0.5 in magnitude".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Perturbed {
    pub deviation: DeviationState,
    pub distance: f64,
    pub angle: f64,
}

fn axis_rotation(n: &Vector3<f64>, angle: f64) -> Op2<f64> {
    let gen = Pauli::X.matrix::<f64>() * Complex::new(n.x, 0.0)
        + Pauli::Y.matrix::<f64>() * Complex::new(n.y, 0.0)
        + Pauli::Z.matrix::<f64>() * Complex::new(n.z, 0.0);
    Op2::identity() * Complex::new((angle / 2.0).cos(), 0.0) - gen * Complex::new(0.0, (angle / 2.0).sin())
}

fn random_axis(rng: &mut impl Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::<f64>::new(rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal));
        let n = v.norm();
        if n > 1e-9 {
            return v / n;
        }
    }
}

/// Applies the preparation noise model to `ideal`.
pub fn perturb(ideal: &DeviationState, cfg: &NoiseConfig, rng: &mut impl Rng) -> Result<Perturbed> {
    let na = random_axis(rng);
    let nb = random_axis(rng);
    let shrink = Complex::new(1.0 - cfg.depolarizing, 0.0);
    let apply = |angle: f64| -> Result<DeviationState> {
        let u = kron(&axis_rotation(&na, angle), &axis_rotation(&nb, angle));
        let rotated = ideal.conjugate(&u);
        Ok(rotated.with_delta(rotated.delta().map(|z| z * shrink))?)
    };
    let distance = |angle: f64| -> Result<f64> { Ok(normalized_trace_distance(&apply(angle)?, ideal)?) };

    let target = cfg.target_distance;
    let mut lo = 0.0;
    let mut hi = None;
    if distance(0.0)? < target {
        let steps = 256;
        for k in 1..=steps {
            let a = std::f64::consts::PI * k as f64 / steps as f64;
            if distance(a)? >= target {
                hi = Some(a);
                break;
            }
            lo = a;
        }
    }
    let angle = match hi {
        Some(mut hi) => {
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if distance(mid)? < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        }
        // Depolarizing alone already reaches the target, or nothing can.
        None => lo,
    };
    let deviation = apply(angle)?;
    let distance = normalized_trace_distance(&deviation, ideal)?;
    Ok(Perturbed {
        deviation,
        distance,
        angle,
    })
}
