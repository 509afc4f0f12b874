use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Heteronuclear two-spin system: hydrogen is qubit `a`, carbon qubit `b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpinSystemParams {
    /// Scalar coupling `J` in Hz.
    pub j_coupling: f64,
    pub t1_h: f64,
    pub t1_c: f64,
    /// Total transverse decay time, including the `T₁` contribution.
    pub t2s_h: f64,
    pub t2s_c: f64,
    /// Calibrated π/2 pulse lengths in seconds.
    pub pulse_pi2_h: f64,
    pub pulse_pi2_c: f64,
    pub epsilon: f64,
    /// `ω_H / ω_C`.
    pub gamma_ratio: f64,
    /// Rotating-frame offsets in Hz. Zero on resonance.
    pub offset_h: f64,
    pub offset_c: f64,
}

impl Default for SpinSystemParams {
    fn default() -> Self {
        Self {
            j_coupling: 215.1,
            t1_h: 2.5,
            t1_c: 7.0,
            t2s_h: 0.31,
            t2s_c: 0.12,
            pulse_pi2_h: 7.4e-6,
            pulse_pi2_c: 9.6e-6,
            epsilon: crate::state::DEFAULT_EPSILON,
            gamma_ratio: 3.98,
            offset_h: 0.0,
            offset_c: 0.0,
        }
    }
}

impl SpinSystemParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("j_coupling", self.j_coupling),
            ("t1_h", self.t1_h),
            ("t1_c", self.t1_c),
            ("t2s_h", self.t2s_h),
            ("t2s_c", self.t2s_c),
            ("pulse_pi2_h", self.pulse_pi2_h),
            ("pulse_pi2_c", self.pulse_pi2_c),
            ("epsilon", self.epsilon),
            ("gamma_ratio", self.gamma_ratio),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::BadParameter(format!("{name} must be finite and positive, got {v}")));
            }
        }
        for (name, v) in [("offset_h", self.offset_h), ("offset_c", self.offset_c)] {
            if !v.is_finite() {
                return Err(Error::BadParameter(format!("{name} must be finite")));
            }
        }
        // A transverse decay slower than half the longitudinal rate needs negative dephasing.
        for (name, t2, t1) in [("h", self.t2s_h, self.t1_h), ("c", self.t2s_c, self.t1_c)] {
            if t2 > 2.0 * t1 {
                return Err(Error::BadParameter(format!("t2s_{name} = {t2} exceeds 2·t1_{name} = {}", 2.0 * t1)));
            }
        }
        if 2.0 * self.epsilon * (1.0 + 1.0 / self.gamma_ratio) > 1.0 {
            return Err(Error::BadParameter("epsilon too large for a positive thermal state".into()));
        }
        Ok(())
    }

    /// `1/T₂* − 1/(2T₁)` per qubit.
    pub fn dephasing_rates(&self) -> (f64, f64) {
        (
            1.0 / self.t2s_h - 0.5 / self.t1_h,
            1.0 / self.t2s_c - 0.5 / self.t1_c,
        )
    }
}
