use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use quancorr::circuit::{Normalization, WitnessReport};
use quancorr::correlations::CorrelationReport;
use quancorr::document::StateDocument;
use quancorr::nmr::{DynamicsSeries, PreparationLevel};

use crate::config::Experiment;
use crate::error::{HarnessError, Result};
use crate::noise::NoiseConfig;

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything computed for one state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateReport {
    pub state_id: String,
    pub preparation: PreparationLevel,
    pub witness: WitnessReport,
    pub witness_direct: WitnessReport,
    /// ε-expansion correlations, `(ε²/ln2)` bits.
    pub correlations: CorrelationReport,
    /// Exact correlations in bits, when the state is analysed as a full density matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correlations_exact: Option<CorrelationReport>,
    pub deviation: StateDocument,
    /// Normalized trace distance to the ideal target.
    pub trace_distance: f64,
    /// Pulse-level output amplitude relative to the target.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    /// Rotation-error angle of the preparation noise, radians.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation_error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DynamicsReport {
    pub t_s: Vec<f64>,
    #[serde(rename = "W")]
    pub w: Vec<f64>,
    #[serde(rename = "W_full")]
    pub w_full: Vec<f64>,
    #[serde(rename = "I")]
    pub i: Vec<f64>,
    #[serde(rename = "Q")]
    pub q: Vec<f64>,
    #[serde(rename = "C")]
    pub c: Vec<f64>,
    pub witness_threshold: f64,
    /// First time with `W` below the threshold.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w_crossing_s: Option<f64>,
    /// First time with `Q` below 1% of its initial value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_crossing_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_crossing_s: Option<f64>,
    pub deviations: Vec<StateDocument>,
}

impl DynamicsReport {
    pub const WITNESS_THRESHOLD: f64 = 0.05;

    pub fn from_series(series: &DynamicsSeries<f64>) -> Self {
        let pts = &series.points;
        let col = |f: fn(&quancorr::nmr::DynamicsPoint<f64>) -> f64| pts.iter().map(f).collect::<Vec<_>>();
        let (q0, c0) = pts.first().map_or((0.0, 0.0), |p| (p.q, p.c));
        Self {
            t_s: col(|p| p.t),
            w: col(|p| p.w),
            w_full: col(|p| p.w_full),
            i: col(|p| p.i),
            q: col(|p| p.q),
            c: col(|p| p.c),
            witness_threshold: Self::WITNESS_THRESHOLD,
            w_crossing_s: series.first_below(|p| p.w, Self::WITNESS_THRESHOLD),
            q_crossing_s: series.first_below(|p| p.q, 0.01 * q0),
            c_crossing_s: series.first_below(|p| p.c, 0.01 * c0),
            deviations: pts.iter().map(|p| StateDocument::from_deviation(&p.deviation)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub toolkit_version: String,
    pub experiment: Experiment,
    pub seed: u64,
    pub normalization: Normalization,
    pub epsilon: f64,
    pub pulse_level: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseConfig>,
    pub states: Vec<StateReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dynamics: Option<DynamicsReport>,
    /// Largest `|<O_i>_circuit − <O_i>_direct| / ε` over all states.
    pub max_mode_deviation: f64,
    /// Wall-clock time per stage. Kept out of the written files so that
    /// outputs depend only on the configuration.
    #[serde(skip)]
    pub timing: Vec<(String, Duration)>,
}

impl RunReport {
    pub fn state(&self, id: &str) -> Option<&StateReport> {
        self.states.iter().find(|s| s.state_id == id)
    }

    /// Every number in the report is finite.
    pub fn check_finite(&self) -> Result<()> {
        let value = serde_json::to_value(self)?;
        // serde_json writes non-finite floats as null; absent options are skipped.
        fn walk(v: &serde_json::Value) -> bool {
            match v {
                serde_json::Value::Null => false,
                serde_json::Value::Array(a) => a.iter().all(walk),
                serde_json::Value::Object(o) => o.values().all(walk),
                _ => true,
            }
        }
        if walk(&value) {
            Ok(())
        } else {
            Err(HarnessError::Config("report contains a non-finite value".into()))
        }
    }
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    let file = fs::File::create(path).map_err(|e| HarnessError::io(path, e))?;
    Ok(csv::Writer::from_writer(file))
}

fn write_witness(path: &Path, states: &[StateReport]) -> Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["state_id", "O1", "O2", "O3", "O4", "W", "mode", "normalization"])?;
    for s in states {
        for r in [&s.witness, &s.witness_direct] {
            let mode = if r.mode == quancorr::circuit::EvaluationMode::Circuit { "circuit" } else { "direct" };
            let norm = if r.normalization == Normalization::Thermal { "thermal" } else { "raw" };
            w.write_record([
                s.state_id.clone(),
                r.o[0].to_string(),
                r.o[1].to_string(),
                r.o[2].to_string(),
                r.o[3].to_string(),
                r.w.to_string(),
                mode.to_string(),
                norm.to_string(),
            ])?;
        }
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

fn write_correlations(path: &Path, states: &[StateReport]) -> Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(CorrelationReport::<f64>::CSV_HEADER)?;
    for s in states {
        w.write_record(s.correlations.csv_record(&s.state_id))?;
        if let Some(exact) = &s.correlations_exact {
            w.write_record(exact.csv_record(&s.state_id))?;
        }
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

fn write_deviations(path: &Path, states: &[StateReport]) -> Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["state_id", "row", "col", "re", "im"])?;
    for s in states {
        if let StateDocument::Deviation { delta_re, delta_im, .. } = &s.deviation {
            for r in 0..4 {
                for c in 0..4 {
                    w.write_record([
                        s.state_id.clone(),
                        r.to_string(),
                        c.to_string(),
                        delta_re[r][c].to_string(),
                        delta_im[r][c].to_string(),
                    ])?;
                }
            }
        }
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

fn write_distances(path: &Path, states: &[StateReport]) -> Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["state_id", "trace_distance"])?;
    for s in states {
        w.write_record([s.state_id.clone(), s.trace_distance.to_string()])?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

fn write_dynamics(path: &Path, d: &DynamicsReport) -> Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(DynamicsSeries::<f64>::CSV_HEADER)?;
    for k in 0..d.t_s.len() {
        w.write_record([d.t_s[k], d.w[k], d.i[k], d.q[k], d.c[k]].map(|v| v.to_string()))?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

/// Writes the experiment's tables and JSON report into `dir`.
pub fn write_outputs(report: &RunReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let name = report.experiment.as_str();
    let path = |suffix: &str| dir.join(format!("{name}_{suffix}"));
    let mut written = Vec::new();
    match report.experiment {
        Experiment::Fig2 | Experiment::Custom => {
            write_witness(&path("witness.csv"), &report.states)?;
            write_correlations(&path("correlations.csv"), &report.states)?;
            written.extend([path("witness.csv"), path("correlations.csv")]);
        }
        Experiment::Fig3 => {
            write_deviations(&path("deviation.csv"), &report.states)?;
            write_distances(&path("distance.csv"), &report.states)?;
            written.extend([path("deviation.csv"), path("distance.csv")]);
        }
        Experiment::Fig4 => {
            if let Some(d) = &report.dynamics {
                write_dynamics(&path("dynamics.csv"), d)?;
                written.push(path("dynamics.csv"));
            }
        }
    }
    let json = path("report.json");
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    fs::write(&json, text).map_err(|e| HarnessError::io(&json, e))?;
    written.push(json);
    Ok(written)
}
