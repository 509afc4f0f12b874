use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use quancorr::circuit::Normalization;
use quancorr::correlations::OptimizerConfig;
use quancorr::document::StateDocument;
use quancorr::nmr::{SpinSystemParams, StateKind, FIG4_DELTA_T, FIG4_LAST_STEP};

use crate::error::{HarnessError, Result};
use crate::noise::NoiseConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Fig2,
    Fig3,
    Fig4,
    Custom,
}

impl Experiment {
    pub fn as_str(self) -> &'static str {
        match self {
            Experiment::Fig2 => "fig2",
            Experiment::Fig3 => "fig3",
            Experiment::Fig4 => "fig4",
            Experiment::Custom => "custom",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub delta_t: f64,
    pub last_step: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            delta_t: FIG4_DELTA_T,
            last_step: FIG4_LAST_STEP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub states: Vec<StateKind>,
    pub seed: u64,
    pub normalization: Normalization,
    pub optimizer: OptimizerConfig,
    pub params: SpinSystemParams,
    pub pulse_level: bool,
    pub noise: NoiseConfig,
    pub sweep: SweepConfig,
    /// State analysed by the custom experiment.
    pub state: Option<StateDocument>,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment: Experiment::Fig2,
            states: vec![StateKind::Qc, StateKind::Cc, StateKind::Thermal],
            seed: 0,
            normalization: Normalization::Thermal,
            optimizer: OptimizerConfig::default(),
            params: SpinSystemParams::default(),
            pulse_level: false,
            noise: NoiseConfig::default(),
            sweep: SweepConfig::default(),
            state: None,
            out: None,
        }
    }
}

impl ExperimentConfig {
    pub fn for_experiment(experiment: Experiment) -> Self {
        Self {
            experiment,
            ..Default::default()
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))
    }

    /// Checks everything a run depends on before any work starts.
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.optimizer.validate()?;
        self.noise.validate()?;
        if self.states.is_empty() && matches!(self.experiment, Experiment::Fig2 | Experiment::Fig3) {
            return Err(HarnessError::Config("no states selected".into()));
        }
        if !(self.sweep.delta_t.is_finite() && self.sweep.delta_t > 0.0) {
            return Err(HarnessError::Config(format!("sweep delta_t {} must be positive", self.sweep.delta_t)));
        }
        if self.experiment == Experiment::Custom {
            let doc = self
                .state
                .as_ref()
                .ok_or_else(|| HarnessError::Config("custom experiment needs a state document".into()))?;
            doc.density::<f64>()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_config() {
        let cfg: ExperimentConfig =
            serde_json::from_str(r#"{"experiment":"fig4","seed":3,"params":{"t2s_h":0.2},"states":["qc"]}"#).unwrap();
        assert_eq!(cfg.experiment, Experiment::Fig4);
        assert_eq!(cfg.params.t2s_h, 0.2);
        assert_eq!(cfg.params.t1_h, 2.5);
        cfg.validate().unwrap();
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"sed":3}"#).is_err());
    }

    #[test]
    fn custom_needs_state() {
        let cfg = ExperimentConfig::for_experiment(Experiment::Custom);
        assert!(matches!(cfg.validate(), Err(HarnessError::Config(_))));
    }
}
