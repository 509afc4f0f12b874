use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a state: minimum eigenvalue {min_eigenvalue:e} is below the PSD tolerance")]
    NotAState { min_eigenvalue: f64 },
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("trace is {trace} (expected {expected})")]
    BadTrace { trace: f64, expected: f64 },
    #[error("epsilon must be finite and positive, got {0}")]
    BadEpsilon(f64),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid probability distribution: {0}")]
    BadDistribution(String),
    #[error("deviation states carry different epsilon ({0:e} vs {1:e})")]
    EpsilonMismatch(f64, f64),
    #[error("witness step index {0} outside 1..=3")]
    BadIndex(usize),
    #[error("direction vector is not unit norm (norm {0})")]
    NotUnitVector(f64),
    #[error("gate `{label}` is not unitary (deviation {deviation:e})")]
    NotUnitary { label: String, deviation: f64 },
    #[error("optimizer did not converge within {iterations} iterations")]
    OptimizerFailure { iterations: usize },
    #[error("pulse sequence `{label}` reaches fidelity {fidelity} below threshold {threshold}")]
    SequenceMismatch {
        label: String,
        fidelity: f64,
        threshold: f64,
    },
    #[error("invalid pulse event: {0}")]
    InvalidPulse(String),
    #[error("sequence contains a gradient and has no unitary propagator")]
    NonUnitarySequence,
    #[error("invalid spin-system parameter: {0}")]
    BadParameter(String),
    #[error("unknown state kind `{0}`")]
    UnknownKind(String),
    #[error("{0} is not available at pulse level")]
    UnsupportedPreparation(String),
    #[error("pulse-level {kind} preparation is {distance} from its target (limit {limit})")]
    PreparationMismatch { kind: String, distance: f64, limit: f64 },
    #[error("malformed document: {0}")]
    Document(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
