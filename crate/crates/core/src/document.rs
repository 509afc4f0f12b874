//! JSON state documents.
//!
//! Two shapes are accepted, distinguished by their keys:
//!
//! ```json
//! {"epsilon": 1e-5, "delta_re": [[...4]...4], "delta_im": [[...4]...4]}
//! {"bloch": {"a": [0,0,0], "b": [0,0,0], "c": [1,1,-1]}}
//! ```

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::bloch::{from_bloch, BlochSpec};
use crate::error::{Error, Result};
use crate::pauli::Op4;
use crate::scalar::Real;
use crate::state::{DensityMatrix, DeviationState};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochDocument {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub c: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum StateDocument {
    Deviation {
        epsilon: f64,
        delta_re: [[f64; 4]; 4],
        delta_im: [[f64; 4]; 4],
    },
    Bloch {
        bloch: BlochDocument,
    },
}

impl StateDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_deviation<T: Real>(dev: &DeviationState<T>) -> Self {
        let d = dev.delta();
        StateDocument::Deviation {
            epsilon: dev.epsilon().as_f64(),
            delta_re: std::array::from_fn(|r| std::array::from_fn(|c| d[(r, c)].re.as_f64())),
            delta_im: std::array::from_fn(|r| std::array::from_fn(|c| d[(r, c)].im.as_f64())),
        }
    }

    pub fn from_bloch_spec<T: Real>(spec: &BlochSpec<T>) -> Self {
        let v = |x: &nalgebra::Vector3<T>| [x[0].as_f64(), x[1].as_f64(), x[2].as_f64()];
        StateDocument::Bloch {
            bloch: BlochDocument {
                a: v(&spec.a),
                b: v(&spec.b),
                c: v(&spec.c),
            },
        }
    }

    fn bloch_spec<T: Real>(doc: &BlochDocument) -> BlochSpec<T> {
        let conv = |x: [f64; 3]| x.map(T::lit);
        BlochSpec::new(conv(doc.a), conv(doc.b), conv(doc.c))
    }

    /// The full, validated density matrix.
    pub fn density<T: Real>(&self) -> Result<DensityMatrix<T>> {
        match self {
            StateDocument::Deviation { .. } => self.deviation(T::lit(1.0))?.compose(),
            StateDocument::Bloch { bloch } => from_bloch(&Self::bloch_spec(bloch)),
        }
    }

    /// The deviation representation. Deviation documents carry their own ε;
    /// Bloch documents are full states and are re-expressed at `epsilon`.
    pub fn deviation<T: Real>(&self, epsilon: T) -> Result<DeviationState<T>> {
        match self {
            StateDocument::Deviation {
                epsilon,
                delta_re,
                delta_im,
            } => {
                let m = Op4::from_fn(|r, c| Complex::new(T::lit(delta_re[r][c]), T::lit(delta_im[r][c])));
                DeviationState::new(T::lit(*epsilon), m)
            }
            StateDocument::Bloch { .. } => DeviationState::extract(&self.density()?, epsilon),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{pauli_pair, Pauli};
    use crate::state::DEFAULT_EPSILON;

    #[test]
    fn parses_both_shapes() {
        let bloch = StateDocument::from_json(r#"{"bloch": {"a":[0,0,0], "b":[0,0,0], "c":[1,1,-1]}}"#).unwrap();
        let rho: DensityMatrix = bloch.density().unwrap();
        assert!((rho.entries()[(1, 2)].re - 0.5).abs() < 1e-15);

        let dev = DeviationState::new(DEFAULT_EPSILON, -pauli_pair::<f64>(Pauli::Z, Pauli::Z)).unwrap();
        let text = StateDocument::from_deviation(&dev).to_json().unwrap();
        let back: DeviationState = StateDocument::from_json(&text).unwrap().deviation(1.0).unwrap();
        assert_eq!(back, dev);
    }

    #[test]
    fn rejects_malformed() {
        assert!(StateDocument::from_json(r#"{"bloch": {"a":[0,0], "b":[0,0,0], "c":[0,0,0]}}"#).is_err());
        assert!(StateDocument::from_json(r#"{"epsilon": 1e-5}"#).is_err());
        assert!(StateDocument::from_json(r#"{"bloch": {"a":[0,0,0], "b":[0,0,0], "c":[0,0,0]}, "x": 1}"#).is_err());
        let bad = StateDocument::from_json(r#"{"bloch": {"a":[0,0,0], "b":[0,0,0], "c":[1.5,0,0]}}"#).unwrap();
        assert!(matches!(bad.density::<f64>(), Err(Error::NotAState { .. })));
    }
}
