//! JSON map specifications.
//!
//! ```json
//! {"type":"dense_network","layers":[{"weights":[[10]],"bias":[-4],"activation":"sigmoid"}]}
//! {"type":"builtin","name":"example3"}
//! {"type":"symmetric","inner":{"type":"builtin","name":"zigzag"}}
//! ```
//!
//! Weights are row-major. `capped_relu` layers take an optional `"beta"`
//! (default 1); a network may set `"strict_domain": true`.

use serde::{Deserialize, Serialize};

use super::{Activation, Builtin, DenseLayer, MapHandle, Network};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MapSpec {
    DenseNetwork {
        layers: Vec<LayerSpec>,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        strict_domain: bool,
    },
    Builtin {
        name: String,
    },
    Symmetric {
        inner: Box<MapSpec>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerSpec {
    pub weights: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
    pub activation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
}

impl From<&DenseLayer> for LayerSpec {
    fn from(layer: &DenseLayer) -> Self {
        let beta = match layer.activation() {
            Activation::CappedRelu { beta } => Some(beta),
            _ => None,
        };
        Self {
            weights: layer.weights().to_vec(),
            bias: layer.bias().to_vec(),
            activation: layer.activation().name().to_string(),
            beta,
        }
    }
}

impl MapSpec {
    pub fn build(&self) -> Result<MapHandle> {
        match self {
            Self::DenseNetwork { layers, strict_domain } => {
                let layers = layers
                    .iter()
                    .map(|l| {
                        let activation = Activation::from_name(&l.activation, l.beta)?;
                        DenseLayer::new(l.weights.clone(), l.bias.clone(), activation)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(MapHandle::Network(Network::new(layers)?.with_strict_domain(*strict_domain)))
            }
            Self::Builtin { name } => Ok(MapHandle::Builtin(Builtin::from_name(name)?)),
            Self::Symmetric { inner } => Ok(MapHandle::symmetric(inner.build()?)),
        }
    }
}

pub fn parse_map_spec(text: &str) -> Result<MapHandle> {
    let spec: MapSpec = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    spec.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{example3, Mapping};
    use crate::vector::Vector;

    #[test]
    fn builtin_lookup() {
        let m = parse_map_spec(r#"{"type":"builtin","name":"example3"}"#).unwrap();
        assert_eq!((m.in_dim(), m.out_dim()), (1, 1));
        assert!(matches!(
            parse_map_spec(r#"{"type":"builtin","name":"nope"}"#),
            Err(Error::UnknownBuiltin(_))
        ));
    }

    #[test]
    fn one_layer_network_matches_example3() {
        let net = parse_map_spec(
            r#"{"type":"dense_network","layers":[{"weights":[[10]],"bias":[-4],"activation":"sigmoid"}]}"#,
        )
        .unwrap();
        for i in 0..1000 {
            let x = -2.0 + 4.0 * i as f64 / 999.0;
            let y = net.eval(&Vector::scalar(x).unwrap()).unwrap()[0];
            assert!((y - example3(x)).abs() <= 1e-15, "{x}");
        }
    }

    #[test]
    fn rejects_bad_documents() {
        let ragged = r#"{"type":"dense_network","layers":[{"weights":[[1,2],[3]],"bias":[0,0],"activation":"tanh"}]}"#;
        assert!(matches!(parse_map_spec(ragged), Err(Error::ShapeMismatch(_))));
        let unknown = r#"{"type":"dense_network","layers":[{"weights":[[1]],"bias":[0],"activation":"gelu"}]}"#;
        assert!(matches!(parse_map_spec(unknown), Err(Error::UnknownActivation(_))));
        assert!(matches!(parse_map_spec(r#"{"type":"conv"}"#), Err(Error::Schema(_))));
        assert!(matches!(parse_map_spec("not json"), Err(Error::Schema(_))));
    }

    #[test]
    fn round_trip() {
        let text = r#"{"type":"symmetric","inner":{"type":"dense_network","layers":[{"weights":[[1.0,-0.5],[0.25,2.0]],"bias":[0.0,1.0],"activation":"capped_relu","beta":2.0}]}}"#;
        let m = parse_map_spec(text).unwrap();
        assert_eq!(m.to_json(), text);
        assert_eq!(parse_map_spec(&m.to_json()).unwrap(), m);
    }
}
