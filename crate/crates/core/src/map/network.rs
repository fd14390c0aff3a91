use serde::{Deserialize, Serialize};

use super::activation::Activation;
use crate::error::{Error, Result};
use crate::vector::Vector;

/// `x -> sigma(W x + b)` with `W` stored row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenseLayer {
    weights: Vec<Vec<f64>>,
    bias: Vec<f64>,
    activation: Activation,
}

impl DenseLayer {
    pub fn new(weights: Vec<Vec<f64>>, bias: Vec<f64>, activation: Activation) -> Result<Self> {
        let rows = weights.len();
        if rows == 0 {
            return Err(Error::ShapeMismatch("weight matrix has no rows".into()));
        }
        let cols = weights[0].len();
        if cols == 0 {
            return Err(Error::ShapeMismatch("weight matrix has no columns".into()));
        }
        if let Some(r) = weights.iter().position(|row| row.len() != cols) {
            return Err(Error::ShapeMismatch(format!(
                "row {r} has {} entries, row 0 has {cols}",
                weights[r].len()
            )));
        }
        if bias.len() != rows {
            return Err(Error::ShapeMismatch(format!("bias has {} entries for {rows} rows", bias.len())));
        }
        if weights.iter().flatten().chain(&bias).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("layer parameters must be finite".into()));
        }
        Ok(Self { weights, bias, activation })
    }

    pub fn in_dim(&self) -> usize {
        self.weights[0].len()
    }

    pub fn out_dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn bias(&self) -> &[f64] {
        &self.bias
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    pub fn eval(&self, x: &[f64], strict_domain: bool) -> Result<Vec<f64>> {
        self.weights
            .iter()
            .zip(&self.bias)
            .map(|(row, b)| {
                let affine: f64 = row.iter().zip(x).map(|(w, xi)| w * xi).sum::<f64>() + b;
                if strict_domain {
                    self.activation.eval_strict(affine)
                } else {
                    Ok(self.activation.eval(affine))
                }
            })
            .collect()
    }
}

/// A composition `f_m ∘ ... ∘ f_1` of dense layers.
#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    layers: Vec<DenseLayer>,
    strict_domain: bool,
}

impl Network {
    pub fn new(layers: Vec<DenseLayer>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::ShapeMismatch("network has no layers".into()));
        }
        for (i, pair) in layers.windows(2).enumerate() {
            if pair[0].out_dim() != pair[1].in_dim() {
                return Err(Error::ShapeMismatch(format!(
                    "layer {i} outputs {} values but layer {} expects {}",
                    pair[0].out_dim(),
                    i + 1,
                    pair[1].in_dim()
                )));
            }
        }
        Ok(Self { layers, strict_domain: false })
    }

    /// Makes evaluation fail on activation arguments outside the catalog domain.
    pub fn with_strict_domain(mut self, strict: bool) -> Self {
        self.strict_domain = strict;
        self
    }

    pub fn strict_domain(&self) -> bool {
        self.strict_domain
    }

    pub fn layers(&self) -> &[DenseLayer] {
        &self.layers
    }

    pub fn in_dim(&self) -> usize {
        self.layers[0].in_dim()
    }

    pub fn out_dim(&self) -> usize {
        self.layers.last().unwrap().out_dim()
    }

    pub fn eval(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.in_dim())?;
        let mut values = x.as_slice().to_vec();
        for layer in &self.layers {
            values = layer.eval(&values, self.strict_domain)?;
        }
        Vector::new(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector;

    #[test]
    fn rejects_bad_shapes() {
        let ragged = DenseLayer::new(vec![vec![1.0, 2.0], vec![3.0]], vec![0.0, 0.0], Activation::Identity);
        assert!(matches!(ragged, Err(Error::ShapeMismatch(_))));
        let bias = DenseLayer::new(vec![vec![1.0]], vec![0.0, 0.0], Activation::Identity);
        assert!(matches!(bias, Err(Error::ShapeMismatch(_))));
        let a = DenseLayer::new(vec![vec![1.0, 0.0]], vec![0.0], Activation::Identity).unwrap();
        assert!(matches!(Network::new(vec![a.clone(), a]), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn composition() {
        let up = DenseLayer::new(vec![vec![1.0], vec![2.0]], vec![0.0, 1.0], Activation::Identity).unwrap();
        let down = DenseLayer::new(vec![vec![1.0, 1.0]], vec![-1.0], Activation::Identity).unwrap();
        let net = Network::new(vec![up, down]).unwrap();
        assert_eq!((net.in_dim(), net.out_dim()), (1, 1));
        // x + (2x + 1) - 1
        assert_eq!(net.eval(&vector![2.0]).unwrap(), vector![6.0]);
        assert!(net.eval(&vector![1.0, 1.0]).is_err());
    }

    #[test]
    fn strict_domain_flag() {
        let layer = DenseLayer::new(vec![vec![1.0]], vec![-1.0], Activation::Logarithmic).unwrap();
        let net = Network::new(vec![layer]).unwrap();
        assert!(net.eval(&vector![0.5]).is_ok());
        let strict = net.with_strict_domain(true);
        assert!(matches!(strict.eval(&vector![0.5]), Err(Error::DomainViolation { .. })));
        assert!(strict.eval(&vector![2.0]).is_ok());
    }
}
