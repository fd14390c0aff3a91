use std::f64::consts::FRAC_2_PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scalar activation functions, applied componentwise by layers.
///
/// The formulas are the usual ones on `R_+`. Where a catalog entry is only
/// stated on `R_+`, it is extended to `R` as follows: saturated linear and
/// capped ReLU clamp at `0`, Elliot uses `x / (1 + |x|)` and logarithmic uses
/// `sign(x) log(1 + |x|)`. [`Activation::eval_strict`] rejects negative
/// arguments for the last two instead.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Activation {
    Sigmoid,
    /// `1 / (1 + e^-x) - 1/2`
    UnimodalSigmoid,
    CappedRelu { beta: f64 },
    SaturatedLinear,
    /// `x / sqrt(1 + x^2)`
    Isru,
    /// `(2 / pi) atan x`
    Arctangent,
    Tanh,
    Arcsinh,
    Elliot,
    Logarithmic,
    Swish,
    Mish,
    Identity,
}

pub const ACTIVATION_NAMES: [&str; 13] = [
    "sigmoid",
    "unimodal_sigmoid",
    "capped_relu",
    "saturated_linear",
    "isru",
    "arctangent",
    "tanh",
    "arcsinh",
    "elliot",
    "logarithmic",
    "swish",
    "mish",
    "identity",
];

/// Numerically stable logistic function.
pub fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

impl Activation {
    /// Looks up a catalog entry; `beta` is only used by `capped_relu` and
    /// defaults to 1.
    pub fn from_name(name: &str, beta: Option<f64>) -> Result<Self> {
        let a = match name {
            "sigmoid" => Self::Sigmoid,
            "unimodal_sigmoid" => Self::UnimodalSigmoid,
            "capped_relu" => {
                let beta = beta.unwrap_or(1.0);
                if !(beta.is_finite() && beta > 0.0) {
                    return Err(Error::InvalidArgument(format!("capped_relu beta must be positive, got {beta}")));
                }
                Self::CappedRelu { beta }
            }
            "saturated_linear" => Self::SaturatedLinear,
            "isru" => Self::Isru,
            "arctangent" => Self::Arctangent,
            "tanh" => Self::Tanh,
            "arcsinh" => Self::Arcsinh,
            "elliot" => Self::Elliot,
            "logarithmic" => Self::Logarithmic,
            "swish" => Self::Swish,
            "mish" => Self::Mish,
            "identity" => Self::Identity,
            other => return Err(Error::UnknownActivation(other.to_string())),
        };
        if beta.is_some() && !matches!(a, Self::CappedRelu { .. }) {
            return Err(Error::InvalidArgument(format!("activation `{name}` takes no beta")));
        }
        Ok(a)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Sigmoid => "sigmoid",
            Self::UnimodalSigmoid => "unimodal_sigmoid",
            Self::CappedRelu { .. } => "capped_relu",
            Self::SaturatedLinear => "saturated_linear",
            Self::Isru => "isru",
            Self::Arctangent => "arctangent",
            Self::Tanh => "tanh",
            Self::Arcsinh => "arcsinh",
            Self::Elliot => "elliot",
            Self::Logarithmic => "logarithmic",
            Self::Swish => "swish",
            Self::Mish => "mish",
            Self::Identity => "identity",
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Self::Sigmoid => logistic(x),
            Self::UnimodalSigmoid => logistic(x) - 0.5,
            Self::CappedRelu { beta } => x.clamp(0.0, beta),
            Self::SaturatedLinear => x.clamp(0.0, 1.0),
            Self::Isru => x / (1.0 + x * x).sqrt(),
            Self::Arctangent => FRAC_2_PI * x.atan(),
            Self::Tanh => x.tanh(),
            Self::Arcsinh => x.asinh(),
            Self::Elliot => x / (1.0 + x.abs()),
            Self::Logarithmic => x.signum() * x.abs().ln_1p(),
            Self::Swish => x * logistic(x),
            Self::Mish => x * softplus(x).tanh(),
            Self::Identity => x,
        }
    }

    /// Like [`eval`](Self::eval) but refuses arguments outside `R_+` for the
    /// entries that are only defined there.
    pub fn eval_strict(&self, x: f64) -> Result<f64> {
        if x < 0.0 && matches!(self, Self::Elliot | Self::Logarithmic) {
            return Err(Error::DomainViolation { name: self.name(), value: x });
        }
        Ok(self.eval(x))
    }

    /// Whether the entry belongs to the catalog of maps `R_+ -> R_+`.
    pub fn maps_nonnegative(&self) -> bool {
        !matches!(self, Self::UnimodalSigmoid | Self::Identity)
    }

    /// A global Lipschitz constant on `R`.
    pub fn lipschitz(&self) -> f64 {
        match *self {
            Self::Sigmoid | Self::UnimodalSigmoid => 0.25,
            Self::Arctangent => FRAC_2_PI,
            Self::Swish => 1.1,
            Self::Mish => 1.09,
            _ => 1.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all() -> Vec<Activation> {
        ACTIVATION_NAMES.iter().map(|n| Activation::from_name(n, None).unwrap()).collect()
    }

    #[test]
    fn spot_values() {
        assert_eq!(Activation::Sigmoid.eval(0.0), 0.5);
        assert_eq!(Activation::UnimodalSigmoid.eval(0.0), 0.0);
        assert_eq!(Activation::Elliot.eval(1.0), 0.5);
        assert_eq!(Activation::Logarithmic.eval(0.0), 0.0);
        assert_eq!(Activation::Swish.eval(0.0), 0.0);
        assert_eq!(Activation::Mish.eval(0.0), 0.0);
        assert_eq!(Activation::CappedRelu { beta: 2.0 }.eval(5.0), 2.0);
        assert_eq!(Activation::SaturatedLinear.eval(0.4), 0.4);
        assert!((Activation::Arctangent.eval(1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn logistic_is_stable_in_the_tails() {
        assert_eq!(logistic(-800.0), 0.0);
        assert_eq!(logistic(800.0), 1.0);
        assert!((logistic(-30.0) - (-30f64).exp() / (1.0 + (-30f64).exp())).abs() < 1e-28);
    }

    #[test]
    fn catalog_lookup() {
        assert_eq!(all().len(), 13);
        assert_eq!(Activation::from_name("capped_relu", None).unwrap(), Activation::CappedRelu { beta: 1.0 });
        assert!(matches!(Activation::from_name("relu6", None), Err(Error::UnknownActivation(_))));
        assert!(Activation::from_name("capped_relu", Some(0.0)).is_err());
        assert!(Activation::from_name("tanh", Some(1.0)).is_err());
        for a in all() {
            assert_eq!(Activation::from_name(a.name(), None).unwrap().name(), a.name());
        }
    }

    #[test]
    fn strict_domain() {
        assert!(matches!(
            Activation::Logarithmic.eval_strict(-1.0),
            Err(Error::DomainViolation { name: "logarithmic", .. })
        ));
        assert!(Activation::Elliot.eval_strict(-0.5).is_err());
        assert_eq!(Activation::Tanh.eval_strict(-0.5).unwrap(), (-0.5f64).tanh());
    }

    #[test]
    fn nonnegative_catalog_maps_into_r_plus() {
        let entries: Vec<_> = all().into_iter().filter(|a| a.maps_nonnegative()).collect();
        assert_eq!(entries.len(), 11);
        for a in entries {
            for i in 0..=10_000 {
                let x = 1e6 * (i as f64 / 10_000.0).powi(3);
                let y = a.eval(x);
                assert!(y >= 0.0 && y.is_finite(), "{} at {x}: {y}", a.name());
            }
        }
    }

    #[test]
    fn continuity_by_dense_sampling() {
        let h = 1e-3;
        for a in all() {
            let bound = a.lipschitz() * h * (1.0 + 1e-9);
            let mut prev = a.eval(-20.0);
            for i in 1..=40_000 {
                let y = a.eval(-20.0 + i as f64 * h);
                assert!((y - prev).abs() <= bound, "{} jumps near {}", a.name(), -20.0 + i as f64 * h);
                prev = y;
            }
        }
    }

    #[test]
    fn serde_shape() {
        let text = serde_json::to_string(&Activation::CappedRelu { beta: 2.0 }).unwrap();
        assert_eq!(text, r#"{"name":"capped_relu","beta":2.0}"#);
    }
}
