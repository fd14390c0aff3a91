//! Closed-form example maps.

use serde::{Deserialize, Serialize};

use super::activation::logistic;
use crate::error::{Error, Result};
use crate::vector::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    /// `x -> sigmoid(10 x - 4)` on `R`.
    Example3,
    /// Piecewise map on `R^2_+` built from the zigzag function.
    Zigzag,
    /// `p^2 + 1/100` on `[0, 1/4]`, `p/2 - 1/16 + 1/100` beyond.
    PiecewiseContraction,
    /// `sigmoid(W x)` with `W` the quarter turn `[[0, -1], [1, 0]]`.
    RotationSigmoid,
    /// Unimodal-sigmoid layer with `W = [[0.95, -0.05], [-0.05, 0.95]]`,
    /// `b = (1, -0.05)`.
    UnimodalSigmoidLayer,
    /// `x -> sin x + x - 1` on `R`.
    SinShift,
}

pub const BUILTIN_NAMES: [&str; 6] = [
    "example3",
    "zigzag",
    "piecewise_contraction",
    "rotation_sigmoid",
    "unimodal_sigmoid_layer",
    "sin_shift",
];

pub const UNIMODAL_WEIGHTS: [[f64; 2]; 2] = [[0.95, -0.05], [-0.05, 0.95]];
pub const UNIMODAL_BIAS: [f64; 2] = [1.0, -0.05];

impl Builtin {
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "example3" => Self::Example3,
            "zigzag" => Self::Zigzag,
            "piecewise_contraction" => Self::PiecewiseContraction,
            "rotation_sigmoid" => Self::RotationSigmoid,
            "unimodal_sigmoid_layer" => Self::UnimodalSigmoidLayer,
            "sin_shift" => Self::SinShift,
            other => return Err(Error::UnknownBuiltin(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Example3 => "example3",
            Self::Zigzag => "zigzag",
            Self::PiecewiseContraction => "piecewise_contraction",
            Self::RotationSigmoid => "rotation_sigmoid",
            Self::UnimodalSigmoidLayer => "unimodal_sigmoid_layer",
            Self::SinShift => "sin_shift",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Example3 | Self::PiecewiseContraction | Self::SinShift => 1,
            Self::Zigzag | Self::RotationSigmoid | Self::UnimodalSigmoidLayer => 2,
        }
    }

    pub fn eval(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.dim())?;
        let out = match self {
            Self::Example3 => vec![example3(x[0])],
            Self::PiecewiseContraction => vec![piecewise_contraction(x[0]).map_err(|_| Error::NegativeInput(x.clone()))?],
            Self::SinShift => vec![x[0].sin() + x[0] - 1.0],
            Self::Zigzag => {
                let (a, b) = zigzag(x[0], x[1]).map_err(|_| Error::NegativeInput(x.clone()))?;
                vec![a, b]
            }
            Self::RotationSigmoid => vec![logistic(-x[1]), logistic(x[0])],
            Self::UnimodalSigmoidLayer => UNIMODAL_WEIGHTS
                .iter()
                .zip(UNIMODAL_BIAS)
                .map(|(row, b)| logistic(row[0] * x[0] + row[1] * x[1] + b) - 0.5)
                .collect(),
        };
        Vector::new(out)
    }
}

pub fn example3(x: f64) -> f64 {
    logistic(10.0 * x - 4.0)
}

pub fn piecewise_contraction(p: f64) -> Result<f64> {
    if p < 0.0 {
        return Err(Error::NegativeInput(Vector::scalar(p)?));
    }
    Ok(if p <= 0.25 { p * p + 0.01 } else { 0.5 * p - 0.0625 + 0.01 })
}

/// The 2-periodic zigzag `alpha(t)`: `t - 2n` on `[2n, 2n+1)`, `2n + 2 - t`
/// on `[2n+1, 2n+2)`.
pub fn zigzag_alpha(t: f64) -> f64 {
    let n = (t / 2.0).floor();
    let r = t - 2.0 * n;
    if r < 1.0 {
        r
    } else {
        2.0 - r
    }
}

/// The three-branch zigzag map, evaluated exactly as its printed formula.
///
/// With `m = |(x, y)|_inf`, `d = alpha(m)` and `z = frac(m / 4)`:
///
/// - `z in [0, 1/4)`: `(1 - d)(x, y) + d (x, x)`
/// - `z in [1/4, 3/4)`: `d (x, x) + (1 - d)(y, x)`
/// - `z in [3/4, 1)`: `d (x, x) + (1 - d)(x, y)`
///
/// The branches agree at the seams, but the map is neither homogeneous nor
/// norm-preserving when `y > x`; see the tests.
pub fn zigzag(x: f64, y: f64) -> Result<(f64, f64)> {
    if x < 0.0 || y < 0.0 {
        return Err(Error::NegativeInput(Vector::new(vec![x, y])?));
    }
    let m = x.max(y);
    let d = zigzag_alpha(m);
    let quarter = m / 4.0;
    let z = quarter - quarter.floor();
    Ok(if z < 0.25 {
        ((1.0 - d) * x + d * x, (1.0 - d) * y + d * x)
    } else if z < 0.75 {
        (d * x + (1.0 - d) * y, d * x + (1.0 - d) * x)
    } else {
        (d * x + (1.0 - d) * x, d * x + (1.0 - d) * y)
    })
}
