//! Evaluatable mappings `R^N -> R^M`.
//!
//! Everything downstream works through the [`Mapping`] trait. [`MapHandle`]
//! is the concrete, serialisable implementation produced by map specs; ad hoc
//! maps can be wrapped with [`FnMap`].

mod activation;
mod builtin;
mod network;
mod spec;

use std::fmt;
use std::sync::Arc;

pub use activation::{logistic, Activation, ACTIVATION_NAMES};
pub use builtin::{
    example3, piecewise_contraction, zigzag, zigzag_alpha, Builtin, BUILTIN_NAMES, UNIMODAL_BIAS, UNIMODAL_WEIGHTS,
};
pub use network::{DenseLayer, Network};
pub use spec::{parse_map_spec, LayerSpec, MapSpec};

use crate::error::{Error, Result};
use crate::vector::Vector;

/// A pure, deterministic map. Implementations must be safe to evaluate from
/// many threads at once.
pub trait Mapping: Send + Sync {
    fn in_dim(&self) -> usize;
    fn out_dim(&self) -> usize;
    fn eval(&self, x: &Vector) -> Result<Vector>;

    /// Whether `in_dim == out_dim`, i.e. fixed points make sense.
    fn is_self_map(&self) -> bool {
        self.in_dim() == self.out_dim()
    }
}

impl<M: Mapping + ?Sized> Mapping for &M {
    fn in_dim(&self) -> usize {
        (**self).in_dim()
    }
    fn out_dim(&self) -> usize {
        (**self).out_dim()
    }
    fn eval(&self, x: &Vector) -> Result<Vector> {
        (**self).eval(x)
    }
}

impl<M: Mapping + ?Sized> Mapping for Arc<M> {
    fn in_dim(&self) -> usize {
        (**self).in_dim()
    }
    fn out_dim(&self) -> usize {
        (**self).out_dim()
    }
    fn eval(&self, x: &Vector) -> Result<Vector> {
        (**self).eval(x)
    }
}

/// A map given by a closure on coordinate slices.
#[derive(Clone)]
pub struct FnMap<F> {
    in_dim: usize,
    out_dim: usize,
    f: F,
}

impl<F> FnMap<F>
where
    F: Fn(&[f64]) -> Vec<f64> + Send + Sync,
{
    /// A self-map of `R^dim`.
    pub fn new(dim: usize, f: F) -> Self {
        Self::with_dims(dim, dim, f)
    }

    pub fn with_dims(in_dim: usize, out_dim: usize, f: F) -> Self {
        assert!(in_dim > 0 && out_dim > 0, "dimensions must be positive");
        Self { in_dim, out_dim, f }
    }
}

impl<F> Mapping for FnMap<F>
where
    F: Fn(&[f64]) -> Vec<f64> + Send + Sync,
{
    fn in_dim(&self) -> usize {
        self.in_dim
    }
    fn out_dim(&self) -> usize {
        self.out_dim
    }
    fn eval(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.in_dim)?;
        let y = Vector::new((self.f)(x.as_slice()))?;
        y.check_dim(self.out_dim)?;
        Ok(y)
    }
}

impl<F> fmt::Debug for FnMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FnMap({} -> {})", self.in_dim, self.out_dim)
    }
}

/// `x -> f(|x_1|, ..., |x_N|)`: extends a map on `R^N_+` evenly to `R^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Symmetric<M>(pub M);

impl<M: Mapping> Mapping for Symmetric<M> {
    fn in_dim(&self) -> usize {
        self.0.in_dim()
    }
    fn out_dim(&self) -> usize {
        self.0.out_dim()
    }
    fn eval(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.in_dim())?;
        self.0.eval(&x.abs())
    }
}

/// A mapping produced from a map spec.
#[derive(Clone, Debug, PartialEq)]
pub enum MapHandle {
    Network(Network),
    Builtin(Builtin),
    Symmetric(Box<MapHandle>),
}

impl MapHandle {
    pub fn builtin(name: &str) -> Result<Self> {
        Ok(Self::Builtin(Builtin::from_name(name)?))
    }

    pub fn network(layers: Vec<DenseLayer>) -> Result<Self> {
        Ok(Self::Network(Network::new(layers)?))
    }

    pub fn symmetric(inner: MapHandle) -> Self {
        Self::Symmetric(Box::new(inner))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        parse_map_spec(text)
    }

    pub fn to_spec(&self) -> MapSpec {
        match self {
            Self::Network(net) => MapSpec::DenseNetwork {
                layers: net.layers().iter().map(LayerSpec::from).collect(),
                strict_domain: net.strict_domain(),
            },
            Self::Builtin(b) => MapSpec::Builtin { name: b.name().to_string() },
            Self::Symmetric(inner) => MapSpec::Symmetric { inner: Box::new(inner.to_spec()) },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("map specs always serialise")
    }
}

impl Mapping for MapHandle {
    fn in_dim(&self) -> usize {
        match self {
            Self::Network(n) => n.in_dim(),
            Self::Builtin(b) => b.dim(),
            Self::Symmetric(inner) => inner.in_dim(),
        }
    }

    fn out_dim(&self) -> usize {
        match self {
            Self::Network(n) => n.out_dim(),
            Self::Builtin(b) => b.dim(),
            Self::Symmetric(inner) => inner.out_dim(),
        }
    }

    fn eval(&self, x: &Vector) -> Result<Vector> {
        match self {
            Self::Network(n) => n.eval(x),
            Self::Builtin(b) => b.eval(x),
            Self::Symmetric(inner) => {
                x.check_dim(inner.in_dim())?;
                inner.eval(&x.abs())
            }
        }
    }
}

/// Evaluates a self-map and checks that it is one.
pub(crate) fn require_self_map<M: Mapping + ?Sized>(map: &M) -> Result<usize> {
    if map.in_dim() != map.out_dim() {
        return Err(Error::DimensionMismatch { expected: map.in_dim(), found: map.out_dim() });
    }
    Ok(map.in_dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector;

    #[test]
    fn fn_map_checks_dims() {
        let f = FnMap::new(2, |x: &[f64]| vec![x[0] + x[1]]);
        assert!(matches!(f.eval(&vector![1.0, 2.0]), Err(Error::DimensionMismatch { .. })));
        let g = FnMap::new(1, |x: &[f64]| vec![1.0 / x[0]]);
        assert!(matches!(g.eval(&vector![0.0]), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn symmetric_extension_is_even() {
        let inner = MapHandle::builtin("zigzag").unwrap();
        let sym = MapHandle::symmetric(inner);
        let base = sym.eval(&vector![1.5, 0.7]).unwrap();
        for signs in [[1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]] {
            let y = sym.eval(&vector![1.5 * signs[0], 0.7 * signs[1]]).unwrap();
            assert_eq!(y, base);
        }
        let e3 = MapHandle::symmetric(MapHandle::builtin("example3").unwrap());
        let v = e3.eval(&vector![-0.3]).unwrap()[0];
        assert_eq!(v, e3.eval(&vector![0.3]).unwrap()[0]);
        assert!((v - 0.2689).abs() < 1e-4);
    }
}
