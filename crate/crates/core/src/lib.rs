//! Fixed-point analysis for mappings ordered by convex cones.
//!
//! The crate is organised bottom-up:
//!
//! - [`vector`] and [`cone`]: points of `R^N`, orthant and ice-cream cones,
//!   the orders and norms they induce and the geometry constant `delta(K)`.
//! - [`map`]: evaluatable mappings (activation catalog, dense layers,
//!   closed-form example maps, symmetric extension) and their JSON specs.
//! - [`certify`]: seeded sampling certifiers for monotonicity, scalability,
//!   contractivity, feasibility and the guiding conditions.
//! - [`solve`]: plain iteration, order-monotone descent and the contraction
//!   solver with a priori error bounds.
//! - [`degree`]: topological degree in one and two dimensions, subdivision
//!   localisation and hypothesis/conclusion reports for the existence
//!   theorems.
//! - [`cli`]: the `conefix` command-line front end.

pub mod certify;
pub mod cli;
pub mod cone;
pub mod degree;
pub mod error;
pub mod map;
pub mod region;
pub mod solve;
pub mod vector;

pub use cone::{Cone, ConeGeometry, ConeShape, OrderRelation};
pub use error::{Error, Result};
pub use map::{Activation, Builtin, DenseLayer, FnMap, MapHandle, Mapping};
pub use region::Region;
pub use vector::Vector;
