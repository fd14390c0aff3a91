//! Sampling certifiers for mapping properties.
//!
//! Each certifier draws `count` seeded samples, evaluates the defining
//! inequality of a property on every one of them and reports the number of
//! violations together with the lowest-index counterexample. A report of
//! [`Verdict::NoViolationFound`] is evidence, not proof; a
//! [`Verdict::Violated`] report carries a witness that
//! [`PropertyReport::replay`] re-checks without any sampling.
//!
//! Order-type relations come in three strengths: `f(a) <=_K f(b)` (weak),
//! `<_K` (strict, additionally `f(a) != f(b)` beyond rounding) and `<<_K`
//! (strong, interior, needs a solid cone).

mod feasible;
mod guiding;
mod order;
pub(crate) mod sampling;
mod scaling;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use feasible::{find_feasible, grade_point, probe_sf_bounded, FeasiblePoint, Grade, RadiusProbe, SfProbeReport};
pub use guiding::{check_guiding_g, check_guiding_g2, guiding_violation};
pub use order::{
    check_monotone, check_norm_monotone, check_sup_monotone, find_invariant_icecream, invariance_violation,
    monotone_violation, norm_monotone_violation, sup_monotone_violation, BetaTrial, InvariantConeReport,
};
pub use sampling::SampleConfig;
pub use scaling::{
    check_scalable, check_subhomogeneous, contraction_coefficient, contraction_violation, estimate_contraction,
    scalable_violation, subhomogeneous_violation, CONTRACTION_THRESHOLD,
};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::map::Mapping;
use crate::vector::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strength {
    Weak,
    Strict,
    Strong,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NoViolationFound,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Property {
    Monotone,
    SupMonotone,
    NormMonotone { v: Vector },
    Scalable,
    Subhomogeneous,
    Contractive { w: Vector },
    GuidingG,
    GuidingG2 { gamma: f64 },
    InvariantCone { axis: Vector, beta: f64 },
}

/// A counterexample: the sampled point(s), the scalar parameter (`alpha`,
/// `theta` or `epsilon`) if any, and the two sides of the violated relation
/// (`lhs` should have been below `rhs`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: Vector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_prime: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<f64>,
    pub lhs: Vector,
    pub rhs: Vector,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: Property,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<Cone>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strength: Option<Strength>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_index: Option<usize>,
    pub samples_tested: usize,
    pub violations: usize,
    pub seed: u64,
    pub config: SampleConfig,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub statistics: BTreeMap<String, f64>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::NoViolationFound
    }

    /// Re-evaluates the witness. `Ok(true)` means the violation reproduces;
    /// reports without a witness return `Ok(false)`.
    pub fn replay<M: Mapping + ?Sized>(&self, map: &M) -> Result<bool> {
        let Some(w) = &self.witness else { return Ok(false) };
        let strength = self.strength.unwrap_or(Strength::Weak);
        let cone = || {
            self.cone
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("report has no cone to replay against".into()))
        };
        let x_prime = || {
            w.x_prime
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("witness has no second point".into()))
        };
        let parameter = || {
            w.parameter
                .ok_or_else(|| Error::InvalidArgument("witness has no parameter".into()))
        };
        let found = match &self.property {
            Property::Monotone => monotone_violation(map, cone()?, &w.x, x_prime()?, strength)?,
            Property::SupMonotone => sup_monotone_violation(map, cone()?, &w.x, x_prime()?, strength)?,
            Property::NormMonotone { v } => norm_monotone_violation(map, v, &w.x, x_prime()?)?,
            Property::Scalable => scalable_violation(map, cone()?, &w.x, parameter()?, strength)?,
            Property::Subhomogeneous => subhomogeneous_violation(map, cone()?, &w.x, parameter()?, strength)?,
            Property::Contractive { w: dir } => contraction_violation(map, cone()?, dir, &w.x, parameter()?)?,
            Property::GuidingG => guiding_violation(map, &w.x, x_prime()?, std::f64::consts::FRAC_PI_2)?,
            Property::GuidingG2 { gamma } => guiding_violation(map, &w.x, x_prime()?, *gamma)?,
            Property::InvariantCone { axis, beta } => {
                let k = Cone::ice_cream(axis.clone(), *beta)?;
                match &w.x_prime {
                    None => invariance_violation(map, &k, &w.x)?,
                    Some(xp) => monotone_violation(map, &k, &w.x, xp, Strength::Weak)?,
                }
            }
        };
        Ok(found.is_some())
    }
}

/// `a {<=, <, <<}_K b` with the rounding guard described in the module docs.
pub fn relation_holds(cone: &Cone, a: &Vector, b: &Vector, strength: Strength) -> bool {
    let rel = cone.compare_unchecked(a, b);
    let significant = || a.distance_inf(b) > cone.tolerance() * a.norm_inf().max(b.norm_inf());
    match strength {
        Strength::Weak => rel.leq,
        Strength::Strict => rel.leq && significant(),
        Strength::Strong => rel.ll && significant(),
    }
}

pub(crate) struct Setup {
    pub dim: usize,
}

/// Common argument checks: self-map, matching dimensions, valid config.
pub(crate) fn setup<M: Mapping + ?Sized>(map: &M, cone: Option<&Cone>, cfg: &SampleConfig) -> Result<Setup> {
    cfg.validate()?;
    let dim = crate::map::require_self_map(map)?;
    if let Some(cone) = cone {
        if cone.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: cone.dim() });
        }
    }
    cfg.low.check_dim(dim)?;
    Ok(Setup { dim })
}

pub(crate) fn check_strength(cone: &Cone, strength: Strength) -> Result<()> {
    if strength == Strength::Strong && !cone.is_solid() {
        return Err(Error::InvalidArgument("strong relations need a solid cone".into()));
    }
    Ok(())
}

pub(crate) fn assemble(
    property: Property,
    cone: Option<&Cone>,
    strength: Option<Strength>,
    cfg: &SampleConfig,
    outcomes: Vec<Option<Witness>>,
    statistics: BTreeMap<String, f64>,
) -> PropertyReport {
    let violations = outcomes.iter().filter(|o| o.is_some()).count();
    let first = outcomes.into_iter().enumerate().find_map(|(i, o)| o.map(|w| (i, w)));
    let verdict = if first.is_some() { Verdict::Violated } else { Verdict::NoViolationFound };
    let (witness_index, witness) = match first {
        Some((i, w)) => (Some(i), Some(w)),
        None => (None, None),
    };
    PropertyReport {
        property,
        cone: cone.cloned(),
        strength,
        verdict,
        witness,
        witness_index,
        samples_tested: cfg.count,
        violations,
        seed: cfg.seed,
        config: cfg.clone(),
        statistics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector;

    #[test]
    fn strict_relation_ignores_rounding_noise() {
        let k = Cone::orthant(2).unwrap();
        let a = vector![0.1 + 0.2, 1.0];
        let b = vector![0.3, 1.0];
        assert!(relation_holds(&k, &a, &b, Strength::Weak));
        assert!(!relation_holds(&k, &a, &b, Strength::Strict));
        assert!(relation_holds(&k, &a, &vector![0.3, 1.5], Strength::Strict));
        assert!(!relation_holds(&k, &a, &vector![0.3, 1.5], Strength::Strong));
        assert!(relation_holds(&k, &a, &vector![0.5, 1.5], Strength::Strong));
    }
}
