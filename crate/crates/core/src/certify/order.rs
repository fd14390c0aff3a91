use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::sampling::{in_cone_and_box, ordered_pair, par_samples};
use super::{assemble, check_strength, relation_holds, setup, Property, PropertyReport, SampleConfig, Strength, Witness};
use crate::cone::{sup_orthant, weighted_max_norm, Cone};
use crate::error::{Error, Result};
use crate::map::Mapping;
use crate::vector::Vector;

/// Violation of `f(x) {<=,<,<<}_K f(x')` for the pair `(x, x')`.
pub fn monotone_violation<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    x: &Vector,
    x_prime: &Vector,
    strength: Strength,
) -> Result<Option<Witness>> {
    let (fx, fxp) = (map.eval(x)?, map.eval(x_prime)?);
    Ok((!relation_holds(cone, &fx, &fxp, strength)).then(|| Witness {
        x: x.clone(),
        x_prime: Some(x_prime.clone()),
        parameter: None,
        lhs: fx,
        rhs: fxp,
    }))
}

/// Violation of `f(x) {<=,<,<<}_K sup{x', f(x')}` (componentwise sup).
pub fn sup_monotone_violation<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    x: &Vector,
    x_prime: &Vector,
    strength: Strength,
) -> Result<Option<Witness>> {
    let fx = map.eval(x)?;
    let bound = sup_orthant(x_prime, &map.eval(x_prime)?)?;
    Ok((!relation_holds(cone, &fx, &bound, strength)).then(|| Witness {
        x: x.clone(),
        x_prime: Some(x_prime.clone()),
        parameter: None,
        lhs: fx,
        rhs: bound,
    }))
}

/// Violation of `|f(x)|_v <= |f(x')|_v`.
pub fn norm_monotone_violation<M: Mapping + ?Sized>(
    map: &M,
    v: &Vector,
    x: &Vector,
    x_prime: &Vector,
) -> Result<Option<Witness>> {
    let a = weighted_max_norm(&map.eval(x)?, v)?;
    let b = weighted_max_norm(&map.eval(x_prime)?, v)?;
    let slack = crate::cone::DEFAULT_TOLERANCE * a.max(b);
    Ok((a > b + slack).then(|| Witness {
        x: x.clone(),
        x_prime: Some(x_prime.clone()),
        parameter: None,
        lhs: Vector::from_finite(vec![a]),
        rhs: Vector::from_finite(vec![b]),
    }))
}

/// Violation of `f(x) in K` for `x in K`.
pub fn invariance_violation<M: Mapping + ?Sized>(map: &M, cone: &Cone, x: &Vector) -> Result<Option<Witness>> {
    let fx = map.eval(x)?;
    Ok((!cone.contains(&fx, false)?).then(|| Witness {
        x: x.clone(),
        x_prime: None,
        parameter: None,
        lhs: Vector::zeros(fx.dim()),
        rhs: fx,
    }))
}

fn pair_check<M, F>(
    map: &M,
    cone: &Cone,
    cfg: &SampleConfig,
    property: Property,
    strength: Option<Strength>,
    violation: F,
) -> Result<PropertyReport>
where
    M: Mapping + ?Sized,
    F: Fn(&Vector, &Vector) -> Result<Option<Witness>> + Sync,
{
    setup(map, Some(cone), cfg)?;
    let outcomes = par_samples(cfg.count, |i| {
        let (x, x_prime) = ordered_pair(cfg, cone, &mut cfg.rng(i))?;
        violation(&x, &x_prime)
    })?;
    Ok(assemble(property, Some(cone), strength, cfg, outcomes, BTreeMap::new()))
}

/// Samples ordered pairs `x <_K x'` and tests `f(x) {<=,<,<<}_K f(x')`.
pub fn check_monotone<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    cfg: &SampleConfig,
    strength: Strength,
) -> Result<PropertyReport> {
    check_strength(cone, strength)?;
    pair_check(map, cone, cfg, Property::Monotone, Some(strength), |x, xp| {
        monotone_violation(map, cone, x, xp, strength)
    })
}

/// Samples ordered pairs and tests `f(x) {<=,<,<<}_K sup{x', f(x')}`. The
/// supremum is the componentwise maximum, so the cone must be the orthant.
pub fn check_sup_monotone<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    cfg: &SampleConfig,
    strength: Strength,
) -> Result<PropertyReport> {
    if !cone.is_orthant() {
        return Err(Error::InvalidArgument("sup-monotonicity is defined for the orthant order only".into()));
    }
    check_strength(cone, strength)?;
    pair_check(map, cone, cfg, Property::SupMonotone, Some(strength), |x, xp| {
        sup_monotone_violation(map, cone, x, xp, strength)
    })
}

/// Samples ordered pairs `x <_K x'` and tests `|f(x)|_v <= |f(x')|_v`.
pub fn check_norm_monotone<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    v: &Vector,
    cfg: &SampleConfig,
) -> Result<PropertyReport> {
    weighted_max_norm(v, v)?;
    let property = Property::NormMonotone { v: v.clone() };
    pair_check(map, cone, cfg, property, None, |x, xp| norm_monotone_violation(map, v, x, xp))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaTrial {
    pub beta: f64,
    /// `f(K ∩ region) ⊂ K`
    pub invariance: PropertyReport,
    pub monotone: PropertyReport,
}

impl BetaTrial {
    pub fn passed(&self) -> bool {
        self.invariance.passed() && self.monotone.passed()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantConeReport {
    pub axis: Vector,
    pub beta_star: Option<f64>,
    /// Trials in grid order, up to and including the first success.
    pub trials: Vec<BetaTrial>,
}

/// Walks `beta_grid` (largest first) and returns the first `beta` for which
/// sampling finds `C(axis, beta)` invariant under `f` and `f` monotone with
/// respect to it.
pub fn find_invariant_icecream<M: Mapping + ?Sized>(
    map: &M,
    axis: &Vector,
    beta_grid: &[f64],
    cfg: &SampleConfig,
) -> Result<InvariantConeReport> {
    if beta_grid.is_empty() {
        return Err(Error::InvalidArgument("beta grid is empty".into()));
    }
    let mut trials = Vec::new();
    let mut beta_star = None;
    for &beta in beta_grid {
        let cone = Cone::ice_cream(axis.clone(), beta)?;
        setup(map, Some(&cone), cfg)?;
        let outcomes = par_samples(cfg.count, |i| {
            let x = in_cone_and_box(cfg, &cone, &mut cfg.rng(i))?;
            invariance_violation(map, &cone, &x)
        })?;
        let property = Property::InvariantCone { axis: axis.clone(), beta };
        let invariance = assemble(property, Some(&cone), None, cfg, outcomes, BTreeMap::new());
        let monotone = check_monotone(map, &cone, cfg, Strength::Weak)?;
        let trial = BetaTrial { beta, invariance, monotone };
        let passed = trial.passed();
        trials.push(trial);
        if passed {
            beta_star = Some(beta);
            break;
        }
    }
    Ok(InvariantConeReport { axis: axis.clone(), beta_star, trials })
}
