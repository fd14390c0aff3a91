use std::collections::BTreeMap;

use super::sampling::{in_cone_and_box, log_uniform, par_samples, uniform};
use super::{assemble, check_strength, relation_holds, setup, Property, PropertyReport, SampleConfig, Strength, Witness};
use crate::cone::{default_delta_resolution, Cone};
use crate::error::{Error, Result};
use crate::map::Mapping;
use crate::vector::Vector;

/// Contraction witnesses are samples where the relation fails for this `c`.
pub const CONTRACTION_THRESHOLD: f64 = 1.0 - 1e-9;

const MAX_COEFFICIENT: f64 = 1e12;

/// Violation of `f(alpha x) {<=,<,<<}_K alpha f(x)`.
pub fn scalable_violation<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    x: &Vector,
    alpha: f64,
    strength: Strength,
) -> Result<Option<Witness>> {
    let lhs = map.eval(&x.scale(alpha))?;
    let rhs = map.eval(x)?.scale(alpha);
    Ok((!relation_holds(cone, &lhs, &rhs, strength)).then(|| Witness {
        x: x.clone(),
        x_prime: None,
        parameter: Some(alpha),
        lhs,
        rhs,
    }))
}

/// Violation of `theta f(x) {<=,<,<<}_K f(theta x)`.
pub fn subhomogeneous_violation<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    x: &Vector,
    theta: f64,
    strength: Strength,
) -> Result<Option<Witness>> {
    let lhs = map.eval(x)?.scale(theta);
    let rhs = map.eval(&x.scale(theta))?;
    Ok((!relation_holds(cone, &lhs, &rhs, strength)).then(|| Witness {
        x: x.clone(),
        x_prime: None,
        parameter: Some(theta),
        lhs,
        rhs,
    }))
}

fn contraction_holds(cone: &Cone, f_shifted: &Vector, fx: &Vector, w: &Vector, eps: f64, c: f64) -> bool {
    relation_holds(cone, f_shifted, &fx.add_scaled(c * eps, w), Strength::Weak)
}

/// Smallest `c >= 0` with `f(x + eps w) <=_K f(x) + c eps w`, to about
/// `2^-50` relative accuracy.
pub fn contraction_coefficient<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    w: &Vector,
    x: &Vector,
    eps: f64,
) -> Result<f64> {
    let shifted = map.eval(&x.add_scaled(eps, w))?;
    let fx = map.eval(x)?;
    let holds = |c: f64| contraction_holds(cone, &shifted, &fx, w, eps, c);
    if holds(0.0) {
        return Ok(0.0);
    }
    // adding more of w never hurts, so the feasible c form a half-line
    let mut hi = 1.0;
    while !holds(hi) {
        hi *= 2.0;
        if hi > MAX_COEFFICIENT {
            return Err(Error::UnsatisfiableContraction { x: x.clone(), bound: MAX_COEFFICIENT });
        }
    }
    let mut lo = 0.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Violation of `f(x + eps w) <=_K f(x) + c eps w` at `c` just below 1.
pub fn contraction_violation<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    w: &Vector,
    x: &Vector,
    eps: f64,
) -> Result<Option<Witness>> {
    let lhs = map.eval(&x.add_scaled(eps, w))?;
    let rhs = map.eval(x)?.add_scaled(CONTRACTION_THRESHOLD * eps, w);
    Ok((!relation_holds(cone, &lhs, &rhs, Strength::Weak)).then(|| Witness {
        x: x.clone(),
        x_prime: None,
        parameter: Some(eps),
        lhs,
        rhs,
    }))
}

/// Samples `x in K ∩ region`, `alpha` in the alpha range and tests
/// `f(alpha x) {<=,<,<<}_K alpha f(x)`.
pub fn check_scalable<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    cfg: &SampleConfig,
    strength: Strength,
) -> Result<PropertyReport> {
    setup(map, Some(cone), cfg)?;
    check_strength(cone, strength)?;
    let outcomes = par_samples(cfg.count, |i| {
        let mut rng = cfg.rng(i);
        let x = in_cone_and_box(cfg, cone, &mut rng)?;
        let alpha = uniform(&mut rng, cfg.alpha_range);
        scalable_violation(map, cone, &x, alpha, strength)
    })?;
    Ok(assemble(Property::Scalable, Some(cone), Some(strength), cfg, outcomes, BTreeMap::new()))
}

/// Samples `x in K ∩ region`, `theta` in the theta range and tests
/// `theta f(x) {<=,<,<<}_K f(theta x)`.
pub fn check_subhomogeneous<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    cfg: &SampleConfig,
    strength: Strength,
) -> Result<PropertyReport> {
    setup(map, Some(cone), cfg)?;
    check_strength(cone, strength)?;
    let outcomes = par_samples(cfg.count, |i| {
        let mut rng = cfg.rng(i);
        let x = in_cone_and_box(cfg, cone, &mut rng)?;
        let theta = uniform(&mut rng, cfg.theta_range);
        subhomogeneous_violation(map, cone, &x, theta, strength)
    })?;
    Ok(assemble(Property::Subhomogeneous, Some(cone), Some(strength), cfg, outcomes, BTreeMap::new()))
}

/// Estimates the order-contraction constant `c` of `f` along `w`.
///
/// Returns `c_hat`, the largest per-sample coefficient, and a report whose
/// statistics hold `c_hat`, `delta_k`, `rate = c_hat * delta_k` and the flags
/// `contractive` (`c_hat < 1`) and `metric_contractive` (`rate < 1`). The
/// verdict is violated when some sample needs `c >= 1 - 1e-9`.
pub fn estimate_contraction<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    w: &Vector,
    cfg: &SampleConfig,
) -> Result<(f64, PropertyReport)> {
    let s = setup(map, Some(cone), cfg)?;
    w.check_dim(s.dim)?;
    if !cone.contains(w, true)? {
        return Err(Error::NotInterior(w.clone()));
    }
    let (e0, e1) = cfg.epsilon_range;
    let samples = par_samples(cfg.count, |i| {
        let mut rng = cfg.rng(i);
        let x = in_cone_and_box(cfg, cone, &mut rng)?;
        let eps = log_uniform(&mut rng, e0, e1);
        let c = contraction_coefficient(map, cone, w, &x, eps)?;
        Ok((c, contraction_violation(map, cone, w, &x, eps)?))
    })?;
    let c_hat = samples.iter().fold(0.0f64, |m, (c, _)| m.max(*c));
    let mut stats = BTreeMap::new();
    stats.insert("c_hat".to_string(), c_hat);
    stats.insert("contractive".to_string(), f64::from(u8::from(c_hat < 1.0)));
    match cone.delta_k(w, default_delta_resolution(s.dim)) {
        Ok(delta) => {
            stats.insert("delta_k".to_string(), delta);
            stats.insert("rate".to_string(), c_hat * delta);
            stats.insert("metric_contractive".to_string(), f64::from(u8::from(c_hat * delta < 1.0)));
        }
        Err(Error::OpeningAngle { .. } | Error::NonPositiveWeight { .. }) => {}
        Err(e) => return Err(e),
    }
    let outcomes = samples.into_iter().map(|(_, w)| w).collect();
    let property = Property::Contractive { w: w.clone() };
    Ok((c_hat, assemble(property, Some(cone), None, cfg, outcomes, stats)))
}
