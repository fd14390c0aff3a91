use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

use super::sampling::{par_samples, simplex_point, uniform};
use super::{assemble, setup, Property, PropertyReport, SampleConfig, Witness};
use crate::error::{Error, Result};
use crate::map::Mapping;
use crate::vector::Vector;

const ANGLE_SLACK: f64 = 1e-12;

fn cosine(gamma: f64) -> f64 {
    if gamma.abs() == FRAC_PI_2 {
        0.0
    } else {
        gamma.cos()
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_nan() || gamma.abs() > FRAC_PI_2 {
        return Err(Error::DomainViolation { name: "gamma", value: gamma });
    }
    Ok(())
}

struct Alignment {
    inner: f64,
    norms: f64,
}

fn alignment<M: Mapping + ?Sized>(map: &M, x: &Vector, x_prime: &Vector) -> Result<Alignment> {
    let r = map.eval(x)?.sub(x);
    let rp = map.eval(x_prime)?.sub(x_prime);
    Ok(Alignment { inner: r.dot(&rp), norms: r.norm2() * rp.norm2() })
}

/// Violation of `<f(x) - x, f(x') - x'> >= cos(gamma) |f(x) - x|_2 |f(x') - x'|_2`.
/// The witness sides are `lhs = [cos(gamma) |r| |r'|]` and `rhs = [<r, r'>]`.
pub fn guiding_violation<M: Mapping + ?Sized>(
    map: &M,
    x: &Vector,
    x_prime: &Vector,
    gamma: f64,
) -> Result<Option<Witness>> {
    check_gamma(gamma)?;
    let a = alignment(map, x, x_prime)?;
    let bound = cosine(gamma) * a.norms;
    Ok((a.inner < bound - ANGLE_SLACK * a.norms).then(|| Witness {
        x: x.clone(),
        x_prime: Some(x_prime.clone()),
        parameter: None,
        lhs: Vector::from_finite(vec![bound]),
        rhs: Vector::from_finite(vec![a.inner]),
    }))
}

fn guiding_check<M: Mapping + ?Sized>(
    map: &M,
    gamma: f64,
    cfg: &SampleConfig,
    property: Property,
) -> Result<PropertyReport> {
    check_gamma(gamma)?;
    let s = setup(map, None, cfg)?;
    let levels = cfg.level_range_or_default();
    let samples = par_samples(cfg.count, |i| {
        let mut rng = cfg.rng(i);
        let level = uniform(&mut rng, levels);
        let x = simplex_point(s.dim, level, &mut rng);
        let x_prime = simplex_point(s.dim, level, &mut rng);
        let a = alignment(map, &x, &x_prime)?;
        let cos = (a.norms > 0.0).then(|| (a.inner / a.norms).clamp(-1.0, 1.0));
        Ok((cos, guiding_violation(map, &x, &x_prime, gamma)?))
    })?;
    let infimum = samples.iter().filter_map(|s| s.0).fold(1.0, f64::min);
    let mut stats = BTreeMap::new();
    stats.insert("infimum_cosine".to_string(), infimum);
    let outcomes = samples.into_iter().map(|s| s.1).collect();
    Ok(assemble(property, None, None, cfg, outcomes, stats))
}

/// Samples pairs of the orthant with `|x|_1 = |x'|_1` and tests
/// `<f(x) - x, f(x') - x'> >= 0`. The 1-norm level is uniform in the level
/// range; both points are Dirichlet on that simplex.
pub fn check_guiding_g<M: Mapping + ?Sized>(map: &M, cfg: &SampleConfig) -> Result<PropertyReport> {
    guiding_check(map, FRAC_PI_2, cfg, Property::GuidingG)
}

/// As [`check_guiding_g`] with the angle condition for `gamma`. The
/// statistic `infimum_cosine` is the smallest observed cosine between the
/// two residuals; pairs with a vanishing residual are skipped and the
/// statistic is `1` when every pair is skipped.
pub fn check_guiding_g2<M: Mapping + ?Sized>(map: &M, gamma: f64, cfg: &SampleConfig) -> Result<PropertyReport> {
    guiding_check(map, gamma, cfg, Property::GuidingG2 { gamma })
}
