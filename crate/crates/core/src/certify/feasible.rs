use serde::{Deserialize, Serialize};

use super::sampling::{cone_direction, in_box, par_samples};
use super::{setup, SampleConfig};
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::map::Mapping;
use crate::vector::Vector;

/// Positivity grade of a point of `S_f = { x >=_K 0 : f(x) <=_K x }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Grade {
    /// `x >=_K 0`
    Feasible,
    /// `x >_K 0`
    StrictlyFeasible,
    /// `x >>_K 0`
    StronglyFeasible,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasiblePoint {
    pub x: Vector,
    pub grade: Grade,
    /// `x - f(x)`, which lies in `K`.
    pub residual: Vector,
}

/// Grades `x`, or returns `None` when `x` is not in `S_f`.
pub fn grade_point<M: Mapping + ?Sized>(map: &M, cone: &Cone, x: &Vector) -> Result<Option<FeasiblePoint>> {
    x.check_dim(cone.dim())?;
    if !cone.contains(x, false)? {
        return Ok(None);
    }
    let fx = map.eval(x)?;
    if !cone.leq(&fx, x)? {
        return Ok(None);
    }
    let grade = if cone.is_solid() && cone.contains(x, true)? {
        Grade::StronglyFeasible
    } else if !x.is_zero() {
        Grade::StrictlyFeasible
    } else {
        Grade::Feasible
    };
    Ok(Some(FeasiblePoint { residual: x.sub(&fx), x: x.clone(), grade }))
}

/// Samples the region and keeps the points of `K ∩ region` that lie in
/// `S_f`, in sample order. Samples outside the cone are skipped, so an empty
/// list is a valid outcome.
pub fn find_feasible<M: Mapping + ?Sized>(map: &M, cone: &Cone, cfg: &SampleConfig) -> Result<Vec<FeasiblePoint>> {
    setup(map, Some(cone), cfg)?;
    let graded = par_samples(cfg.count, |i| {
        let x = in_box(cfg, &mut cfg.rng(i));
        grade_point(map, cone, &x)
    })?;
    Ok(graded.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusProbe {
    pub radius: f64,
    pub samples: usize,
    /// Sphere samples lying in `S_f`.
    pub feasible: usize,
    /// `|f(x)|_inf > R` for every sphere sample.
    pub exit_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SfProbeReport {
    pub probes: Vec<RadiusProbe>,
    pub largest_feasible_radius: Option<f64>,
    /// No feasible sphere point at the largest radius.
    pub bounded: bool,
    pub exit_condition_at_top: bool,
    pub seed: u64,
}

/// Samples the spheres `{ |x|_inf = R } ∩ K` for each radius of the
/// increasing schedule and records which sampled points lie in `S_f`.
/// Only `cfg.seed` and `cfg.count` are used.
pub fn probe_sf_bounded<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    radii: &[f64],
    cfg: &SampleConfig,
) -> Result<SfProbeReport> {
    let dim = crate::map::require_self_map(map)?;
    if cone.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: cone.dim() });
    }
    if radii.is_empty() {
        return Err(Error::InvalidArgument("radius schedule is empty".into()));
    }
    if radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) || radii.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::InvalidArgument("radii must be positive, finite and increasing".into()));
    }
    let mut probes = Vec::with_capacity(radii.len());
    for (j, &radius) in radii.iter().enumerate() {
        let outcomes = par_samples(cfg.count, |i| {
            let mut rng = cfg.rng(j * cfg.count + i);
            let k = cone_direction(cone, &mut rng)?;
            let x = k.scale(radius / k.norm_inf());
            let fx = map.eval(&x)?;
            let feasible = cone.contains(&x, false)? && cone.leq(&fx, &x)?;
            Ok((feasible, fx.norm_inf() > radius))
        })?;
        probes.push(RadiusProbe {
            radius,
            samples: cfg.count,
            feasible: outcomes.iter().filter(|o| o.0).count(),
            exit_holds: outcomes.iter().all(|o| o.1),
        });
    }
    let largest_feasible_radius = probes.iter().rev().find(|p| p.feasible > 0).map(|p| p.radius);
    let top = probes.last().expect("schedule is nonempty");
    Ok(SfProbeReport {
        bounded: top.feasible == 0,
        exit_condition_at_top: top.exit_holds,
        largest_feasible_radius,
        probes,
        seed: cfg.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{example3, FnMap, MapHandle};
    use crate::vector;

    #[test]
    fn example3_point_is_strongly_feasible() {
        let f = MapHandle::builtin("example3").unwrap();
        let k = Cone::orthant(1).unwrap();
        let p = grade_point(&f, &k, &vector![0.3]).unwrap().unwrap();
        assert_eq!(p.grade, Grade::StronglyFeasible);
        assert!((p.residual[0] - (0.3 - example3(0.3))).abs() < 1e-15);
        assert!(grade_point(&f, &k, &vector![0.9]).unwrap().is_none());
        assert!(grade_point(&f, &k, &vector![-0.1]).unwrap().is_none());
    }

    #[test]
    fn sampled_feasible_points_satisfy_the_scalar_oracle() {
        let f = MapHandle::builtin("example3").unwrap();
        let k = Cone::orthant(1).unwrap();
        // f(x) > x between the middle and upper fixed points
        let middle = SampleConfig::new(0, 2_000, vector![0.35], vector![0.9]).unwrap();
        assert!(find_feasible(&f, &k, &middle).unwrap().is_empty());
        let cfg = SampleConfig::cube(0, 2_000, 1, 0.0, 1.0).unwrap();
        let points = find_feasible(&f, &k, &cfg).unwrap();
        assert!(!points.is_empty());
        for p in &points {
            assert!(example3(p.x[0]) <= p.x[0]);
        }
        let kept = points.len();
        let oracle = (0..2_000)
            .filter(|&i| {
                let x = in_box(&cfg, &mut cfg.rng(i))[0];
                example3(x) <= x
            })
            .count();
        assert_eq!(kept, oracle);
    }

    #[test]
    fn shifted_identity_has_no_feasible_points() {
        let f = FnMap::new(1, |x: &[f64]| vec![x[0] + 1.0]);
        let k = Cone::orthant(1).unwrap();
        let cfg = SampleConfig::cube(0, 1_000, 1, 0.0, 100.0).unwrap();
        assert!(find_feasible(&f, &k, &cfg).unwrap().is_empty());
        let r = probe_sf_bounded(&f, &k, &[1.0, 10.0, 100.0], &cfg).unwrap();
        assert!(r.bounded && r.exit_condition_at_top);
        assert_eq!(r.largest_feasible_radius, None);
    }

    #[test]
    fn unbounded_feasible_sets() {
        let k = Cone::orthant(2).unwrap();
        let cfg = SampleConfig::cube(1, 200, 2, 0.0, 1.0).unwrap();
        let half = FnMap::new(2, |x: &[f64]| x.iter().map(|v| v / 2.0).collect());
        let r = probe_sf_bounded(&half, &k, &[1.0, 10.0, 1e3], &cfg).unwrap();
        assert!(!r.bounded && !r.exit_condition_at_top);
        assert!(r.probes.iter().all(|p| p.feasible == p.samples));

        let f = MapHandle::builtin("example3").unwrap();
        let k1 = Cone::orthant(1).unwrap();
        let r = probe_sf_bounded(&f, &k1, &[2.0, 20.0, 200.0], &cfg).unwrap();
        assert!(!r.bounded);
        assert_eq!(r.largest_feasible_radius, Some(200.0));
    }

    #[test]
    fn grades_follow_positivity() {
        let zero = FnMap::new(2, |_| vec![0.0, 0.0]);
        let k = Cone::orthant(2).unwrap();
        let grade = |x| grade_point(&zero, &k, &x).unwrap().unwrap().grade;
        assert_eq!(grade(vector![0.0, 0.0]), Grade::Feasible);
        assert_eq!(grade(vector![0.0, 1.0]), Grade::StrictlyFeasible);
        assert_eq!(grade(vector![2.0, 1.0]), Grade::StronglyFeasible);
    }

    #[test]
    fn bad_schedules() {
        let f = FnMap::new(1, |x: &[f64]| x.to_vec());
        let k = Cone::orthant(1).unwrap();
        let cfg = SampleConfig::cube(1, 10, 1, 0.0, 1.0).unwrap();
        assert!(probe_sf_bounded(&f, &k, &[], &cfg).is_err());
        assert!(probe_sf_bounded(&f, &k, &[2.0, 1.0], &cfg).is_err());
    }
}
