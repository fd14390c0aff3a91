//! Topological degree of `I - f` at `0` in one and two dimensions.
//!
//! In 1-D the degree over `[a, b]` is read off the signs of `x - f(x)` at
//! the end points. In 2-D it is the winding number of `x - f(x)` along the
//! region boundary. The boundary is refined adaptively until every segment
//! turns by less than a quarter turn and is certified zero-free by a
//! Lipschitz argument (`min(|g_i|, |g_{i+1}|) > h L / 2` with the sampled
//! Lipschitz estimate inflated by [`LIPSCHITZ_SAFETY`]). Reports that fail
//! either test are unreliable and claim no degree.

mod locate;
mod theorem;

use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

pub use locate::{locate_fixed_points, LocateOptions, LocateReport, LocatedBox};
pub use theorem::{
    check_theorem, Conclusion, Hypothesis, TheoremOptions, TheoremReport, TheoremKind, Verification,
    POINT_NAMES,
};

use crate::error::{Error, Result};
use crate::map::{require_self_map, Mapping};
use crate::region::Region;
use crate::vector::Vector;

/// Boundary residuals at or below this are treated as zeros of `I - f`.
pub const DEFAULT_RESIDUAL_TOLERANCE: f64 = 1e-12;

/// Minimum initial number of boundary samples in 2-D.
pub const MIN_BOUNDARY_SAMPLES: usize = 64;

/// Inflation of the sampled Lipschitz estimate in the zero-free test.
pub const LIPSCHITZ_SAFETY: f64 = 2.0;

const MAX_BOUNDARY_POINTS: usize = 1 << 18;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport {
    /// `None` when the report is unreliable.
    pub degree: Option<i32>,
    /// Smallest sampled `|x - f(x)|_2` on the boundary.
    pub boundary_min_residual: f64,
    /// Boundary evaluations used.
    pub samples: usize,
    pub reliable: bool,
    /// Largest sampled slope of `x - f(x)` along the boundary (2-D only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lipschitz_estimate: Option<f64>,
}

impl DegreeReport {
    fn unreliable(boundary_min_residual: f64, samples: usize, lipschitz_estimate: Option<f64>) -> Self {
        Self { degree: None, boundary_min_residual, samples, reliable: false, lipschitz_estimate }
    }
}

fn residual<M: Mapping + ?Sized>(map: &M, x: &Vector) -> Result<Vector> {
    Ok(x.sub(&map.eval(x)?))
}

fn sign(v: f64) -> i32 {
    if v > 0.0 {
        1
    } else {
        -1
    }
}

/// `(sgn(b - f(b)) - sgn(a - f(a))) / 2`; unreliable when an end point
/// residual is at most `tol`.
pub fn degree_1d<M: Mapping + ?Sized>(map: &M, a: f64, b: f64, tol: f64) -> Result<DegreeReport> {
    require_dim(map, 1)?;
    if a.is_nan() || b.is_nan() || a >= b {
        return Err(Error::InvalidArgument(format!("interval [{a}, {b}] is empty")));
    }
    let ga = residual(map, &Vector::scalar(a)?)?[0];
    let gb = residual(map, &Vector::scalar(b)?)?[0];
    let min = ga.abs().min(gb.abs());
    if min <= tol {
        return Ok(DegreeReport::unreliable(min, 2, None));
    }
    Ok(DegreeReport {
        degree: Some((sign(gb) - sign(ga)) / 2),
        boundary_min_residual: min,
        samples: 2,
        reliable: true,
        lipschitz_estimate: None,
    })
}

fn require_dim<M: Mapping + ?Sized>(map: &M, dim: usize) -> Result<()> {
    let n = require_self_map(map)?;
    if n != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: n });
    }
    Ok(())
}

#[derive(Clone)]
struct BoundarySample {
    s: f64,
    point: Vector,
    g: Vector,
}

fn turn(a: &Vector, b: &Vector) -> f64 {
    let cross = a[0] * b[1] - a[1] * b[0];
    let dot = a[0] * b[0] + a[1] * b[1];
    cross.atan2(dot)
}

/// Winding number of `x - f(x)` along the boundary of a 2-D box or disk.
/// `boundary_samples` (at least 64, rounded up to a multiple of 4 so box
/// corners are samples) seeds the adaptive refinement.
pub fn degree_2d<M: Mapping + ?Sized>(
    map: &M,
    region: &Region,
    boundary_samples: usize,
    tol: f64,
) -> Result<DegreeReport> {
    require_dim(map, 2)?;
    region.validate()?;
    if region.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: region.dim() });
    }
    match region {
        Region::Box { .. } | Region::Disk { .. } => winding(map, region, boundary_samples, tol),
        Region::OrderInterval { .. } => {
            let (low, high) = region.bounding_box()?;
            let boxed = Region::boxed(Vector::new(low)?, Vector::new(high)?)?;
            winding(map, &boxed, boundary_samples, tol)
        }
        Region::Annulus { outer, inner } => {
            let o = degree_2d(map, outer, boundary_samples, tol)?;
            let i = degree_2d(map, inner, boundary_samples, tol)?;
            Ok(combine_annulus(o, i))
        }
        Region::Interval { .. } => unreachable!("intervals are 1-D"),
    }
}

fn combine_annulus(outer: DegreeReport, inner: DegreeReport) -> DegreeReport {
    let reliable = outer.reliable && inner.reliable;
    DegreeReport {
        degree: if reliable { Some(outer.degree.unwrap() - inner.degree.unwrap()) } else { None },
        boundary_min_residual: outer.boundary_min_residual.min(inner.boundary_min_residual),
        samples: outer.samples + inner.samples,
        reliable,
        lipschitz_estimate: match (outer.lipschitz_estimate, inner.lipschitz_estimate) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        },
    }
}

fn winding<M: Mapping + ?Sized>(map: &M, region: &Region, boundary_samples: usize, tol: f64) -> Result<DegreeReport> {
    if boundary_samples < MIN_BOUNDARY_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "at least {MIN_BOUNDARY_SAMPLES} boundary samples are needed, got {boundary_samples}"
        )));
    }
    let n = boundary_samples.div_ceil(4) * 4;
    let sample = |s: f64| -> Result<BoundarySample> {
        let point = region.boundary_point(s);
        let g = residual(map, &point)?;
        Ok(BoundarySample { s, point, g })
    };
    let mut ring: Vec<BoundarySample> = (0..n).map(|i| sample(i as f64 / n as f64)).collect::<Result<_>>()?;
    let mut lipschitz = 0.0f64;
    loop {
        let min_residual = ring.iter().map(|b| b.g.norm2()).fold(f64::INFINITY, f64::min);
        if min_residual <= tol {
            return Ok(DegreeReport::unreliable(min_residual, ring.len(), Some(lipschitz)));
        }
        let len = ring.len();
        let segment = |i: usize| (&ring[i], &ring[(i + 1) % len]);
        for i in 0..len {
            let (a, b) = segment(i);
            let h = a.point.sub(&b.point).norm2();
            if h > 0.0 {
                lipschitz = lipschitz.max(a.g.sub(&b.g).norm2() / h);
            }
        }
        let bad: Vec<bool> = (0..len)
            .map(|i| {
                let (a, b) = segment(i);
                let h = a.point.sub(&b.point).norm2();
                let zero_free = a.g.norm2().min(b.g.norm2()) > 0.5 * h * LIPSCHITZ_SAFETY * lipschitz;
                turn(&a.g, &b.g).abs() >= FRAC_PI_2 || !zero_free
            })
            .collect();
        if !bad.contains(&true) {
            let total: f64 = (0..len).map(|i| turn(&segment(i).0.g, &segment(i).1.g)).sum();
            return Ok(DegreeReport {
                degree: Some((total / TAU).round() as i32),
                boundary_min_residual: min_residual,
                samples: len,
                reliable: true,
                lipschitz_estimate: Some(lipschitz),
            });
        }
        let extra = bad.iter().filter(|&&b| b).count();
        if len + extra > MAX_BOUNDARY_POINTS {
            return Ok(DegreeReport::unreliable(min_residual, len, Some(lipschitz)));
        }
        let mut refined = Vec::with_capacity(len + extra);
        for i in 0..len {
            refined.push(ring[i].clone());
            if bad[i] {
                let next = if i + 1 == len { 1.0 } else { ring[i + 1].s };
                refined.push(sample(0.5 * (ring[i].s + next))?);
            }
        }
        ring = refined;
    }
}

/// Degree of `I - f` over `region` in dimension 1 or 2, with
/// `boundary_samples` used in 2-D. 1-D regions are reduced to intervals
/// (an annulus to the difference of its outer and inner degrees).
pub fn degree<M: Mapping + ?Sized>(
    map: &M,
    region: &Region,
    boundary_samples: usize,
    tol: f64,
) -> Result<DegreeReport> {
    let dim = require_self_map(map)?;
    if region.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: region.dim() });
    }
    region.validate()?;
    match dim {
        1 => match region {
            Region::Annulus { outer, inner } => {
                let o = degree(map, outer, boundary_samples, tol)?;
                let i = degree(map, inner, boundary_samples, tol)?;
                Ok(combine_annulus(o, i))
            }
            _ => {
                let (low, high) = region.bounding_box()?;
                degree_1d(map, low[0], high[0], tol)
            }
        },
        2 => degree_2d(map, region, boundary_samples, tol),
        n => Err(Error::Unsupported(format!("degree in dimension {n}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{example3, FnMap, MapHandle};
    use crate::vector;

    fn unit_disk() -> Region {
        Region::disk(vector![0.0, 0.0], 1.0).unwrap()
    }

    #[test]
    fn example3_interval_degrees() {
        let f = MapHandle::builtin("example3").unwrap();
        let d = |a, b| degree_1d(&f, a, b, 1e-12).unwrap().degree.unwrap();
        assert_eq!(d(0.0, 0.1), 1);
        assert_eq!(d(0.32, 0.34), -1);
        assert_eq!(d(0.9, 1.0), 1);
        assert_eq!(d(0.0, 1.0), d(0.0, 0.1) + d(0.32, 0.34) + d(0.9, 1.0));
        // sign oracle
        assert!(0.32 - example3(0.32) > 0.0 && 0.34 - example3(0.34) < 0.0);
    }

    #[test]
    fn endpoint_zero_is_unreliable() {
        let id = FnMap::new(1, |x: &[f64]| x.to_vec());
        let r = degree_1d(&id, 0.0, 1.0, 1e-12).unwrap();
        assert!(!r.reliable && r.degree.is_none());
    }

    #[test]
    fn units_and_antipodal() {
        let zero = FnMap::new(2, |_| vec![0.0, 0.0]);
        assert_eq!(degree_2d(&zero, &unit_disk(), 64, 1e-12).unwrap().degree, Some(1));
        let double = FnMap::new(2, |x: &[f64]| vec![2.0 * x[0], 2.0 * x[1]]);
        assert_eq!(degree_2d(&double, &unit_disk(), 64, 1e-12).unwrap().degree, Some(1));
        let square = Region::boxed(vector![-1.0, -1.0], vector![1.0, 1.0]).unwrap();
        assert_eq!(degree_2d(&zero, &square, 64, 1e-12).unwrap().degree, Some(1));
    }

    #[test]
    fn complex_square_winds_twice() {
        // x - f(x) = (x^2 - y^2, 2xy)
        let f = FnMap::new(2, |p: &[f64]| {
            let (x, y) = (p[0], p[1]);
            vec![x - (x * x - y * y), y - 2.0 * x * y]
        });
        let r = degree_2d(&f, &unit_disk(), 64, 1e-12).unwrap();
        assert_eq!(r.degree, Some(2));
        let reflected = FnMap::new(2, |p: &[f64]| {
            let (x, y) = (p[0], p[1]);
            vec![x - (x * x - y * y), y + 2.0 * x * y]
        });
        assert_eq!(degree_2d(&reflected, &unit_disk(), 64, 1e-12).unwrap().degree, Some(-2));
    }

    #[test]
    fn root_free_box_has_degree_zero() {
        let zero = FnMap::new(2, |_| vec![0.0, 0.0]);
        let away = Region::boxed(vector![2.0, 2.0], vector![3.0, 5.0]).unwrap();
        assert_eq!(degree_2d(&zero, &away, 64, 1e-12).unwrap().degree, Some(0));
    }

    #[test]
    fn zero_on_the_boundary_is_unreliable() {
        let zero = FnMap::new(2, |_| vec![0.0, 0.0]);
        let touching = Region::boxed(vector![0.0, -1.0], vector![1.0, 1.0]).unwrap();
        let r = degree_2d(&zero, &touching, 64, 1e-12).unwrap();
        assert!(!r.reliable && r.degree.is_none());
        // a root just off a corner forces refinement but stays reliable
        let near = Region::boxed(vector![1e-3, 1e-3], vector![1.0, 1.0]).unwrap();
        let r = degree_2d(&zero, &near, 64, 1e-12).unwrap();
        assert_eq!(r.degree, Some(0));
    }

    #[test]
    fn annulus_subtracts_inner_degree() {
        let zero = FnMap::new(2, |_| vec![0.0, 0.0]);
        let ring = Region::Annulus {
            outer: Box::new(Region::disk(vector![0.0, 0.0], 2.0).unwrap()),
            inner: Box::new(unit_disk()),
        };
        assert_eq!(degree(&zero, &ring, 64, 1e-12).unwrap().degree, Some(0));
        let f = MapHandle::builtin("example3").unwrap();
        let gap = Region::Annulus {
            outer: Box::new(Region::interval(0.0, 1.0).unwrap()),
            inner: Box::new(Region::interval(0.9, 1.0).unwrap()),
        };
        assert_eq!(degree(&f, &gap, 64, 1e-12).unwrap().degree, Some(0));
    }

    #[test]
    fn sample_floor() {
        let zero = FnMap::new(2, |_| vec![0.0, 0.0]);
        assert!(degree_2d(&zero, &unit_disk(), 8, 1e-12).is_err());
        assert!(degree(&FnMap::new(3, |x: &[f64]| x.to_vec()), &Region::boxed(vector![0.0, 0.0, 0.0], vector![1.0, 1.0, 1.0]).unwrap(), 64, 1e-12).is_err());
    }
}
