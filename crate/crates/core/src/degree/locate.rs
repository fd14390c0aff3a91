use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{degree_1d, degree_2d, DegreeReport, DEFAULT_RESIDUAL_TOLERANCE, MIN_BOUNDARY_SAMPLES};
use crate::error::{Error, Result};
use crate::map::{require_self_map, Mapping};
use crate::region::Region;
use crate::vector::Vector;

/// Split fractions tried in order when a midpoint split puts a zero of
/// `I - f` on a child boundary.
const SPLITS: [f64; 6] = [0.5, 0.4637, 0.5361, 0.4219, 0.5781, 0.3906];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocateOptions {
    /// Levels of bisection; minimal boxes have side `2^-max_depth` of the
    /// starting box (up to shifted splits).
    pub max_depth: usize,
    pub boundary_samples: usize,
    /// Residual tolerance for the degree computations.
    pub tol: f64,
    /// Cap on boxes alive at one level.
    pub max_boxes: usize,
}

impl Default for LocateOptions {
    fn default() -> Self {
        Self { max_depth: 20, boundary_samples: MIN_BOUNDARY_SAMPLES, tol: DEFAULT_RESIDUAL_TOLERANCE, max_boxes: 4096 }
    }
}

impl LocateOptions {
    pub fn with_depth(mut self, max_depth: usize) -> Self {
        self.max_depth = max_depth;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocatedBox {
    pub low: Vec<f64>,
    pub high: Vec<f64>,
    pub degree: Option<i32>,
    pub reliable: bool,
    /// 1-D: the bisection root of `x - f(x)` in the box; 2-D: the centre.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimate: Option<Vector>,
    /// `|f(estimate) - estimate|_inf`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_inf: Option<f64>,
}

impl LocatedBox {
    fn contains(&self, x: &Vector) -> bool {
        x.iter().zip(self.low.iter().zip(&self.high)).all(|(v, (l, h))| l <= v && v <= h)
    }

    pub fn width(&self) -> f64 {
        self.low.iter().zip(&self.high).map(|(l, h)| h - l).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocateReport {
    /// Degree over the starting box (the region's bounding box).
    pub region_degree: DegreeReport,
    /// Minimal boxes with nonzero degree, sorted by lower corner.
    pub boxes: Vec<LocatedBox>,
    /// Boxes whose children could not be given reliable degrees; fixed
    /// points there are not isolated at this resolution.
    pub unresolved: Vec<LocatedBox>,
    /// Minimal boxes dropped because their estimate is outside the region.
    pub filtered_out: usize,
    /// The box cap was hit; the remaining boxes are in `unresolved`.
    pub truncated: bool,
}

impl LocateReport {
    pub fn estimates(&self) -> Vec<Vector> {
        self.boxes.iter().filter_map(|b| b.estimate.clone()).collect()
    }

    pub fn degree_sum(&self) -> i32 {
        self.boxes.iter().filter_map(|b| b.degree).sum()
    }
}

fn box_degree<M: Mapping + ?Sized>(map: &M, low: &[f64], high: &[f64], opts: &LocateOptions) -> Result<DegreeReport> {
    if low.len() == 1 {
        degree_1d(map, low[0], high[0], opts.tol)
    } else {
        let region = Region::boxed(Vector::new(low.to_vec())?, Vector::new(high.to_vec())?)?;
        degree_2d(map, &region, opts.boundary_samples, opts.tol)
    }
}

fn make_box(low: Vec<f64>, high: Vec<f64>, report: &DegreeReport) -> LocatedBox {
    LocatedBox { low, high, degree: report.degree, reliable: report.reliable, estimate: None, residual_inf: None }
}

/// Whether every component of `x - f(x)` takes both signs on a grid of the
/// box; boxes of degree 0 are kept only then.
fn may_contain_root<M: Mapping + ?Sized>(map: &M, b: &LocatedBox) -> Result<bool> {
    let n = b.low.len();
    let steps = if n == 1 { 16 } else { 8 };
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    let mut index = vec![0usize; n];
    loop {
        let x: Vec<f64> = (0..n).map(|i| b.low[i] + (b.high[i] - b.low[i]) * index[i] as f64 / steps as f64).collect();
        let x = Vector::from_finite(x);
        let g = x.sub(&map.eval(&x)?);
        for i in 0..n {
            lo[i] = lo[i].min(g[i]);
            hi[i] = hi[i].max(g[i]);
        }
        let mut axis = 0;
        while axis < n && index[axis] == steps {
            index[axis] = 0;
            axis += 1;
        }
        if axis == n {
            break;
        }
        index[axis] += 1;
    }
    Ok((0..n).all(|i| lo[i] <= 0.0 && hi[i] >= 0.0))
}

enum Split {
    Children(Vec<LocatedBox>),
    Unresolved(LocatedBox),
}

fn split<M: Mapping + ?Sized>(map: &M, parent: &LocatedBox, opts: &LocateOptions) -> Result<Split> {
    let n = parent.low.len();
    'fractions: for t in SPLITS {
        let mid: Vec<f64> = (0..n).map(|i| parent.low[i] + t * (parent.high[i] - parent.low[i])).collect();
        let mut children = Vec::with_capacity(1 << n);
        for corner in 0..(1usize << n) {
            let low: Vec<f64> = (0..n).map(|i| if corner >> i & 1 == 0 { parent.low[i] } else { mid[i] }).collect();
            let high: Vec<f64> = (0..n).map(|i| if corner >> i & 1 == 0 { mid[i] } else { parent.high[i] }).collect();
            let report = box_degree(map, &low, &high, opts)?;
            if !report.reliable {
                continue 'fractions;
            }
            children.push(make_box(low, high, &report));
        }
        return Ok(Split::Children(children));
    }
    Ok(Split::Unresolved(parent.clone()))
}

fn estimate<M: Mapping + ?Sized>(map: &M, b: &mut LocatedBox) -> Result<()> {
    let x = if b.low.len() == 1 {
        let g = |x: f64| -> Result<f64> { Ok(x - map.eval(&Vector::scalar(x)?)?[0]) };
        let (mut a, mut c) = (b.low[0], b.high[0]);
        let ga = g(a)?;
        for _ in 0..200 {
            let m = 0.5 * (a + c);
            if m <= a || m >= c {
                break;
            }
            let gm = g(m)?;
            if gm == 0.0 {
                a = m;
                c = m;
                break;
            }
            if (gm > 0.0) == (ga > 0.0) {
                a = m;
            } else {
                c = m;
            }
        }
        Vector::scalar(0.5 * (a + c))?
    } else {
        Vector::from_finite(b.low.iter().zip(&b.high).map(|(l, h)| 0.5 * (l + h)).collect())
    };
    b.residual_inf = Some(map.eval(&x)?.distance_inf(&x));
    b.estimate = Some(x);
    Ok(())
}

/// Bisects the bounding box of `region` level by level (all `2^N`
/// children of every live box, in parallel) down to `max_depth`. Children
/// with nonzero degree are kept; children of degree zero are kept only when
/// the sign heuristic does not rule out a root. Minimal boxes with nonzero
/// degree get an estimate and are kept when the estimate lies in `region`.
pub fn locate_fixed_points<M: Mapping + ?Sized>(map: &M, region: &Region, opts: &LocateOptions) -> Result<LocateReport> {
    let dim = require_self_map(map)?;
    if region.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: region.dim() });
    }
    if dim > 2 {
        return Err(Error::Unsupported(format!("localisation by degree in dimension {dim}")));
    }
    region.validate()?;
    let (low, high) = region.bounding_box()?;
    let region_degree = box_degree(map, &low, &high, opts)?;
    let root = make_box(low, high, &region_degree);
    let mut report = LocateReport {
        region_degree: region_degree.clone(),
        boxes: Vec::new(),
        unresolved: Vec::new(),
        filtered_out: 0,
        truncated: false,
    };
    if !region_degree.reliable {
        report.unresolved.push(root);
        return Ok(report);
    }
    let mut live = vec![root];
    for _ in 0..opts.max_depth {
        let splits: Vec<Result<Split>> = live.par_iter().map(|b| split(map, b, opts)).collect();
        let mut next = Vec::new();
        for s in splits {
            match s? {
                Split::Children(children) => {
                    for c in children {
                        if c.degree != Some(0) || may_contain_root(map, &c)? {
                            next.push(c);
                        }
                    }
                }
                Split::Unresolved(b) => report.unresolved.push(b),
            }
        }
        if next.len() > opts.max_boxes {
            report.truncated = true;
            report.unresolved.extend(next);
            live = Vec::new();
            break;
        }
        live = next;
    }
    for mut b in live.into_iter().filter(|b| b.degree.is_some_and(|d| d != 0)) {
        estimate(map, &mut b)?;
        let inside = match &b.estimate {
            Some(x) => region.contains(x)? && b.contains(x),
            None => false,
        };
        if inside {
            report.boxes.push(b);
        } else {
            report.filtered_out += 1;
        }
    }
    report.boxes.sort_by(|a, b| a.low.iter().zip(&b.low).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{example3, FnMap, MapHandle};
    use crate::vector;

    fn roots() -> [f64; 3] {
        let g = |x: f64| x - example3(x);
        let bisect = |mut a: f64, mut b: f64| {
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if (g(m) > 0.0) == (g(a) > 0.0) {
                    a = m
                } else {
                    b = m
                }
            }
            a
        };
        [bisect(0.0, 0.1), bisect(0.3, 0.35), bisect(0.9, 1.0)]
    }

    #[test]
    fn example3_three_boxes() {
        let f = MapHandle::builtin("example3").unwrap();
        let r = locate_fixed_points(&f, &Region::interval(0.0, 1.0).unwrap(), &LocateOptions::default()).unwrap();
        let degrees: Vec<i32> = r.boxes.iter().map(|b| b.degree.unwrap()).collect();
        assert_eq!(degrees, vec![1, -1, 1]);
        for (b, root) in r.boxes.iter().zip(roots()) {
            assert!((b.estimate.as_ref().unwrap()[0] - root).abs() < 1e-6);
            assert!(b.width() <= 2.0f64.powi(-19));
        }
        assert_eq!(r.degree_sum(), r.region_degree.degree.unwrap());
        assert!(r.unresolved.is_empty());
    }

    #[test]
    fn identity_is_unresolved() {
        let id = FnMap::new(2, |x: &[f64]| x.to_vec());
        let region = Region::boxed(vector![0.0, 0.0], vector![1.0, 1.0]).unwrap();
        let r = locate_fixed_points(&id, &region, &LocateOptions::default().with_depth(4)).unwrap();
        assert!(r.boxes.is_empty());
        assert_eq!(r.unresolved.len(), 1);
    }

    #[test]
    fn piecewise_single_root() {
        let f = MapHandle::builtin("piecewise_contraction").unwrap();
        let r = locate_fixed_points(&f, &Region::interval(0.0, 10.0).unwrap(), &LocateOptions::default()).unwrap();
        assert_eq!(r.boxes.len(), 1);
        assert_eq!(r.boxes[0].degree, Some(1));
        assert!((r.boxes[0].estimate.as_ref().unwrap()[0] - 0.010102051443364402).abs() < 1e-9);
    }

    #[test]
    fn lifted_map_locates_the_same_roots() {
        // (f(x1), x2/2 + 1) has fixed points (r, 2) for each root r of f
        let f = FnMap::new(2, |x: &[f64]| vec![example3(x[0]), 0.5 * x[1] + 1.0]);
        let region = Region::boxed(vector![0.0, 1.0], vector![1.0, 3.3]).unwrap();
        let r = locate_fixed_points(&f, &region, &LocateOptions::default().with_depth(14)).unwrap();
        assert_eq!(r.boxes.len(), 3);
        for (b, root) in r.boxes.iter().zip(roots()) {
            assert!(b.low[0] <= root && root <= b.high[0]);
            assert!(b.low[1] <= 2.0 && 2.0 <= b.high[1]);
        }
        assert_eq!(r.degree_sum(), r.region_degree.degree.unwrap());
    }

    #[test]
    fn shifted_split_avoids_a_root_on_the_midpoint() {
        // root exactly at 0.5 = first split point
        let f = FnMap::new(1, |x: &[f64]| vec![0.5 * x[0] + 0.25]);
        let r = locate_fixed_points(&f, &Region::interval(0.0, 1.0).unwrap(), &LocateOptions::default()).unwrap();
        assert_eq!(r.boxes.len(), 1);
        assert!((r.boxes[0].estimate.as_ref().unwrap()[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn disk_membership_filter() {
        let f = FnMap::new(2, |x: &[f64]| vec![0.5 * x[0] + 0.45, 0.5 * x[1] + 0.45]);
        let disk = Region::disk(vector![0.0, 0.0], 1.0).unwrap();
        let r = locate_fixed_points(&f, &disk, &LocateOptions::default().with_depth(10)).unwrap();
        assert!(r.boxes.is_empty());
        assert_eq!(r.filtered_out, 1);
    }
}
