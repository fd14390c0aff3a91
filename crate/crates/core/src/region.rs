//! Bounded regions used for degree computation and localisation.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::vector::Vector;

/// `{"type":"interval","a":0,"b":1}`, `{"type":"box","low":[..],"high":[..]}`,
/// `{"type":"disk","center":[..],"radius":r}`,
/// `{"type":"order_interval","cone":{..},"low":[..],"high":[..]}` or
/// `{"type":"annulus","outer":{..},"inner":{..}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Region {
    Interval { a: f64, b: f64 },
    Box { low: Vector, high: Vector },
    Disk { center: Vector, radius: f64 },
    /// `{ z : low <=_K z <=_K high }`
    OrderInterval { cone: Cone, low: Vector, high: Vector },
    /// `outer` minus `inner`
    Annulus { outer: std::boxed::Box<Region>, inner: std::boxed::Box<Region> },
}

impl Region {
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        let r = Self::Interval { a, b };
        r.validate()?;
        Ok(r)
    }

    pub fn boxed(low: Vector, high: Vector) -> Result<Self> {
        let r = Self::Box { low, high };
        r.validate()?;
        Ok(r)
    }

    pub fn disk(center: Vector, radius: f64) -> Result<Self> {
        let r = Self::Disk { center, radius };
        r.validate()?;
        Ok(r)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: Self = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        r.validate()?;
        Ok(r)
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Interval { .. } => 1,
            Self::Box { low, .. } => low.dim(),
            Self::Disk { center, .. } => center.dim(),
            Self::OrderInterval { cone, .. } => cone.dim(),
            Self::Annulus { outer, .. } => outer.dim(),
        }
    }

    /// Checks that the region has nonempty interior.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        match self {
            Self::Interval { a, b } => {
                if !(a.is_finite() && b.is_finite() && a < b) {
                    return bad(format!("interval [{a}, {b}] is empty or not finite"));
                }
            }
            Self::Box { low, high } => {
                low.same_dim(high)?;
                if low.iter().zip(high.iter()).any(|(l, h)| l >= h) {
                    return bad(format!("box {low} .. {high} has empty interior"));
                }
            }
            Self::Disk { radius, .. } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return bad(format!("disk radius must be positive, got {radius}"));
                }
            }
            Self::OrderInterval { cone, low, high } => {
                low.check_dim(cone.dim())?;
                high.check_dim(cone.dim())?;
                if !cone.compare(low, high)?.ll {
                    return bad("order interval needs low <<_K high".into());
                }
            }
            Self::Annulus { outer, inner } => {
                outer.validate()?;
                inner.validate()?;
                if outer.dim() != inner.dim() {
                    return Err(Error::DimensionMismatch { expected: outer.dim(), found: inner.dim() });
                }
                let (ilo, ihi) = inner.bounding_box()?;
                let (olo, ohi) = outer.bounding_box()?;
                if ilo.iter().zip(&olo).any(|(i, o)| i < o) || ihi.iter().zip(&ohi).any(|(i, o)| i > o) {
                    return bad("annulus inner region must lie inside the outer one".into());
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        x.check_dim(self.dim())?;
        Ok(match self {
            Self::Interval { a, b } => (*a..=*b).contains(&x[0]),
            Self::Box { low, high } => x.iter().zip(low.iter().zip(high.iter())).all(|(v, (l, h))| l <= v && v <= h),
            Self::Disk { center, radius } => x.sub(center).norm2() <= *radius,
            Self::OrderInterval { cone, low, high } => cone.compare(low, x)?.leq && cone.compare(x, high)?.leq,
            Self::Annulus { outer, inner } => outer.contains(x)? && !inner.interior_contains(x)?,
        })
    }

    fn interior_contains(&self, x: &Vector) -> Result<bool> {
        Ok(match self {
            Self::Interval { a, b } => *a < x[0] && x[0] < *b,
            Self::Box { low, high } => x.iter().zip(low.iter().zip(high.iter())).all(|(v, (l, h))| l < v && v < h),
            Self::Disk { center, radius } => x.sub(center).norm2() < *radius,
            Self::OrderInterval { cone, low, high } => cone.compare(low, x)?.ll && cone.compare(x, high)?.ll,
            Self::Annulus { outer, inner } => outer.interior_contains(x)? && !inner.contains(x)?,
        })
    }

    /// Smallest axis-aligned box containing the region.
    pub fn bounding_box(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        Ok(match self {
            Self::Interval { a, b } => (vec![*a], vec![*b]),
            Self::Box { low, high } => (low.as_slice().to_vec(), high.as_slice().to_vec()),
            Self::Disk { center, radius } => (
                center.iter().map(|c| c - radius).collect(),
                center.iter().map(|c| c + radius).collect(),
            ),
            Self::OrderInterval { cone, low, high } => order_interval_box(cone, low, high),
            Self::Annulus { outer, .. } => outer.bounding_box()?,
        })
    }

    /// Whether some point of the bounding box has a negative coordinate.
    pub fn crosses_negative_orthant(&self) -> Result<bool> {
        Ok(self.bounding_box()?.0.iter().any(|&l| l < 0.0))
    }

    /// Point of a closed boundary curve at parameter `s in [0, 1)`, for
    /// intervals' end points (`s < 1/2` gives `a`), 2-D boxes (counter-clockwise
    /// from `low`) and disks.
    pub(crate) fn boundary_point(&self, s: f64) -> Vector {
        match self {
            Self::Disk { center, radius } => {
                let t = TAU * s;
                Vector::from_finite(vec![center[0] + radius * t.cos(), center[1] + radius * t.sin()])
            }
            Self::Box { low, high } => {
                let (x0, y0, x1, y1) = (low[0], low[1], high[0], high[1]);
                let u = 4.0 * s;
                let (side, t) = ((u.floor() as usize).min(3), u - u.floor().min(3.0));
                let p = match side {
                    0 => [x0 + t * (x1 - x0), y0],
                    1 => [x1, y0 + t * (y1 - y0)],
                    2 => [x1 - t * (x1 - x0), y1],
                    _ => [x0, y1 - t * (y1 - y0)],
                };
                Vector::from_finite(p.to_vec())
            }
            _ => unreachable!("boundary curves exist for 2-D boxes and disks only"),
        }
    }
}

/// Bounding box of `(low + K) ∩ (high - K)`, by radial scan from the midpoint.
fn order_interval_box(cone: &Cone, low: &Vector, high: &Vector) -> (Vec<f64>, Vec<f64>) {
    if cone.is_orthant() {
        return (low.as_slice().to_vec(), high.as_slice().to_vec());
    }
    let mid = low.add(high).scale(0.5);
    let (from_low, to_high) = (mid.sub(low), high.sub(&mid));
    let mut lo = mid.as_slice().to_vec();
    let mut hi = lo.clone();
    let steps = if cone.dim() <= 2 { 1024 } else { 32 };
    crate::cone::for_each_cube_direction(cone.dim(), steps, |d| {
        let a = cone.ray_exit_unchecked(&from_low, d);
        let b = cone.ray_exit_unchecked(&to_high, &d.scale(-1.0));
        let t = match (a, b) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => return,
        };
        for i in 0..d.dim() {
            let p = mid[i] + t * d[i];
            lo[i] = lo[i].min(p);
            hi[i] = hi[i].max(p);
        }
    });
    (lo, hi)
}

/// Bounding box of `D(anchor) = { z : |z| <=_K anchor }`.
pub fn order_body_box(cone: &Cone, anchor: &Vector) -> Result<(Vec<f64>, Vec<f64>)> {
    if cone.is_orthant() {
        cone.gauge_norm(anchor, anchor)?;
        return Ok((anchor.iter().map(|a| -a).collect(), anchor.as_slice().to_vec()));
    }
    // D is symmetric in every coordinate, so scan the nonnegative directions
    let mut hi = vec![0.0f64; cone.dim()];
    let steps = if cone.dim() <= 2 { 1024 } else { 32 };
    let mut failure = None;
    crate::cone::for_each_cube_direction(cone.dim(), steps, |d| {
        if failure.is_some() || d.iter().any(|&c| c < 0.0) {
            return;
        }
        match cone.gauge_norm(d, anchor) {
            Ok(g) if g > 0.0 => {
                for (h, c) in hi.iter_mut().zip(d.iter()) {
                    *h = h.max(c / g);
                }
            }
            Ok(_) => {}
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok((hi.iter().map(|h| -h).collect(), hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector;

    #[test]
    fn validation() {
        assert!(Region::interval(1.0, 0.0).is_err());
        assert!(Region::boxed(vector![0.0, 0.0], vector![1.0, 0.0]).is_err());
        assert!(Region::disk(vector![0.0, 0.0], 0.0).is_err());
        assert!(Region::from_json(r#"{"type":"box","low":[0,0],"high":[1,2]}"#).is_ok());
        assert!(Region::from_json(r#"{"type":"interval","a":0,"b":1}"#).is_ok());
        assert!(Region::from_json(r#"{"type":"disk","center":[0,0],"radius":1}"#).is_ok());
        assert!(Region::from_json(r#"{"type":"sphere"}"#).is_err());
    }

    #[test]
    fn membership() {
        let r = Region::boxed(vector![0.0, 0.0], vector![2.0, 1.0]).unwrap();
        assert!(r.contains(&vector![1.0, 1.0]).unwrap());
        assert!(!r.contains(&vector![3.0, 0.5]).unwrap());
        let ring = Region::Annulus {
            outer: std::boxed::Box::new(Region::disk(vector![0.0, 0.0], 2.0).unwrap()),
            inner: std::boxed::Box::new(Region::disk(vector![0.0, 0.0], 1.0).unwrap()),
        };
        ring.validate().unwrap();
        assert!(ring.contains(&vector![1.5, 0.0]).unwrap());
        assert!(!ring.contains(&vector![0.5, 0.0]).unwrap());
    }

    #[test]
    fn box_boundary_is_counter_clockwise() {
        let r = Region::boxed(vector![0.0, 0.0], vector![2.0, 1.0]).unwrap();
        assert_eq!(r.boundary_point(0.0), vector![0.0, 0.0]);
        assert_eq!(r.boundary_point(0.25), vector![2.0, 0.0]);
        assert_eq!(r.boundary_point(0.5), vector![2.0, 1.0]);
        assert_eq!(r.boundary_point(0.75), vector![0.0, 1.0]);
        assert_eq!(r.boundary_point(0.125), vector![1.0, 0.0]);
    }

    #[test]
    fn order_interval_bounding_box() {
        // quadrant-equivalent ice-cream cone: box is [low, high]
        let k = Cone::ice_cream(vector![1.0, 1.0], std::f64::consts::FRAC_1_SQRT_2).unwrap();
        let (lo, hi) = order_interval_box(&k, &vector![0.0, 0.0], &vector![1.0, 2.0]);
        for (a, b) in lo.iter().chain(&hi).zip([0.0, 0.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-9, "{lo:?} {hi:?}");
        }
    }

    #[test]
    fn order_body_bounding_box() {
        let k = Cone::orthant(2).unwrap();
        assert_eq!(order_body_box(&k, &vector![1.0, 2.0]).unwrap(), (vec![-1.0, -2.0], vec![1.0, 2.0]));
        let k = Cone::ice_cream(vector![1.0, 1.0], std::f64::consts::FRAC_1_SQRT_2).unwrap();
        let (_, hi) = order_body_box(&k, &vector![1.0, 2.0]).unwrap();
        assert!((hi[0] - 1.0).abs() < 1e-9 && (hi[1] - 2.0).abs() < 1e-9, "{hi:?}");
    }
}
