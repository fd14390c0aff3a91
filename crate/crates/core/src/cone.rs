//! Convex cones and the partial orders they induce.
//!
//! Two cone families are supported: the nonnegative orthant `R^N_+` and the
//! ice-cream cone `C(w, beta) = { v : <v, w> >= beta |v| |w| }`. A cone `K`
//! orders `R^N` by `x <=_K y  iff  y - x in K`, with the strict relation
//! `x <_K y` (additionally `x != y`) and the interior relation
//! `x <<_K y  iff  y - x in int K`.
//!
//! Membership is decided with a relative boundary tolerance: `v` is accepted
//! when it violates the defining inequality by at most `tolerance * |v|`, and
//! is interior only when it satisfies it with slack larger than that. The
//! zero vector is therefore never interior. Comparisons of `x` and `y` scale
//! the slack by `max(|x|, |y|, |y - x|)`, so rounding noise in the operands
//! does not flip `x <=_K y` when `x` and `y` agree to working precision.
//!
//! The module also provides the weighted maximum norm, the Minkowski gauge of
//! the symmetric order body `D(a) = { z : |z| <=_K a }`, the opening angle and
//! a numerical estimate of the geometry constant
//! `delta(K) = sup { |v|_w : v, -v <=_K w }`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::Vector;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Default per-axis resolution for the `delta(K)` direction grid.
pub const DEFAULT_DELTA_RESOLUTION: usize = 1024;

/// Grid resolution that keeps `delta_k` affordable in dimension `dim`.
pub fn default_delta_resolution(dim: usize) -> usize {
    match dim {
        0..=2 => DEFAULT_DELTA_RESOLUTION,
        3 => 128,
        _ => 16,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConeShape {
    Orthant { dim: usize },
    IceCream { axis: Vector, beta: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConeSpec", into = "ConeSpec")]
pub struct Cone {
    shape: ConeShape,
    // unit vector along the ice-cream axis
    unit_axis: Option<Vector>,
    tolerance: f64,
}

/// Flags of the three order relations between two points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderRelation {
    pub leq: bool,
    pub lt: bool,
    /// `x <<_K y`
    pub ll: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeGeometry {
    pub opening_angle: f64,
    /// `None` when the cone is too wide for `delta(K)` to exist.
    pub delta_k: Option<f64>,
    pub solid: bool,
}

impl Cone {
    pub fn orthant(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidCone("orthant dimension must be positive".into()));
        }
        Ok(Self { shape: ConeShape::Orthant { dim }, unit_axis: None, tolerance: DEFAULT_TOLERANCE })
    }

    pub fn ice_cream(axis: Vector, beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::InvalidCone(format!("beta must lie in [0, 1], got {beta}")));
        }
        let norm = axis.norm2();
        if norm == 0.0 {
            return Err(Error::InvalidCone("ice-cream axis must be nonzero".into()));
        }
        let unit = axis.scale(1.0 / norm);
        Ok(Self {
            shape: ConeShape::IceCream { axis, beta },
            unit_axis: Some(unit),
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if !(tolerance.is_finite() && tolerance >= 0.0) {
            return Err(Error::InvalidArgument(format!("tolerance must be finite and >= 0, got {tolerance}")));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn shape(&self) -> &ConeShape {
        &self.shape
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn dim(&self) -> usize {
        match &self.shape {
            ConeShape::Orthant { dim } => *dim,
            ConeShape::IceCream { axis, .. } => axis.dim(),
        }
    }

    pub fn is_orthant(&self) -> bool {
        matches!(self.shape, ConeShape::Orthant { .. })
    }

    pub fn is_solid(&self) -> bool {
        match &self.shape {
            ConeShape::Orthant { .. } => true,
            ConeShape::IceCream { axis, beta } => axis.dim() == 1 || *beta < 1.0,
        }
    }

    /// `K ∩ (-K) = {0}`
    pub fn is_pointed(&self) -> bool {
        match &self.shape {
            ConeShape::Orthant { .. } => true,
            ConeShape::IceCream { axis, beta } => axis.dim() == 1 || *beta > 0.0,
        }
    }

    /// Whether the nonnegative orthant is a subset of this cone.
    pub fn contains_orthant(&self) -> bool {
        match &self.shape {
            ConeShape::Orthant { .. } => true,
            ConeShape::IceCream { .. } => (0..self.dim()).all(|i| {
                let mut e = vec![0.0; self.dim()];
                e[i] = 1.0;
                self.contains_unchecked(&Vector::from_finite(e), false)
            }),
        }
    }

    /// Membership `v in K`, or `v in int K` when `interior` is set.
    pub fn contains(&self, v: &Vector, interior: bool) -> Result<bool> {
        v.check_dim(self.dim())?;
        Ok(self.contains_unchecked(v, interior))
    }

    pub(crate) fn contains_unchecked(&self, v: &Vector, interior: bool) -> bool {
        self.contains_scaled(v, self.natural_scale(v), interior)
    }

    // the norm the tolerance is measured in: sup norm for coordinate tests,
    // Euclidean for the angular test
    fn natural_scale(&self, v: &Vector) -> f64 {
        match &self.shape {
            ConeShape::IceCream { axis, .. } if axis.dim() > 1 => v.norm2(),
            _ => v.norm_inf(),
        }
    }

    /// Membership with slack `tolerance * scale`; `scale` is at least the
    /// natural norm of `v`.
    fn contains_scaled(&self, v: &Vector, scale: f64, interior: bool) -> bool {
        let slack = self.tolerance * scale;
        match &self.shape {
            ConeShape::Orthant { .. } => orthant_contains(v.as_slice(), slack, scale, interior),
            ConeShape::IceCream { axis, beta } => {
                if axis.dim() == 1 {
                    let signed = v[0] * axis[0].signum();
                    return orthant_contains(&[signed], slack, scale, interior);
                }
                if scale == 0.0 {
                    return !interior;
                }
                let along = v.dot(self.unit_axis.as_ref().expect("ice-cream cone has an axis"));
                if interior {
                    along > beta * v.norm2() + slack
                } else {
                    along >= beta * v.norm2() - slack
                }
            }
        }
    }

    /// Signed slack of the defining inequality, without tolerance. Nonnegative
    /// exactly on the cone.
    fn margin(&self, v: &Vector) -> f64 {
        match &self.shape {
            ConeShape::Orthant { .. } => v.iter().fold(f64::INFINITY, |m, &a| m.min(a)),
            ConeShape::IceCream { axis, beta } => {
                if axis.dim() == 1 {
                    v[0] * axis[0].signum()
                } else {
                    v.dot(self.unit_axis.as_ref().unwrap()) - beta * v.norm2()
                }
            }
        }
    }

    pub fn compare(&self, x: &Vector, y: &Vector) -> Result<OrderRelation> {
        x.check_dim(self.dim())?;
        y.check_dim(self.dim())?;
        Ok(self.compare_unchecked(x, y))
    }

    pub(crate) fn compare_unchecked(&self, x: &Vector, y: &Vector) -> OrderRelation {
        let diff = y.sub(x);
        // tolerance relative to the operands, so rounding in x and y is absorbed
        let scale = self.natural_scale(&diff).max(self.natural_scale(x)).max(self.natural_scale(y));
        let leq = self.contains_scaled(&diff, scale, false);
        OrderRelation { leq, lt: leq && x != y, ll: self.contains_scaled(&diff, scale, true) }
    }

    pub fn leq(&self, x: &Vector, y: &Vector) -> Result<bool> {
        Ok(self.compare(x, y)?.leq)
    }

    pub fn opening_angle(&self) -> f64 {
        match &self.shape {
            ConeShape::Orthant { dim } => (1.0 / (*dim as f64).sqrt()).acos(),
            ConeShape::IceCream { axis, beta } => {
                if axis.dim() == 1 {
                    0.0
                } else {
                    beta.acos()
                }
            }
        }
    }

    /// The opening-angle assumption: angle strictly below pi/2.
    pub fn has_acute_opening(&self) -> bool {
        self.opening_angle() < FRAC_PI_2
    }

    /// Whether `D(a) = { z : |z| <=_K a }` is bounded for every `a`, i.e. no
    /// nonzero `d >= 0` has `-d in K`.
    pub fn order_body_bounded(&self) -> bool {
        match &self.shape {
            ConeShape::Orthant { .. } => true,
            ConeShape::IceCream { axis, beta } => {
                if axis.dim() == 1 {
                    return axis[0] > 0.0;
                }
                let neg: Vec<f64> = self.unit_axis.as_ref().unwrap().iter().map(|u| -u).collect();
                // largest cosine between -u and a nonnegative unit vector
                let positive: f64 = neg.iter().filter(|&&a| a > 0.0).map(|a| a * a).sum();
                let best = if positive > 0.0 {
                    positive.sqrt()
                } else {
                    neg.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                };
                best < *beta
            }
        }
    }

    /// `sup { t >= 0 : base + t * dir in K }`, or `None` when the whole ray
    /// stays in the cone. `base` must lie in `K`.
    pub fn ray_exit(&self, base: &Vector, dir: &Vector) -> Result<Option<f64>> {
        base.check_dim(self.dim())?;
        dir.check_dim(self.dim())?;
        if !self.contains_unchecked(base, false) {
            return Err(Error::InvalidArgument(format!("ray base {base:?} is not in the cone")));
        }
        Ok(self.ray_exit_unchecked(base, dir))
    }

    pub(crate) fn ray_exit_unchecked(&self, base: &Vector, dir: &Vector) -> Option<f64> {
        if dir.is_zero() {
            return None;
        }
        let orthant_exit = |b: &[f64], d: &[f64]| {
            b.iter()
                .zip(d)
                .filter(|(_, &di)| di < 0.0)
                .map(|(&bi, &di)| bi.max(0.0) / -di)
                .reduce(f64::min)
        };
        match &self.shape {
            ConeShape::Orthant { .. } => orthant_exit(base.as_slice(), dir.as_slice()),
            ConeShape::IceCream { axis, beta } => {
                if axis.dim() == 1 {
                    let s = axis[0].signum();
                    return orthant_exit(&[base[0] * s], &[dir[0] * s]);
                }
                let u = self.unit_axis.as_ref().unwrap();
                let (pb, pd) = (base.dot(u), dir.dot(u));
                let b2 = beta * beta;
                let a = pd * pd - b2 * dir.dot(dir);
                let b = 2.0 * (pb * pd - b2 * base.dot(dir));
                let c = pb * pb - b2 * base.dot(base);
                let mut cuts: Vec<f64> = quadratic_roots(a, b, c);
                if pd < 0.0 {
                    cuts.push(-pb / pd);
                }
                cuts.retain(|t| *t > 0.0 && t.is_finite());
                cuts.sort_by(f64::total_cmp);
                cuts.dedup();
                // membership only changes at the cut points
                let inside = |t: f64| self.margin(&base.add_scaled(t, dir)) >= 0.0;
                let mut prev = 0.0;
                for cut in cuts {
                    if !inside(0.5 * (prev + cut)) {
                        return Some(prev);
                    }
                    prev = cut;
                }
                let probe = if prev == 0.0 { 1.0 } else { 2.0 * prev };
                if inside(probe) {
                    None
                } else {
                    Some(prev)
                }
            }
        }
    }

    /// Minkowski gauge of `D(anchor) = { z : (|z_1|, ..., |z_N|) <=_K anchor }`:
    /// the smallest `s >= 0` with `x in s * D(anchor)`.
    ///
    /// This is a norm whenever the cone contains the nonnegative orthant (then
    /// `D(anchor)` is convex); for narrower cones it is still positively
    /// homogeneous and definite but `D(anchor)` need not be convex.
    pub fn gauge_norm(&self, x: &Vector, anchor: &Vector) -> Result<f64> {
        x.check_dim(self.dim())?;
        anchor.check_dim(self.dim())?;
        check_positive_weights(anchor)?;
        if !self.order_body_bounded() {
            return Err(Error::UnboundedBody);
        }
        if !self.contains_unchecked(anchor, true) {
            return Err(Error::NotInterior(anchor.clone()));
        }
        let z = x.abs();
        match &self.shape {
            ConeShape::Orthant { .. } => weighted_max_norm(&z, anchor),
            ConeShape::IceCream { axis, .. } if axis.dim() == 1 => Ok(z[0] / anchor[0]),
            ConeShape::IceCream { beta, .. } => {
                if z.is_zero() {
                    return Ok(0.0);
                }
                // smallest s with s*anchor - z in K: the larger root of
                // <s a - z, u>^2 = beta^2 |s a - z|^2 on the side <s a - z, u> >= 0
                let u = self.unit_axis.as_ref().unwrap();
                let (au, zu) = (anchor.dot(u), z.dot(u));
                let b2 = beta * beta;
                let a = au * au - b2 * anchor.dot(anchor);
                let b = -2.0 * (au * zu - b2 * anchor.dot(&z));
                let c = zu * zu - b2 * z.dot(&z);
                let largest = quadratic_roots(a, b, c).into_iter().fold(f64::NEG_INFINITY, f64::max);
                Ok(largest.max(zu / au).max(0.0))
            }
        }
    }

    /// Estimate of `delta(K)` for the reference vector `w`. Exact (`1.0`) for
    /// the orthant, the direction-grid estimate otherwise.
    pub fn delta_k(&self, w: &Vector, resolution: usize) -> Result<f64> {
        self.check_delta_inputs(w)?;
        match &self.shape {
            ConeShape::Orthant { .. } => Ok(1.0),
            ConeShape::IceCream { axis, .. } if axis.dim() == 1 => Ok(1.0),
            ConeShape::IceCream { .. } => self.delta_k_grid(w, resolution),
        }
    }

    /// Grid estimate of `delta(K) = sup { |v|_w : v in (w - K) ∩ (-w + K) }`.
    ///
    /// The set is convex and contains the origin, so it is scanned radially:
    /// for every direction `d` on a grid of the cube surface `|d|_inf = 1`
    /// the exact exit distance along `d` is computed and `|t d|_w` maximised.
    /// The per-axis grid size is `resolution` rounded up to a power of two,
    /// so grids are nested and the estimate never decreases with resolution.
    /// Cost grows like `resolution^(N-1)`.
    pub fn delta_k_grid(&self, w: &Vector, resolution: usize) -> Result<f64> {
        self.check_delta_inputs(w)?;
        let n = self.dim();
        let steps = resolution.max(1).next_power_of_two();
        // v = w is always in the set
        let mut best: f64 = 1.0;
        let mut unbounded = false;
        for_each_cube_direction(n, steps, |d| {
            let forward = self.ray_exit_unchecked(w, d);
            let backward = self.ray_exit_unchecked(w, &d.scale(-1.0));
            let t = match (forward, backward) {
                (None, None) => {
                    unbounded = true;
                    return;
                }
                (Some(a), None) | (None, Some(a)) => a,
                (Some(a), Some(b)) => a.min(b),
            };
            best = best.max(t * weighted_max_norm_unchecked(d, w));
        });
        if unbounded {
            return Err(Error::OpeningAngle { angle: self.opening_angle() });
        }
        Ok(best)
    }

    fn check_delta_inputs(&self, w: &Vector) -> Result<()> {
        w.check_dim(self.dim())?;
        check_positive_weights(w)?;
        if !self.has_acute_opening() {
            return Err(Error::OpeningAngle { angle: self.opening_angle() });
        }
        if !self.contains_unchecked(w, true) {
            return Err(Error::NotInterior(w.clone()));
        }
        Ok(())
    }

    pub fn geometry(&self, w: &Vector, resolution: usize) -> Result<ConeGeometry> {
        let delta_k = match self.delta_k(w, resolution) {
            Ok(d) => Some(d),
            Err(Error::OpeningAngle { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(ConeGeometry { opening_angle: self.opening_angle(), delta_k, solid: self.is_solid() })
    }

    /// Coordinate bounding box of `K ∩ S^{N-1}` (unit sphere).
    pub(crate) fn sphere_bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.dim();
        match &self.shape {
            ConeShape::Orthant { .. } => (vec![0.0; n], vec![1.0; n]),
            ConeShape::IceCream { axis, .. } if n == 1 => {
                let s = axis[0].signum();
                (vec![s.min(0.0)], vec![s.max(0.0)])
            }
            ConeShape::IceCream { .. } => {
                let alpha = self.opening_angle();
                let u = self.unit_axis.as_ref().unwrap();
                let extent = |theta: f64| if theta <= alpha { 1.0 } else { (theta - alpha).cos() };
                let hi = u.iter().map(|&ui| extent(ui.clamp(-1.0, 1.0).acos())).collect();
                let lo = u.iter().map(|&ui| -extent((-ui).clamp(-1.0, 1.0).acos())).collect();
                (lo, hi)
            }
        }
    }
}

fn orthant_contains(v: &[f64], slack: f64, scale: f64, interior: bool) -> bool {
    if scale == 0.0 {
        return !interior;
    }
    if interior {
        v.iter().all(|&a| a > slack)
    } else {
        v.iter().all(|&a| a >= -slack)
    }
}

/// Calls `visit` with every point of a uniform grid on the cube surface
/// `|d|_inf = 1` in `R^n`, `steps` cells per edge. Edge points repeat.
pub(crate) fn for_each_cube_direction(n: usize, steps: usize, mut visit: impl FnMut(&Vector)) {
    let mut counter = vec![0usize; n.saturating_sub(1)];
    for face in 0..n {
        for sign in [-1.0, 1.0] {
            counter.iter_mut().for_each(|c| *c = 0);
            loop {
                let mut others = counter.iter();
                let d: Vec<f64> = (0..n)
                    .map(|axis| {
                        if axis == face {
                            sign
                        } else {
                            -1.0 + 2.0 * *others.next().unwrap() as f64 / steps as f64
                        }
                    })
                    .collect();
                visit(&Vector::from_finite(d));
                if !advance(&mut counter, steps) {
                    break;
                }
            }
        }
    }
}

// odometer over {0..=steps}^k
fn advance(counter: &mut [usize], steps: usize) -> bool {
    for c in counter.iter_mut() {
        if *c < steps {
            *c += 1;
            return true;
        }
        *c = 0;
    }
    false
}

/// Real roots of `a t^2 + b t + c`, computed without cancellation.
pub(crate) fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b != 0.0 { vec![-c / b] } else { vec![] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}

fn check_positive_weights(v: &Vector) -> Result<()> {
    match v.iter().enumerate().find(|(_, &a)| a <= 0.0) {
        Some((index, &value)) => Err(Error::NonPositiveWeight { index, value }),
        None => Ok(()),
    }
}

/// `|x|_v = max_i |x_i| / v_i` for a strictly positive weight `v`.
pub fn weighted_max_norm(x: &Vector, v: &Vector) -> Result<f64> {
    x.same_dim(v)?;
    check_positive_weights(v)?;
    Ok(weighted_max_norm_unchecked(x, v))
}

pub(crate) fn weighted_max_norm_unchecked(x: &Vector, v: &Vector) -> f64 {
    x.iter().zip(v.iter()).fold(0.0, |m, (a, w)| m.max(a.abs() / w))
}

/// Componentwise maximum, the least upper bound in the orthant order.
pub fn sup_orthant(x: &Vector, y: &Vector) -> Result<Vector> {
    x.same_dim(y)?;
    Ok(Vector::from_finite(x.iter().zip(y.iter()).map(|(a, b)| a.max(*b)).collect()))
}

/// Componentwise minimum.
pub fn inf_orthant(x: &Vector, y: &Vector) -> Result<Vector> {
    x.same_dim(y)?;
    Ok(Vector::from_finite(x.iter().zip(y.iter()).map(|(a, b)| a.min(*b)).collect()))
}

/// The coefficient `Lambda` of the two-inequality form of the planar
/// ice-cream order with axis `(1, 1)`; requires `beta <= sqrt(2)/2`.
pub fn lambda_coefficient(beta: f64) -> Result<f64> {
    if !(0.0..=FRAC_1_SQRT_2 + 1e-12).contains(&beta) {
        return Err(Error::InvalidArgument(format!(
            "beta must lie in [0, sqrt(2)/2] for the two-inequality form, got {beta}"
        )));
    }
    let gamma = (beta * SQRT_2).min(1.0);
    let u = 1.0 - gamma * gamma;
    if u == 0.0 {
        return Ok(0.0);
    }
    // (-1 + sqrt(1 - u^2)) / u, rewritten to avoid cancellation near gamma = 1
    Ok(-u / (1.0 + (1.0 - u * u).sqrt()))
}

/// `x <=_K y` for `K = C((1, 1), beta)` in the plane via
/// `y1 - x1 >= Lambda (y2 - x2)` and `y2 - x2 >= Lambda (y1 - x1)`.
pub fn leq_lambda_2d(beta: f64, x: &Vector, y: &Vector) -> Result<bool> {
    x.check_dim(2)?;
    y.check_dim(2)?;
    let lambda = lambda_coefficient(beta)?;
    let (d1, d2) = (y[0] - x[0], y[1] - x[1]);
    Ok(d1 >= lambda * d2 && d2 >= lambda * d1)
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum ConeSpec {
    Orthant {
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
    },
    IceCream {
        w: Vec<f64>,
        beta: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
    },
}

impl TryFrom<ConeSpec> for Cone {
    type Error = Error;

    fn try_from(spec: ConeSpec) -> Result<Self> {
        let (cone, tolerance) = match spec {
            ConeSpec::Orthant { dim, tolerance } => (Cone::orthant(dim)?, tolerance),
            ConeSpec::IceCream { w, beta, tolerance } => (Cone::ice_cream(Vector::new(w)?, beta)?, tolerance),
        };
        match tolerance {
            Some(t) => cone.with_tolerance(t),
            None => Ok(cone),
        }
    }
}

impl From<Cone> for ConeSpec {
    fn from(cone: Cone) -> Self {
        let tolerance = (cone.tolerance != DEFAULT_TOLERANCE).then_some(cone.tolerance);
        match cone.shape {
            ConeShape::Orthant { dim } => ConeSpec::Orthant { dim, tolerance },
            ConeShape::IceCream { axis, beta } => ConeSpec::IceCream { w: axis.into_inner(), beta, tolerance },
        }
    }
}

impl Cone {
    /// Parses `{"type":"orthant","dim":N}` or `{"type":"ice_cream","w":[..],"beta":b}`.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector;

    fn ice(w: &[f64], beta: f64) -> Cone {
        Cone::ice_cream(Vector::from_slice(w).unwrap(), beta).unwrap()
    }

    #[test]
    fn orthant_membership() {
        let k = Cone::orthant(2).unwrap();
        assert!(k.contains(&vector![1.0, 0.0], false).unwrap());
        assert!(!k.contains(&vector![1.0, 0.0], true).unwrap());
        assert!(k.contains(&vector![0.0, 0.0], false).unwrap());
        assert!(!k.contains(&vector![0.0, 0.0], true).unwrap());
        assert!(matches!(k.contains(&vector![1.0], false), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn ice_cream_membership() {
        let k = ice(&[1.0, 1.0], FRAC_1_SQRT_2);
        assert!(k.contains(&vector![1.0, 1.0], false).unwrap());
        // <v,w> = 0.9 < sqrt(1.01)
        assert!(!k.contains(&vector![1.0, -0.1], false).unwrap());
        assert!(!k.contains(&Vector::zeros(2), true).unwrap());
    }

    #[test]
    fn one_dimensional_ice_cream_is_a_half_line() {
        let k = ice(&[2.0], 1.0);
        assert!(k.is_solid());
        assert!(k.contains(&vector![3.0], true).unwrap());
        assert!(!k.contains(&vector![-3.0], false).unwrap());
    }

    #[test]
    fn constructor_errors() {
        assert!(Cone::orthant(0).is_err());
        assert!(Cone::ice_cream(vector![0.0, 0.0], 0.5).is_err());
        assert!(Cone::ice_cream(vector![1.0, 0.0], 1.5).is_err());
    }

    #[test]
    fn compare_examples() {
        let k = Cone::orthant(2).unwrap();
        let rel = k.compare(&vector![1.0, 5.0], &vector![3.0, 5.0]).unwrap();
        assert_eq!(rel, OrderRelation { leq: true, lt: true, ll: false });
        let x = vector![0.3, -2.0];
        assert_eq!(k.compare(&x, &x).unwrap(), OrderRelation { leq: true, lt: false, ll: false });
        let k = ice(&[1.0, 1.0], 0.5);
        assert!(k.compare(&Vector::zeros(2), &vector![1.0, -0.2]).unwrap().leq);
    }

    #[test]
    fn compare_absorbs_operand_rounding() {
        let k = Cone::orthant(1).unwrap();
        let (a, b) = (vector![0.1 + 0.2], vector![0.3]);
        assert!(k.compare(&a, &b).unwrap().leq && k.compare(&b, &a).unwrap().leq);
        assert!(!k.compare(&vector![0.3], &vector![0.2999]).unwrap().leq);
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_coefficient(FRAC_1_SQRT_2).unwrap(), 0.0);
        let printed = |beta: f64| {
            let g = beta * SQRT_2;
            let u = 1.0 - g * g;
            (-1.0 + (1.0 - u * u).sqrt()) / u
        };
        let l = lambda_coefficient(0.5).unwrap();
        assert!((l - printed(0.5)).abs() < 1e-15);
        assert!((l + 0.267_949_192_431_122_7).abs() < 1e-12);
        assert_eq!(lambda_coefficient(0.0).unwrap(), -1.0);
        assert!(lambda_coefficient(0.8).is_err());
        assert!(leq_lambda_2d(0.3, &Vector::zeros(2), &vector![1.0, 1.0]).unwrap());
    }

    #[test]
    fn sup_inf() {
        let (x, y) = (vector![1.0, 5.0], vector![3.0, 2.0]);
        assert_eq!(sup_orthant(&x, &y).unwrap(), vector![3.0, 5.0]);
        assert_eq!(inf_orthant(&x, &y).unwrap(), vector![1.0, 2.0]);
        assert_eq!(sup_orthant(&x, &x).unwrap(), x);
    }

    #[test]
    fn weighted_norm_examples() {
        let x = vector![2.0, -3.0];
        assert_eq!(weighted_max_norm(&x, &vector![1.0, 1.0]).unwrap(), 3.0);
        assert_eq!(weighted_max_norm(&x, &vector![2.0, 3.0]).unwrap(), 1.0);
        assert_eq!(weighted_max_norm(&Vector::zeros(2), &vector![2.0, 3.0]).unwrap(), 0.0);
        assert!(matches!(
            weighted_max_norm(&x, &vector![1.0, 0.0]),
            Err(Error::NonPositiveWeight { index: 1, .. })
        ));
    }

    #[test]
    fn gauge_examples() {
        let k = Cone::orthant(2).unwrap();
        assert_eq!(k.gauge_norm(&vector![2.0, -3.0], &vector![1.0, 1.0]).unwrap(), 3.0);
        let a = vector![1.0, 2.0];
        let k = ice(&[1.0, 1.0], FRAC_1_SQRT_2);
        assert!((k.gauge_norm(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        assert!((k.gauge_norm(&vector![0.5, 1.0], &a).unwrap() - 0.5).abs() < 1e-12);
        assert!((k.gauge_norm(&vector![-0.5, 1.0], &a).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn gauge_matches_bisection_on_membership() {
        // bisection on s using the raw inequality as an independent route
        let beta = 0.6;
        let k = ice(&[1.0, 1.0], beta);
        let anchor = vector![1.0, 1.5];
        let inside = |s: f64, z: &[f64]| {
            let d = [s * anchor[0] - z[0].abs(), s * anchor[1] - z[1].abs()];
            let n = (d[0] * d[0] + d[1] * d[1]).sqrt();
            d[0] + d[1] >= beta * n * SQRT_2
        };
        for z in [[0.3, -0.2], [2.0, 0.1], [-0.4, 3.0], [1.0, 1.0]] {
            let (mut lo, mut hi) = (0.0, 1e3);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if inside(mid, &z) {
                    hi = mid
                } else {
                    lo = mid
                }
            }
            let g = k.gauge_norm(&Vector::from_slice(&z).unwrap(), &anchor).unwrap();
            assert!((g - hi).abs() < 1e-9, "{z:?}: {g} vs {hi}");
        }
    }

    #[test]
    fn gauge_errors() {
        let k = ice(&[1.0, -1.0], 0.2);
        assert!(matches!(k.gauge_norm(&vector![1.0, 1.0], &vector![1.0, 1.0]), Err(Error::UnboundedBody)));
        let k = ice(&[1.0, 1.0], 0.99);
        assert!(matches!(k.gauge_norm(&vector![1.0, 1.0], &vector![1.0, 3.0]), Err(Error::NotInterior(_))));
    }

    #[test]
    fn opening_angles() {
        use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};
        assert!((ice(&[3.0, 1.0], FRAC_1_SQRT_2).opening_angle() - FRAC_PI_4).abs() < 1e-15);
        assert!((Cone::orthant(2).unwrap().opening_angle() - FRAC_PI_4).abs() < 1e-15);
        let a4 = Cone::orthant(4).unwrap().opening_angle();
        assert!((a4 - FRAC_PI_3).abs() < 1e-15);
        assert!(Cone::orthant(4).unwrap().has_acute_opening());
        assert!(!ice(&[1.0, 1.0], 0.0).has_acute_opening());
    }

    #[test]
    fn orthant_opening_matches_extreme_ray_angle() {
        // angle between the diagonal and the coordinate axes
        for n in 1..6 {
            let axis = Vector::ones(n).scale(1.0 / (n as f64).sqrt());
            let worst = (0..n)
                .map(|i| axis[i].acos())
                .fold(0.0, f64::max);
            let a = Cone::orthant(n).unwrap().opening_angle();
            assert!((a - worst).abs() < 1e-12);
        }
    }

    #[test]
    fn delta_k_orthant_is_one() {
        let k = Cone::orthant(3).unwrap();
        assert_eq!(k.delta_k(&vector![1.0, 2.0, 0.5], 16).unwrap(), 1.0);
        let grid = k.delta_k_grid(&vector![1.0, 2.0, 0.5], 16).unwrap();
        assert!((grid - 1.0).abs() < 1e-12);
    }

    #[test]
    fn delta_k_wide_cone_exceeds_one() {
        // beta = 1/2: the set is a rhombus with side vertices +-(sqrt 3)(1,-1)
        let k = ice(&[1.0, 1.0], 0.5);
        let d = k.delta_k(&vector![1.0, 1.0], 1024).unwrap();
        assert!((d - 3f64.sqrt()).abs() < 1e-3, "{d}");
        assert!(d <= 3f64.sqrt() + 1e-9);
    }

    #[test]
    fn delta_k_errors() {
        let k = ice(&[1.0, 1.0], 0.0);
        assert!(matches!(k.delta_k(&vector![1.0, 1.0], 8), Err(Error::OpeningAngle { .. })));
        let k = ice(&[1.0, 1.0], 0.9);
        assert!(matches!(k.delta_k(&vector![1.0, 3.0], 8), Err(Error::NotInterior(_))));
        assert!(matches!(k.delta_k(&vector![1.0, 0.0], 8), Err(Error::NonPositiveWeight { .. })));
    }

    #[test]
    fn ray_exit_ice_cream() {
        let k = ice(&[1.0, 1.0], FRAC_1_SQRT_2);
        // same as the quadrant: from (1,1) along (-1,0) the exit is t = 1
        let t = k.ray_exit(&vector![1.0, 1.0], &vector![-1.0, 0.0]).unwrap().unwrap();
        assert!((t - 1.0).abs() < 1e-12);
        assert_eq!(k.ray_exit(&vector![1.0, 1.0], &vector![1.0, 2.0]).unwrap(), None);
    }

    #[test]
    fn json_round_trip() {
        let k = Cone::from_json(r#"{"type":"ice_cream","w":[1,1],"beta":0.5}"#).unwrap();
        assert_eq!(k.dim(), 2);
        let text = serde_json::to_string(&k).unwrap();
        assert_eq!(text, r#"{"type":"ice_cream","w":[1.0,1.0],"beta":0.5}"#);
        let k = Cone::from_json(r#"{"type":"orthant","dim":3}"#).unwrap();
        assert!(k.is_orthant());
        assert!(Cone::from_json(r#"{"type":"simplex","dim":3}"#).is_err());
        assert!(Cone::from_json(r#"{"type":"orthant","dim":0}"#).is_err());
    }
}
