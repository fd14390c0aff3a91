use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::locate::{locate_fixed_points, LocateOptions};
use crate::certify::sampling::{in_cone_and_box, par_samples, uniform};
use crate::certify::{
    check_guiding_g, check_guiding_g2, check_monotone, check_sup_monotone, probe_sf_bounded, PropertyReport,
    SampleConfig, Strength,
};
use crate::cone::{Cone, ConeShape};
use crate::error::{Error, Result};
use crate::map::{require_self_map, Mapping, Symmetric};
use crate::region::{order_body_box, Region};
use crate::solve::{monotone_descent, multistart};
use crate::vector::Vector;

/// Names of the points a theorem may take.
pub const POINT_NAMES: [&str; 3] = ["x_prime", "x", "x_double_prime"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremKind {
    /// Sup-monotone, strongly feasible map on a cone containing the orthant:
    /// a fixed point `0 <_K x*`.
    #[serde(rename = "degreerzero")]
    PositiveFixedPoint,
    /// Monotone map with `f(x') <<_K x'`, `f(x'') <<_K x''` and
    /// `x' <=_K x <=_K x''`, `x <<_K f(x)`: three fixed points.
    #[serde(rename = "three_fixed_points")]
    ThreeFixedPoints,
    /// Monotone for an ice-cream cone with `x' >_K 0` in `S_f`: a fixed point.
    #[serde(rename = "thm5")]
    IceCreamMonotone,
    /// As above with `x'' >>_K x'` and `x'' not in f(z) + K` on
    /// `T = { z >=_K 0 : x'' in boundary(z + K) }`: a fixed point `z <=_K x''`,
    /// `z` not `<<_K x'`.
    #[serde(rename = "thm6")]
    BoundaryExclusion,
    /// Monotone with `x'' <<_K x'` both in `S_f`: fixed points `x_bar < x_tilde`.
    #[serde(rename = "thm8")]
    TwoOrderedFixedPoints,
    /// Sup-monotone with `0 <<_K x'' <<_K x'` both in `S_f`: two fixed points
    /// `>=_K 0`.
    #[serde(rename = "thm9")]
    TwoSupMonotoneFixedPoints,
    /// Guiding condition (G) with `x' - f(x') = lambda 1`, `lambda >= 0`.
    #[serde(rename = "guiding_G", alias = "guiding_g")]
    GuidingAlignment,
    /// Angle condition (G2) for `gamma`; with `x' = lambda 1` and
    /// `f(x') <= x'` also the additive bound on `<f(x) - x, 1>`.
    #[serde(rename = "guiding_G2", alias = "guiding_g2")]
    GuidingAngle,
}

impl TheoremKind {
    pub const ALL: [TheoremKind; 8] = [
        Self::PositiveFixedPoint,
        Self::ThreeFixedPoints,
        Self::IceCreamMonotone,
        Self::BoundaryExclusion,
        Self::TwoOrderedFixedPoints,
        Self::TwoSupMonotoneFixedPoints,
        Self::GuidingAlignment,
        Self::GuidingAngle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::PositiveFixedPoint => "degreerzero",
            Self::ThreeFixedPoints => "three_fixed_points",
            Self::IceCreamMonotone => "thm5",
            Self::BoundaryExclusion => "thm6",
            Self::TwoOrderedFixedPoints => "thm8",
            Self::TwoSupMonotoneFixedPoints => "thm9",
            Self::GuidingAlignment => "guiding_G",
            Self::GuidingAngle => "guiding_G2",
        }
    }

    /// Case-insensitive lookup by name.
    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown theorem `{name}`")))
    }

    pub fn required_points(self) -> &'static [&'static str] {
        match self {
            Self::PositiveFixedPoint | Self::IceCreamMonotone | Self::GuidingAlignment => &["x_prime"],
            Self::ThreeFixedPoints => &["x_prime", "x", "x_double_prime"],
            Self::BoundaryExclusion | Self::TwoOrderedFixedPoints | Self::TwoSupMonotoneFixedPoints => {
                &["x_prime", "x_double_prime"]
            }
            Self::GuidingAngle => &[],
        }
    }

    fn promised(self) -> usize {
        match self {
            Self::ThreeFixedPoints => 3,
            Self::TwoOrderedFixedPoints | Self::TwoSupMonotoneFixedPoints => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    /// Checked exactly at the given points.
    Yes,
    No,
    /// No counterexample among the samples.
    SampledOnly,
}

impl Verification {
    fn exact(holds: bool) -> Self {
        if holds {
            Self::Yes
        } else {
            Self::No
        }
    }

    fn sampled(holds: bool) -> Self {
        if holds {
            Self::SampledOnly
        } else {
            Self::No
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub verified: Verification,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

fn hypothesis(name: &str, verified: Verification, detail: impl Into<String>) -> Hypothesis {
    Hypothesis { name: name.to_string(), verified, detail: detail.into() }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocatedPoint {
    pub x: Vector,
    /// Degree of the box the point was located in; absent for points found
    /// by iteration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i32>,
    pub residual_inf: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conclusion {
    /// `degree`, `descent` or `multistart`.
    pub method: String,
    pub search_low: Vec<f64>,
    pub search_high: Vec<f64>,
    /// The map was extended by `f(|z|)` over the search box.
    pub symmetric_extension: bool,
    pub promised: usize,
    /// Fixed points satisfying the theorem's location constraints.
    pub located: Vec<LocatedPoint>,
    /// Boxes without a reliable degree during localisation.
    pub unresolved: usize,
    pub satisfied: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: TheoremKind,
    pub dimension: usize,
    pub points: BTreeMap<String, Vector>,
    pub hypotheses: Vec<Hypothesis>,
    /// Probes reported for context that do not gate the conclusion check
    /// (boundedness of `S_f`).
    pub informational: Vec<Hypothesis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conclusion_check: Option<Conclusion>,
    pub seed: u64,
}

impl TheoremReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.verified != Verification::No)
    }

    /// Hypotheses hold and the promised fixed points were found.
    pub fn passed(&self) -> bool {
        self.hypotheses_hold() && self.conclusion_check.as_ref().is_some_and(|c| c.satisfied)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremOptions {
    pub locate: LocateOptions,
    /// Required by `guiding_G2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    /// Samples of the set `T` for `thm6`.
    pub t_samples: usize,
    /// Starts for the search above dimension 2.
    pub multistart_starts: usize,
    pub solve_tol: f64,
    pub max_iter: usize,
}

impl Default for TheoremOptions {
    fn default() -> Self {
        Self {
            locate: LocateOptions::default(),
            gamma: None,
            t_samples: 256,
            multistart_starts: 64,
            solve_tol: 1e-12,
            max_iter: 100_000,
        }
    }
}

type Search<'a, M> = Box<dyn FnOnce(&Context<'_, M>) -> Result<Conclusion> + 'a>;

struct Context<'a, M: ?Sized> {
    map: &'a M,
    cone: &'a Cone,
    cfg: &'a SampleConfig,
    opts: &'a TheoremOptions,
    dim: usize,
}

fn point<'p>(points: &'p BTreeMap<String, Vector>, theorem: TheoremKind, name: &'static str) -> Result<&'p Vector> {
    points.get(name).ok_or(Error::MissingPoint { theorem: theorem.name(), name })
}

impl<M: Mapping + ?Sized> Context<'_, M> {
    fn in_sf(&self, x: &Vector) -> Result<bool> {
        Ok(self.cone.contains(x, false)? && self.cone.leq(&self.map.eval(x)?, x)?)
    }

    fn positive(&self, x: &Vector) -> Result<bool> {
        Ok(self.cone.compare(&Vector::zeros(self.dim), x)?.lt)
    }

    fn strongly_positive(&self, x: &Vector) -> Result<bool> {
        Ok(self.cone.is_solid() && self.cone.contains(x, true)?)
    }

    fn hypothesis_from(&self, name: &str, report: &PropertyReport) -> Hypothesis {
        let detail = match &report.witness {
            Some(w) => match &w.x_prime {
                Some(xp) => format!("witness x = {}, x' = {}", w.x, xp),
                None => format!("witness x = {}", w.x),
            },
            None => format!("{} samples", report.samples_tested),
        };
        hypothesis(name, Verification::sampled(report.passed()), detail)
    }

    fn monotone(&self) -> Result<Hypothesis> {
        let r = check_monotone(self.map, self.cone, self.cfg, Strength::Weak)?;
        Ok(self.hypothesis_from("monotone", &r))
    }

    fn sup_monotone(&self) -> Result<Hypothesis> {
        if self.cone.is_orthant() {
            let r = check_sup_monotone(self.map, self.cone, self.cfg, Strength::Weak)?;
            return Ok(self.hypothesis_from("sup_monotone", &r));
        }
        // monotone implies sup-monotone; the sup itself is an orthant notion
        let r = check_monotone(self.map, self.cone, self.cfg, Strength::Weak)?;
        let mut h = self.hypothesis_from("sup_monotone", &r);
        h.detail = format!("checked through monotonicity for this cone; {}", h.detail);
        Ok(h)
    }

    fn maps_orthant_into_orthant(&self) -> Result<Hypothesis> {
        let orthant = Cone::orthant(self.dim)?;
        let bad = par_samples(self.cfg.count, |i| {
            let x = in_cone_and_box(self.cfg, &orthant, &mut self.cfg.rng(i))?;
            let fx = self.map.eval(&x)?;
            Ok((!orthant.contains(&fx, false)?).then_some(x))
        });
        let found = match bad {
            Ok(v) => v.into_iter().flatten().next(),
            Err(Error::Sampling(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(match found {
            Some(x) => hypothesis("maps_orthant_into_orthant", Verification::No, format!("f({x}) has a negative entry")),
            None => hypothesis("maps_orthant_into_orthant", Verification::SampledOnly, ""),
        })
    }

    fn sf_probe(&self, points: &BTreeMap<String, Vector>) -> Result<(Hypothesis, Option<f64>)> {
        let scale = points.values().map(Vector::norm_inf).fold(1.0, f64::max);
        let radii: Vec<f64> = (0..=10).map(|k| scale * f64::from(1u32 << k)).collect();
        let r = probe_sf_bounded(self.map, self.cone, &radii, self.cfg)?;
        let detail = match r.largest_feasible_radius {
            Some(radius) => format!("feasible sphere points up to radius {radius}"),
            None => "no feasible sphere points".to_string(),
        };
        Ok((hypothesis("sf_bounded", Verification::sampled(r.bounded), detail), r.largest_feasible_radius))
    }

    fn exact(&self, name: &str, holds: bool) -> Hypothesis {
        hypothesis(name, Verification::exact(holds), "")
    }

    /// `x'' not in f(z) + K` on sampled `z in T`, with `z = x''` always
    /// included. Also reports the smallest `|f(z)|_{D(x'')}`.
    fn boundary_condition(&self, x2: &Vector) -> Result<Hypothesis> {
        let count = self.opts.t_samples.max(1);
        let samples = par_samples(count, |i| {
            let z = if i == 0 || self.dim == 1 {
                x2.clone()
            } else {
                let mut rng = self.cfg.rng(i).clone();
                let b = boundary_ray(self.cone, i, &mut rng)?;
                match self.cone.ray_exit(x2, &b.scale(-1.0))? {
                    Some(t_max) => x2.add_scaled(-uniform(&mut rng, (0.0, t_max)), &b),
                    None => x2.clone(),
                }
            };
            let fz = self.map.eval(&z)?;
            let holds = !self.cone.leq(&fz, x2)?;
            let gauge = self.cone.gauge_norm(&fz, x2).ok();
            Ok((z, holds, gauge))
        })?;
        let failure = samples.iter().find(|s| !s.1).map(|s| s.0.clone());
        let min_gauge = samples.iter().filter_map(|s| s.2).fold(f64::INFINITY, f64::min);
        let mut detail = format!("{count} points of T, smallest |f(z)|_D(x'') = {min_gauge}");
        if let Some(z) = &failure {
            detail = format!("f({z}) <=_K x''; {detail}");
        }
        Ok(hypothesis("boundary_condition_on_T", Verification::exact(failure.is_none()), detail).sampled_if(self.dim > 1))
    }

    fn search_box_of_body(&self, anchor: &Vector) -> Result<(Vec<f64>, Vec<f64>)> {
        order_body_box(self.cone, anchor)
    }

    /// Fixed points in the box that pass `keep`, by degree in dimension
    /// at most 2 and by multistart above.
    fn search(
        &self,
        low: Vec<f64>,
        high: Vec<f64>,
        promised: usize,
        keep: &(dyn Fn(&Vector) -> Result<bool> + Sync),
    ) -> Result<Conclusion> {
        let region = Region::boxed(Vector::new(low.clone())?, Vector::new(high.clone())?)?;
        let symmetric = region.crosses_negative_orthant()?;
        let extended = Symmetric(self.map);
        let map: &dyn Mapping = if symmetric { &extended } else { &self.map };
        let mut located = Vec::new();
        let (method, unresolved) = if self.dim <= 2 {
            let report = locate_fixed_points(map, &region, &self.opts.locate)?;
            for b in &report.boxes {
                let x = b.estimate.clone().expect("located boxes carry estimates");
                if keep(&x)? {
                    located.push(LocatedPoint { x, degree: b.degree, residual_inf: b.residual_inf.unwrap_or(f64::NAN) });
                }
            }
            ("degree", report.unresolved.len())
        } else {
            let r = multistart(map, &region, self.opts.multistart_starts, self.opts.solve_tol, self.opts.max_iter, None)?;
            for x in r.distinct_limits() {
                if keep(&x)? {
                    let residual_inf = map.eval(&x)?.distance_inf(&x);
                    located.push(LocatedPoint { x, degree: None, residual_inf });
                }
            }
            ("multistart", r.not_converged.len())
        };
        Ok(Conclusion {
            method: method.to_string(),
            search_low: low,
            search_high: high,
            symmetric_extension: symmetric,
            promised,
            satisfied: located.len() >= promised,
            located,
            unresolved,
            detail: String::new(),
        })
    }
}

impl Hypothesis {
    fn sampled_if(mut self, sampled: bool) -> Self {
        if sampled && self.verified == Verification::Yes {
            self.verified = Verification::SampledOnly;
        }
        self
    }
}

/// A unit vector on the boundary of `K`.
fn boundary_ray(cone: &Cone, index: usize, rng: &mut impl Rng) -> Result<Vector> {
    let n = cone.dim();
    match cone.shape() {
        ConeShape::Orthant { .. } => {
            let zero = index % n;
            let v: Vec<f64> = (0..n).map(|i| if i == zero { 0.0 } else { rng.random::<f64>() + 1e-9 }).collect();
            let v = Vector::from_finite(v);
            Ok(v.scale(1.0 / v.norm2()))
        }
        ConeShape::IceCream { axis, beta } => {
            let u = axis.scale(1.0 / axis.norm2());
            let side = loop {
                let g = Vector::from_finite((0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect());
                let perp = g.add_scaled(-g.dot(&u), &u);
                let norm = perp.norm2();
                if norm > 1e-9 {
                    break perp.scale(1.0 / norm);
                }
            };
            Ok(u.scale(*beta).add_scaled((1.0 - beta * beta).max(0.0).sqrt(), &side))
        }
    }
}

/// Verifies the hypotheses of `theorem` for `map` on `cone` at the named
/// points (exactly where they are pointwise, by sampling over `cfg` where
/// they are universal) and, when none fails, searches for the promised
/// fixed points.
pub fn check_theorem<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    theorem: TheoremKind,
    points: &BTreeMap<String, Vector>,
    cfg: &SampleConfig,
    opts: &TheoremOptions,
) -> Result<TheoremReport> {
    let dim = require_self_map(map)?;
    if cone.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: cone.dim() });
    }
    for name in points.keys() {
        if !POINT_NAMES.contains(&name.as_str()) {
            return Err(Error::InvalidArgument(format!("unknown point name `{name}`")));
        }
    }
    for p in points.values() {
        p.check_dim(dim)?;
    }
    let cx = Context { map, cone, cfg, opts, dim };
    let get = |name| point(points, theorem, name);
    for name in theorem.required_points() {
        get(name)?;
    }
    let (sf, largest_feasible) = cx.sf_probe(points)?;
    let mut hyps = Vec::new();
    let nonnegative = |x: &Vector| cone.contains(x, false);
    let search: Search<'_, M> = match theorem {
        TheoremKind::PositiveFixedPoint => {
            let xp = get("x_prime")?.clone();
            hyps.push(cx.exact("orthant_in_cone", cone.contains_orthant()));
            hyps.push(cx.sup_monotone()?);
            hyps.push(cx.exact("x_prime_strongly_feasible", cx.in_sf(&xp)? && cx.strongly_positive(&xp)?));
            Box::new(move |cx| {
                let (lo, hi) = cx.search_box_of_body(&xp)?;
                cx.search(lo, hi, theorem.promised(), &|z| cx.positive(z))
            })
        }
        TheoremKind::ThreeFixedPoints => {
            let (xp, x, x2) = (get("x_prime")?.clone(), get("x")?, get("x_double_prime")?.clone());
            hyps.push(cx.monotone()?);
            for (name, p) in [("x_prime", &xp), ("x_double_prime", &x2)] {
                let fp = map.eval(p)?;
                hyps.push(cx.exact(&format!("{name}_positive"), cx.positive(p)?));
                hyps.push(cx.exact(&format!("f({name}) << {name}"), cone.compare(&fp, p)?.ll));
            }
            hyps.push(cx.exact("x_prime <= x <= x_double_prime", cone.leq(&xp, x)? && cone.leq(x, &x2)?));
            hyps.push(cx.exact("x << f(x)", cone.compare(x, &map.eval(x)?)?.ll));
            Box::new(move |cx| {
                let (lo, hi) = cx.search_box_of_body(&x2)?;
                cx.search(lo, hi, theorem.promised(), &nonnegative)
            })
        }
        TheoremKind::IceCreamMonotone => {
            let xp = get("x_prime")?.clone();
            hyps.push(cx.exact("ice_cream_cone", is_ice_cream(cone)));
            hyps.push(cx.monotone()?);
            hyps.push(cx.exact("x_prime_positive_in_sf", cx.positive(&xp)? && cx.in_sf(&xp)?));
            Box::new(move |cx| {
                let (lo, hi) = cx.search_box_of_body(&xp)?;
                cx.search(lo, hi, theorem.promised(), &|z| Ok(cone.gauge_norm(z, &xp)? <= 1.0 + 1e-9))
            })
        }
        TheoremKind::BoundaryExclusion => {
            let (xp, x2) = (get("x_prime")?.clone(), get("x_double_prime")?.clone());
            hyps.push(cx.exact("ice_cream_cone", is_ice_cream(cone)));
            hyps.push(cx.maps_orthant_into_orthant()?);
            hyps.push(cx.monotone()?);
            hyps.push(cx.exact("x_prime_strongly_positive_in_sf", cx.strongly_positive(&xp)? && cx.in_sf(&xp)?));
            hyps.push(cx.exact("x_double_prime >> x_prime", cone.compare(&xp, &x2)?.ll));
            hyps.push(cx.boundary_condition(&x2)?);
            Box::new(move |cx| {
                let (lo, hi) = cx.search_box_of_body(&x2)?;
                let keep = |z: &Vector| -> Result<bool> {
                    Ok(nonnegative(z)? && cone.leq(z, &x2)? && !cone.compare(z, &xp)?.ll)
                };
                cx.search(lo, hi, theorem.promised(), &keep)
            })
        }
        TheoremKind::TwoOrderedFixedPoints => {
            let (xp, x2) = (get("x_prime")?.clone(), get("x_double_prime")?.clone());
            hyps.push(cx.monotone()?);
            hyps.push(cx.exact("x_prime_in_sf", cx.in_sf(&xp)?));
            hyps.push(cx.exact("x_double_prime_in_sf", cx.in_sf(&x2)?));
            hyps.push(cx.exact("x_double_prime << x_prime", cone.compare(&x2, &xp)?.ll));
            Box::new(move |cx| two_by_descent(cx, &xp, &x2))
        }
        TheoremKind::TwoSupMonotoneFixedPoints => {
            let (xp, x2) = (get("x_prime")?.clone(), get("x_double_prime")?.clone());
            hyps.push(cx.maps_orthant_into_orthant()?);
            hyps.push(cx.sup_monotone()?);
            hyps.push(cx.exact("x_prime_in_sf", cx.in_sf(&xp)?));
            hyps.push(cx.exact("x_double_prime_in_sf", cx.in_sf(&x2)?));
            hyps.push(cx.exact("0 << x_double_prime << x_prime", cx.strongly_positive(&x2)? && cone.compare(&x2, &xp)?.ll));
            // one fixed point lies beyond D(x'), inside the ball that holds S_f
            let radius = 2.0 * largest_feasible.unwrap_or(0.0).max(xp.norm_inf());
            Box::new(move |cx| {
                let lo = vec![-radius; cx.dim];
                let hi = vec![radius; cx.dim];
                cx.search(lo, hi, theorem.promised(), &nonnegative)
            })
        }
        TheoremKind::GuidingAlignment => {
            let xp = get("x_prime")?.clone();
            hyps.push(cx.exact("orthant_cone", cone.is_orthant()));
            let r = check_guiding_g(map, cfg)?;
            hyps.push(cx.hypothesis_from("guiding_G", &r));
            let residual = xp.sub(&map.eval(&xp)?);
            hyps.push(cx.exact("x_prime_positive", cx.positive(&xp)?));
            hyps.push(hypothesis(
                "x_prime - f(x_prime) = lambda 1, lambda >= 0",
                Verification::exact(is_nonnegative_diagonal(&residual)),
                format!("residual {residual}"),
            ));
            let reach = xp.norm1();
            Box::new(move |cx| {
                cx.search(vec![-reach; cx.dim], vec![reach; cx.dim], theorem.promised(), &nonnegative)
            })
        }
        TheoremKind::GuidingAngle => {
            let gamma = opts.gamma.ok_or_else(|| Error::InvalidArgument("guiding_G2 needs gamma".into()))?;
            hyps.push(cx.exact("orthant_cone", cone.is_orthant()));
            let r = check_guiding_g2(map, gamma, cfg)?;
            hyps.push(cx.hypothesis_from("guiding_G2", &r));
            if let Some(xp) = points.get("x_prime") {
                let on_diagonal = xp.iter().all(|&v| v == xp[0]) && xp[0] > 0.0;
                hyps.push(cx.exact("x_prime = lambda 1, lambda > 0", on_diagonal));
                hyps.push(cx.exact("f(x_prime) <= x_prime", cone.leq(&map.eval(xp)?, xp)?));
                hyps.push(additive_bound(&cx, gamma)?);
            }
            let reach = cfg.high.norm_inf();
            Box::new(move |cx| {
                cx.search(vec![-reach; cx.dim], vec![reach; cx.dim], theorem.promised(), &|z| cx.positive(z))
            })
        }
    };
    let conclusion_check = if hyps.iter().all(|h| h.verified != Verification::No) {
        Some(search(&cx)?)
    } else {
        None
    };
    Ok(TheoremReport {
        theorem,
        dimension: dim,
        points: points.clone(),
        hypotheses: hyps,
        informational: vec![sf],
        conclusion_check,
        seed: cfg.seed,
    })
}

fn is_ice_cream(cone: &Cone) -> bool {
    // R_+ and R^2_+ are ice-cream cones (axis 1, half-angle pi/2 / pi/4)
    match cone.shape() {
        ConeShape::IceCream { .. } => true,
        ConeShape::Orthant { dim } => *dim <= 2,
    }
}

fn is_nonnegative_diagonal(r: &Vector) -> bool {
    let scale = r.norm_inf().max(1.0);
    r.iter().all(|&v| (v - r[0]).abs() <= 1e-9 * scale) && r[0] >= -1e-12 * scale
}

/// `<f(x) - x, 1> <= (pi/2 - gamma) |f(x) - x|_2` on the sample region.
fn additive_bound<M: Mapping + ?Sized>(cx: &Context<'_, M>, gamma: f64) -> Result<Hypothesis> {
    let orthant = Cone::orthant(cx.dim)?;
    let factor = std::f64::consts::FRAC_PI_2 - gamma;
    let outcomes = par_samples(cx.cfg.count, |i| {
        let x = in_cone_and_box(cx.cfg, &orthant, &mut cx.cfg.rng(i))?;
        let r = cx.map.eval(&x)?.sub(&x);
        let lhs: f64 = r.iter().sum();
        let rhs = factor * r.norm2();
        Ok((lhs > rhs + 1e-12 * r.norm2()).then_some(x))
    })?;
    let failure = outcomes.into_iter().flatten().next();
    let detail = failure.map(|x| format!("fails at x = {x}")).unwrap_or_default();
    Ok(hypothesis("additive_bound", Verification::sampled(detail.is_empty()), detail))
}

/// Monotone descent from `x''` and from `x'`; when both reach the same
/// point in dimension at most 2, a located fixed point above it is used.
fn two_by_descent<M: Mapping + ?Sized>(cx: &Context<'_, M>, xp: &Vector, x2: &Vector) -> Result<Conclusion> {
    let tol = cx.opts.solve_tol;
    let lower = monotone_descent(cx.map, cx.cone, x2, tol, cx.opts.max_iter);
    let upper = monotone_descent(cx.map, cx.cone, xp, tol, cx.opts.max_iter);
    let hull: (Vec<f64>, Vec<f64>) = {
        let (l, h) = (x2.as_slice(), xp.as_slice());
        (l.iter().zip(h).map(|(a, b)| a.min(*b)).collect(), l.iter().zip(h).map(|(a, b)| a.max(*b)).collect())
    };
    let mut conclusion = Conclusion {
        method: "descent".to_string(),
        search_low: hull.0,
        search_high: hull.1,
        symmetric_extension: false,
        promised: 2,
        located: Vec::new(),
        unresolved: 0,
        satisfied: false,
        detail: String::new(),
    };
    let (lower, upper) = match (lower, upper) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            conclusion.detail = format!("descent failed: {e}");
            return Ok(conclusion);
        }
    };
    let x_bar = lower.fixed_point.clone();
    conclusion.located.push(LocatedPoint { x: x_bar.clone(), degree: None, residual_inf: lower.residual_inf });
    let distinct = |z: &Vector| z.distance_inf(&x_bar) > 1e3 * tol && cx.cone.compare_unchecked(&x_bar, z).lt;
    if distinct(&upper.fixed_point) {
        conclusion.located.push(LocatedPoint { x: upper.fixed_point, degree: None, residual_inf: upper.residual_inf });
    } else if cx.dim <= 2 {
        let (lo, hi) = cx.search_box_of_body(xp)?;
        let found = cx.search(lo, hi, 1, &|z| Ok(cx.cone.contains(z, false)? && distinct(z)))?;
        conclusion.method = "descent+degree".to_string();
        conclusion.unresolved = found.unresolved;
        conclusion.located.extend(found.located.into_iter().take(1));
    }
    conclusion.satisfied = conclusion.located.len() >= 2;
    Ok(conclusion)
}
