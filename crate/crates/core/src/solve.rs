//! Fixed-point iteration `x_{k+1} = f(x_k)`.
//!
//! Three drivers share one loop: [`iterate`] (plain iteration with a
//! successive-difference stopping rule), [`monotone_descent`] (iteration from
//! a feasible point that asserts `x_{k+1} <=_K x_k` at every step) and
//! [`contraction_solve`] (iteration with the a posteriori stopping rule and a
//! priori error bounds for rate `q = c delta(K) < 1`). [`multistart`] runs
//! the plain iteration from many starts and clusters the limits.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certify::grade_point;
use crate::cone::{default_delta_resolution, weighted_max_norm, weighted_max_norm_unchecked, Cone};
use crate::error::{Error, Result};
use crate::map::{require_self_map, Mapping};
use crate::region::Region;
use crate::vector::Vector;

/// Iterates with an entry outside `[-GUARD, GUARD]` count as diverged.
pub const GUARD: f64 = 1e9;

/// Slack on the observed contraction ratio.
pub const RATIO_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Converged,
    MaxIter,
    Diverged,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    /// `x_0, x_1, ...`
    pub iterates: Vec<Vector>,
    /// `|x_{k+1} - x_k|_w`, one entry per step.
    pub residual_w: Vec<f64>,
    /// `x_{k+1} <=_K x_k`, one entry per step.
    pub order_descending: Vec<bool>,
    /// `q^k |x_0 - x*|_w` for every iterate, with `x*` the final iterate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_certificate: Option<Vec<f64>>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl IterationTrace {
    pub fn steps(&self) -> usize {
        self.residual_w.len()
    }

    /// One row per step: `k`, the components of `x_k`, the residual, the
    /// order flag and the bound (`-` when absent).
    pub fn to_table(&self) -> String {
        let dim = self.iterates.first().map_or(0, Vector::dim);
        let mut out = String::from("k");
        for i in 0..dim {
            let _ = write!(out, "\tx{i}");
        }
        out.push_str("\tresidual_w\torder_flag\tbound\n");
        for k in 1..self.iterates.len() {
            let _ = write!(out, "{k}");
            for v in self.iterates[k].iter() {
                let _ = write!(out, "\t{v}");
            }
            let _ = write!(out, "\t{}\t{}", self.residual_w[k - 1], self.order_descending[k - 1]);
            match self.bound_certificate.as_ref().and_then(|b| b.get(k)) {
                Some(b) => {
                    let _ = writeln!(out, "\t{b}");
                }
                None => out.push_str("\t-\n"),
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub fixed_point: Vector,
    pub trace: IterationTrace,
    /// `c delta(K)` for the contraction solver.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified_rate: Option<f64>,
    /// `|f(x*) - x*|_inf` at the returned point.
    pub residual_inf: f64,
    /// Whether `0 <_K f(0)` held, for the contraction solver.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positive_f0: Option<bool>,
}

impl SolveResult {
    pub fn converged(&self) -> bool {
        self.trace.status == Status::Converged
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solve results serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

enum Step {
    Continue,
    Stop,
}

struct Loop<'a, M: ?Sized> {
    map: &'a M,
    cone: &'a Cone,
    w: &'a Vector,
}

impl<M: Mapping + ?Sized> Loop<'_, M> {
    /// Runs up to `max_iter` steps. `step(k, residuals, prev, next)` sees
    /// every accepted step and decides whether to stop.
    fn run(
        &self,
        x0: &Vector,
        max_iter: usize,
        mut step: impl FnMut(usize, &[f64], &Vector, &Vector) -> Result<Step>,
    ) -> Result<IterationTrace> {
        let mut trace = IterationTrace {
            iterates: vec![x0.clone()],
            residual_w: Vec::new(),
            order_descending: Vec::new(),
            bound_certificate: None,
            status: Status::MaxIter,
            diagnostic: None,
        };
        for k in 0..max_iter {
            let prev = trace.iterates.last().expect("trace starts with x0");
            let next = match self.map.eval(prev) {
                Ok(v) => v,
                Err(Error::NonFinite { index, value }) => {
                    trace.status = Status::Diverged;
                    trace.diagnostic = Some(format!("step {}: entry {index} of f(x) is {value}", k + 1));
                    return Ok(trace);
                }
                Err(e) => return Err(e),
            };
            if let Some((i, v)) = next.iter().enumerate().find(|(_, v)| v.abs() > GUARD) {
                trace.status = Status::Diverged;
                trace.diagnostic = Some(format!("step {}: entry {i} = {v} left the guard box", k + 1));
                trace.iterates.push(next);
                return Ok(trace);
            }
            let residual = weighted_max_norm_unchecked(&next.sub(prev), self.w);
            let descending = self.cone.compare_unchecked(&next, prev).leq;
            trace.residual_w.push(residual);
            trace.order_descending.push(descending);
            let outcome = step(k + 1, &trace.residual_w, prev, &next)?;
            trace.iterates.push(next);
            if let Step::Stop = outcome {
                trace.status = Status::Converged;
                return Ok(trace);
            }
        }
        Ok(trace)
    }

    fn finish(&self, trace: IterationTrace) -> Result<SolveResult> {
        let fixed_point = trace.iterates.last().expect("trace starts with x0").clone();
        let residual_inf = if trace.status == Status::Diverged {
            f64::INFINITY
        } else {
            self.map.eval(&fixed_point)?.distance_inf(&fixed_point)
        };
        Ok(SolveResult { fixed_point, trace, certified_rate: None, residual_inf, positive_f0: None })
    }
}

fn check_inputs<M: Mapping + ?Sized>(map: &M, x0: &Vector, tol: f64, max_iter: usize) -> Result<usize> {
    let dim = require_self_map(map)?;
    x0.check_dim(dim)?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if max_iter == 0 {
        return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
    }
    Ok(dim)
}

/// Plain iteration from `x0`, converged once `|x_{k+1} - x_k|_w <= tol`.
/// Order flags refer to the orthant.
pub fn iterate<M: Mapping + ?Sized>(
    map: &M,
    x0: &Vector,
    tol: f64,
    max_iter: usize,
    norm_w: &Vector,
) -> Result<SolveResult> {
    let dim = check_inputs(map, x0, tol, max_iter)?;
    iterate_in(map, &Cone::orthant(dim)?, x0, tol, max_iter, norm_w)
}

/// [`iterate`] with order flags taken in the order of `cone`.
pub fn iterate_in<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    x0: &Vector,
    tol: f64,
    max_iter: usize,
    norm_w: &Vector,
) -> Result<SolveResult> {
    let dim = check_inputs(map, x0, tol, max_iter)?;
    cone_dim(cone, dim)?;
    weighted_max_norm(norm_w, norm_w)?;
    norm_w.check_dim(dim)?;
    let runner = Loop { map, cone, w: norm_w };
    let trace = runner.run(x0, max_iter, |_, res, _, _| Ok(stop_if(res[res.len() - 1] <= tol)))?;
    runner.finish(trace)
}

fn stop_if(done: bool) -> Step {
    if done {
        Step::Stop
    } else {
        Step::Continue
    }
}

fn cone_dim(cone: &Cone, dim: usize) -> Result<()> {
    if cone.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: cone.dim() });
    }
    Ok(())
}

/// Iteration from a feasible point `p` (`p >=_K 0`, `f(p) <=_K p`) that
/// asserts `x_{k+1} <=_K x_k` at every step; convergence is measured in the
/// max norm. A failed assertion aborts with [`Error::OrderViolation`].
pub fn monotone_descent<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    p: &Vector,
    tol: f64,
    max_iter: usize,
) -> Result<SolveResult> {
    let dim = check_inputs(map, p, tol, max_iter)?;
    cone_dim(cone, dim)?;
    if grade_point(map, cone, p)?.is_none() {
        return Err(Error::NotFeasible);
    }
    let w = Vector::ones(dim);
    let runner = Loop { map, cone, w: &w };
    let trace = runner.run(p, max_iter, |k, res, prev, next| {
        if !cone.compare_unchecked(next, prev).leq {
            return Err(Error::OrderViolation { step: k - 1, next_step: k, previous: prev.clone(), next: next.clone() });
        }
        Ok(stop_if(res[res.len() - 1] <= tol))
    })?;
    match trace.status {
        Status::Converged => runner.finish(trace),
        Status::MaxIter => Err(Error::MaxIterations(max_iter)),
        Status::Diverged => Err(Error::Unsupported(trace.diagnostic.unwrap_or_default())),
    }
}

/// Iteration for a map with `f(x + eps w) <=_K f(x) + c eps w`.
///
/// The rate `q = c delta(K)` must be below 1. The loop stops once
/// `|x_{k+1} - x_k|_w <= tol (1 - q) / q`, which bounds the distance to the
/// fixed point by `tol`. An observed ratio of successive residuals above
/// `q + 1e-9`, after allowing for rounding in both residuals, aborts with
/// [`Error::ContractionViolation`]. The trace carries
/// the a priori bounds `q^k |x_0 - x*|_w`.
#[allow(clippy::too_many_arguments)]
pub fn contraction_solve<M: Mapping + ?Sized>(
    map: &M,
    cone: &Cone,
    w: &Vector,
    c: f64,
    x0: &Vector,
    tol: f64,
    max_iter: usize,
) -> Result<SolveResult> {
    let dim = check_inputs(map, x0, tol, max_iter)?;
    cone_dim(cone, dim)?;
    w.check_dim(dim)?;
    if !(c >= 0.0 && c.is_finite()) {
        return Err(Error::InvalidArgument(format!("contraction constant must be nonnegative, got {c}")));
    }
    if !cone.contains(w, true)? {
        return Err(Error::NotInterior(w.clone()));
    }
    let delta = cone.delta_k(w, default_delta_resolution(dim))?;
    let q = c * delta;
    if q >= 1.0 {
        return Err(Error::RateTooLarge(q));
    }
    let threshold = if q == 0.0 { f64::INFINITY } else { tol * (1.0 - q) / q };
    let runner = Loop { map, cone, w };
    let trace = runner.run(x0, max_iter, |k, res, prev, _| {
        let r = res[res.len() - 1];
        if res.len() >= 2 {
            let before = res[res.len() - 2];
            // both residuals carry rounding of the order of the iterates
            let noise = 16.0 * f64::EPSILON * weighted_max_norm_unchecked(prev, w).max(1.0);
            if r - noise > (q + RATIO_SLACK) * (before + noise) {
                return Err(Error::ContractionViolation { step: k - 1, ratio: r / before, rate: q });
            }
        }
        Ok(stop_if(r <= threshold))
    })?;
    let x_star = trace.iterates.last().expect("trace starts with x0").clone();
    let d0 = weighted_max_norm_unchecked(&x0.sub(&x_star), w);
    let bounds = (0..trace.iterates.len()).map(|k| q.powi(k as i32) * d0).collect();
    let mut trace = trace;
    trace.bound_certificate = Some(bounds);
    let mut result = runner.finish(trace)?;
    result.certified_rate = Some(q);
    result.positive_f0 = map.eval(&Vector::zeros(dim)).ok().map(|f0| cone.compare_unchecked(&Vector::zeros(dim), &f0).lt);
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    /// Limit of the first start in the cluster.
    pub center: Vector,
    /// Start indices whose limits lie within the cluster radius (max norm).
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultistartReport {
    pub starts: Vec<Vector>,
    pub clusters: Vec<Cluster>,
    /// Starts that hit the iteration cap or diverged.
    pub not_converged: Vec<usize>,
    pub cluster_radius: f64,
    /// More clusters than half the converged starts: the fixed points are
    /// not isolated and the cluster list is not a count of fixed points.
    pub non_isolated: bool,
}

impl MultistartReport {
    pub fn distinct_limits(&self) -> Vec<Vector> {
        self.clusters.iter().map(|c| c.center.clone()).collect()
    }
}

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let (mut value, mut scale) = (0.0, 1.0 / base as f64);
    while index > 0 {
        value += (index % base) as f64 * scale;
        index /= base;
        scale /= base as f64;
    }
    value
}

/// The Halton points of `region` (bounding box, membership filtered), in
/// sequence order starting at index 1.
pub fn halton_starts(region: &Region, count: usize) -> Result<Vec<Vector>> {
    region.validate()?;
    let (low, high) = region.bounding_box()?;
    if low.len() > PRIMES.len() {
        return Err(Error::Unsupported(format!("Halton starts above dimension {}", PRIMES.len())));
    }
    let mut starts = Vec::with_capacity(count);
    let mut index = 1u64;
    while starts.len() < count {
        if index > 1000 * count as u64 + 1000 {
            return Err(Error::Sampling("region too thin for Halton starts".into()));
        }
        let x: Vec<f64> = (0..low.len())
            .map(|i| low[i] + radical_inverse(index, PRIMES[i]) * (high[i] - low[i]))
            .collect();
        let x = Vector::from_finite(x);
        if region.contains(&x)? {
            starts.push(x);
        }
        index += 1;
    }
    Ok(starts)
}

/// Plain iteration (max norm) from `starts` Halton points of `region`, with
/// converged limits clustered greedily in start order. The default cluster
/// radius is `1e3 tol`.
pub fn multistart<M: Mapping + ?Sized>(
    map: &M,
    region: &Region,
    starts: usize,
    tol: f64,
    max_iter: usize,
    cluster_radius: Option<f64>,
) -> Result<MultistartReport> {
    let dim = require_self_map(map)?;
    if region.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: region.dim() });
    }
    if starts < 2 {
        return Err(Error::InvalidArgument("multistart needs at least two starts".into()));
    }
    let radius = cluster_radius.unwrap_or(1e3 * tol);
    let points = halton_starts(region, starts)?;
    let w = Vector::ones(dim);
    let results: Vec<Result<SolveResult>> =
        points.par_iter().map(|x0| iterate(map, x0, tol, max_iter, &w)).collect();
    let mut clusters: Vec<Cluster> = Vec::new();
    let mut not_converged = Vec::new();
    for (i, result) in results.into_iter().enumerate() {
        let result = result?;
        if !result.converged() {
            not_converged.push(i);
            continue;
        }
        let limit = result.fixed_point;
        match clusters.iter_mut().find(|c| c.center.distance_inf(&limit) <= radius) {
            Some(c) => c.members.push(i),
            None => clusters.push(Cluster { center: limit, members: vec![i] }),
        }
    }
    let converged = starts - not_converged.len();
    Ok(MultistartReport {
        non_isolated: clusters.len() > 1 && 2 * clusters.len() > converged,
        starts: points,
        clusters,
        not_converged,
        cluster_radius: radius,
    })
}
