use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::vector::Vector;

const MAX_REJECTIONS: usize = 10_000;

/// Sampling parameters shared by all certifiers.
///
/// Sample `i` draws from its own ChaCha8 stream (`seed`, stream `i`), so a
/// report depends only on the config and never on thread scheduling.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: usize,
    pub low: Vector,
    pub high: Vector,
    #[serde(default = "default_alpha")]
    pub alpha_range: (f64, f64),
    #[serde(default = "default_theta")]
    pub theta_range: (f64, f64),
    #[serde(default = "default_epsilon")]
    pub epsilon_range: (f64, f64),
    /// 1-norm levels for the guiding conditions; defaults to
    /// `[0, |high_+|_1]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level_range: Option<(f64, f64)>,
}

fn default_alpha() -> (f64, f64) {
    (1.01, 4.0)
}

fn default_theta() -> (f64, f64) {
    (0.01, 0.99)
}

fn default_epsilon() -> (f64, f64) {
    (1e-3, 1.0)
}

impl SampleConfig {
    pub fn new(seed: u64, count: usize, low: Vector, high: Vector) -> Result<Self> {
        let cfg = Self {
            seed,
            count,
            low,
            high,
            alpha_range: default_alpha(),
            theta_range: default_theta(),
            epsilon_range: default_epsilon(),
            level_range: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// The cube `[low, high]^dim`.
    pub fn cube(seed: u64, count: usize, dim: usize, low: f64, high: f64) -> Result<Self> {
        Self::new(seed, count, Vector::new(vec![low; dim])?, Vector::new(vec![high; dim])?)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_count(mut self, count: usize) -> Result<Self> {
        self.count = count;
        self.validate()?;
        Ok(self)
    }

    pub fn with_alpha_range(mut self, low: f64, high: f64) -> Result<Self> {
        self.alpha_range = (low, high);
        self.validate()?;
        Ok(self)
    }

    pub fn with_theta_range(mut self, low: f64, high: f64) -> Result<Self> {
        self.theta_range = (low, high);
        self.validate()?;
        Ok(self)
    }

    pub fn with_epsilon_range(mut self, low: f64, high: f64) -> Result<Self> {
        self.epsilon_range = (low, high);
        self.validate()?;
        Ok(self)
    }

    pub fn with_level_range(mut self, low: f64, high: f64) -> Result<Self> {
        self.level_range = Some((low, high));
        self.validate()?;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.low.dim()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        self.low.same_dim(&self.high)?;
        if self.count == 0 {
            return bad("sample count must be at least 1".into());
        }
        if self.low.iter().zip(self.high.iter()).any(|(l, h)| l > h) {
            return bad(format!("region low {} exceeds high {}", self.low, self.high));
        }
        let ordered = |(a, b): (f64, f64)| a.is_finite() && b.is_finite() && a <= b;
        let (a0, a1) = self.alpha_range;
        if !ordered(self.alpha_range) || a0 <= 1.0 {
            return bad(format!("alpha range [{a0}, {a1}] must lie in (1, inf)"));
        }
        let (t0, t1) = self.theta_range;
        if !ordered(self.theta_range) || t0 <= 0.0 || t1 >= 1.0 {
            return bad(format!("theta range [{t0}, {t1}] must lie in (0, 1)"));
        }
        let (e0, e1) = self.epsilon_range;
        if !ordered(self.epsilon_range) || e0 <= 0.0 {
            return bad(format!("epsilon range [{e0}, {e1}] must lie in (0, inf)"));
        }
        if let Some((l0, l1)) = self.level_range {
            if !ordered((l0, l1)) || l0 < 0.0 {
                return bad(format!("level range [{l0}, {l1}] must lie in [0, inf)"));
            }
        }
        Ok(())
    }

    pub(crate) fn rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }

    pub(crate) fn diameter(&self) -> f64 {
        self.high.sub(&self.low).norm2()
    }

    pub(crate) fn level_range_or_default(&self) -> (f64, f64) {
        self.level_range
            .unwrap_or_else(|| (0.0, self.high.iter().map(|h| h.max(0.0)).sum()))
    }
}

/// Evaluates `sample(i)` for `i in 0..count` in parallel and returns the
/// results in index order; the error with the lowest index wins.
pub(crate) fn par_samples<T: Send>(count: usize, sample: impl Fn(usize) -> Result<T> + Sync) -> Result<Vec<T>> {
    let sample = &sample;
    let results: Vec<Result<T>> = (0..count).into_par_iter().map(sample).collect();
    results.into_iter().collect()
}

pub(crate) fn uniform(rng: &mut impl Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..=hi)
    }
}

pub(crate) fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    uniform(rng, (lo.ln(), hi.ln())).exp()
}

pub(crate) fn in_box(cfg: &SampleConfig, rng: &mut impl Rng) -> Vector {
    let entries = cfg.low.iter().zip(cfg.high.iter()).map(|(&l, &h)| uniform(rng, (l, h))).collect();
    Vector::from_finite(entries)
}

/// A uniform point of `K ∩ box`, by rejection.
pub(crate) fn in_cone_and_box(cfg: &SampleConfig, cone: &Cone, rng: &mut impl Rng) -> Result<Vector> {
    for _ in 0..MAX_REJECTIONS {
        let x = in_box(cfg, rng);
        if cone.contains_unchecked(&x, false) {
            return Ok(x);
        }
    }
    Err(Error::Sampling(format!(
        "no point of the cone found in the region after {MAX_REJECTIONS} draws"
    )))
}

/// A unit vector (2-norm) of `K`, by rejection from the bounding box of
/// `K ∩ S^{N-1}`.
pub(crate) fn cone_direction(cone: &Cone, rng: &mut impl Rng) -> Result<Vector> {
    let (lo, hi) = cone.sphere_bounding_box();
    for _ in 0..MAX_REJECTIONS {
        let d = Vector::from_finite(lo.iter().zip(&hi).map(|(&l, &h)| uniform(rng, (l, h))).collect());
        let norm = d.norm2();
        if norm > 1e-9 && cone.contains_unchecked(&d, false) {
            return Ok(d.scale(1.0 / norm));
        }
    }
    Err(Error::Sampling("could not draw a direction inside the cone".into()))
}

/// `x` uniform in the region and `x' = x + t k` with `k` a unit direction of
/// `K` and `t` log-uniform in `[1e-3 diam, diam]`, so `x <_K x'`.
pub(crate) fn ordered_pair(cfg: &SampleConfig, cone: &Cone, rng: &mut impl Rng) -> Result<(Vector, Vector)> {
    let diam = cfg.diameter();
    if diam == 0.0 {
        return Err(Error::Sampling("region is a single point, no ordered pairs exist".into()));
    }
    let x = in_box(cfg, rng);
    let k = cone_direction(cone, rng)?;
    let t = log_uniform(rng, 1e-3 * diam, diam);
    let x_prime = x.add_scaled(t, &k);
    Ok((x, x_prime))
}

/// A point of the simplex `{ z >= 0 : |z|_1 = level }` from the symmetric
/// Dirichlet(1, ..., 1) distribution.
pub(crate) fn simplex_point(dim: usize, level: f64, rng: &mut impl Rng) -> Vector {
    let draws: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = draws.iter().sum();
    if total == 0.0 {
        return Vector::filled(dim, level / dim as f64);
    }
    Vector::from_finite(draws.into_iter().map(|e| level * e / total).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector;

    #[test]
    fn validation() {
        assert!(SampleConfig::cube(0, 0, 2, 0.0, 1.0).is_err());
        assert!(SampleConfig::new(0, 5, vector![1.0], vector![0.0]).is_err());
        let cfg = SampleConfig::cube(0, 5, 2, 0.0, 1.0).unwrap();
        assert!(cfg.clone().with_alpha_range(0.5, 2.0).is_err());
        assert!(cfg.clone().with_theta_range(0.5, 1.0).is_err());
        assert!(cfg.clone().with_epsilon_range(0.0, 1.0).is_err());
        assert!(cfg.with_level_range(4.0, 4.0).is_ok());
    }

    #[test]
    fn streams_are_independent_of_order() {
        let cfg = SampleConfig::cube(7, 5, 3, -1.0, 1.0).unwrap();
        let forward: Vec<Vector> = (0..5).map(|i| in_box(&cfg, &mut cfg.rng(i))).collect();
        let parallel = par_samples(5, |i| Ok(in_box(&cfg, &mut cfg.rng(i)))).unwrap();
        assert_eq!(forward, parallel);
        assert_ne!(forward[0], forward[1]);
    }

    #[test]
    fn ordered_pairs_are_ordered() {
        let cone = Cone::ice_cream(vector![1.0, 2.0], 0.95).unwrap();
        let cfg = SampleConfig::cube(3, 500, 2, -1.0, 1.0).unwrap();
        for i in 0..500 {
            let (x, y) = ordered_pair(&cfg, &cone, &mut cfg.rng(i)).unwrap();
            assert!(cone.compare(&x, &y).unwrap().lt);
        }
    }

    #[test]
    fn simplex_points_have_the_level() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let z = simplex_point(4, 3.0, &mut rng);
            assert!((z.norm1() - 3.0).abs() < 1e-12);
            assert!(z.iter().all(|&v| v >= 0.0));
        }
    }

    #[test]
    fn degenerate_region_rejects_pairs() {
        let cfg = SampleConfig::cube(0, 1, 1, 0.5, 0.5).unwrap();
        let cone = Cone::orthant(1).unwrap();
        assert!(matches!(ordered_pair(&cfg, &cone, &mut cfg.rng(0)), Err(Error::Sampling(_))));
    }
}
