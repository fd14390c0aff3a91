//! Sampling certifiers: a monotonicity counterexample for the zigzag map, the
//! scalability witness of the piecewise map and a contraction estimate.

use conefix::certify::{check_monotone, check_scalable, estimate_contraction, SampleConfig, Strength};
use conefix::{Cone, MapHandle, Vector};

fn main() -> conefix::Result<()> {
    let zigzag = MapHandle::builtin("zigzag")?;
    let k2 = Cone::orthant(2)?;
    let cfg = SampleConfig::cube(42, 20_000, 2, 0.0, 5.0)?;
    let report = check_monotone(&zigzag, &k2, &cfg, Strength::Weak)?;
    println!("zigzag monotone: {:?}, {} violations", report.verdict, report.violations);
    if let Some(w) = &report.witness {
        println!("  x = {}, x' = {}, f(x) = {}, f(x') = {}", w.x, w.x_prime.as_ref().unwrap(), w.lhs, w.rhs);
        println!("  witness replays: {}", report.replay(&zigzag)?);
    }

    let pc = MapHandle::builtin("piecewise_contraction")?;
    let k1 = Cone::orthant(1)?;
    let cfg = SampleConfig::cube(0, 100_000, 1, 0.0, 1.0)?;
    let report = check_scalable(&pc, &k1, &cfg, Strength::Weak)?;
    println!("piecewise scalable: {:?}", report.verdict);
    if let Some(w) = &report.witness {
        println!("  alpha = {}, x = {}: f(alpha x) = {} > alpha f(x) = {}", w.parameter.unwrap(), w.x, w.lhs, w.rhs);
    }

    let (c, report) = estimate_contraction(&pc, &k1, &Vector::ones(1), &cfg.with_count(10_000)?)?;
    println!("contraction constant estimate {c:.6} (contractive: {})", report.statistics["contractive"] == 1.0);
    Ok(())
}
