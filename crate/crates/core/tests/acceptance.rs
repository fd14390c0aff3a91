//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_UNATTAINABLE` are checked exactly like the
//! others and print FAIL when they fail; they do not change the exit status.
//! Any other failure exits with status 1.

use std::f64::consts::FRAC_1_SQRT_2;
use std::time::{Duration, Instant};

use conefix::certify::{
    check_monotone, check_norm_monotone, check_scalable, check_sup_monotone, find_invariant_icecream,
    scalable_violation, SampleConfig, Strength,
};
use conefix::cone::{leq_lambda_2d, weighted_max_norm};
use conefix::degree::{
    check_theorem, degree, degree_1d, locate_fixed_points, LocateOptions, TheoremKind, TheoremOptions,
};
use conefix::map::{example3, piecewise_contraction, zigzag};
use conefix::solve::contraction_solve;
use conefix::{Cone, FnMap, MapHandle, Mapping, Region, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_UNATTAINABLE: [u32; 2] = [6, 7];

type Outcome = Result<String, String>;

type Criterion = (u32, &'static str, fn() -> Outcome);

fn v(entries: &[f64]) -> Vector {
    Vector::from_slice(entries).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit_s: f64, what: &str) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s, format!("{what} took {:.3} s, limit {limit_s} s", elapsed.as_secs_f64()))
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// Bisection on `x - example3(x)`, independent of the library's degree code.
fn example3_root(mut a: f64, mut b: f64) -> f64 {
    let g = |x: f64| x - 1.0 / (1.0 + (-(10.0 * x - 4.0)).exp());
    assert!(g(a).signum() != g(b).signum());
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if g(m).signum() == g(a).signum() {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn example3_roots() -> [f64; 3] {
    // sign changes of x - f(x) on a fine scan
    let g = |x: f64| x - 1.0 / (1.0 + (-(10.0 * x - 4.0)).exp());
    let mut roots = Vec::new();
    let n = 10_000;
    for i in 0..n {
        let (a, b) = (i as f64 / n as f64, (i + 1) as f64 / n as f64);
        if g(a).signum() != g(b).signum() {
            roots.push(example3_root(a, b));
        }
    }
    roots.try_into().expect("three sign changes")
}

fn criterion_1() -> Outcome {
    let f = MapHandle::builtin("example3").map_err(e)?;
    let start = Instant::now();
    let report = locate_fixed_points(&f, &Region::interval(0.0, 1.0).map_err(e)?, &LocateOptions::default()).map_err(e)?;
    let elapsed = start.elapsed();
    let oracle = example3_roots();
    ensure(report.boxes.len() == 3, format!("{} boxes", report.boxes.len()))?;
    ensure(report.unresolved.is_empty(), "unresolved boxes")?;
    let degrees: Vec<_> = report.boxes.iter().map(|b| b.degree).collect();
    ensure(degrees == [Some(1), Some(-1), Some(1)], format!("degrees {degrees:?}"))?;
    for (b, root) in report.boxes.iter().zip(oracle) {
        let x = b.estimate.as_ref().ok_or("box without estimate")?[0];
        ensure((x - root).abs() <= 1e-6, format!("estimate {x} vs oracle {root}"))?;
        ensure(b.low[0] <= root && root <= b.high[0], format!("oracle root {root} outside box"))?;
    }
    for (root, printed) in oracle.iter().zip([0.022375, 0.32852, 0.997465]) {
        ensure((root - printed).abs() < 2e-3, format!("root {root} far from {printed}"))?;
    }
    ensure((example3(0.6) - 0.88).abs() < 5e-3 && (example3(0.3) - 0.27).abs() < 5e-3, "anchor values")?;
    within(elapsed, 1.0, "localisation")?;
    Ok(format!("roots {:?}, degrees (+1, -1, +1), {:.3} s", oracle, elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let f = MapHandle::builtin("example3").map_err(e)?;
    let whole = degree_1d(&f, 0.0, 1.0, 1e-12).map_err(e)?;
    let cuts = [0.0, 0.2, 0.6, 1.0];
    let parts: Vec<_> = cuts.windows(2).map(|c| degree_1d(&f, c[0], c[1], 1e-12)).collect::<Result<_, _>>().map_err(e)?;
    ensure(whole.degree == Some(1), format!("whole degree {:?}", whole.degree))?;
    let degrees: Vec<_> = parts.iter().map(|p| p.degree).collect();
    ensure(degrees.iter().all(Option::is_some), "unreliable sub-interval")?;
    let sum: i32 = degrees.iter().flatten().sum();
    ensure(sum == 1, format!("sum {sum}"))?;
    Ok(format!("{degrees:?} sums to {sum} = deg on [0, 1]"))
}

fn criterion_3() -> Outcome {
    let f = MapHandle::builtin("piecewise_contraction").map_err(e)?;
    let k = Cone::orthant(1).map_err(e)?;
    let star = (1.0 - 0.96f64.sqrt()) / 2.0;
    ensure((piecewise_contraction(star).map_err(e)? - star).abs() < 1e-15, "closed-form root is not fixed")?;
    let x0 = 1.0;
    let r = contraction_solve(&f, &k, &v(&[1.0]), 0.5, &v(&[x0]), 1e-10, 1_000).map_err(e)?;
    ensure(r.converged(), "did not converge")?;
    let steps = r.trace.steps();
    ensure(steps <= 40, format!("{steps} iterations"))?;
    let e0 = (x0 - star).abs();
    for (k, x) in r.trace.iterates.iter().enumerate() {
        let err = (x[0] - star).abs();
        ensure(err <= 0.5f64.powi(k as i32) * e0 + 1e-9, format!("step {k}: error {err}"))?;
    }
    let final_err = (r.fixed_point[0] - star).abs();
    ensure(final_err <= 1e-10, format!("final error {final_err}"))?;
    Ok(format!("{steps} iterations, |x - x*| = {final_err:e}"))
}

fn criterion_4() -> Outcome {
    let f = MapHandle::builtin("piecewise_contraction").map_err(e)?;
    let k = Cone::orthant(1).map_err(e)?;
    let (fx, f2x) = (piecewise_contraction(0.125).map_err(e)?, piecewise_contraction(0.25).map_err(e)?);
    ensure((f2x - 0.0725).abs() < 1e-15 && (2.0 * fx - 0.05125).abs() < 1e-15, format!("f(2x) = {f2x}, 2f(x) = {}", 2.0 * fx))?;
    let w = scalable_violation(&f, &k, &v(&[0.125]), 2.0, Strength::Weak).map_err(e)?;
    ensure(w.is_some(), "(2, 1/8) is not reported as a violation")?;
    let cfg = SampleConfig::cube(0, 100_000, 1, 0.0, 1.0).map_err(e)?;
    let a = check_scalable(&f, &k, &cfg, Strength::Weak).map_err(e)?;
    let b = check_scalable(&f, &k, &cfg, Strength::Weak).map_err(e)?;
    ensure(a == b, "reports differ between runs")?;
    ensure(!a.passed(), "no violation found")?;
    ensure(a.replay(&f).map_err(e)?, "witness does not replay")?;
    let wit = a.witness.as_ref().unwrap();
    let (x, alpha) = (wit.x[0], wit.parameter.unwrap());
    ensure(
        piecewise_contraction(alpha * x).map_err(e)? > alpha * piecewise_contraction(x).map_err(e)?,
        "witness is not of the form f(alpha x) > alpha f(x)",
    )?;
    Ok(format!("f(1/4) = 0.0725 > 0.05125; sampled witness alpha = {alpha}, x = {x} at index {}", a.witness_index.unwrap()))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut compared = 0;
    for beta in [0.1, 0.3, 0.5, FRAC_1_SQRT_2] {
        let k = Cone::ice_cream(v(&[1.0, 1.0]), beta).map_err(e)?;
        let u = [FRAC_1_SQRT_2, FRAC_1_SQRT_2];
        for _ in 0..100_000 {
            let x = v(&[rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0)]);
            let y = v(&[rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0)]);
            let d = [y[0] - x[0], y[1] - x[1]];
            // direct cone test <d, u> >= beta |d|
            let margin = d[0] * u[0] + d[1] * u[1] - beta * d[0].hypot(d[1]);
            if margin.abs() <= 1e-12 * d[0].hypot(d[1]).max(1.0) {
                continue;
            }
            compared += 1;
            let lambda = leq_lambda_2d(beta, &x, &y).map_err(e)?;
            let direct = margin > 0.0;
            ensure(lambda == direct, format!("beta {beta}: disagreement at {x}, {y}"))?;
            ensure(k.leq(&x, &y).map_err(e)? == direct, format!("beta {beta}: compare disagrees at {x}, {y}"))?;
        }
    }
    within(start.elapsed(), 1.0, "equivalence check")?;
    Ok(format!("{compared} pairs, zero disagreements, {:.3} s", start.elapsed().as_secs_f64()))
}

fn criterion_6() -> Outcome {
    ensure(zigzag(2.0, 0.0).map_err(e)? == (0.0, 2.0), "I(2,0)")?;
    ensure(zigzag(4.0, 0.0).map_err(e)? == (4.0, 0.0), "I(4,0)")?;
    let f = MapHandle::builtin("zigzag").map_err(e)?;
    let k = Cone::orthant(2).map_err(e)?;
    let cfg = SampleConfig::cube(0, 10_000, 2, 0.0, 5.0).map_err(e)?;
    let mono = check_monotone(&f, &k, &cfg, Strength::Weak).map_err(e)?;
    ensure(!mono.passed() && mono.replay(&f).map_err(e)?, "no valid monotonicity witness")?;
    let mut failures = Vec::new();
    let norm = check_norm_monotone(&f, &k, &Vector::ones(2), &cfg).map_err(e)?;
    if !norm.passed() {
        let w = norm.witness.as_ref().unwrap();
        failures.push(format!(
            "norm-monotonicity: {} of {} samples violate, e.g. x = {}, x' = {}",
            norm.violations,
            norm.samples_tested,
            w.x,
            w.x_prime.as_ref().unwrap()
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut worst = (0.0, Vector::zeros(2), 0.0);
    for _ in 0..10_000 {
        let x = v(&[rng.random_range(0.0..5.0), rng.random_range(0.0..5.0)]);
        let beta = rng.random_range(0.01..4.0);
        let gap = f.eval(&x.scale(beta)).map_err(e)?.sub(&f.eval(&x).map_err(e)?.scale(beta)).norm2();
        if gap > worst.0 {
            worst = (gap, x, beta);
        }
    }
    if worst.0 > 1e-12 {
        failures.push(format!("homogeneity: |I(bx) - bI(x)| = {} at x = {}, b = {}", worst.0, worst.1, worst.2));
    }
    ensure(failures.is_empty(), failures.join("; "))?;
    Ok("printed values exact, witness replays, norm-monotone and homogeneous".into())
}

fn criterion_7() -> Outcome {
    let f = MapHandle::builtin("unimodal_sigmoid_layer").map_err(e)?;
    for d in [[0.0, 1.0], [1.0, 0.2]] {
        let fd = f.eval(&v(&d)).map_err(e)?;
        ensure(fd.iter().all(|c| *c > 0.0), format!("f({d:?}) = {fd} is not positive"))?;
    }
    let beta = (10.0f64 / 9.0).atan().cos();
    let cfg = SampleConfig::cube(0, 100_000, 2, -1.0, 2.0).map_err(e)?;
    let report = find_invariant_icecream(&f, &v(&[1.0, 1.0]), &[beta], &cfg).map_err(e)?;
    let trial = &report.trials[0];
    let describe = |r: &conefix::certify::PropertyReport| match &r.witness {
        Some(w) => format!("{} violations, e.g. x = {}", r.violations, w.x),
        None => "none".to_string(),
    };
    ensure(
        report.beta_star == Some(beta),
        format!(
            "beta = {beta} rejected: invariance {}; monotonicity {}",
            describe(&trial.invariance),
            describe(&trial.monotone)
        ),
    )?;
    Ok(format!("C((1,1), {beta}) accepted; f(d) > 0 on both data points"))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let orthant = Cone::orthant(2).map_err(e)?;
    let w = v(&[1.0, 1.0]);
    let exact = orthant.delta_k(&w, 1024).map_err(e)?;
    ensure(exact == 1.0, format!("analytic path {exact}"))?;
    let grid = orthant.delta_k_grid(&w, 1024).map_err(e)?;
    ensure((grid - 1.0).abs() <= 1e-3, format!("grid path {grid}"))?;
    let ice = Cone::ice_cream(w.clone(), FRAC_1_SQRT_2).map_err(e)?;
    let estimate = ice.delta_k(&w, 1024).map_err(e)?;
    // oracle: 10^6 directions, each bisected to the boundary of
    // { v : v <= w, -v <= w } with the direct inner-product test
    let inside = |d: [f64; 2]| (d[0] + d[1]) * FRAC_1_SQRT_2 >= FRAC_1_SQRT_2 * d[0].hypot(d[1]) - 1e-12;
    let member = |p: [f64; 2]| inside([1.0 - p[0], 1.0 - p[1]]) && inside([1.0 + p[0], 1.0 + p[1]]);
    let n = 1_000_000;
    let mut oracle: f64 = 0.0;
    for i in 0..n {
        let theta = std::f64::consts::TAU * i as f64 / n as f64;
        let dir = [theta.cos(), theta.sin()];
        let (mut lo, mut hi) = (0.0, 4.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if member([mid * dir[0], mid * dir[1]]) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        oracle = oracle.max(lo * dir[0].abs().max(dir[1].abs()));
    }
    ensure((estimate - 1.0).abs() <= 1e-3, format!("ice-cream estimate {estimate}"))?;
    ensure((oracle - 1.0).abs() <= 1e-3, format!("grid oracle {oracle}"))?;
    within(start.elapsed(), 5.0, "delta(K)")?;
    Ok(format!("orthant {exact} / grid {grid}; ice-cream {estimate} vs oracle {oracle}"))
}

fn criterion_9() -> Outcome {
    type Field = fn(&[f64]) -> Vec<f64>;
    // each map is f with x - f(x) the named field
    let cases: [(&str, Field, Region, i32); 3] = [
        ("identity", |_| vec![0.0, 0.0], Region::disk(v(&[0.0, 0.0]), 1.0).map_err(e)?, 1),
        (
            "z^2",
            |x| vec![x[0] - (x[0] * x[0] - x[1] * x[1]), x[1] - 2.0 * x[0] * x[1]],
            Region::boxed(v(&[-1.0, -1.0]), v(&[1.0, 1.0])).map_err(e)?,
            2,
        ),
        ("root-free", |x| vec![x[0] - 3.0, x[1] + 1.0], Region::boxed(v(&[-1.0, -1.0]), v(&[1.0, 1.0])).map_err(e)?, 0),
    ];
    let mut notes = Vec::new();
    for (name, field, region, expected) in cases {
        let f = FnMap::new(2, field);
        let r = degree(&f, &region, 256, 1e-12).map_err(e)?;
        ensure(r.degree == Some(expected), format!("{name}: degree {:?}", r.degree))?;
        for angle in [0.3, 2.0, 4.5] {
            let shift = 0.49 * r.boundary_min_residual;
            let (c, s) = (shift * f64::cos(angle), shift * f64::sin(angle));
            let g = FnMap::new(2, move |x: &[f64]| {
                let y = field(x);
                vec![y[0] + c, y[1] + s]
            });
            let p = degree(&g, &region, 256, 1e-12).map_err(e)?;
            ensure(p.degree == Some(expected), format!("{name}: perturbed degree {:?}", p.degree))?;
        }
        notes.push(format!("{name} {expected}"));
    }
    Ok(format!("{}; stable under perturbations below half the boundary residual", notes.join(", ")))
}

fn criterion_10() -> Outcome {
    let f = MapHandle::builtin("example3").map_err(e)?;
    let k = Cone::orthant(1).map_err(e)?;
    let cfg = SampleConfig::cube(0, 10_000, 1, 0.0, 2.0).map_err(e)?;
    let opts = TheoremOptions::default();
    let pts = |list: &[(&str, f64)]| list.iter().map(|(n, x)| (n.to_string(), v(&[*x]))).collect();
    let roots = example3_roots();
    let mut notes = Vec::new();

    let start = Instant::now();
    let r = check_theorem(&f, &k, TheoremKind::BoundaryExclusion, &pts(&[("x_prime", 0.3), ("x_double_prime", 0.6)]), &cfg, &opts)
        .map_err(e)?;
    within(start.elapsed(), 1.0, "thm6")?;
    ensure(r.hypotheses.iter().all(|h| h.verified != conefix::degree::Verification::No), "thm6 hypothesis failed")?;
    let c = r.conclusion_check.as_ref().ok_or("thm6 conclusion not checked")?;
    ensure(c.located.len() == 1 && (c.located[0].x[0] - roots[1]).abs() < 1e-6, format!("thm6 located {:?}", c.located))?;
    notes.push(format!("thm6 {}", c.located[0].x[0]));

    let start = Instant::now();
    let r = check_theorem(&f, &k, TheoremKind::TwoOrderedFixedPoints, &pts(&[("x_prime", 2.0), ("x_double_prime", 0.1)]), &cfg, &opts)
        .map_err(e)?;
    within(start.elapsed(), 1.0, "thm8")?;
    ensure(r.passed(), "thm8 report did not pass")?;
    let c = r.conclusion_check.as_ref().unwrap();
    let (lo, hi) = (c.located[0].x[0], c.located[1].x[0]);
    ensure(lo < hi && (lo - roots[0]).abs() < 1e-6 && (hi - roots[2]).abs() < 1e-6, format!("thm8 located {lo}, {hi}"))?;
    notes.push(format!("thm8 {lo} < {hi}"));

    let start = Instant::now();
    let r = check_theorem(
        &f,
        &k,
        TheoremKind::ThreeFixedPoints,
        &pts(&[("x_prime", 0.1), ("x", 0.4), ("x_double_prime", 2.0)]),
        &cfg,
        &opts,
    )
    .map_err(e)?;
    within(start.elapsed(), 1.0, "three_fixed_points")?;
    ensure(r.passed(), "three_fixed_points report did not pass")?;
    let c = r.conclusion_check.as_ref().unwrap();
    ensure(c.located.len() == 3, format!("located {}", c.located.len()))?;
    for (p, root) in c.located.iter().zip(roots) {
        ensure((p.x[0] - root).abs() < 1e-6, format!("three_fixed_points located {}", p.x))?;
    }
    notes.push("three_fixed_points 3 located".into());
    Ok(notes.join("; "))
}

fn criterion_11() -> Outcome {
    let mut checks = 0usize;
    for seed in 0..3u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cones = [
            Cone::orthant(3).map_err(e)?,
            Cone::ice_cream(v(&[1.0, 0.5, 2.0]), 0.6).map_err(e)?,
        ];
        for k in &cones {
            let u = match k.shape() {
                conefix::ConeShape::IceCream { axis, .. } => Some(axis.scale(1.0 / axis.norm2())),
                _ => None,
            };
            let margin = |d: &Vector| match &u {
                Some(u) => d.dot(u) - 0.6 * d.norm2(),
                None => d.iter().copied().fold(f64::INFINITY, f64::min),
            };
            for _ in 0..10_000 {
                let mut point = || v(&[rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)]);
                let (x, y, z, a) = (point(), point(), point(), point());
                let lambda = 10f64.powf(rng.random_range(-3.0..3.0));
                ensure(k.leq(&x, &x).map_err(e)?, "reflexivity")?;
                let clear = margin(&y.sub(&x)).abs() > 1e-9;
                if clear {
                    let xy = k.leq(&x, &y).map_err(e)?;
                    ensure(xy == k.leq(&x.add(&a), &y.add(&a)).map_err(e)?, "translation invariance")?;
                    ensure(xy == k.leq(&x.scale(lambda), &y.scale(lambda)).map_err(e)?, "scaling invariance")?;
                }
                if k.leq(&x, &y).map_err(e)? && k.leq(&y, &z).map_err(e)? {
                    ensure(k.leq(&x, &z).map_err(e)?, "transitivity")?;
                }
                if k.leq(&x, &y).map_err(e)? && k.leq(&y, &x).map_err(e)? {
                    ensure(x == y, "pointedness")?;
                }
                let w = v(&[rng.random_range(0.1..3.0), rng.random_range(0.1..3.0), rng.random_range(0.1..3.0)]);
                let n = |p: &Vector| weighted_max_norm(p, &w).unwrap();
                ensure(n(&x.add(&y)) <= (n(&x) + n(&y)) * (1.0 + 1e-12), "triangle inequality")?;
                ensure((n(&x.scale(lambda)) - lambda * n(&x)).abs() <= 1e-12 * lambda * n(&x), "homogeneity")?;
                ensure(n(&x) > 0.0 || x.is_zero(), "definiteness")?;
                if k.is_orthant() {
                    ensure(k.leq(&x, &w.scale(n(&x))).map_err(e)?, "v <= |v|_w w")?;
                    let anchor = w.add(&Vector::ones(3));
                    let g = |p: &Vector| k.gauge_norm(p, &anchor).unwrap();
                    ensure(g(&x.add(&y)) <= g(&x) + g(&y) + 1e-12 * (g(&x) + g(&y)), "gauge triangle inequality")?;
                    ensure((g(&x.scale(lambda)) - lambda * g(&x)).abs() <= 1e-12 * (lambda * g(&x)).max(1.0), "gauge homogeneity")?;
                }
                checks += 1;
            }
        }
        for (name, lo, hi) in [("zigzag", 0.0, 5.0), ("rotation_sigmoid", -1.0, 2.0), ("piecewise_contraction", 0.0, 1.0)] {
            let f = MapHandle::builtin(name).map_err(e)?;
            let dim = f.in_dim();
            let k = Cone::orthant(dim).map_err(e)?;
            let cfg = SampleConfig::cube(seed, 10_000, dim, lo, hi).map_err(e)?;
            for run in [check_monotone, check_sup_monotone, check_scalable] {
                let a = run(&f, &k, &cfg, Strength::Weak).map_err(e)?;
                let b = run(&f, &k, &cfg, Strength::Weak).map_err(e)?;
                ensure(serde_json::to_vec(&a).unwrap() == serde_json::to_vec(&b).unwrap(), format!("{name}: report not deterministic"))?;
                if !a.passed() {
                    ensure(a.replay(&f).map_err(e)?, format!("{name}: witness does not replay"))?;
                }
            }
        }
    }
    Ok(format!("{checks} axiom samples over seeds 0, 1, 2; certifier reports deterministic, witnesses replay"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "Example 3 fixed points", criterion_1),
        (2, "degree additivity", criterion_2),
        (3, "contraction bound", criterion_3),
        (4, "scalability witness", criterion_4),
        (5, "Lambda equivalence", criterion_5),
        (6, "zigzag certificates", criterion_6),
        (7, "invariant cone for the unimodal-sigmoid layer", criterion_7),
        (8, "delta(K)", criterion_8),
        (9, "2-D winding", criterion_9),
        (10, "theorem reports", criterion_10),
        (11, "order/norm axioms and certifier determinism", criterion_11),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail}"),
            Err(detail) => {
                let known = KNOWN_UNATTAINABLE.contains(&id);
                if !known {
                    unexpected += 1;
                }
                let tag = if known { " [known unattainable]" } else { "" };
                println!("FAIL {id:>2} {name}{tag}: {detail}");
            }
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
