//! Degree, localisation and theorem reports for Example 3 and a planar map.

use std::collections::BTreeMap;

use conefix::certify::SampleConfig;
use conefix::degree::{check_theorem, degree, locate_fixed_points, LocateOptions, TheoremKind, TheoremOptions};
use conefix::{Cone, FnMap, MapHandle, Region, Vector};

fn main() -> conefix::Result<()> {
    let f = MapHandle::builtin("example3")?;
    let report = locate_fixed_points(&f, &Region::interval(0.0, 1.0)?, &LocateOptions::default())?;
    for b in &report.boxes {
        println!("fixed point {} in [{:.8}, {:.8}], degree {:?}", b.estimate.as_ref().unwrap(), b.low[0], b.high[0], b.degree);
    }

    // x - f(x) = z^2 winds twice around the origin
    let square = FnMap::new(2, |x: &[f64]| vec![x[0] - (x[0] * x[0] - x[1] * x[1]), x[1] - 2.0 * x[0] * x[1]]);
    let disk = Region::disk(Vector::new(vec![0.0, 0.0])?, 0.5)?;
    println!("degree of z^2 on a disk: {:?}", degree(&square, &disk, 256, 1e-12)?.degree);

    let k = Cone::orthant(1)?;
    let cfg = SampleConfig::cube(0, 5_000, 1, 0.0, 2.0)?;
    let points: BTreeMap<String, Vector> = [("x_prime", 0.1), ("x", 0.4), ("x_double_prime", 2.0)]
        .into_iter()
        .map(|(n, x)| (n.to_string(), Vector::new(vec![x]).unwrap()))
        .collect();
    let report = check_theorem(&f, &k, TheoremKind::ThreeFixedPoints, &points, &cfg, &TheoremOptions::default())?;
    for h in &report.hypotheses {
        println!("{}: {:?}", h.name, h.verified);
    }
    if let Some(c) = &report.conclusion_check {
        println!("located {} of {} promised fixed points", c.located.len(), c.promised);
    }
    Ok(())
}
