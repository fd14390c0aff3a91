//! The contraction solver with a priori error bounds, and order-monotone
//! descent from feasible points of Example 3.

use conefix::solve::{contraction_solve, monotone_descent};
use conefix::{Cone, MapHandle, Vector};

fn main() -> conefix::Result<()> {
    let pc = MapHandle::builtin("piecewise_contraction")?;
    let k = Cone::orthant(1)?;
    let one = Vector::ones(1);
    let result = contraction_solve(&pc, &k, &one, 0.5, &one, 1e-10, 100)?;
    println!("{}", result.trace.to_table());
    println!("fixed point {} (closed form {})", result.fixed_point, (1.0 - 0.96f64.sqrt()) / 2.0);

    let f = MapHandle::builtin("example3")?;
    for p in [0.3, 2.0] {
        let r = monotone_descent(&f, &k, &Vector::new(vec![p])?, 1e-12, 1_000)?;
        println!("descent from {p}: {} in {} steps", r.fixed_point, r.trace.steps());
    }
    Ok(())
}
