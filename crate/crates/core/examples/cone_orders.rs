//! Orders, norms and the geometry constant of orthant and ice-cream cones.

use conefix::cone::{leq_lambda_2d, weighted_max_norm};
use conefix::{Cone, Vector};

fn main() -> conefix::Result<()> {
    let orthant = Cone::orthant(2)?;
    let ice = Cone::ice_cream(Vector::new(vec![1.0, 1.0])?, 0.5)?;
    let x = Vector::new(vec![0.0, 0.0])?;
    let y = Vector::new(vec![1.0, 0.4])?;

    for (name, k) in [("orthant", &orthant), ("ice cream (1,1), 0.5", &ice)] {
        let rel = k.compare(&x, &y)?;
        println!("{name}: x <= y {}, x < y {}, x << y {}", rel.leq, rel.lt, rel.ll);
        println!("  opening angle {:.6}", k.opening_angle());
        let w = Vector::ones(2);
        println!("  delta(K) for w = (1, 1): {:.6}", k.delta_k(&w, 1024)?);
        let anchor = Vector::new(vec![2.0, 2.0])?;
        println!("  gauge of y in D((2, 2)): {:.6}", k.gauge_norm(&y, &anchor)?);
    }

    println!("two-inequality form agrees: {}", leq_lambda_2d(0.5, &x, &y)? == ice.leq(&x, &y)?);
    println!("|y|_w for w = (2, 0.5): {}", weighted_max_norm(&y, &Vector::new(vec![2.0, 0.5])?)?);
    Ok(())
}
