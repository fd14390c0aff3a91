//! Building mappings from JSON specs: a one-layer network, a builtin and the
//! symmetric extension of a map defined on the orthant.

use conefix::{MapHandle, Mapping, Vector};

fn main() -> conefix::Result<()> {
    let layer = MapHandle::from_json(
        r#"{"type":"dense_network","layers":[{"weights":[[10]],"bias":[-4],"activation":"sigmoid"}]}"#,
    )?;
    let builtin = MapHandle::builtin("example3")?;
    for x in [0.0, 0.3, 0.6, 1.0] {
        let p = Vector::new(vec![x])?;
        println!("x = {x}: layer {:.6}, builtin {:.6}", layer.eval(&p)?[0], builtin.eval(&p)?[0]);
    }

    let two_layers = MapHandle::from_json(
        r#"{"type":"dense_network","layers":[
            {"weights":[[1,0.5],[0.2,1]],"bias":[0,0.1],"activation":"tanh"},
            {"weights":[[0.8,0.1],[0.1,0.8]],"bias":[0.3,0.3],"activation":"swish"}]}"#,
    )?;
    println!("two-layer network at (1, 2): {}", two_layers.eval(&Vector::new(vec![1.0, 2.0])?)?);

    let sym = MapHandle::symmetric(MapHandle::builtin("zigzag")?);
    for p in [[2.0, 0.0], [-2.0, 0.0], [3.0, -1.5]] {
        println!("symmetric zigzag at {:?}: {}", p, sym.eval(&Vector::new(p.to_vec())?)?);
    }
    println!("spec: {}", sym.to_json());
    Ok(())
}
