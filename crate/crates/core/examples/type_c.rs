//! Type C: two parameters q0, q1 in the quadratic relations. When they
//! agree the transported matrices coincide with type B.
//!
//!     cargo run --release --example type_c

use std::sync::Arc;

use thetaklr::fmod::build_crystal;
use thetaklr::ground::{int, rat};
use thetaklr::hecke::{transport, HeckeParams};
use thetaklr::quiver::Quiver;

fn main() -> thetaklr::Result<()> {
    let c = HeckeParams::C { p: int(2), q0: int(3), q1: int(5) };
    let q = Arc::new(Quiver::build_from_params(&[int(5), int(20), rat(1, 5), rat(1, 20)], &c)?);
    let g = build_crystal(q.clone(), 2)?;
    for n in &g.nodes {
        let h = transport(&n.witness, &c)?;
        println!("{c} node {} rank {} dim {}: relations pass {}", n.id, n.rank, h.dim(), h.verify().passed());
        if n.rank == 1 {
            println!("  X1 =\n{}  T0 =\n{}", h.x[0].render(), h.t[0].render());
        }
    }

    let equal = HeckeParams::C { p: int(2), q0: int(2), q1: int(2) };
    let b = HeckeParams::B { p: int(2), q: int(2) };
    let qb = Arc::new(Quiver::build_from_params(&[int(2), int(8), rat(1, 2), rat(1, 8)], &b)?);
    let g = build_crystal(qb, 2)?;
    let same = g.nodes.iter().all(|n| {
        let (x, y) = (transport(&n.witness, &equal).unwrap(), transport(&n.witness, &b).unwrap());
        x.x == y.x && x.t == y.t
    });
    println!("q0 = q1 = 2 agrees with type B on all {} nodes: {same}", g.nodes.len());
    Ok(())
}
