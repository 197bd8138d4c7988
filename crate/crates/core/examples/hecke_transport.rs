//! Transport of KLR modules to the affine Hecke algebra of type B and back.
//! At rank one the simple modules give the two-by-two matrices X1, T0.
//!
//!     cargo run --release --example hecke_transport

use std::sync::Arc;

use thetaklr::fmod::build_crystal;
use thetaklr::ground::{int, rat};
use thetaklr::hecke::{check_ei_compat, inverse_transport, render_dictionary, transport, HeckeParams};
use thetaklr::klr::{Flavor, Shape};
use thetaklr::quiver::{parse_nu, Quiver};

fn main() -> thetaklr::Result<()> {
    let params = HeckeParams::B { p: int(2), q: int(2) };
    let q = Arc::new(Quiver::build_from_params(&[int(2), int(8), rat(1, 2), rat(1, 8)], &params)?);

    // the dictionary between generators on one block
    let sh = Shape::new(q.clone(), Flavor::B, parse_nu(&q, "8+1/8")?)?;
    print!("{}", render_dictionary(&sh, &params)?);

    let g = build_crystal(q.clone(), 2)?;
    for n in &g.nodes {
        let h = transport(&n.witness, &params)?;
        let rep = h.verify();
        println!("node {} rank {} dim {}: {} Hecke relations checked, passed {}", n.id, n.rank, h.dim(), rep.checked, rep.passed());
        if n.rank == 1 {
            println!("  X1 =\n{}  T0 =\n{}", h.x[0].render(), h.t[0].render());
        }
        if n.rank >= 1 {
            let ei = check_ei_compat(&n.witness, &params)?;
            let inv = inverse_transport(&h, q.clone())?;
            let back = transport(&inv.module, &params)? == h.conjugate(&inv.basis)?;
            println!("  E_i compatible: {}, inverse round trip: {back}", ei.iter().all(|e| e.ok()));
        }
    }

    // a transported module as a file
    let h = transport(&g.nodes_at(1)[0].witness, &params)?;
    println!("\n{}", h.to_text());
    Ok(())
}
