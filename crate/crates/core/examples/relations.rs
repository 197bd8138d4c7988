//! Checks the defining relations of the type-B KLR algebra on a four-vertex
//! window quiver, then shows the check catching a sign-flipped Q.
//!
//!     cargo run --example relations

use std::sync::Arc;

use thetaklr::ground::{int, rat};
use thetaklr::klr::{verify_relations, Flavor, Shape};
use thetaklr::quiver::{DimVector, Quiver};

fn main() -> thetaklr::Result<()> {
    // vertices 2, 8, 1/2, 1/8 with p = 2, q = 2; θ sends x to 1/x
    let q = Arc::new(Quiver::build_from_hecke_b(&[int(2), int(8), rat(1, 2), rat(1, 8)], &int(2), &int(2))?);
    println!("vertices:");
    for i in 0..q.n() {
        let arrows: Vec<&str> = (0..q.n()).filter(|&j| q.h(i, j) > 0).map(|j| q.id(j)).collect();
        println!("  {:>4}  theta = {:>4}  lambda = {}  arrows to {:?}", q.id(i), q.id(q.theta(i)), q.lambda(i), arrows);
    }

    for nu in rank_two_nus(&q) {
        let sh = Shape::new(q.clone(), Flavor::B, nu)?;
        let r = verify_relations(&sh)?;
        println!("nu {:<14} {:>5} instances, {} failed", q.render_nu(sh.nu()), r.checked, r.failures.len());
    }

    // negative control: the same check with every Q-polynomial negated
    let bad = Arc::new(q.with_corrupted_q());
    let mut nu = DimVector::zero(q.n());
    nu.add_vertex(0, 2);
    nu.add_vertex(q.theta(0), 2);
    let r = verify_relations(&Shape::new(bad, Flavor::B, nu)?)?;
    println!("corrupted Q: {} of {} instances fail, e.g.", r.failures.len(), r.checked);
    for f in r.failures.iter().take(3) {
        println!("  {} {}", f.tag, f.instance);
    }
    Ok(())
}

/// Every θ-symmetric dimension vector of rank 1 or 2.
fn rank_two_nus(q: &Quiver) -> Vec<DimVector> {
    let mut out: Vec<DimVector> = Vec::new();
    for a in 0..q.n() {
        for b in a..=q.n() {
            let mut nu = DimVector::zero(q.n());
            for i in [Some(a), (b < q.n()).then_some(b)].into_iter().flatten() {
                nu.add_vertex(i, 1);
                nu.add_vertex(q.theta(i), 1);
            }
            if !out.contains(&nu) {
                out.push(nu);
            }
        }
    }
    out
}
