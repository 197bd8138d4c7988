//! The crystal of simple modules: closure of the trivial module under the
//! operators F~_i up to rank 2, with E~_i checked on every node.
//!
//!     cargo run --release --example crystal [q]

use std::sync::Arc;

use thetaklr::fmod::{build_crystal, etilde, ftilde};
use thetaklr::ground::{int, rat, Rational};
use thetaklr::quiver::Quiver;

fn main() -> thetaklr::Result<()> {
    let qq: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let values: Vec<Rational> = vec![int(2), int(8), rat(1, 2), rat(1, 8)];
    let q = Arc::new(Quiver::build_from_hecke_b(&values, &int(2), &int(qq))?);
    let g = build_crystal(q.clone(), 2)?;
    let per_rank: Vec<usize> = (0..=2).map(|r| g.nodes_at(r).len()).collect();
    println!("q = {qq}: {} nodes {per_rank:?} per rank, {} edges, {} E~ checks", g.nodes.len(), g.edges.len(), g.etilde_checks);
    print!("{}", g.render());

    // F~ and E~ by hand on one node
    let a = q.find("2")?;
    let n = &g.nodes[g.edges.iter().find(|e| e.from == 0 && e.vertex == a).unwrap().to];
    let up = ftilde(&n.witness, a)?;
    let back = etilde(&up, a)?.expect("eps rose to 2");
    println!("F~_2 of node {}: dim {}, eps_2 = {}", n.id, up.dim(), up.epsilon(a));
    println!("E~_2 returns it: {}", back.character() == n.character);
    println!("\n{}", g.to_dot());
    Ok(())
}
