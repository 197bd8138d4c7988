//! Finite-dimensional modules given by matrices: validation, simplicity,
//! induction F_i, restriction e_i, and the plain-text module format.
//!
//!     cargo run --example modules

use std::collections::BTreeMap;
use std::sync::Arc;

use thetaklr::fmod::{induce_f, parse_module, write_module, GradedModule};
use thetaklr::ground::{int, rat, Matrix};
use thetaklr::klr::{Flavor, GenKind, Shape};
use thetaklr::quiver::{parse_nu, Quiver, Seq};

fn main() -> thetaklr::Result<()> {
    // at q = 5 every λ vanishes, so π acts by an involution on 1_(2) + 1_(1/2)
    let q = Arc::new(Quiver::build_from_hecke_b(&[int(2), int(8), rat(1, 2), rat(1, 8)], &int(2), &int(5))?);
    let sh = Shape::new(q.clone(), Flavor::B, parse_nu(&q, "2+1/2")?)?;
    let b = sh.seq_index(&Seq(vec![q.find("2")?]))?;
    let b2 = sh.gen_target(GenKind::Pi, b);
    let blocks = BTreeMap::from([(b, vec![0]), (b2, vec![0])]);
    let one = Matrix::identity(1);
    let mats = BTreeMap::from([((GenKind::Pi, b), one.clone()), ((GenKind::Pi, b2), one)]);
    let m = GradedModule::new(sh, true, blocks, mats)?;
    println!("{}", m.validate());
    m.certify_simple()?;
    println!("simple, dim {}, character:\n{}", m.dim(), m.character().render(&q));

    let text = write_module(&m);
    println!("module file:\n{text}");
    assert_eq!(write_module(&parse_module(&text, q.clone())?), text);

    // F_i has dimension 2(m+1) dim M; its restriction e_i sees M again
    for id in ["2", "8"] {
        let i = q.find(id)?;
        let f = induce_f(&m, i)?;
        println!("F_{id} M: dim {}, valid {}, eps_{id} = {}", f.dim(), f.validate().passed(), f.epsilon(i));
        if let Some(e) = f.restrict_e(i)? {
            println!("  e_{id} F_{id} M: dim {}", e.dim());
        }
    }
    Ok(())
}
