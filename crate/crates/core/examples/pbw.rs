//! PBW normal forms: words in σ, π, κ rewritten as Σ σ_ẇ p(κ) 1_i, and the
//! graded dimensions of 1_i R 1_j that the basis gives.
//!
//!     cargo run --example pbw

use std::sync::Arc;

use thetaklr::ground::{int, rat};
use thetaklr::klr::{Flavor, GenKind, PbwElement, Shape, SkewElement};
use thetaklr::quiver::{parse_nu, parse_seq, Quiver};

fn main() -> thetaklr::Result<()> {
    let q = Arc::new(Quiver::build_from_hecke_b(&[int(2), int(8), rat(1, 2), rat(1, 8)], &int(2), &int(2))?);
    let sh = Shape::new(q.clone(), Flavor::B, parse_nu(&q, "2+8+1/2+1/8")?)?;
    println!("nu {}: {} sequences, |W_2| = {}, basis size {}", q.render_nu(sh.nu()), sh.seqs().len(), sh.elems().len(), sh.basis().len());

    let i = sh.seq_index(&parse_seq(&q, "(2,8)")?)?;
    let words: [&[GenKind]; 3] = [
        &[GenKind::Sigma(1), GenKind::Sigma(1)],
        &[GenKind::Pi, GenKind::Pi],
        &[GenKind::Sigma(1), GenKind::Pi, GenKind::Sigma(1), GenKind::Pi],
    ];
    for w in words {
        let x = SkewElement::idempotent(&sh, i).left_word(w)?;
        let p = PbwElement::to_pbw(&x)?;
        println!("{} 1_{} =", name(w), sh.render_seq(i));
        println!("  {}", p.to_string().replace('\n', "\n  "));
        assert_eq!(p.from_pbw(), x);
    }

    println!("graded dimensions of 1_{} R 1_j:", sh.render_seq(i));
    for b in 0..sh.seqs().len() {
        let (num, d) = sh.gdim_pair(i, b);
        println!("  j = {}: {num} / (1-v^2)^{d}", sh.render_seq(b));
    }
    Ok(())
}

fn name(w: &[GenKind]) -> String {
    let g: Vec<String> = w
        .iter()
        .map(|g| match g {
            GenKind::Kappa(l) => format!("kappa{l}"),
            GenKind::Sigma(k) => format!("sigma{k}"),
            GenKind::Pi => "pi".into(),
        })
        .collect();
    g.join(" ")
}
