//! Graded characters of projective modules, computed two independent ways,
//! and the shuffle product that induction turns into.
//!
//!     cargo run --example characters

use std::sync::Arc;

use thetaklr::characters::{ch_projective, ch_projective_pbw, shuffle, verify_ef_commutation, Character};
use thetaklr::ground::{int, rat};
use thetaklr::klr::{Flavor, Shape};
use thetaklr::quiver::{parse_seq, Quiver, Seq};

fn main() -> thetaklr::Result<()> {
    let q = Arc::new(Quiver::build_from_hecke_b(&[int(2), int(8), rat(1, 2), rat(1, 8)], &int(2), &int(2))?);

    for s in ["(2)", "(8)", "(2,8)", "(2,1/2)"] {
        let j = parse_seq(&q, s)?;
        let sh = Shape::new(q.clone(), Flavor::B, q.theta_content(&j))?;
        let by_shuffle = ch_projective(&q, &j)?;
        let by_pbw = ch_projective_pbw(&sh, &j)?;
        assert_eq!(by_shuffle, by_pbw);
        println!("ch(P{}), parity ok: {}", q.render_theta_seq(&j), by_shuffle.parity_ok());
        for line in by_shuffle.render(&q).lines() {
            println!("  {line}");
        }
    }

    // induction is the shuffle: ch(P_(2)) * ch(R_8) = ch(P_(2,8))
    let a = ch_projective(&q, &parse_seq(&q, "(2)")?)?;
    let r8 = Character::plain_generator(q.find("8")?);
    let lhs = shuffle(&q, &a, &r8)?;
    let rhs = ch_projective(&q, &Seq(vec![q.find("2")?, q.find("8")?]))?;
    println!("shuffle identity holds: {}", lhs == rhs);

    // commutation of e'_i with f_j on a projective character
    let rep = verify_ef_commutation(&q, &rhs, 0)?;
    println!("e'f identities: {} checked, {} failed", rep.checked, rep.failures.len());
    let off = verify_ef_commutation(&q, &rhs, 1)?;
    println!("with a deliberately wrong shift: {} failed", off.failures.len());
    Ok(())
}
