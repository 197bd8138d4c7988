//! Induction F_i M = R_{m+1}1_{m,i} ⊗ (M ⊗ L_i).
//!
//! Basis σ_{rev ḋ}1_{(k,i)} ⊗ v for minimal coset representatives d and v in
//! block k. A generator g is applied by normalizing ω(g σ_{rev ḋ}) = σ_ḋ g in
//! the PBW basis, splitting each canonical word as (parabolic part)(coset
//! representative), and letting the parabolic part act on M with κ_{m+1} = 0.

use std::collections::BTreeMap;

use super::GradedModule;
use crate::error::{Error, Result};
use crate::ground::Matrix;
use crate::klr::{Flavor, GenKind, PbwElement, Shape, SkewElement};
use crate::quiver::Seq;
use crate::weyl::{coset_rep_word, Gen};

struct Rep {
    /// letters of ḋ
    word: Vec<Gen>,
    /// the same letters reversed, i.e. the word of σ_{rev ḋ}
    rev: Vec<Gen>,
}

fn letters(sh: &Shape, w: &[Gen]) -> Vec<GenKind> {
    w.iter().map(|&g| sh.gen_of(g)).collect()
}

pub fn induce_f(m: &GradedModule, i: usize) -> Result<GradedModule> {
    let sh = m.shape();
    let big = sh.grow(i)?;
    let n = big.rank();
    let ts: Vec<i64> = match sh.flavor() {
        Flavor::B => (1 - n as i64..=n as i64).collect(),
        Flavor::A => (1..=n as i64).collect(),
    };
    let reps: Vec<Rep> = ts
        .iter()
        .map(|&t| {
            let word = coset_rep_word(n, t);
            let rev = word.iter().rev().copied().collect();
            Rep { word, rev }
        })
        .collect();
    let rep_of = |t: i64| ts.iter().position(|&x| x == t).expect("coset representative");

    // lay out the basis: block x ← (rep, source block k, local index)
    let mut blocks: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
    let mut place: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    let mut tilde: BTreeMap<usize, usize> = BTreeMap::new();
    for &k in m.blocks().keys() {
        let mut s = sh.seq(k).0.clone();
        s.push(i);
        tilde.insert(k, big.seq_index(&Seq(s))?);
    }
    for (r, rep) in reps.iter().enumerate() {
        for (&k, degs) in m.blocks() {
            let kt = tilde[&k];
            let x = walk(&big, &rep.rev, kt);
            let shift = big.word_degree_of(&rep.rev, kt);
            let e = blocks.entry(x).or_default();
            place.insert((r, k), (x, e.len()));
            e.extend(degs.iter().map(|d| d + shift));
        }
    }

    let mut mats: BTreeMap<(GenKind, usize), Matrix> = BTreeMap::new();
    for g in big.generators() {
        for (r, rep) in reps.iter().enumerate() {
            for &k in m.blocks().keys() {
                let kt = tilde[&k];
                let (x, col) = place[&(r, k)];
                let gx = big.gen_target(g, x);
                let z = SkewElement::idempotent(&big, gx).left_gen(g)?.left_word(&letters(&big, &rep.word))?;
                let pbw = PbwElement::to_pbw(&z)?;
                for (&(src, w), p) in pbw.terms() {
                    debug_assert_eq!(src, gx);
                    if big.act(w, src) != kt {
                        return Err(Error::InternalDivisionFailure("PBW term leaves the idempotent".into()));
                    }
                    let we = big.group().elem(w);
                    let t2 = we.inverse().act(n as i64);
                    let r2 = rep_of(t2);
                    let canon = big.group().canonical_word(w);
                    let cut = canon.len() - reps[r2].word.len();
                    debug_assert_eq!(&canon[cut..], &reps[r2].word[..]);
                    let u_rev: Vec<GenKind> = canon[..cut].iter().rev().map(|&l| sh.gen_of(l)).collect();
                    let pm = m.poly_matrix(&p.truncate_vars(n - 1), k);
                    let (k2, wm) = m.word_matrix(&u_rev, k);
                    let contrib = &wm * &pm;
                    if contrib.is_zero() {
                        continue;
                    }
                    let (y, row) = *place.get(&(r2, k2)).ok_or_else(|| Error::InvalidModule("induced action leaves the basis".into()))?;
                    debug_assert_eq!(y, gx);
                    let a = mats.entry((g, x)).or_insert_with(|| Matrix::zeros(blocks[&gx].len(), blocks[&x].len()));
                    for (rr, cc, v) in contrib.nonzeros() {
                        a[(row + rr, col + cc)] += v;
                    }
                }
            }
        }
    }
    GradedModule::new(big, m.is_graded(), blocks, mats)
}

/// The block reached from j by a word, letters applied right to left.
fn walk(sh: &Shape, word: &[Gen], j: usize) -> usize {
    let mut cur = j;
    for &g in word.iter().rev() {
        cur = sh.gen_target(sh.gen_of(g), cur);
    }
    cur
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::characters::{shuffle, shuffle_plain, Character};
    use crate::ground::LaurentV;
    use crate::klr::testutil::window;

    fn ch_l(i: usize) -> Character {
        Character::single(false, Seq(vec![i]), LaurentV::one(), 0)
    }

    #[test]
    fn induced_from_trivial() {
        for qq in [2, 5] {
            let q = window(qq);
            let t = GradedModule::trivial(q.clone(), Flavor::B).unwrap();
            for i in 0..q.n() {
                let f = induce_f(&t, i).unwrap();
                assert_eq!(f.dim(), 2);
                let rep = f.validate();
                assert!(rep.passed(), "{rep}");
                assert_eq!(f.character(), shuffle(&q, &t.character(), &ch_l(i)).unwrap());
            }
        }
    }

    #[test]
    fn induced_twice_matches_shuffle() {
        let q = window(2);
        let t = GradedModule::trivial(q.clone(), Flavor::B).unwrap();
        let (a, b) = (q.find("2").unwrap(), q.find("8").unwrap());
        for (x, y) in [(a, a), (a, b), (b, a)] {
            let f1 = induce_f(&t, x).unwrap();
            let f2 = induce_f(&f1, y).unwrap();
            assert_eq!(f2.dim(), 8);
            let rep = f2.validate();
            assert!(rep.passed(), "{rep}");
            assert_eq!(f2.character(), shuffle(&q, &f1.character(), &ch_l(y)).unwrap());
        }
    }

    #[test]
    fn type_a_induction() {
        let q: Arc<_> = window(2);
        let t = GradedModule::trivial(q.clone(), Flavor::A).unwrap();
        let a = q.find("2").unwrap();
        let f = induce_f(&induce_f(&t, a).unwrap(), a).unwrap();
        assert_eq!(f.dim(), 2);
        assert!(f.validate().passed());
        let expect = shuffle_plain(&q, &shuffle_plain(&q, &Character::zero(false, 0).add(&Character::single(false, Seq(vec![]), LaurentV::one(), 0)).unwrap(), &ch_l(a)).unwrap(), &ch_l(a)).unwrap();
        assert_eq!(f.character(), expect);
    }
}
