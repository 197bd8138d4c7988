use std::sync::Arc;

use super::{Flavor, GenKind, PbwElement, Shape, SkewElement};
use crate::error::{Error, Result};
use crate::ground::{int, Poly};
use crate::quiver::Seq;
#[cfg(test)]
use crate::weyl::Gen;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    /// anti-involution fixing 1_i, κ_l, σ_k, π
    Omega,
    /// 1_i ↦ 1_{w_m(i)}, κ_l ↦ κ_{m+1−l}, σ_k ↦ −σ_{m−k} (flavor A)
    Tau,
    /// 1_i ↦ 1_{θ(i)}, κ_l ↦ −κ_l, σ_k ↦ −σ_k (flavor A)
    Iota,
    /// ι∘τ (flavor A)
    Kappa,
}

impl PbwElement {
    pub fn apply_involution(&self, inv: Involution) -> Result<PbwElement> {
        let sh = self.shape();
        if sh.flavor() == Flavor::B && inv != Involution::Omega {
            return Err(Error::UnsupportedInvolution(format!("{inv:?}")));
        }
        if inv == Involution::Kappa {
            return self.apply_involution(Involution::Tau)?.apply_involution(Involution::Iota);
        }
        let mut acc = SkewElement::zero(sh);
        for (&(i, w), p) in self.terms() {
            let word: Vec<GenKind> = sh.group().canonical_word(w).iter().map(|&g| sh.gen_of(g)).collect();
            let y = match inv {
                Involution::Omega => omega_term(sh, i, w, &word, p)?,
                Involution::Tau => {
                    let m = sh.rank();
                    let j = reversed(sh, i)?;
                    let img: Vec<GenKind> = word
                        .iter()
                        .map(|g| match g {
                            GenKind::Sigma(k) => GenKind::Sigma(m - k),
                            g => *g,
                        })
                        .collect();
                    let sign = if word.len() % 2 == 1 { -1 } else { 1 };
                    let perm: Vec<(usize, bool)> = (0..m).map(|v| (m - 1 - v, false)).collect();
                    let q = p.signed_permute(&perm).scale(&int(sign));
                    SkewElement::idempotent(sh, j).left_word(&img)?.left_poly(&q)
                }
                Involution::Iota => {
                    let m = sh.rank();
                    let j = theta_seq(sh, i)?;
                    let sign = if word.len() % 2 == 1 { -1 } else { 1 };
                    let perm: Vec<(usize, bool)> = (0..m).map(|v| (v, true)).collect();
                    let q = p.signed_permute(&perm).scale(&int(sign));
                    SkewElement::idempotent(sh, j).left_word(&word)?.left_poly(&q)
                }
                Involution::Kappa => unreachable!(),
            };
            acc = acc.add(&y)?;
        }
        PbwElement::to_pbw(&acc)
    }
}

/// ω(P σ_{g₁}⋯σ_{g_r} 1_i) = 1_i σ_{g_r}⋯σ_{g₁} P.
fn omega_term(sh: &Arc<Shape>, i: usize, w: usize, word: &[GenKind], p: &Poly) -> Result<SkewElement> {
    // source j of σ_{g_r}⋯σ_{g₁}1_j must satisfy w⁻¹(j) = i
    let j = sh.act(w, i);
    let rev: Vec<GenKind> = word.iter().rev().copied().collect();
    Ok(SkewElement::idempotent(sh, j).left_word(&rev)?.right_poly(p))
}

fn reversed(sh: &Shape, i: usize) -> Result<usize> {
    let mut s = sh.seq(i).0.clone();
    s.reverse();
    sh.seq_index(&Seq(s))
}

fn theta_seq(sh: &Shape, i: usize) -> Result<usize> {
    let q = sh.quiver();
    let s: Vec<usize> = sh.seq(i).0.iter().map(|&x| q.theta(x)).collect();
    // θ changes ν; only defined when ν is θ-symmetric
    sh.seq_index(&Seq(s)).map_err(|_| Error::UnsupportedInvolution("iota needs a theta-symmetric nu".into()))
}

/// Index of the generator letter `g` in the shape's group.
#[cfg(test)]
pub(crate) fn gen_elem(sh: &Shape, g: Gen) -> usize {
    sh.group().gen_index(g)
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::*;
    use crate::quiver::DimVector;

    #[test]
    fn omega_fixes_kappa_and_generators() {
        let q = window(2);
        let sh = shape_b(&q, &[("2", 1), ("8", 1)]);
        for i in 0..sh.seqs().len() {
            let x = PbwElement::basis_element(&sh, i, 0, Poly::var(2, 1));
            assert_eq!(x.apply_involution(Involution::Omega).unwrap(), x);
            let s = PbwElement::to_pbw(&SkewElement::gen_at(&sh, GenKind::Sigma(1), i).unwrap()).unwrap();
            let j = sh.act(gen_elem(&sh, Gen::S(1)), i);
            let back = PbwElement::to_pbw(&SkewElement::gen_at(&sh, GenKind::Sigma(1), j).unwrap()).unwrap();
            // ω(σ₁1_i) = 1_iσ₁ = σ₁1_{s₁ i}
            assert_eq!(s.apply_involution(Involution::Omega).unwrap(), back);
        }
    }

    #[test]
    fn omega_is_an_anti_involution() {
        let q = window(2);
        let sh = shape_b(&q, &[("2", 2)]);
        let k = |l| PbwElement::to_pbw(&SkewElement::poly(&sh, &Poly::var(2, l))).unwrap();
        let s = PbwElement::to_pbw(&SkewElement::generator(&sh, GenKind::Sigma(1)).unwrap()).unwrap();
        let p = PbwElement::to_pbw(&SkewElement::generator(&sh, GenKind::Pi).unwrap()).unwrap();
        let x = s.mul(&k(0)).unwrap().mul(&p).unwrap();
        let y = p.mul(&k(0)).unwrap().mul(&s).unwrap();
        let o = Involution::Omega;
        assert_eq!(x.apply_involution(o).unwrap(), y);
        assert_eq!(x.apply_involution(o).unwrap().apply_involution(o).unwrap(), x);
    }

    fn shape_a() -> Arc<Shape> {
        let q = window(2);
        let mut nu = DimVector::zero(q.n());
        for id in ["2", "1/2", "8"] {
            nu.add_vertex(q.find(id).unwrap(), 1);
        }
        nu.add_vertex(q.find("1/8").unwrap(), 1);
        Shape::new(q, Flavor::A, nu).unwrap()
    }

    #[test]
    fn tau_on_sigma() {
        let sh = shape_a();
        let m = sh.rank();
        for i in 0..sh.seqs().len() {
            let x = PbwElement::to_pbw(&SkewElement::gen_at(&sh, GenKind::Sigma(1), i).unwrap()).unwrap();
            let j = reversed(&sh, i).unwrap();
            let want = PbwElement::to_pbw(&SkewElement::gen_at(&sh, GenKind::Sigma(m - 1), j).unwrap().neg()).unwrap();
            assert_eq!(x.apply_involution(Involution::Tau).unwrap(), want);
        }
    }

    #[test]
    fn involutions_square_to_identity() {
        let sh = shape_a();
        let x = PbwElement::to_pbw(
            &SkewElement::generator(&sh, GenKind::Sigma(2))
                .unwrap()
                .mul(&SkewElement::generator(&sh, GenKind::Sigma(1)).unwrap())
                .unwrap()
                .left_poly(&(&Poly::var(4, 0) + &Poly::var(4, 3).pow(2))),
        )
        .unwrap();
        for inv in [Involution::Tau, Involution::Iota, Involution::Kappa, Involution::Omega] {
            assert_eq!(x.apply_involution(inv).unwrap().apply_involution(inv).unwrap(), x, "{inv:?}");
        }
        let b = shape_b(&window(2), &[("2", 1)]);
        let y = PbwElement::basis_element(&b, 0, 0, Poly::one(1));
        assert!(matches!(y.apply_involution(Involution::Tau), Err(Error::UnsupportedInvolution(_))));
    }
}
