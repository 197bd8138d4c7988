//! The algebras θR(Γ)_{λ,ν} (flavor B) and R(Γ)_ν (flavor A), computed inside
//! their faithful polynomial representation: elements are finite sums
//! a·w·1_i with a a rational function in κ and w a Weyl group element.

mod involution;
mod pbw;
mod relations;
mod skew;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::ground::{Poly, RatFun};
use crate::quiver::{DimVector, Quiver, Seq};
use crate::weyl::{act_sequence, weyl_group, Gen, SignedPerm, WeylGroup, MAX_ENUM_RANK};

pub use involution::Involution;
pub use pbw::PbwElement;
pub use relations::{relation_instances, verify_relations, RelTerm, RelationFailure, RelationInstance, RelationReport};
pub use skew::{PolyVector, SkewElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// θR(Γ)_{λ,ν}: sequences are θ-sequences, group W_m of type B.
    B,
    /// R(Γ)_ν: plain words, group 𝔖_m.
    A,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    Kappa(usize),
    Sigma(usize),
    Pi,
}

type Terms = Vec<((usize, usize), RatFun)>;

/// Everything an element needs to know about its ambient algebra.
pub struct Shape {
    quiver: Arc<Quiver>,
    flavor: Flavor,
    m: usize,
    nu: DimVector,
    seqs: Vec<Seq>,
    seq_index: HashMap<Seq, usize>,
    group: Arc<WeylGroup>,
    /// admissible group elements (all of W_m, or 𝔖_m for flavor A)
    elems: Vec<usize>,
    /// act[w][i] = index of w(i); usize::MAX for inadmissible w
    act: Vec<Vec<usize>>,
    subs: Vec<Vec<(usize, bool)>>,
    embed_cache: Mutex<HashMap<(usize, usize), Arc<Terms>>>,
}

impl std::fmt::Debug for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Shape({:?}, m={}, nu={})", self.flavor, self.m, self.quiver.render_nu(&self.nu))
    }
}

impl Shape {
    pub fn new(quiver: Arc<Quiver>, flavor: Flavor, nu: DimVector) -> Result<Arc<Shape>> {
        if nu.0.len() != quiver.n() {
            return Err(Error::RankMismatch(nu.0.len(), quiver.n()));
        }
        let (m, seqs) = match flavor {
            Flavor::B => {
                let s = quiver.sequences(&nu)?;
                (nu.size() / 2, s)
            }
            Flavor::A => (nu.size(), quiver.plain_sequences(&nu)?),
        };
        if m > MAX_ENUM_RANK {
            return Err(Error::RankTooLarge(m));
        }
        let group = weyl_group(m)?;
        let seq_index: HashMap<Seq, usize> = seqs.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
        let theta = quiver.theta_map().to_vec();
        let mut elems = Vec::new();
        let mut act = Vec::with_capacity(group.len());
        for w in 0..group.len() {
            let g = group.elem(w);
            if flavor == Flavor::A && !g.is_unsigned() {
                act.push(Vec::new());
                continue;
            }
            elems.push(w);
            act.push(seqs.iter().map(|s| seq_index[&Seq(act_sequence(g, &s.0, &theta).unwrap())]).collect());
        }
        let subs = group.elements().iter().map(|g| g.kappa_substitution()).collect();
        Ok(Arc::new(Shape {
            quiver,
            flavor,
            m,
            nu,
            seqs,
            seq_index,
            group,
            elems,
            act,
            subs,
            embed_cache: Mutex::new(HashMap::new()),
        }))
    }

    /// The shape of rank m+1 with ν + i + θ(i) (flavor B) or ν + i (flavor A).
    pub fn grow(&self, i: usize) -> Result<Arc<Shape>> {
        let mut nu = self.nu.clone();
        nu.add_vertex(i, 1);
        if self.flavor == Flavor::B {
            nu.add_vertex(self.quiver.theta(i), 1);
        }
        Shape::new(self.quiver.clone(), self.flavor, nu)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn quiver_arc(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn nu(&self) -> &DimVector {
        &self.nu
    }

    pub fn seqs(&self) -> &[Seq] {
        &self.seqs
    }

    pub fn seq(&self, i: usize) -> &Seq {
        &self.seqs[i]
    }

    pub fn seq_index(&self, s: &Seq) -> Result<usize> {
        self.seq_index.get(s).copied().ok_or_else(|| Error::InvalidModule(format!("sequence {s} not in this shape")))
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    /// Admissible group element indices.
    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    /// Index of w(i).
    pub fn act(&self, w: usize, i: usize) -> usize {
        self.act[w][i]
    }

    pub fn subs(&self, w: usize) -> &[(usize, bool)] {
        &self.subs[w]
    }

    pub fn same(&self, o: &Shape) -> bool {
        std::ptr::eq(self, o) || (self.flavor == o.flavor && self.nu == o.nu && *self.quiver == *o.quiver)
    }

    pub fn render_seq(&self, i: usize) -> String {
        match self.flavor {
            Flavor::B => self.quiver.render_theta_seq(&self.seqs[i]),
            Flavor::A => self.quiver.render_plain_seq(&self.seqs[i]),
        }
    }

    /// Entry i_l of sequence i (l ∈ 1−m..m; flavor A only l ≥ 1).
    pub fn entry(&self, i: usize, l: i64) -> usize {
        self.quiver.entry(&self.seqs[i], l)
    }

    pub fn kappa(&self, l: i64) -> Poly {
        Poly::kappa(self.m, l)
    }

    fn check_gen(&self, g: GenKind) -> Result<()> {
        let bad = |k: usize| Err(Error::IndexOutOfRange { index: k as i64, rank: self.m });
        match g {
            GenKind::Kappa(l) if l == 0 || l > self.m => bad(l),
            GenKind::Sigma(k) if k == 0 || k >= self.m => bad(k),
            GenKind::Pi if self.flavor == Flavor::A => Err(Error::UnsupportedInvolution("pi in flavor A".into())),
            GenKind::Pi if self.m == 0 => bad(1),
            _ => Ok(()),
        }
    }

    /// κ_1..κ_m, σ_1..σ_{m−1}, and π for flavor B.
    pub fn generators(&self) -> Vec<GenKind> {
        let mut g: Vec<GenKind> = (1..=self.m).map(GenKind::Kappa).collect();
        g.extend((1..self.m).map(GenKind::Sigma));
        if self.flavor == Flavor::B && self.m >= 1 {
            g.push(GenKind::Pi);
        }
        g
    }

    /// The idempotent reached from 1_i by the generator.
    pub fn gen_target(&self, g: GenKind, i: usize) -> usize {
        match g {
            GenKind::Kappa(_) => i,
            GenKind::Sigma(k) => self.act[self.group.gen_index(Gen::S(k))][i],
            GenKind::Pi => self.act[self.group.gen_index(Gen::Eps)][i],
        }
    }

    pub fn gen_of(&self, g: Gen) -> GenKind {
        match g {
            Gen::S(k) => GenKind::Sigma(k),
            Gen::Eps => GenKind::Pi,
        }
    }

    /// Terms (w, a) of the generator's image at idempotent i.
    pub(crate) fn gen_image(&self, g: GenKind, i: usize) -> Vec<(usize, RatFun)> {
        let m = self.m;
        let q = &self.quiver;
        match g {
            GenKind::Kappa(l) => vec![(0, RatFun::from_poly(Poly::var(m, l - 1)))],
            GenKind::Sigma(k) => {
                let s = self.group.gen_index(Gen::S(k));
                let (a, b) = (self.entry(i, k as i64), self.entry(i, k as i64 + 1));
                let d = &Poly::var(m, k - 1) - &Poly::var(m, k);
                if a == b {
                    let inv = RatFun::new(Poly::one(m), d).expect("nonzero");
                    vec![(s, inv.clone()), (0, -inv)]
                } else {
                    vec![(s, RatFun::from_poly(d.pow(q.h(b, a))))]
                }
            }
            GenKind::Pi => {
                let e = self.group.gen_index(Gen::Eps);
                let lam = q.lambda(self.entry(i, 1));
                vec![(e, RatFun::from_poly((-Poly::var(m, 0)).pow(lam)))]
            }
        }
    }

    /// Degree of the generator at idempotent i.
    pub fn gen_degree(&self, g: GenKind, i: usize) -> i64 {
        let q = &self.quiver;
        match g {
            GenKind::Kappa(_) => 2,
            GenKind::Sigma(k) => -q.cartan(self.entry(i, k as i64), self.entry(i, k as i64 + 1)),
            GenKind::Pi => (q.lambda(self.entry(i, 0)) + q.lambda(self.entry(i, 1))) as i64,
        }
    }

    /// Degree of σ_ẇ 1_j, walking the canonical word right to left.
    pub fn word_degree(&self, w: usize, j: usize) -> i64 {
        self.word_degree_of(self.group.canonical_word(w), j)
    }

    pub fn word_degree_of(&self, word: &[Gen], j: usize) -> i64 {
        let mut cur = j;
        let mut deg = 0;
        for &g in word.iter().rev() {
            deg += self.gen_degree(self.gen_of(g), cur);
            cur = self.act[self.group.gen_index(g)][cur];
        }
        deg
    }

    pub fn elem_of(&self, w: &SignedPerm) -> usize {
        self.group.index_of(w)
    }
}

/// Degree of σ_{g₁}⋯σ_{g_r}1_j for a right-half sequence j, without building a shape.
pub fn seq_word_degree(q: &Quiver, word: &[Gen], j: &[usize]) -> i64 {
    let mut cur = j.to_vec();
    let mut deg = 0;
    for &g in word.iter().rev() {
        let e = |l: i64| q.entry(&Seq(cur.clone()), l);
        match g {
            Gen::S(k) => {
                deg -= q.cartan(e(k as i64), e(k as i64 + 1));
                cur.swap(k - 1, k);
            }
            Gen::Eps => {
                deg += (q.lambda(e(0)) + q.lambda(e(1))) as i64;
                cur[0] = q.theta(cur[0]);
            }
        }
    }
    deg
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use crate::ground::rational::{int, rat};

    pub fn window(q: i64) -> Arc<Quiver> {
        Arc::new(Quiver::build_from_hecke_b(&[int(2), int(8), rat(1, 2), rat(1, 8)], &int(2), &int(q)).unwrap())
    }

    /// θ-symmetric ν from (vertex id, count) pairs, adding θ-partners.
    pub fn nu_b(q: &Quiver, parts: &[(&str, u32)]) -> DimVector {
        let mut nu = DimVector::zero(q.n());
        for (id, c) in parts {
            let i = q.find(id).unwrap();
            nu.add_vertex(i, *c);
            nu.add_vertex(q.theta(i), *c);
        }
        nu
    }

    pub fn shape_b(q: &Arc<Quiver>, parts: &[(&str, u32)]) -> Arc<Shape> {
        Shape::new(q.clone(), Flavor::B, nu_b(q, parts)).unwrap()
    }
}
