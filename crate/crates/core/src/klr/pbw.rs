use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::{Flavor, Shape, SkewElement, Terms};
use crate::error::{Error, Result};
use crate::ground::{LaurentV, Poly, RatFun};

/// Σ P_{i,w}(κ)·σ_ẇ·1_i with ẇ the canonical word of w.
#[derive(Clone)]
pub struct PbwElement {
    shape: Arc<Shape>,
    terms: BTreeMap<(usize, usize), Poly>,
}

impl PartialEq for PbwElement {
    fn eq(&self, o: &Self) -> bool {
        self.shape.same(&o.shape) && self.terms == o.terms
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sh = &self.shape;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, w), p)| {
                let word = sh.render_word(w);
                format!("({}) {} 1_{}", p.render("k"), word, sh.render_seq(i))
            })
            .collect();
        write!(f, "{}", parts.join("\n+ "))
    }
}

impl Shape {
    /// Terms of σ_ẇ 1_i in the skew representation (memoized).
    pub(crate) fn embed_basis(self: &Arc<Self>, i: usize, w: usize) -> Arc<Terms> {
        if let Some(t) = self.embed_cache.lock().unwrap().get(&(i, w)) {
            return t.clone();
        }
        let word: Vec<_> = self.group.canonical_word(w).iter().map(|&g| self.gen_of(g)).collect();
        let x = SkewElement::idempotent(self, i).left_word(&word).expect("canonical word letters are valid");
        let t: Arc<Terms> = Arc::new(x.terms().iter().map(|(k, a)| (*k, a.clone())).collect());
        self.embed_cache.lock().unwrap().insert((i, w), t.clone());
        t
    }

    /// The leading coefficient of σ_ẇ1_i, at the group element w itself.
    pub fn leading_coeff(self: &Arc<Self>, i: usize, w: usize) -> RatFun {
        self.embed_basis(i, w).iter().find(|(k, _)| *k == (i, w)).map(|(_, a)| a.clone()).expect("triangularity")
    }

    /// The PBW basis labels (i, w).
    pub fn basis(&self) -> Vec<(usize, usize)> {
        (0..self.seqs.len()).flat_map(|i| self.elems.iter().map(move |&w| (i, w))).collect()
    }

    pub fn render_word(&self, w: usize) -> String {
        let word = self.group.canonical_word(w);
        if word.is_empty() {
            return "e".into();
        }
        let letters: Vec<String> = word
            .iter()
            .map(|g| match g {
                crate::weyl::Gen::S(k) => format!("s{k}"),
                crate::weyl::Gen::Eps => "pi".into(),
            })
            .collect();
        letters.join(".")
    }

    /// gdim 1_i R 1_j = Σ_{w(j)=i} v^{deg σ_ẇ1_j} / (1−v²)^m, as (numerator, m).
    pub fn gdim_pair(&self, i: usize, j: usize) -> (LaurentV, u32) {
        let mut num = LaurentV::zero();
        for &w in &self.elems {
            if self.act[w][j] == i {
                num.add_term(self.word_degree(w, j), 1.into());
            }
        }
        (num, self.m as u32)
    }
}

impl PbwElement {
    pub fn zero(shape: &Arc<Shape>) -> Self {
        PbwElement { shape: shape.clone(), terms: BTreeMap::new() }
    }

    /// P·σ_ẇ·1_i.
    pub fn basis_element(shape: &Arc<Shape>, i: usize, w: usize, p: Poly) -> Self {
        let mut x = Self::zero(shape);
        x.add_term((i, w), p);
        x
    }

    pub fn from_terms(shape: &Arc<Shape>, terms: impl IntoIterator<Item = ((usize, usize), Poly)>) -> Self {
        let mut x = Self::zero(shape);
        for (k, p) in terms {
            x.add_term(k, p);
        }
        x
    }

    pub fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: (usize, usize), p: Poly) {
        if p.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(|| Poly::zero(p.nvars()));
        e.add_assign_ref(&p);
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, o: &PbwElement) -> Result<PbwElement> {
        if !self.shape.same(&o.shape) {
            return Err(Error::ShapeMismatch);
        }
        let mut x = self.clone();
        for (k, p) in &o.terms {
            x.add_term(*k, p.clone());
        }
        Ok(x)
    }

    pub fn sub(&self, o: &PbwElement) -> Result<PbwElement> {
        let neg = PbwElement { shape: o.shape.clone(), terms: o.terms.iter().map(|(k, p)| (*k, -p)).collect() };
        self.add(&neg)
    }

    /// Triangular elimination by decreasing length of w.
    pub fn to_pbw(x: &SkewElement) -> Result<PbwElement> {
        let sh = x.shape().clone();
        let mut rest = x.clone();
        let mut out = PbwElement::zero(&sh);
        while let Some(top) = rest.terms().keys().map(|&(_, w)| sh.group.length(w)).max() {
            let keys: Vec<(usize, usize)> =
                rest.terms().keys().filter(|&&(_, w)| sh.group.length(w) == top).copied().collect();
            for (i, w) in keys {
                let a = rest.coeff(i, w).expect("present").clone();
                let basis = sh.embed_basis(i, w);
                let lead = &basis.iter().find(|(k, _)| *k == (i, w)).expect("triangularity").1;
                let q = a.div(lead)?;
                let p = q.as_poly().ok_or_else(|| {
                    Error::NotInAlgebra(format!("coefficient {} at {} 1_{}", q.render("k"), sh.render_word(w), sh.render_seq(i)))
                })?;
                for (k, c) in basis.iter() {
                    rest.add_term(*k, -c.mul_poly(p));
                }
                out.add_term((i, w), p.clone());
            }
            if rest.terms().keys().any(|&(_, w)| sh.group.length(w) >= top) {
                return Err(Error::InternalDivisionFailure("PBW elimination did not lower the length".into()));
            }
        }
        Ok(out)
    }

    pub fn from_pbw(&self) -> SkewElement {
        let sh = &self.shape;
        let mut x = SkewElement::zero(sh);
        for (&(i, w), p) in &self.terms {
            for (k, c) in sh.embed_basis(i, w).iter() {
                x.add_term(*k, c.mul_poly(p));
            }
        }
        x
    }

    pub fn mul(&self, o: &PbwElement) -> Result<PbwElement> {
        PbwElement::to_pbw(&self.from_pbw().mul(&o.from_pbw())?)
    }

    /// Degrees of all monomial terms; a homogeneous element has exactly one.
    pub fn term_degrees(&self) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for (&(i, w), p) in &self.terms {
            let d = self.shape.word_degree(w, i);
            for (mono, _) in p.terms() {
                out.insert(d + 2 * mono.degree() as i64);
            }
        }
        out
    }

    pub fn degree(&self) -> Result<Option<i64>> {
        let d = self.term_degrees();
        match d.len() {
            0 => Ok(None),
            1 => Ok(d.into_iter().next()),
            _ => Err(Error::Inhomogeneous(d.into_iter().collect())),
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.shape.flavor
    }
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::super::GenKind;
    use super::*;
    use crate::quiver::Seq;
    use crate::weyl::{weyl_group, Gen};

    #[test]
    fn sigma_square_vanishes() {
        let q = window(2);
        let sh = shape_b(&q, &[("2", 2)]);
        let two = q.find("2").unwrap();
        let i = sh.seq_index(&Seq(vec![two, two])).unwrap();
        let x = SkewElement::idempotent(&sh, i).left_word(&[GenKind::Sigma(1), GenKind::Sigma(1)]).unwrap();
        assert!(PbwElement::to_pbw(&x).unwrap().is_zero());
    }

    #[test]
    fn pi_square_at_rank_one() {
        for qq in [2, 5] {
            let q = window(qq);
            let sh = shape_b(&q, &[("2", 1)]);
            for i in 0..2 {
                let x = SkewElement::idempotent(&sh, i).left_word(&[GenKind::Pi, GenKind::Pi]).unwrap();
                let p = PbwElement::to_pbw(&x).unwrap();
                let (i0, i1) = (sh.entry(i, 0), sh.entry(i, 1));
                let want = &sh.kappa(0).pow(q.lambda(i0)) * &sh.kappa(1).pow(q.lambda(i1));
                assert_eq!(p, PbwElement::basis_element(&sh, i, 0, want));
            }
        }
    }

    #[test]
    fn lone_inverse_not_in_algebra() {
        let q = window(2);
        let sh = shape_b(&q, &[("2", 2)]);
        let d = &Poly::var(2, 0) - &Poly::var(2, 1);
        let x = SkewElement::from_terms(&sh, [((0, 0), RatFun::new(Poly::one(2), d).unwrap())]);
        assert!(matches!(PbwElement::to_pbw(&x), Err(Error::NotInAlgebra(_))));
    }

    #[test]
    fn triangularity_rank_three() {
        let q = window(2);
        let sh = shape_b(&q, &[("2", 2), ("8", 1)]);
        let g = sh.group();
        for i in 0..sh.seqs().len() {
            for &w in sh.elems() {
                let t = sh.embed_basis(i, w);
                let top: Vec<_> = t.iter().filter(|((_, u), _)| g.length(*u) >= g.length(w)).collect();
                assert_eq!(top.len(), 1);
                assert_eq!(top[0].0, (i, w));
                assert!(top[0].1.inverse().is_ok());
            }
        }
    }

    #[test]
    fn degrees() {
        let q = window(2);
        let sh = shape_b(&q, &[("2", 2)]);
        let two = q.find("2").unwrap();
        let i = sh.seq_index(&Seq(vec![two, two])).unwrap();
        let s1 = sh.group().gen_index(Gen::S(1));
        assert_eq!(sh.word_degree(s1, i), -2);
        let e = sh.group().gen_index(Gen::Eps);
        let lam = (q.lambda(sh.entry(i, 0)) + q.lambda(sh.entry(i, 1))) as i64;
        assert_eq!(sh.word_degree(e, i), lam);
        // π₂ = σ₁π₁σ₁
        let w = weyl_group(2).unwrap();
        let pi2 = w.index_of(&crate::weyl::SignedPerm::from_word(2, &[Gen::S(1), Gen::Eps, Gen::S(1)]));
        for i in 0..sh.seqs().len() {
            let e = |l| sh.entry(i, l);
            let want = -q.cartan(e(1), e(2)) - q.cartan(e(1), e(-1)) + (q.lambda(e(2)) + q.lambda(e(-1))) as i64;
            assert_eq!(sh.word_degree(pi2, i), want);
        }
    }

    #[test]
    fn gdim_rank_one() {
        let q = window(2);
        let sh = shape_b(&q, &[("2", 1)]);
        let (n, m) = sh.gdim_pair(0, 0);
        assert_eq!((n, m), (LaurentV::one(), 1));
        let j = 0;
        let i = 1;
        let lam = (q.lambda(sh.entry(j, 0)) + q.lambda(sh.entry(j, 1))) as i64;
        assert_eq!(sh.gdim_pair(i, j).0, LaurentV::v_pow(lam));
    }

    #[test]
    fn inhomogeneous_report() {
        let q = window(2);
        let sh = shape_b(&q, &[("2", 1)]);
        let x = PbwElement::basis_element(&sh, 0, 0, &Poly::one(1) + &Poly::var(1, 0));
        assert_eq!(x.degree(), Err(Error::Inhomogeneous(vec![0, 2])));
    }
}
