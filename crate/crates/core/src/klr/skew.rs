use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{Flavor, GenKind, Shape};
use crate::error::{Error, Result};
use crate::ground::{Poly, RatFun};

/// Σ a_{i,w}·w·1_i: the operator f ↦ a·w(f) from component i to component w(i).
/// Keys are (source sequence index, group element index).
#[derive(Clone)]
pub struct SkewElement {
    shape: Arc<Shape>,
    terms: BTreeMap<(usize, usize), RatFun>,
}

impl PartialEq for SkewElement {
    fn eq(&self, o: &Self) -> bool {
        self.shape.same(&o.shape) && self.terms == o.terms
    }
}

impl fmt::Debug for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, w), a)| format!("({})*{:?}*1_{}", a.render("k"), self.shape.group.elem(w), self.shape.render_seq(i)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl SkewElement {
    pub fn zero(shape: &Arc<Shape>) -> Self {
        SkewElement { shape: shape.clone(), terms: BTreeMap::new() }
    }

    pub fn idempotent(shape: &Arc<Shape>, i: usize) -> Self {
        let mut x = Self::zero(shape);
        x.terms.insert((i, 0), RatFun::one(shape.m));
        x
    }

    pub fn unit(shape: &Arc<Shape>) -> Self {
        let mut x = Self::zero(shape);
        for i in 0..shape.seqs.len() {
            x.terms.insert((i, 0), RatFun::one(shape.m));
        }
        x
    }

    /// Generator restricted to idempotent i (g·1_i).
    pub fn gen_at(shape: &Arc<Shape>, g: GenKind, i: usize) -> Result<Self> {
        shape.check_gen(g)?;
        let mut x = Self::zero(shape);
        for (w, a) in shape.gen_image(g, i) {
            x.add_term((i, w), a);
        }
        Ok(x)
    }

    /// The global generator Σ_i g·1_i.
    pub fn generator(shape: &Arc<Shape>, g: GenKind) -> Result<Self> {
        shape.check_gen(g)?;
        let mut x = Self::zero(shape);
        for i in 0..shape.seqs.len() {
            for (w, a) in shape.gen_image(g, i) {
                x.add_term((i, w), a);
            }
        }
        Ok(x)
    }

    /// Σ_i P·1_i.
    pub fn poly(shape: &Arc<Shape>, p: &Poly) -> Self {
        let mut x = Self::zero(shape);
        if !p.is_zero() {
            for i in 0..shape.seqs.len() {
                x.terms.insert((i, 0), RatFun::from_poly(p.clone()));
            }
        }
        x
    }

    pub fn from_terms(shape: &Arc<Shape>, terms: impl IntoIterator<Item = ((usize, usize), RatFun)>) -> Self {
        let mut x = Self::zero(shape);
        for (k, a) in terms {
            x.add_term(k, a);
        }
        x
    }

    pub fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), RatFun> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize, w: usize) -> Option<&RatFun> {
        self.terms.get(&(i, w))
    }

    pub(crate) fn add_term(&mut self, k: (usize, usize), a: RatFun) {
        if a.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(c) => {
                *c = &*c + &a;
                if c.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, a);
            }
        }
    }

    fn check(&self, o: &SkewElement) -> Result<()> {
        if self.shape.same(&o.shape) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch)
        }
    }

    pub fn add(&self, o: &SkewElement) -> Result<SkewElement> {
        self.check(o)?;
        let mut x = self.clone();
        for (k, a) in &o.terms {
            x.add_term(*k, a.clone());
        }
        Ok(x)
    }

    pub fn sub(&self, o: &SkewElement) -> Result<SkewElement> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> SkewElement {
        SkewElement { shape: self.shape.clone(), terms: self.terms.iter().map(|(k, a)| (*k, -a)).collect() }
    }

    /// (a·w·1_i)(b·u·1_j) = δ_{i,u(j)} a·w(b)·(wu)·1_j.
    pub fn mul(&self, o: &SkewElement) -> Result<SkewElement> {
        self.check(o)?;
        let sh = &self.shape;
        // group the left factor by source idempotent
        let mut by_src: BTreeMap<usize, Vec<(usize, &RatFun)>> = BTreeMap::new();
        for (&(i, w), a) in &self.terms {
            by_src.entry(i).or_default().push((w, a));
        }
        let mut out = SkewElement::zero(sh);
        for (&(j, u), b) in &o.terms {
            let t = sh.act[u][j];
            if let Some(left) = by_src.get(&t) {
                for &(w, a) in left {
                    let wb = b.signed_permute(&sh.subs[w]);
                    out.add_term((j, sh.group.mul(w, u)), a * &wb);
                }
            }
        }
        Ok(out)
    }

    /// g·self, using the generator's image at each target idempotent.
    pub fn left_gen(&self, g: GenKind) -> Result<SkewElement> {
        let sh = &self.shape;
        sh.check_gen(g)?;
        let mut out = SkewElement::zero(sh);
        let mut images: BTreeMap<usize, Vec<(usize, RatFun)>> = BTreeMap::new();
        for (&(j, u), b) in &self.terms {
            let t = sh.act[u][j];
            let img = images.entry(t).or_insert_with(|| sh.gen_image(g, t));
            for (w, a) in img.iter() {
                let wb = b.signed_permute(&sh.subs[*w]);
                out.add_term((j, sh.group.mul(*w, u)), a * &wb);
            }
        }
        Ok(out)
    }

    /// P·self (P in the κ of the target components).
    pub fn left_poly(&self, p: &Poly) -> SkewElement {
        let mut out = SkewElement::zero(&self.shape);
        for (k, a) in &self.terms {
            out.add_term(*k, a.mul_poly(p));
        }
        out
    }

    /// self·P (P in the κ of the source components).
    pub fn right_poly(&self, p: &Poly) -> SkewElement {
        let mut out = SkewElement::zero(&self.shape);
        for (&(i, w), a) in &self.terms {
            out.add_term((i, w), a.mul_poly(&p.signed_permute(&self.shape.subs[w])));
        }
        out
    }

    pub fn scale_ratfun(&self, r: &RatFun) -> SkewElement {
        let mut out = SkewElement::zero(&self.shape);
        for (k, a) in &self.terms {
            out.add_term(*k, a * r);
        }
        out
    }

    /// Apply g₁⋯g_r (letters applied right to left) to self.
    pub fn left_word(&self, word: &[GenKind]) -> Result<SkewElement> {
        let mut x = self.clone();
        for &g in word.iter().rev() {
            x = x.left_gen(g)?;
        }
        Ok(x)
    }

    /// Action on the polynomial representation.
    pub fn act(&self, f: &PolyVector) -> Result<PolyVector> {
        let sh = &self.shape;
        let mut acc: BTreeMap<usize, RatFun> = BTreeMap::new();
        for (&(i, w), a) in &self.terms {
            if let Some(p) = f.0.get(&i) {
                let t = sh.act[w][i];
                let v = a.mul_poly(&p.signed_permute(&sh.subs[w]));
                let e = acc.entry(t).or_insert_with(|| RatFun::zero(sh.m));
                *e = &*e + &v;
            }
        }
        let mut out = PolyVector::default();
        for (t, r) in acc {
            let p = r.as_poly().ok_or(Error::NonPolynomialResult)?;
            if !p.is_zero() {
                out.0.insert(t, p.clone());
            }
        }
        Ok(out)
    }

    pub fn flavor(&self) -> Flavor {
        self.shape.flavor
    }
}

/// An element of ⊕_i k[κ_1..κ_m], keyed by sequence index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PolyVector(pub BTreeMap<usize, Poly>);

impl PolyVector {
    pub fn single(i: usize, p: Poly) -> Self {
        let mut v = PolyVector::default();
        if !p.is_zero() {
            v.0.insert(i, p);
        }
        v
    }
}
