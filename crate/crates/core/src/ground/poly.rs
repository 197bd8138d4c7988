//! Sparse multivariate polynomials over ℚ in graded-lex order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};
use smallvec::SmallVec;

use super::matrix::Matrix;
use super::rational::{fmt_short, Rational};

pub type Exps = SmallVec<[u16; 6]>;

/// Exponent vector. Ordered by total degree, then lexicographically with x1 > x2 > ...
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Exps);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(SmallVec::from_elem(0, n))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self.divides(o)`.
    pub fn quo(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| b - a).collect())
    }

    pub fn meet(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Rational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { nvars: n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(Mono::one(n), c);
        }
        p
    }

    pub fn from_int(n: usize, c: i64) -> Self {
        Self::constant(n, Rational::from_integer(c.into()))
    }

    /// The variable x_v, 0-based.
    pub fn var(n: usize, v: usize) -> Self {
        assert!(v < n, "variable {v} out of range for {n} variables");
        let mut m = Mono::one(n);
        m.0[v] = 1;
        Self::monomial(m, Rational::one())
    }

    /// κ_l for l in 1−m..=m, using κ_{1−l} = −κ_l.
    pub fn kappa(m: usize, l: i64) -> Self {
        if l >= 1 {
            Self::var(m, (l - 1) as usize)
        } else {
            -Self::var(m, (-l) as usize)
        }
    }

    pub fn monomial(m: Mono, c: Rational) -> Self {
        let n = m.0.len();
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(n: usize, it: impl IntoIterator<Item = (Mono, Rational)>) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in it {
            debug_assert_eq!(m.0.len(), n);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().degree() == 0)
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Mono::one(self.nvars)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn lead(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// Some(d) if every term has total degree d.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Mono::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn deg_in(&self, v: usize) -> Option<u16> {
        self.terms.keys().map(|m| m.0[v]).max()
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_mono(&self, mono: &Mono, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.mul(mono), x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Makes the lead coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Substitution x_v ↦ sign_v · x_{perm_v}.
    pub fn signed_permute(&self, perm: &[(usize, bool)]) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = Mono::one(self.nvars);
            let mut odd = false;
            for (v, &k) in m.0.iter().enumerate() {
                let (t, neg) = perm[v];
                e.0[t] += k;
                odd ^= neg && k % 2 == 1;
            }
            out.add_term(e, if odd { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Re-embeds into `n ≥ nvars` variables (new variables appended).
    pub fn extend_vars(&self, n: usize) -> Poly {
        assert!(n >= self.nvars);
        Poly {
            nvars: n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(n, 0);
                    (Mono(e), c.clone())
                })
                .collect(),
        }
    }

    /// Drops to the first `n` variables after setting the rest to zero.
    pub fn truncate_vars(&self, n: usize) -> Poly {
        Poly::from_terms(
            n,
            self.terms
                .iter()
                .filter(|(m, _)| m.0[n..].iter().all(|&e| e == 0))
                .map(|(m, c)| (Mono(m.0[..n].iter().copied().collect()), c.clone())),
        )
    }

    pub fn eval(&self, pt: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    t *= num::pow(pt[v].clone(), k as usize);
                }
            }
            s += t;
        }
        s
    }

    /// Evaluates on pairwise commuting square matrices.
    pub fn eval_matrix(&self, mats: &[Matrix], dim: usize) -> Matrix {
        let mut powers: Vec<Vec<Matrix>> = vec![vec![Matrix::identity(dim)]; self.nvars];
        let mut out = Matrix::zeros(dim, dim);
        for (m, c) in &self.terms {
            let mut t = Matrix::identity(dim);
            for (v, &k) in m.0.iter().enumerate() {
                let k = k as usize;
                while powers[v].len() <= k {
                    let next = powers[v].last().unwrap() * &mats[v];
                    powers[v].push(next);
                }
                if k > 0 {
                    t = &t * &powers[v][k];
                }
            }
            out = &out + &t.scale(c);
        }
        out
    }

    /// Exact quotient, or None when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if d.is_constant() {
            return Some(self.scale(&d.constant_term().recip()));
        }
        let (dm, dc) = d.lead().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let inv = dc.recip();
        let mut r = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((rm, rc)) = r.lead().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let qm = dm.quo(&rm);
            let qc = &rc * &inv;
            r = &r - &d.mul_mono(&qm, &qc);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Coefficients with respect to x_v, as polynomials not involving x_v.
    pub fn coeffs_in(&self, v: usize) -> BTreeMap<u16, Poly> {
        let mut out: BTreeMap<u16, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.0[v];
            let mut e = m.clone();
            e.0[v] = 0;
            out.entry(k).or_insert_with(|| Poly::zero(self.nvars)).add_term(e, c.clone());
        }
        out
    }

    fn vars_used(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (v, &k) in m.0.iter().enumerate() {
                used[v] |= k > 0;
            }
        }
        used
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let n = a.nvars;
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one(n);
        }
        if a.terms.len() == 1 || b.terms.len() == 1 {
            let (single, other) = if a.terms.len() == 1 { (a, b) } else { (b, a) };
            let mut g = single.terms.keys().next().unwrap().clone();
            for m in other.terms.keys() {
                g = g.meet(m);
            }
            return Poly::monomial(g, Rational::one());
        }
        let (small, big) = if a.terms.len() <= b.terms.len() { (a, b) } else { (b, a) };
        if big.div_exact(small).is_some() {
            return small.monic();
        }
        let ua = a.vars_used();
        let ub = b.vars_used();
        for v in 0..n {
            if ua[v] && !ub[v] {
                return Poly::gcd(&a.content_in(v), b);
            }
            if ub[v] && !ua[v] {
                return Poly::gcd(a, &b.content_in(v));
            }
        }
        // Every variable occurs in both; pick the one of least degree.
        let v = (0..n)
            .filter(|&v| ua[v])
            .min_by_key(|&v| a.deg_in(v).unwrap().max(b.deg_in(v).unwrap()))
            .unwrap();
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let g = Poly::gcd(&ca, &cb);
        let mut f1 = a.div_exact(&ca).unwrap().monic();
        let mut f2 = b.div_exact(&cb).unwrap().monic();
        if f1.deg_in(v) < f2.deg_in(v) {
            std::mem::swap(&mut f1, &mut f2);
        }
        loop {
            let r = f1.prem_in(&f2, v);
            if r.is_zero() {
                return (&f2 * &g).monic();
            }
            if r.deg_in(v) == Some(0) {
                return g.monic();
            }
            let cr = r.content_in(v);
            f1 = f2;
            // monic keeps the rational coefficients from growing exponentially
            f2 = r.div_exact(&cr).unwrap().monic();
        }
    }

    /// Gcd of the coefficients with respect to x_v.
    pub fn content_in(&self, v: usize) -> Poly {
        let mut g = Poly::zero(self.nvars);
        for c in self.coeffs_in(v).values() {
            g = Poly::gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Pseudo-remainder of `self` by `d` as polynomials in x_v.
    pub fn prem_in(&self, d: &Poly, v: usize) -> Poly {
        let dd = d.deg_in(v).unwrap();
        let dcs = d.coeffs_in(v);
        let lc = dcs[&dd].clone();
        let mut r = self.clone();
        while !r.is_zero() {
            let rd = r.deg_in(v).unwrap();
            if rd < dd {
                break;
            }
            let rc = r.coeffs_in(v).remove(&rd).unwrap();
            let mut shift = Mono::one(self.nvars);
            shift.0[v] = rd - dd;
            r = &(&r * &lc) - &(&rc * &d.mul_mono(&shift, &Rational::one()));
        }
        r
    }

    /// Renders with variables named `{name}1, {name}2, ...`.
    pub fn render(&self, name: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &k) in m.0.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(format!("{name}{}", v + 1)),
                    _ => factors.push(format!("{name}{}^{k}", v + 1)),
                }
            }
            if factors.is_empty() {
                s.push_str(&fmt_short(&a));
            } else {
                if !a.is_one() {
                    s.push_str(&fmt_short(&a));
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("k"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign_ref(o);
        r
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::rational::int;

    fn x(n: usize, v: usize) -> Poly {
        Poly::var(n, v)
    }

    #[test]
    fn grlex_lead() {
        let p = &(&x(2, 1) * &x(2, 1)) + &x(2, 0);
        assert_eq!(p.lead().unwrap().0 .0.as_slice(), &[0, 2]);
        let q = &x(2, 0) + &x(2, 1);
        assert_eq!(q.lead().unwrap().0 .0.as_slice(), &[1, 0]);
    }

    #[test]
    fn kappa_negative_index() {
        assert_eq!(Poly::kappa(2, 0), -x(2, 0));
        assert_eq!(Poly::kappa(2, -1), -x(2, 1));
    }

    #[test]
    fn exact_division() {
        let a = &x(2, 0) - &x(2, 1);
        let b = &(&x(2, 0) + &x(2, 1)) * &a;
        assert_eq!(b.div_exact(&a).unwrap(), &x(2, 0) + &x(2, 1));
        assert!(a.div_exact(&b).is_none());
        assert!(x(2, 0).div_exact(&a).is_none());
    }

    #[test]
    fn gcd_multivariate() {
        let n = 3;
        let a = &x(n, 0) - &x(n, 1);
        let b = &x(n, 1) + &x(n, 2);
        let c = &(&x(n, 0) * &x(n, 2)) + &Poly::one(n);
        let p = &(&a * &a) * &c;
        let q = &(&a * &b) * &c;
        let g = Poly::gcd(&p, &q);
        assert_eq!(g, (&a * &c).monic());
        assert!(Poly::gcd(&a, &b).is_one());
        let s = &x(n, 0) + &int(2).into_poly(n);
        assert!(Poly::gcd(&(&s * &s), &(&s * &a)).div_exact(&s).is_some());
    }

    trait IntoPoly {
        fn into_poly(self, n: usize) -> Poly;
    }
    impl IntoPoly for Rational {
        fn into_poly(self, n: usize) -> Poly {
            Poly::constant(n, self)
        }
    }

    #[test]
    fn signed_permutation_substitution() {
        // x1 ↦ -x2, x2 ↦ x1 applied to x1*x2^2
        let p = &x(2, 0) * &(&x(2, 1) * &x(2, 1));
        let r = p.signed_permute(&[(1, true), (0, false)]);
        assert_eq!(r, -(&x(2, 1) * &(&x(2, 0) * &x(2, 0))));
    }

    #[test]
    fn render_is_deterministic() {
        let p = &(&x(2, 0) * &x(2, 0)) - &(&x(2, 1)).scale(&int(3));
        assert_eq!(p.render("k"), "k1^2 - 3*k2");
    }
}
