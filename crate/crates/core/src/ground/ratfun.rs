//! Reduced rational functions in κ-variables.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};


use super::matrix::Matrix;
use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `num / den` with gcd(num, den) = 1 and den monic in graded-lex order,
/// so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RatFun { num, den: Poly::one(n) };
        }
        if den.is_constant() {
            let c = den.constant_term().recip();
            return RatFun { num: num.scale(&c), den: Poly::one(n) };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap()) };
        let lc = den.lead().unwrap().1.recip();
        RatFun { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFun { num: p, den: Poly::one(n) }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_poly(Poly::zero(n))
    }

    pub fn one(n: usize) -> Self {
        Self::from_poly(Poly::one(n))
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::from_poly(Poly::constant(n, c))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFun) -> Result<Self> {
        Ok(self * &o.inverse()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        if self.is_polynomial() {
            return Self::from_poly(&self.num * p);
        }
        let g = Poly::gcd(p, &self.den);
        if g.is_one() {
            return RatFun { num: &self.num * p, den: self.den.clone() };
        }
        let num = &self.num * &p.div_exact(&g).unwrap();
        let den = self.den.div_exact(&g).unwrap();
        if den.is_constant() {
            return RatFun::from_poly(num.scale(&den.constant_term().recip()));
        }
        let c = den.lead().unwrap().1.recip();
        RatFun { num: num.scale(&c), den: den.scale(&c) }
    }

    /// Substitution κ_v ↦ ±κ_{perm_v} (the W_m action).
    pub fn signed_permute(&self, perm: &[(usize, bool)]) -> Self {
        let num = self.num.signed_permute(perm);
        let den = self.den.signed_permute(perm);
        let c = den.lead().unwrap().1.recip();
        if c.is_one() {
            RatFun { num, den }
        } else {
            RatFun { num: num.scale(&c), den: den.scale(&c) }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFun { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Evaluates on commuting matrices; the denominator must be invertible there.
    pub fn eval_matrix(&self, mats: &[Matrix], dim: usize) -> Result<Matrix> {
        let n = self.num.eval_matrix(mats, dim);
        if self.is_polynomial() {
            return Ok(n);
        }
        let d = self.den.eval_matrix(mats, dim);
        let inv = d.inverse().ok_or_else(|| Error::SingularDenominator(self.den.to_string()))?;
        Ok(&n * &inv)
    }

    pub fn eval(&self, pt: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(pt);
        if d.is_zero() {
            return Err(Error::SingularDenominator(self.den.to_string()));
        }
        Ok(self.num.eval(pt) / d)
    }

    pub fn extend_vars(&self, n: usize) -> Self {
        RatFun { num: self.num.extend_vars(n), den: self.den.extend_vars(n) }
    }

    pub fn render(&self, name: &str) -> String {
        if self.is_polynomial() {
            self.num.render(name)
        } else {
            format!("({})/({})", self.num.render(name), self.den.render(name))
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("k"))
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return RatFun::from_poly(&self.num + &o.num);
            }
            return RatFun::reduce(&self.num + &o.num, self.den.clone());
        }
        let g = Poly::gcd(&self.den, &o.den);
        let a = o.den.div_exact(&g).unwrap();
        let b = self.den.div_exact(&g).unwrap();
        let num = &(&self.num * &a) + &(&o.num * &b);
        RatFun::reduce(num, &self.den * &a)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero(self.nvars());
        }
        if o.is_polynomial() {
            return self.mul_poly(&o.num);
        }
        if self.is_polynomial() {
            return o.mul_poly(&self.num);
        }
        let g1 = Poly::gcd(&self.num, &o.den);
        let g2 = Poly::gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        if den.is_constant() {
            return RatFun::from_poly(num.scale(&den.constant_term().recip()));
        }
        let c = den.lead().unwrap().1.recip();
        RatFun { num: num.scale(&c), den: den.scale(&c) }
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, o: RatFun) -> RatFun {
        &self + &o
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, o: RatFun) -> RatFun {
        &self - &o
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, o: RatFun) -> RatFun {
        &self * &o
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(m: usize, l: i64) -> RatFun {
        Poly::kappa(m, l).into()
    }

    #[test]
    fn inverse_is_normalized() {
        let d = &k(2, 1) - &k(2, 2);
        let inv = d.inverse().unwrap();
        assert!(inv.num().is_one());
        assert_eq!(inv.den().lead().unwrap().1, &Rational::one());
        let neg = (&k(2, 2) - &k(2, 1)).inverse().unwrap();
        assert_eq!(neg, -&inv);
        assert_eq!(RatFun::zero(2).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn cancellation() {
        let a = &k(2, 1) - &k(2, 2);
        let b = &k(2, 1) + &k(2, 2);
        let x = (&a * &b).div(&a).unwrap();
        assert_eq!(x, b);
        let y = &a.inverse().unwrap() - &a.inverse().unwrap();
        assert!(y.is_zero());
    }
}
