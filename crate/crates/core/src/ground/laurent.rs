//! Laurent polynomials in v with integer coefficients, and v-numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct LaurentV {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentV {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// c·v^e
    pub fn monomial(e: i64, c: i64) -> Self {
        let mut l = Self::zero();
        l.add_term(e, BigInt::from(c));
        l
    }

    pub fn v_pow(e: i64) -> Self {
        Self::monomial(e, 1)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by v^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentV { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// v ↦ v⁻¹.
    pub fn bar(&self) -> Self {
        LaurentV { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Value at v = 1.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut r = Self::zero();
        for (e, x) in &self.terms {
            r.add_term(*e, x * c);
        }
        r
    }

    /// All exponents share one parity: Some(parity), None for mixed; zero gives Some(0).
    pub fn parity(&self) -> Option<i64> {
        let mut ps = self.terms.keys().map(|e| e.rem_euclid(2));
        let p = ps.next().unwrap_or(0);
        ps.all(|q| q == p).then_some(p)
    }

    /// Exact quotient; fails unless the divisor divides with integer coefficients.
    pub fn div_exact(&self, d: &LaurentV) -> Result<LaurentV> {
        let fail = || Error::InternalDivisionFailure(format!("({self}) / ({d})"));
        let (&dt, dc) = d.terms.iter().next_back().ok_or(Error::DivisionByZero)?;
        let mut r = self.clone();
        let mut q = LaurentV::zero();
        let dmin = d.min_exp().unwrap();
        while let Some((&rt, rc)) = r.terms.iter().next_back() {
            let (qc, rem) = rc.div_rem(dc);
            if !rem.is_zero() {
                return Err(fail());
            }
            let qe = rt - dt;
            // the remainder's lowest exponent would drop below the dividend's support
            if qe + dmin < self.min_exp().unwrap() {
                return Err(fail());
            }
            let step = d.shift(qe).scale(&qc);
            r = &r - &step;
            q.add_term(qe, qc);
        }
        Ok(q)
    }

    /// Multiplies by (1 − v²)^k.
    pub fn mul_one_minus_v2_pow(&self, k: u32) -> Self {
        let f = LaurentV::one() - LaurentV::v_pow(2);
        let mut r = self.clone();
        for _ in 0..k {
            r = &r * &f;
        }
        r
    }
}

impl fmt::Display for LaurentV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let coef = if a.is_one() && *e != 0 { String::new() } else { a.to_string() };
            match e {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{coef}v")?,
                _ => write!(f, "{coef}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentV {
    type Output = LaurentV;
    fn add(self, o: &LaurentV) -> LaurentV {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl Sub for &LaurentV {
    type Output = LaurentV;
    fn sub(self, o: &LaurentV) -> LaurentV {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }
}

impl Mul for &LaurentV {
    type Output = LaurentV;
    fn mul(self, o: &LaurentV) -> LaurentV {
        let mut r = LaurentV::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for &LaurentV {
    type Output = LaurentV;
    fn neg(self) -> LaurentV {
        LaurentV { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentV {
            type Output = LaurentV;
            fn $f(self, o: LaurentV) -> LaurentV {
                (&self).$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// ⟨n⟩ = Σ_{l=1..n} v^{n+1−2l}.
pub fn quantum_integer(n: u32) -> LaurentV {
    let mut r = LaurentV::zero();
    for l in 1..=n as i64 {
        r.add_term(n as i64 + 1 - 2 * l, BigInt::one());
    }
    r
}

pub fn quantum_factorial(n: u32) -> LaurentV {
    (1..=n).fold(LaurentV::one(), |acc, l| &acc * &quantum_integer(l))
}

/// ⟨m+n⟩!/(⟨m⟩!⟨n⟩!).
pub fn quantum_binomial(m: u32, n: u32) -> Result<LaurentV> {
    let d = &quantum_factorial(m) * &quantum_factorial(n);
    quantum_factorial(m + n).div_exact(&d)
}
