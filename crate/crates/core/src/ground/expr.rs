//! Rational expressions in κ evaluated on commuting (nilpotent) matrices.

use std::fmt;

use super::matrix::Matrix;
use super::poly::Poly;
use super::ratfun::RatFun;
use super::rational::{fmt_short, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Rational),
    /// κ_l, 1-based.
    Var(usize),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Inv(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn c(x: Rational) -> Expr {
        Expr::Const(x)
    }

    pub fn var(l: usize) -> Expr {
        Expr::Var(l)
    }

    pub fn inv(self) -> Expr {
        Expr::Inv(Box::new(self))
    }

    pub fn pow(self, e: u32) -> Expr {
        Expr::Pow(Box::new(self), e)
    }

    pub fn sub(self, o: Expr) -> Expr {
        Expr::Add(vec![self, Expr::Neg(Box::new(o))])
    }

    /// Symbolic normal form; denominators that vanish identically are errors.
    pub fn to_ratfun(&self, m: usize) -> Result<RatFun> {
        Ok(match self {
            Expr::Const(c) => RatFun::constant(m, c.clone()),
            Expr::Var(l) => {
                if *l == 0 || *l > m {
                    return Err(Error::IndexOutOfRange { index: *l as i64, rank: m });
                }
                Poly::var(m, l - 1).into()
            }
            Expr::Add(xs) => {
                let mut acc = RatFun::zero(m);
                for x in xs {
                    acc = &acc + &x.to_ratfun(m)?;
                }
                acc
            }
            Expr::Mul(xs) => {
                let mut acc = RatFun::one(m);
                for x in xs {
                    acc = &acc * &x.to_ratfun(m)?;
                }
                acc
            }
            Expr::Neg(x) => -x.to_ratfun(m)?,
            Expr::Inv(x) => x.to_ratfun(m)?.inverse().map_err(|_| Error::SingularDenominator(x.to_string()))?,
            Expr::Pow(x, e) => x.to_ratfun(m)?.pow(*e),
        })
    }

    fn eval(&self, mats: &[Matrix], n: usize) -> Result<Matrix> {
        Ok(match self {
            Expr::Const(c) => Matrix::scalar(n, c),
            Expr::Var(l) => mats
                .get(l.wrapping_sub(1))
                .ok_or(Error::IndexOutOfRange { index: *l as i64, rank: mats.len() })?
                .clone(),
            Expr::Add(xs) => {
                let mut acc = Matrix::zeros(n, n);
                for x in xs {
                    acc = &acc + &x.eval(mats, n)?;
                }
                acc
            }
            Expr::Mul(xs) => {
                let mut acc = Matrix::identity(n);
                for x in xs {
                    acc = &acc * &x.eval(mats, n)?;
                }
                acc
            }
            Expr::Neg(x) => -&x.eval(mats, n)?,
            Expr::Inv(x) => x.eval(mats, n)?.inverse().ok_or_else(|| Error::SingularDenominator(x.to_string()))?,
            Expr::Pow(x, e) => x.eval(mats, n)?.pow(*e as usize),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{}", fmt_short(c)),
            Expr::Var(l) => write!(f, "k{l}"),
            Expr::Add(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(" + "))
            }
            Expr::Mul(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join("*"))
            }
            Expr::Neg(x) => write!(f, "-{x}"),
            Expr::Inv(x) => write!(f, "({x})^-1"),
            Expr::Pow(x, e) => write!(f, "({x})^{e}"),
        }
    }
}

/// Evaluates `expr` with κ_l ↦ `mats[l-1]`. Inverses are exact.
pub fn eval_nilpotent(expr: &Expr, mats: &[Matrix]) -> Result<Matrix> {
    let n = mats.first().map_or(0, Matrix::rows);
    for (a, x) in mats.iter().enumerate() {
        assert!(x.is_square() && x.rows() == n, "eval_nilpotent: matrices must be square of equal size");
        for y in &mats[a + 1..] {
            if !x.commutes_with(y) {
                return Err(Error::NonCommuting);
            }
        }
    }
    expr.eval(mats, n)
}

/// Evaluates a reduced rational function on commuting matrices of size `n`.
pub fn eval_ratfun(r: &RatFun, mats: &[Matrix], n: usize) -> Result<Matrix> {
    r.eval_matrix(mats, n)
}
