//! Exact arithmetic: rationals, polynomials and rational functions in κ,
//! Laurent polynomials in v, and matrices.

pub mod expr;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod ratfun;
pub mod rational;

pub use expr::{eval_nilpotent, eval_ratfun, Expr};
pub use laurent::{quantum_binomial, quantum_factorial, quantum_integer, LaurentV};
pub use matrix::Matrix;
pub use poly::{Mono, Poly};
pub use ratfun::RatFun;
pub use rational::{fmt_rational, int, parse_rational, rat, Rational};
