//! Finite-dimensional modules over the affine Hecke algebras of types B and C.

use std::fmt::{self, Write};

use num::One;

use super::HeckeParams;
use crate::error::{Error, Result};
use crate::ground::{fmt_rational, parse_rational, Matrix, Rational};

/// Matrices X_1..X_m and T_0..T_{m−1} on a common space.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeModule {
    pub params: HeckeParams,
    pub x: Vec<Matrix>,
    pub t: Vec<Matrix>,
    dim: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct HeckeReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl HeckeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for HeckeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "hecke relations checked: {}, failed: {}", self.checked, self.failures.len())?;
        for x in &self.failures {
            writeln!(f, "FAIL {x}")?;
        }
        Ok(())
    }
}

fn scalar(n: usize, c: &Rational) -> Matrix {
    Matrix::scalar(n, c)
}

impl HeckeModule {
    pub fn new(params: HeckeParams, dim: usize, x: Vec<Matrix>, t: Vec<Matrix>) -> Result<Self> {
        if x.len() != t.len() {
            return Err(Error::RankMismatch(x.len(), t.len()));
        }
        for a in x.iter().chain(&t) {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::InvalidModule(format!("matrix of size {}x{} in a module of dimension {dim}", a.rows(), a.cols())));
            }
        }
        Ok(HeckeModule { params, x, t, dim })
    }

    pub fn rank(&self) -> usize {
        self.x.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn id(&self) -> Matrix {
        Matrix::identity(self.dim)
    }

    /// Every defining relation as an exact matrix identity.
    pub fn verify(&self) -> HeckeReport {
        let mut r = HeckeReport::default();
        let mut check = |ok: bool, what: String| {
            r.checked += 1;
            if !ok {
                r.failures.push(what);
            }
        };
        let m = self.rank();
        let (x, t) = (&self.x, &self.t);
        let xinv: Vec<Option<Matrix>> = x.iter().map(Matrix::inverse).collect();
        for l in 0..m {
            check(xinv[l].is_some(), format!("X{} invertible", l + 1));
        }
        // (a)
        for l in 0..m {
            for l2 in l + 1..m {
                check(x[l].commutes_with(&x[l2]), format!("(a) X{} X{} commute", l + 1, l2 + 1));
            }
        }
        // (b)
        if m >= 2 {
            let a = &t[0] * &t[1];
            let b = &t[1] * &t[0];
            check(&a * &a == &b * &b, "(b) (T0 T1)^2 = (T1 T0)^2".into());
        }
        for k in 2..m {
            let lhs = &(&t[k] * &t[k - 1]) * &t[k];
            let rhs = &(&t[k - 1] * &t[k]) * &t[k - 1];
            check(lhs == rhs, format!("(b) braid T{k} T{}", k - 1));
        }
        for k in 0..m {
            for k2 in k + 2..m {
                check(t[k].commutes_with(&t[k2]), format!("(b) T{k} T{k2} commute"));
            }
        }
        // (c)
        if m >= 1 {
            if let Some(x1i) = &xinv[0] {
                match &self.params {
                    HeckeParams::B { .. } => {
                        check(&(&t[0] * x1i) * &t[0] == x[0], "(c) T0 X1^-1 T0 = X1".into());
                    }
                    HeckeParams::C { q0, q1, .. } => {
                        let lhs = &(&t[0] * x1i) - &(&x[0] * &t[0]);
                        let rhs = &x[0].scale(&(q1.recip() - q0)) + &scalar(self.dim, &(q0 / q1 - Rational::one()));
                        check(lhs == rhs, "(c) T0 X1^-1 - X1 T0 = (q1^-1 - q0) X1 + (q0 q1^-1 - 1)".into());
                    }
                }
            }
        }
        for k in 1..m {
            check(&(&t[k] * &x[k - 1]) * &t[k] == x[k], format!("(c) T{k} X{k} T{k} = X{}", k + 1));
        }
        for k in 0..m {
            for l in 1..=m {
                if l != k && l != k + 1 {
                    check(t[k].commutes_with(&x[l - 1]), format!("(c) T{k} X{l} commute"));
                }
            }
        }
        // (d)
        let p = self.params.p().clone();
        for k in 1..m {
            let a = &t[k] - &scalar(self.dim, &p);
            let b = &t[k] + &scalar(self.dim, &p.recip());
            check((&a * &b).is_zero(), format!("(d) (T{k} - p)(T{k} + p^-1) = 0"));
        }
        if m >= 1 {
            let (a0, b0) = match &self.params {
                HeckeParams::B { q, .. } => (q.clone(), q.recip()),
                HeckeParams::C { q0, q1, .. } => (q0.clone(), q1.recip()),
            };
            let a = &t[0] - &scalar(self.dim, &a0);
            let b = &t[0] + &scalar(self.dim, &b0);
            check((&a * &b).is_zero(), "(d) quadratic relation of T0".into());
        }
        r
    }

    /// The intertwiner φ_k, or SingularDenominator when its denominator is not invertible.
    pub fn intertwiner(&self, k: usize) -> Result<Matrix> {
        let m = self.rank();
        if k >= m {
            return Err(Error::IndexOutOfRange { index: k as i64, rank: m });
        }
        let id = self.id();
        let sing = |what: &str| Error::SingularDenominator(what.to_string());
        if k >= 1 {
            let p = self.params.p();
            let (xk, xk1) = (&self.x[k - 1], &self.x[k]);
            let den = &xk.scale(p) - &xk1.scale(&p.recip());
            let deninv = den.inverse().ok_or_else(|| sing(&format!("p X{k} - p^-1 X{}", k + 1)))?;
            let f = &(xk - xk1) * &deninv;
            return Ok(&id + &(&f * &(&self.t[k] - &id.scale(p))));
        }
        let x1 = &self.x[0];
        match &self.params {
            HeckeParams::B { q, .. } => {
                let x1i = x1.inverse().ok_or_else(|| sing("X1"))?;
                let xm2 = &x1i * &x1i;
                let den = &xm2.scale(q) - &id.scale(&q.recip());
                let deninv = den.inverse().ok_or_else(|| sing("q X1^-2 - q^-1"))?;
                let f = &(&xm2 - &id) * &deninv;
                Ok(&id + &(&f * &(&self.t[0] - &id.scale(q))))
            }
            HeckeParams::C { q0, q1, .. } => {
                let den = &(x1 + &id.scale(q0)) * &(x1 - &id.scale(q1));
                let deninv = den.inverse().ok_or_else(|| sing("(X1 + q0)(X1 - q1)"))?;
                let f = &(&(x1 * x1) - &id).scale(q1) * &deninv;
                Ok(&id + &(&f * &(&self.t[0] - &id.scale(q0))))
            }
        }
    }

    /// φ_k X_k φ_k⁻¹ = X_{k+1} (k ≥ 1) or φ_0 X_1 φ_0⁻¹ = X_1⁻¹, when φ_k is invertible.
    /// Ok(None) means φ_k exists but is not invertible.
    pub fn check_intertwiner(&self, k: usize) -> Result<Option<bool>> {
        let phi = self.intertwiner(k)?;
        let Some(inv) = phi.inverse() else { return Ok(None) };
        let ok = if k >= 1 {
            &(&phi * &self.x[k - 1]) * &inv == self.x[k]
        } else {
            Some(&(&phi * &self.x[0]) * &inv) == self.x[0].inverse()
        };
        Ok(Some(ok))
    }

    /// Same module in the basis given by the columns of `p`.
    pub fn conjugate(&self, p: &Matrix) -> Result<HeckeModule> {
        let pi = p.inverse().ok_or_else(|| Error::SingularDenominator("basis change".into()))?;
        let c = |a: &Matrix| &(&pi * a) * p;
        HeckeModule::new(self.params.clone(), self.dim, self.x.iter().map(c).collect(), self.t.iter().map(c).collect())
    }

    /// Generalized eigenspace of X_m for the eigenvalue μ, as basis columns.
    pub fn generalized_eigenspace(&self, l: usize, mu: &Rational) -> Matrix {
        let a = &self.x[l - 1] - &self.id().scale(mu);
        a.pow(self.dim).kernel()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match &self.params {
            HeckeParams::B { p, q } => writeln!(s, "family B\np {}\nq {}", fmt_rational(p), fmt_rational(q)).unwrap(),
            HeckeParams::C { p, q0, q1 } => {
                writeln!(s, "family C\np {}\nq0 {}\nq1 {}", fmt_rational(p), fmt_rational(q0), fmt_rational(q1)).unwrap()
            }
        }
        writeln!(s, "rank {}\ndim {}", self.rank(), self.dim).unwrap();
        let named = self.x.iter().enumerate().map(|(l, a)| (format!("X{}", l + 1), a)).chain(self.t.iter().enumerate().map(|(k, a)| (format!("T{k}"), a)));
        for (name, a) in named {
            writeln!(s, "matrix {name}").unwrap();
            for (r, c, v) in a.nonzeros() {
                writeln!(s, "{r} {c} {}", fmt_rational(v)).unwrap();
            }
            s.push_str("end\n");
        }
        s
    }

    pub fn parse(text: &str) -> Result<HeckeModule> {
        let perr = |line: usize, msg: String| Error::Parse { line, msg };
        let mut fam = None;
        let mut vals: Vec<(String, Rational)> = Vec::new();
        let (mut rank, mut dim) = (None, None);
        let mut mats: Vec<(String, Matrix)> = Vec::new();
        let mut open: Option<(String, Matrix)> = None;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let t = raw.split('#').next().unwrap_or("").trim();
            if t.is_empty() {
                continue;
            }
            if let Some((_, a)) = open.as_mut() {
                if t == "end" {
                    mats.push(open.take().expect("open"));
                    continue;
                }
                let f: Vec<&str> = t.split_whitespace().collect();
                if f.len() != 3 {
                    return Err(perr(line, format!("expected 'row col value', got '{t}'")));
                }
                let r: usize = f[0].parse().map_err(|_| perr(line, "bad row".into()))?;
                let c: usize = f[1].parse().map_err(|_| perr(line, "bad column".into()))?;
                let v = parse_rational(f[2]).map_err(|_| perr(line, format!("bad value '{}'", f[2])))?;
                if r >= a.rows() || c >= a.cols() {
                    return Err(perr(line, format!("entry ({r},{c}) outside the module")));
                }
                a[(r, c)] = v;
                continue;
            }
            let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
            let rest = rest.trim();
            match kw {
                "family" => fam = Some(rest.to_string()),
                "p" | "q" | "q0" | "q1" => {
                    let v = parse_rational(rest).map_err(|_| perr(line, format!("bad rational '{rest}'")))?;
                    vals.push((kw.to_string(), v));
                }
                "rank" => rank = Some(rest.parse::<usize>().map_err(|_| perr(line, "bad rank".into()))?),
                "dim" => dim = Some(rest.parse::<usize>().map_err(|_| perr(line, "bad dim".into()))?),
                "matrix" => {
                    let n = dim.ok_or_else(|| perr(line, "dim must precede matrices".into()))?;
                    let m = rank.ok_or_else(|| perr(line, "rank must precede matrices".into()))?;
                    let known = |pre: &str, lo: usize, hi: usize| rest.strip_prefix(pre).and_then(|x| x.parse::<usize>().ok()).is_some_and(|k| (lo..hi).contains(&k));
                    if !known("X", 1, m + 1) && !known("T", 0, m) {
                        return Err(perr(line, format!("unknown matrix '{rest}'")));
                    }
                    if mats.iter().any(|(k, _)| k == rest) {
                        return Err(perr(line, format!("matrix {rest} listed twice")));
                    }
                    open = Some((rest.to_string(), Matrix::zeros(n, n)));
                }
                _ => return Err(perr(line, format!("unknown keyword '{kw}'"))),
            }
        }
        if open.is_some() {
            return Err(perr(text.lines().count(), "matrix without 'end'".into()));
        }
        let get = |k: &str| vals.iter().find(|(n, _)| n == k).map(|(_, v)| v.clone()).ok_or_else(|| perr(0, format!("missing {k}")));
        let params = match fam.as_deref() {
            Some("B") => HeckeParams::B { p: get("p")?, q: get("q")? },
            Some("C") => HeckeParams::C { p: get("p")?, q0: get("q0")?, q1: get("q1")? },
            _ => return Err(perr(0, "missing or unknown family".into())),
        };
        params.validate()?;
        let (m, n) = (rank.ok_or_else(|| perr(0, "missing rank".into()))?, dim.ok_or_else(|| perr(0, "missing dim".into()))?);
        let find = |name: String| mats.iter().find(|(k, _)| *k == name).map(|(_, a)| a.clone()).unwrap_or_else(|| Matrix::zeros(n, n));
        let x = (1..=m).map(|l| find(format!("X{l}"))).collect();
        let t = (0..m).map(|k| find(format!("T{k}"))).collect();
        HeckeModule::new(params, n, x, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;
    use crate::ground::{int, rat};

    /// The explicit two-dimensional module with X_1 = diag(i, 1/i).
    pub fn two_dim(i: Rational, q: Rational) -> HeckeModule {
        let a = &q - &q.recip();
        let b = Rational::one() - &i * &i;
        let i2 = &i * &i;
        let t0 = Matrix::from_rows(vec![
            vec![-(&i2 * &a) / &b, &a * &a - &(&b * &b) / &i2],
            vec![-(&i2 / &(&b * &b)), &a / &b],
        ]);
        let x1 = Matrix::from_rows(vec![vec![i.clone(), Rational::zero()], vec![Rational::zero(), i.recip()]]);
        HeckeModule::new(HeckeParams::B { p: int(2), q }, 2, vec![x1], vec![t0]).unwrap()
    }

    #[test]
    fn explicit_two_dimensional_module() {
        let h = two_dim(int(8), int(2));
        assert!(h.verify().passed(), "{}", h.verify());
        assert_eq!(h.check_intertwiner(0).unwrap(), Some(true));
        let mut bad = h.clone();
        bad.t[0] = &bad.t[0] + &Matrix::identity(2);
        assert!(bad.verify().failures.iter().any(|f| f.starts_with("(d)")));
    }

    #[test]
    fn rank_zero_is_vacuous() {
        let h = HeckeModule::new(HeckeParams::B { p: int(2), q: int(3) }, 1, vec![], vec![]).unwrap();
        assert!(h.verify().passed());
        assert_eq!(h.verify().checked, 0);
    }

    #[test]
    fn scalar_x_makes_intertwiner_singular() {
        let x = Matrix::scalar(1, &rat(1, 3));
        let h = HeckeModule::new(HeckeParams::B { p: int(2), q: int(3) }, 1, vec![x.clone(), x], vec![Matrix::scalar(1, &int(3)), Matrix::scalar(1, &int(2))])
            .unwrap();
        // X1 = X2 scalar: p X1 − p⁻¹ X2 is invertible, but φ_1 − 1 vanishes; the B(q) pair is fine
        assert!(h.intertwiner(1).is_ok());
        let y = Matrix::scalar(1, &int(2));
        let h2 = HeckeModule::new(HeckeParams::B { p: int(2), q: int(3) }, 1, vec![y.clone(), Matrix::scalar(1, &int(8))], vec![Matrix::identity(1), Matrix::identity(1)]).unwrap();
        assert!(matches!(h2.intertwiner(1), Err(Error::SingularDenominator(_))));
    }

    #[test]
    fn text_round_trip() {
        let h = two_dim(int(8), int(5));
        let back = HeckeModule::parse(&h.to_text()).unwrap();
        assert_eq!(back, h);
        assert!(matches!(HeckeModule::parse("family B\np 2\nq 2\nrank 1\ndim 1\nmatrix X1\n0 0 zz\nend\n"), Err(Error::Parse { line: 7, .. })));
    }
}
