//! Transport between finite-dimensional KLR modules of type B and modules over
//! the affine Hecke algebras of types B and C with spectrum in the window.
//!
//! On 1_i M the generators act by X_l = i_l⁻¹ f(κ_l) and T_k = A(κ) σ_k + B(κ),
//! with f(κ) = (2+κ)/(2−κ). The coefficient A is evaluated on the block that
//! σ_k (or π) lands in, B on the source block; the vertex values always come from
//! the source sequence.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::One;

use super::{HeckeModule, HeckeParams};
use crate::error::{Error, Result};
use crate::fmod::GradedModule;
use crate::ground::{fmt_rational, Matrix, Poly, RatFun, Rational};
use crate::klr::{Flavor, GenKind, Shape};
use crate::quiver::{DimVector, Quiver, Seq};

/// The power series f with f(0) = 1 used for X_l = i_l⁻¹ f(κ_l).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Series {
    /// (2+κ)/(2−κ); satisfies f(−κ) f(κ) = 1
    Cayley,
    /// 1+κ; kept to show that the type-B T_0 relations need f(−κ) f(κ) = 1
    #[cfg_attr(not(test), allow(dead_code))]
    Linear,
}

impl Series {
    fn f(self, m: usize, l: i64) -> RatFun {
        let k = Poly::kappa(m, l);
        let one = Poly::one(m);
        let two = Poly::constant(m, Rational::from_integer(2.into()));
        match self {
            Series::Cayley => RatFun::new(&two + &k, &two - &k).expect("nonzero denominator"),
            Series::Linear => RatFun::from_poly(&one + &k),
        }
    }

    /// Inverse of f on a unipotent matrix.
    fn g(self, y: &Matrix) -> Result<Matrix> {
        let id = Matrix::identity(y.rows());
        match self {
            Series::Cayley => {
                let inv = (y + &id).inverse().ok_or_else(|| Error::SingularDenominator("Y + 1".into()))?;
                Ok((&(y - &id) * &inv).scale(&Rational::from_integer(2.into())))
            }
            Series::Linear => Ok(y - &id),
        }
    }
}

/// Checks that the quiver is the one attached to `params` on its own values.
pub fn check_params(q: &Quiver, params: &HeckeParams) -> Result<()> {
    params.validate()?;
    let values: Vec<Rational> = (0..q.n()).map(|i| q.value(i).cloned()).collect::<Result<_>>()?;
    let expect = Quiver::build_from_params(&values, params)?;
    for a in 0..q.n() {
        let ea = expect.find_value(q.value(a)?).expect("same values");
        if q.lambda(a) != expect.lambda(ea) {
            return Err(Error::ParamMismatch(format!("lambda({}) = {} but {params} gives {}", q.id(a), q.lambda(a), expect.lambda(ea))));
        }
        for b in 0..q.n() {
            let eb = expect.find_value(q.value(b)?).expect("same values");
            if q.h(a, b) != expect.h(ea, eb) {
                return Err(Error::ParamMismatch(format!("arrows {} -> {} differ from the arrows for {params}", q.id(a), q.id(b))));
            }
        }
    }
    Ok(())
}

struct Dict {
    m: usize,
    params: HeckeParams,
    series: Series,
}

impl Dict {
    fn c(&self, x: &Rational) -> RatFun {
        RatFun::constant(self.m, x.clone())
    }

    fn kappa(&self, l: i64) -> RatFun {
        RatFun::from_poly(Poly::kappa(self.m, l))
    }

    fn f(&self, l: usize) -> RatFun {
        self.series.f(self.m, l as i64)
    }

    /// (A, B) with T_k 1_i = A σ_k 1_i + B 1_i, given the source values.
    fn coeffs(&self, k: usize, vals: &[Rational]) -> Result<(RatFun, RatFun)> {
        if k >= 1 {
            self.coeffs_s(k, &vals[k - 1], &vals[k])
        } else {
            match &self.params {
                HeckeParams::B { q, .. } => self.coeffs_b0(q, &vals[0]),
                HeckeParams::C { q0, q1, .. } => self.coeffs_c0(q0, q1, &vals[0]),
            }
        }
    }

    fn coeffs_s(&self, k: usize, a: &Rational, b: &Rational) -> Result<(RatFun, RatFun)> {
        let p = self.params.p();
        let pi = p.recip();
        let (fk, fk1) = (self.f(k), self.f(k + 1));
        let dk = &self.kappa(k as i64) - &self.kappa(k as i64 + 1);
        if b == a {
            let num = &(&fk.scale(p) - &fk1.scale(&pi)) * &dk;
            Ok((num.div(&(&fk - &fk1))?, self.c(p)))
        } else if *b == p * p * a {
            let den = &(&fk.scale(&pi) - &fk1.scale(p)) * &dk;
            let a_ = (&fk - &fk1).div(&den)?;
            let b_ = fk1.scale(&(&pi * &pi - Rational::one())).div(&(&fk.scale(p) - &fk1.scale(&pi)))?;
            Ok((a_, b_))
        } else {
            let a_ = (&fk.scale(&(p * a)) - &fk1.scale(&(&pi * b))).div(&(&fk.scale(a) - &fk1.scale(b)))?;
            let b_ = fk1.scale(&((&pi - p) * a)).div(&(&fk.scale(b) - &fk1.scale(a)))?;
            Ok((a_, b_))
        }
    }

    fn coeffs_b0(&self, q: &Rational, c: &Rational) -> Result<(RatFun, RatFun)> {
        let f = self.f(1);
        let f2 = &f * &f;
        let one = RatFun::one(self.m);
        let qi = q.recip();
        if c == q || *c == -q.clone() {
            let a = (&f2 - &one).div(&(&(&self.c(&qi) - &f2.scale(q)) * &self.kappa(1)))?;
            let b = f2.scale(&(&qi * &qi - Rational::one())).div(&(&self.c(q) - &f2.scale(&qi)))?;
            Ok((a, b))
        } else {
            let c2 = c * c;
            let a = (&self.c(q) - &f2.scale(&(&qi * &c2))).div(&(&one - &f2.scale(&c2)))?;
            let b = self.c(&(q - &qi)).div(&(&one - &f2.inverse()?.scale(&c2)))?;
            Ok((a, b))
        }
    }

    fn coeffs_c0(&self, q0: &Rational, q1: &Rational, c: &Rational) -> Result<(RatFun, RatFun)> {
        let f = self.f(1);
        let f2 = &f * &f;
        let one = RatFun::one(self.m);
        let k1 = self.kappa(1);
        let (q0i, q1i) = (q0.recip(), q1.recip());
        let at_q1 = c == q1;
        let at_mq0 = *c == -q0.clone();
        let fm1 = &f - &one;
        if at_q1 && at_mq0 {
            let a = (&fm1 * &fm1).div(&(&(&f2.scale(q1) - &self.c(&q1i)) * &(&k1 * &k1)))?;
            let b = (&f2.scale(&(&q0i * &q1i - Rational::one())) + &f.scale(&Rational::from_integer(2.into())))
                .div(&(&f2.scale(&q1i) - &self.c(q1)))?;
            Ok((a, b))
        } else if at_q1 {
            let a = (&(&f.scale(q1) + &self.c(q0)) * &fm1).div(&(&(&one - &f2.scale(&(q1 * q1))) * &k1))?;
            let b = (&f2.scale(&(q0 - &q1i)) + &f.scale(&(q1 - q0))).div(&(&f2 - &self.c(&(q1 * q1))))?;
            Ok((a, b))
        } else if at_mq0 {
            let a = (&(&f.scale(q0) + &self.c(q1)) * &(-&fm1)).div(&(&(&f2.scale(&(q1 * q0)) - &self.c(&(q1 * &q0i))) * &k1))?;
            let b = (&f2.scale(&(q1 - &q0i)) - &f.scale(&(q1 - q0))).div(&(&f2.scale(&(q1 * &q0i)) - &self.c(&(q1 * q0))))?;
            Ok((a, b))
        } else {
            let a = (&(&f.scale(c) + &self.c(q0)) * &(&f.scale(c) - &self.c(q1))).div(&(&f2.scale(&(q1 * c * c)) - &self.c(q1)))?;
            let b = (&f2.scale(&(q1 * q0 - Rational::one())) + &f.scale(&((q1 - q0) * c))).div(&(&f2.scale(q1) - &self.c(&(q1 * c * c))))?;
            Ok((a, b))
        }
    }
}

fn seq_values(q: &Quiver, sh: &Shape, b: usize) -> Result<Vec<Rational>> {
    sh.seq(b).0.iter().map(|&v| q.value(v).cloned()).collect()
}

fn gen_for(k: usize) -> GenKind {
    if k == 0 {
        GenKind::Pi
    } else {
        GenKind::Sigma(k)
    }
}

fn kappas(m: &GradedModule, b: usize) -> Vec<Matrix> {
    (1..=m.rank()).map(|l| m.mat(GenKind::Kappa(l), b)).collect()
}

/// The Hecke module attached to a KLR module of type B.
pub fn transport(m: &GradedModule, params: &HeckeParams) -> Result<HeckeModule> {
    transport_with(m, params, Series::Cayley)
}

pub(crate) fn transport_with(m: &GradedModule, params: &HeckeParams, series: Series) -> Result<HeckeModule> {
    let sh = m.shape();
    if sh.flavor() != Flavor::B {
        return Err(Error::UnsupportedInvolution("transport needs flavor B".into()));
    }
    let q = sh.quiver();
    check_params(q, params)?;
    let r = sh.rank();
    let dict = Dict { m: r, params: params.clone(), series };
    let mut offset = BTreeMap::new();
    let mut n = 0;
    for (&b, d) in m.blocks() {
        offset.insert(b, n);
        n += d.len();
    }
    let mut x = vec![Matrix::zeros(n, n); r];
    let mut t = vec![Matrix::zeros(n, n); r];
    for (&b, &o) in &offset {
        let vals = seq_values(q, sh, b)?;
        let kb = kappas(m, b);
        let d = m.block_dim(b);
        for l in 1..=r {
            let xl = dict.f(l).eval_matrix(&kb, d)?.scale(&vals[l - 1].recip());
            x[l - 1].set_block(o, o, &xl);
        }
        for k in 0..r {
            let g = gen_for(k);
            let (a, bb) = dict.coeffs(k, &vals)?;
            let c = sh.gen_target(g, b);
            let bm = bb.eval_matrix(&kb, d)?;
            add_block(&mut t[k], o, o, &bm);
            if let Some(&oc) = offset.get(&c) {
                let am = a.eval_matrix(&kappas(m, c), m.block_dim(c))?;
                add_block(&mut t[k], oc, o, &(&am * &m.mat(g, b)));
            }
        }
    }
    HeckeModule::new(params.clone(), n, x, t)
}

fn add_block(a: &mut Matrix, r0: usize, c0: usize, b: &Matrix) {
    for (r, c, v) in b.nonzeros() {
        a[(r0 + r, c0 + c)] += v;
    }
}

/// A KLR module recovered from a Hecke module, and the basis it lives in.
#[derive(Clone, Debug)]
pub struct Inverse {
    pub module: GradedModule,
    /// columns: the new basis in old coordinates, blocks in shape order
    pub basis: Matrix,
}

/// Inverse transport: splits the space into joint generalized eigenspaces of
/// the X_l and reads off κ, σ and π. The result is ungraded.
pub fn inverse_transport(h: &HeckeModule, quiver: Arc<Quiver>) -> Result<Inverse> {
    let params = &h.params;
    check_params(&quiver, params)?;
    let rep = h.verify();
    if !rep.passed() {
        return Err(Error::InvalidModule(format!("not a Hecke module: {}", rep.failures[0])));
    }
    let (r, n) = (h.rank(), h.dim());
    let id = Matrix::identity(n);
    let mut parts: Vec<(Vec<usize>, Matrix)> = vec![(vec![], id.clone())];
    for l in 1..=r {
        let mut next = Vec::new();
        for (s, bas) in &parts {
            let mut got = 0;
            for v in 0..quiver.n() {
                let shifted = (&h.x[l - 1].scale(quiver.value(v)?) - &id).pow(n);
                let k = (&shifted * bas).kernel();
                if k.cols() > 0 {
                    got += k.cols();
                    let mut s2 = s.clone();
                    s2.push(v);
                    next.push((s2, bas * &k));
                }
            }
            if got < bas.cols() {
                return Err(Error::EigenvalueOutsideWindow(format!(
                    "X{l} has eigenvalues whose inverses are not vertex values ({} of {} dimensions missing)",
                    bas.cols() - got,
                    bas.cols()
                )));
            }
        }
        parts = next;
    }
    let mut nu: Option<DimVector> = None;
    for (s, _) in &parts {
        let c = quiver.theta_content(&Seq(s.clone()));
        match &nu {
            None => nu = Some(c),
            Some(x) if *x != c => return Err(Error::InvalidModule("spectrum spans several dimension vectors".into())),
            _ => {}
        }
    }
    let nu = nu.unwrap_or_else(|| DimVector::zero(quiver.n()));
    let sh = Shape::new(quiver.clone(), Flavor::B, nu)?;
    let mut placed: Vec<(usize, Matrix)> = parts.into_iter().map(|(s, b)| Ok((sh.seq_index(&Seq(s))?, b))).collect::<Result<_>>()?;
    placed.sort_by_key(|(b, _)| *b);
    let mut p = Matrix::zeros(n, 0);
    let mut offset = BTreeMap::new();
    let mut blocks = BTreeMap::new();
    for (b, bas) in &placed {
        offset.insert(*b, p.cols());
        blocks.insert(*b, vec![0; bas.cols()]);
        p = p.hstack(bas);
    }
    let h2 = h.conjugate(&p)?;
    let dim = |b: usize| blocks.get(&b).map_or(0, Vec::len);
    let sub = |a: &Matrix, rb: usize, cb: usize| a.submatrix(offset[&rb], offset[&cb], dim(rb), dim(cb));

    let series = Series::Cayley;
    let mut kap: BTreeMap<usize, Vec<Matrix>> = BTreeMap::new();
    let mut mats = BTreeMap::new();
    for &b in offset.keys() {
        let vals = seq_values(&quiver, &sh, b)?;
        let mut ks = Vec::new();
        for l in 1..=r {
            let y = sub(&h2.x[l - 1], b, b).scale(&vals[l - 1]);
            let k = series.g(&y)?;
            mats.insert((GenKind::Kappa(l), b), k.clone());
            ks.push(k);
        }
        kap.insert(b, ks);
    }
    let dict = Dict { m: r, params: params.clone(), series };
    for (&b, &ob) in &offset {
        let vals = seq_values(&quiver, &sh, b)?;
        for k in 0..r {
            let g = gen_for(k);
            let c = sh.gen_target(g, b);
            let (a, bb) = dict.coeffs(k, &vals)?;
            let bm = bb.eval_matrix(&kap[&b], dim(b))?;
            let tk = &h2.t[k];
            for (&d, &od) in &offset {
                if d != b && d != c && !tk.submatrix(od, ob, dim(d), dim(b)).is_zero() {
                    return Err(Error::InvalidModule(format!("T{k} does not map {} into {{itself, its image}}", sh.render_seq(b))));
                }
            }
            let mut tc = if offset.contains_key(&c) { sub(tk, c, b) } else { Matrix::zeros(0, dim(b)) };
            if c == b {
                tc = &tc - &bm;
            } else if sub(tk, b, b) != bm {
                return Err(Error::InvalidModule(format!("diagonal part of T{k} on {} does not match", sh.render_seq(b))));
            }
            if tc.is_zero() {
                continue;
            }
            let am = a.eval_matrix(&kap[&c], dim(c))?;
            let ai = am.inverse().ok_or_else(|| Error::SingularDenominator(format!("coefficient of T{k} on {}", sh.render_seq(c))))?;
            mats.insert((g, b), &ai * &tc);
        }
    }
    let module = GradedModule::new(sh, false, blocks, mats)?;
    let rep = module.validate();
    if !rep.passed() {
        return Err(Error::InvalidModule(format!("recovered module violates {}", rep.violations[0])));
    }
    Ok(Inverse { module, basis: p })
}

/// Generalized i⁻¹-eigenspace of X_m against the restriction e_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EiCheck {
    pub vertex: usize,
    pub hecke_dim: usize,
    pub klr_dim: usize,
}

impl EiCheck {
    pub fn ok(&self) -> bool {
        self.hecke_dim == self.klr_dim
    }
}

pub fn check_ei_compat(m: &GradedModule, params: &HeckeParams) -> Result<Vec<EiCheck>> {
    let r = m.rank();
    if r == 0 {
        return Err(Error::IndexOutOfRange { index: 0, rank: 0 });
    }
    let h = transport(m, params)?;
    let q = m.quiver();
    (0..q.n())
        .map(|i| {
            let mu = q.value(i)?.recip();
            let hecke_dim = h.generalized_eigenspace(r, &mu).cols();
            let klr_dim = m.restrict_e(i)?.map_or(0, |e| e.dim());
            Ok(EiCheck { vertex: i, hecke_dim, klr_dim })
        })
        .collect()
}

/// Readable dump of the coefficients on every block, for inspection.
pub fn render_dictionary(sh: &Shape, params: &HeckeParams) -> Result<String> {
    let q = sh.quiver();
    let dict = Dict { m: sh.rank(), params: params.clone(), series: Series::Cayley };
    let mut s = String::new();
    for b in 0..sh.seqs().len() {
        let vals = seq_values(q, sh, b)?;
        let vs: Vec<String> = vals.iter().map(fmt_rational).collect();
        s.push_str(&format!("{} [{}]\n", sh.render_seq(b), vs.join(",")));
        for k in 0..sh.rank() {
            let (a, bb) = dict.coeffs(k, &vals)?;
            s.push_str(&format!("  T{k} = ({}) {} + ({})\n", a.render("k"), if k == 0 { "pi".into() } else { format!("sigma{k}") }, bb.render("k")));
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmod::{build_crystal, induce_f};
    use crate::ground::{int, rat};

    fn window(vals: &[Rational], params: &HeckeParams) -> Arc<Quiver> {
        Arc::new(Quiver::build_from_params(vals, params).unwrap())
    }

    fn b_params(q: i64) -> HeckeParams {
        HeckeParams::B { p: int(2), q: int(q) }
    }

    fn b_window(q: i64) -> Arc<Quiver> {
        window(&[int(2), int(8), rat(1, 2), rat(1, 8)], &b_params(q))
    }

    fn round_trip(h: &HeckeModule, q: Arc<Quiver>) {
        let inv = inverse_transport(h, q).unwrap();
        let back = transport(&inv.module, &h.params).unwrap();
        assert_eq!(back, h.conjugate(&inv.basis).unwrap());
    }

    #[test]
    fn rank_one_values() {
        let params = b_params(2);
        let q = b_window(2);
        let g = build_crystal(q.clone(), 1).unwrap();
        let (a, b) = (int(2), int(1) / int(2));
        for n in g.nodes_at(1) {
            let h = transport(&n.witness, &params).unwrap();
            assert!(h.verify().passed(), "{}", h.verify());
            if h.dim() == 1 {
                let x = h.x[0][(0, 0)].clone();
                let t = h.t[0][(0, 0)].clone();
                if x == a {
                    assert_eq!(t, a);
                } else {
                    assert_eq!(x, b);
                    assert_eq!(t, -b.clone());
                }
            } else {
                let i = int(8);
                let aa = &a - &b;
                let bb = Rational::one() - &i * &i;
                let (u, w) = if h.x[0][(0, 0)] == i { (0, 1) } else { (1, 0) };
                assert_eq!(h.x[0][(w, w)], i.recip());
                assert_eq!(h.t[0][(u, u)], -(&i * &i * &aa) / &bb);
                assert_eq!(h.t[0][(w, w)], &aa / &bb);
                let off = &h.t[0][(u, w)] * &h.t[0][(w, u)];
                assert_eq!(off, Rational::one() - &(&aa * &aa * &i * &i) / &(&bb * &bb));
            }
            round_trip(&h, q.clone());
        }
    }

    #[test]
    fn crystal_witnesses_transport() {
        for (vals, params) in [
            (vec![int(2), int(8), rat(1, 2), rat(1, 8)], b_params(2)),
            (vec![int(2), int(8), rat(1, 2), rat(1, 8)], b_params(5)),
            (vec![int(7), int(63), rat(1, 7), rat(1, 63)], HeckeParams::B { p: int(3), q: int(7) }),
            (vec![int(-3), int(-12), rat(-1, 3), rat(-1, 12)], HeckeParams::C { p: int(2), q0: int(3), q1: int(5) }),
            (vec![int(5), int(20), rat(1, 5), rat(1, 20)], HeckeParams::C { p: int(2), q0: int(3), q1: int(5) }),
            (vec![int(3), int(12), rat(1, 3), rat(1, 12)], HeckeParams::C { p: int(2), q0: int(-3), q1: int(3) }),
        ] {
            let q = window(&vals, &params);
            let g = build_crystal(q.clone(), 2).unwrap();
            for n in &g.nodes {
                let h = transport(&n.witness, &params).unwrap();
                let rep = h.verify();
                assert!(rep.passed(), "{params} node {}: {rep}", n.id);
                if n.rank >= 1 {
                    round_trip(&h, q.clone());
                    assert!(check_ei_compat(&n.witness, &params).unwrap().iter().all(EiCheck::ok));
                }
            }
        }
    }

    #[test]
    fn type_c_with_equal_parameters_is_type_b() {
        let vals = [int(2), int(8), rat(1, 2), rat(1, 8)];
        let q = b_window(2);
        let c = HeckeParams::C { p: int(2), q0: int(2), q1: int(2) };
        let g = build_crystal(q.clone(), 2).unwrap();
        let qc = window(&vals, &c);
        assert_eq!(qc.theta_map(), q.theta_map());
        for n in &g.nodes {
            assert_eq!(transport(&n.witness, &b_params(2)).unwrap().t, transport(&n.witness, &c).unwrap().t);
        }
    }

    #[test]
    fn induced_modules_transport_and_need_the_cayley_series() {
        let params = b_params(2);
        let q = b_window(2);
        let t = GradedModule::trivial(q.clone(), Flavor::B).unwrap();
        let mut linear_failed = false;
        for i in 0..q.n() {
            for j in 0..q.n() {
                let m = induce_f(&induce_f(&t, i).unwrap(), j).unwrap();
                let h = transport(&m, &params).unwrap();
                assert!(h.verify().passed(), "{}", h.verify());
                round_trip(&h, q.clone());
                let hl = transport_with(&m, &params, Series::Linear).unwrap();
                linear_failed |= !hl.verify().passed();
            }
        }
        assert!(linear_failed);
    }

    #[test]
    fn mismatched_parameters_are_rejected() {
        let t = GradedModule::trivial(b_window(2), Flavor::B).unwrap();
        assert!(matches!(transport(&t, &b_params(5)), Err(Error::ParamMismatch(_))));
    }

    #[test]
    fn eigenvalue_outside_window() {
        // X1 = T0 = q is a Hecke module; its eigenvalue needs the vertex 1/2
        let h = HeckeModule::new(b_params(2), 1, vec![Matrix::scalar(1, &int(2))], vec![Matrix::scalar(1, &int(2))]).unwrap();
        assert!(h.verify().passed());
        let far = window(&[int(8), int(32), rat(1, 8), rat(1, 32)], &b_params(2));
        assert!(matches!(inverse_transport(&h, far), Err(Error::EigenvalueOutsideWindow(_))));
        assert!(inverse_transport(&h, b_window(2)).is_ok());
    }
}
