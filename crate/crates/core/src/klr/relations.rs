//! Defining relations checked as identities in the skew representation.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::{Flavor, GenKind, Shape, SkewElement};
use crate::error::Result;
use crate::ground::Poly;
use crate::weyl::Gen;

#[derive(Clone, Debug, PartialEq)]
pub struct RelationFailure {
    /// e.g. `B(c) sigma^2` or `A(e) braid`
    pub tag: String,
    pub instance: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, o: RelationReport) {
        self.checked += o.checked;
        self.failures.extend(o.failures);
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "relations checked: {}, failed: {}", self.checked, self.failures.len())?;
        for x in &self.failures {
            writeln!(f, "FAIL {} at {}", x.tag, x.instance)?;
        }
        Ok(())
    }
}

/// coeff · g₁⋯g_r · 1_source, the coefficient multiplied on the left.
#[derive(Clone, Debug, PartialEq)]
pub struct RelTerm {
    pub coeff: Poly,
    pub word: Vec<GenKind>,
}

/// One relation on one idempotent, in a form any representation can evaluate.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationInstance {
    pub tag: String,
    pub source: usize,
    pub label: String,
    pub lhs: Vec<RelTerm>,
    pub rhs: Vec<RelTerm>,
}

impl RelationInstance {
    pub fn failure(&self) -> RelationFailure {
        RelationFailure { tag: self.tag.clone(), instance: self.label.clone() }
    }
}

/// Checks every defining relation on every idempotent of the shape.
pub fn verify_relations(sh: &Arc<Shape>) -> Result<RelationReport> {
    let n = sh.seqs().len();
    let mut report = global_relations(sh)?;
    let per: Vec<Result<RelationReport>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut r = RelationReport::default();
            for inst in relation_instances(sh, i) {
                r.checked += 1;
                if eval_skew(sh, inst.source, &inst.lhs)? != eval_skew(sh, inst.source, &inst.rhs)? {
                    r.failures.push(inst.failure());
                }
            }
            Ok(r)
        })
        .collect();
    for r in per {
        report.merge(r?);
    }
    Ok(report)
}

fn eval_skew(sh: &Arc<Shape>, i: usize, terms: &[RelTerm]) -> Result<SkewElement> {
    let mut acc = SkewElement::zero(sh);
    for t in terms {
        let x = SkewElement::idempotent(sh, i).left_word(&t.word)?.left_poly(&t.coeff);
        acc = acc.add(&x)?;
    }
    Ok(acc)
}

fn tag(sh: &Shape, rel: &str) -> String {
    let fl = match sh.flavor() {
        Flavor::B => "B",
        Flavor::A => "A",
    };
    format!("{fl}{rel}")
}

/// Relations among global generators: idempotent orthogonality and transport
/// of idempotents. Module representations satisfy these by construction.
fn global_relations(sh: &Arc<Shape>) -> Result<RelationReport> {
    let mut report = RelationReport::default();
    let mut check = |tag: &str, inst: &dyn Fn() -> String, lhs: &SkewElement, rhs: &SkewElement| {
        report.checked += 1;
        if lhs != rhs {
            report.failures.push(RelationFailure { tag: tag.to_string(), instance: inst() });
        }
    };
    let one = |i: usize| SkewElement::idempotent(sh, i);
    let n = sh.seqs().len();
    let m = sh.rank();
    let t_idem = tag(sh, "(a) idempotents");
    for i in 0..n {
        for j in 0..n {
            let lhs = one(i).mul(&one(j))?;
            let rhs = if i == j { one(i) } else { SkewElement::zero(sh) };
            check(&t_idem, &|| format!("1_{} 1_{}", sh.render_seq(i), sh.render_seq(j)), &lhs, &rhs);
        }
    }
    let mut gens: Vec<(GenKind, Gen)> = (1..m).map(|k| (GenKind::Sigma(k), Gen::S(k))).collect();
    if sh.flavor() == Flavor::B && m >= 1 {
        gens.push((GenKind::Pi, Gen::Eps));
    }
    let t_tr = tag(sh, "(a) transport");
    for &(g, gg) in &gens {
        let x = SkewElement::generator(sh, g)?;
        let gi = sh.group().gen_index(gg);
        for i in 0..n {
            let lhs = x.mul(&one(i))?;
            let rhs = one(sh.act(gi, i)).mul(&x)?;
            check(&t_tr, &|| format!("{g:?} 1_{}", sh.render_seq(i)), &lhs, &rhs);
        }
    }
    for l in 1..=m {
        let x = SkewElement::generator(sh, GenKind::Kappa(l))?;
        for i in 0..n {
            let lhs = x.mul(&one(i))?;
            let rhs = one(i).mul(&x)?;
            check(&t_tr, &|| format!("kappa{l} 1_{}", sh.render_seq(i)), &lhs, &rhs);
        }
    }
    Ok(report)
}

fn q_at(sh: &Shape, a: usize, b: usize, u: &Poly, v: &Poly) -> Poly {
    sh.quiver().q_eval(a, b, u, v)
}

/// (Q(κ_{k+1},κ_k) − Q(κ_{k+1},κ_{k+2})) / (κ_k − κ_{k+2}), an exact polynomial quotient.
fn braid_rhs(sh: &Shape, i: usize, k: usize) -> Poly {
    let (a, b) = (sh.entry(i, k as i64), sh.entry(i, k as i64 + 1));
    let kk = |l: usize| sh.kappa(l as i64);
    let num = &q_at(sh, a, b, &kk(k + 1), &kk(k)) - &q_at(sh, a, b, &kk(k + 1), &kk(k + 2));
    num.div_exact(&(&kk(k) - &kk(k + 2))).expect("divided difference of a polynomial")
}

/// (x^N − y^N)/(x − y) = Σ_{a+b=N−1} x^a y^b.
fn divided_power_difference(x: &Poly, y: &Poly, n: u32) -> Poly {
    let mut s = Poly::zero(x.nvars());
    for a in 0..n {
        s = &s + &(&x.pow(a) * &y.pow(n - 1 - a));
    }
    s
}

struct Builder<'a> {
    sh: &'a Shape,
    i: usize,
    seq: String,
    out: Vec<RelationInstance>,
}

impl Builder<'_> {
    fn one(&self) -> Poly {
        Poly::one(self.sh.rank())
    }

    fn w(&self, word: &[GenKind]) -> RelTerm {
        RelTerm { coeff: self.one(), word: word.to_vec() }
    }

    fn pw(&self, coeff: Poly, word: &[GenKind]) -> RelTerm {
        RelTerm { coeff, word: word.to_vec() }
    }

    fn push(&mut self, tag: &str, label: String, lhs: Vec<RelTerm>, rhs: Vec<RelTerm>) {
        let label = if label.is_empty() { format!("1_{}", self.seq) } else { format!("{label} 1_{}", self.seq) };
        self.out.push(RelationInstance { tag: tag.to_string(), source: self.i, label, lhs, rhs });
    }

    fn kappa_commute(&mut self, t: &str) {
        let m = self.sh.rank();
        for l in 1..=m {
            for l2 in l + 1..=m {
                let (a, b) = (GenKind::Kappa(l), GenKind::Kappa(l2));
                let (x, y) = (self.w(&[a, b]), self.w(&[b, a]));
                self.push(t, format!("l={l} l'={l2}"), vec![x], vec![y]);
            }
        }
    }

    /// (σ_kκ_l − κ_{s_k(l)}σ_k)1_i.
    fn sigma_kappa(&mut self, t: &str, k: usize) {
        let (sh, i) = (self.sh, self.i);
        let same = sh.entry(i, k as i64) == sh.entry(i, k as i64 + 1);
        for l in 1..=sh.rank() {
            let sl = if l == k {
                k + 1
            } else if l == k + 1 {
                k
            } else {
                l
            };
            let lhs = vec![self.w(&[GenKind::Sigma(k), GenKind::Kappa(l)]), self.pw(-self.one(), &[GenKind::Kappa(sl), GenKind::Sigma(k)])];
            let rhs = match (same, l) {
                (true, l) if l == k => vec![self.pw(-self.one(), &[])],
                (true, l) if l == k + 1 => vec![self.w(&[])],
                _ => vec![],
            };
            self.push(t, format!("k={k} l={l}"), lhs, rhs);
        }
    }

    fn braid(&mut self, t: &str, k: usize) {
        let (sh, i) = (self.sh, self.i);
        use GenKind::Sigma;
        let lhs = vec![self.w(&[Sigma(k + 1), Sigma(k), Sigma(k + 1)]), self.pw(-self.one(), &[Sigma(k), Sigma(k + 1), Sigma(k)])];
        let rhs = if sh.entry(i, k as i64) == sh.entry(i, k as i64 + 2) { vec![self.pw(braid_rhs(sh, i, k), &[])] } else { vec![] };
        self.push(t, format!("k={k}"), lhs, rhs);
    }

    fn sigma_square(&mut self, t: &str, k: usize) {
        let (sh, i) = (self.sh, self.i);
        let e = |l: usize| sh.entry(i, l as i64);
        let lhs = vec![self.w(&[GenKind::Sigma(k), GenKind::Sigma(k)])];
        let rhs = vec![self.pw(q_at(sh, e(k), e(k + 1), &sh.kappa(k as i64 + 1), &sh.kappa(k as i64)), &[])];
        self.push(t, format!("k={k}"), lhs, rhs);
    }

    fn far_commute(&mut self, t: &str, k: usize) {
        for k2 in k + 2..self.sh.rank() {
            let (a, b) = (GenKind::Sigma(k), GenKind::Sigma(k2));
            let (x, y) = (self.w(&[a, b]), self.w(&[b, a]));
            self.push(t, format!("k={k} k'={k2}"), vec![x], vec![y]);
        }
    }
}

/// All local relations at idempotent i, both sides applied to 1_i.
pub fn relation_instances(sh: &Shape, i: usize) -> Vec<RelationInstance> {
    let mut b = Builder { sh, i, seq: sh.render_seq(i), out: Vec::new() };
    match sh.flavor() {
        Flavor::B => local_b(&mut b),
        Flavor::A => local_a(&mut b),
    }
    b.out
}

fn local_b(b: &mut Builder) {
    let (sh, i) = (b.sh, b.i);
    let m = sh.rank();
    let q = sh.quiver();
    let e = |l: i64| sh.entry(i, l);
    if m == 0 {
        return;
    }
    use GenKind::*;
    b.kappa_commute("B(b) kappa");
    // πκ_l = κ_{ε₁(l)}π, with κ_{ε₁(1)} = κ₀ = −κ₁
    for l in 1..=m {
        let lhs = vec![b.w(&[Pi, Kappa(l)])];
        let rhs = vec![b.pw(sh.kappa(if l == 1 { 0 } else { l as i64 }), &[Pi])];
        b.push("B(b) pi kappa", format!("l={l}"), lhs, rhs);
    }
    for k in 1..m {
        b.sigma_square("B(c) sigma^2", k);
    }
    let pp = &sh.kappa(0).pow(q.lambda(e(0))) * &sh.kappa(1).pow(q.lambda(e(1)));
    let (lhs, rhs) = (vec![b.w(&[Pi, Pi])], vec![b.pw(pp, &[])]);
    b.push("B(c) pi^2", String::new(), lhs, rhs);
    for k in 1..m {
        b.far_commute("B(d) sigma sigma", k);
        if k != 1 {
            let (x, y) = (b.w(&[Pi, Sigma(k)]), b.w(&[Sigma(k), Pi]));
            b.push("B(d) pi sigma", format!("k={k}"), vec![x], vec![y]);
        }
    }
    if m >= 2 {
        let lhs = vec![b.w(&[Sigma(1), Pi, Sigma(1), Pi])];
        let mut rhs = vec![b.w(&[Pi, Sigma(1), Pi, Sigma(1)])];
        if e(0) == e(2) {
            let n = q.lambda(e(1)) + q.lambda(e(2));
            let mut dd = divided_power_difference(&sh.kappa(0), &sh.kappa(2), n);
            if q.lambda(e(2)) % 2 == 1 {
                dd = -dd;
            }
            rhs.push(b.pw(dd, &[Sigma(1)]));
        }
        b.push("B(e) (sigma pi)^2", String::new(), lhs, rhs);
    }
    for k in 1..m.saturating_sub(1) {
        b.braid("B(f) braid", k);
    }
    for k in 1..m {
        b.sigma_kappa("B(g) sigma kappa", k);
    }
}

fn local_a(b: &mut Builder) {
    let m = b.sh.rank();
    b.kappa_commute("A(b) kappa");
    for k in 1..m {
        b.sigma_square("A(c) sigma^2", k);
        b.far_commute("A(d) sigma sigma", k);
        b.sigma_kappa("A(f) sigma kappa", k);
    }
    for k in 1..m.saturating_sub(1) {
        b.braid("A(e) braid", k);
    }
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::*;
    use crate::quiver::DimVector;

    #[test]
    fn window_rank_two_passes() {
        for qq in [2, 5] {
            let q = window(qq);
            for parts in [&[("2", 2)][..], &[("2", 1), ("8", 1)], &[("8", 2)]] {
                let sh = shape_b(&q, parts);
                let r = verify_relations(&sh).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn corrupted_q_fails_sigma_square() {
        let q = Arc::new(window(2).with_corrupted_q());
        let sh = shape_b(&q, &[("2", 1), ("8", 1)]);
        let r = verify_relations(&sh).unwrap();
        assert!(r.failures.iter().any(|f| f.tag == "B(c) sigma^2"));
    }

    #[test]
    fn type_a_rank_three() {
        let q = window(2);
        let (a, b) = (q.find("2").unwrap(), q.find("8").unwrap());
        let mut nu = DimVector::zero(q.n());
        nu.add_vertex(a, 2);
        nu.add_vertex(b, 1);
        let sh = Shape::new(q, Flavor::A, nu).unwrap();
        let r = verify_relations(&sh).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn divided_difference() {
        let (x, y) = (Poly::var(2, 0), Poly::var(2, 1));
        let d = divided_power_difference(&x, &y, 3);
        assert_eq!(&d * &(&x - &y), &x.pow(3) - &y.pow(3));
        assert!(divided_power_difference(&x, &y, 0).is_zero());
    }
}

#[cfg(test)]
mod rank_three {
    use super::super::testutil::*;
    use super::*;

    #[test]
    fn window_rank_three_passes() {
        let q = window(2);
        for parts in [&[("2", 3)][..], &[("2", 2), ("8", 1)], &[("2", 1), ("8", 2)]] {
            let sh = shape_b(&q, parts);
            let r = verify_relations(&sh).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
