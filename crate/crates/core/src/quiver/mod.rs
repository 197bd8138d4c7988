//! Quivers with involution, weights λ, dimension vectors and θ-sequences.

mod config;

use std::collections::HashMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ground::rational::fmt_short;
use crate::ground::{Poly, Rational};
use crate::hecke::HeckeParams;

pub use config::{parse_config, parse_nu, parse_seq, QuiverConfig};

/// Largest |ν| accepted by the sequence enumerators.
pub const MAX_SEQ_SIZE: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub id: String,
    pub value: Option<Rational>,
}

/// Γ with arrow counts h(i,j), involution θ and weight λ.
#[derive(Clone, Debug, PartialEq)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    h: Vec<Vec<u32>>,
    theta: Vec<usize>,
    lambda: Vec<u32>,
    index: HashMap<String, usize>,
    corrupt_q: bool,
}

/// Input for [`Quiver::build_abstract`]; vertices referenced by id.
#[derive(Clone, Debug, Default)]
pub struct AbstractSpec {
    pub vertices: Vec<(String, Option<Rational>)>,
    pub arrows: Vec<(String, String, u32)>,
    pub theta: Vec<(String, String)>,
    pub lambda: Vec<(String, u32)>,
}

impl Quiver {
    /// Hecke type B: one arrow a → b iff a = p²b; θ(i) = i⁻¹; λ(i) = 1 iff i = ±q.
    pub fn build_from_hecke_b(values: &[Rational], p: &Rational, q: &Rational) -> Result<Quiver> {
        check_param("p", p)?;
        check_param("q", q)?;
        let lam = |x: &Rational| u32::from(x == q || *x == -q.clone());
        Self::from_values(values, p, lam)
    }

    /// Hecke type C: λ = Σ_{I∩{−q0,q1}} if −q0 ≠ q1, else 2·Σ_{I∩{q1}}.
    pub fn build_from_hecke_c(values: &[Rational], p: &Rational, q0: &Rational, q1: &Rational) -> Result<Quiver> {
        check_param("p", p)?;
        check_param("q0", q0)?;
        check_param("q1", q1)?;
        let mq0 = -q0.clone();
        let lam = |x: &Rational| {
            if mq0 == *q1 {
                if x == q1 {
                    2
                } else {
                    0
                }
            } else {
                u32::from(*x == mq0) + u32::from(x == q1)
            }
        };
        Self::from_values(values, p, lam)
    }

    pub fn build_from_params(values: &[Rational], params: &HeckeParams) -> Result<Quiver> {
        match params {
            HeckeParams::B { p, q } => Self::build_from_hecke_b(values, p, q),
            HeckeParams::C { p, q0, q1 } => Self::build_from_hecke_c(values, p, q0, q1),
        }
    }

    fn from_values(values: &[Rational], p: &Rational, lam: impl Fn(&Rational) -> u32) -> Result<Quiver> {
        let mut vals: Vec<Rational> = values.to_vec();
        vals.sort();
        vals.dedup();
        for x in &vals {
            if x.abs().is_one() {
                return Err(Error::ForbiddenVertex(fmt_short(x)));
            }
            if x.is_zero() || !vals.contains(&x.recip()) {
                return Err(Error::NotThetaStable(fmt_short(x)));
            }
        }
        let p2 = p * p;
        let n = vals.len();
        let vertices: Vec<Vertex> = vals.iter().map(|x| Vertex { id: fmt_short(x), value: Some(x.clone()) }).collect();
        let h = (0..n).map(|a| (0..n).map(|b| u32::from(vals[a] == &p2 * &vals[b])).collect()).collect();
        let theta = (0..n).map(|a| vals.iter().position(|y| *y == vals[a].recip()).unwrap()).collect();
        let lambda = vals.iter().map(lam).collect();
        Self::assemble(vertices, h, theta, lambda)
    }

    pub fn build_abstract(spec: &AbstractSpec) -> Result<Quiver> {
        let n = spec.vertices.len();
        let mut index = HashMap::new();
        for (k, (id, _)) in spec.vertices.iter().enumerate() {
            if index.insert(id.clone(), k).is_some() {
                return Err(Error::Parse { line: 0, msg: format!("duplicate vertex {id}") });
            }
        }
        let find = |id: &str| index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()));
        let mut h = vec![vec![0u32; n]; n];
        for (a, b, c) in &spec.arrows {
            h[find(a)?][find(b)?] += c;
        }
        let mut theta = vec![usize::MAX; n];
        for (a, b) in &spec.theta {
            let (a, b) = (find(a)?, find(b)?);
            for (x, y) in [(a, b), (b, a)] {
                if theta[x] != usize::MAX && theta[x] != y {
                    return Err(Error::ThetaNotInvolution(spec.vertices[x].0.clone()));
                }
                theta[x] = y;
            }
        }
        if let Some(k) = theta.iter().position(|&t| t == usize::MAX) {
            return Err(Error::ThetaNotInvolution(spec.vertices[k].0.clone()));
        }
        let mut lambda = vec![0u32; n];
        for (a, l) in &spec.lambda {
            lambda[find(a)?] = *l;
        }
        let vertices = spec.vertices.iter().map(|(id, v)| Vertex { id: id.clone(), value: v.clone() }).collect();
        Self::assemble(vertices, h, theta, lambda)
    }

    fn assemble(vertices: Vec<Vertex>, h: Vec<Vec<u32>>, theta: Vec<usize>, lambda: Vec<u32>) -> Result<Quiver> {
        let n = vertices.len();
        let id = |k: usize| vertices[k].id.clone();
        for a in 0..n {
            if theta[a] >= n || theta[theta[a]] != a {
                return Err(Error::ThetaNotInvolution(id(a)));
            }
            if theta[a] == a {
                return Err(Error::ThetaFixedPoint(id(a)));
            }
            if h[a][a] != 0 {
                return Err(Error::OneLoop(id(a)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if h[a][b] != h[theta[b]][theta[a]] {
                    return Err(Error::ArrowAsymmetry(id(a), id(b)));
                }
            }
        }
        let index = vertices.iter().enumerate().map(|(k, v)| (v.id.clone(), k)).collect();
        Ok(Quiver { vertices, h, theta, lambda, index, corrupt_q: false })
    }

    /// Negative-control copy whose Q-polynomials carry the wrong sign.
    pub fn with_corrupted_q(&self) -> Quiver {
        Quiver { corrupt_q: true, ..self.clone() }
    }

    pub fn is_q_corrupted(&self) -> bool {
        self.corrupt_q
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn id(&self, i: usize) -> &str {
        &self.vertices[i].id
    }

    pub fn value(&self, i: usize) -> Result<&Rational> {
        self.vertices[i].value.as_ref().ok_or_else(|| Error::MissingVertexValue(self.id(i).to_string()))
    }

    pub fn find(&self, id: &str) -> Result<usize> {
        self.index.get(id.trim()).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn find_value(&self, x: &Rational) -> Option<usize> {
        self.vertices.iter().position(|v| v.value.as_ref() == Some(x))
    }

    pub fn h(&self, i: usize, j: usize) -> u32 {
        self.h[i][j]
    }

    pub fn theta(&self, i: usize) -> usize {
        self.theta[i]
    }

    pub fn theta_map(&self) -> &[usize] {
        &self.theta
    }

    pub fn lambda(&self, i: usize) -> u32 {
        self.lambda[i]
    }

    /// i·j = −h(i,j) − h(j,i), i·i = 2.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else {
            -(self.h[i][j] as i64) - self.h[j][i] as i64
        }
    }

    /// Q_{i,j}(u,v) as a polynomial in 2 variables (u = x1, v = x2).
    pub fn q_poly(&self, i: usize, j: usize) -> Poly {
        let u = Poly::var(2, 0);
        let v = Poly::var(2, 1);
        self.q_eval(i, j, &u, &v)
    }

    /// Q_{i,j}(u,v) = (−1)^{h(i,j)}(u−v)^{−i·j} for i ≠ j, and 0 for i = j.
    pub fn q_eval(&self, i: usize, j: usize, u: &Poly, v: &Poly) -> Poly {
        if i == j {
            return Poly::zero(u.nvars());
        }
        let base = (u - v).pow((-self.cartan(i, j)) as u32);
        let neg = (self.h[i][j] % 2 == 1) ^ self.corrupt_q;
        if neg {
            -base
        } else {
            base
        }
    }

    pub fn is_theta_symmetric(&self, nu: &DimVector) -> bool {
        (0..self.n()).all(|i| nu.0[i] == nu.0[self.theta[i]])
    }

    /// Right halves (i_1..i_m) of all θ-sequences with content ν.
    pub fn sequences(&self, nu: &DimVector) -> Result<Vec<Seq>> {
        if !self.is_theta_symmetric(nu) {
            return Err(Error::NotThetaSymmetric);
        }
        if nu.size() > MAX_SEQ_SIZE {
            return Err(Error::RankTooLarge(nu.size() / 2));
        }
        // orbit budget: positions drawn from {a, θa} for the representative a < θa
        let mut budget: Vec<u32> = (0..self.n()).map(|a| if a < self.theta[a] { nu.0[a] } else { 0 }).collect();
        let m = budget.iter().sum::<u32>() as usize;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m);
        self.seq_rec(m, &mut budget, &mut cur, &mut out);
        Ok(out)
    }

    fn seq_rec(&self, m: usize, budget: &mut [u32], cur: &mut Vec<usize>, out: &mut Vec<Seq>) {
        if cur.len() == m {
            out.push(Seq(cur.clone()));
            return;
        }
        for v in 0..self.n() {
            let rep = v.min(self.theta[v]);
            if budget[rep] > 0 {
                budget[rep] -= 1;
                cur.push(v);
                self.seq_rec(m, budget, cur, out);
                cur.pop();
                budget[rep] += 1;
            }
        }
    }

    /// All words in I^ν (type A).
    pub fn plain_sequences(&self, nu: &DimVector) -> Result<Vec<Seq>> {
        if nu.size() > MAX_SEQ_SIZE {
            return Err(Error::RankTooLarge(nu.size()));
        }
        let mut budget = nu.0.clone();
        let m = nu.size();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m);
        fn rec(n: usize, m: usize, budget: &mut [u32], cur: &mut Vec<usize>, out: &mut Vec<Seq>) {
            if cur.len() == m {
                out.push(Seq(cur.clone()));
                return;
            }
            for v in 0..n {
                if budget[v] > 0 {
                    budget[v] -= 1;
                    cur.push(v);
                    rec(n, m, budget, cur, out);
                    cur.pop();
                    budget[v] += 1;
                }
            }
        }
        rec(self.n(), m, &mut budget, &mut cur, &mut out);
        Ok(out)
    }

    /// Content of a θ-sequence given by its right half.
    pub fn theta_content(&self, s: &Seq) -> DimVector {
        let mut nu = DimVector::zero(self.n());
        for &i in &s.0 {
            nu.0[i] += 1;
            nu.0[self.theta[i]] += 1;
        }
        nu
    }

    pub fn plain_content(&self, s: &Seq) -> DimVector {
        let mut nu = DimVector::zero(self.n());
        for &i in &s.0 {
            nu.0[i] += 1;
        }
        nu
    }

    /// Full sequence (i_{1−m}, …, i_m) from the right half.
    pub fn full_sequence(&self, s: &Seq) -> Vec<usize> {
        let mut v: Vec<usize> = s.0.iter().rev().map(|&i| self.theta[i]).collect();
        v.extend(&s.0);
        v
    }

    /// Entry i_l for l ∈ {1−m..m}.
    pub fn entry(&self, s: &Seq, l: i64) -> usize {
        if l >= 1 {
            s.0[(l - 1) as usize]
        } else {
            self.theta[s.0[(-l) as usize]]
        }
    }

    pub fn render_theta_seq(&self, s: &Seq) -> String {
        let ids: Vec<&str> = self.full_sequence(s).into_iter().map(|i| self.id(i)).collect();
        format!("({})", ids.join(","))
    }

    pub fn render_plain_seq(&self, s: &Seq) -> String {
        let ids: Vec<&str> = s.0.iter().map(|&i| self.id(i)).collect();
        format!("({})", ids.join(","))
    }

    pub fn render_nu(&self, nu: &DimVector) -> String {
        let parts: Vec<String> = (0..self.n())
            .filter(|&i| nu.0[i] > 0)
            .map(|i| if nu.0[i] == 1 { self.id(i).to_string() } else { format!("{}*{}", nu.0[i], self.id(i)) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    /// ν·i with the Cartan pairing.
    pub fn pair_nu(&self, nu: &DimVector, i: usize) -> i64 {
        (0..self.n()).map(|k| nu.0[k] as i64 * self.cartan(k, i)).sum()
    }
}

fn check_param(name: &str, x: &Rational) -> Result<()> {
    if x.abs().is_one() || x.is_zero() {
        return Err(Error::DegenerateParameter(format!("{name}={}", fmt_short(x))));
    }
    Ok(())
}

/// Dimension vector indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum::<u32>() as usize
    }

    pub fn add_vertex(&mut self, i: usize, c: u32) {
        self.0[i] += c;
    }
}

/// A sequence of vertex indices: the right half (i_1..i_m) of a θ-sequence,
/// or a whole word for type A.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Seq(pub Vec<usize>);

impl Seq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::rational::{int, rat};

    pub(crate) fn window() -> Quiver {
        Quiver::build_from_hecke_b(&[int(2), int(8), rat(1, 2), rat(1, 8)], &int(2), &int(2)).unwrap()
    }

    #[test]
    fn hecke_window() {
        let q = window();
        let v = |s: &str| q.find(s).unwrap();
        assert_eq!(q.h(v("8"), v("2")), 1);
        assert_eq!(q.h(v("1/2"), v("1/8")), 1);
        // 2 = p²·(1/2), so the window is the chain 8 → 2 → 1/2 → 1/8
        assert_eq!(q.h(v("2"), v("1/2")), 1);
        let arrows: u32 = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).map(|(a, b)| q.h(a, b)).sum();
        assert_eq!(arrows, 3);
        assert_eq!(q.lambda(v("2")), 1);
        assert_eq!(q.lambda(v("8")) + q.lambda(v("1/2")) + q.lambda(v("1/8")), 0);
        assert_eq!(q.theta(v("2")), v("1/2"));
        assert_eq!(q.q_poly(v("2"), v("8")), &Poly::var(2, 0) - &Poly::var(2, 1));
        assert!(q.q_poly(v("2"), v("2")).is_zero());
        assert!(q.q_poly(v("2"), v("1/8")).is_one());
    }

    #[test]
    fn hecke_no_arrows() {
        let q = Quiver::build_from_hecke_b(&[int(3), rat(1, 3)], &int(2), &int(5)).unwrap();
        assert_eq!(q.h(0, 1) + q.h(1, 0), 0);
        assert_eq!(q.lambda(0) + q.lambda(1), 0);
    }

    #[test]
    fn hecke_errors() {
        assert!(matches!(Quiver::build_from_hecke_b(&[int(1)], &int(2), &int(2)), Err(Error::ForbiddenVertex(_))));
        assert!(matches!(Quiver::build_from_hecke_b(&[int(2)], &int(2), &int(2)), Err(Error::NotThetaStable(_))));
        assert!(matches!(
            Quiver::build_from_hecke_b(&[int(2), rat(1, 2)], &int(-1), &int(2)),
            Err(Error::DegenerateParameter(_))
        ));
    }

    #[test]
    fn hecke_c_lambda() {
        let q = Quiver::build_from_hecke_c(&[int(3), rat(1, 3)], &int(2), &int(-3), &int(5)).unwrap();
        assert_eq!(q.lambda(q.find("3").unwrap()), 1);
        let q = Quiver::build_from_hecke_c(&[int(3), rat(1, 3)], &int(2), &int(-3), &int(3)).unwrap();
        assert_eq!(q.lambda(q.find("3").unwrap()), 2);
        assert_eq!(q.lambda(q.find("1/3").unwrap()), 0);
        let q = Quiver::build_from_hecke_c(&[int(7), rat(1, 7)], &int(2), &int(-3), &int(5)).unwrap();
        assert_eq!(q.lambda(0) + q.lambda(1), 0);
    }

    fn spec(arrows: &[(&str, &str, u32)], theta: &[(&str, &str)]) -> AbstractSpec {
        AbstractSpec {
            vertices: vec![("a".into(), None), ("b".into(), None)],
            arrows: arrows.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), *c)).collect(),
            theta: theta.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            lambda: vec![],
        }
    }

    #[test]
    fn abstract_validation() {
        assert!(Quiver::build_abstract(&spec(&[("a", "b", 1), ("b", "a", 1)], &[("a", "b")])).is_ok());
        assert!(matches!(
            Quiver::build_abstract(&spec(&[], &[("a", "a"), ("b", "b")])),
            Err(Error::ThetaFixedPoint(_))
        ));
        assert!(matches!(Quiver::build_abstract(&spec(&[("a", "a", 1)], &[("a", "b")])), Err(Error::OneLoop(_))));
        // θ-swapped pair: a → b is its own image
        assert!(Quiver::build_abstract(&spec(&[("a", "b", 1)], &[("a", "b")])).is_ok());
        let mut four = spec(&[("a", "c", 1)], &[("a", "b"), ("c", "d")]);
        four.vertices.extend([("c".into(), None), ("d".into(), None)]);
        assert!(matches!(Quiver::build_abstract(&four), Err(Error::ArrowAsymmetry(_, _))));
        four.arrows.push(("d".into(), "b".into(), 1));
        assert!(Quiver::build_abstract(&four).is_ok());
    }

    #[test]
    fn sequence_enumeration() {
        let q = window();
        let mut nu = DimVector::zero(4);
        assert_eq!(q.sequences(&nu).unwrap(), vec![Seq(vec![])]);
        let (a, ta) = (q.find("2").unwrap(), q.find("1/2").unwrap());
        nu.0[a] = 1;
        nu.0[ta] = 1;
        assert_eq!(q.sequences(&nu).unwrap().len(), 2);
        nu.0[a] = 2;
        nu.0[ta] = 2;
        let s = q.sequences(&nu).unwrap();
        assert_eq!(s.len(), 4);
        for x in &s {
            assert_eq!(q.theta_content(x), nu);
        }
        nu.0[ta] = 1;
        assert_eq!(q.sequences(&nu), Err(Error::NotThetaSymmetric));
    }

    #[test]
    fn q_symmetry() {
        let q = window();
        let (u, v) = (Poly::var(2, 0), Poly::var(2, 1));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(q.q_eval(i, j, &u, &v), q.q_eval(j, i, &v, &u));
            }
        }
    }
}
