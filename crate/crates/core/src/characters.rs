//! Characters: sequence-indexed graded dimensions with a (1−v²)-denominator,
//! the shuffle product and characters of projectives.

use std::collections::BTreeMap;
use std::fmt::Write;

use num::{BigInt, Zero};

use crate::error::{Error, Result};
use crate::ground::{quantum_factorial, LaurentV};
use crate::klr::{seq_word_degree, Shape};
use crate::quiver::{Quiver, Seq};
use crate::weyl::{act_sequence, coset_reps, coset_reps_a, weyl_group, SignedPerm};

/// Σ_i coeff(i)·i / (1−v²)^denom. Sequences are right halves of θ-sequences
/// (`theta = true`) or plain words.
#[derive(Clone, Debug)]
pub struct Character {
    theta: bool,
    rank: usize,
    coeffs: BTreeMap<Seq, LaurentV>,
    denom: u32,
}

impl PartialEq for Character {
    fn eq(&self, o: &Self) -> bool {
        if self.theta != o.theta || self.rank != o.rank {
            return false;
        }
        let (a, b) = (self.with_denom(self.denom.max(o.denom)), o.with_denom(self.denom.max(o.denom)));
        a.coeffs == b.coeffs
    }
}

impl Character {
    pub fn zero(theta: bool, rank: usize) -> Self {
        Character { theta, rank, coeffs: BTreeMap::new(), denom: 0 }
    }

    /// The character of the trivial module k of θR_0.
    pub fn unit() -> Self {
        Self::single(true, Seq::default(), LaurentV::one(), 0)
    }

    pub fn single(theta: bool, s: Seq, c: LaurentV, denom: u32) -> Self {
        let mut x = Character { theta, rank: s.len(), coeffs: BTreeMap::new(), denom };
        x.add_coeff(s, &c);
        x
    }

    /// ch(R_j) = j/(1−v²) for the rank-1 plain algebra.
    pub fn plain_generator(j: usize) -> Self {
        Self::single(false, Seq(vec![j]), LaurentV::one(), 1)
    }

    pub fn is_theta(&self) -> bool {
        self.theta
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn coeffs(&self) -> &BTreeMap<Seq, LaurentV> {
        &self.coeffs
    }

    pub fn coeff(&self, s: &Seq) -> LaurentV {
        self.coeffs.get(s).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_coeff(&mut self, s: Seq, c: &LaurentV) {
        assert_eq!(s.len(), self.rank, "sequence length does not match the character rank");
        let e = self.coeffs.entry(s.clone()).or_default();
        *e = &*e + c;
        if e.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    /// Same character written over (1−v²)^d, d ≥ denom.
    pub fn with_denom(&self, d: u32) -> Character {
        assert!(d >= self.denom);
        Character {
            theta: self.theta,
            rank: self.rank,
            coeffs: self.coeffs.iter().map(|(s, c)| (s.clone(), c.mul_one_minus_v2_pow(d - self.denom))).collect(),
            denom: d,
        }
    }

    pub fn add(&self, o: &Character) -> Result<Character> {
        if self.theta != o.theta || self.rank != o.rank {
            return Err(Error::QuiverMismatch);
        }
        let d = self.denom.max(o.denom);
        let mut x = self.with_denom(d);
        for (s, c) in o.with_denom(d).coeffs {
            x.add_coeff(s, &c);
        }
        Ok(x)
    }

    pub fn scale(&self, c: &LaurentV) -> Character {
        let mut x = Character { coeffs: BTreeMap::new(), ..self.clone() };
        for (s, a) in &self.coeffs {
            x.add_coeff(s.clone(), &(a * c));
        }
        x
    }

    /// Multiplication by v^k (the grading shift [k] of the module).
    pub fn shift(&self, k: i64) -> Character {
        self.scale(&LaurentV::v_pow(k))
    }

    /// Coefficientwise bar involution v ↦ v⁻¹ (only for denom 0).
    pub fn bar(&self) -> Character {
        assert_eq!(self.denom, 0, "bar of a character with denominator");
        Character { coeffs: self.coeffs.iter().map(|(s, c)| (s.clone(), c.bar())).collect(), ..self.clone() }
    }

    pub fn min_max_degree(&self) -> Option<(i64, i64)> {
        let lo = self.coeffs.values().filter_map(|c| c.min_exp()).min()?;
        let hi = self.coeffs.values().filter_map(|c| c.max_exp()).max()?;
        Some((lo, hi))
    }

    /// Every coefficient lies in v^ε·ℤ[v², v⁻²] for one ε per sequence.
    pub fn parity_ok(&self) -> bool {
        self.coeffs.values().all(|c| c.parity().is_some())
    }

    /// Total dimension at v = 1 (denominator must be 0).
    pub fn dim_at_one(&self) -> BigInt {
        assert_eq!(self.denom, 0);
        self.coeffs.values().map(|c| c.at_one()).fold(BigInt::zero(), |a, b| a + b)
    }

    /// The coefficient at sequences ending in i, with the last entry dropped:
    /// the character of e_i on modules, of e'_i on projectives.
    pub fn restrict_last(&self, i: usize) -> Character {
        assert!(self.rank >= 1);
        let mut x = Character::zero(self.theta, self.rank - 1);
        x.denom = self.denom;
        for (s, c) in &self.coeffs {
            if s.last() == Some(i) {
                x.add_coeff(Seq(s.0[..s.len() - 1].to_vec()), c);
            }
        }
        x
    }

    /// One line per sequence: `sequence : laurent / (1-v^2)^d`.
    pub fn render(&self, q: &Quiver) -> String {
        let mut out = String::new();
        if self.coeffs.is_empty() {
            out.push_str("0\n");
        }
        for (s, c) in &self.coeffs {
            let name = if self.theta { q.render_theta_seq(s) } else { q.render_plain_seq(s) };
            if self.denom == 0 {
                writeln!(out, "{name} : {c}").unwrap();
            } else {
                writeln!(out, "{name} : {c} / (1-v^2)^{}", self.denom).unwrap();
            }
        }
        out
    }
}

/// f ⊛ g for f over θ-sequences (rank m) and g over plain words (rank m').
pub fn shuffle(q: &Quiver, f: &Character, g: &Character) -> Result<Character> {
    if !f.theta || g.theta {
        return Err(Error::QuiverMismatch);
    }
    let (m, mp) = (f.rank, g.rank);
    let reps = coset_reps(m, mp)?;
    Ok(shuffle_with(q, f, g, &reps, true))
}

/// Shuffle of two plain characters (type-A induction).
pub fn shuffle_plain(q: &Quiver, f: &Character, g: &Character) -> Result<Character> {
    if f.theta || g.theta {
        return Err(Error::QuiverMismatch);
    }
    let reps = coset_reps_a(f.rank, g.rank)?;
    Ok(shuffle_with(q, f, g, &reps, false))
}

fn shuffle_with(q: &Quiver, f: &Character, g: &Character, reps: &[SignedPerm], theta: bool) -> Character {
    let n = f.rank + g.rank;
    let mut out = Character::zero(theta, n);
    out.denom = f.denom + g.denom;
    let group = weyl_group(n).expect("rank checked by coset_reps");
    for d in reps {
        let word = group.canonical_word(group.index_of(d));
        let dinv = d.inverse();
        for (i, a) in &f.coeffs {
            for (ip, b) in &g.coeffs {
                let mut cat = i.0.clone();
                cat.extend(&ip.0);
                // i'' = d⁻¹(i·i'), weighted by deg σ_ḋ 1_{i''}
                let s = act_sequence(&dinv, &cat, q.theta_map()).expect("ranks agree");
                let deg = seq_word_degree(q, word, &s);
                out.add_coeff(Seq(s), &(&(a * b) * &LaurentV::v_pow(deg)));
            }
        }
    }
    out
}

/// ch(θR_j) via unit ⊛ R_{j₁} ⊛ ⋯ ⊛ R_{j_m}.
pub fn ch_projective(q: &Quiver, j: &Seq) -> Result<Character> {
    if j.len() > 4 {
        return Err(Error::RankTooLarge(j.len()));
    }
    let mut ch = Character::unit();
    for &x in &j.0 {
        ch = shuffle(q, &ch, &Character::plain_generator(x))?;
    }
    Ok(ch)
}

/// ch(θR_j) assembled from the PBW graded dimensions gdim 1_i R 1_j.
pub fn ch_projective_pbw(sh: &Shape, j: &Seq) -> Result<Character> {
    let jj = sh.seq_index(j)?;
    let theta = sh.flavor() == crate::klr::Flavor::B;
    let mut ch = Character::zero(theta, sh.rank());
    ch.denom = sh.rank() as u32;
    for i in 0..sh.seqs().len() {
        let (num, _) = sh.gdim_pair(i, jj);
        ch.add_coeff(sh.seq(i).clone(), &num);
    }
    Ok(ch)
}

/// e_{i0}(θR_i) = ⊕ θR_{i'}[deg(i', i0; i)] as a list of (i', shift).
pub fn proj_e_decompose(q: &Quiver, i: &Seq, i0: usize) -> Result<Vec<(Seq, i64)>> {
    let m = i.len();
    if m == 0 {
        return Err(Error::IndexOutOfRange { index: 0, rank: 0 });
    }
    let group = weyl_group(m)?;
    let mut out = Vec::new();
    for d in coset_reps(m - 1, 1)? {
        let s = act_sequence(&d, &i.0, q.theta_map())?;
        if s[m - 1] == i0 {
            let deg = seq_word_degree(q, group.canonical_word(group.index_of(&d)), &i.0);
            out.push((Seq(s[..m - 1].to_vec()), deg));
        }
    }
    out.sort();
    Ok(out)
}

/// ⟨b⟩! = Π⟨b_k⟩!, checked to divide ch(θR_i) exactly.
pub fn divided_multiplicity(q: &Quiver, i: &Seq, b: &[u32]) -> Result<LaurentV> {
    let mut f = LaurentV::one();
    for &x in b {
        f = &f * &quantum_factorial(x);
    }
    let ch = ch_projective(q, i)?;
    for (s, c) in ch.coeffs() {
        c.div_exact(&f).map_err(|_| Error::NonDivisible(format!("{} at {}", f, q.render_theta_seq(s))))?;
    }
    Ok(f)
}

/// f_j on characters: ⊛ ch(R_j).
pub fn f_char(q: &Quiver, p: &Character, j: usize) -> Result<Character> {
    shuffle(q, p, &Character::plain_generator(j))
}

/// Weight ν of a θ-sequence character, as the pairing ν·i.
fn nu_dot(q: &Quiver, s: &Seq, i: usize) -> i64 {
    q.pair_nu(&q.theta_content(s), i)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BulletReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// The three commutation identities between e'_i and f_j on a projective
/// character P of weight ν:
///   e'_i f_i P      = P/(1−v²) + v^{−2} f_i e'_i P
///   e'_i f_{θi} P   = v^{λ_i+λ_{θi}−ν·i} P/(1−v²) + v^{−i·θi} f_{θi} e'_i P
///   e'_i f_j P      = v^{−i·j} f_j e'_i P   (j ∉ {i, θi})
/// `shift_error` perturbs the expected shifts (negative control).
pub fn verify_ef_commutation(q: &Quiver, p: &Character, shift_error: i64) -> Result<BulletReport> {
    let mut rep = BulletReport { checked: 0, failures: Vec::new() };
    let Some(any) = p.coeffs.keys().next() else {
        return Ok(rep);
    };
    let lift = |c: Character| -> Character {
        // P as a θR_m ⊗ R_1-module: one more polynomial factor
        Character { denom: c.denom + 1, ..c }
    };
    for i in 0..q.n() {
        for j in 0..q.n() {
            let lhs = f_char(q, p, j)?.restrict_last(i);
            let fe = if p.rank == 0 { Character::zero(true, 0) } else { f_char(q, &p.restrict_last(i), j)? };
            let (first, second) = if j == i {
                (Some(0), -2)
            } else if j == q.theta(i) {
                let s = (q.lambda(i) + q.lambda(q.theta(i))) as i64 - nu_dot(q, any, i);
                (Some(s), -q.cartan(i, q.theta(i)))
            } else {
                (None, -q.cartan(i, j))
            };
            let mut rhs = fe.shift(second + shift_error);
            if let Some(s) = first {
                rhs = rhs.add(&lift(p.clone()).shift(s + shift_error))?;
            }
            rep.checked += 1;
            if lhs != rhs {
                rep.failures.push(format!("i={} j={}", q.id(i), q.id(j)));
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::rational::{int, rat};
    use crate::klr::Flavor;
    use crate::quiver::DimVector;
    use std::sync::Arc;

    fn window(qq: i64) -> Quiver {
        Quiver::build_from_hecke_b(&[int(2), int(8), rat(1, 2), rat(1, 8)], &int(2), &int(qq)).unwrap()
    }

    #[test]
    fn unit_shuffle_generator() {
        let q = window(2);
        let two = q.find("2").unwrap();
        let ch = shuffle(&q, &Character::unit(), &Character::plain_generator(two)).unwrap();
        let lam = (q.lambda(two) + q.lambda(q.theta(two))) as i64;
        let mut want = Character::single(true, Seq(vec![two]), LaurentV::one(), 1);
        want.add_coeff(Seq(vec![q.theta(two)]), &LaurentV::v_pow(lam));
        assert_eq!(ch, want);
        assert!(shuffle(&q, &ch, &Character::zero(false, 1)).unwrap().is_zero());
    }

    #[test]
    fn shuffle_vs_pbw_rank_two() {
        let q = Arc::new(window(2));
        let mut nu = DimVector::zero(4);
        for id in ["2", "1/2", "8", "1/8"] {
            nu.add_vertex(q.find(id).unwrap(), 1);
        }
        let sh = Shape::new(q.clone(), Flavor::B, nu).unwrap();
        for j in sh.seqs() {
            let a = ch_projective(&q, j).unwrap();
            let b = ch_projective_pbw(&sh, j).unwrap();
            assert_eq!(a, b, "j={}", q.render_theta_seq(j));
            assert!(a.parity_ok());
        }
    }

    #[test]
    fn e_decompose_rank_one() {
        let q = window(2);
        let two = q.find("2").unwrap();
        let t = q.theta(two);
        let lam = (q.lambda(two) + q.lambda(t)) as i64;
        // right half θ(i): the full sequence iθ(i)
        let i = Seq(vec![t]);
        assert_eq!(proj_e_decompose(&q, &i, two).unwrap(), vec![(Seq(vec![]), lam)]);
        assert_eq!(proj_e_decompose(&q, &i, t).unwrap(), vec![(Seq(vec![]), 0)]);
        assert!(proj_e_decompose(&q, &i, q.find("8").unwrap()).unwrap().is_empty());
    }

    #[test]
    fn f_on_projectives() {
        // f_i(θR_i) = θR_{θ(i) i i}: the shuffle of ch(θR_i) with R_i is ch(θR_{i·i})
        let q = window(2);
        let (a, b) = (q.find("2").unwrap(), q.find("8").unwrap());
        let i = Seq(vec![b, a]);
        let lhs = f_char(&q, &ch_projective(&q, &i).unwrap(), a).unwrap();
        assert_eq!(lhs, ch_projective(&q, &Seq(vec![b, a, a])).unwrap());
    }

    #[test]
    fn divided_powers() {
        let q = window(2);
        let two = q.find("2").unwrap();
        let t = q.theta(two);
        let f = divided_multiplicity(&q, &Seq(vec![t, t, two, two]), &[2]).unwrap();
        assert_eq!(f, &LaurentV::v_pow(1) + &LaurentV::v_pow(-1));
        assert_eq!(divided_multiplicity(&q, &Seq(vec![t, two]), &[1, 1]).unwrap(), LaurentV::one());
        assert!(matches!(divided_multiplicity(&q, &Seq(vec![t, two]), &[3]), Err(Error::NonDivisible(_))));
    }

    #[test]
    fn ef_commutation_low_rank() {
        for qq in [2, 5] {
            let q = window(qq);
            let base = ch_projective(&q, &Seq(vec![])).unwrap();
            assert!(verify_ef_commutation(&q, &base, 0).unwrap().failures.is_empty());
            for x in 0..4 {
                let p = ch_projective(&q, &Seq(vec![x])).unwrap();
                let r = verify_ef_commutation(&q, &p, 0).unwrap();
                assert!(r.failures.is_empty(), "{:?}", r.failures);
                for y in 0..4 {
                    let p = ch_projective(&q, &Seq(vec![x, y])).unwrap();
                    let r = verify_ef_commutation(&q, &p, 0).unwrap();
                    assert!(r.failures.is_empty(), "{:?}", r.failures);
                }
            }
            let p = ch_projective(&q, &Seq(vec![0])).unwrap();
            assert!(!verify_ef_commutation(&q, &p, 1).unwrap().failures.is_empty());
        }
    }

    #[test]
    fn plain_shuffle_associative() {
        let q = window(2);
        let f = ch_projective(&q, &Seq(vec![1])).unwrap();
        let (g, h) = (Character::plain_generator(0), Character::plain_generator(2));
        let left = shuffle(&q, &shuffle(&q, &f, &g).unwrap(), &h).unwrap();
        let right = shuffle(&q, &f, &shuffle_plain(&q, &g, &h).unwrap()).unwrap();
        assert_eq!(left, right);
    }
}
