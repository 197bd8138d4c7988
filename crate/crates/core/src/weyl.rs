//! The Weyl group W_m of type B_m as signed permutations of {1−m, …, m}.
//!
//! Generators: s_k (k = 1..m−1) swapping k, k+1, and ε₁ swapping 1 and 0.
//! The symmetric group 𝔖_m sits inside as the elements without sign flips.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub const MAX_ENUM_RANK: usize = 6;

/// A Coxeter generator: `S(k)` is s_k, `Eps` is ε₁ (written as letter m).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Gen {
    S(usize),
    Eps,
}

impl Gen {
    /// Letter index in {1..m}, with m standing for ε₁.
    pub fn letter(self, m: usize) -> usize {
        match self {
            Gen::S(k) => k,
            Gen::Eps => m,
        }
    }

    pub fn from_letter(letter: usize, m: usize) -> Result<Gen> {
        match letter {
            l if l == m && m >= 1 => Ok(Gen::Eps),
            l if l >= 1 && l < m => Ok(Gen::S(l)),
            l => Err(Error::IndexOutOfRange { index: l as i64, rank: m }),
        }
    }
}

pub type Word = Vec<Gen>;

pub fn word_letters(w: &[Gen], m: usize) -> Vec<usize> {
    w.iter().map(|g| g.letter(m)).collect()
}

/// w is stored by its images w(1), …, w(m) ∈ {1−m..m}; w(1−l) = 1 − w(l).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    img: SmallVec<[i8; 8]>,
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}", self.img.as_slice())
    }
}

impl SignedPerm {
    pub fn identity(m: usize) -> Self {
        SignedPerm { img: (1..=m as i8).collect() }
    }

    pub fn from_images(img: &[i64]) -> Result<Self> {
        let m = img.len();
        let mut seen = vec![false; m + 1];
        for &x in img {
            let base = if x >= 1 { x } else { 1 - x };
            if base < 1 || base > m as i64 || seen[base as usize] {
                return Err(Error::IndexOutOfRange { index: x, rank: m });
            }
            seen[base as usize] = true;
        }
        Ok(SignedPerm { img: img.iter().map(|&x| x as i8).collect() })
    }

    pub fn rank(&self) -> usize {
        self.img.len()
    }

    pub fn images(&self) -> Vec<i64> {
        self.img.iter().map(|&x| x as i64).collect()
    }

    /// w(l) for l ∈ {1−m..m}.
    pub fn act(&self, l: i64) -> i64 {
        if l >= 1 {
            self.img[(l - 1) as usize] as i64
        } else {
            1 - self.img[(-l) as usize] as i64
        }
    }

    pub fn act_index(&self, l: i64) -> Result<i64> {
        let m = self.rank() as i64;
        if l < 1 - m || l > m {
            return Err(Error::IndexOutOfRange { index: l, rank: self.rank() });
        }
        Ok(self.act(l))
    }

    pub fn generator(m: usize, g: Gen) -> Self {
        let mut w = Self::identity(m);
        match g {
            Gen::S(k) => {
                assert!(k >= 1 && k < m, "s_{k} not in W_{m}");
                w.img.swap(k - 1, k);
            }
            Gen::Eps => {
                assert!(m >= 1, "ε₁ not in W_0");
                w.img[0] = 0;
            }
        }
        w
    }

    /// (self ∘ o)(l) = self(o(l)).
    pub fn compose(&self, o: &SignedPerm) -> SignedPerm {
        SignedPerm { img: o.img.iter().map(|&x| self.act(x as i64) as i8).collect() }
    }

    pub fn inverse(&self) -> SignedPerm {
        let m = self.rank();
        let mut img: SmallVec<[i8; 8]> = SmallVec::from_elem(0, m);
        for l in 1..=m as i64 {
            let x = self.act(l);
            if x >= 1 {
                img[(x - 1) as usize] = l as i8;
            } else {
                img[(-x) as usize] = (1 - l) as i8;
            }
        }
        SignedPerm { img }
    }

    /// Product g₁g₂⋯g_r of the letters.
    pub fn from_word(m: usize, word: &[Gen]) -> SignedPerm {
        word.iter().fold(Self::identity(m), |acc, &g| acc.compose(&Self::generator(m, g)))
    }

    /// No sign flips: an element of 𝔖_m.
    pub fn is_unsigned(&self) -> bool {
        self.img.iter().all(|&x| x >= 1)
    }

    /// The substitution κ_l ↦ κ_{w(l)} as (target variable, negate) per variable.
    pub fn kappa_substitution(&self) -> Vec<(usize, bool)> {
        self.img.iter().map(|&x| if x >= 1 { (x as usize - 1, false) } else { ((-x) as usize, true) }).collect()
    }

    /// Restriction to the first `n` positions; they must be stable.
    pub fn restrict(&self, n: usize) -> SignedPerm {
        let r = SignedPerm { img: self.img[..n].iter().copied().collect() };
        debug_assert!(r.img.iter().all(|&x| (x as i64) <= n as i64 && (x as i64) > -(n as i64)));
        r
    }

    /// Extension by fixing positions beyond the current rank.
    pub fn extend(&self, n: usize) -> SignedPerm {
        let mut img = self.img.clone();
        for l in self.rank() + 1..=n {
            img.push(l as i8);
        }
        SignedPerm { img }
    }
}

/// (w(i))_l = i_{w⁻¹(l)}, on right halves with i_{1−l} = θ(i_l).
pub fn act_sequence(w: &SignedPerm, right: &[usize], theta: &[usize]) -> Result<Vec<usize>> {
    if right.len() != w.rank() {
        return Err(Error::RankMismatch(right.len(), w.rank()));
    }
    let inv = w.inverse();
    Ok((1..=w.rank() as i64)
        .map(|l| {
            let j = inv.act(l);
            if j >= 1 {
                right[(j - 1) as usize]
            } else {
                theta[right[(-j) as usize]]
            }
        })
        .collect())
}

/// W_m with BFS lengths, canonical words and lookup tables.
pub struct WeylGroup {
    m: usize,
    elems: Vec<SignedPerm>,
    index: HashMap<SignedPerm, usize>,
    length: Vec<usize>,
    words: Vec<Word>,
    /// left multiplication by the generators, per generator position in `gens()`.
    left_gen: Vec<Vec<usize>>,
    mult: OnceLock<Vec<u32>>,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W_{} ({} elements)", self.m, self.elems.len())
    }
}

pub fn gens(m: usize) -> Vec<Gen> {
    let mut g: Vec<Gen> = (1..m).map(Gen::S).collect();
    if m >= 1 {
        g.push(Gen::Eps);
    }
    g
}

fn gen_pos(m: usize, g: Gen) -> usize {
    match g {
        Gen::S(k) => k - 1,
        Gen::Eps => m - 1,
    }
}

static GROUPS: [OnceLock<Arc<WeylGroup>>; MAX_ENUM_RANK + 1] =
    [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];

/// The cached group W_m (m ≤ 6).
pub fn weyl_group(m: usize) -> Result<Arc<WeylGroup>> {
    if m > MAX_ENUM_RANK {
        return Err(Error::RankTooLarge(m));
    }
    Ok(GROUPS[m].get_or_init(|| Arc::new(WeylGroup::build(m))).clone())
}

/// Fixed word of the minimal representative of W_{n−1}w, selected by t = w⁻¹(n).
pub fn coset_rep_word(n: usize, t: i64) -> Word {
    if t >= 1 {
        (t as usize..n).rev().map(Gen::S).collect()
    } else {
        let j = (1 - t) as usize;
        let mut w: Word = (1..n).rev().map(Gen::S).collect();
        w.push(Gen::Eps);
        w.extend((1..j).map(Gen::S));
        w
    }
}

fn canonical_word_of(w: &SignedPerm) -> Word {
    let n = w.rank();
    if n == 0 {
        return Vec::new();
    }
    let t = w.inverse().act(n as i64);
    let dw = coset_rep_word(n, t);
    let d = SignedPerm::from_word(n, &dw);
    let u = w.compose(&d.inverse());
    debug_assert_eq!(u.act(n as i64), n as i64);
    let mut word = canonical_word_of(&u.restrict(n - 1));
    word.extend(dw);
    word
}

impl WeylGroup {
    fn build(m: usize) -> Self {
        let id = SignedPerm::identity(m);
        let g = gens(m);
        let gmats: Vec<SignedPerm> = g.iter().map(|&x| SignedPerm::generator(m, x)).collect();
        let mut elems = vec![id.clone()];
        let mut length = vec![0];
        let mut index = HashMap::new();
        index.insert(id, 0);
        let mut head = 0;
        while head < elems.len() {
            let w = elems[head].clone();
            for s in &gmats {
                let ws = w.compose(s);
                if !index.contains_key(&ws) {
                    index.insert(ws.clone(), elems.len());
                    elems.push(ws);
                    length.push(length[head] + 1);
                }
            }
            head += 1;
        }
        let words: Vec<Word> = elems.iter().map(canonical_word_of).collect();
        if m <= 4 {
            for (k, w) in words.iter().enumerate() {
                assert_eq!(w.len(), length[k], "canonical word not reduced for {:?}", elems[k]);
                assert_eq!(SignedPerm::from_word(m, w), elems[k]);
            }
        }
        let left_gen = gmats.iter().map(|s| elems.iter().map(|w| index[&s.compose(w)]).collect()).collect();
        WeylGroup { m, elems, index, length, words, left_gen, mult: OnceLock::new() }
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[SignedPerm] {
        &self.elems
    }

    pub fn elem(&self, k: usize) -> &SignedPerm {
        &self.elems[k]
    }

    pub fn index_of(&self, w: &SignedPerm) -> usize {
        self.index[w]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn length(&self, k: usize) -> usize {
        self.length[k]
    }

    pub fn length_of(&self, w: &SignedPerm) -> usize {
        self.length[self.index[w]]
    }

    pub fn canonical_word(&self, k: usize) -> &Word {
        &self.words[k]
    }

    pub fn gen_index(&self, g: Gen) -> usize {
        self.left_gen[gen_pos(self.m, g)][0]
    }

    /// Index of g·w.
    pub fn left_mul_gen(&self, g: Gen, w: usize) -> usize {
        self.left_gen[gen_pos(self.m, g)][w]
    }

    /// Index of a·b.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let n = self.elems.len();
        if n <= 384 {
            let t = self.mult.get_or_init(|| {
                let mut t = vec![0u32; n * n];
                for x in 0..n {
                    for y in 0..n {
                        t[x * n + y] = self.index[&self.elems[x].compose(&self.elems[y])] as u32;
                    }
                }
                t
            });
            t[a * n + b] as usize
        } else {
            self.index[&self.elems[a].compose(&self.elems[b])]
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elems[a].inverse()]
    }

    pub fn longest(&self) -> usize {
        (0..self.len()).max_by_key(|&k| self.length[k]).unwrap()
    }

    /// All reduced words of element k (exhaustive; small ranks only).
    pub fn all_reduced_words(&self, k: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Word)> = vec![(k, Vec::new())];
        let g = gens(self.m);
        while let Some((w, suffix)) = stack.pop() {
            if w == 0 {
                out.push(suffix);
                continue;
            }
            // w = s·w' with ℓ(w') = ℓ(w) − 1
            for &s in &g {
                let w2 = self.left_mul_gen(s, w);
                if self.length[w2] + 1 == self.length[w] {
                    let mut sfx = suffix.clone();
                    sfx.push(s);
                    stack.push((w2, sfx));
                }
            }
        }
        for w in &mut out {
            w.reverse();
        }
        out.sort();
        out
    }
}

/// The parabolic subgroup W_m × 𝔖_{m'} of W_{m+m'}.
pub fn in_parabolic(w: &SignedPerm, m: usize) -> bool {
    let n = w.rank() as i64;
    (1..=n).all(|l| {
        let x = w.act(l);
        if l as usize <= m {
            x >= 1 - m as i64 && x <= m as i64
        } else {
            x > m as i64
        }
    })
}

/// Minimal-length representatives D_{m,m'} of W_{m,m'}\W_{m+m'}, by brute force.
pub fn coset_reps(m: usize, mp: usize) -> Result<Vec<SignedPerm>> {
    let n = m + mp;
    let g = weyl_group(n)?;
    let mut best: HashMap<Vec<i64>, usize> = HashMap::new();
    for k in 0..g.len() {
        let key = coset_key(g.elem(k), m);
        let e = best.entry(key).or_insert(k);
        if g.length(k) < g.length(*e) {
            *e = k;
        }
    }
    let mut reps: Vec<usize> = best.into_values().collect();
    reps.sort();
    Ok(reps.into_iter().map(|k| g.elem(k).clone()).collect())
}

/// Minimal-length representatives of 𝔖_m × 𝔖_{m'} \ 𝔖_{m+m'}, by brute force.
pub fn coset_reps_a(m: usize, mp: usize) -> Result<Vec<SignedPerm>> {
    let n = m + mp;
    let g = weyl_group(n)?;
    let mut best: HashMap<Vec<i64>, usize> = HashMap::new();
    for k in (0..g.len()).filter(|&k| g.elem(k).is_unsigned()) {
        let e = best.entry(coset_key(g.elem(k), m)).or_insert(k);
        if g.length(k) < g.length(*e) {
            *e = k;
        }
    }
    let mut reps: Vec<usize> = best.into_values().collect();
    reps.sort();
    Ok(reps.into_iter().map(|k| g.elem(k).clone()).collect())
}

fn coset_key(w: &SignedPerm, m: usize) -> Vec<i64> {
    let inv = w.inverse();
    let mut key: Vec<i64> = (m as i64 + 1..=w.rank() as i64).map(|l| inv.act(l)).collect();
    key.sort();
    key
}

/// w = u·d with u ∈ W_{m,m'} and d ∈ D_{m,m'}.
pub fn parabolic_factor(w: &SignedPerm, m: usize) -> Result<(SignedPerm, SignedPerm)> {
    let mp = w.rank() - m;
    let key = coset_key(w, m);
    let d = coset_reps(m, mp)?.into_iter().find(|d| coset_key(d, m) == key).expect("coset representative");
    let u = w.compose(&d.inverse());
    Ok((u, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_a_shuffles() {
        // binomial(n, m) shuffles
        assert_eq!(coset_reps_a(1, 1).unwrap().len(), 2);
        assert_eq!(coset_reps_a(1, 2).unwrap().len(), 3);
        assert_eq!(coset_reps_a(2, 2).unwrap().len(), 6);
        for d in coset_reps_a(2, 2).unwrap() {
            let inv = d.inverse();
            assert!(inv.act(1) < inv.act(2) && inv.act(3) < inv.act(4));
        }
    }

    #[test]
    fn index_action() {
        let e = SignedPerm::generator(1, Gen::Eps);
        assert_eq!(e.act_index(1).unwrap(), 0);
        let e3 = SignedPerm::generator(3, Gen::Eps);
        assert_eq!(e3.act_index(-2).unwrap(), -2);
        let s1 = SignedPerm::generator(3, Gen::S(1));
        assert_eq!(s1.act_index(3).unwrap(), 3);
        assert!(s1.act_index(4).is_err());
        assert!(s1.act_index(-3).is_err());
    }

    #[test]
    fn group_orders_and_lengths() {
        for m in 0..=4 {
            let g = weyl_group(m).unwrap();
            let fact: usize = (1..=m).product();
            assert_eq!(g.len(), (1 << m) * fact);
        }
        let g2 = weyl_group(2).unwrap();
        assert_eq!(g2.length(g2.longest()), 4);
        assert_eq!(g2.length_of(&SignedPerm::generator(2, Gen::Eps)), 1);
        assert!(matches!(weyl_group(7), Err(Error::RankTooLarge(7))));
    }

    #[test]
    fn canonical_words() {
        let g1 = weyl_group(1).unwrap();
        assert_eq!(word_letters(g1.canonical_word(1), 1), vec![1]);
        let g2 = weyl_group(2).unwrap();
        let eps2 = SignedPerm::from_word(2, &[Gen::S(1), Gen::Eps, Gen::S(1)]);
        assert_eq!(word_letters(g2.canonical_word(g2.index_of(&eps2)), 2), vec![1, 2, 1]);
        assert!(g2.canonical_word(0).is_empty());
    }

    #[test]
    fn coset_rep_counts() {
        assert_eq!(coset_reps(0, 1).unwrap().len(), 2);
        assert_eq!(coset_reps(1, 1).unwrap().len(), 4);
        assert_eq!(coset_reps(2, 1).unwrap().len(), 6);
        assert_eq!(coset_reps(1, 2).unwrap().len(), 12);
    }

    #[test]
    fn fixed_reps_are_the_minimal_ones() {
        for n in 1..=4 {
            let mut fixed: Vec<SignedPerm> = (1..=n as i64)
                .chain((1 - n as i64)..=0)
                .map(|t| SignedPerm::from_word(n, &coset_rep_word(n, t)))
                .collect();
            let mut brute = coset_reps(n - 1, 1).unwrap();
            fixed.sort();
            brute.sort();
            assert_eq!(fixed, brute);
        }
    }

    #[test]
    fn sequence_action() {
        // θ swaps 0 and 1
        let theta = [1, 0];
        let e = SignedPerm::generator(1, Gen::Eps);
        assert_eq!(act_sequence(&e, &[0], &theta).unwrap(), vec![1]);
        let s1 = SignedPerm::generator(2, Gen::S(1));
        assert_eq!(act_sequence(&s1, &[0, 1], &theta).unwrap(), vec![1, 0]);
        assert!(act_sequence(&s1, &[0], &theta).is_err());
    }
}
