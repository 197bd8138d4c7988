//! Finite-dimensional graded modules over θR_m and R_m: validation, characters,
//! restriction and induction, radical/socle/top, crystal operators.

mod crystal;
mod induce;
mod io;
mod subspace;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{One, Zero};
use rayon::prelude::*;

pub use crystal::{build_crystal, etilde, ftilde, CrystalEdge, CrystalGraph, CrystalNode};
pub use induce::induce_f;
pub use io::{parse_module, write_module};
pub use subspace::{PieceKey, Pieces, Subspace};

use crate::characters::Character;
use crate::error::{Error, Result};
use crate::ground::{LaurentV, Matrix, Poly};
use crate::klr::{relation_instances, Flavor, GenKind, RelTerm, Shape};
use crate::quiver::{DimVector, Quiver, Seq};
use subspace::Echelon;

/// Largest module handled by the trace-form radical.
pub const RADICAL_DIM_LIMIT: usize = 24;

/// A module given by its graded blocks 1_iM and generator matrices.
///
/// `mats[(g, b)]` maps block b to block g(b); a missing entry is the zero map.
/// Ungraded modules (from inverse Hecke transport) keep every vector in degree 0.
#[derive(Clone, Debug)]
pub struct GradedModule {
    shape: Arc<Shape>,
    graded: bool,
    blocks: BTreeMap<usize, Vec<i64>>,
    mats: BTreeMap<(GenKind, usize), Matrix>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ModuleReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl ModuleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ModuleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "module checks: {}, violations: {}", self.checked, self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "FAIL {v}")?;
        }
        Ok(())
    }
}

impl GradedModule {
    pub fn new(
        shape: Arc<Shape>,
        graded: bool,
        blocks: BTreeMap<usize, Vec<i64>>,
        mats: BTreeMap<(GenKind, usize), Matrix>,
    ) -> Result<Self> {
        let n = shape.seqs().len();
        let mut bl = BTreeMap::new();
        for (b, d) in blocks {
            if b >= n {
                return Err(Error::InvalidModule(format!("block index {b} out of range")));
            }
            if !d.is_empty() {
                bl.insert(b, if graded { d } else { vec![0; d.len()] });
            }
        }
        let gens = shape.generators();
        let dim = |b: usize| bl.get(&b).map_or(0, Vec::len);
        let mut ms = BTreeMap::new();
        for ((g, b), a) in mats {
            if !gens.contains(&g) || b >= n {
                return Err(Error::InvalidModule(format!("generator {g:?} at block {b} not in this algebra")));
            }
            let c = shape.gen_target(g, b);
            if a.cols() != dim(b) || a.rows() != dim(c) {
                if a.is_zero() {
                    continue;
                }
                return Err(Error::InvalidModule(format!(
                    "{} at {} has shape {}x{}, expected {}x{}",
                    gen_name(g),
                    shape.render_seq(b),
                    a.rows(),
                    a.cols(),
                    dim(c),
                    dim(b)
                )));
            }
            if !a.is_zero() {
                ms.insert((g, b), a);
            }
        }
        Ok(GradedModule { shape, graded, blocks: bl, mats: ms })
    }

    /// The trivial module k of the rank-0 algebra.
    pub fn trivial(quiver: Arc<Quiver>, flavor: Flavor) -> Result<Self> {
        let nu = DimVector::zero(quiver.n());
        let sh = Shape::new(quiver, flavor, nu)?;
        let mut blocks = BTreeMap::new();
        blocks.insert(0, vec![0]);
        Self::new(sh, true, blocks, BTreeMap::new())
    }

    pub fn zero(shape: Arc<Shape>) -> Self {
        GradedModule { shape, graded: true, blocks: BTreeMap::new(), mats: BTreeMap::new() }
    }

    pub fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    pub fn quiver(&self) -> &Quiver {
        self.shape.quiver()
    }

    pub fn rank(&self) -> usize {
        self.shape.rank()
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn dim(&self) -> usize {
        self.blocks.values().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &BTreeMap<usize, Vec<i64>> {
        &self.blocks
    }

    pub fn block_dim(&self, b: usize) -> usize {
        self.blocks.get(&b).map_or(0, Vec::len)
    }

    /// The matrix of g on block b (zero when absent).
    pub fn mat(&self, g: GenKind, b: usize) -> Matrix {
        match self.mats.get(&(g, b)) {
            Some(a) => a.clone(),
            None => Matrix::zeros(self.block_dim(self.shape.gen_target(g, b)), self.block_dim(b)),
        }
    }

    pub fn mats(&self) -> &BTreeMap<(GenKind, usize), Matrix> {
        &self.mats
    }

    fn kappas(&self, b: usize) -> Vec<Matrix> {
        (1..=self.rank()).map(|l| self.mat(GenKind::Kappa(l), b)).collect()
    }

    /// A polynomial in κ acting on block b.
    pub fn poly_matrix(&self, p: &Poly, b: usize) -> Matrix {
        p.eval_matrix(&self.kappas(b), self.block_dim(b))
    }

    /// g₁⋯g_r acting on block b (applied right to left): target block and matrix.
    pub fn word_matrix(&self, word: &[GenKind], b: usize) -> (usize, Matrix) {
        let mut cur = b;
        let mut acc = Matrix::identity(self.block_dim(b));
        for &g in word.iter().rev() {
            acc = &self.mat(g, cur) * &acc;
            cur = self.shape.gen_target(g, cur);
        }
        (cur, acc)
    }

    fn eval_terms(&self, b: usize, terms: &[RelTerm]) -> BTreeMap<usize, Matrix> {
        let mut out: BTreeMap<usize, Matrix> = BTreeMap::new();
        for t in terms {
            let (c, w) = self.word_matrix(&t.word, b);
            let x = &self.poly_matrix(&t.coeff, c) * &w;
            match out.get_mut(&c) {
                Some(acc) => *acc = &*acc + &x,
                None => {
                    out.insert(c, x);
                }
            }
        }
        out.retain(|_, a| !a.is_zero());
        out
    }

    /// Every violated module invariant: degrees, nilpotency, defining relations.
    pub fn validate(&self) -> ModuleReport {
        let sh = &self.shape;
        let mut rep = ModuleReport::default();
        if self.graded {
            for ((g, b), a) in &self.mats {
                rep.checked += 1;
                let c = sh.gen_target(*g, *b);
                let shift = sh.gen_degree(*g, *b);
                let (db, dc) = (&self.blocks[b], &self.blocks[&c]);
                if a.nonzeros().any(|(r, col, _)| dc[r] != db[col] + shift) {
                    rep.violations.push(format!("degree: {} at {} is not homogeneous of degree {shift}", gen_name(*g), sh.render_seq(*b)));
                }
            }
        }
        for &b in self.blocks.keys() {
            for l in 1..=self.rank() {
                rep.checked += 1;
                if !self.mat(GenKind::Kappa(l), b).is_nilpotent() {
                    rep.violations.push(format!("nilpotency: kappa{l} at {}", sh.render_seq(b)));
                }
            }
        }
        let per: Vec<ModuleReport> = self
            .blocks
            .keys()
            .copied()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|b| {
                let mut r = ModuleReport::default();
                for inst in relation_instances(sh, b) {
                    r.checked += 1;
                    if self.eval_terms(b, &inst.lhs) != self.eval_terms(b, &inst.rhs) {
                        r.violations.push(format!("relation {} at {}", inst.tag, inst.label));
                    }
                }
                r
            })
            .collect();
        for r in per {
            rep.checked += r.checked;
            rep.violations.extend(r.violations);
        }
        rep
    }

    pub fn require_valid(&self) -> Result<()> {
        let r = self.validate();
        match r.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidModule(v.clone())),
        }
    }

    /// Σ_i Σ_d v^d dim(1_iM)_d · i.
    pub fn character(&self) -> Character {
        let mut ch = Character::zero(self.shape.flavor() == Flavor::B, self.rank());
        for (&b, degs) in &self.blocks {
            let mut c = LaurentV::zero();
            for &d in degs {
                c.add_term(d, One::one());
            }
            ch.add_coeff(self.shape.seq(b).clone(), &c);
        }
        ch
    }

    /// max n such that some block sequence ends in n copies of i.
    pub fn epsilon(&self, i: usize) -> usize {
        self.blocks.keys().map(|&b| self.shape.seq(b).0.iter().rev().take_while(|&&x| x == i).count()).max().unwrap_or(0)
    }

    /// e_i(M) = 1_{m−1,i}M over rank m−1; None when the result is zero.
    pub fn restrict_e(&self, i: usize) -> Result<Option<GradedModule>> {
        self.restrict_tail(i, 1, false)
    }

    /// The blocks ending in iⁿ as a module over rank m−n. With `kill`, only the
    /// joint kernel of κ_{m−n+1..m} is kept.
    pub fn restrict_tail(&self, i: usize, n: usize, kill: bool) -> Result<Option<GradedModule>> {
        let sh = &self.shape;
        let m = sh.rank();
        if n > m {
            return Ok(None);
        }
        let mut nu = sh.nu().clone();
        let flav = sh.flavor();
        for _ in 0..n {
            let mut take = |v: usize| -> bool {
                if nu.0[v] == 0 {
                    return false;
                }
                nu.0[v] -= 1;
                true
            };
            if !take(i) || (flav == Flavor::B && !take(sh.quiver().theta(i))) {
                return Ok(None);
            }
        }
        let small = Shape::new(sh.quiver_arc().clone(), flav, nu)?;
        let pieces = Pieces::of(self);
        // chosen basis per block: block-local coordinates as columns
        let mut embed: BTreeMap<usize, (usize, Matrix, Vec<i64>)> = BTreeMap::new();
        for (&b, degs) in &self.blocks {
            let s = &sh.seq(b).0;
            if s[m - n..].iter().any(|&x| x != i) {
                continue;
            }
            let nb = small.seq_index(&Seq(s[..m - n].to_vec()))?;
            let dimb = degs.len();
            let mut cols: Vec<Vec<num::BigRational>> = Vec::new();
            let mut new_degs = Vec::new();
            for (p, &(pb, d)) in pieces.keys.iter().enumerate() {
                if pb != b {
                    continue;
                }
                let coords = &pieces.coords[p];
                let basis = if kill {
                    let mut stack = Matrix::zeros(0, coords.len());
                    for l in m - n + 1..=m {
                        stack = stack.vstack(&self.mat(GenKind::Kappa(l), b).select_cols(coords));
                    }
                    stack.kernel()
                } else {
                    Matrix::identity(coords.len())
                };
                for c in basis.columns() {
                    let mut v = vec![num::BigRational::zero(); dimb];
                    for (k, &co) in coords.iter().enumerate() {
                        v[co] = c[k].clone();
                    }
                    cols.push(v);
                    new_degs.push(d);
                }
            }
            if !cols.is_empty() {
                embed.insert(b, (nb, Matrix::from_columns(dimb, &cols), new_degs));
            }
        }
        if embed.is_empty() {
            return Ok(None);
        }
        let mut blocks = BTreeMap::new();
        let mut mats = BTreeMap::new();
        for (_, (nb, _, degs)) in embed.iter() {
            blocks.insert(*nb, degs.clone());
        }
        for (&b, (nb, e, _)) in &embed {
            for g in small.generators() {
                let c = sh.gen_target(g, b);
                let img = &self.mat(g, b) * e;
                if img.is_zero() {
                    continue;
                }
                let Some((_, ec, _)) = embed.get(&c) else {
                    return Err(Error::InvalidModule("restriction is not stable".into()));
                };
                let x = ec.solve(&img).ok_or_else(|| Error::InvalidModule("restriction is not stable".into()))?;
                mats.insert((g, *nb), x);
            }
        }
        Ok(Some(GradedModule::new(small, self.graded, blocks, mats)?))
    }

    pub fn pieces(&self) -> Pieces {
        Pieces::of(self)
    }

    /// Block bases of a graded subspace: block → (block-local columns, degrees).
    fn subspace_blocks(&self, pieces: &Pieces, s: &Subspace) -> BTreeMap<usize, (Matrix, Vec<i64>)> {
        let mut out: BTreeMap<usize, (Vec<Vec<num::BigRational>>, Vec<i64>)> = BTreeMap::new();
        for (p, &(b, d)) in pieces.keys.iter().enumerate() {
            let dimb = self.block_dim(b);
            let e = out.entry(b).or_default();
            for c in s.basis[p].columns() {
                let mut v = vec![num::BigRational::zero(); dimb];
                for (k, &co) in pieces.coords[p].iter().enumerate() {
                    v[co] = c[k].clone();
                }
                e.0.push(v);
                e.1.push(d);
            }
        }
        out.into_iter().map(|(b, (cols, degs))| (b, (Matrix::from_columns(self.block_dim(b), &cols), degs))).collect()
    }

    /// The submodule spanned by a graded subspace that is stable under the action.
    pub fn submodule(&self, s: &Subspace) -> Result<GradedModule> {
        let pieces = self.pieces();
        let emb = self.subspace_blocks(&pieces, s);
        let mut blocks = BTreeMap::new();
        let mut mats = BTreeMap::new();
        for (&b, (e, degs)) in &emb {
            blocks.insert(b, degs.clone());
            for g in self.shape.generators() {
                let img = &self.mat(g, b) * e;
                if e.cols() == 0 || img.is_zero() {
                    continue;
                }
                let c = self.shape.gen_target(g, b);
                let x = emb[&c].0.solve(&img).ok_or_else(|| Error::InvalidModule("subspace is not a submodule".into()))?;
                mats.insert((g, b), x);
            }
        }
        GradedModule::new(self.shape.clone(), self.graded, blocks, mats)
    }

    /// M / S for a graded submodule S.
    pub fn quotient(&self, s: &Subspace) -> Result<GradedModule> {
        let pieces = self.pieces();
        let mut comp = pieces.zero();
        for p in 0..pieces.len() {
            let idx = pieces.complement(&s.basis[p]);
            comp.basis[p] = Matrix::identity(pieces.dim(p)).select_cols(&idx);
        }
        let sb = self.subspace_blocks(&pieces, s);
        let cb = self.subspace_blocks(&pieces, &comp);
        let mut blocks = BTreeMap::new();
        let mut mats = BTreeMap::new();
        for (&b, (cm, degs)) in &cb {
            if cm.cols() == 0 {
                continue;
            }
            blocks.insert(b, degs.clone());
            for g in self.shape.generators() {
                let img = &self.mat(g, b) * cm;
                if img.is_zero() {
                    continue;
                }
                let c = self.shape.gen_target(g, b);
                let (sc, cc) = (&sb[&c].0, &cb[&c].0);
                let full = sc.hstack(cc);
                let y = full.solve(&img).ok_or_else(|| Error::InvalidModule("quotient basis is not a complement".into()))?;
                mats.insert((g, b), y.submatrix(sc.cols(), 0, cc.cols(), cm.cols()));
            }
        }
        GradedModule::new(self.shape.clone(), self.graded, blocks, mats)
    }

    /// Dimension of the degree-preserving commutant.
    pub fn end_dimension(&self) -> usize {
        let pieces = self.pieces();
        let mut offset = Vec::new();
        let mut n = 0;
        for p in 0..pieces.len() {
            offset.push(n);
            n += pieces.dim(p) * pieces.dim(p);
        }
        let mut rows: Vec<Vec<num::BigRational>> = Vec::new();
        for p in 0..pieces.len() {
            let np = pieces.dim(p);
            for (q, g) in &pieces.maps[p] {
                let nq = pieces.dim(*q);
                // (G X_p − X_q G)[r][c] = 0
                for r in 0..nq {
                    for c in 0..np {
                        let mut row = vec![num::BigRational::zero(); n];
                        for k in 0..np {
                            row[offset[p] + k * np + c] += &g[(r, k)];
                        }
                        for k in 0..nq {
                            row[offset[*q] + r * nq + k] -= &g[(k, c)];
                        }
                        rows.push(row);
                    }
                }
            }
        }
        if rows.is_empty() {
            return n;
        }
        n - Matrix::from_rows(rows).rank()
    }

    /// Dimension of Hom(self, o) ignoring the grading. Both modules must share a shape.
    pub fn hom_dimension(&self, o: &GradedModule) -> Result<usize> {
        if !self.shape.same(&o.shape) {
            return Err(Error::ShapeMismatch);
        }
        let mut offset = BTreeMap::new();
        let mut n = 0;
        for &b in self.blocks.keys() {
            offset.insert(b, n);
            n += self.block_dim(b) * o.block_dim(b);
        }
        let mut rows: Vec<Vec<num::BigRational>> = Vec::new();
        for &b in self.blocks.keys() {
            for g in self.shape.generators() {
                let c = self.shape.gen_target(g, b);
                let (a, bm) = (self.mat(g, b), o.mat(g, b));
                let (mb, ob, oc) = (self.block_dim(b), o.block_dim(b), o.block_dim(c));
                let mc = self.block_dim(c);
                // X_c A = B X_b with X_b: o_b × m_b
                for r in 0..oc {
                    for col in 0..mb {
                        let mut row = vec![num::BigRational::zero(); n];
                        let mut any = false;
                        if let Some(&oc_off) = offset.get(&c) {
                            for k in 0..mc {
                                if !a[(k, col)].is_zero() {
                                    row[oc_off + r * mc + k] += &a[(k, col)];
                                    any = true;
                                }
                            }
                        }
                        for k in 0..ob {
                            if !bm[(r, k)].is_zero() {
                                row[offset[&b] + k * mb + col] -= &bm[(r, k)];
                                any = true;
                            }
                        }
                        if any {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        if rows.is_empty() {
            return Ok(n);
        }
        Ok(n - Matrix::from_rows(rows).rank())
    }

    /// Proof that the module is simple, or the reason none was found.
    pub fn certify_simple(&self) -> Result<()> {
        if self.is_zero() {
            return Err(Error::SimplicityCertificationFailed("zero module".into()));
        }
        let e = self.end_dimension();
        if e != 1 {
            return Err(Error::SimplicityCertificationFailed(format!("endomorphism algebra has dimension {e}")));
        }
        let pieces = self.pieces();
        let total = self.dim();
        // a one-dimensional piece V with A·V = M and no nonzero submodule avoiding V
        if let Some(p) = (0..pieces.len()).find(|&p| pieces.dim(p) == 1) {
            let mut v = pieces.zero();
            v.basis[p] = Matrix::identity(1);
            if pieces.generate(&v).dim() != total {
                return Err(Error::SimplicityCertificationFailed("a homogeneous vector generates a proper submodule".into()));
            }
            let mut rest = pieces.full();
            rest.basis[p] = Matrix::zeros(1, 0);
            if !pieces.largest_in(&rest).is_zero() {
                return Err(Error::SimplicityCertificationFailed("a nonzero submodule avoids a homogeneous line".into()));
            }
            return Ok(());
        }
        if total <= RADICAL_DIM_LIMIT {
            let rad = self.radical_action()?;
            if rad.is_zero() {
                return Ok(());
            }
            return Err(Error::SimplicityCertificationFailed(format!("radical has dimension {}", rad.dim())));
        }
        Err(Error::SimplicityCertificationFailed("no one-dimensional homogeneous piece and too large for the radical".into()))
    }

    fn global_offsets(&self) -> BTreeMap<usize, usize> {
        let mut off = BTreeMap::new();
        let mut n = 0;
        for (&b, d) in &self.blocks {
            off.insert(b, n);
            n += d.len();
        }
        off
    }

    /// Generators, block idempotents, all as dim×dim matrices.
    fn global_generators(&self) -> Vec<Matrix> {
        let n = self.dim();
        let off = self.global_offsets();
        let mut out = Vec::new();
        for (&b, d) in &self.blocks {
            let mut e = Matrix::zeros(n, n);
            for k in 0..d.len() {
                e[(off[&b] + k, off[&b] + k)] = One::one();
            }
            out.push(e);
        }
        for g in self.shape.generators() {
            let mut x = Matrix::zeros(n, n);
            for &b in self.blocks.keys() {
                let c = self.shape.gen_target(g, b);
                if let (Some(a), Some(&oc)) = (self.mats.get(&(g, b)), off.get(&c)) {
                    for (r, col, v) in a.nonzeros() {
                        x[(oc + r, off[&b] + col)] = v.clone();
                    }
                }
            }
            out.push(x);
        }
        out
    }

    /// Basis of rad(A) for A the image of the algebra, by the trace form.
    fn radical_elements(&self) -> Result<Vec<Matrix>> {
        let n = self.dim();
        if n > RADICAL_DIM_LIMIT {
            return Err(Error::RankTooLarge(n));
        }
        let gens = self.global_generators();
        let mut ech = Echelon::default();
        let mut basis: Vec<Matrix> = Vec::new();
        let flat = |a: &Matrix| -> Vec<num::BigRational> { (0..n).flat_map(|i| a.row(i).to_vec()).collect() };
        let mut push = |a: Matrix, basis: &mut Vec<Matrix>| {
            if ech.insert(flat(&a)) {
                basis.push(a);
            }
        };
        push(Matrix::identity(n), &mut basis);
        for g in &gens {
            push(g.clone(), &mut basis);
        }
        let mut head = 0;
        while head < basis.len() {
            let a = basis[head].clone();
            for g in &gens {
                push(g * &a, &mut basis);
            }
            head += 1;
        }
        let k = basis.len();
        let gram = Matrix::from_fn(k, k, |i, j| (&basis[i] * &basis[j]).trace());
        let ker = gram.kernel();
        let mut rad = Vec::new();
        for c in ker.columns() {
            let mut r = Matrix::zeros(n, n);
            for (j, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    r = &r + &basis[j].scale(x);
                }
            }
            rad.push(r);
        }
        Ok(rad)
    }

    /// rad(A)·M as a graded subspace.
    pub fn radical_action(&self) -> Result<Subspace> {
        let rad = self.radical_elements()?;
        let pieces = self.pieces();
        let off = self.global_offsets();
        let n = self.dim();
        let mut span = Matrix::zeros(n, 0);
        for r in &rad {
            span = span.hstack(r);
        }
        let mut out = pieces.zero();
        for p in 0..pieces.len() {
            let b = pieces.keys[p].0;
            let rows: Vec<usize> = pieces.coords[p].iter().map(|&c| off[&b] + c).collect();
            out.basis[p] = span.select_rows(&rows).column_basis();
        }
        Ok(out)
    }

    /// {v : rad(A)v = 0} as a graded subspace.
    pub fn socle(&self) -> Result<Subspace> {
        let rad = self.radical_elements()?;
        let pieces = self.pieces();
        let off = self.global_offsets();
        let n = self.dim();
        let mut stack = Matrix::zeros(0, n);
        for r in &rad {
            stack = stack.vstack(r);
        }
        let mut out = pieces.zero();
        for p in 0..pieces.len() {
            let b = pieces.keys[p].0;
            let cols: Vec<usize> = pieces.coords[p].iter().map(|&c| off[&b] + c).collect();
            out.basis[p] = stack.select_cols(&cols).kernel();
        }
        Ok(out)
    }

    /// M / rad(A)M.
    pub fn top(&self) -> Result<GradedModule> {
        let r = self.radical_action()?;
        self.quotient(&r)
    }

    /// The grading shift M[k]: every degree raised by k.
    pub fn shift(&self, k: i64) -> GradedModule {
        let mut x = self.clone();
        if self.graded {
            for d in x.blocks.values_mut() {
                for e in d.iter_mut() {
                    *e += k;
                }
            }
        }
        x
    }

    /// M^♭ = hom(M, k) with the action through ω: matrices transposed, degrees negated.
    pub fn dual_flat(&self) -> GradedModule {
        let sh = &self.shape;
        let blocks = self.blocks.iter().map(|(&b, d)| (b, d.iter().map(|x| -x).collect())).collect();
        let mut mats = BTreeMap::new();
        for &c in self.blocks.keys() {
            for g in sh.generators() {
                let b = sh.gen_target(g, c);
                if let Some(a) = self.mats.get(&(g, b)) {
                    mats.insert((g, c), a.transpose());
                }
            }
        }
        GradedModule { shape: sh.clone(), graded: self.graded, blocks, mats }
    }

    /// The shift making the character bar-invariant, and the shifted module.
    pub fn normalize_selfdual(&self) -> Result<(GradedModule, i64)> {
        if !self.graded {
            return Ok((self.clone(), 0));
        }
        let ch = self.character();
        let Some((lo, hi)) = ch.min_max_degree() else { return Ok((self.clone(), 0)) };
        if (lo + hi) % 2 != 0 {
            return Err(Error::NoSelfdualShift(format!("degree range [{lo}, {hi}] has odd sum")));
        }
        let s = -(lo + hi) / 2;
        let shifted = ch.shift(s);
        if shifted != shifted.bar() {
            return Err(Error::NoSelfdualShift("character is not bar-symmetric after centering".into()));
        }
        if !shifted.parity_ok() {
            return Err(Error::NoSelfdualShift("character violates the parity dichotomy".into()));
        }
        Ok((self.shift(s), s))
    }

    /// Isomorphism of simples: equality of normalized characters.
    pub fn iso_simple(&self, o: &GradedModule) -> Result<bool> {
        let (a, _) = self.normalize_selfdual()?;
        let (b, _) = o.normalize_selfdual()?;
        Ok(a.character() == b.character())
    }
}

pub(crate) fn gen_name(g: GenKind) -> String {
    match g {
        GenKind::Kappa(l) => format!("kappa{l}"),
        GenKind::Sigma(k) => format!("sigma{k}"),
        GenKind::Pi => "pi".into(),
    }
}

pub(crate) fn parse_gen_name(s: &str) -> Option<GenKind> {
    if s == "pi" {
        return Some(GenKind::Pi);
    }
    if let Some(x) = s.strip_prefix("kappa") {
        return x.parse().ok().filter(|&l| l >= 1).map(GenKind::Kappa);
    }
    if let Some(x) = s.strip_prefix("sigma") {
        return x.parse().ok().filter(|&k| k >= 1).map(GenKind::Sigma);
    }
    None
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::ground::int;
    use crate::klr::testutil::*;

    /// Ungraded module at m=1 on the blocks i and θ(i), κ₁ = 0, π = c in both directions.
    pub fn pi_pair(q: &Arc<Quiver>, id: &str, c: i64) -> GradedModule {
        let sh = shape_b(q, &[(id, 1)]);
        let i = q.find(id).unwrap();
        let b = sh.seq_index(&Seq(vec![i])).unwrap();
        let b2 = sh.gen_target(GenKind::Pi, b);
        let mut blocks = BTreeMap::new();
        blocks.insert(b, vec![0]);
        blocks.insert(b2, vec![0]);
        let mut mats = BTreeMap::new();
        mats.insert((GenKind::Pi, b), Matrix::scalar(1, &int(c)));
        mats.insert((GenKind::Pi, b2), Matrix::scalar(1, &int(c)));
        GradedModule::new(sh, false, blocks, mats).unwrap()
    }

    #[test]
    fn trivial_is_valid_and_simple() {
        let t = GradedModule::trivial(window(2), Flavor::B).unwrap();
        assert!(t.validate().passed());
        assert_eq!(t.character(), Character::unit());
        t.certify_simple().unwrap();
        assert_eq!(t.epsilon(0), 0);
        assert_eq!(t.dual_flat().character(), t.character());
    }

    #[test]
    fn pi_squared_must_vanish_when_lambda_sum_positive() {
        // window at q=2: λ(2)=1, so π²1_i = κ₀^λ κ₁^λ' acts by 0
        let q = window(2);
        assert!(pi_pair(&q, "2", 0).validate().passed());
        let bad = pi_pair(&q, "2", 1).validate();
        assert!(bad.violations.iter().any(|v| v.contains("B(c) pi^2")), "{bad}");
        // at q=5 the λ-sum vanishes and π² = 1 is the two-dimensional simple
        let q5 = window(5);
        let good = pi_pair(&q5, "2", 1);
        assert!(good.validate().passed());
        good.certify_simple().unwrap();
    }

    #[test]
    fn quotient_and_submodule_dimensions() {
        let q = window(2);
        let t = GradedModule::trivial(q.clone(), Flavor::B).unwrap();
        let i = q.find("2").unwrap();
        let f = induce_f(&t, i).unwrap();
        assert_eq!(f.dim(), 2);
        let p = f.pieces();
        let rad = f.radical_action().unwrap();
        assert_eq!(rad.dim(), 1);
        let sub = f.submodule(&rad).unwrap();
        let top = f.quotient(&rad).unwrap();
        assert_eq!(sub.dim() + top.dim(), 2);
        assert!(sub.validate().passed() && top.validate().passed());
        top.certify_simple().unwrap();
        assert!(f.certify_simple().is_err());
        assert_eq!(p.largest_in(&p.full()).dim(), 2);
    }

    #[test]
    fn gen_names_round_trip() {
        for g in [GenKind::Kappa(3), GenKind::Sigma(1), GenKind::Pi] {
            assert_eq!(parse_gen_name(&gen_name(g)), Some(g));
        }
        assert_eq!(parse_gen_name("kappa0"), None);
    }
}
