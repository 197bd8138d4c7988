//! Graded subspaces stored per homogeneous piece (block, degree).

use std::collections::HashMap;

use num::Zero;

use super::GradedModule;
use crate::ground::{Matrix, Rational};

pub type PieceKey = (usize, i64);

/// The homogeneous pieces of a module and the generator maps between them.
#[derive(Clone, Debug)]
pub struct Pieces {
    pub(crate) keys: Vec<PieceKey>,
    /// block-local coordinates of each piece
    pub(crate) coords: Vec<Vec<usize>>,
    /// (target piece, matrix) for every nonzero generator restriction
    pub(crate) maps: Vec<Vec<(usize, Matrix)>>,
}

/// A graded subspace: independent columns in each piece's coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    pub(crate) basis: Vec<Matrix>,
}

impl Pieces {
    pub(crate) fn of(m: &GradedModule) -> Pieces {
        let mut keys = Vec::new();
        let mut coords = Vec::new();
        for (&b, degs) in &m.blocks {
            let mut by_deg: Vec<(i64, Vec<usize>)> = Vec::new();
            for (k, &d) in degs.iter().enumerate() {
                match by_deg.iter_mut().find(|(e, _)| *e == d) {
                    Some((_, v)) => v.push(k),
                    None => by_deg.push((d, vec![k])),
                }
            }
            by_deg.sort();
            for (d, v) in by_deg {
                keys.push((b, d));
                coords.push(v);
            }
        }
        let index: HashMap<PieceKey, usize> = keys.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let sh = m.shape();
        let mut maps = vec![Vec::new(); keys.len()];
        for (p, &(b, d)) in keys.iter().enumerate() {
            for g in sh.generators() {
                let Some(mat) = m.mats.get(&(g, b)) else { continue };
                let c = sh.gen_target(g, b);
                let d2 = if m.graded { d + sh.gen_degree(g, b) } else { 0 };
                let Some(&q) = index.get(&(c, d2)) else { continue };
                let sub = mat.select_rows(&coords[q]).select_cols(&coords[p]);
                if !sub.is_zero() {
                    maps[p].push((q, sub));
                }
            }
        }
        Pieces { keys, coords, maps }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn dim(&self, p: usize) -> usize {
        self.coords[p].len()
    }

    pub fn full(&self) -> Subspace {
        Subspace { basis: (0..self.len()).map(|p| Matrix::identity(self.dim(p))).collect() }
    }

    pub fn zero(&self) -> Subspace {
        Subspace { basis: (0..self.len()).map(|p| Matrix::zeros(self.dim(p), 0)).collect() }
    }

    /// Everything in the blocks selected by `keep`.
    pub fn blocks_where(&self, keep: impl Fn(usize) -> bool) -> Subspace {
        Subspace {
            basis: (0..self.len())
                .map(|p| if keep(self.keys[p].0) { Matrix::identity(self.dim(p)) } else { Matrix::zeros(self.dim(p), 0) })
                .collect(),
        }
    }

    /// The submodule generated by `s`.
    pub fn generate(&self, s: &Subspace) -> Subspace {
        let mut out = s.clone();
        let mut queue: Vec<usize> = (0..self.len()).filter(|&p| out.basis[p].cols() > 0).collect();
        while let Some(p) = queue.pop() {
            for (q, g) in &self.maps[p] {
                let img = g * &out.basis[p];
                let merged = out.basis[*q].hstack(&img).column_basis();
                if merged.cols() > out.basis[*q].cols() {
                    out.basis[*q] = merged;
                    if !queue.contains(q) {
                        queue.push(*q);
                    }
                }
            }
        }
        out
    }

    /// The largest submodule contained in `s`.
    pub fn largest_in(&self, s: &Subspace) -> Subspace {
        let mut out = s.clone();
        loop {
            let mut changed = false;
            for p in 0..self.len() {
                if out.basis[p].cols() == 0 {
                    continue;
                }
                for (q, g) in &self.maps[p] {
                    let annihilator = out.basis[*q].transpose().kernel().transpose();
                    if annihilator.rows() == 0 {
                        continue;
                    }
                    let k = (&(&annihilator * g) * &out.basis[p]).kernel();
                    if k.cols() < out.basis[p].cols() {
                        out.basis[p] = &out.basis[p] * &k;
                        changed = true;
                        if out.basis[p].cols() == 0 {
                            break;
                        }
                    }
                }
            }
            if !changed {
                return out;
            }
        }
    }

    /// Column indices complementing the span of `s` in piece p.
    pub(crate) fn complement(&self, s: &Matrix) -> Vec<usize> {
        let n = s.rows();
        if s.cols() == 0 {
            return (0..n).collect();
        }
        let (_, pivots) = s.transpose().rref();
        (0..n).filter(|c| !pivots.contains(c)).collect()
    }
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.iter().map(Matrix::cols).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Piecewise sum.
    pub fn sum(&self, o: &Subspace) -> Subspace {
        Subspace { basis: self.basis.iter().zip(&o.basis).map(|(a, b)| a.hstack(b).column_basis()).collect() }
    }
}

/// Incremental row echelon basis for testing linear independence of vectors.
#[derive(Default)]
pub(crate) struct Echelon {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    /// Adds `v` if it is independent of the stored vectors.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.rows.len()
    }
}
