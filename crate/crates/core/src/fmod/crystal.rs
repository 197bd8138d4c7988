//! Crystal operators on simple modules and the crystal graph.

use std::collections::HashMap;
use std::fmt::Write;
use std::sync::Arc;

use rayon::prelude::*;

use super::{induce_f, GradedModule, RADICAL_DIM_LIMIT};
use crate::characters::Character;
use crate::error::{Error, Result};
use crate::klr::Flavor;
use crate::quiver::Quiver;

/// F̃_i M = top(F_i M) for simple M, ♭-normalized.
///
/// The top is computed as F_iM/J with J the largest submodule supported away
/// from the sequences ending in i^{ε+1}; the quotient is then certified simple.
pub fn ftilde(m: &GradedModule, i: usize) -> Result<GradedModule> {
    let n = induce_f(m, i)?;
    let eps = m.epsilon(i);
    let sh = n.shape().clone();
    let p = n.pieces();
    let j = p.largest_in(&p.blocks_where(|b| {
        let s = &sh.seq(b).0;
        s.len() < eps + 1 || s[s.len() - eps - 1..].iter().any(|&x| x != i)
    }));
    let q = n.quotient(&j)?;
    match q.certify_simple() {
        Ok(()) => Ok(q.normalize_selfdual()?.0),
        Err(e) if n.dim() <= RADICAL_DIM_LIMIT => {
            let t = n.top()?;
            t.certify_simple().map_err(|_| e)?;
            Ok(t.normalize_selfdual()?.0)
        }
        Err(e) => Err(e),
    }
}

/// Ẽ_i M = soc(e_i M) for simple M, or None when ε_i(M) = 0.
///
/// Computed as F̃_i^{ε−1} applied to the joint kernel of the last ε κ's on the
/// blocks ending in i^ε, then checked to embed into e_i M.
pub fn etilde(m: &GradedModule, i: usize) -> Result<Option<GradedModule>> {
    let eps = m.epsilon(i);
    if eps == 0 {
        return Ok(None);
    }
    let base = m
        .restrict_tail(i, eps, true)?
        .ok_or_else(|| Error::SimplicityCertificationFailed("maximal restriction vanished".into()))?;
    base.certify_simple()?;
    let mut x = base.normalize_selfdual()?.0;
    for _ in 1..eps {
        x = ftilde(&x, i)?;
    }
    let e = m.restrict_e(i)?.expect("ε ≥ 1");
    if x.hom_dimension(&e)? == 0 {
        return Err(Error::ClosureViolation(format!("candidate for E~_{} does not embed into e_i M", m.quiver().id(i))));
    }
    Ok(Some(x))
}

#[derive(Clone, Debug)]
pub struct CrystalNode {
    pub id: usize,
    pub rank: usize,
    pub character: Character,
    pub witness: GradedModule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrystalEdge {
    pub from: usize,
    pub vertex: usize,
    pub to: usize,
}

#[derive(Clone, Debug)]
pub struct CrystalGraph {
    pub quiver: Arc<Quiver>,
    pub nodes: Vec<CrystalNode>,
    pub edges: Vec<CrystalEdge>,
    /// number of Ẽ_i evaluations verified during closure
    pub etilde_checks: usize,
}

fn key(ch: &Character) -> String {
    format!("{:?}", ch.coeffs())
}

/// Breadth-first closure of the trivial module under all F̃_i up to rank `depth`,
/// followed by a check that every Ẽ_i of a node is zero or a node one level down,
/// and that Ẽ_i inverts each F̃_i edge.
pub fn build_crystal(quiver: Arc<Quiver>, depth: usize) -> Result<CrystalGraph> {
    if depth > 3 {
        return Err(Error::RankTooLarge(depth));
    }
    let triv = GradedModule::trivial(quiver.clone(), Flavor::B)?;
    let mut nodes = vec![CrystalNode { id: 0, rank: 0, character: triv.character(), witness: triv }];
    let mut index: HashMap<String, usize> = HashMap::new();
    index.insert(key(&nodes[0].character), 0);
    let mut edges = Vec::new();
    let mut frontier = vec![0];
    for _ in 0..depth {
        let jobs: Vec<(usize, usize)> = frontier.iter().flat_map(|&b| (0..quiver.n()).map(move |i| (b, i))).collect();
        let results: Vec<Result<GradedModule>> = jobs.par_iter().map(|&(b, i)| ftilde(&nodes[b].witness, i)).collect();
        let mut next = Vec::new();
        for (&(b, i), r) in jobs.iter().zip(results) {
            let w = r?;
            let ch = w.character();
            let k = key(&ch);
            let to = match index.get(&k) {
                Some(&t) => t,
                None => {
                    let id = nodes.len();
                    index.insert(k, id);
                    nodes.push(CrystalNode { id, rank: w.rank(), character: ch, witness: w });
                    next.push(id);
                    id
                }
            };
            edges.push(CrystalEdge { from: b, vertex: i, to });
        }
        frontier = next;
    }
    let mut g = CrystalGraph { quiver, nodes, edges, etilde_checks: 0 };
    g.etilde_checks = g.check_closure()?;
    Ok(g)
}

impl CrystalGraph {
    fn check_closure(&self) -> Result<usize> {
        let q = &self.quiver;
        let jobs: Vec<(usize, usize)> = self.nodes.iter().flat_map(|n| (0..q.n()).map(move |i| (n.id, i))).collect();
        let results: Vec<Result<Option<usize>>> = jobs
            .par_iter()
            .map(|&(b, i)| {
                let node = &self.nodes[b];
                match etilde(&node.witness, i)? {
                    None => Ok(None),
                    Some(e) => {
                        let k = key(&e.character());
                        match self.nodes.iter().find(|n| key(&n.character) == k) {
                            Some(n) if n.rank + 1 == node.rank => Ok(Some(n.id)),
                            _ => Err(Error::ClosureViolation(format!(
                                "E~_{} of node {} is not a node:\n{}",
                                q.id(i),
                                b,
                                e.character().render(q)
                            ))),
                        }
                    }
                }
            })
            .collect();
        let mut e_of: HashMap<(usize, usize), Option<usize>> = HashMap::new();
        for (&job, r) in jobs.iter().zip(results) {
            e_of.insert(job, r?);
        }
        for ed in &self.edges {
            if e_of[&(ed.to, ed.vertex)] != Some(ed.from) {
                return Err(Error::ClosureViolation(format!(
                    "E~_{0} F~_{0} does not return node {1}",
                    q.id(ed.vertex),
                    ed.from
                )));
            }
            let (a, b) = (&self.nodes[ed.from].witness, &self.nodes[ed.to].witness);
            if b.epsilon(ed.vertex) != a.epsilon(ed.vertex) + 1 {
                return Err(Error::ClosureViolation(format!("epsilon_{} does not rise along an edge from {}", q.id(ed.vertex), ed.from)));
            }
        }
        Ok(jobs.len())
    }

    pub fn nodes_at(&self, rank: usize) -> Vec<&CrystalNode> {
        self.nodes.iter().filter(|n| n.rank == rank).collect()
    }

    pub fn node_of(&self, ch: &Character) -> Option<&CrystalNode> {
        let k = key(ch);
        self.nodes.iter().find(|n| key(&n.character) == k)
    }

    /// Text listing: nodes with dimensions and characters, then edges.
    pub fn render(&self) -> String {
        let q = &self.quiver;
        let mut s = String::new();
        for n in &self.nodes {
            writeln!(s, "node {} rank {} dim {}", n.id, n.rank, n.witness.dim()).unwrap();
            for line in n.character.render(q).lines() {
                writeln!(s, "  {line}").unwrap();
            }
        }
        for e in &self.edges {
            writeln!(s, "edge {} -{}-> {}", e.from, q.id(e.vertex), e.to).unwrap();
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let q = &self.quiver;
        let mut s = String::from("digraph crystal {\n");
        for n in &self.nodes {
            let label = n.character.render(q).trim_end().replace('\n', "\\n");
            writeln!(s, "  n{} [label=\"{}\"];", n.id, label).unwrap();
        }
        for e in &self.edges {
            writeln!(s, "  n{} -> n{} [label=\"{}\"];", e.from, e.to, q.id(e.vertex)).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::LaurentV;
    use crate::klr::testutil::window;
    use crate::quiver::Seq;

    #[test]
    fn rank_one_crystal() {
        // q = 2: λ(2) = 1, λ(1/2) = 0, λ(8) = λ(1/8) = 0
        let q = window(2);
        let g = build_crystal(q.clone(), 1).unwrap();
        let (a, ta, b) = (q.find("2").unwrap(), q.find("1/2").unwrap(), q.find("8").unwrap());
        let n_a = g.nodes[g.edges.iter().find(|e| e.vertex == a).unwrap().to].clone();
        let n_ta = g.nodes[g.edges.iter().find(|e| e.vertex == ta).unwrap().to].clone();
        assert_ne!(n_a.id, n_ta.id);
        assert_eq!(n_a.character, Character::single(true, Seq(vec![a]), LaurentV::one(), 0));
        assert_eq!(n_a.witness.epsilon(a), 1);
        assert_eq!(n_a.witness.epsilon(ta), 0);
        let n_b = &g.nodes[g.edges.iter().find(|e| e.vertex == b).unwrap().to];
        assert_eq!(n_b.witness.dim(), 2);
        assert_eq!(g.nodes_at(1).len(), 3);
    }

    #[test]
    fn rank_two_closure() {
        let g = build_crystal(window(2), 2).unwrap();
        assert!(g.etilde_checks > 0);
        for n in &g.nodes {
            assert!(n.character.parity_ok());
            assert_eq!(n.witness.dual_flat().character(), n.character);
        }
    }
}

