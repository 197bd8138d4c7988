//! Module file format.
//!
//! ```text
//! flavor B
//! graded true
//! nu 2+1/2
//! block (1/2,2) degrees 0
//! matrix kappa1 (1/2,2)
//! 0 0 1/3
//! end
//! ```
//! Blocks are named by their rendered sequence; matrix entries are sparse
//! `row col value` triples; `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

use super::{gen_name, parse_gen_name, GradedModule};
use crate::error::{Error, Result};
use crate::ground::{fmt_rational, parse_rational, Matrix};
use crate::klr::{Flavor, GenKind, Shape};
use crate::quiver::{parse_nu, Quiver};

pub fn write_module(m: &GradedModule) -> String {
    let sh = m.shape();
    let mut s = String::new();
    let fl = match sh.flavor() {
        Flavor::B => "B",
        Flavor::A => "A",
    };
    writeln!(s, "flavor {fl}").unwrap();
    writeln!(s, "graded {}", m.is_graded()).unwrap();
    writeln!(s, "nu {}", sh.quiver().render_nu(sh.nu())).unwrap();
    for (&b, degs) in m.blocks() {
        let d: Vec<String> = degs.iter().map(i64::to_string).collect();
        writeln!(s, "block {} degrees {}", sh.render_seq(b), d.join(" ")).unwrap();
    }
    for (&(g, b), a) in m.mats() {
        writeln!(s, "matrix {} {}", gen_name(g), sh.render_seq(b)).unwrap();
        for (r, c, v) in a.nonzeros() {
            writeln!(s, "{r} {c} {}", fmt_rational(v)).unwrap();
        }
        s.push_str("end\n");
    }
    s
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_module(text: &str, quiver: Arc<Quiver>) -> Result<GradedModule> {
    let mut flavor = None;
    let mut graded = true;
    let mut shape: Option<Arc<Shape>> = None;
    let mut names: BTreeMap<String, usize> = BTreeMap::new();
    let mut blocks: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
    let mut entries: Vec<(usize, GenKind, usize, Vec<(usize, usize, crate::ground::Rational)>)> = Vec::new();
    let mut open: Option<(usize, GenKind, usize, Vec<(usize, usize, crate::ground::Rational)>)> = None;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let t = raw.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            continue;
        }
        if let Some(cur) = open.as_mut() {
            if t == "end" {
                entries.push(open.take().expect("open matrix"));
                continue;
            }
            let f: Vec<&str> = t.split_whitespace().collect();
            if f.len() != 3 {
                return Err(perr(line, format!("expected 'row col value', got '{t}'")));
            }
            let r = f[0].parse().map_err(|_| perr(line, "bad row index"))?;
            let c = f[1].parse().map_err(|_| perr(line, "bad column index"))?;
            let v = parse_rational(f[2]).map_err(|_| perr(line, format!("bad value '{}'", f[2])))?;
            cur.3.push((r, c, v));
            continue;
        }
        let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        let rest = rest.trim();
        match kw {
            "flavor" => {
                flavor = Some(match rest {
                    "B" => Flavor::B,
                    "A" => Flavor::A,
                    _ => return Err(perr(line, format!("unknown flavor '{rest}'"))),
                })
            }
            "graded" => {
                graded = match rest {
                    "true" => true,
                    "false" => false,
                    _ => return Err(perr(line, "graded must be true or false")),
                }
            }
            "nu" => {
                let fl = flavor.ok_or_else(|| perr(line, "flavor must precede nu"))?;
                let nu = parse_nu(&quiver, rest).map_err(|e| perr(line, e.to_string()))?;
                let sh = Shape::new(quiver.clone(), fl, nu).map_err(|e| perr(line, e.to_string()))?;
                names = (0..sh.seqs().len()).map(|b| (sh.render_seq(b), b)).collect();
                shape = Some(sh);
            }
            "block" => {
                if shape.is_none() {
                    return Err(perr(line, "nu must precede blocks"));
                }
                let (name, degs) = rest.split_once("degrees").ok_or_else(|| perr(line, "expected 'block SEQ degrees D...'"))?;
                let name: String = name.split_whitespace().collect();
                let b = *names.get(&name).ok_or_else(|| perr(line, format!("unknown sequence {name}")))?;
                let d: std::result::Result<Vec<i64>, _> = degs.split_whitespace().map(str::parse).collect();
                let d = d.map_err(|_| perr(line, "bad degree"))?;
                if blocks.insert(b, d).is_some() {
                    return Err(perr(line, format!("block {name} listed twice")));
                }
            }
            "matrix" => {
                let (g, name) = rest.split_once(char::is_whitespace).ok_or_else(|| perr(line, "expected 'matrix GEN SEQ'"))?;
                let g = parse_gen_name(g).ok_or_else(|| perr(line, format!("unknown generator '{g}'")))?;
                let name: String = name.split_whitespace().collect();
                let b = *names.get(&name).ok_or_else(|| perr(line, format!("unknown sequence {name}")))?;
                open = Some((line, g, b, Vec::new()));
            }
            _ => return Err(perr(line, format!("unknown keyword '{kw}'"))),
        }
    }
    if let Some((line, ..)) = open {
        return Err(perr(line, "matrix without 'end'"));
    }
    let sh = shape.ok_or_else(|| perr(0, "missing nu"))?;
    let dim = |b: usize| blocks.get(&b).map_or(0, Vec::len);
    let mut mats = BTreeMap::new();
    for (line, g, b, trip) in entries {
        if !sh.generators().contains(&g) {
            return Err(perr(line, format!("generator {} not in this algebra", gen_name(g))));
        }
        let c = sh.gen_target(g, b);
        let mut a = Matrix::zeros(dim(c), dim(b));
        for (r, col, v) in trip {
            if r >= a.rows() || col >= a.cols() {
                return Err(perr(line, format!("entry ({r},{col}) outside {}x{}", a.rows(), a.cols())));
            }
            a[(r, col)] = v;
        }
        if mats.insert((g, b), a).is_some() {
            return Err(perr(line, "matrix listed twice"));
        }
    }
    GradedModule::new(sh, graded, blocks, mats)
}
