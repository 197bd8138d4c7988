//! Quiver configuration files.
//!
//! ```text
//! # abstract form; sections in this order, [theta] and [lambda] optional only if empty
//! [vertices]
//! a            # or: a = 5/2  (optional value)
//! b
//! [arrows]
//! a -> b       # or: a -> b = 2
//! [theta]
//! a = b
//! [lambda]
//! a = 1
//! ```
//!
//! or a single `[hecke]` section with `values = 2, 8, 1/2, 1/8`, `p = 2` and
//! either `q = 2` or `q0 = …` / `q1 = …`.

use super::{AbstractSpec, DimVector, Quiver, Seq};
use crate::error::{Error, Result};
use crate::ground::rational::parse_rational;
use crate::ground::Rational;
use crate::hecke::HeckeParams;

/// Parsed configuration: the quiver plus Hecke data when the file had a `[hecke]` section.
#[derive(Clone, Debug)]
pub struct QuiverConfig {
    pub quiver: Quiver,
    pub hecke: Option<(Vec<Rational>, HeckeParams)>,
}

const ORDER: [&str; 4] = ["vertices", "arrows", "theta", "lambda"];

pub fn parse_config(text: &str) -> Result<QuiverConfig> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut section: Option<(String, usize)> = None;
    let mut last_rank: Option<usize> = None;
    let mut hecke_fields: Vec<(String, String)> = Vec::new();
    let mut hecke_line = 0;
    let mut spec = AbstractSpec::default();
    let mut saw_abstract = false;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let s = raw.split('#').next().unwrap().trim();
        if s.is_empty() {
            continue;
        }
        if let Some(name) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let name = name.trim().to_string();
            if name == "hecke" {
                if saw_abstract || section.is_some() {
                    return Err(perr(line, "[hecke] must be the only section".into()));
                }
                hecke_line = line;
            } else {
                let rank = ORDER
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| perr(line, format!("unknown section [{name}]")))?;
                if matches!(&section, Some((n, _)) if n == "hecke") {
                    return Err(perr(line, "[hecke] must be the only section".into()));
                }
                if last_rank.is_some_and(|r| r >= rank) {
                    return Err(perr(line, format!("section [{name}] out of order")));
                }
                last_rank = Some(rank);
                saw_abstract = true;
            }
            section = Some((name, line));
            continue;
        }
        let Some((sec, _)) = &section else {
            return Err(perr(line, "entry outside any section".into()));
        };
        let kv = |s: &str| -> Result<(String, String)> {
            let (a, b) = s.split_once('=').ok_or_else(|| perr(line, format!("expected 'key = value', got '{s}'")))?;
            Ok((a.trim().to_string(), b.trim().to_string()))
        };
        match sec.as_str() {
            "hecke" => {
                let (a, b) = kv(s)?;
                if hecke_fields.iter().any(|(n, _)| *n == a) {
                    return Err(perr(line, format!("duplicate field '{a}'")));
                }
                hecke_fields.push((a, b));
            }
            "vertices" => {
                let (id, val) = match s.split_once('=') {
                    Some((a, b)) => {
                        let v = parse_rational(b).map_err(|_| perr(line, format!("bad value '{}'", b.trim())))?;
                        (a.trim().to_string(), Some(v))
                    }
                    None => (s.to_string(), None),
                };
                if id.is_empty() || id.contains(char::is_whitespace) {
                    return Err(perr(line, format!("bad vertex id '{id}'")));
                }
                if spec.vertices.iter().any(|(v, _)| *v == id) {
                    return Err(perr(line, format!("duplicate vertex '{id}'")));
                }
                spec.vertices.push((id, val));
            }
            "arrows" => {
                let (pair, mult) = match s.split_once('=') {
                    Some((a, b)) => (a, b.trim().parse::<u32>().map_err(|_| perr(line, format!("bad multiplicity '{}'", b.trim())))?),
                    None => (s, 1),
                };
                let (a, b) = pair.split_once("->").ok_or_else(|| perr(line, format!("expected 'a -> b', got '{s}'")))?;
                let (a, b) = (a.trim().to_string(), b.trim().to_string());
                known(&spec, &a, line)?;
                known(&spec, &b, line)?;
                spec.arrows.push((a, b, mult));
            }
            "theta" => {
                let (a, b) = kv(s)?;
                known(&spec, &a, line)?;
                known(&spec, &b, line)?;
                spec.theta.push((a, b));
            }
            "lambda" => {
                let (a, b) = kv(s)?;
                known(&spec, &a, line)?;
                let l = b.parse::<u32>().map_err(|_| perr(line, format!("bad weight '{b}'")))?;
                spec.lambda.push((a, l));
            }
            _ => unreachable!(),
        }
    }

    if hecke_line > 0 {
        let (values, params) = HeckeParams::from_fields(&hecke_fields, hecke_line)?;
        let quiver = Quiver::build_from_params(&values, &params).map_err(|e| at(e, hecke_line))?;
        return Ok(QuiverConfig { quiver, hecke: Some((values, params)) });
    }
    if !saw_abstract {
        return Err(perr(0, "empty configuration".into()));
    }
    let quiver = Quiver::build_abstract(&spec).map_err(|e| at(e, 0))?;
    Ok(QuiverConfig { quiver, hecke: None })
}

fn known(spec: &AbstractSpec, id: &str, line: usize) -> Result<()> {
    if spec.vertices.iter().any(|(v, _)| v == id) {
        Ok(())
    } else {
        Err(Error::Parse { line, msg: format!("unknown vertex '{id}'") })
    }
}

// Validation failures keep their own variant; only parse errors carry a line.
fn at(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { msg, .. } => Error::Parse { line, msg },
        e => e,
    }
}

/// Parse a dimension vector like `2+1/2` or `2*2+2*1/2` (count*vertex).
pub fn parse_nu(q: &Quiver, s: &str) -> Result<DimVector> {
    let mut nu = DimVector::zero(q.n());
    let s = s.trim();
    if s == "0" || s.is_empty() {
        return Ok(nu);
    }
    for term in s.split('+') {
        let term = term.trim();
        let (c, id) = match term.split_once('*') {
            Some((c, id)) => {
                let c = c.trim().parse::<u32>().map_err(|_| Error::Parse { line: 0, msg: format!("bad count in '{term}'") })?;
                (c, id.trim())
            }
            None => (1, term),
        };
        nu.add_vertex(q.find(id)?, c);
    }
    Ok(nu)
}

/// Parse a vertex sequence like `(2,8)`, `2,8` or `()`.
pub fn parse_seq(q: &Quiver, s: &str) -> Result<Seq> {
    let t = s.trim();
    let t = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
    if t.trim().is_empty() {
        return Ok(Seq(Vec::new()));
    }
    t.split(',').map(|id| q.find(id.trim())).collect::<Result<Vec<_>>>().map(Seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ABSTRACT: &str = "\
# a 2-cycle
[vertices]
a
b
[arrows]
a -> b
b -> a
[theta]
a = b
[lambda]
a = 1
";

    #[test]
    fn abstract_file() {
        let c = parse_config(ABSTRACT).unwrap();
        let q = c.quiver;
        assert_eq!(q.n(), 2);
        assert_eq!(q.cartan(0, 1), -2);
        assert_eq!(q.lambda(0), 1);
        assert!(c.hecke.is_none());
    }

    #[test]
    fn hecke_file() {
        let c = parse_config("[hecke]\nvalues = 2, 8, 1/2, 1/8\np = 2\nq = 2\n").unwrap();
        assert_eq!(c.quiver.n(), 4);
        let nu = parse_nu(&c.quiver, "2*2+2*1/2").unwrap();
        assert_eq!(nu.size(), 4);
    }

    #[test]
    fn line_numbers() {
        let bad = ABSTRACT.replace("b -> a", "b -> c");
        assert_eq!(parse_config(&bad).unwrap_err(), Error::Parse { line: 7, msg: "unknown vertex 'c'".into() });
        let bad = "[arrows]\n[vertices]\n";
        assert!(matches!(parse_config(bad), Err(Error::Parse { line: 2, .. })));
        let bad = "[hecke]\nvalues = 2, 1/2\np = x\nq = 3\n";
        assert!(matches!(parse_config(bad), Err(Error::Parse { line: 1, .. })));
        let bad = "[hecke]\nvalues = 2, 1/2\np = 2\nq = 3\nnoise\n";
        assert!(matches!(parse_config(bad), Err(Error::Parse { line: 5, .. })));
    }

    #[test]
    fn invariant_errors_survive() {
        let bad = ABSTRACT.replace("a = b", "a = a\nb = b");
        assert!(matches!(parse_config(&bad), Err(Error::ThetaFixedPoint(_))));
    }
}
