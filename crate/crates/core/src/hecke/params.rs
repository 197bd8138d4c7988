use std::fmt;

use crate::error::{Error, Result};
use crate::ground::rational::{fmt_short, is_pm_one, parse_rational};
use crate::ground::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    B,
    C,
}

/// Parameters of the affine Hecke algebra: H_B(p, q) or H_C(p, q0, q1).
#[derive(Clone, Debug, PartialEq)]
pub enum HeckeParams {
    B { p: Rational, q: Rational },
    C { p: Rational, q0: Rational, q1: Rational },
}

impl HeckeParams {
    pub fn family(&self) -> Family {
        match self {
            HeckeParams::B { .. } => Family::B,
            HeckeParams::C { .. } => Family::C,
        }
    }

    pub fn p(&self) -> &Rational {
        match self {
            HeckeParams::B { p, .. } | HeckeParams::C { p, .. } => p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let named: Vec<(&str, &Rational)> = match self {
            HeckeParams::B { p, q } => vec![("p", p), ("q", q)],
            HeckeParams::C { p, q0, q1 } => vec![("p", p), ("q0", q0), ("q1", q1)],
        };
        for (n, x) in named {
            if is_pm_one(x) || num::Zero::is_zero(x) {
                return Err(Error::DegenerateParameter(format!("{n}={}", fmt_short(x))));
            }
        }
        Ok(())
    }

    /// Parse `values=2,8,1/2,1/8;p=2;q=2` (or `q0=…;q1=…` for type C).
    pub fn parse_inline(s: &str) -> Result<(Vec<Rational>, HeckeParams)> {
        let mut fields = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse { line: 0, msg: format!("expected key=value, got '{part}'") })?;
            fields.push((k.trim().to_string(), v.trim().to_string()));
        }
        Self::from_fields(&fields, 0)
    }

    pub(crate) fn from_fields(fields: &[(String, String)], line: usize) -> Result<(Vec<Rational>, HeckeParams)> {
        let get = |k: &str| fields.iter().find(|(n, _)| n == k).map(|(_, v)| v.as_str());
        let rat = |k: &str| -> Result<Option<Rational>> {
            get(k).map(|v| parse_rational(v).map_err(|_| Error::Parse { line, msg: format!("bad rational for {k}: '{v}'") })).transpose()
        };
        for (k, _) in fields {
            if !["values", "p", "q", "q0", "q1"].contains(&k.as_str()) {
                return Err(Error::Parse { line, msg: format!("unknown hecke field '{k}'") });
            }
        }
        let values = get("values")
            .ok_or_else(|| Error::Parse { line, msg: "missing 'values'".into() })?
            .split(',')
            .map(|v| parse_rational(v.trim()).map_err(|_| Error::Parse { line, msg: format!("bad value '{}'", v.trim()) }))
            .collect::<Result<Vec<_>>>()?;
        let p = rat("p")?.ok_or_else(|| Error::Parse { line, msg: "missing 'p'".into() })?;
        let params = match (rat("q")?, rat("q0")?, rat("q1")?) {
            (Some(q), None, None) => HeckeParams::B { p, q },
            (None, Some(q0), Some(q1)) => HeckeParams::C { p, q0, q1 },
            _ => return Err(Error::Parse { line, msg: "give either q, or both q0 and q1".into() }),
        };
        Ok((values, params))
    }
}

impl fmt::Display for HeckeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeckeParams::B { p, q } => write!(f, "B(p={}, q={})", fmt_short(p), fmt_short(q)),
            HeckeParams::C { p, q0, q1 } => {
                write!(f, "C(p={}, q0={}, q1={})", fmt_short(p), fmt_short(q0), fmt_short(q1))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::rational::{int, rat};

    #[test]
    fn inline() {
        let (v, p) = HeckeParams::parse_inline("values=2,8,1/2,1/8;p=2;q=2").unwrap();
        assert_eq!(v, vec![int(2), int(8), rat(1, 2), rat(1, 8)]);
        assert_eq!(p, HeckeParams::B { p: int(2), q: int(2) });
        let (_, p) = HeckeParams::parse_inline("values=3,1/3; p=2; q0=-3; q1=3").unwrap();
        assert_eq!(p.family(), Family::C);
        assert!(HeckeParams::parse_inline("values=3;p=2").is_err());
        assert!(HeckeParams::parse_inline("values=3;p=2;q=1").unwrap().1.validate().is_err());
    }
}
