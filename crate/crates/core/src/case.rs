//! Canonical case identifiers, e.g. `J g=7/3 h=11/4 D=I1,II2 n=3`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};
use crate::seed::{Family, IndexSpec, Seed, SeedType, SystemParams};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CaseKey {
    pub family: Family,
    pub g: Rational,
    pub h: Option<Rational>,
    pub entries: Vec<Seed>,
    pub n: u32,
}

impl CaseKey {
    pub fn new(params: &SystemParams, index: &IndexSpec, n: u32) -> Self {
        CaseKey {
            family: params.family(),
            g: params.g().clone(),
            h: params.h_opt().cloned(),
            entries: index.entries().to_vec(),
            n,
        }
    }

    pub fn params(&self) -> Result<SystemParams> {
        SystemParams::new(self.family, self.g.clone(), self.h.clone())
    }

    pub fn index(&self) -> Result<IndexSpec> {
        IndexSpec::new(&self.params()?, self.entries.clone())
    }
}

impl fmt::Display for CaseKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} g={}", self.family, self.g)?;
        if let Some(h) = &self.h {
            write!(f, " h={h}")?;
        }
        let d: Vec<String> = self.entries.iter().map(Seed::to_string).collect();
        write!(f, " D={} n={}", d.join(","), self.n)
    }
}

/// Parses `I1` / `II2` style seeds.
pub fn parse_compact_seed(s: &str) -> Result<Seed> {
    let bad = || Error::Parse(format!("invalid seed {s:?}"));
    let (kind, rest) = if let Some(r) = s.strip_prefix("II") {
        (SeedType::II, r)
    } else if let Some(r) = s.strip_prefix('I') {
        (SeedType::I, r)
    } else {
        return Err(bad());
    };
    Ok(Seed::new(rest.parse().map_err(|_| bad())?, kind))
}

/// Parses the CLI grammar `TYPE:DEGREE,…` (e.g. `I:1,II:2`); order is kept.
pub fn parse_index_list(s: &str) -> Result<Vec<Seed>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|item| {
            let bad = || Error::Parse(format!("invalid index entry {item:?}, expected TYPE:DEGREE"));
            let (kind, v) = item.trim().split_once(':').ok_or_else(bad)?;
            let kind = match kind.trim() {
                "I" => SeedType::I,
                "II" => SeedType::II,
                _ => return Err(bad()),
            };
            Ok(Seed::new(v.trim().parse().map_err(|_| bad())?, kind))
        })
        .collect()
}

impl FromStr for CaseKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("case key {s:?}: {what}"));
        let mut tokens = s.split_whitespace();
        let family = match tokens.next() {
            Some("L") => Family::Laguerre,
            Some("J") => Family::Jacobi,
            _ => return Err(bad("family")),
        };
        let (mut g, mut h, mut entries, mut n) = (None, None, None, None);
        for tok in tokens {
            let (k, v) = tok.split_once('=').ok_or_else(|| bad("token"))?;
            match k {
                "g" => g = Some(parse_rational(v)?),
                "h" => h = Some(parse_rational(v)?),
                "D" => {
                    entries = Some(if v.is_empty() {
                        Vec::new()
                    } else {
                        v.split(',').map(parse_compact_seed).collect::<Result<Vec<_>>>()?
                    })
                }
                "n" => n = Some(v.parse().map_err(|_| bad("n"))?),
                _ => return Err(bad("unknown field")),
            }
        }
        Ok(CaseKey {
            family,
            g: g.ok_or_else(|| bad("missing g"))?,
            h,
            entries: entries.ok_or_else(|| bad("missing D"))?,
            n: n.ok_or_else(|| bad("missing n"))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn renders_canonically() {
        let k = CaseKey {
            family: Family::Jacobi,
            g: rat(7, 3),
            h: Some(rat(11, 4)),
            entries: vec![Seed::new(1, SeedType::I), Seed::new(2, SeedType::II)],
            n: 3,
        };
        assert_eq!(k.to_string(), "J g=7/3 h=11/4 D=I1,II2 n=3");
        assert_eq!(k.to_string().parse::<CaseKey>().unwrap(), k);
    }

    #[test]
    fn empty_index_round_trips() {
        let k: CaseKey = "L g=5/2 D= n=0".parse().unwrap();
        assert!(k.entries.is_empty());
        assert_eq!(k.to_string(), "L g=5/2 D= n=0");
    }

    #[test]
    fn index_list_grammar() {
        let e = parse_index_list("I:1, II:2").unwrap();
        assert_eq!(e, vec![Seed::new(1, SeedType::I), Seed::new(2, SeedType::II)]);
        assert!(parse_index_list("").unwrap().is_empty());
        assert!(parse_index_list("III:1").is_err());
        assert!(parse_index_list("I1").is_err());
        assert!(parse_index_list("I:-1").is_err());
    }

    #[test]
    fn malformed_keys() {
        assert!("X g=1 D= n=0".parse::<CaseKey>().is_err());
        assert!("L g=1 D=III n=0".parse::<CaseKey>().is_err());
        assert!("L g=1 n=0".parse::<CaseKey>().is_err());
    }
}
