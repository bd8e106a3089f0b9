use std::fmt::Write as _;

use super::chain::{chain_word, forbidden_patterns, prime_side, Alphabet, CaterpillarChain, Side, Violation};
use super::Scene;
use crate::{Error, Result};

/// Per-prime line of a chain report. Angle and side are unknown when a
/// flanking star lies outside the patch; they are written `?`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeLine {
    pub class_id: u8,
    pub angle: Option<u8>,
    pub side: Option<Side>,
}

/// What the `CHAIN v1` format records about a decomposed caterpillar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub primes: Vec<PrimeLine>,
    pub colors: String,
    pub angles: String,
    pub violations: Vec<Violation>,
}

impl ChainReport {
    pub fn from_chain(scene: &Scene, c: &CaterpillarChain) -> Result<ChainReport> {
        let primes = c
            .primes
            .iter()
            .enumerate()
            .map(|(i, p)| {
                Ok(PrimeLine {
                    class_id: p.class_id,
                    angle: p.angle,
                    side: prime_side(scene, c, i)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainReport {
            primes,
            colors: chain_word(scene, c, Alphabet::Colors),
            angles: chain_word(scene, c, Alphabet::Angles),
            violations: forbidden_patterns(scene, c),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("CHAIN v1\n");
        for (k, p) in self.primes.iter().enumerate() {
            let angle = p.angle.map_or("?".to_string(), |a| a.to_string());
            let side = p.side.map_or('?', Side::letter);
            writeln!(s, "prime {k} class {} angle {angle} side {side}", p.class_id).unwrap();
        }
        let word = |w: &str| if w.is_empty() { "-".to_string() } else { w.to_string() };
        writeln!(s, "word colors {}", word(&self.colors)).unwrap();
        writeln!(s, "word angles {}", word(&self.angles)).unwrap();
        if self.violations.is_empty() {
            s.push_str("violations none\n");
        } else {
            let v: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            writeln!(s, "violations {}", v.join(" ")).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<ChainReport> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        if lines.next().map(|(_, l)| l) != Some("CHAIN v1") {
            return Err(Error::parse(1, "expected `CHAIN v1`"));
        }
        let mut primes = Vec::new();
        let (mut colors, mut angles, mut violations) = (None, None, None);
        for (n, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            let word = |w: &str| if w == "-" { String::new() } else { w.to_string() };
            match f.as_slice() {
                ["prime", k, "class", c, "angle", a, "side", s] => {
                    if k.parse::<usize>().ok() != Some(primes.len()) {
                        return Err(Error::parse(n, "prime indices must count up from 0"));
                    }
                    let class_id = c.parse().ok().filter(|c| (1..=6).contains(c));
                    let angle = match *a {
                        "?" => Some(None),
                        a => a.parse().ok().filter(|a| [4, 6, 8].contains(a)).map(Some),
                    };
                    let side = match *s {
                        "L" => Some(Some(Side::Left)),
                        "R" => Some(Some(Side::Right)),
                        "?" => Some(None),
                        _ => None,
                    };
                    match (class_id, angle, side) {
                        (Some(class_id), Some(angle), Some(side)) => primes.push(PrimeLine { class_id, angle, side }),
                        _ => return Err(Error::parse(n, format!("bad prime line `{line}`"))),
                    }
                }
                ["word", "colors", w] if colors.is_none() => colors = Some(word(w)),
                ["word", "angles", w] if angles.is_none() => angles = Some(word(w)),
                ["violations", "none"] if violations.is_none() => violations = Some(Vec::new()),
                ["violations", rest @ ..] if violations.is_none() && !rest.is_empty() => {
                    let v = rest
                        .iter()
                        .map(|s| s.parse::<Violation>().map_err(|e| Error::parse(n, e)))
                        .collect::<Result<Vec<_>>>()?;
                    violations = Some(v);
                }
                [] => {}
                _ => return Err(Error::parse(n, format!("unrecognised line `{line}`"))),
            }
        }
        match (colors, angles, violations) {
            (Some(colors), Some(angles), Some(violations)) => Ok(ChainReport {
                primes,
                colors,
                angles,
                violations,
            }),
            _ => Err(Error::parse(0, "missing word or violations line")),
        }
    }
}
