//! Sea caterpillars: stretches of the star-graph path over which the path
//! keeps turning to the same side.

use std::sync::OnceLock;

use super::chain::{CaterpillarChain, Side};
use crate::{Error, Result};

const CATALOGUE: &str = include_str!("../../data/sea_caterpillars.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeaKind {
    /// A lone prime between turns the other way.
    Bend,
    /// `k` consecutive primes turning the same way.
    Cape(u8),
    /// A closed run that no template covers.
    Residue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub name: String,
    pub kind: SeaKind,
    /// Turn signs, `1` left and `-1` right.
    pub turns: Vec<i8>,
}

impl Template {
    /// Exact match or mirror match against a run of turn signs.
    pub fn matches(&self, turns: &[i8]) -> bool {
        turns.len() == self.turns.len()
            && (turns == self.turns.as_slice() || turns.iter().zip(&self.turns).all(|(a, b)| *a == -*b))
    }
}

pub fn parse_catalogue(text: &str) -> Result<Vec<Template>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let [name, turns] = f.as_slice() else {
            return Err(Error::parse(n + 1, format!("bad template line `{line}`")));
        };
        let turns: Vec<i8> = turns
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(Error::parse(n + 1, format!("bad turn `{c}`"))),
            })
            .collect::<Result<_>>()?;
        let kind = match *name {
            "bend" => SeaKind::Bend,
            s => match s.strip_prefix("cape").and_then(|k| k.parse().ok()) {
                Some(k) => SeaKind::Cape(k),
                None => return Err(Error::parse(n + 1, format!("unknown template `{s}`"))),
            },
        };
        out.push(Template {
            name: name.to_string(),
            kind,
            turns,
        });
    }
    Ok(out)
}

/// The bundled templates.
pub fn catalogue() -> &'static [Template] {
    static CAT: OnceLock<Vec<Template>> = OnceLock::new();
    CAT.get_or_init(|| parse_catalogue(CATALOGUE).expect("bundled catalogue parses"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeaCaterpillar {
    pub kind: SeaKind,
    /// Index of the first prime of the segment.
    pub start: usize,
    pub len: usize,
    /// False when the run touches an end of the chain and may continue
    /// past it.
    pub closed: bool,
    /// Angle letters of the segment.
    pub angles: String,
}

/// Turn of the path at a prime, in units of 36° (positive to the left).
pub fn turn(angle: u8, side: Side) -> i8 {
    match side {
        Side::Right => angle as i8 - 5,
        Side::Left => 5 - angle as i8,
    }
}

/// Maximal runs of primes turning the same way, labelled by the catalogue.
/// A prime whose angle is unknown splits the chain.
pub fn detect_sea_caterpillars(c: &CaterpillarChain, sides: &[Side]) -> Vec<SeaCaterpillar> {
    let turns: Vec<Option<i8>> = c
        .primes
        .iter()
        .zip(sides)
        .map(|(p, &s)| p.angle.map(|a| turn(a, s).signum()))
        .collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < turns.len() {
        let mut j = i + 1;
        while j < turns.len() && turns[j].is_some() && turns[j] == turns[i] {
            j += 1;
        }
        if turns[i].is_some() {
            let run: Vec<i8> = turns[i..j].iter().flatten().copied().collect();
            let kind = catalogue()
                .iter()
                .find(|t| t.matches(&run))
                .map_or(SeaKind::Residue, |t| t.kind);
            out.push(SeaCaterpillar {
                kind,
                start: i,
                len: j - i,
                closed: i > 0 && j < turns.len() && turns[i - 1].is_some() && turns[j].is_some(),
                angles: c.primes[i..j]
                    .iter()
                    .map(|p| p.angle.map_or('?', |a| char::from(b'0' + a)))
                    .collect(),
            });
        }
        i = j;
    }
    out
}
