use std::fmt::Write as _;

use super::patch::Patch;
use super::tile::{Tile, TileKind};
use crate::ring::Cyclo10;
use crate::{Error, Result};

impl Patch {
    /// `P2PATCH v1` text. Loose half-tiles are not part of the format.
    pub fn to_text(&self) -> String {
        let mut s = format!("P2PATCH v1\nscale {}\n", self.scale_exp);
        for t in &self.tiles {
            let [c0, c1, c2, c3] = t.anchor.coeffs();
            writeln!(
                s,
                "tile {} {} {} {} {c0} {c1} {c2} {c3}",
                t.id,
                t.kind.letter(),
                t.rotation,
                t.mirror as u8
            )
            .unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Patch> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, "P2PATCH v1")) => {}
            _ => return Err(Error::parse(1, "expected `P2PATCH v1`")),
        }
        let scale_exp = match lines.next() {
            Some((n, l)) => l
                .strip_prefix("scale ")
                .and_then(|v| v.parse::<i32>().ok())
                .ok_or_else(|| Error::parse(n, "expected `scale <s>`"))?,
            None => return Err(Error::parse(2, "missing scale line")),
        };
        let mut tiles = Vec::new();
        for (n, line) in lines {
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 9 || f[0] != "tile" {
                return Err(Error::parse(n, format!("unrecognised line `{line}`")));
            }
            let int = |s: &str| s.parse::<i64>().map_err(|_| Error::parse(n, format!("bad integer `{s}`")));
            let id = int(f[1])?;
            if id != tiles.len() as i64 {
                return Err(Error::parse(n, "tile ids must be dense and ascending from 0"));
            }
            let kind = TileKind::from_letter(f[2]).ok_or_else(|| Error::parse(n, "tile kind must be K or D"))?;
            let rotation = int(f[3])?;
            if !(0..10).contains(&rotation) {
                return Err(Error::parse(n, "rotation must be 0..9"));
            }
            let mirror = match f[4] {
                "0" => false,
                "1" => true,
                _ => return Err(Error::parse(n, "mirror must be 0 or 1")),
            };
            let anchor = Cyclo10::new(int(f[5])?, int(f[6])?, int(f[7])?, int(f[8])?);
            let mut t = Tile::new(id as usize, kind, anchor, rotation as u8);
            t.mirror = mirror;
            tiles.push(t);
        }
        Ok(Patch {
            tiles,
            loose: Vec::new(),
            scale_exp,
        })
    }
}
