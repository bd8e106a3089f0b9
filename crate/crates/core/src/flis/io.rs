use std::fmt::Write as _;

use super::search::LeafRecord;
use crate::{Error, Result};

impl LeafRecord {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "FLIS v1\nn {} maxleaves {} stable {}\n",
            self.n, self.max_leaves, self.stable as u8
        );
        for w in &self.witnesses {
            s.push_str("witness");
            for id in w {
                write!(s, " {id}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<LeafRecord> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        if lines.next().map(|(_, l)| l) != Some("FLIS v1") {
            return Err(Error::parse(1, "expected `FLIS v1`"));
        }
        let (n, max_leaves, stable) = match lines.next() {
            Some((ln, l)) => match l.split_whitespace().collect::<Vec<_>>()[..] {
                ["n", n, "maxleaves", m, "stable", s @ ("0" | "1")] => (
                    n.parse().map_err(|_| Error::parse(ln, "bad order"))?,
                    m.parse().map_err(|_| Error::parse(ln, "bad leaf count"))?,
                    s == "1",
                ),
                _ => return Err(Error::parse(ln, "expected `n <n> maxleaves <L> stable <0|1>`")),
            },
            None => return Err(Error::parse(2, "missing header line")),
        };
        let mut witnesses = Vec::new();
        for (ln, line) in lines {
            if line.is_empty() {
                continue;
            }
            let mut f = line.split_whitespace();
            if f.next() != Some("witness") {
                return Err(Error::parse(ln, format!("unrecognised line `{line}`")));
            }
            let ids = f
                .map(|x| x.parse::<usize>().map_err(|_| Error::parse(ln, format!("bad id `{x}`"))))
                .collect::<Result<Vec<_>>>()?;
            if ids.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::parse(ln, "witness ids must be strictly ascending"));
            }
            witnesses.push(ids);
        }
        Ok(LeafRecord {
            n,
            max_leaves,
            witnesses,
            stable,
        })
    }
}
