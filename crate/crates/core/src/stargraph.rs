//! Stars and suns (five darts or five kites around a common tip), the
//! star-graph joining neighbouring star centres, and its three-colouring
//! by the number of adjacent suns.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use crate::dual::P2Graph;
use crate::geometry::{Patch, TileKind};
use crate::ring::{Cyclo10, ZPhi};
use crate::{Error, Result};

/// Five tiles of one kind meeting at their common tip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexStar {
    pub center: Cyclo10,
    pub tiles: [usize; 5],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StarColor {
    Red,
    Green,
    Blue,
}

impl StarColor {
    pub fn from_sun_count(n: usize) -> Option<StarColor> {
        match n {
            0 => Some(StarColor::Red),
            1 => Some(StarColor::Green),
            2 => Some(StarColor::Blue),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            StarColor::Red => 'R',
            StarColor::Green => 'G',
            StarColor::Blue => 'B',
        }
    }

    pub fn from_letter(s: &str) -> Option<StarColor> {
        match s {
            "R" => Some(StarColor::Red),
            "G" => Some(StarColor::Green),
            "B" => Some(StarColor::Blue),
            _ => None,
        }
    }

    pub fn sun_count(self) -> usize {
        self as usize
    }
}

impl fmt::Display for StarColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarVertex {
    pub center: Cyclo10,
    /// The five darts; empty when read back from text.
    pub tiles: Vec<usize>,
    pub sun_count: usize,
    pub color: StarColor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarGraph {
    pub vertices: Vec<StarVertex>,
    /// `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl StarGraph {
    pub fn new(vertices: Vec<StarVertex>, mut edges: Vec<(usize, usize)>) -> StarGraph {
        for e in &mut edges {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); vertices.len()];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        StarGraph { vertices, edges, adj }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Squared length of the first edge (all edges share it).
    pub fn edge_length_sq(&self) -> Option<ZPhi> {
        self.edges
            .first()
            .map(|&(a, b)| (self.vertices[a].center - self.vertices[b].center).norm_sq())
    }

    pub fn index_of_center(&self, z: Cyclo10) -> Option<usize> {
        self.vertices.iter().position(|v| v.center == z)
    }

    /// Star whose darts include `tile`.
    pub fn star_of_tile(&self) -> HashMap<usize, usize> {
        self.vertices
            .iter()
            .enumerate()
            .flat_map(|(i, v)| v.tiles.iter().map(move |&t| (t, i)))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("STARGRAPH v1\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let [a, b, c, d] = v.center.coeffs();
            writeln!(s, "vertex {i} {a} {b} {c} {d} {}", v.color).unwrap();
        }
        for (a, b) in &self.edges {
            writeln!(s, "edge {a} {b}").unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<StarGraph> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        if lines.next().map(|(_, l)| l) != Some("STARGRAPH v1") {
            return Err(Error::parse(1, "expected `STARGRAPH v1`"));
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (n, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            let int = |s: &str| s.parse::<i64>().map_err(|_| Error::parse(n, format!("bad integer `{s}`")));
            match f.as_slice() {
                ["vertex", i, a, b, c, d, col] => {
                    if !edges.is_empty() {
                        return Err(Error::parse(n, "vertex after edge lines"));
                    }
                    if int(i)? != vertices.len() as i64 {
                        return Err(Error::parse(n, "vertex indices must be dense and ascending"));
                    }
                    let color = StarColor::from_letter(col).ok_or_else(|| Error::parse(n, "colour must be R, G or B"))?;
                    vertices.push(StarVertex {
                        center: Cyclo10::new(int(a)?, int(b)?, int(c)?, int(d)?),
                        tiles: Vec::new(),
                        sun_count: color.sun_count(),
                        color,
                    });
                }
                ["edge", a, b] => {
                    let (a, b) = (int(a)?, int(b)?);
                    if a < 0 || a >= b || b >= vertices.len() as i64 {
                        return Err(Error::parse(n, "edge needs 0 <= i < j < vertex count"));
                    }
                    edges.push((a as usize, b as usize));
                }
                [] => {}
                _ => return Err(Error::parse(n, format!("unrecognised line `{line}`"))),
            }
        }
        if edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::parse(0, "edges not in lexicographic order"));
        }
        Ok(StarGraph::new(vertices, edges))
    }
}

/// Every star (five darts) and sun (five kites) of the patch, each sorted
/// outward by centre.
pub fn detect_stars_and_suns(p: &Patch) -> (Vec<VertexStar>, Vec<VertexStar>) {
    let mut by_tip: BTreeMap<(ZPhi, Cyclo10), Vec<usize>> = BTreeMap::new();
    for t in &p.tiles {
        by_tip.entry((t.anchor.norm_sq(), t.anchor)).or_default().push(t.id);
    }
    let mut stars = Vec::new();
    let mut suns = Vec::new();
    for ((_, center), ids) in by_tip {
        if ids.len() != 5 {
            continue;
        }
        let kind = p.tile(ids[0]).kind;
        if ids.iter().any(|&i| p.tile(i).kind != kind) {
            continue;
        }
        let v = VertexStar {
            center,
            tiles: ids.try_into().unwrap(),
        };
        match kind {
            TileKind::Dart => stars.push(v),
            TileKind::Kite => suns.push(v),
        }
    }
    (stars, suns)
}

/// Join star centres lying at the smallest centre distance found in the
/// patch. Vertices start uncoloured (red, no suns counted).
pub fn build_star_graph(stars: &[VertexStar]) -> Result<StarGraph> {
    if stars.is_empty() {
        return Err(Error::StarGraph("the patch contains no star".into()));
    }
    let vertices: Vec<StarVertex> = stars
        .iter()
        .map(|s| StarVertex {
            center: s.center,
            tiles: s.tiles.to_vec(),
            sun_count: 0,
            color: StarColor::Red,
        })
        .collect();
    let mut d0: Option<ZPhi> = None;
    let mut edges = Vec::new();
    for i in 0..stars.len() {
        for j in i + 1..stars.len() {
            let d = (stars[i].center - stars[j].center).norm_sq();
            match d0 {
                Some(m) if d > m => {}
                Some(m) if d == m => edges.push((i, j)),
                _ => {
                    d0 = Some(d);
                    edges.clear();
                    edges.push((i, j));
                }
            }
        }
    }
    Ok(StarGraph::new(vertices, edges))
}

/// Whether some kite of the sun shares an edge with some dart of the star.
pub fn star_touches_sun(g: &P2Graph, star: &[usize], sun: &[usize]) -> bool {
    star.iter().any(|&d| sun.iter().any(|&k| g.is_adjacent(d, k)))
}

/// Count adjacent suns per star and colour red, green or blue for 0, 1, 2.
/// More than two adjacent suns is a structural violation.
pub fn color_star_vertices(sg: &StarGraph, suns: &[VertexStar], g: &P2Graph) -> Result<StarGraph> {
    let mut sun_of_tile: HashMap<usize, usize> = HashMap::new();
    for (i, s) in suns.iter().enumerate() {
        for &t in &s.tiles {
            sun_of_tile.insert(t, i);
        }
    }
    let mut out = sg.clone();
    for v in &mut out.vertices {
        let mut touching: Vec<usize> = v
            .tiles
            .iter()
            .flat_map(|&d| g.neighbors(d).iter().filter_map(|k| sun_of_tile.get(k).copied()))
            .collect();
        touching.sort_unstable();
        touching.dedup();
        debug_assert!(touching.iter().all(|&s| star_touches_sun(g, &v.tiles, &suns[s].tiles)));
        v.sun_count = touching.len();
        v.color = StarColor::from_sun_count(touching.len()).ok_or_else(|| {
            Error::Structural(format!(
                "star at {:?} is adjacent to {} suns",
                v.center,
                touching.len()
            ))
        })?;
    }
    Ok(out)
}

/// Detect, connect and colour in one go.
pub fn star_graph_of(p: &Patch, g: &P2Graph) -> Result<StarGraph> {
    let (stars, suns) = detect_stars_and_suns(p);
    let sg = build_star_graph(&stars)?;
    color_star_vertices(&sg, &suns, g)
}
