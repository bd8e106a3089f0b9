use std::fmt;
use std::str::FromStr;

use crate::ring::{orient, Cyclo10};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TileKind {
    Kite,
    Dart,
}

impl TileKind {
    pub fn letter(self) -> char {
        match self {
            TileKind::Kite => 'K',
            TileKind::Dart => 'D',
        }
    }

    pub fn from_letter(c: &str) -> Option<Self> {
        match c {
            "K" => Some(TileKind::Kite),
            "D" => Some(TileKind::Dart),
            _ => None,
        }
    }

    /// Distance from tip to the far end of the symmetry axis.
    pub fn axis(self) -> Cyclo10 {
        match self {
            TileKind::Kite => Cyclo10::PHI,
            TileKind::Dart => Cyclo10::ONE,
        }
    }

    /// Matching-rule colours of `[tip, side, far, side]`.
    pub fn colors(self) -> [VertexColor; 4] {
        use VertexColor::*;
        match self {
            TileKind::Kite => [Black, White, Black, White],
            TileKind::Dart => [White, Black, White, Black],
        }
    }
}

/// Vertex colouring that encodes the P2 matching rule: tiles may share an
/// edge only when the colours of both endpoints agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexColor {
    Black,
    White,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    Left,
    Right,
}

/// A Robinson half-tile: half of a kite (36-72-72, sides φ, φ, 1) or of a
/// dart (36-36-108, sides φ, 1, 1), cut along the tile's symmetry axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfTile {
    pub kind: TileKind,
    /// `[tip, side, axis_end]`; the axis runs from `tip` to `axis_end`.
    pub vertices: [Cyclo10; 3],
    pub chirality: Chirality,
}

impl HalfTile {
    pub fn new(kind: TileKind, tip: Cyclo10, side: Cyclo10, axis_end: Cyclo10) -> Self {
        let chirality = if orient(tip, axis_end, side).is_gt() {
            Chirality::Left
        } else {
            Chirality::Right
        };
        HalfTile {
            kind,
            vertices: [tip, side, axis_end],
            chirality,
        }
    }

    pub fn tip(&self) -> Cyclo10 {
        self.vertices[0]
    }

    pub fn side(&self) -> Cyclo10 {
        self.vertices[1]
    }

    pub fn axis_end(&self) -> Cyclo10 {
        self.vertices[2]
    }

    pub fn colors(&self) -> [VertexColor; 3] {
        let c = self.kind.colors();
        [c[0], c[1], c[2]]
    }

    /// The pieces this half-tile becomes after one inflation step.
    ///
    /// Coordinates are first multiplied by φ, so the pieces have the same
    /// stored size as the prototiles and stay inside the ring.
    pub fn substitute(&self) -> Vec<HalfTile> {
        let [t, s, f] = self.vertices.map(Cyclo10::mul_phi);
        let phi_inv2 = Cyclo10::PHI_INV * Cyclo10::PHI_INV;
        match self.kind {
            TileKind::Kite => {
                // E on the long edge at distance 1 from the tip,
                // D on the axis at distance φ from the tip.
                let e = t + (s - t) * phi_inv2;
                let d = t + (f - t).div_phi();
                vec![
                    HalfTile::new(TileKind::Kite, s, f, d),
                    HalfTile::new(TileKind::Kite, s, e, d),
                    HalfTile::new(TileKind::Dart, t, d, e),
                ]
            }
            TileKind::Dart => {
                // E on the long edge at distance 1 from the side vertex.
                let e = s + (t - s) * phi_inv2;
                vec![
                    HalfTile::new(TileKind::Kite, t, e, f),
                    HalfTile::new(TileKind::Dart, s, f, e),
                ]
            }
        }
    }
}

/// A whole kite or dart.
///
/// Both prototiles are mirror-symmetric, so `mirror` does not change the
/// outline; it is carried for the file format and is 0 for tiles produced
/// by merging half-tiles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tile {
    pub id: usize,
    pub kind: TileKind,
    /// The tip: the vertex where the two long edges meet.
    pub anchor: Cyclo10,
    /// Axis direction in multiples of 36°.
    pub rotation: u8,
    pub mirror: bool,
}

impl Tile {
    pub fn new(id: usize, kind: TileKind, anchor: Cyclo10, rotation: u8) -> Self {
        Tile {
            id,
            kind,
            anchor,
            rotation: rotation % 10,
            mirror: false,
        }
    }

    /// Outline in counter-clockwise order: `[tip, side, far, side]`.
    ///
    /// Canonical kite (rotation 0, tip at 0): `0, φζ⁻¹, φ, φζ`.
    /// Canonical dart: `0, φζ⁻¹, 1, φζ`.
    pub fn vertices(&self) -> [Cyclo10; 4] {
        let r = self.rotation as i64;
        let a = self.anchor;
        let side = Cyclo10::PHI * Cyclo10::ZETA;
        [
            a,
            a + side.conj().rotate(r),
            a + self.kind.axis().rotate(r),
            a + side.rotate(r),
        ]
    }

    pub fn far(&self) -> Cyclo10 {
        self.anchor + self.kind.axis().rotate(self.rotation as i64)
    }

    /// Edges as vertex pairs in outline order; edge `i` runs from vertex `i`
    /// to vertex `i + 1`. Edges 0 and 3 are the long ones.
    pub fn edges(&self) -> [(Cyclo10, Cyclo10); 4] {
        let v = self.vertices();
        [(v[0], v[1]), (v[1], v[2]), (v[2], v[3]), (v[3], v[0])]
    }

    /// Sum of the four vertices (four times the vertex centroid).
    pub fn centroid4(&self) -> Cyclo10 {
        self.vertices().into_iter().sum()
    }

    pub fn halves(&self) -> [HalfTile; 2] {
        let v = self.vertices();
        [
            HalfTile::new(self.kind, v[0], v[1], v[2]),
            HalfTile::new(self.kind, v[0], v[3], v[2]),
        ]
    }
}

/// Names of the built-in seed patches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeedName {
    Kite,
    Dart,
    Sun,
    Star,
}

impl SeedName {
    pub const ALL: [SeedName; 4] = [SeedName::Kite, SeedName::Dart, SeedName::Sun, SeedName::Star];
}

impl FromStr for SeedName {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "kite" => Ok(SeedName::Kite),
            "dart" => Ok(SeedName::Dart),
            "sun" => Ok(SeedName::Sun),
            "star" => Ok(SeedName::Star),
            other => Err(crate::Error::UnknownSeed(other.to_string())),
        }
    }
}

impl fmt::Display for SeedName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SeedName::Kite => "kite",
            SeedName::Dart => "dart",
            SeedName::Sun => "sun",
            SeedName::Star => "star",
        };
        f.write_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ZPhi;

    fn len2(a: Cyclo10, b: Cyclo10) -> ZPhi {
        (b - a).norm_sq()
    }

    const ONE: ZPhi = ZPhi::new(1, 0);
    const PHI2: ZPhi = ZPhi::new(1, 1);

    #[test]
    fn canonical_outlines_have_prototile_edge_lengths() {
        let kite = Tile::new(0, TileKind::Kite, Cyclo10::ZERO, 0);
        let [t, s1, f, s2] = kite.vertices();
        assert_eq!([len2(t, s1), len2(s1, f), len2(f, s2), len2(s2, t)], [PHI2, ONE, ONE, PHI2]);
        assert_eq!(len2(t, f), PHI2);

        let dart = Tile::new(0, TileKind::Dart, Cyclo10::ZERO, 0);
        let [t, s1, i, s2] = dart.vertices();
        assert_eq!([len2(t, s1), len2(s1, i), len2(i, s2), len2(s2, t)], [PHI2, ONE, ONE, PHI2]);
        assert_eq!(len2(t, i), ONE);
    }

    #[test]
    fn half_tiles_are_robinson_triangles() {
        for kind in [TileKind::Kite, TileKind::Dart] {
            let tile = Tile::new(0, kind, Cyclo10::new(2, -1, 0, 3), 7);
            let [a, b] = tile.halves();
            assert_ne!(a.chirality, b.chirality);
            let [t, s, f] = a.vertices;
            let sides = [len2(t, s), len2(t, f), len2(s, f)];
            match kind {
                TileKind::Kite => assert_eq!(sides, [PHI2, PHI2, ONE]),
                TileKind::Dart => assert_eq!(sides, [PHI2, ONE, ONE]),
            }
        }
    }

    #[test]
    fn substitution_piece_shapes() {
        let kite = Tile::new(0, TileKind::Kite, Cyclo10::ZERO, 0);
        let pieces = kite.halves()[0].substitute();
        assert_eq!(pieces.len(), 3);
        for p in &pieces {
            let [t, s, f] = p.vertices;
            let expect = match p.kind {
                TileKind::Kite => [PHI2, PHI2, ONE],
                TileKind::Dart => [PHI2, ONE, ONE],
            };
            assert_eq!([len2(t, s), len2(t, f), len2(s, f)], expect);
        }
        let dart = Tile::new(0, TileKind::Dart, Cyclo10::ZERO, 0);
        assert_eq!(dart.halves()[1].substitute().len(), 2);
    }

    #[test]
    fn seed_names_parse() {
        assert_eq!("sun".parse::<SeedName>().unwrap(), SeedName::Sun);
        assert!("rhomb".parse::<SeedName>().is_err());
    }
}
