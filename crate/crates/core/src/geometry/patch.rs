use std::collections::HashMap;

use rayon::prelude::*;

use super::tile::{Chirality, HalfTile, SeedName, Tile, TileKind};
use super::validate::validate_patch;
use crate::ring::{direction_index, doubled_area_element, orient, Cyclo10, ZPhi};
use crate::{Error, Result};

/// A finite set of kites and darts with exact coordinates.
///
/// True coordinates are the stored ones times `φ^(−scale_exp)`. Half-tiles
/// that could not be paired into whole tiles after an inflation are kept in
/// `loose`: they are part of the geometry but not of any tile-level view.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    pub tiles: Vec<Tile>,
    pub loose: Vec<HalfTile>,
    pub scale_exp: i32,
}

/// Half-tile census used for substitution accounting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfCounts {
    pub half_kites: usize,
    pub half_darts: usize,
}

impl HalfCounts {
    /// Counts after one substitution step: `(a, b) → (2a + b, a + b)`.
    pub fn next(self) -> Self {
        HalfCounts {
            half_kites: 2 * self.half_kites + self.half_darts,
            half_darts: self.half_kites + self.half_darts,
        }
    }
}

impl Patch {
    pub fn seed(name: SeedName) -> Patch {
        let tiles = match name {
            SeedName::Kite => vec![Tile::new(0, TileKind::Kite, Cyclo10::ZERO, 0)],
            SeedName::Dart => vec![Tile::new(0, TileKind::Dart, Cyclo10::ZERO, 0)],
            SeedName::Sun | SeedName::Star => {
                let kind = if name == SeedName::Sun {
                    TileKind::Kite
                } else {
                    TileKind::Dart
                };
                (0..5)
                    .map(|i| Tile::new(i, kind, Cyclo10::ZERO, 2 * i as u8))
                    .collect()
            }
        };
        Patch {
            tiles,
            loose: Vec::new(),
            scale_exp: 0,
        }
    }

    /// `seed` followed by `levels` inflations.
    pub fn generate(seed: SeedName, levels: u32) -> Patch {
        (0..levels).fold(Patch::seed(seed), |p, _| p.inflate_unchecked())
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn tile(&self, id: usize) -> &Tile {
        &self.tiles[id]
    }

    /// Every half-tile of the patch: two per whole tile plus the loose ones.
    pub fn half_tiles(&self) -> Vec<HalfTile> {
        self.tiles
            .iter()
            .flat_map(|t| t.halves())
            .chain(self.loose.iter().copied())
            .collect()
    }

    pub fn half_counts(&self) -> HalfCounts {
        let mut c = HalfCounts {
            half_kites: 0,
            half_darts: 0,
        };
        for h in self.half_tiles() {
            match h.kind {
                TileKind::Kite => c.half_kites += 1,
                TileKind::Dart => c.half_darts += 1,
            }
        }
        c
    }

    /// Total area of all half-tiles, at the stored scale, as the ring
    /// element `2i · (2 · area)`.
    pub fn area_element(&self) -> Cyclo10 {
        self.half_tiles()
            .iter()
            .map(|h| {
                let [a, b, c] = h.vertices;
                let w = doubled_area_element(a, b, c);
                if orient(a, b, c).is_lt() {
                    -w
                } else {
                    w
                }
            })
            .sum()
    }

    /// One inflation step: each tile is replaced by φ-times-smaller tiles
    /// covering the same region, and the stored coordinates are multiplied
    /// by φ so they remain in the ring.
    pub fn inflate(&self) -> Result<Patch> {
        let violations = validate_patch(self);
        if !violations.is_empty() {
            return Err(Error::InvalidPatch(violations));
        }
        Ok(self.inflate_unchecked())
    }

    pub(crate) fn inflate_unchecked(&self) -> Patch {
        let halves: Vec<HalfTile> = self
            .half_tiles()
            .par_iter()
            .flat_map_iter(|h| h.substitute())
            .collect();
        let (tiles, loose) = merge_halves(halves);
        Patch {
            tiles,
            loose,
            scale_exp: self.scale_exp + 1,
        }
    }

    /// The tile-level view: same tiles, loose half-tiles dropped.
    pub fn merged(&self) -> Patch {
        Patch {
            tiles: self.tiles.clone(),
            loose: Vec::new(),
            scale_exp: self.scale_exp,
        }
    }

    /// Apply the isometry `z ↦ ζʳ·(mirror ? z̄ : z) + shift` to every tile,
    /// keeping ids.
    pub fn transformed(&self, rotation: u8, mirror: bool, shift: Cyclo10) -> Patch {
        let map = |z: Cyclo10| {
            let z = if mirror { z.conj() } else { z };
            z.rotate(rotation as i64) + shift
        };
        let tiles = self
            .tiles
            .iter()
            .map(|t| {
                let (tip, far) = (map(t.anchor), map(t.far()));
                let rot = direction_index(far - tip, t.kind.axis()).expect("axis stays on a ζ direction");
                Tile::new(t.id, t.kind, tip, rot)
            })
            .collect();
        let loose = self
            .loose
            .iter()
            .map(|h| HalfTile::new(h.kind, map(h.tip()), map(h.side()), map(h.axis_end())))
            .collect();
        Patch {
            tiles,
            loose,
            scale_exp: self.scale_exp,
        }
    }

    /// Tile whose outline has exactly these tip and far vertices.
    pub fn index_by_axis(&self) -> HashMap<(TileKind, Cyclo10, Cyclo10), usize> {
        self.tiles
            .iter()
            .map(|t| ((t.kind, t.anchor, t.far()), t.id))
            .collect()
    }
}

/// Sort key that numbers tiles outward from the origin.
fn tile_order_key(kind: TileKind, tip: Cyclo10, far: Cyclo10) -> (ZPhi, Cyclo10, Cyclo10, TileKind) {
    ((tip + far).norm_sq(), tip, far, kind)
}

/// Pair mirror-image half-tiles sharing an axis into whole tiles.
/// Returns the tiles (ids dense, ordered outward) and the unpaired halves.
pub fn merge_halves(halves: Vec<HalfTile>) -> (Vec<Tile>, Vec<HalfTile>) {
    let mut groups: HashMap<(TileKind, Cyclo10, Cyclo10), Vec<HalfTile>> = HashMap::new();
    for h in halves {
        groups.entry((h.kind, h.tip(), h.axis_end())).or_default().push(h);
    }
    let mut whole = Vec::new();
    let mut loose = Vec::new();
    for ((kind, tip, far), group) in groups {
        let left = group.iter().any(|h| h.chirality == Chirality::Left);
        let right = group.iter().any(|h| h.chirality == Chirality::Right);
        if group.len() == 2 && left && right {
            whole.push((kind, tip, far));
        } else {
            loose.extend(group);
        }
    }
    whole.sort_by_cached_key(|&(k, t, f)| tile_order_key(k, t, f));
    loose.sort();
    let tiles = whole
        .into_iter()
        .enumerate()
        .map(|(id, (kind, tip, far))| {
            let rot = direction_index(far - tip, kind.axis()).expect("axis is a ζ direction");
            Tile::new(id, kind, tip, rot)
        })
        .collect();
    (tiles, loose)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds() {
        assert_eq!(Patch::seed(SeedName::Kite).half_tiles().len(), 2);
        let sun = Patch::seed(SeedName::Sun);
        assert_eq!(sun.len(), 5);
        assert!(sun.tiles.iter().all(|t| t.kind == TileKind::Kite && t.anchor == Cyclo10::ZERO));
        let star = Patch::seed(SeedName::Star);
        assert!(star.tiles.iter().all(|t| t.kind == TileKind::Dart));
    }

    #[test]
    fn inflating_single_tiles_matches_the_prototile_pictures() {
        let k = Patch::seed(SeedName::Kite).inflate().unwrap();
        let kites = k.tiles.iter().filter(|t| t.kind == TileKind::Kite).count();
        assert_eq!((kites, k.tiles.len(), k.loose.len()), (2, 2, 2));
        assert!(k.loose.iter().all(|h| h.kind == TileKind::Dart));
        assert_eq!(k.scale_exp, 1);

        let d = Patch::seed(SeedName::Dart).inflate().unwrap();
        assert_eq!((d.tiles.len(), d.loose.len()), (1, 2));
        assert_eq!(d.tiles[0].kind, TileKind::Kite);
        assert!(d.loose.iter().all(|h| h.kind == TileKind::Dart));
    }

    #[test]
    fn sun_and_star_swap_at_the_centre() {
        let s = Patch::seed(SeedName::Sun).inflate().unwrap();
        let centre: Vec<_> = s.tiles.iter().filter(|t| t.anchor == Cyclo10::ZERO).collect();
        assert_eq!(centre.len(), 5);
        assert!(centre.iter().all(|t| t.kind == TileKind::Dart));
        let t = Patch::seed(SeedName::Star).inflate().unwrap();
        let centre: Vec<_> = t.tiles.iter().filter(|t| t.anchor == Cyclo10::ZERO).collect();
        assert!(centre.len() == 5 && centre.iter().all(|t| t.kind == TileKind::Kite));
    }

    #[test]
    fn ids_are_dense_and_ordered_outward() {
        let p = Patch::generate(SeedName::Sun, 3);
        for (i, t) in p.tiles.iter().enumerate() {
            assert_eq!(t.id, i);
        }
        let keys: Vec<_> = p.tiles.iter().map(|t| (t.anchor + t.far()).norm_sq()).collect();
        assert!(keys.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn sun_half_counts_follow_the_recurrence() {
        let mut p = Patch::seed(SeedName::Sun);
        let expect = [(10, 0), (20, 10), (50, 30), (130, 80)];
        for &(a, b) in &expect {
            let c = p.half_counts();
            assert_eq!((c.half_kites, c.half_darts), (a, b));
            p = p.inflate().unwrap();
        }
    }

    #[test]
    fn invalid_input_is_refused() {
        let mut p = Patch::seed(SeedName::Sun);
        p.tiles[1] = p.tiles[0];
        p.tiles[1].id = 1;
        assert!(matches!(p.inflate(), Err(Error::InvalidPatch(_))));
    }
}
