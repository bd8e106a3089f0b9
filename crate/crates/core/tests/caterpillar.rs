use std::collections::HashMap;
use std::sync::OnceLock;

use p2flis::caterpillar::{
    catalogue, chain_word, decompose, derive, detect_sea_caterpillars, find_primes, forbidden_patterns, graft,
    is_caterpillar, path_order, side_sequence, Alphabet, ChainReport, ChainShape, PrimeCaterpillar, PrimeLine, Scene,
    SeaKind, Side, Violation,
};
use p2flis::flis::{Budget, InducedSubtree};
use p2flis::geometry::{Patch, SeedName};
use p2flis::inflation_lab::{right_extensions, PrimeIndex};
use p2flis::ring::Cyclo10;
use p2flis::{Error, P2Graph};
use proptest::prelude::*;

fn level7() -> &'static (Scene, PrimeIndex) {
    static CELL: OnceLock<(Scene, PrimeIndex)> = OnceLock::new();
    CELL.get_or_init(|| {
        let scene = Scene::new(Patch::generate(SeedName::Sun, 7)).unwrap();
        let index = PrimeIndex::new(&scene, Budget::default()).unwrap();
        (scene, index)
    })
}

/// Three-prime chains grown to the right from a sample of primes.
fn triples() -> &'static Vec<p2flis::caterpillar::CaterpillarChain> {
    static CELL: OnceLock<Vec<p2flis::caterpillar::CaterpillarChain>> = OnceLock::new();
    CELL.get_or_init(|| {
        let (scene, index) = level7();
        index
            .primes
            .iter()
            .step_by(7)
            .flat_map(|p| {
                let seed = decompose(scene, &p.tree).unwrap();
                right_extensions(scene, index, &seed, 2).unwrap()
            })
            .collect()
    })
}

fn path(n: usize) -> P2Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    P2Graph::from_edges(n, &edges, &[]).unwrap()
}

#[test]
fn derived_graph_of_small_trees() {
    let g = path(5);
    let t = InducedSubtree::new(&g, 0..5).unwrap();
    assert_eq!(derive(&g, &t).tiles(), &[1, 2, 3]);
    assert!(is_caterpillar(&g, &t));
    let two = InducedSubtree::new(&g, [0, 1]).unwrap();
    assert_eq!(derive(&g, &two).order(), 0);
    assert_eq!(path_order(&g, &t), Some(vec![0, 1, 2, 3, 4]));
}

#[test]
fn every_prime_has_the_prime_shape() {
    let (scene, index) = level7();
    assert!(index.primes.len() > 1000);
    for p in &index.primes {
        let t = &p.tree;
        assert_eq!(t.order(), 18);
        assert_eq!(t.leaves().len(), 10);
        let d = derive(&scene.graph, t);
        assert_eq!(d.order(), 8);
        assert!(d.tiles().iter().all(|&v| t.degree_of(v) == Some(3)));
        assert!(is_caterpillar(&scene.graph, t));
        assert!((1..=6).contains(&p.class_id));
        let c = decompose(scene, t).unwrap();
        assert_eq!(c.shape, ChainShape::SubPrime);
        assert_eq!(c.primes.len(), 1);
    }
}

#[test]
fn measured_angles_are_four_six_or_eight() {
    let (_, index) = level7();
    let mut seen: HashMap<u8, Vec<u8>> = HashMap::new();
    for p in &index.primes {
        if let Some(a) = p.angle {
            seen.entry(p.class_id).or_default().push(a);
        }
    }
    for (class, angles) in seen {
        let want = match class {
            1 | 3 | 6 => 4,
            2 | 5 => 6,
            _ => 8,
        };
        assert!(angles.iter().all(|&a| a == want), "class {class}");
    }
}

#[test]
fn grafting_rejects_bad_junctions() {
    let (scene, index) = level7();
    let a = &index.primes[0].tree;
    let leaf = a.leaves()[0];
    assert!(matches!(graft(&scene.graph, a, a, leaf), Err(Error::Graft(_))));
    let internal = a.internal()[0];
    let other = index.primes.iter().find(|p| p.tree.contains(internal) && p.tree != *a);
    if let Some(b) = other {
        assert!(graft(&scene.graph, a, &b.tree, internal).is_err());
    }
}

#[test]
fn grafting_is_associative() {
    let (scene, _) = level7();
    let mut checked = 0;
    for c in triples().iter().take(200) {
        let [a, b, d] = [&c.primes[0].tree, &c.primes[1].tree, &c.primes[2].tree];
        let (s, t) = (c.graft_tiles[0], c.graft_tiles[1]);
        let left = graft(&scene.graph, &graft(&scene.graph, a, b, s).unwrap(), d, t).unwrap();
        let right = graft(&scene.graph, a, &graft(&scene.graph, b, d, t).unwrap(), s).unwrap();
        assert_eq!(left.tiles(), right.tiles());
        assert_eq!(left.order(), 52);
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn chains_alternate_and_words_have_one_letter_per_prime() {
    let (scene, _) = level7();
    let mut sided = 0;
    for c in triples() {
        assert_eq!(c.tree.order(), 52);
        assert_eq!(chain_word(scene, c, Alphabet::Colors).len(), 3);
        assert_eq!(chain_word(scene, c, Alphabet::Angles).len(), 3);
        if let Ok(sides) = side_sequence(scene, c) {
            sided += 1;
            assert!(sides.windows(2).all(|w| w[0] != w[1]));
        }
        let again = decompose(scene, &c.tree).unwrap();
        assert_eq!(again.shape, ChainShape::Grafted);
        assert_eq!(again.primes.len(), 3);
    }
    assert!(sided > 0);
}

#[test]
fn forbidden_patterns_are_found() {
    let (scene, _) = level7();
    let (mut fours, mut ones, mut clean) = (0, 0, 0);
    for c in triples() {
        let word = chain_word(scene, c, Alphabet::Angles);
        let v = forbidden_patterns(scene, c);
        let has_fours = word.contains("44");
        let has_one = c.primes.iter().any(|p| p.class_id == 1);
        assert_eq!(has_fours, v.iter().any(|x| matches!(x, Violation::TwoFours { .. })));
        assert_eq!(has_one, v.iter().any(|x| matches!(x, Violation::ClassOne { .. })));
        fours += usize::from(has_fours);
        ones += usize::from(has_one);
        clean += usize::from(v.is_empty());
    }
    assert!(ones > 0 && clean > 0, "{fours} {ones} {clean}");
}

#[test]
fn runs_of_turns_partition_the_chain() {
    let (scene, _) = level7();
    for c in triples() {
        let Ok(sides) = side_sequence(scene, c) else {
            continue;
        };
        let runs = detect_sea_caterpillars(c, &sides);
        assert_eq!(runs.iter().map(|r| r.len).sum::<usize>(), c.primes.len());
        for r in &runs {
            assert_eq!(r.angles.len(), r.len);
            match r.kind {
                SeaKind::Bend => assert_eq!(r.len, 1),
                SeaKind::Cape(k) => assert_eq!(k as usize, r.len),
                SeaKind::Residue => assert!(r.len > 4),
            }
        }
    }
}

#[test]
fn catalogue_covers_runs_up_to_four() {
    let names: Vec<&str> = catalogue().iter().map(|t| t.name.as_str()).collect();
    assert_eq!(names, ["bend", "cape2", "cape3", "cape4"]);
}

#[test]
fn violations_parse_back() {
    for v in [
        Violation::TwoFours { at: 3 },
        Violation::ClassOne { at: 0 },
        Violation::Cape { size: 2, at: 7 },
        Violation::Cape { size: 3, at: 1 },
    ] {
        assert_eq!(v.to_string().parse::<Violation>().unwrap(), v);
    }
    assert!("cape4@1".parse::<Violation>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn classes_do_not_depend_on_placement(rot in 0u8..10, mirror: bool, a in -2i64..=2, b in -2i64..=2) {
        let p = Patch::generate(SeedName::Sun, 6);
        let base = Scene::new(p.clone()).unwrap();
        let moved = Scene::new(p.transformed(rot, mirror, Cyclo10::new(a, b, 0, 0))).unwrap();
        let classes = |s: &Scene| -> HashMap<Vec<usize>, (u8, Option<u8>)> {
            find_primes(s, Budget::default())
                .unwrap()
                .into_iter()
                .map(|t| {
                    let pc = PrimeCaterpillar::new(s, t.clone()).unwrap();
                    (t.tiles().to_vec(), (pc.class_id, pc.angle))
                })
                .collect()
        };
        prop_assert_eq!(classes(&base), classes(&moved));
    }
}

fn side() -> impl Strategy<Value = Option<Side>> {
    prop_oneof![Just(None), Just(Some(Side::Left)), Just(Some(Side::Right))]
}

proptest! {
    #[test]
    fn chain_text_round_trips(
        lines in prop::collection::vec((1u8..=6, prop::option::of(prop::sample::select(vec![4u8, 6, 8])), side()), 0..8),
        colors in "[RGB]{0,9}",
        at in prop::collection::vec(0usize..9, 0..3),
    ) {
        let primes: Vec<PrimeLine> = lines.into_iter().map(|(class_id, angle, side)| PrimeLine { class_id, angle, side }).collect();
        let angles: String = primes.iter().map(|p| p.angle.map_or('?', |a| char::from(b'0' + a))).collect();
        let violations = at.into_iter().map(|at| Violation::ClassOne { at }).collect();
        let r = ChainReport { primes, colors, angles, violations };
        let text = r.to_text();
        let back = ChainReport::from_text(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back, r);
    }
}
