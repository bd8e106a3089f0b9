//! Acceptance criteria, one line each. Every check is exact unless a bound
//! is stated on its line.
//!
//! Criteria 4 and 10 fail as stated; see KNOWN_FAILURES. The run exits
//! non-zero if any other criterion fails or if a known failure starts
//! passing.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use p2flis::caterpillar::{
    decompose, detect_sea_caterpillars, forbidden_patterns, graft, graft_configurations, prime_side,
    side_sequence, ChainReport, PrimeCaterpillar, Scene, SeaKind, Side, Violation, PRIME_CLASSES,
};
use p2flis::flis::{
    brute_force_leaf_table, enumerate_flis, leaf_count, search_max_leaves, Budget, ClassKey, InducedSubtree,
    LeafRecord,
};
use p2flis::geometry::{validate_patch, Patch, SeedName, Tile, TileKind};
use p2flis::inflation_lab::{extend_chain, grow_context, right_extensions, ExtendText, PrimeIndex};
use p2flis::ring::Cyclo10;
use p2flis::stargraph::{detect_stars_and_suns, star_graph_of, StarGraph};
use p2flis::{build_dual, Error, P2Graph};

/// Criteria that cannot hold as written, with the reason printed beside
/// the FAIL line.
const KNOWN_FAILURES: [(u8, &str); 2] = [
    (4, "order 17 with 8 internal tiles is not a prime shape; primes have order 18"),
    (10, "a same-turn run of 4 is a dead end at one side in every patch searched"),
];

const LEAFFN_MAX: u64 = 10_000;
const LEAFFN_TIME: Duration = Duration::from_secs(1);

struct Report {
    unexpected: Vec<u8>,
}

impl Report {
    fn line(&mut self, id: u8, name: &str, ok: bool, detail: String) {
        let status = if ok { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {status} {name}: {detail}");
        let known = KNOWN_FAILURES.iter().find(|k| k.0 == id);
        if let (false, Some((_, why))) = (ok, known) {
            println!("             known: {why}");
        }
        if ok == known.is_some() {
            self.unexpected.push(id);
        }
    }
}

fn sun(level: u32) -> Patch {
    Patch::generate(SeedName::Sun, level)
}

/// The leaf function as stated: a table up to 35, then period 17 with
/// 8 more leaves per period.
fn leaf_oracle(max: u64) -> Vec<u64> {
    let mut l = vec![0u64; max as usize + 1];
    for n in 0..=max {
        l[n as usize] = match n {
            0 | 1 => 0,
            2..=18 => n / 2 + 1,
            19..=35 => 8 * (n / 17) + (n % 17) / 2 + 1 + u64::from(n % 17 == 1),
            _ => l[n as usize - 17] + 8,
        };
    }
    l
}

fn c1(r: &mut Report) {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_p2flis"))
        .args(["leaffn", "--max", &LEAFFN_MAX.to_string()])
        .output()
        .expect("run leaffn");
    let elapsed = t.elapsed();
    let text = String::from_utf8(out.stdout).unwrap();
    let got: Vec<(u64, u64)> = text
        .lines()
        .filter_map(|l| {
            let (n, v) = l.strip_prefix("L(")?.split_once(")=")?;
            Some((n.parse().ok()?, v.parse().ok()?))
        })
        .collect();
    let want = leaf_oracle(LEAFFN_MAX);
    let mismatches = got.iter().filter(|&&(n, v)| want[n as usize] != v).count();
    let complete = got.len() == want.len() && got.iter().enumerate().all(|(i, p)| p.0 == i as u64);
    let named = [(2, 2), (17, 9), (18, 10), (19, 10), (35, 18)]
        .iter()
        .all(|&(n, v)| got.get(n).map(|p| p.1) == Some(v));
    let ok = out.status.success() && complete && named && mismatches == 0 && elapsed < LEAFFN_TIME;
    r.line(
        1,
        "leaf function table",
        ok,
        format!("n <= {LEAFFN_MAX}, {mismatches} mismatches, {:.3}s (bound 1s)", elapsed.as_secs_f64()),
    );
}

fn c2(r: &mut Report) {
    let g = build_dual(&sun(5)).unwrap();
    let t = Instant::now();
    let brute = brute_force_leaf_table(&g, 12);
    let mut bad = Vec::new();
    for n in 1..=12 {
        let found = search_max_leaves(&g, n, Budget::unlimited(1)).unwrap().max_leaves;
        if brute[n] != Some(found) {
            bad.push(n);
        }
    }
    r.line(
        2,
        "branch and bound equals exhaustive enumeration",
        bad.is_empty(),
        format!("level 5 sun, {} tiles, n = 1..12, mismatches at {bad:?}, {:.1}s", g.len(), t.elapsed().as_secs_f64()),
    );
}

fn c3(r: &mut Report) {
    let t = Instant::now();
    let gs = [build_dual(&sun(7)).unwrap(), build_dual(&sun(8)).unwrap()];
    let want = leaf_oracle(21);
    let mut bad = Vec::new();
    for n in 2..=21 {
        let v: Vec<usize> = gs
            .iter()
            .map(|g| search_max_leaves(g, n, Budget::unlimited(1)).unwrap().max_leaves)
            .collect();
        if v[0] != v[1] || v[1] as u64 != want[n] {
            bad.push(n);
        }
    }
    r.line(
        3,
        "search reproduces the leaf function",
        bad.is_empty(),
        format!("levels 7 and 8, n = 2..21, disagreements at {bad:?}, {:.1}s", t.elapsed().as_secs_f64()),
    );
}

fn prime_shaped(t: &InducedSubtree, leaves: usize) -> bool {
    leaf_count(t) == leaves && t.internal().iter().all(|&v| t.degree_of(v) == Some(3))
}

fn c4(r: &mut Report) {
    let p = sun(6);
    let g = build_dual(&p).unwrap();
    let (l17, k17) = enumerate_flis(&p, &g, 17, Some(8), ClassKey::Derived, Budget::default()).unwrap();
    let shaped17 = k17.iter().filter(|c| prime_shaped(&c.representative, 9)).count();
    let (l18, k18) = enumerate_flis(&p, &g, 18, Some(8), ClassKey::Derived, Budget::default()).unwrap();
    let shaped18 = k18.iter().filter(|c| prime_shaped(&c.representative, 10)).count();
    let ok = k17.len() == 6 && shaped17 == 6 && l17 == 9;
    r.line(
        4,
        "prime caterpillar census",
        ok,
        format!(
            "order 17: {} classes (max {l17} leaves, {shaped17} with all internal degree 3); \
             order 18: {} classes (max {l18} leaves, {shaped18} with all internal degree 3)",
            k17.len(),
            k18.len()
        ),
    );
}

fn c5(r: &mut Report, scene7: &Scene, index7: &PrimeIndex) {
    let trees: Vec<InducedSubtree> = index7.primes.iter().map(|p| p.tree.clone()).collect();
    let conf = graft_configurations(scene7, &trees);
    let total: usize = conf.values().sum();
    let counts: Vec<usize> = conf.values().copied().collect();
    r.line(
        5,
        "two-prime graft configurations",
        conf.len() == 2,
        format!("level 7, {} primes, {total} grafts, {} configurations {counts:?}", trees.len(), conf.len()),
    );
}

fn c6(r: &mut Report) {
    let scene = Scene::new(sun(8)).unwrap();
    let trees = p2flis::caterpillar::find_primes(&scene, Budget::default()).unwrap();
    let expected = |class: u8| match class {
        1 | 3 | 6 => 4,
        2 | 5 => 6,
        4 => 8,
        _ => 0,
    };
    let (mut measured, mut unmeasured, mut exceptions, mut unclassified) = (0, 0, 0, 0);
    let mut per_class = [0usize; 6];
    for t in trees {
        let Ok(pc) = PrimeCaterpillar::new(&scene, t) else {
            unclassified += 1;
            continue;
        };
        per_class[pc.class_id as usize - 1] += 1;
        match pc.angle {
            Some(a) => {
                measured += 1;
                exceptions += usize::from(a != expected(pc.class_id));
            }
            None => unmeasured += 1,
        }
    }
    let table_ok = PRIME_CLASSES.iter().all(|c| c.angle == expected(c.id));
    r.line(
        6,
        "angle by class",
        exceptions == 0 && unclassified == 0 && table_ok && measured > 0,
        format!(
            "level 8, {measured} measured, {exceptions} exceptions, {unclassified} unclassified, \
             {unmeasured} with a flanking star outside the patch, per class {per_class:?}"
        ),
    );
}

/// Fully leafed chains of two and three primes, by grafting primes of the
/// patch in every possible way.
fn grafted_chains(scene: &Scene, index: &PrimeIndex) -> (Vec<InducedSubtree>, Vec<InducedSubtree>) {
    let primes: Vec<&InducedSubtree> = index.primes.iter().map(|p| &p.tree).collect();
    let mut by_leaf: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, p) in primes.iter().enumerate() {
        for l in p.leaves() {
            by_leaf.entry(l).or_default().push(i);
        }
    }
    let mut twos = Vec::new();
    let mut threes = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for (&l, ids) in &by_leaf {
        for (k, &a) in ids.iter().enumerate() {
            for &b in &ids[k + 1..] {
                let Ok(u) = graft(&scene.graph, primes[a], primes[b], l) else {
                    continue;
                };
                for l2 in u.leaves() {
                    for &c in by_leaf.get(&l2).into_iter().flatten() {
                        if c == a || c == b {
                            continue;
                        }
                        if let Ok(w) = graft(&scene.graph, &u, primes[c], l2) {
                            if seen.insert(w.tiles().to_vec()) {
                                threes.push(w);
                            }
                        }
                    }
                }
                twos.push(u);
            }
        }
    }
    (twos, threes)
}

fn c7(r: &mut Report, scene7: &Scene, index7: &PrimeIndex) {
    let (twos, threes) = grafted_chains(scene7, index7);
    let (mut checked, mut partial, mut violations, mut undecomposed) = (0, 0, 0, 0);
    let mut orders = BTreeSet::new();
    for t in twos.iter().chain(&threes) {
        orders.insert(t.order());
        let Ok(c) = decompose(scene7, t) else {
            undecomposed += 1;
            continue;
        };
        let sides: Vec<Option<Side>> = (0..c.primes.len()).map(|i| prime_side(scene7, &c, i).unwrap()).collect();
        let mut any = false;
        for w in sides.windows(2) {
            if let [Some(x), Some(y)] = w {
                any = true;
                violations += usize::from(x == y);
            }
        }
        if sides.iter().all(Option::is_some) {
            checked += 1;
        } else if any {
            partial += 1;
        }
    }
    r.line(
        7,
        "sides alternate",
        violations == 0 && undecomposed == 0 && checked > 0,
        format!(
            "level 7, {} chains of orders {orders:?}, {checked} fully sided, {partial} partly sided, \
             {violations} violations, {undecomposed} not decomposed",
            twos.len() + threes.len()
        ),
    );
}

fn c8(r: &mut Report) {
    let mut bad = Vec::new();
    let phi2 = Cyclo10::PHI * Cyclo10::PHI;
    for seed in SeedName::ALL {
        let mut p = Patch::seed(seed);
        let c = p.half_counts();
        let (mut a, mut b) = (c.half_kites, c.half_darts);
        for level in 1..=5 {
            let q = p.inflate().unwrap();
            (a, b) = (2 * a + b, a + b);
            let got = q.half_counts();
            if (got.half_kites, got.half_darts) != (a, b) {
                bad.push(format!("{seed} counts at level {level}"));
            }
            if q.area_element() != p.area_element() * phi2 {
                bad.push(format!("{seed} area at level {level}"));
            }
            p = q;
        }
    }
    r.line(8, "inflation accounting", bad.is_empty(), format!("4 seeds x 5 levels, failures {bad:?}"));
}

/// Suns touching each star, recounted from scratch.
fn sun_counts(p: &Patch, g: &P2Graph) -> Vec<usize> {
    let (stars, suns) = detect_stars_and_suns(p);
    stars
        .iter()
        .map(|s| {
            suns.iter()
                .filter(|u| s.tiles.iter().any(|&d| u.tiles.iter().any(|&k| g.neighbors(d).contains(&k))))
                .count()
        })
        .collect()
}

fn c9(r: &mut Report) {
    let mut invalid = Vec::new();
    let mut stars = 0;
    let mut worst = 0;
    for seed in SeedName::ALL {
        for level in 0..=7 {
            let p = Patch::generate(seed, level);
            if !validate_patch(&p).is_empty() {
                invalid.push(format!("{seed}@{level}"));
            }
            if level >= 5 {
                let g = build_dual(&p).unwrap();
                let counts = sun_counts(&p, &g);
                stars += counts.len();
                worst = worst.max(counts.iter().copied().max().unwrap_or(0));
                let sg = star_graph_of(&p, &g).unwrap();
                let mine: Vec<usize> = sg.vertices.iter().map(|v| v.sun_count).collect();
                let mut sorted_a = mine.clone();
                let mut sorted_b = counts.clone();
                sorted_a.sort_unstable();
                sorted_b.sort_unstable();
                if sorted_a != sorted_b {
                    invalid.push(format!("{seed}@{level} sun counts"));
                }
            }
        }
    }
    // two kites sharing their long edge black vertex against white
    let a = Tile::new(0, TileKind::Kite, Cyclo10::ZERO, 0);
    let tip = Cyclo10::PHI * Cyclo10::ZETA;
    let rot = (0..10u8).find(|&k| tip + tip.rotate(k as i64) == Cyclo10::ZERO).unwrap();
    let bad = Patch {
        tiles: vec![a, Tile::new(1, TileKind::Kite, tip, rot)],
        loose: vec![],
        scale_exp: 0,
    };
    let caught = !validate_patch(&bad).is_empty() && bad.inflate().is_err();
    r.line(
        9,
        "structural validity",
        invalid.is_empty() && caught && worst <= 2,
        format!(
            "4 seeds x levels 0..7 invalid {invalid:?}; broken patch rejected {caught}; \
             {stars} stars, max suns per star {worst}"
        ),
    );
}

fn c10(r: &mut Report, scene7: &Scene, index7: &PrimeIndex) {
    const TARGET: usize = 3;
    const GROW: u32 = 2;
    let budget = Budget {
        node_limit: Some(200_000),
        ..Budget::default()
    };
    let t = Instant::now();
    // a seed with a same-turn run of four primes and nothing forbidden
    let mut seed = None;
    'find: for p in &index7.primes {
        let one = decompose(scene7, &p.tree).unwrap();
        for c in right_extensions(scene7, index7, &one, 3).unwrap() {
            let Ok(sides) = side_sequence(scene7, &c) else {
                continue;
            };
            let cape4 = detect_sea_caterpillars(&c, &sides)
                .iter()
                .any(|s| s.kind == SeaKind::Cape(4));
            if cape4 && forbidden_patterns(scene7, &c).is_empty() {
                seed = Some(c);
                break 'find;
            }
        }
    }
    let Some(seed) = seed else {
        r.line(10, "extension around a cape 4", false, "no cape-4 seed at level 7".into());
        return;
    };
    let word = ChainReport::from_chain(scene7, &seed).unwrap().angles;
    let grown = grow_context(&scene7.patch, &seed.tree, GROW).unwrap();
    let big = Scene::new(grown.patch.merged()).unwrap();
    let tiles = grown.tiles.expect("level 7 reappears two levels up");
    let moved = decompose(&big, &InducedSubtree::new(&big.graph, tiles).unwrap()).unwrap();
    let index = PrimeIndex::new(&big, Budget::default()).unwrap();
    let cape = extend_chain(&big, &index, &moved, TARGET, budget);
    let (cl, cr, cmet) = match &cape {
        Ok(x) => (x.left, x.right, x.met),
        Err(Error::ExtensionBudget(x)) => (x.left, x.right, false),
        Err(e) => panic!("cape-4 extension: {e}"),
    };

    // class-1 seeds must stall
    let mut pc1_best = 0;
    let mut pc1_seeds = 0;
    for p in index.primes.iter().filter(|p| p.class_id == 1 && p.angle.is_some()).take(40) {
        let one = decompose(&big, &p.tree).unwrap();
        pc1_seeds += 1;
        let best = match extend_chain(&big, &index, &one, TARGET, budget) {
            Ok(x) => x.left.min(x.right),
            Err(Error::ExtensionBudget(x)) => x.left.min(x.right),
            Err(_) => 0,
        };
        pc1_best = pc1_best.max(best);
    }

    // seeds with two consecutive 4s are rejected; grafting never produces
    // one, so the real chains are counted and a seed is doctored
    let mut real_fours = 0;
    let mut pairs = Vec::new();
    for p in &index7.primes {
        let one = decompose(scene7, &p.tree).unwrap();
        for c in right_extensions(scene7, index7, &one, 1).unwrap() {
            real_fours += usize::from(forbidden_patterns(scene7, &c).iter().any(|v| matches!(v, Violation::TwoFours { .. })));
            pairs.push(c);
        }
    }
    let mut doctored = pairs.swap_remove(0);
    for q in &mut doctored.primes {
        q.angle = Some(4);
    }
    let rejected = matches!(extend_chain(scene7, index7, &doctored, TARGET, budget), Err(Error::ChainRejected(_)));

    let ok = cmet && cl >= TARGET && cr >= TARGET && pc1_best < TARGET && rejected;
    r.line(
        10,
        "extension around a cape 4",
        ok,
        format!(
            "seed {word} grown {GROW} levels: {cl} left, {cr} right (target {TARGET}); \
             {pc1_seeds} class-1 seeds reach at most {pc1_best} per side; \
             {real_fours} of {} grafted pairs at level 7 contain 44, doctored 44 seed rejected {rejected}; {:.1}s",
            pairs.len() + 1,
            t.elapsed().as_secs_f64()
        ),
    );
}

fn round_trip<T>(text: &str, read: impl Fn(&str) -> p2flis::Result<T>, write: impl Fn(&T) -> String) -> bool {
    match read(text) {
        Ok(v) => write(&v) == text,
        Err(_) => false,
    }
}

fn c11(r: &mut Report, scene7: &Scene, index7: &PrimeIndex) {
    let p = sun(4);
    let g = build_dual(&p).unwrap();
    let sg = star_graph_of(&sun(7), &build_dual(&sun(7)).unwrap()).unwrap();
    let rec = search_max_leaves(&g, 10, Budget::unlimited(4)).unwrap();
    let prime = index7.primes.iter().find(|p| p.class_id == 4 && p.angle.is_some()).unwrap();
    let one = decompose(scene7, &prime.tree).unwrap();
    let rep = extend_chain(scene7, index7, &one, 2, Budget::default()).unwrap();
    let chain = ChainReport::from_chain(scene7, &rep.chain).unwrap().to_text();
    let ext = ExtendText::new("seed.flis", scene7, &rep).unwrap().to_text();
    let results = [
        ("P2PATCH", round_trip(&p.to_text(), Patch::from_text, Patch::to_text)),
        ("P2GRAPH", round_trip(&g.to_text(), P2Graph::from_text, P2Graph::to_text)),
        ("FLIS", round_trip(&rec.to_text(), LeafRecord::from_text, LeafRecord::to_text)),
        ("STARGRAPH", round_trip(&sg.to_text(), StarGraph::from_text, StarGraph::to_text)),
        ("CHAIN", round_trip(&chain, ChainReport::from_text, ChainReport::to_text)),
        ("EXTEND", round_trip(&ext, ExtendText::from_text, ExtendText::to_text)),
    ];
    let failed: Vec<&str> = results.iter().filter(|x| !x.1).map(|x| x.0).collect();
    r.line(11, "round trips", failed.is_empty(), format!("6 formats, failed {failed:?}"));
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut r = Report { unexpected: Vec::new() };
    c1(&mut r);
    c2(&mut r);
    c3(&mut r);
    c4(&mut r);
    let scene7 = Scene::new(sun(7)).unwrap();
    let index7 = PrimeIndex::new(&scene7, Budget::default()).unwrap();
    c5(&mut r, &scene7, &index7);
    c6(&mut r);
    c7(&mut r, &scene7, &index7);
    c8(&mut r);
    c9(&mut r);
    c10(&mut r, &scene7, &index7);
    c11(&mut r, &scene7, &index7);
    println!("acceptance done in {:.1}s", start.elapsed().as_secs_f64());
    if r.unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for criteria {:?}", r.unexpected);
        ExitCode::FAILURE
    }
}
