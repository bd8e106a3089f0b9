mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use p2flis::caterpillar::{decompose, ChainReport, PrimeCaterpillar, Scene, PRIME_CLASSES};
use p2flis::flis::{leaf_function_formula, search_max_leaves, Budget, InducedSubtree, LeafRecord};
use p2flis::geometry::{Patch, SeedName};
use p2flis::inflation_lab::{extend_chain, grow_context, ExtendText, PrimeIndex};
use p2flis::stargraph::{star_graph_of, StarGraph};
use p2flis::{build_dual, Error, P2Graph};

#[derive(Parser)]
#[command(name = "p2flis", version, about = "Fully leafed induced subtrees in Penrose P2 tilings")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct Limits {
    /// Stop after this many search nodes.
    #[arg(long)]
    node_limit: Option<u64>,
    /// Stop after this many seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

impl Limits {
    fn budget(self, witness_cap: usize) -> Budget {
        Budget {
            node_limit: self.node_limit,
            time_limit: self.time_limit.map(Duration::from_secs_f64),
            witness_cap,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a seed patch after some inflations.
    Generate {
        #[arg(long)]
        seed: SeedName,
        #[arg(long)]
        inflations: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the dual graph of a patch.
    Dual {
        patch: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Maximum leaf count over induced subtrees of one order.
    Search {
        #[arg(long)]
        order: usize,
        /// Witnesses to keep.
        #[arg(long, default_value_t = 16)]
        witnesses: usize,
        #[command(flatten)]
        limits: Limits,
        #[arg(short, long)]
        output: Option<PathBuf>,
        patch: PathBuf,
    },
    /// Print the leaf function up to `max`.
    Leaffn {
        #[arg(long)]
        max: u64,
    },
    /// Compare search on sun patches of two levels with the leaf function.
    VerifyLeaffn {
        #[arg(long)]
        max: usize,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        levels: Vec<u32>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Star-graph of a patch.
    Stars {
        patch: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Census of prime caterpillars by class.
    Classify {
        patch: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
    /// Decompose a witness and report its chain.
    Chain {
        /// FLIS file; its first witness is used.
        #[arg(long)]
        witness: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        patch: PathBuf,
    },
    /// Extend a chain one prime at a time on both sides.
    Extend {
        /// FLIS file whose first witness is the seed chain.
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        target: usize,
        /// Inflate the patch this many times first and carry the seed over.
        #[arg(long, default_value_t = 0)]
        grow: u32,
        #[command(flatten)]
        limits: Limits,
        #[arg(short, long)]
        output: Option<PathBuf>,
        patch: PathBuf,
    },
    /// Draw a patch.
    Render {
        patch: PathBuf,
        /// FLIS file; its first witness is highlighted.
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long)]
        stars: bool,
        #[arg(long)]
        svg: PathBuf,
    },
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_patch(path: &Path) -> anyhow::Result<Patch> {
    Patch::from_text(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn first_witness(path: &Path, g: &P2Graph) -> anyhow::Result<InducedSubtree> {
    let rec = LeafRecord::from_text(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let Some(w) = rec.witnesses.into_iter().next() else {
        bail!("{} holds no witness", path.display());
    };
    if let Some(&bad) = w.iter().find(|&&t| t >= g.len()) {
        bail!("witness tile {bad} is not in the patch");
    }
    Ok(InducedSubtree::new(g, w)?)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Generate {
            seed,
            inflations,
            output,
        } => {
            let mut p = Patch::seed(seed);
            for _ in 0..inflations {
                p = p.inflate()?;
            }
            write(&output, &p.to_text())
        }
        Command::Dual { patch, output } => {
            let g = build_dual(&load_patch(&patch)?)?;
            write(&output, &g.to_text())
        }
        Command::Search {
            order,
            witnesses,
            limits,
            output,
            patch,
        } => {
            let g = build_dual(&load_patch(&patch)?)?;
            let rec = search_max_leaves(&g, order, limits.budget(witnesses))?;
            emit(output.as_deref(), &rec.to_text())
        }
        Command::Leaffn { max } => {
            let mut s = String::new();
            for n in 0..=max {
                s.push_str(&format!("L({n})={}\n", leaf_function_formula(n)));
            }
            emit(None, &s)
        }
        Command::VerifyLeaffn { max, levels, limits } => verify_leaffn(max, &levels, limits),
        Command::Stars { patch, output, svg } => {
            let p = load_patch(&patch)?;
            let g = build_dual(&p)?;
            let sg = star_graph_of(&p, &g)?;
            if let Some(path) = svg {
                write(&path, &svg::render(&p, &[], Some(&sg)))?;
            }
            emit(output.as_deref(), &sg.to_text())
        }
        Command::Classify { patch, limits } => classify(load_patch(&patch)?, limits),
        Command::Chain {
            witness,
            output,
            patch,
        } => {
            let scene = Scene::new(load_patch(&patch)?)?;
            let t = first_witness(&witness, &scene.graph)?;
            let c = decompose(&scene, &t)?;
            emit(output.as_deref(), &ChainReport::from_chain(&scene, &c)?.to_text())
        }
        Command::Extend {
            chain,
            target,
            grow,
            limits,
            output,
            patch,
        } => {
            let p = load_patch(&patch)?;
            let g = build_dual(&p)?;
            let seed = first_witness(&chain, &g)?;
            let (p, seed) = if grow > 0 {
                let grown = grow_context(&p, &seed, grow)?;
                let Some(tiles) = grown.tiles else {
                    bail!("the patch does not reappear after {grow} inflations; try another step count");
                };
                let p = grown.patch.merged();
                let g = build_dual(&p)?;
                let seed = InducedSubtree::new(&g, tiles)?;
                (p, seed)
            } else {
                (p, seed)
            };
            let scene = Scene::new(p)?;
            let seed = decompose(&scene, &seed)?;
            let index = PrimeIndex::new(&scene, Budget::default())?;
            let name = chain.display().to_string();
            match extend_chain(&scene, &index, &seed, target, limits.budget(16)) {
                Ok(r) => emit(output.as_deref(), &ExtendText::new(&name, &scene, &r)?.to_text()),
                Err(Error::ExtensionBudget(r)) => {
                    emit(output.as_deref(), &ExtendText::new(&name, &scene, &r)?.to_text())?;
                    Err(Error::ExtensionBudget(r).into())
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Render {
            patch,
            tree,
            stars,
            svg,
        } => {
            let p = load_patch(&patch)?;
            let g = build_dual(&p)?;
            let tiles = match tree {
                Some(f) => first_witness(&f, &g)?.tiles().to_vec(),
                None => Vec::new(),
            };
            let sg: Option<StarGraph> = if stars { Some(star_graph_of(&p, &g)?) } else { None };
            write(&svg, &svg::render(&p, &tiles, sg.as_ref()))
        }
    }
}

fn verify_leaffn(max: usize, levels: &[u32], limits: Limits) -> anyhow::Result<()> {
    if levels.is_empty() {
        bail!("--levels needs at least one level");
    }
    let graphs: Vec<P2Graph> = levels
        .iter()
        .map(|&k| build_dual(&Patch::generate(SeedName::Sun, k)))
        .collect::<p2flis::Result<_>>()?;
    let mut bad = 0;
    println!("n formula {} stable ok", levels.iter().map(|k| format!("level{k}")).collect::<Vec<_>>().join(" "));
    for n in 1..=max {
        let found: Vec<usize> = graphs
            .iter()
            .map(|g| search_max_leaves(g, n, limits.budget(1)).map(|r| r.max_leaves))
            .collect::<p2flis::Result<_>>()?;
        let want = leaf_function_formula(n as u64) as usize;
        let stable = found.windows(2).all(|w| w[0] == w[1]);
        let ok = stable && found.last() == Some(&want);
        bad += usize::from(!ok);
        let cols: Vec<String> = found.iter().map(usize::to_string).collect();
        println!("{n} {want} {} {} {}", cols.join(" "), u8::from(stable), u8::from(ok));
    }
    if bad > 0 {
        return Err(Error::Structural(format!("{bad} orders disagree with the leaf function")).into());
    }
    Ok(())
}

fn classify(p: Patch, limits: Limits) -> anyhow::Result<()> {
    let scene = Scene::new(p)?;
    let trees = p2flis::caterpillar::find_primes(&scene, limits.budget(usize::MAX))?;
    let mut counts = [0usize; 6];
    let mut angles: [std::collections::BTreeSet<u8>; 6] = Default::default();
    let mut rejected = 0;
    for t in trees {
        match PrimeCaterpillar::new(&scene, t) {
            Ok(pc) => {
                let k = pc.class_id as usize - 1;
                counts[k] += 1;
                angles[k].extend(pc.angle);
            }
            Err(_) => rejected += 1,
        }
    }
    println!("class angle instances measured");
    for (k, c) in PRIME_CLASSES.iter().enumerate() {
        let seen: Vec<String> = angles[k].iter().map(u8::to_string).collect();
        println!("{} {} {} {}", c.id, c.angle, counts[k], if seen.is_empty() { "-".into() } else { seen.join(",") });
    }
    println!("unresolved {rejected}");
    if angles.iter().zip(&PRIME_CLASSES).any(|(a, c)| a.iter().any(|&x| x != c.angle)) {
        return Err(Error::Structural("a prime's measured angle differs from its class".into()).into());
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. } | Error::ExtensionBudget(_)) => 3,
        Some(
            Error::InvalidPatch(_)
            | Error::Structural(_)
            | Error::Decomposition(_)
            | Error::Graft(_)
            | Error::NotATree(_)
            | Error::NotPrime(_)
            | Error::StarGraph(_)
            | Error::ChainRejected(_),
        ) => 4,
        // unreadable or malformed input counts as a usage error
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
