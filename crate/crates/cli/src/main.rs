mod export;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use netcolor::generators::{self, ObjectKind, RandomParams};
use netcolor::instance::{ColoringDoc, Instance};
use netcolor::run::{self, Algorithm, Limits};
use netcolor::validator::{Mode, DEFAULT_BRUTE_FORCE_LIMIT};
use netcolor::{NetObject, Rational, SpaceKind};

#[derive(Parser)]
#[command(name = "netcolor", version, about = "NM and CF colorings of connected objects on network spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color an instance and report the palette against its bound.
    Color {
        instance: PathBuf,
        #[arg(long, short)]
        algorithm: Algorithm,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check a coloring file against an instance.
    Validate {
        instance: PathBuf,
        coloring: PathBuf,
        /// Defaults to the mode of the algorithm named in the coloring file.
        #[arg(long, short)]
        mode: Option<Mode>,
    },
    /// Exact minimum palette by exhaustive search.
    Oracle {
        instance: PathBuf,
        #[arg(long, short)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_LIMIT)]
        limit: usize,
    },
    /// Write a generated instance.
    Gen {
        #[command(subcommand)]
        which: GenCommand,
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
    },
    /// Run a colorer on random instances of growing size.
    Bench {
        #[arg(long, short)]
        algorithm: Algorithm,
        /// Internal node counts to try.
        #[arg(long, value_delimiter = ',', default_value = "4,8,16,32")]
        sizes: Vec<usize>,
        /// Instances per size.
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Draw an instance, optionally colored.
    Export {
        instance: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long, short, value_enum, default_value_t = Format::Svg)]
        format: Format,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone, Copy)]
struct LimitArgs {
    /// Largest core for the exact independent-set search.
    #[arg(long, default_value_t = Limits::default().exact_mis)]
    threshold_exact_mis: usize,
    /// Largest core for the exact 4-coloring search.
    #[arg(long = "threshold-exact-4color", default_value_t = Limits::default().exact_4color)]
    threshold_exact_4color: usize,
}

impl From<LimitArgs> for Limits {
    fn from(a: LimitArgs) -> Self {
        Limits { exact_mis: a.threshold_exact_mis, exact_4color: a.threshold_exact_4color }
    }
}

#[derive(Subcommand)]
enum GenCommand {
    /// Star with k leaves, one leaf per pair of objects.
    StarPairs {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n: usize,
    },
    /// Root-to-leaf paths of a complete binary tree.
    BinaryTreePaths {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Comb with t teeth and t+1 nested balls.
    Comb {
        #[arg(long)]
        t: usize,
    },
    /// K4 with unit edges and one ball per node.
    K4 {
        #[arg(long, default_value = "2/3")]
        radius: Rational,
    },
    /// Seeded random instance.
    Random {
        #[arg(long, value_enum, default_value_t = SpaceArg::Tree)]
        space: SpaceArg,
        #[arg(long, value_enum, default_value_t = ObjectArg::Balls)]
        objects: ObjectArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = RandomParams::default().internal)]
        internal: usize,
        #[arg(long, default_value_t = RandomParams::default().extra_leaves)]
        extra_leaves: usize,
        #[arg(long, default_value_t = RandomParams::default().objects)]
        count: usize,
        #[arg(long, default_value_t = RandomParams::default().max_leaves)]
        max_leaves: usize,
        #[arg(long, default_value_t = RandomParams::default().radius_quarters)]
        radius_quarters: u32,
    },
    /// Seeded random intervals on a line.
    Intervals {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Tree,
    Planar,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectArg {
    Balls,
    Subtrees,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Svg,
}

/// An invalid coloring; everything else that fails is an input error.
struct Invalid;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Invalid)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Instance::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_coloring(path: &Path) -> Result<ColoringDoc> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ColoringDoc::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn network(objects: impl IntoIterator<Item = NetObject>, space: netcolor::NetworkSpace) -> Instance {
    Instance::Network { space, objects: objects.into_iter().collect() }
}

fn execute(command: Command) -> Result<std::result::Result<(), Invalid>> {
    match command {
        Command::Color { instance, algorithm, limits, out } => {
            let inst = read_instance(&instance)?;
            let doc = run::color(&inst, algorithm, limits.into())?;
            let verdict = run::validate(&inst, &doc.coloring(), algorithm.mode())?;
            emit(out.as_deref(), &doc.to_json())?;
            let bound = doc.bound.as_ref().expect("colorers report a bound");
            eprintln!(
                "{}: palette {} vs bound {} = {} ({})",
                doc.algorithm,
                doc.palette_size,
                bound.formula,
                bound.value,
                if bound.respected { "respected" } else { "exceeded" }
            );
            if !verdict.valid {
                report_invalid(&verdict, algorithm.mode());
                return Ok(Err(Invalid));
            }
        }
        Command::Validate { instance, coloring, mode } => {
            let inst = read_instance(&instance)?;
            let doc = read_coloring(&coloring)?;
            let mode = match mode {
                Some(m) => m,
                None => doc.algorithm.parse::<Algorithm>().map(Algorithm::mode).unwrap_or(Mode::Nm),
            };
            let verdict = run::validate(&inst, &doc.coloring(), mode)?;
            if !verdict.valid {
                report_invalid(&verdict, mode);
                return Ok(Err(Invalid));
            }
            println!("valid {mode} coloring with {} colors", doc.coloring().palette_size());
        }
        Command::Oracle { instance, mode, limit } => {
            let inst = read_instance(&instance)?;
            println!("{}", run::oracle(&inst, mode, limit)?);
        }
        Command::Gen { which, out } => {
            let inst = match which {
                GenCommand::StarPairs { k, l, n } => {
                    let (space, trees) = generators::gen_star_pairs(k, l, n)?;
                    network(trees.into_iter().map(NetObject::Subtree), space)
                }
                GenCommand::BinaryTreePaths { k, n } => {
                    let (space, trees) = generators::gen_binary_tree_paths(k, n)?;
                    network(trees.into_iter().map(NetObject::Subtree), space)
                }
                GenCommand::Comb { t } => {
                    let (space, balls) = generators::gen_comb(t)?;
                    network(balls.into_iter().map(NetObject::Ball), space)
                }
                GenCommand::K4 { radius } => {
                    if radius.is_negative() {
                        bail!("radius must be non-negative");
                    }
                    let (space, balls) = generators::gen_k4(radius)?;
                    network(balls.into_iter().map(NetObject::Ball), space)
                }
                GenCommand::Random { space, objects, seed, internal, extra_leaves, count, max_leaves, radius_quarters } => {
                    let params = RandomParams { internal, extra_leaves, objects: count, max_leaves, radius_quarters };
                    let (s, objs) = generators::gen_random(space.into(), objects.into(), &params, seed)?;
                    network(objs, s)
                }
                GenCommand::Intervals { seed, count } => Instance::Intervals(generators::gen_random_intervals(count, seed)),
            };
            emit(out.as_deref(), &inst.to_json())?;
        }
        Command::Bench { algorithm, sizes, count, seed, limits } => bench(algorithm, &sizes, count, seed, limits.into())?,
        Command::Export { instance, coloring, format, out } => {
            let inst = read_instance(&instance)?;
            let coloring = coloring.map(|p| read_coloring(&p)).transpose()?.map(|d| d.coloring());
            let text = match format {
                Format::Dot => export::to_dot(&inst, coloring.as_ref())?,
                Format::Svg => export::to_svg(&inst, coloring.as_ref())?,
            };
            emit(out.as_deref(), &text)?;
        }
    }
    Ok(Ok(()))
}

fn report_invalid(verdict: &netcolor::validator::Verdict, mode: Mode) {
    let members: Vec<String> = verdict.members.iter().map(|id| id.0.to_string()).collect();
    match &verdict.witness {
        Some(w) => println!("invalid {mode} coloring: {w} is covered by objects [{}]", members.join(", ")),
        None => println!("invalid {mode} coloring"),
    }
}

impl From<SpaceArg> for SpaceKind {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::Tree => SpaceKind::Tree,
            SpaceArg::Planar => SpaceKind::Planar,
        }
    }
}

impl From<ObjectArg> for ObjectKind {
    fn from(o: ObjectArg) -> Self {
        match o {
            ObjectArg::Balls => ObjectKind::Balls,
            ObjectArg::Subtrees => ObjectKind::Subtrees,
        }
    }
}

#[derive(Serialize)]
struct BenchRow {
    algorithm: String,
    size: usize,
    instances: usize,
    k_max: usize,
    l_max: usize,
    t_max: usize,
    n_max: usize,
    palette_max: usize,
    palette_mean: f64,
    bound_max: usize,
    bound_respected: usize,
    valid: usize,
}

/// Rows go to stdout and are reproducible; wall times go to stderr.
fn bench(alg: Algorithm, sizes: &[usize], count: usize, seed: u64, limits: Limits) -> Result<()> {
    for &size in sizes {
        let mut row = BenchRow {
            algorithm: alg.name().into(),
            size,
            instances: count,
            k_max: 0,
            l_max: 0,
            t_max: 0,
            n_max: 0,
            palette_max: 0,
            palette_mean: 0.0,
            bound_max: 0,
            bound_respected: 0,
            valid: 0,
        };
        let mut elapsed = 0.0;
        for i in 0..count {
            let inst = bench_instance(alg, size, seed.wrapping_add((size * 100_003 + i) as u64))?;
            let p = run::params(&inst);
            let start = Instant::now();
            let doc = run::color(&inst, alg, limits)?;
            elapsed += start.elapsed().as_secs_f64();
            let bound = doc.bound.as_ref().expect("colorers report a bound");
            row.k_max = row.k_max.max(p.k);
            row.l_max = row.l_max.max(p.l);
            row.t_max = row.t_max.max(p.t);
            row.n_max = row.n_max.max(p.n);
            row.palette_max = row.palette_max.max(doc.palette_size);
            row.palette_mean += doc.palette_size as f64 / count.max(1) as f64;
            row.bound_max = row.bound_max.max(bound.value);
            row.bound_respected += usize::from(bound.respected);
            row.valid += usize::from(run::validate(&inst, &doc.coloring(), alg.mode())?.valid);
        }
        println!("{}", serde_json::to_string(&row)?);
        eprintln!("size {size}: {:.3} ms per instance", 1000.0 * elapsed / count.max(1) as f64);
    }
    Ok(())
}

fn bench_instance(alg: Algorithm, size: usize, seed: u64) -> Result<Instance> {
    let params = RandomParams { internal: size, extra_leaves: size / 2, objects: 2 * size, ..RandomParams::default() };
    let (kind, objects) = match alg {
        Algorithm::NmTrees | Algorithm::CfTrees => (SpaceKind::Tree, ObjectKind::Subtrees),
        Algorithm::NmBallsTree | Algorithm::CfBallsTree => (SpaceKind::Tree, ObjectKind::Balls),
        Algorithm::NmBallsPlanar | Algorithm::CfBallsPlanar => (SpaceKind::Planar, ObjectKind::Balls),
        Algorithm::NmChain | Algorithm::CfChain => {
            return Ok(Instance::Intervals(generators::gen_random_intervals(4 * size, seed)))
        }
    };
    let (space, objs) = generators::gen_random(kind, objects, &params, seed)?;
    Ok(network(objs, space))
}
