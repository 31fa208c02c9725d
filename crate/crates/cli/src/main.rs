//! `boxkit`: build, check, search and draw box partitions of `[n]^d`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 search budget exhausted.

use std::fs;
use std::io::{self, Read as _, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use boxkit::bounds::{self, BoundValue, ParityMode, PiercingKind};
use boxkit::constructions::{
    grid_partition_in, intermediate_library, lift, partition_25, piercing_construction, predicted_size, product,
    quadrant_construction, realize, stack_lemma, trivial_odd_partition, CornerSpec, Figure,
};
use boxkit::format::{parse_partition_any, write_partition_structured, write_partition_text, PartitionDocument};
use boxkit::geometry::{verify_cover, Ambient, BoxFamily, CoverMode};
use boxkit::graphq::{
    clique_property_check_budgeted, fig9_graph, partition_to_graph, clique_bound_closed_form, prop43_lower,
    DEFAULT_CLIQUE_BUDGET,
};
use boxkit::render::{render, RenderFormat};
use boxkit::search::{anneal_cover, export_model, solve_cover, CandidateKind, CoverInstance, ModelFormat, SearchBudget};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self { code: EXIT_USAGE, message: message.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

trait OrUsage<T> {
    fn or_usage(self) -> Result<T, Failure>;
}

impl<T, E: std::fmt::Display> OrUsage<T> for Result<T, E> {
    fn or_usage(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::usage(e))
    }
}

#[derive(Parser)]
#[command(name = "boxkit", version, about = "Partitions and covers of discrete cubes by sub-boxes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a partition file: cover multiplicity, box types, piercing.
    Verify(VerifyArgs),
    /// Build a known partition and write it out.
    Construct(ConstructArgs),
    /// Search for a minimum cover by candidate boxes.
    Search(SearchArgs),
    /// Evaluate closed-form bounds.
    Bounds(BoundsArgs),
    /// Build the red/blue line graph and check the clique property.
    Graph(GraphArgs),
    /// Write a cover instance as an LP or CNF model.
    Export(ExportArgs),
    /// Draw a partition as ASCII layers or SVG.
    Render(RenderArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    AtLeast,
}

impl From<ModeArg> for CoverMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => CoverMode::Exact,
            ModeArg::AtLeast => CoverMode::AtLeast,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DocFormat {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Partition file format.
    #[arg(long = "as", value_enum, default_value = "text", global = true)]
    as_format: DocFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Partition file (listing or JSON); `-` reads stdin.
    file: PathBuf,
    /// Required multiplicity at every point.
    #[arg(long, default_value_t = 1)]
    t: usize,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    /// Also require every axis-parallel line to meet at least this many boxes.
    #[arg(long)]
    k: Option<usize>,
    /// Require every box to be proper.
    #[arg(long)]
    proper: bool,
    /// Require every box to be odd.
    #[arg(long)]
    odd: bool,
    /// Require every box to be a brick.
    #[arg(long)]
    brick: bool,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    what: Construction,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand)]
enum Construction {
    /// Odd proper partition of [n]^d into 3^d boxes.
    Trivial {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// k^d grid partition of [n]^d (n defaults to k).
    Grid {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: Option<usize>,
    },
    /// The 25 odd proper boxes partitioning [5]^3, or its product powers.
    P25 {
        /// Number of factors in the product (1 gives [5]^3, 2 gives [5]^6).
        #[arg(long, default_value_t = 1)]
        power: usize,
        /// Lift to [m]^d for odd m >= 5.
        #[arg(long)]
        lift: Option<usize>,
    },
    /// k-piercing brick partition with 4(k-1) bricks per extra dimension.
    Quadrant {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
    /// Brick partition with per-axis piercing targets, e.g. 3,4.
    Piercing {
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<usize>,
    },
    /// A labelled intermediate partition from the figure library.
    Intermediate {
        #[arg(long)]
        figure: Figure,
        #[arg(long)]
        k: usize,
        /// Stack into one more dimension (figures with known corners only).
        #[arg(long)]
        stack: bool,
    },
    /// Realize an intermediate partition as a k-piercing partition of a cube.
    Realize {
        /// A library figure.
        #[arg(long, conflicts_with = "from")]
        figure: Option<Figure>,
        /// A labelled partition file.
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        /// Extra dimensions filled with target k.
        #[arg(long, default_value_t = 0)]
        tail: usize,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// Ambient sides, e.g. 5,5,5.
    #[arg(long, value_delimiter = ',', required = true)]
    ambient: Vec<usize>,
    #[arg(long, default_value = "odd-proper-box")]
    candidates: CandidateKind,
    /// Required multiplicity.
    #[arg(long, default_value_t = 1)]
    t: usize,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
}

impl InstanceArgs {
    fn build(&self) -> Result<CoverInstance, Failure> {
        let ambient = Ambient::new(self.ambient.clone()).or_usage()?;
        CoverInstance::from_kind(ambient, self.candidates, self.t, self.mode.into()).or_usage()
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Exact branch and bound.
    Bnb,
    /// Simulated annealing.
    Anneal,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "bnb")]
    method: Method,
    #[arg(long, default_value_t = 600)]
    budget_seconds: u64,
    /// Node (or move) limit.
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Stop once a cover of at most this size is found.
    #[arg(long)]
    stop_at: Option<usize>,
    /// A proven lower bound; reaching it ends the search as optimal.
    #[arg(long)]
    lower_bound: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(subcommand)]
    what: BoundsCommand,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    AllOdd,
    ProperOdd,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Box,
    Brick,
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Every closed-form bound over ranges of d, k and n (e.g. 1..4 or 2,3).
    Table {
        #[arg(long, default_value = "1..4")]
        d: String,
        #[arg(long, default_value = "2..4")]
        k: String,
        #[arg(long, default_value = "3,5")]
        n: String,
        /// Comma-separated output.
        #[arg(long)]
        csv: bool,
    },
    /// Lower bound for odd proper partitions of [n]^d.
    OddProper {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Trivial bounds for k-piercing partitions.
    Piercing {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "brick")]
        kind: KindArg,
    },
    /// Largest root of x^m = c_1 x^(m-1) + ... + c_m.
    Root {
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        coeffs: Vec<f64>,
    },
    /// Odd selectors of [n] meeting a set in an odd number of elements.
    Parity {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        #[arg(long, value_enum, default_value = "all-odd")]
        mode: ParityArg,
    },
    /// Vertex lower bound for graphs with monochromatic K_k in both colours.
    Clique {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Build the graph of a 2D partition file.
    #[arg(long, conflicts_with = "fig9", required_unless_present = "fig9")]
    from_partition: Option<PathBuf>,
    /// Build the extremal graph for this k.
    #[arg(long)]
    fig9: Option<usize>,
    #[arg(long, default_value_t = 2)]
    colors: usize,
    /// Clique size to check; defaults to the fig9 value or the file's k.
    #[arg(long)]
    k: Option<usize>,
    /// Run the clique check (always on with --from-partition).
    #[arg(long)]
    check: bool,
    #[arg(long, default_value_t = DEFAULT_CLIQUE_BUDGET)]
    node_budget: u64,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long)]
    format: ModelFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    file: PathBuf,
    #[arg(long, default_value = "ascii")]
    format: RenderFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).or_usage()?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }
}

fn read_document(path: &Path) -> Result<PartitionDocument, Failure> {
    parse_partition_any(&read_input(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).or_usage(),
    }
}

fn emit_document(output: &OutputArgs, doc: &PartitionDocument) -> Result<(), Failure> {
    let text = match output.as_format {
        DocFormat::Text => write_partition_text(doc),
        DocFormat::Json => write_partition_structured(doc) + "\n",
    };
    emit(output.out.as_deref(), &text)
}

/// `1..4` (inclusive), `1-4`, or a comma list.
fn parse_range(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::usage(format!("bad range '{s}'"));
    if let Some((a, b)) = s.split_once("..").or_else(|| s.split_once('-')) {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        return if a <= b { Ok((a..=b).collect()) } else { Err(bad()) };
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verify(args: VerifyArgs) -> Outcome {
    let doc = read_document(&args.file)?;
    let f = &doc.family;
    let r = verify_cover(f, args.t, args.mode.into());
    println!("ambient {}  boxes {}", f.ambient(), f.len());
    println!(
        "multiplicity min {} max {}  partition {}",
        r.cover_multiplicity_min,
        r.cover_multiplicity_max,
        flag(r.is_partition)
    );
    println!("proper {}  odd {}  brick {}", flag(r.all_proper), flag(r.all_odd), flag(r.all_brick));
    let axes: Vec<String> = r.per_axis_piercing.iter().map(|p| p.to_string()).collect();
    println!("piercing {} (per axis {})", r.piercing_number, axes.join(","));
    let mut failed = false;
    if let Some((point, count)) = &r.first_violation {
        let coords: Vec<String> = point.iter().map(|x| x.to_string()).collect();
        let rel = match args.mode {
            ModeArg::Exact => "exactly",
            ModeArg::AtLeast => "at least",
        };
        eprintln!("FAIL: point ({}) is covered {count} times, need {rel} {}", coords.join(","), args.t);
        failed = true;
    }
    let kinds = [(args.proper, r.all_proper, "proper"), (args.odd, r.all_odd, "odd"), (args.brick, r.all_brick, "a brick")];
    for (wanted, holds, what) in kinds {
        if wanted && !holds {
            let bad = f.boxes().iter().position(|b| match what {
                "proper" => (0..b.dim()).any(|a| b.factor_len(a) == f.ambient().side(a)),
                "odd" => (0..b.dim()).any(|a| b.factor_len(a) % 2 == 0),
                _ => !b.is_brick(),
            });
            if let Some(i) = bad {
                eprintln!("FAIL: Box({}) = {} is not {what}", i + 1, f.boxes()[i]);
            }
            failed = true;
        }
    }
    if let Some(k) = args.k.or(doc.meta.k) {
        if r.piercing_number < k {
            let line = r.weakest_line.as_ref().map(|l| l.to_string()).unwrap_or_default();
            eprintln!("FAIL: line {line} meets {} boxes, need {k}", r.piercing_number);
            failed = true;
        }
    }
    Ok(if failed { EXIT_FAILED } else { 0 })
}

fn construct(args: ConstructArgs) -> Outcome {
    let doc = match args.what {
        Construction::Trivial { n, d } => {
            PartitionDocument::new(trivial_odd_partition(n, d).or_usage()?).with_name(format!("trivial n={n} d={d}"))
        }
        Construction::Grid { d, k, n } => {
            PartitionDocument::new(grid_partition_in(d, k, n.unwrap_or(k)).or_usage()?).with_name("grid").with_k(k)
        }
        Construction::P25 { power, lift: to } => {
            if power == 0 {
                return Err(Failure::usage("--power must be at least 1"));
            }
            let base = partition_25();
            let mut f: BoxFamily = base.clone();
            for _ in 1..power {
                f = product(&f, &base).or_usage()?;
            }
            if let Some(m) = to {
                f = lift(&f, m).or_usage()?;
            }
            PartitionDocument::new(f)
        }
        Construction::Quadrant { d, k } => {
            PartitionDocument::new(quadrant_construction(d, k).or_usage()?).with_name("quadrant").with_k(k)
        }
        Construction::Piercing { targets } => {
            let k = targets.iter().copied().min().unwrap_or(1);
            PartitionDocument::new(piercing_construction(&targets).or_usage()?).with_name("piercing").with_k(k)
        }
        Construction::Intermediate { figure, k, stack } => {
            let mut ip = intermediate_library(figure, k).or_usage()?;
            if stack {
                let (x, y): (CornerSpec, CornerSpec) = figure
                    .stack_corners()
                    .ok_or_else(|| Failure::usage(format!("{figure} has no stacking corners")))?;
                ip = stack_lemma(&ip, &x, &y, k).or_usage()?;
            }
            PartitionDocument::from_intermediate(&ip).with_name(figure.name()).with_k(k)
        }
        Construction::Realize { figure, from, k, tail } => {
            let ip = match (figure, from) {
                (Some(fig), _) => intermediate_library(fig, k).or_usage()?,
                (None, Some(path)) => read_document(&path)?
                    .to_intermediate()
                    .ok_or_else(|| Failure::usage("the file has no labels"))?
                    .or_usage()?,
                (None, None) => return Err(Failure::usage("give --figure or --from")),
            };
            let predicted = predicted_size(&ip, k, tail).or_usage()?;
            let f = realize(&ip, k, tail).or_usage()?;
            eprintln!("predicted {predicted}, built {}", f.len());
            PartitionDocument::new(f).with_k(k)
        }
    };
    emit_document(&args.output, &doc)?;
    Ok(0)
}

fn search(args: SearchArgs) -> Outcome {
    let mut inst = args.instance.build()?;
    if let Some(lb) = args.lower_bound {
        inst = inst.with_lower_bound(lb);
    }
    let budget = SearchBudget {
        max_nodes: args.max_nodes.unwrap_or(u64::MAX),
        wall_seconds: args.budget_seconds,
        seed: args.seed,
        threads: args.threads,
        stop_at: args.stop_at,
    };
    let r = match args.method {
        Method::Bnb => solve_cover(&inst, &budget),
        Method::Anneal => anneal_cover(&inst, &budget),
    };
    eprintln!(
        "{} candidates, {} nodes, {:.3}s",
        inst.candidates.len(),
        r.nodes,
        r.elapsed.as_secs_f64()
    );
    match (&r.best, r.proven_optimal) {
        (Some(fam), proven) => {
            eprintln!("best size {}{}", fam.len(), if proven { " (optimal)" } else { "" });
            let doc = PartitionDocument::new(fam.clone())
                .with_provenance(format!("search {} t={} seed={}", args.instance.candidates, inst.multiplicity, args.seed));
            emit_document(&args.output, &doc)?;
        }
        (None, true) => {
            eprintln!("FAIL: no cover exists with these candidates");
            return Ok(EXIT_FAILED);
        }
        (None, false) => eprintln!("no cover found"),
    }
    let target_met = r.best_size.is_some_and(|s| args.stop_at.is_some_and(|t| s <= t));
    Ok(if r.budget_exhausted && !r.proven_optimal && !target_met { EXIT_BUDGET } else { 0 })
}

fn print_bounds(rows: &[BoundValue], csv: bool) {
    if csv {
        println!("name,d,k,n,value");
        for b in rows {
            let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
            println!("{},{},{},{},{}", b.name, opt(b.valid_for.d), opt(b.valid_for.k), opt(b.valid_for.n), b.value);
        }
    } else {
        for b in rows {
            println!("{b}");
        }
    }
}

fn bounds_cmd(args: BoundsArgs) -> Outcome {
    match args.what {
        BoundsCommand::Table { d, k, n, csv } => {
            print_bounds(&bounds::bounds_table(&parse_range(&d)?, &parse_range(&k)?, &parse_range(&n)?), csv);
        }
        BoundsCommand::OddProper { n, d } => {
            let b = bounds::lower_odd_proper(n, d).or_usage()?;
            println!("{b}");
            println!("at least {} boxes", b.value.ceil());
        }
        BoundsCommand::Piercing { d, k, kind } => {
            let kind = match kind {
                KindArg::Box => PiercingKind::Box,
                KindArg::Brick => PiercingKind::Brick,
            };
            let (lo, hi) = bounds::kp_trivial_bounds(d, k, kind).or_usage()?;
            print_bounds(&[lo, hi], false);
            if kind == PiercingKind::Box && d >= 2 {
                let (a, b) = bounds::kp_box_exponential_lower(d, k).or_usage()?;
                print_bounds(&[a, b], false);
            }
        }
        BoundsCommand::Root { coeffs } => {
            let c = bounds::growth_root(&coeffs).or_usage()?;
            println!("root {:.12} in [{:.12}, {:.12}]", c.root, c.lo, c.hi);
        }
        BoundsCommand::Parity { n, set, mode } => {
            let mode = match mode {
                ParityArg::AllOdd => ParityMode::AllOdd,
                ParityArg::ProperOdd => ParityMode::ProperOdd,
            };
            let t = bounds::parity_count(n, &set, mode).or_usage()?;
            println!("selectors {}  odd hits {}", t.total_selectors, t.odd_hits);
        }
        BoundsCommand::Clique { k } => {
            print_bounds(&[prop43_lower(k).or_usage()?, clique_bound_closed_form(k).or_usage()?], false);
        }
    }
    Ok(0)
}

fn graph(args: GraphArgs) -> Outcome {
    let (g, k, check) = if let Some(k) = args.fig9 {
        (fig9_graph(k, args.colors).or_usage()?, args.k.unwrap_or(k), args.check)
    } else {
        let path = args.from_partition.expect("clap requires one source");
        let doc = read_document(&path)?;
        let k = args
            .k
            .or(doc.meta.k)
            .ok_or_else(|| Failure::usage("give --k (the file records no k)"))?;
        (partition_to_graph(&doc.family).or_usage()?, k, true)
    };
    let edges: Vec<String> = (0..g.colors()).map(|c| g.edge_count(c).to_string()).collect();
    println!("vertices {}  edges per colour {}", g.vertex_count(), edges.join(","));
    if !g.conflicts.is_empty() {
        println!("pairs meeting both a vertical and a horizontal line: {}", g.conflicts.len());
    }
    if !check {
        return Ok(0);
    }
    let r = clique_property_check_budgeted(&g, k, args.node_budget).map_err(|e| Failure { code: EXIT_BUDGET, message: e.to_string() })?;
    match r.failure {
        None => {
            println!("every vertex lies in a K_{k} of every colour ({} nodes)", r.nodes);
            Ok(0)
        }
        Some((v, c)) => {
            eprintln!("FAIL: vertex {} has no K_{k} in colour {c}", v + 1);
            Ok(EXIT_FAILED)
        }
    }
}

fn export(args: ExportArgs) -> Outcome {
    let inst = args.instance.build()?;
    emit(args.out.as_deref(), &export_model(&inst, args.format).or_usage()?)?;
    Ok(0)
}

fn render_cmd(args: RenderArgs) -> Outcome {
    let doc = read_document(&args.file)?;
    emit(args.out.as_deref(), &render(&doc, args.format).or_usage()?)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Construct(a) => construct(a),
        Command::Search(a) => search(a),
        Command::Bounds(a) => bounds_cmd(a),
        Command::Graph(a) => graph(a),
        Command::Export(a) => export(a),
        Command::Render(a) => render_cmd(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
