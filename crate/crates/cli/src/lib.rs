//! Command-line front end: repair a network file, benchmark the strategies,
//! draw determinantal samples and inspect a network's homology.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use coverage_repair::baseline::{greedy_cover, GreedyConfig};
use coverage_repair::complex::{BettiPair, ComplexKind, SimplicialComplex2};
use coverage_repair::dpp::sample_conditioned;
use coverage_repair::geometry::{coverage_fraction, Domain, Point2, TaggedPoint, DEFAULT_COVERAGE_RESOLUTION};
use coverage_repair::harness::{run_benchmark, BenchOptions, BenchStrategy, Scenario, DEFAULT_BAND};
use coverage_repair::placement::{AdditionKind, AdditionStrategy};
use coverage_repair::recovery::{self, AdditionRounds, BoundarySpec, RecoveryConfig, ReductionStep};
use serde::Serialize;

pub mod network;

pub use network::NetworkFile;

pub const DEFAULT_SEED: u64 = 7;

/// Exit status for malformed input or flags.
pub const EXIT_INPUT: i32 = 2;
/// Exit status when the algorithm itself gives up.
pub const EXIT_ALGORITHM: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    Input(String),
    Algorithm(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Algorithm(_) => EXIT_ALGORITHM,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Algorithm(m) => write!(f, "algorithm failure: {m}"),
        }
    }
}

impl std::error::Error for Failure {}

impl From<coverage_repair::Error> for Failure {
    fn from(e: coverage_repair::Error) -> Self {
        match e {
            coverage_repair::Error::InvalidParameter { .. } => Failure::Input(e.to_string()),
            other => Failure::Algorithm(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "covrepair", version, about = "Repair coverage holes in a wireless network")]
pub struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Add vertices until the network is connected and hole-free, then drop the superfluous ones.
    Recover(RecoverArgs),
    /// Monte Carlo comparison of the strategies over damaged-network scenarios.
    Bench(BenchArgs),
    /// Draw points from the determinantal sampler.
    Sample(SampleArgs),
    /// Report the Betti numbers and coverage of a network file.
    Inspect(InspectArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Grid,
    Uniform,
    Dpp,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComplexArg {
    Rips,
    Cech,
}

impl From<ComplexArg> for ComplexKind {
    fn from(c: ComplexArg) -> Self {
        match c {
            ComplexArg::Rips => ComplexKind::Rips,
            ComplexArg::Cech => ComplexKind::Cech,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RoundsArg {
    Redraw,
    Accumulate,
}

impl From<RoundsArg> for AdditionRounds {
    fn from(r: RoundsArg) -> Self {
        match r {
            RoundsArg::Redraw => AdditionRounds::Redraw,
            RoundsArg::Accumulate => AdditionRounds::Accumulate,
        }
    }
}

/// Overrides for the values stored in a network file.
#[derive(Debug, Clone, Args)]
pub struct NetworkOverrides {
    /// Coverage radius r.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Side a of the square domain.
    #[arg(long)]
    pub side: Option<f64>,
    #[arg(long, value_enum)]
    pub complex: Option<ComplexArg>,
    /// Ignore perimeter vertices entirely.
    #[arg(long)]
    pub no_boundary: bool,
}

impl NetworkOverrides {
    fn apply(&self, mut file: NetworkFile) -> Result<NetworkFile, Failure> {
        if let Some(r) = self.radius {
            file.r = r;
        }
        if let Some(a) = self.side {
            file.a = a;
        }
        if let Some(c) = self.complex {
            file.kind = c.into();
        }
        file.validate()?;
        Ok(file)
    }

    fn boundary(&self, file: &NetworkFile) -> BoundarySpec {
        if self.no_boundary {
            BoundarySpec::Disabled
        } else if let Some(b) = file.boundary_points() {
            BoundarySpec::Custom(b)
        } else {
            BoundarySpec::Auto
        }
    }
}

#[derive(Debug, Args)]
pub struct RecoverArgs {
    /// Network file (JSON with fields a, r, kind, existing, boundary).
    pub input: PathBuf,
    #[command(flatten)]
    pub network: NetworkOverrides,
    #[arg(long, value_enum, default_value = "dpp")]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include the addition budgets and reduction steps in the output.
    #[arg(long)]
    pub trace: bool,
    /// Greedy only: stop once every candidate is this close to a vertex (default r).
    #[arg(long)]
    pub stop_radius: Option<f64>,
    #[arg(long, value_enum, default_value = "redraw")]
    pub rounds: RoundsArg,
    /// Cap on addition rounds.
    #[arg(long, default_value_t = recovery::DEFAULT_MAX_ITERATIONS)]
    pub max_iterations: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Replications per scenario.
    #[arg(long, default_value_t = coverage_repair::harness::DEFAULT_REPLICATIONS)]
    pub reps: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Target initial coverages, as fractions or percentages.
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.4,0.6,0.8")]
    pub scenarios: Vec<String>,
    #[arg(long, value_delimiter = ',', value_enum, default_value = "grid,uniform,dpp,greedy")]
    pub strategies: Vec<StrategyArg>,
    /// Alias for a single-entry --strategies.
    #[arg(long, value_enum, conflicts_with = "strategies")]
    pub strategy: Option<StrategyArg>,
    #[arg(long, default_value_t = network::DEFAULT_RADIUS)]
    pub radius: f64,
    #[arg(long, default_value_t = network::DEFAULT_SIDE)]
    pub side: f64,
    #[arg(long, value_enum, default_value = "rips")]
    pub complex: ComplexArg,
    /// Accepted deviation of a scenario's coverage from its target.
    #[arg(long, default_value_t = DEFAULT_BAND)]
    pub band: f64,
    /// Greedy stop radius in units of r.
    #[arg(long, default_value_t = 2.0)]
    pub stop_factor: f64,
    #[arg(long, value_enum, default_value = "redraw")]
    pub rounds: RoundsArg,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// CSV output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write every individual run as JSON.
    #[arg(long)]
    pub runs: Option<PathBuf>,
    /// Also write `<strategy>.dat` plot data files into this directory.
    #[arg(long)]
    pub plot_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Number of points to draw.
    #[arg(short, long)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub side: Option<f64>,
    /// Network file whose existing vertices condition the sample.
    #[arg(long)]
    pub condition: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub network: NetworkOverrides,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Rounds to 12 significant digits; the JSON writer then prints the
/// shortest decimal, which has at most that many.
pub fn round_coordinate(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().expect("formatted float parses")
}

fn coords(points: &[Point2]) -> Vec<[f64; 2]> {
    points
        .iter()
        .map(|p| [round_coordinate(p.x), round_coordinate(p.y)])
        .collect()
}

#[derive(Debug, Serialize)]
pub struct RecoverOutput {
    pub kept: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub removed: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Trace>,
}

#[derive(Debug, Serialize)]
pub struct Trace {
    pub seed: u64,
    pub budgets: Vec<usize>,
    pub added: usize,
    pub reduction: Vec<ReductionStep>,
}

#[derive(Debug, Serialize)]
pub struct InspectReport {
    pub beta0: usize,
    pub beta1: usize,
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub boundary_vertices: usize,
    /// Fraction of the square within r of an existing vertex.
    pub coverage: f64,
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Input(format!("cannot write to standard output: {e}")))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("outputs always serialize");
    s.push('\n');
    s
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Recover(args) => cmd_recover(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::Sample(args) => cmd_sample(&args),
        Command::Inspect(args) => cmd_inspect(&args),
    }
}

/// Parses a full argument list (program name first) and runs it.
pub fn run_args<I, T>(args: I) -> Result<(), Failure>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = <Cli as Parser>::try_parse_from(args).map_err(|e| Failure::Input(e.to_string()))?;
    run(cli)
}

pub fn cmd_recover(args: &RecoverArgs) -> Result<(), Failure> {
    let file = args.network.apply(NetworkFile::read(&args.input)?)?;
    let domain = file.domain();
    let output = match args.strategy {
        StrategyArg::Greedy => {
            let stop = args.stop_radius.unwrap_or(file.r);
            let cfg = GreedyConfig::new(domain, file.r).with_stop_radius(stop);
            let added = greedy_cover(&file.existing_points(), &cfg)?;
            RecoverOutput {
                kept: coords(&added),
                removed: None,
                betti: None,
                trace: None,
            }
        }
        other => {
            let kind = match other {
                StrategyArg::Grid => AdditionKind::Grid,
                StrategyArg::Uniform => AdditionKind::Uniform,
                _ => AdditionKind::Determinantal,
            };
            let mut cfg = RecoveryConfig::new(file.r, domain, AdditionStrategy::new(kind, file.kind), args.seed);
            cfg.boundary = args.network.boundary(&file);
            cfg.rounds = args.rounds.into();
            cfg.max_iterations = args.max_iterations;
            let res = recovery::run_recovery(&file.existing_tagged(), &cfg)?;
            log::info!(
                "placed {} vertices over {} rounds, kept {}",
                res.added,
                res.budgets.len(),
                res.kept.len()
            );
            RecoverOutput {
                kept: coords(&res.kept),
                removed: Some(coords(&res.removed)),
                betti: Some(res.betti.into()),
                trace: args.trace.then(|| Trace {
                    seed: res.seed,
                    budgets: res.budgets.clone(),
                    added: res.added,
                    reduction: res.reduction.clone(),
                }),
            }
        }
    };
    write_output(args.out.as_deref(), &to_json(&output))
}

/// Parses `0.2`, `20` or `20%` as a coverage fraction.
pub fn parse_target(s: &str) -> Result<f64, Failure> {
    let t = s.trim();
    let (num, percent) = match t.strip_suffix('%') {
        Some(n) => (n, true),
        None => (t, false),
    };
    let v: f64 = num
        .trim()
        .parse()
        .map_err(|_| Failure::Input(format!("--scenarios: `{s}` is not a number")))?;
    let v = if percent || v >= 1.0 { v / 100.0 } else { v };
    if !(v > 0.0 && v < 1.0) {
        return Err(Failure::Input(format!("--scenarios: `{s}` is not a coverage in (0, 1)")));
    }
    Ok(v)
}

pub fn cmd_bench(args: &BenchArgs) -> Result<(), Failure> {
    if args.reps == 0 {
        return Err(Failure::Input("--reps: must be at least 1".into()));
    }
    let domain = Domain::new(args.side)?;
    let mut scenarios = Vec::new();
    for s in &args.scenarios {
        let mut sc = Scenario::new(parse_target(s)?, args.radius, args.reps, args.seed);
        sc.domain = domain;
        sc.band = args.band;
        sc.validate()?;
        scenarios.push(sc);
    }
    let picked = match args.strategy {
        Some(s) => vec![s],
        None => args.strategies.clone(),
    };
    let strategies: Vec<BenchStrategy> = picked
        .iter()
        .map(|s| match s {
            StrategyArg::Grid => BenchStrategy::Homology(AdditionKind::Grid),
            StrategyArg::Uniform => BenchStrategy::Homology(AdditionKind::Uniform),
            StrategyArg::Dpp => BenchStrategy::Homology(AdditionKind::Determinantal),
            StrategyArg::Greedy => BenchStrategy::Greedy,
        })
        .collect();
    if !(args.stop_factor.is_finite() && args.stop_factor > 0.0) {
        return Err(Failure::Input("--stop-factor: must be finite and > 0".into()));
    }
    let opts = BenchOptions {
        complex: args.complex.into(),
        greedy_stop_factor: args.stop_factor,
        rounds: args.rounds.into(),
        jobs: args.jobs,
        ..BenchOptions::default()
    };
    let report = run_benchmark(&scenarios, &strategies, &opts)?;
    if let Some(path) = &args.runs {
        write_output(Some(path), &to_json(&report.runs))?;
    }
    if let Some(dir) = &args.plot_dir {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("cannot create {}: {e}", dir.display())))?;
        for s in &strategies {
            write_output(Some(&dir.join(format!("{}.dat", s.label()))), &report.plot_data(s.label()))?;
        }
    }
    write_output(args.out.as_deref(), &report.to_csv())
}

pub fn cmd_sample(args: &SampleArgs) -> Result<(), Failure> {
    let file = match &args.condition {
        Some(path) => NetworkFile::read(path)?,
        None => NetworkFile::default(),
    };
    let domain = Domain::new(args.side.unwrap_or(file.a))?;
    let points = sample_conditioned(args.n, &file.existing_points(), domain, args.seed)?;
    let mut text = serde_json::to_string(&coords(&points)).expect("points serialize");
    text.push('\n');
    write_output(args.out.as_deref(), &text)
}

pub fn cmd_inspect(args: &InspectArgs) -> Result<(), Failure> {
    let file = args.network.apply(NetworkFile::read(&args.input)?)?;
    let report = inspect(&file, &args.network.boundary(&file))?;
    write_output(args.out.as_deref(), &to_json(&report))
}

pub fn inspect(file: &NetworkFile, boundary: &BoundarySpec) -> Result<InspectReport, Failure> {
    if file.existing.is_empty() {
        log::warn!("the network has no existing vertices");
    }
    let domain = file.domain();
    let perimeter: Vec<TaggedPoint> = match boundary {
        BoundarySpec::Auto => recovery::boundary_points(domain, file.r)?,
        BoundarySpec::Custom(b) => b.iter().copied().map(TaggedPoint::boundary).collect(),
        BoundarySpec::Disabled => Vec::new(),
    };
    let mut all = file.existing_tagged();
    all.extend(perimeter.iter().copied());
    let x = SimplicialComplex2::build(&all, file.r, file.kind)?;
    let BettiPair { beta0, beta1 } = x.betti();
    let coverage = coverage_fraction(&file.existing_points(), file.r, domain, DEFAULT_COVERAGE_RESOLUTION)?;
    Ok(InspectReport {
        beta0,
        beta1,
        vertices: x.num_vertices(),
        edges: x.num_edges(),
        triangles: x.num_triangles(),
        boundary_vertices: perimeter.len(),
        coverage,
    })
}
