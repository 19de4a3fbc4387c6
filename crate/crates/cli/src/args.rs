use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

const EXIT_CODES: &str = "\
Exit codes:
  0   success
  1   numerical failure (ill-conditioned system, failed check, oracle disagreement)
  2   certify only: the rule has N >= N* nodes, no lower bound applies
  3   invalid input (malformed JSON, bad pattern or weights, dimension mismatch)
  4   size cap exceeded (raise with --cap)
  64  usage error";

const TOP_HELP: &str = "\
Coordinates are 1-based: --invariant takes one group (\"1-3,5\"), --groups several (\"1-3;4,7\").
SYMQUAD_THREADS limits the worker threads used to apply large rules.

Exit codes:
  0   success
  1   numerical failure (ill-conditioned system, failed check, oracle disagreement)
  2   certify only: the rule has N >= N* nodes, no lower bound applies
  3   invalid input (malformed JSON, bad pattern or weights, dimension mismatch)
  4   size cap exceeded (raise with --cap)
  64  usage error";

#[derive(Parser, Debug)]
#[command(
    name = "symquad",
    version,
    about = "Cubature and lower-bound certificates for permutation-invariant Korobov spaces",
    after_help = TOP_HELP
)]
pub struct Cli {
    /// Output format: aligned text or JSON with a "schema_version" field
    #[arg(long, value_enum, default_value_t = Format::Table, global = true, help_heading = "Global options")]
    pub format: Format,

    /// Upper bound on generated nodes or enumerated indices
    #[arg(long, default_value_t = 1 << 26, global = true, help_heading = "Global options")]
    pub cap: u64,

    /// Seed for randomly generated rules and integrands
    #[arg(long, default_value_t = 0, global = true, help_heading = "Global options")]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the canonical binary indices with orbit sizes and stabilizers
    #[command(after_help = EXIT_CODES)]
    Nabla(NablaArgs),
    /// Emit the rectangle rule, its folded form, or a random rule as JSON
    #[command(after_help = EXIT_CODES)]
    Rule(RuleArgs),
    /// Apply a rule to a trigonometric polynomial
    #[command(after_help = EXIT_CODES)]
    Integrate(IntegrateArgs),
    /// Worst-case error of the rectangle rule, closed form and lattice oracle
    #[command(after_help = EXIT_CODES)]
    Wce(WceArgs),
    /// Build a fooling function proving a rule with N < N* nodes has error >= 1
    #[command(after_help = EXIT_CODES)]
    Certify(CertifyArgs),
    /// Ordered weights nu_n for a product-weight schedule
    #[command(after_help = EXIT_CODES)]
    Weights(WeightsArgs),
    /// Check tractability necessary conditions on an invariance profile
    #[command(after_help = EXIT_CODES)]
    Tract(TractArgs),
    /// Time the rectangle rule against the folded rule (CSV unless --format json)
    #[command(after_help = EXIT_CODES)]
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
#[group(multiple = false)]
pub struct PatternArgs {
    /// One invariance group, e.g. "1-3,5"
    #[arg(long, value_name = "COORDS")]
    pub invariant: Option<String>,

    /// Several disjoint groups separated by ';', e.g. "1-3;4,7"
    #[arg(long, value_name = "GROUPS")]
    pub groups: Option<String>,
}

#[derive(Args, Debug)]
pub struct NablaArgs {
    /// Dimension
    #[arg(short, value_name = "D")]
    pub d: usize,

    #[command(flatten)]
    pub pattern: PatternArgs,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("kind").required(true).args(["rectangle", "folded", "random"])))]
pub struct RuleArgs {
    /// The 2^d-point rule on {0, 1/2}^d
    #[arg(long)]
    pub rectangle: bool,

    /// The N*-point folded rule for --invariant/--groups
    #[arg(long)]
    pub folded: bool,

    /// N random nodes with random complex weights (uses --seed)
    #[arg(long, value_name = "N")]
    pub random: Option<usize>,

    /// Dimension
    #[arg(short, value_name = "D")]
    pub d: usize,

    #[command(flatten)]
    pub pattern: PatternArgs,

    /// Write the rule here instead of standard output
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct IntegrateArgs {
    /// Rule JSON: {"dim", "nodes", "weights": [{"re", "im"}]}
    #[arg(long, value_name = "FILE")]
    pub rule: PathBuf,

    /// Polynomial JSON: {"dim", "terms": [{"k", "re", "im"}]}
    #[arg(long, value_name = "FILE")]
    pub poly: PathBuf,
}

#[derive(Args, Debug)]
pub struct WceArgs {
    /// Dimension
    #[arg(short, value_name = "D")]
    pub d: usize,

    /// Smoothness, > 1
    #[arg(long)]
    pub alpha: f64,

    /// Absolute tolerance for the zeta evaluation and the oracle
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    /// Rule JSON to defeat
    #[arg(long, value_name = "FILE")]
    pub rule: PathBuf,

    #[command(flatten)]
    pub pattern: PatternArgs,

    /// Dimension; must match the rule if given
    #[arg(short, value_name = "D")]
    pub d: Option<usize>,

    /// Smoothness, > 1
    #[arg(long)]
    pub alpha: f64,

    /// Use the weighted construction; needs --gammas
    #[arg(long, requires = "gammas")]
    pub weighted: bool,

    /// Weight schedule JSON: {"dim", "gammas"}
    #[arg(long, value_name = "FILE", requires = "weighted")]
    pub gammas: Option<PathBuf>,

    /// Write the full certificate here
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WeightsArgs {
    /// Dimension; must match the schedule
    #[arg(short, value_name = "D")]
    pub d: usize,

    #[command(flatten)]
    pub pattern: PatternArgs,

    /// Weight schedule JSON: {"dim", "gammas"}
    #[arg(long, value_name = "FILE")]
    pub gammas: PathBuf,

    /// Also report sum over nabla of mu^kappa against its product form
    #[arg(long)]
    pub kappa: Option<f64>,
}

#[derive(Args, Debug)]
pub struct TractArgs {
    /// Profile JSON: {"samples": [[d, #I], ...]}
    #[arg(long, value_name = "FILE")]
    pub profile: PathBuf,

    /// (s,t) pairs for weak tractability, e.g. "1,1;0.5,0.5"
    #[arg(long, default_value = "1,1")]
    pub st: String,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Dimensions, comma separated
    #[arg(long, value_delimiter = ',', default_value = "8,12,16")]
    pub dims: Vec<usize>,

    /// Fractions of coordinates in the group, comma separated
    #[arg(long, value_delimiter = ',', default_value = "0.5,1")]
    pub fractions: Vec<f64>,

    /// Integrands per configuration
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
}
