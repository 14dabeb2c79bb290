mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde::Serialize;

use input::UsageError;
use output::{Format, Manifest};

#[derive(Parser, Serialize)]
#[command(name = "amoduli", version, about = "Exact A-infinity, Hochschild and curve computations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the result here instead of stdout; the manifest goes to <stem>.manifest.json.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Explicit manifest path.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Serialize, Clone, Debug)]
pub struct WArgs {
    #[arg(long)]
    pub n: usize,
    /// Defaults to n minus the number of rows of W.
    #[arg(long)]
    pub g: Option<usize>,
    /// Rows of W: comma-separated rationals, rows separated by ';'.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub w: String,
}

#[derive(Args, Serialize, Clone, Debug)]
pub struct CurveArgs {
    #[arg(long)]
    pub n: usize,
    /// The subset S, e.g. "1,3".
    #[arg(long, default_value = "")]
    pub s: String,
    /// Rows of a (indexed by S, columns by the complement), e.g. "2;-1".
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub a: String,
}

#[derive(Args, Serialize, Clone, Debug)]
pub struct ChartArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub a12: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub b12: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub e12: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub pi1: String,
}

#[derive(Args, Serialize, Clone, Debug)]
pub struct HilbertArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub u: String,
    #[arg(long, allow_hyphen_values = true)]
    pub v: String,
    #[arg(long, default_value_t = 40)]
    pub nmax: usize,
}

#[derive(Subcommand, Serialize, Clone, Debug)]
#[serde(rename_all = "lowercase")]
pub enum Cmd {
    /// Build E_W and dump basis and structure constants.
    Ew(WArgs),
    /// Hochschild cohomology table for 0 <= i <= i_max, t_min <= t <= 0.
    Hh {
        #[command(flatten)]
        w: WArgs,
        #[arg(long, default_value_t = 3)]
        i_max: i32,
        #[arg(long, default_value_t = -6, allow_negative_numbers = true)]
        t_min: i32,
    },
    #[command(subcommand)]
    Ainf(AinfCmd),
    #[command(subcommand)]
    Curve(CurveCmd),
    #[command(subcommand)]
    Genus1(Genus1Cmd),
    #[command(subcommand)]
    Poly(PolyCmd),
}

#[derive(Subcommand, Serialize, Clone, Debug)]
#[serde(rename_all = "lowercase")]
pub enum AinfCmd {
    /// Gauge a structure into normal form.
    Normalize {
        #[arg(long)]
        input: PathBuf,
    },
    /// Compare two structures through their normal forms.
    Equiv {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Extend an A_N structure to A_{N+1} or report the obstruction.
    Extend {
        #[arg(long)]
        input: PathBuf,
    },
    /// Polynomial equations of the truncated moduli problem.
    Equations {
        #[command(flatten)]
        w: WArgs,
        #[arg(long, default_value_t = 5)]
        order: usize,
    },
    /// dim HH^2 in degrees 2-k plus the Grassmannian term.
    Tangent {
        #[command(flatten)]
        w: WArgs,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// A random defect-free structure (or a random gauge of the trivial one).
    Sample {
        #[command(flatten)]
        w: WArgs,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        #[arg(long)]
        trivial: bool,
    },
}

#[derive(Subcommand, Serialize, Clone, Debug)]
#[serde(rename_all = "lowercase")]
pub enum CurveCmd {
    /// Relations of the special curve algebra.
    Special(CurveArgs),
    /// Check the claimed basis through the embedding into the branches.
    Basis {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 12)]
        depth: i64,
    },
    /// Krichever window verdicts at depth D (and stability at D+2).
    Krichever {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Glue two models at finite points.
    Glue {
        /// JSON (inline or a file path) of a curve model.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// "branch:x", e.g. "1:0".
        #[arg(long, allow_hyphen_values = true)]
        q_left: String,
        #[arg(long, allow_hyphen_values = true)]
        q_right: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Component types and the point of the Grassmannian.
    Component(CurveArgs),
}

#[derive(Subcommand, Serialize, Clone, Debug)]
#[serde(rename_all = "lowercase")]
pub enum Genus1Cmd {
    /// U1 chart relations and their closure check.
    Relations(ChartArgs),
    /// Transition to the U2 chart with its certificate.
    Transition {
        #[command(flatten)]
        chart: ChartArgs,
        /// Run over Q(a, b, e, pi) instead of at the given chart.
        #[arg(long)]
        symbolic: bool,
    },
    /// dim A(u,v)_n for n = 0..nmax.
    Hilbert(HilbertArgs),
    /// Compare with the weight (2,3,4) Veronese pieces.
    Compare(HilbertArgs),
    /// Cocycle identities of the bundle patching.
    Bundle(ChartArgs),
}

#[derive(Subcommand, Serialize, Clone, Debug)]
#[serde(rename_all = "lowercase")]
pub enum PolyCmd {
    /// S-polynomial closure of a relation system (JSON).
    Closure {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 12)]
        deg_bound: i64,
    },
}

fn subcommand_name(m: &ArgMatches) -> String {
    let mut parts = Vec::new();
    let mut cur = m;
    while let Some((name, sub)) = cur.subcommand() {
        parts.push(name.to_string());
        cur = sub;
    }
    parts.join(" ")
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let start = Instant::now();
    let result = commands::run(&cli.cmd);
    let artifact = match result {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                eprintln!("{}", Cli::command().render_usage());
            }
            return ExitCode::from(2);
        }
    };
    let seed = match &cli.cmd {
        Cmd::Ainf(AinfCmd::Sample { seed, .. }) => Some(*seed),
        _ => None,
    };
    let manifest = Manifest {
        tool: "amoduli",
        version: env!("CARGO_PKG_VERSION"),
        subcommand: subcommand_name(&matches),
        parameters: serde_json::to_value(&cli.cmd).unwrap_or_default(),
        seed,
        format: cli.format,
        output: cli.out.clone(),
        verdict: artifact.verdict.map(|p| if p { "PASS" } else { "FAIL" }),
        wall_time_ms: start.elapsed().as_millis(),
    };
    if let Err(e) = output::emit(&artifact, cli.format, cli.out.as_deref(), cli.manifest.as_deref(), &manifest) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match artifact.verdict {
        Some(false) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
