use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod classes;
mod metric;
mod report;

use report::Failure;

#[derive(Parser)]
#[command(name = "swlab", version, about = "Stiefel-Whitney classes of triangulated manifolds and metric checks on model geometries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the all-ones dual-cell cochains with Wu-formula classes.
    Classes(ClassesArgs),
    /// Numerical probes on model geometries.
    #[command(subcommand)]
    Metric(MetricCommand),
    /// Built-in triangulations.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Args)]
pub struct ClassesArgs {
    /// Facet-list file.
    #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
    pub file: Option<PathBuf>,
    /// Built-in corpus entry instead of a file.
    #[arg(long)]
    pub corpus: Option<String>,
    /// Write a JSON report here (also on failure).
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Include stage timings in the report.
    #[arg(long)]
    pub diagnostics: bool,
}

#[derive(Args)]
pub struct ProbeArgs {
    #[arg(long)]
    pub model: String,
    #[arg(long)]
    pub eps: f64,
    /// Azimuthal direction count; 3-dimensional models use half as many polar nodes.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Warp coefficient c of warped-3.
    #[arg(long)]
    pub warp: Option<f64>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args)]
pub struct LimitArgs {
    #[arg(long)]
    pub model: String,
    /// Strictly decreasing radii, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub eps_list: Vec<f64>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub warp: Option<f64>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum MetricCommand {
    /// Interior curvature plus boundary geodesic curvature of a geodesic disk.
    GaussBonnet(ProbeArgs),
    /// Length or area of a geodesic sphere.
    SphereArea(ProbeArgs),
    /// Sphere-area ratios extrapolated to zero radius.
    W3Limit(LimitArgs),
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Names and sizes of the built-in triangulations.
    List,
    /// Print an entry in facet-list format.
    Show { name: String },
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("SWLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("SWLAB_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot configure thread pool: {e}")))
}

fn corpus_command(cmd: CorpusCommand) -> Result<(), Failure> {
    match cmd {
        CorpusCommand::List => {
            for name in swlab_core::corpus::NAMES {
                let (entry, x) = swlab_core::corpus::corpus(name).map_err(report::core_failure)?;
                println!("{:<6} dim {}  f-vector {:?}  {}", name, x.dim(), x.f_vector(), entry.description);
            }
        }
        CorpusCommand::Show { name } => {
            let (_, x) = swlab_core::corpus::corpus(&name).map_err(report::core_failure)?;
            print!("{}", swlab_core::io::serialize_complex(&x));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| match cli.command {
        Command::Classes(args) => classes::run(&args),
        Command::Metric(cmd) => metric::run(&cmd),
        Command::Corpus(cmd) => corpus_command(cmd),
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
