use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use linembed::collapse::peel_complex;
use linembed::geometry::{build_embedding, random_configuration, EmbedOptions};
use linembed::radon_match::{balanced_split_census, count_radon_matches, sample_radon_matches, DEFAULT_BUDGET};
use linembed::sweep::{rows_to_csv, run_sweep, Grid, Measurements, SweepSpec};
use linembed::threshold::{exponent_report, janson_exponent};
use linembed::{classify, sample_complex, Alpha, Error, RationalConfiguration, SimplicialComplex};

const SWEEP_HELP: &str = "\
CSV columns, in order:
  alpha                   value of the varying coordinate
  trials                  trials at this grid point
  no_core_rate            fraction of trials whose d-face 2-core is empty
  embed_success_rate      fraction of trials with a verified embedding in R^2d
  match_rate              fraction of (trial, configuration) pairs with a Radon match
  mean_match_estimate     mean sampled estimate of the match count (0 if not sampled)
  max_component_vertices  largest vertex count of a weakly connected d-component

JSON output also carries the spec, per-point classifications and per-trial logs.";

#[derive(Parser)]
#[command(
    name = "linembed",
    version,
    about = "Random complexes, 2-core collapse, exact embeddings in R^2d and Radon matches"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Sample X(n; 1, n^-α_1, n^-α_2, ...) and print it as JSON.
    Sample {
        #[command(flatten)]
        model: Model,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Classify α as Sparse, Dense or Critical for embeddings in R^2d.
    Classify {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        alpha: Alpha,
    },
    /// Minimal overlap exponent over 4-tuples of face sizes.
    Janson {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        alpha: Alpha,
    },
    /// Peel the d-face hypergraph to its 2-core.
    Collapse {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        source: ComplexSource,
    },
    /// Build and verify an exact straight-line embedding in R^2d.
    Embed {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        source: ComplexSource,
        /// Attempts per face before giving up.
        #[arg(long, default_value_t = linembed::geometry::DEFAULT_RETRY_BUDGET)]
        retries: usize,
    },
    /// Count Radon matches of a complex against a configuration in R^2d.
    RadonCount {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        source: ComplexSource,
        #[command(flatten)]
        points: ConfigSource,
        /// Cap on exhaustively enumerated subsets.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Sample this many subsets instead of enumerating all of them.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Fraction of (m+2)-subsets with a balanced Radon partition.
    Census {
        /// Number of random points (ignored with --config).
        #[arg(long)]
        n: Option<usize>,
        /// Ambient dimension (ignored with --config).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1 << 31)]
        coord_bound: u64,
        /// Read the configuration from this JSON file.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Monte Carlo sweep of one α coordinate.
    #[command(after_help = SWEEP_HELP)]
    Sweep(SweepArgs),
}

#[derive(Args)]
struct Model {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    alpha: Alpha,
    /// Highest face dimension sampled (default: length of --alpha).
    #[arg(long)]
    dim_cap: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ComplexSource {
    /// Read the complex from this JSON file instead of sampling one.
    #[arg(long, conflicts_with_all = ["n", "alpha"])]
    complex: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    alpha: Option<Alpha>,
    /// Highest face dimension sampled (default: d + 1).
    #[arg(long)]
    dim_cap: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ConfigSource {
    /// Read the point configuration from this JSON file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed of the random configuration used without --config.
    #[arg(long, default_value_t = 1)]
    config_seed: u64,
    #[arg(long, default_value_t = 1 << 31)]
    coord_bound: u64,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    /// Template; the varying coordinate is overwritten (default: all zeros).
    #[arg(long)]
    alpha: Option<Alpha>,
    /// 1-based index of the varying coordinate.
    #[arg(long)]
    vary: usize,
    /// start:stop:steps
    #[arg(long)]
    grid: String,
    #[arg(long)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    dim_cap: Option<usize>,
    /// Comma list of core-rate, embed-rate, match-rate, component-size, or all.
    #[arg(long, default_value = "core-rate")]
    measure: String,
    /// Random configurations per trial for match-rate.
    #[arg(long, default_value_t = 1)]
    configs: usize,
    /// Sampled subsets per trial for the match-count estimate.
    #[arg(long, default_value_t = 0)]
    samples: u64,
    #[arg(long, default_value_t = 1 << 31)]
    coord_bound: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

type CliResult<T> = Result<T, CliError>;

enum CliError {
    Lib(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

fn precondition(msg: impl Into<String>) -> CliError {
    CliError::Lib(Error::Precondition(msg.into()))
}

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Lib(e) if e.is_geometric() => 3,
        CliError::Lib(Error::Postcondition(_)) | CliError::Io(_) => 1,
        CliError::Lib(_) => 2,
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output serializes")
}

impl ComplexSource {
    fn load(&self, d: usize) -> CliResult<SimplicialComplex> {
        if let Some(path) = &self.complex {
            return Ok(SimplicialComplex::from_json_str(&read_file(path)?)?);
        }
        let (Some(n), Some(alpha)) = (self.n, &self.alpha) else {
            return Err(precondition("give --complex FILE, or --n and --alpha to sample one"));
        };
        Ok(sample_complex(n, alpha, self.dim_cap.unwrap_or(d + 1), self.seed)?)
    }
}

impl ConfigSource {
    fn load(&self, n: usize, m: usize) -> CliResult<RationalConfiguration> {
        let config = match &self.config {
            Some(path) => RationalConfiguration::from_json_str(&read_file(path)?)?,
            None => random_configuration(n, m, self.coord_bound, self.config_seed)?,
        };
        Ok(config)
    }
}

fn sample_csv(x: &SimplicialComplex) -> String {
    let mut out = String::from("dim,vertices\n");
    for f in x.all_faces() {
        let vs: Vec<String> = f.vertices().iter().map(usize::to_string).collect();
        out.push_str(&format!("{},{}\n", f.dimension(), vs.join(" ")));
    }
    out
}

#[derive(Serialize)]
struct ClassifyOut {
    class: linembed::Classification,
    exponent: f64,
}

#[derive(Serialize)]
struct JansonOut {
    min_exponent: f64,
    argmin: [usize; 4],
}

fn run(command: Command) -> CliResult<String> {
    match command {
        Command::Sample { model, format } => {
            let cap = model.dim_cap.unwrap_or(model.alpha.len().max(1));
            let x = sample_complex(model.n, &model.alpha, cap, model.seed)?;
            Ok(match format {
                Format::Json => x.to_json_string(),
                Format::Csv => sample_csv(&x),
            })
        }
        Command::Classify { d, alpha } => {
            if d == 0 {
                return Err(precondition("d must be at least 1"));
            }
            let out = ClassifyOut {
                class: classify(d, &alpha),
                exponent: exponent_report(d + 1, &alpha).exponent,
            };
            Ok(json(&out))
        }
        Command::Janson { d, alpha } => {
            if d == 0 {
                return Err(precondition("d must be at least 1"));
            }
            let r = janson_exponent(d, &alpha);
            Ok(json(&JansonOut {
                min_exponent: r.min_exponent.to_f64(),
                argmin: r.argmin,
            }))
        }
        Command::Collapse { d, source } => {
            let x = source.load(d)?;
            Ok(json(&peel_complex(&x, d)))
        }
        Command::Embed { d, source, retries } => {
            if d == 0 {
                return Err(precondition("d must be at least 1"));
            }
            let x = source.load(d)?;
            let peel = peel_complex(&x, d);
            let opts = EmbedOptions {
                retry_budget: retries,
                ..EmbedOptions::default()
            };
            let config: RationalConfiguration = build_embedding(&x.pure_part(d), d, &peel, source.seed, opts)?;
            Ok(config.to_json_string())
        }
        Command::RadonCount {
            d,
            source,
            points,
            budget,
            samples,
        } => {
            let x = source.load(d)?;
            let config = points.load(x.n(), 2 * d)?;
            let report = match samples {
                Some(k) => sample_radon_matches(&x, &config, d, k, points.config_seed)?,
                None => count_radon_matches(&x, &config, d, budget)?,
            };
            Ok(json(&report))
        }
        Command::Census {
            n,
            m,
            seed,
            coord_bound,
            config,
            budget,
        } => {
            let config = match (config, n, m) {
                (Some(path), _, _) => RationalConfiguration::from_json_str(&read_file(&path)?)?,
                (None, Some(n), Some(m)) => random_configuration(n, m, coord_bound, seed)?,
                _ => return Err(precondition("give --config FILE, or --n and --m")),
            };
            Ok(json(&balanced_split_census(&config, budget)?))
        }
        Command::Sweep(args) => sweep(args),
    }
}

fn sweep(args: SweepArgs) -> CliResult<String> {
    let grid = Grid::parse(&args.grid)?;
    let alpha = match args.alpha {
        Some(a) => a,
        None => Alpha::finite(vec![0.0; args.vary.max(1)])?,
    };
    let mut spec = SweepSpec::new(args.d, args.n, alpha, args.vary, grid, args.trials, args.seed);
    spec.measurements = Measurements::parse(&args.measure)?;
    if let Some(cap) = args.dim_cap {
        spec.dim_cap = cap;
    }
    spec.configs_per_trial = args.configs;
    spec.match_samples = args.samples;
    spec.coord_bound = args.coord_bound;
    let out = run_sweep(&spec)?;
    Ok(match args.format {
        Format::Csv => rows_to_csv(&out.rows),
        Format::Json => json(&out),
    })
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .expect("global pool is built once");
    }
    let result = run(cli.command).and_then(|text| emit(cli.out.as_deref(), &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = match &e {
                CliError::Lib(e) => e.to_string(),
                CliError::Io(m) => m.clone(),
            };
            eprintln!("error: {msg}");
            ExitCode::from(exit_code(&e))
        }
    }
}
