use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sortition_core::audit::{audit_panel, ExactOracle, DEFAULT_POPULATION_LIMIT};
use sortition_core::fixtures::{self, Fixture, FixtureParams};
use sortition_core::metric::{build_metric, load_dataset, read_distance_matrix, read_panel, read_weights, write_distance_matrix, write_panel, FeatureSchema, MetricOptions};
use sortition_core::{fgc_distribution_with, fractional_allocation, FgcOptions, Metric, Route, SelectorConfig, SelectorKind};
use sortition_harness::{adult_like, run_experiment, summarize, write_table_csv, ExperimentConfig};

#[derive(Parser)]
#[command(name = "sortition", version, about = "Fair panel selection, auditing and experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a distance matrix from a CSV dataset and schema
    Metric {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        schema: PathBuf,
        /// Seed for randomly drawn feature weights
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Target effective population for integer weights
        #[arg(long)]
        resolution: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        weights_out: Option<PathBuf>,
    },
    /// Write a named construction as a distance matrix plus its groups and panels
    Fixture {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 1e-4)]
        epsilon: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a census-like synthetic dataset with one heavy point
    Synth {
        #[arg(long, default_value_t = 1513)]
        points: usize,
        #[arg(long, default_value_t = 0.083)]
        heavy_share: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        schema_out: PathBuf,
    },
    /// Fractional allocation of the greedy capture phase
    Allocate {
        #[command(flatten)]
        metric: MetricArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ball memberships usable as selection quotas
    Quotas {
        #[command(flatten)]
        metric: MetricArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full panel distribution of FairGreedyCapture
    Decompose {
        #[command(flatten)]
        metric: MetricArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
        /// Largest population for the full Birkhoff route
        #[arg(long, default_value_t = FgcOptions::default().gate)]
        gate: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample one panel
    Select {
        #[command(flatten)]
        metric: MetricArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "fgc")]
        algorithm: SelectorKind,
        /// Rank for afgc
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit a panel: key-value summary on stdout, per-center CSV optional
    Audit {
        #[command(flatten)]
        metric: MetricArgs,
        #[arg(long)]
        panel: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        centers: Option<PathBuf>,
    },
    /// Exact core violation by enumeration (small instances only)
    Oracle {
        #[command(flatten)]
        metric: MetricArgs,
        #[arg(long)]
        panel: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: usize,
        /// Largest alternative panel considered (defaults to k)
        #[arg(long)]
        max_size: Option<usize>,
        /// Refuse populations above this size
        #[arg(long, default_value_t = DEFAULT_POPULATION_LIMIT)]
        max_n: u64,
    },
    /// Run an experiment described by a TOML config
    Experiment {
        #[arg(long)]
        config: PathBuf,
    },
    /// Recompute aggregates and figure data from a run directory
    Summarize {
        #[arg(long)]
        dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Auto,
    Full,
    Capacitated,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Route {
        match r {
            RouteArg::Auto => Route::Auto,
            RouteArg::Full => Route::Full,
            RouteArg::Capacitated => Route::Capacitated,
        }
    }
}

#[derive(Args)]
struct MetricArgs {
    /// Distance matrix file
    #[arg(long, conflicts_with_all = ["data", "schema"])]
    metric: Option<PathBuf>,
    /// Integer weights, one per point
    #[arg(long, requires = "metric")]
    weights: Option<PathBuf>,
    /// CSV dataset (with --schema) instead of a matrix
    #[arg(long, requires = "schema")]
    data: Option<PathBuf>,
    #[arg(long, requires = "data")]
    schema: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    metric_seed: u64,
    #[arg(long)]
    resolution: Option<u64>,
}

impl MetricArgs {
    fn load(&self) -> Result<Metric> {
        if let Some(path) = &self.metric {
            let inst: Metric = read_distance_matrix(reader(path)?).with_context(|| format!("reading {}", path.display()))?;
            return match &self.weights {
                Some(w) => Ok(inst.with_weights(read_weights(reader(w)?)?)?),
                None => Ok(inst),
            };
        }
        match (&self.data, &self.schema) {
            (Some(d), Some(s)) => {
                let table = load_dataset(d, &FeatureSchema::from_path(s)?)?;
                let built = build_metric(&table, &MetricOptions { seed: self.metric_seed, resolution: self.resolution })?;
                for w in &built.warnings {
                    eprintln!("warning: {w}");
                }
                Ok(built.instance)
            }
            _ => bail!("give --metric or --data with --schema"),
        }
    }
}

fn reader(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path).with_context(|| format!("opening {}", path.display()))?))
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_fixture(fx: &Fixture<f64>, out: &Path) -> Result<()> {
    write_distance_matrix(&fx.instance, BufWriter::new(File::create(out)?))?;
    let mut w = io::stdout().lock();
    writeln!(w, "fixture = {}", fx.name)?;
    writeln!(w, "n = {}", fx.instance.n())?;
    writeln!(w, "k = {}", fx.k)?;
    if let Some(q) = fx.q {
        writeln!(w, "q = {q}")?;
    }
    if let Some(u) = fx.unbounded {
        writeln!(w, "unbounded_distance = {u}")?;
    }
    for (name, ids) in fx.groups() {
        writeln!(w, "group {name} = {}", ids.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "))?;
    }
    for (name, p) in fx.panels() {
        writeln!(w, "panel {name} = {p}")?;
    }
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Metric { data, schema, seed, resolution, out, weights_out } => {
            let table = load_dataset(&data, &FeatureSchema::from_path(&schema)?)?;
            let built = build_metric(&table, &MetricOptions { seed, resolution })?;
            for w in &built.warnings {
                eprintln!("warning: {w}");
            }
            write_distance_matrix(&built.instance, BufWriter::new(File::create(&out)?))?;
            if let Some(p) = weights_out {
                let ws: Vec<String> = built.instance.weights().iter().map(|w| w.to_string()).collect();
                std::fs::write(p, ws.join("\n") + "\n")?;
            }
            println!("points = {}", built.instance.n());
            println!("population = {}", built.instance.population());
        }
        Command::Fixture { name, n, k, q, epsilon, out } => {
            let fx = if name == "appxG" {
                fixtures::appx_g(epsilon)?
            } else {
                fixtures::fixture::<f64>(&name, &FixtureParams { n, k, q, epsilon })?
            };
            write_fixture(&fx, &out)?;
        }
        Command::Synth { points, heavy_share, seed, out, schema_out } => {
            let t = adult_like(points, heavy_share, seed)?;
            write_table_csv(&t, File::create(&out)?)?;
            std::fs::write(schema_out, t.schema.to_toml())?;
        }
        Command::Allocate { metric, k, out } => {
            let inst = metric.load()?;
            fractional_allocation(&inst, k)?.write_dump(output(&out)?)?;
        }
        Command::Quotas { metric, k, out } => {
            let inst = metric.load()?;
            fractional_allocation(&inst, k)?.export_ball_quotas(output(&out)?)?;
        }
        Command::Decompose { metric, k, route, gate, out } => {
            let inst = metric.load()?;
            let dist = fgc_distribution_with(&inst, k, &FgcOptions { route: route.into(), gate })?;
            eprintln!("terms = {}", dist.len());
            dist.write_dump(output(&out)?)?;
        }
        Command::Select { metric, k, algorithm, q, seed, out } => {
            let inst = metric.load()?;
            let panel = SelectorConfig::new(algorithm, k, q, seed).select(&inst)?;
            write_panel(&panel, output(&out)?)?;
        }
        Command::Audit { metric, panel, k, q, centers } => {
            let inst = metric.load()?;
            let panel = read_panel(reader(&panel)?)?;
            let report = audit_panel(&inst, &panel, k, q)?;
            report.write_summary(io::stdout().lock())?;
            if let Some(p) = centers {
                report.write_centers_csv(BufWriter::new(File::create(p)?))?;
            }
        }
        Command::Oracle { metric, panel, k, q, max_size, max_n } => {
            let inst = metric.load()?;
            let panel = read_panel(reader(&panel)?)?;
            let max_size = max_size.unwrap_or(k);
            let r = ExactOracle::with_limit(&inst, k, q, max_size, max_n)?.evaluate(&panel)?;
            println!("alpha_star = {}", r.alpha_star);
            println!("unbounded = {}", r.alpha_star.is_unbounded());
            println!("witness_panel = {}", r.witness_panel);
            println!("witness_set = {}", r.witness_set.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
            println!("threshold = {}", r.threshold);
            println!("alternatives = {}", r.alternatives);
            println!("alternative_sizes = {q}..={}", max_size.min(k));
        }
        Command::Experiment { config } => {
            let cfg = ExperimentConfig::from_path(&config)?;
            let report = run_experiment(&cfg)?;
            let errors = report.rows.iter().filter(|r| r.error.is_some()).count();
            println!("rows = {}", report.rows.len());
            println!("errors = {errors}");
            for f in &report.files {
                println!("wrote {}", f.display());
            }
        }
        Command::Summarize { dir } => {
            let (aggs, files) = summarize(&dir)?;
            println!("groups = {}", aggs.len());
            for f in &files {
                println!("wrote {}", f.display());
            }
        }
    }
    Ok(())
}
