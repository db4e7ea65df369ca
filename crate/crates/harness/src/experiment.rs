use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sortition_core::audit::{audit_panel, opt_social_cost, social_cost, SocialCostMethod};
use sortition_core::metric::{build_metric, load_dataset, FeatureSchema, MetricOptions, Table};
use sortition_core::{FgcOptions, Improvement, Metric, Panel, Selector, SelectorConfig, SelectorKind};

use crate::config::ExperimentConfig;
use crate::synthetic::{adult_like, subsample};

pub const ROW_COLUMNS: [&str; 14] = [
    "seed",
    "algorithm",
    "k",
    "q",
    "points",
    "population",
    "violation",
    "unbounded",
    "argmax_center",
    "social_cost",
    "opt_social_cost",
    "social_cost_ratio",
    "panel",
    "error",
];

/// One audited panel.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub seed: usize,
    pub algorithm: SelectorKind,
    pub k: usize,
    pub q: usize,
    pub points: usize,
    pub population: u64,
    pub violation: Option<Improvement<f64>>,
    pub argmax_center: Option<usize>,
    pub social_cost: Option<f64>,
    pub opt_social_cost: Option<f64>,
    pub panel: Option<Panel>,
    pub error: Option<String>,
}

impl Row {
    /// Optimum over realized social cost; 1 when both vanish.
    pub fn social_cost_ratio(&self) -> Option<f64> {
        match (self.opt_social_cost, self.social_cost) {
            (Some(o), Some(s)) if s > 0.0 => Some(o / s),
            (Some(_), Some(_)) => Some(1.0),
            _ => None,
        }
    }

    fn record(&self) -> Vec<String> {
        let opt = |v: Option<String>| v.unwrap_or_default();
        vec![
            self.seed.to_string(),
            self.algorithm.to_string(),
            self.k.to_string(),
            self.q.to_string(),
            self.points.to_string(),
            self.population.to_string(),
            opt(self.violation.as_ref().map(|v| v.to_string())),
            opt(self.violation.as_ref().map(|v| v.is_unbounded().to_string())),
            opt(self.argmax_center.map(|c| c.to_string())),
            opt(self.social_cost.map(|c| c.to_string())),
            opt(self.opt_social_cost.map(|c| c.to_string())),
            opt(self.social_cost_ratio().map(|c| c.to_string())),
            opt(self.panel.as_ref().map(|p| p.members().iter().map(|m| m.to_string()).collect::<Vec<_>>().join(";"))),
            opt(self.error.clone()),
        ]
    }
}

/// Mixes a master seed with a stream tag (splitmix64 finalizer), so every
/// seed index and stage draws from its own stream.
pub fn derive_seed(master: u64, tag: u64) -> u64 {
    let mut z = master ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn algorithm_code(kind: SelectorKind) -> u64 {
    match kind {
        SelectorKind::Uniform => 0,
        SelectorKind::Fgc => 1,
        SelectorKind::Afgc => 2,
    }
}

const SUBSAMPLE_TAG: u64 = u64::MAX;

fn stream(seed: usize, stage: u64, algorithm: u64, q: usize) -> u64 {
    ((seed as u64) << 32) | (stage << 24) | (algorithm << 16) | q as u64
}

/// Loads (or generates) the population and applies the subsample cap.
pub fn load_population(cfg: &ExperimentConfig) -> Result<Table> {
    let table = match (&cfg.dataset, &cfg.schema) {
        (Some(d), Some(s)) => {
            let schema = FeatureSchema::from_path(s).with_context(|| format!("reading schema {}", s.display()))?;
            load_dataset(d, &schema).with_context(|| format!("loading {}", d.display()))?
        }
        _ => {
            let spec = cfg.synthetic.clone().unwrap_or_default();
            adult_like(spec.points, spec.heavy_share, spec.seed)?
        }
    };
    Ok(subsample(&table, cfg.subsample, derive_seed(cfg.master_seed, SUBSAMPLE_TAG)))
}

fn failed(mut row: Row, stage: &str, e: impl std::fmt::Display) -> Row {
    row.error = Some(format!("{stage}: {e}"));
    row
}

/// All rows of one feature-weight seed, in (algorithm, q) order.
pub fn run_seed(cfg: &ExperimentConfig, table: &Table, seed: usize) -> Vec<Row> {
    let (k, ranks) = (cfg.k, cfg.ranks());
    let kinds = cfg.selector_kinds().expect("validated config");
    let blank = |algorithm, q| Row {
        seed,
        algorithm,
        k,
        q,
        points: table.len(),
        population: 0,
        violation: None,
        argmax_center: None,
        social_cost: None,
        opt_social_cost: None,
        panel: None,
        error: None,
    };
    let opts = MetricOptions { seed: derive_seed(cfg.master_seed, stream(seed, 0, 0, 0)), resolution: Some(cfg.resolution()) };
    let inst: Metric = match build_metric(table, &opts) {
        Ok(b) => b.instance,
        Err(e) => {
            return kinds.iter().flat_map(|&a| ranks.iter().map(move |&q| (a, q))).map(|(a, q)| failed(blank(a, q), "metric", &e)).collect()
        }
    };

    let optimum: BTreeMap<usize, Result<f64, String>> = if cfg.social_cost {
        ranks
            .iter()
            .map(|&q| {
                let method = SocialCostMethod::Greedy {
                    restarts: cfg.greedy_restarts,
                    seed: derive_seed(cfg.master_seed, stream(seed, 1, 0, q)),
                };
                (q, opt_social_cost(&inst, k, q, method).map(|r| r.1).map_err(|e| e.to_string()))
            })
            .collect()
    } else {
        BTreeMap::new()
    };

    let fgc = FgcOptions { gate: cfg.gate, ..FgcOptions::default() };
    let mut rows = Vec::new();
    for &kind in &kinds {
        let mut shared: Option<Result<Box<dyn Selector>, String>> = None;
        for &q in &ranks {
            let mut row = blank(kind, q);
            row.population = inst.population();
            let sel_seed = derive_seed(cfg.master_seed, stream(seed, 2, algorithm_code(kind), q));
            let mut sc = SelectorConfig::new(kind, k, Some(q), sel_seed);
            sc.fgc = fgc;
            let built;
            let selector = if kind == SelectorKind::Afgc {
                built = sc.build(&inst).map_err(|e| e.to_string());
                &built
            } else {
                shared.get_or_insert_with(|| sc.build(&inst).map_err(|e| e.to_string()))
            };
            let selector = match selector {
                Ok(s) => s,
                Err(e) => {
                    rows.push(failed(row, "selector", e));
                    continue;
                }
            };
            let mut rng = ChaCha8Rng::seed_from_u64(sel_seed);
            let panel = match selector.sample(&mut rng) {
                Ok(p) => p,
                Err(e) => {
                    rows.push(failed(row, "sample", e));
                    continue;
                }
            };
            match audit_panel(&inst, &panel, k, q) {
                Ok(r) => {
                    row.violation = Some(r.alpha_hat);
                    row.argmax_center = Some(r.argmax);
                }
                Err(e) => {
                    row.panel = Some(panel);
                    rows.push(failed(row, "audit", e));
                    continue;
                }
            }
            if cfg.social_cost {
                row.social_cost = social_cost(&inst, &panel, q).ok();
                match &optimum[&q] {
                    Ok(c) => row.opt_social_cost = Some(*c),
                    Err(e) => row.error = Some(format!("social cost: {e}")),
                }
            }
            row.panel = Some(panel);
            rows.push(row);
        }
    }
    rows
}

/// Output files of a run.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub rows: Vec<Row>,
    pub aggregates: Vec<Aggregate>,
    pub files: Vec<PathBuf>,
}

/// Runs every seed (in parallel), writes `rows.csv` and the summary files.
/// Output does not depend on the number of worker threads.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunReport> {
    cfg.validate()?;
    let table = load_population(cfg)?;
    let rows: Vec<Row> = (0..cfg.seeds).into_par_iter().map(|s| run_seed(cfg, &table, s)).collect::<Vec<_>>().concat();
    std::fs::create_dir_all(&cfg.output).with_context(|| format!("creating {}", cfg.output.display()))?;
    let path = cfg.output.join("rows.csv");
    write_rows(&rows, File::create(&path).with_context(|| format!("creating {}", path.display()))?)?;
    let (aggregates, mut files) = summarize(&cfg.output)?;
    files.insert(0, path);
    Ok(RunReport { rows, aggregates, files })
}

pub fn write_rows<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(BufWriter::new(out));
    w.write_record(ROW_COLUMNS)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    Ok(())
}

/// Per (algorithm, q) statistics over rows without errors.
#[derive(Clone, Debug, PartialEq)]
pub struct Aggregate {
    pub algorithm: String,
    pub q: usize,
    pub rows: usize,
    pub errors: usize,
    /// Mean over bounded violations.
    pub mean_violation: Option<f64>,
    pub max_violation: Option<Improvement<f64>>,
    pub fraction_unbounded: Option<f64>,
    pub mean_social_cost_ratio: Option<f64>,
}

#[derive(Default)]
struct Acc {
    rows: usize,
    errors: usize,
    audited: usize,
    bounded: Vec<f64>,
    unbounded: usize,
    ratios: Vec<f64>,
}

fn mean(v: &[f64]) -> Option<f64> {
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Reads `rows.csv` in `dir` and writes `aggregate.csv`,
/// `figure_expost.csv` (mean bounded violation per q) and
/// `figure_socialcost.csv` (mean social-cost ratio per q).
pub fn summarize(dir: &Path) -> Result<(Vec<Aggregate>, Vec<PathBuf>)> {
    let path = dir.join("rows.csv");
    if !path.exists() {
        bail!("no rows.csv in {}", dir.display());
    }
    let mut reader = csv::Reader::from_path(&path)?;
    let headers = reader.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name).with_context(|| format!("rows.csv lacks column `{name}`"));
    let (c_alg, c_q, c_v, c_r, c_e) = (col("algorithm")?, col("q")?, col("violation")?, col("social_cost_ratio")?, col("error")?);

    let mut order: Vec<String> = Vec::new();
    let mut acc: BTreeMap<(usize, usize), Acc> = BTreeMap::new();
    for rec in reader.records() {
        let rec = rec?;
        let alg = rec[c_alg].to_string();
        let a = order.iter().position(|x| *x == alg).unwrap_or_else(|| {
            order.push(alg.clone());
            order.len() - 1
        });
        let q: usize = rec[c_q].parse().with_context(|| format!("bad q `{}`", &rec[c_q]))?;
        let e = acc.entry((a, q)).or_default();
        e.rows += 1;
        if !rec[c_e].is_empty() {
            e.errors += 1;
        }
        match &rec[c_v] {
            "" => {}
            "inf" => {
                e.audited += 1;
                e.unbounded += 1;
            }
            v => {
                e.audited += 1;
                e.bounded.push(v.parse().with_context(|| format!("bad violation `{v}`"))?);
            }
        }
        if let Ok(r) = rec[c_r].parse::<f64>() {
            e.ratios.push(r);
        }
    }
    if acc.is_empty() {
        bail!("rows.csv in {} has no data rows", dir.display());
    }

    let aggregates: Vec<Aggregate> = acc
        .iter()
        .map(|(&(a, q), e)| Aggregate {
            algorithm: order[a].clone(),
            q,
            rows: e.rows,
            errors: e.errors,
            mean_violation: mean(&e.bounded),
            max_violation: if e.unbounded > 0 {
                Some(Improvement::Unbounded)
            } else {
                e.bounded.iter().copied().reduce(f64::max).map(Improvement::Finite)
            },
            fraction_unbounded: (e.audited > 0).then(|| e.unbounded as f64 / e.audited as f64),
            mean_social_cost_ratio: mean(&e.ratios),
        })
        .collect();

    let agg_path = dir.join("aggregate.csv");
    let mut w = csv::Writer::from_path(&agg_path)?;
    w.write_record([
        "algorithm",
        "q",
        "rows",
        "errors",
        "mean_violation",
        "max_violation",
        "fraction_unbounded",
        "mean_social_cost_ratio",
    ])?;
    for g in &aggregates {
        w.write_record([
            g.algorithm.clone(),
            g.q.to_string(),
            g.rows.to_string(),
            g.errors.to_string(),
            cell(g.mean_violation),
            cell(g.max_violation.as_ref()),
            cell(g.fraction_unbounded),
            cell(g.mean_social_cost_ratio),
        ])?;
    }
    w.flush()?;

    let mut files = vec![agg_path];
    for (name, value) in [
        ("figure_expost.csv", (|g: &Aggregate| g.mean_violation) as fn(&Aggregate) -> Option<f64>),
        ("figure_socialcost.csv", |g: &Aggregate| g.mean_social_cost_ratio),
    ] {
        let p = dir.join(name);
        let mut w = csv::Writer::from_path(&p)?;
        let mut header = vec!["q".to_string()];
        header.extend(order.iter().cloned());
        w.write_record(&header)?;
        let qs: std::collections::BTreeSet<usize> = aggregates.iter().map(|g| g.q).collect();
        for q in qs {
            let mut rec = vec![q.to_string()];
            for alg in &order {
                rec.push(cell(aggregates.iter().find(|g| g.q == q && g.algorithm == *alg).and_then(value)));
            }
            w.write_record(&rec)?;
        }
        w.flush()?;
        files.push(p);
    }
    Ok((aggregates, files))
}
