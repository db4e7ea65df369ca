//! Tabular data to representation metric.

use std::collections::HashMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::MetricInstance;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureKind {
    Categorical,
    Continuous,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Feature {
    pub name: String,
    pub kind: FeatureKind,
    /// Fixed feature weight; drawn at random when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

/// Which columns to read and how to compare them.
///
/// Stored as TOML:
///
/// ```toml
/// weight_column = "fnlwgt"
///
/// [[feature]]
/// name = "sex"
/// kind = "categorical"
///
/// [[feature]]
/// name = "education.num"
/// kind = "continuous"
/// weight = 0.25
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureSchema {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_column: Option<String>,
    #[serde(rename = "feature")]
    pub features: Vec<Feature>,
}

impl FeatureSchema {
    pub fn from_toml(text: &str) -> Result<Self> {
        let schema: FeatureSchema = toml::from_str(text).map_err(|e| Error::Load(format!("schema: {e}")))?;
        schema.validate()?;
        Ok(schema)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("schema serializes")
    }

    fn validate(&self) -> Result<()> {
        if self.features.is_empty() {
            return Err(Error::Load("schema lists no features".into()));
        }
        for f in &self.features {
            if let Some(w) = f.weight {
                if !(w >= 0.0 && w.is_finite()) {
                    return Err(Error::Load(format!("feature {} has invalid weight {w}", f.name)));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Category(String),
    Number(f64),
}

/// Deduplicated rows with summed real weights.
#[derive(Clone, Debug)]
pub struct Table {
    pub schema: FeatureSchema,
    pub rows: Vec<Vec<Value>>,
    pub weights: Vec<f64>,
}

impl Table {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Keeps the rows at `indices` (in that order).
    pub fn select(&self, indices: &[usize]) -> Table {
        Table {
            schema: self.schema.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            weights: indices.iter().map(|&i| self.weights[i]).collect(),
        }
    }

    /// Rounds weights to positive integers. With a resolution the weights
    /// are first rescaled so that they sum to roughly that value.
    pub fn integer_weights(&self, resolution: Option<u64>) -> Vec<u64> {
        let scale = match resolution {
            Some(r) => r as f64 / self.weights.iter().sum::<f64>(),
            None => 1.0,
        };
        self.weights.iter().map(|w| ((w * scale).round() as u64).max(1)).collect()
    }
}

/// Reads a CSV file, keeps the schema's columns and merges identical rows.
pub fn load_dataset(path: impl AsRef<Path>, schema: &FeatureSchema) -> Result<Table> {
    let path = path.as_ref();
    let reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Load(format!("{}: {e}", path.display())))?;
    read_table(reader, schema)
}

pub(crate) fn read_table<R: std::io::Read>(mut reader: csv::Reader<R>, schema: &FeatureSchema) -> Result<Table> {
    schema.validate()?;
    let headers = reader.headers().map_err(|e| Error::Load(e.to_string()))?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Load(format!("missing column `{name}`")))
    };
    let cols: Vec<usize> = schema.features.iter().map(|f| column(&f.name)).collect::<Result<_>>()?;
    let weight_col = schema.weight_column.as_deref().map(column).transpose()?;

    let mut index: HashMap<Vec<String>, usize> = HashMap::new();
    let mut rows = Vec::new();
    let mut weights = Vec::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::Load(e.to_string()))?;
        let line = line + 2;
        let mut key = Vec::with_capacity(cols.len());
        let mut row = Vec::with_capacity(cols.len());
        for (f, &c) in schema.features.iter().zip(&cols) {
            let raw = rec.get(c).unwrap_or("");
            match f.kind {
                FeatureKind::Categorical => {
                    key.push(raw.to_string());
                    row.push(Value::Category(raw.to_string()));
                }
                FeatureKind::Continuous => {
                    let v: f64 = raw.parse().ok().filter(|v: &f64| v.is_finite()).ok_or_else(|| {
                        Error::Load(format!("line {line}: non-numeric value `{raw}` for continuous feature `{}`", f.name))
                    })?;
                    // +0.0 so that -0 and 0 merge
                    let v = v + 0.0;
                    key.push(v.to_bits().to_string());
                    row.push(Value::Number(v));
                }
            }
        }
        let w = match weight_col {
            Some(c) => {
                let raw = rec.get(c).unwrap_or("");
                let w: f64 = raw.parse().map_err(|_| Error::Load(format!("line {line}: non-numeric weight `{raw}`")))?;
                if !(w > 0.0 && w.is_finite()) {
                    return Err(Error::Load(format!("line {line}: weight {w} must be positive")));
                }
                w
            }
            None => 1.0,
        };
        match index.get(&key) {
            Some(&at) => weights[at] += w,
            None => {
                index.insert(key, rows.len());
                rows.push(row);
                weights.push(w);
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::Load("dataset has no rows".into()));
    }
    Ok(Table { schema: schema.clone(), rows, weights })
}

#[derive(Clone, Debug, Default)]
pub struct MetricOptions {
    /// Seed for the random feature weights.
    pub seed: u64,
    /// Target effective population when discretizing row weights.
    pub resolution: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct BuiltMetric {
    pub instance: MetricInstance<f64>,
    /// Feature weights actually used, in schema order.
    pub feature_weights: Vec<f64>,
    pub warnings: Vec<String>,
}

/// `d(i,j) = Σ_f w_f · d(i,j;f)` with indicator distances for categorical
/// features and range-normalized absolute differences for continuous ones.
///
/// Features without a fixed weight get an independent uniform draw on
/// `[0, 1]`; whenever anything was drawn the whole vector is normalized to
/// sum one.
pub fn build_metric(table: &Table, options: &MetricOptions) -> Result<BuiltMetric> {
    if table.is_empty() {
        return Err(Error::InvalidArgument("empty table".into()));
    }
    let schema = &table.schema;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut drawn = false;
    let mut fw: Vec<f64> = schema
        .features
        .iter()
        .map(|f| {
            f.weight.unwrap_or_else(|| {
                drawn = true;
                rng.gen_range(0.0..1.0)
            })
        })
        .collect();
    if drawn {
        let total: f64 = fw.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidArgument("feature weights sum to zero".into()));
        }
        fw.iter_mut().for_each(|w| *w /= total);
    }

    let mut warnings = Vec::new();
    let mut ranges = vec![0.0; schema.features.len()];
    for (fi, f) in schema.features.iter().enumerate() {
        if f.kind == FeatureKind::Continuous {
            let (lo, hi) = table.rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| match r[fi] {
                Value::Number(v) => (lo.min(v), hi.max(v)),
                _ => (lo, hi),
            });
            ranges[fi] = hi - lo;
            if ranges[fi] <= 0.0 {
                warnings.push(format!("continuous feature `{}` is constant and contributes nothing", f.name));
            }
        }
    }

    let n = table.len();
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let mut d = 0.0;
            for (fi, (a, b)) in table.rows[i].iter().zip(&table.rows[j]).enumerate() {
                d += fw[fi]
                    * match (a, b) {
                        (Value::Category(x), Value::Category(y)) => f64::from(u8::from(x != y)),
                        (Value::Number(x), Value::Number(y)) if ranges[fi] > 0.0 => (x - y).abs() / ranges[fi],
                        _ => 0.0,
                    };
            }
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    let instance = MetricInstance::from_trusted_rows(rows)?.with_weights(table.integer_weights(options.resolution))?;
    Ok(BuiltMetric { instance, feature_weights: fw, warnings })
}
