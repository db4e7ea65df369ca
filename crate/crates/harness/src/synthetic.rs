//! Census-like synthetic populations and weight-preserving subsampling.

use std::collections::HashSet;
use std::io::Write;

use anyhow::{bail, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sortition_core::metric::{Feature, FeatureKind, FeatureSchema, Table, Value};

const SEX: [&str; 2] = ["Male", "Female"];
const RACE: [(&str, f64); 5] =
    [("White", 0.85), ("Black", 0.09), ("Asian-Pac-Islander", 0.03), ("Amer-Indian-Eskimo", 0.01), ("Other", 0.02)];
const MARITAL: [(&str, f64); 7] = [
    ("Married-civ-spouse", 0.46),
    ("Never-married", 0.33),
    ("Divorced", 0.14),
    ("Separated", 0.03),
    ("Widowed", 0.03),
    ("Married-spouse-absent", 0.007),
    ("Married-AF-spouse", 0.003),
];
const WORKCLASS: [(&str, f64); 6] = [
    ("Private", 0.70),
    ("Self-emp-not-inc", 0.08),
    ("Local-gov", 0.07),
    ("State-gov", 0.04),
    ("Self-emp-inc", 0.04),
    ("Federal-gov", 0.07),
];

/// Schema of [`adult_like`] tables: weights in `weight`, all feature
/// weights drawn at random.
pub fn adult_like_schema() -> FeatureSchema {
    let f = |name: &str, kind| Feature { name: name.into(), kind, weight: None };
    FeatureSchema {
        weight_column: Some("weight".into()),
        features: vec![
            f("age", FeatureKind::Continuous),
            f("sex", FeatureKind::Categorical),
            f("race", FeatureKind::Categorical),
            f("education.num", FeatureKind::Continuous),
            f("marital.status", FeatureKind::Categorical),
            f("workclass", FeatureKind::Categorical),
        ],
    }
}

fn pick<R: Rng>(rng: &mut R, table: &[(&str, f64)]) -> String {
    table.choose_weighted(rng, |c| c.1).expect("positive weights").0.to_string()
}

/// `points` distinct census-style profiles. Point 0 is the modal profile and
/// carries `heavy_share` of the total weight; the others have heavy-tailed
/// weights.
pub fn adult_like(points: usize, heavy_share: f64, seed: u64) -> Result<Table> {
    if points < 2 {
        bail!("need at least 2 points");
    }
    if !(heavy_share > 0.0 && heavy_share < 1.0) {
        bail!("heavy share must lie in (0, 1)");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let modal = vec![
        Value::Number(35.0),
        Value::Category("Male".into()),
        Value::Category("White".into()),
        Value::Number(9.0),
        Value::Category("Married-civ-spouse".into()),
        Value::Category("Private".into()),
    ];
    let key = |r: &[Value]| format!("{r:?}");
    let mut seen = HashSet::from([key(&modal)]);
    let mut rows = vec![modal];
    let mut attempts = 0;
    while rows.len() < points {
        attempts += 1;
        if attempts > 200 * points {
            bail!("could not draw {points} distinct profiles");
        }
        let row = vec![
            Value::Number(rng.gen_range(17..=90) as f64),
            Value::Category(SEX[usize::from(rng.gen_bool(0.33))].into()),
            Value::Category(pick(&mut rng, &RACE)),
            Value::Number(rng.gen_range(1..=16) as f64),
            Value::Category(pick(&mut rng, &MARITAL)),
            Value::Category(pick(&mut rng, &WORKCLASS)),
        ];
        if seen.insert(key(&row)) {
            rows.push(row);
        }
    }
    let mut weights: Vec<f64> = (0..points).map(|_| 1.0 + (-rng.gen_range(f64::EPSILON..1.0f64).ln() * 30.0).floor()).collect();
    let rest: f64 = weights[1..].iter().sum();
    weights[0] = (heavy_share / (1.0 - heavy_share) * rest).round();
    Ok(Table { schema: adult_like_schema(), rows, weights })
}

/// Writes a table as CSV with the schema's columns plus the weight column.
pub fn write_table_csv<W: Write>(table: &Table, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = table.schema.features.iter().map(|f| f.name.as_str()).collect();
    let weight_col = table.schema.weight_column.as_deref().unwrap_or("weight");
    header.push(weight_col);
    w.write_record(&header)?;
    for (row, weight) in table.rows.iter().zip(&table.weights) {
        let mut rec: Vec<String> = row
            .iter()
            .map(|v| match v {
                Value::Category(c) => c.clone(),
                Value::Number(x) => x.to_string(),
            })
            .collect();
        rec.push(weight.to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Keeps at most `cap` rows, drawn without replacement with probability
/// proportional to weight (exponential-key sampling), in original order.
/// Heavy rows are therefore almost always retained.
pub fn subsample(table: &Table, cap: usize, seed: u64) -> Table {
    if table.len() <= cap {
        return table.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keyed: Vec<(f64, usize)> =
        table.weights.iter().enumerate().map(|(i, w)| (rng.gen_range(f64::EPSILON..1.0f64).ln() / w, i)).collect();
    keyed.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut keep: Vec<usize> = keyed[..cap].iter().map(|k| k.1).collect();
    keep.sort_unstable();
    table.select(&keep)
}
