//! Plain-text formats.
//!
//! Distance matrix: first line `n`, then `n` lines of `n` space-separated
//! decimals. Panel: one id per line. Weights: whitespace-separated positive
//! integers, one per point.

use std::io::{BufRead, Write};

use super::{MetricInstance, Panel};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn read_distance_matrix<D: Scalar, R: BufRead>(reader: R) -> Result<MetricInstance<D>> {
    let mut lines = reader.lines().enumerate().filter_map(|(no, l)| match l {
        Ok(s) if s.trim().is_empty() => None,
        other => Some((no + 1, other)),
    });
    let (no, first) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let first = first?;
    let n: usize = first.trim().parse().map_err(|_| parse_err(no, format!("expected a count, found `{}`", first.trim())))?;
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let (no, line) = lines.next().ok_or_else(|| parse_err(no + r + 1, format!("expected {n} rows, found {r}")))?;
        let line = line?;
        let row: Vec<D> = line
            .split_whitespace()
            .map(|tok| tok.parse::<D>().map_err(|_| parse_err(no, format!("bad number `{tok}`"))))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(parse_err(no, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if let Some((no, _)) = lines.next() {
        return Err(parse_err(no, "trailing data after matrix"));
    }
    MetricInstance::new(rows)
}

pub fn write_distance_matrix<D: Scalar, W: Write>(inst: &MetricInstance<D>, mut out: W) -> Result<()> {
    writeln!(out, "{}", inst.n())?;
    for i in 0..inst.n() {
        let line: Vec<String> = inst.row(i).iter().map(|d| d.to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

/// Reads whitespace-separated seat ids; `#` starts a comment.
pub fn read_panel<R: BufRead>(reader: R) -> Result<Panel> {
    let mut ids = Vec::new();
    for (no, line) in reader.lines().enumerate() {
        let line = line?;
        for tok in line.split('#').next().unwrap_or("").split_whitespace() {
            ids.push(tok.parse().map_err(|_| parse_err(no + 1, format!("bad id `{tok}`")))?);
        }
    }
    Panel::with_seats(ids)
}

pub fn write_panel<W: Write>(panel: &Panel, mut out: W) -> Result<()> {
    for m in panel.members() {
        writeln!(out, "{m}")?;
    }
    Ok(())
}

pub fn read_weights<R: BufRead>(reader: R) -> Result<Vec<u64>> {
    let mut weights = Vec::new();
    for (no, line) in reader.lines().enumerate() {
        for tok in line?.split_whitespace() {
            weights.push(tok.parse().map_err(|_| parse_err(no + 1, format!("bad weight `{tok}`")))?);
        }
    }
    Ok(weights)
}
