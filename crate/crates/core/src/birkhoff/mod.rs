//! Turns a fractional allocation into a distribution over panels.
//!
//! The full route completes `X` to the square bistochastic matrix
//! `Y = [X; X']` with uniform rows `X'` and peels permutation matrices off it.
//! Points of weight `w` occupy `w` co-located virtual columns. The capacitated
//! route works on the compressed `k × n` matrix directly and is used when the
//! population is too large for `N × N`; it has at most `N` terms.
//!
//! Entries are integers scaled by a common denominator, so every subtraction
//! is exact and the decomposition ends with true zeros.

mod matching;

use std::io::Write;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::allocation::{fractional_allocation, FractionalAllocation};
use crate::error::{invalid, Error, Result};
use crate::metric::{MetricInstance, Panel};
use crate::scalar::{Rational, Scalar};
use matching::Assignment;

/// Exact bistochastic matrix stored as integer numerators over `scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareBistochastic {
    size: usize,
    scale: u64,
    entries: Vec<u64>,
    top_rows: usize,
    column_owner: Vec<usize>,
}

impl SquareBistochastic {
    /// Validates a matrix of rationals. The first `top_rows` rows are the
    /// allocation rows; columns are their own owners.
    pub fn from_rationals(rows: &[Vec<Rational>], top_rows: usize) -> Result<Self> {
        let size = rows.len();
        if size == 0 || top_rows == 0 || top_rows > size {
            return invalid(format!("need 1 ≤ top_rows = {top_rows} ≤ size = {size}"));
        }
        let mut scale: i64 = 1;
        for row in rows {
            if row.len() != size {
                return invalid("matrix is not square");
            }
            for v in row {
                if *v < Rational::from_integer(0) {
                    return invalid("matrix has a negative entry");
                }
                scale = scale.lcm(v.denom());
            }
        }
        let entries: Vec<u64> = rows.iter().flatten().map(|v| (v.numer() * (scale / v.denom())) as u64).collect();
        let y = SquareBistochastic { size, scale: scale as u64, entries, top_rows, column_owner: (0..size).collect() };
        y.check()?;
        Ok(y)
    }

    fn check(&self) -> Result<()> {
        for r in 0..self.size {
            let s: u64 = (0..self.size).map(|c| self.numerator(r, c)).sum();
            if s != self.scale {
                return invalid(format!("row {r} sums to {s}/{}, not 1", self.scale));
            }
        }
        for c in 0..self.size {
            let s: u64 = (0..self.size).map(|r| self.numerator(r, c)).sum();
            if s != self.scale {
                return invalid(format!("column {c} sums to {s}/{}, not 1", self.scale));
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Common denominator of all entries.
    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// Number of rows that come from the allocation (the panel size).
    pub fn top_rows(&self) -> usize {
        self.top_rows
    }

    /// Original data point of every (virtual) column.
    pub fn column_owner(&self) -> &[usize] {
        &self.column_owner
    }

    #[inline]
    pub fn numerator(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.size + c]
    }

    pub fn entry(&self, r: usize, c: usize) -> Rational {
        Rational::new(self.numerator(r, c) as i64, self.scale as i64)
    }

    pub fn positive_entries(&self) -> usize {
        self.entries.iter().filter(|&&e| e > 0).count()
    }
}

/// Completes `X` with `N − k` uniform rows. Each weighted column is poured
/// into its virtual columns in ball order, every virtual column receiving
/// exactly `k/N` from the allocation rows.
pub fn complete_bistochastic<D: Scalar>(alloc: &FractionalAllocation<D>) -> SquareBistochastic {
    let size = alloc.population() as usize;
    let k = alloc.k();
    let mut column_owner = Vec::with_capacity(size);
    let mut first = Vec::with_capacity(alloc.n());
    for (i, &w) in alloc.weights().iter().enumerate() {
        first.push(column_owner.len());
        column_owner.extend(std::iter::repeat(i).take(w as usize));
    }
    let mut entries = vec![0u64; size * size];
    // fill[i]: (virtual column offset, amount already poured into it)
    let mut fill = vec![(0usize, 0u64); alloc.n()];
    for (j, ball) in alloc.balls().iter().enumerate() {
        for &(i, mut amount) in &ball.entries {
            while amount > 0 {
                let (off, used) = fill[i];
                let take = amount.min(k as u64 - used);
                entries[j * size + first[i] + off] += take;
                amount -= take;
                fill[i] = if used + take == k as u64 { (off + 1, 0) } else { (off, used + take) };
            }
        }
    }
    for r in k..size {
        entries[r * size..(r + 1) * size].iter_mut().for_each(|e| *e = 1);
    }
    SquareBistochastic { size, scale: size as u64, entries, top_rows: k, column_owner }
}

/// `Y = Σ coefficient/scale · permutation`; `perm[r]` is the column of row `r`.
#[derive(Clone, Debug)]
pub struct BirkhoffDecomposition {
    pub size: usize,
    pub scale: u64,
    pub terms: Vec<(u64, Vec<usize>)>,
}

impl BirkhoffDecomposition {
    /// Dense numerators of `Σ λ_ℓ Y^ℓ` over `scale`.
    pub fn reconstruct(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.size * self.size];
        for (coef, perm) in &self.terms {
            for (r, &c) in perm.iter().enumerate() {
                out[r * self.size + c] += coef;
            }
        }
        out
    }
}

/// Peels permutation matrices off `Y`, each time subtracting the minimum
/// entry along a perfect matching of the positive entries. The matching is
/// repaired only where an entry dropped to zero.
pub fn decompose_permutations(y: &SquareBistochastic) -> Result<BirkhoffDecomposition> {
    let size = y.size;
    let mut entries = y.entries.clone();
    let mut adj: Vec<Vec<usize>> = (0..size).map(|r| (0..size).filter(|&c| entries[r * size + c] > 0).collect()).collect();
    let mut m = Assignment::new(size, size);
    let mut remaining = y.scale;
    let mut terms = Vec::new();
    let mut free: Vec<usize> = (0..size).collect();
    while remaining > 0 {
        for r in free.drain(..) {
            if !m.augment_row(r, &adj, |_| 1) {
                return invalid("matrix has no perfect matching on its positive entries; it is not bistochastic");
            }
        }
        let perm: Vec<usize> = (0..size).map(|r| m.col_of(r).expect("perfect matching")).collect();
        let lambda = perm.iter().enumerate().map(|(r, &c)| entries[r * size + c]).min().unwrap_or(0);
        for (r, &c) in perm.iter().enumerate() {
            let e = &mut entries[r * size + c];
            *e -= lambda;
            if *e == 0 {
                adj[r].retain(|&x| x != c);
                m.unassign(r);
                free.push(r);
            }
        }
        remaining -= lambda;
        terms.push((lambda, perm));
    }
    if entries.iter().any(|&e| e != 0) {
        return Err(Error::Internal("decomposition left mass behind".into()));
    }
    Ok(BirkhoffDecomposition { size, scale: y.scale, terms })
}

/// Decomposes `Y` and reads off the panel of every permutation: the owners
/// of the columns matched to the allocation rows.
pub fn birkhoff_decompose(y: &SquareBistochastic) -> Result<PanelDistribution> {
    let dec = decompose_permutations(y)?;
    let terms = dec
        .terms
        .into_iter()
        .map(|(mass, perm)| {
            let ball_members: Vec<usize> = perm[..y.top_rows].iter().map(|&c| y.column_owner[c]).collect();
            PanelTerm { panel: Panel::from_unsorted(ball_members.clone()), mass, ball_members }
        })
        .collect();
    Ok(PanelDistribution { k: y.top_rows, denominator: y.scale, terms })
}

/// Decomposes the compressed `k × n` allocation. Each term seats `z_i` copies
/// of point `i`, where `z_i` is the number of balls matched to it; the
/// uniform rows are implicit and only constrain `z`.
pub fn capacitated_decompose<D: Scalar>(alloc: &FractionalAllocation<D>) -> Result<PanelDistribution> {
    let (k, n) = (alloc.k(), alloc.n());
    let w = alloc.weights();
    let mut a = vec![0u64; k * n];
    for (j, ball) in alloc.balls().iter().enumerate() {
        for &(i, v) in &ball.entries {
            a[j * n + i] += v;
        }
    }
    let mut col_total: Vec<u64> = (0..n).map(|i| (0..k).map(|j| a[j * n + i]).sum()).collect();
    let mut row_adj: Vec<Vec<usize>> = (0..k).map(|j| (0..n).filter(|&i| a[j * n + i] > 0).collect()).collect();
    let mut col_adj: Vec<Vec<usize>> = (0..n).map(|i| (0..k).filter(|&j| a[j * n + i] > 0).collect()).collect();
    let mut m = Assignment::new(k, n);
    let mut t = alloc.population();
    let mut terms = Vec::new();
    while t > 0 {
        let low: Vec<u64> = (0..n).map(|i| col_total[i].saturating_sub((t - 1) * w[i])).collect();
        for i in 0..n {
            while m.load(i) < low[i] {
                if !m.augment_col(i, &col_adj, |c| low[c]) {
                    return Err(Error::Internal(format!("column {i} cannot reach its lower bound")));
                }
            }
        }
        for j in 0..k {
            if m.col_of(j).is_none() && !m.augment_row(j, &row_adj, |c| w[c]) {
                return Err(Error::Internal(format!("ball {j} cannot be matched")));
            }
        }
        let cols: Vec<usize> = (0..k).map(|j| m.col_of(j).expect("matched")).collect();
        let mut mu = t;
        for (j, &c) in cols.iter().enumerate() {
            mu = mu.min(a[j * n + c]);
        }
        for i in 0..n {
            let z = m.load(i);
            if z < w[i] {
                mu = mu.min((t * w[i] - col_total[i]) / (w[i] - z));
            }
        }
        if mu == 0 {
            return Err(Error::Internal("zero-mass term".into()));
        }
        for (j, &c) in cols.iter().enumerate() {
            a[j * n + c] -= mu;
            col_total[c] -= mu;
            if a[j * n + c] == 0 {
                row_adj[j].retain(|&x| x != c);
                col_adj[c].retain(|&x| x != j);
                m.unassign(j);
            }
        }
        t -= mu;
        terms.push(PanelTerm { panel: Panel::from_unsorted(cols.clone()), mass: mu, ball_members: cols });
    }
    if a.iter().any(|&v| v != 0) {
        return Err(Error::Internal("decomposition left mass behind".into()));
    }
    Ok(PanelDistribution { k, denominator: alloc.population(), terms })
}

/// Which decomposition [`fgc_distribution_with`] runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Full route up to the gate, capacitated above it.
    Auto,
    /// Square completion and permutation decomposition; refused above the gate.
    Full,
    /// Compressed decomposition; any size.
    Capacitated,
}

#[derive(Clone, Copy, Debug)]
pub struct FgcOptions {
    pub route: Route,
    /// Largest population decomposed through the `N × N` matrix.
    pub gate: u64,
}

impl Default for FgcOptions {
    fn default() -> Self {
        FgcOptions { route: Route::Auto, gate: 2000 }
    }
}

/// FairGreedyCapture: allocation followed by decomposition, with the
/// default options.
pub fn fgc_distribution<D: Scalar>(inst: &MetricInstance<D>, k: usize) -> Result<PanelDistribution> {
    fgc_distribution_with(inst, k, &FgcOptions::default())
}

pub fn fgc_distribution_with<D: Scalar>(inst: &MetricInstance<D>, k: usize, opts: &FgcOptions) -> Result<PanelDistribution> {
    let alloc = fractional_allocation(inst, k)?;
    distribution_from_allocation(&alloc, opts)
}

pub fn distribution_from_allocation<D: Scalar>(alloc: &FractionalAllocation<D>, opts: &FgcOptions) -> Result<PanelDistribution> {
    let big_n = alloc.population();
    let full = match opts.route {
        Route::Auto => big_n <= opts.gate,
        Route::Full => {
            if big_n > opts.gate {
                return Err(Error::TooLarge { operation: "full Birkhoff decomposition", size: big_n as usize, limit: opts.gate as usize });
            }
            true
        }
        Route::Capacitated => false,
    };
    let dist = if full { birkhoff_decompose(&complete_bistochastic(alloc))? } else { capacitated_decompose(alloc)? };
    for (t, term) in dist.terms.iter().enumerate() {
        for (j, &i) in term.ball_members.iter().enumerate() {
            if alloc.numerator(j, i) == 0 {
                return Err(Error::Internal(format!("term {t} seats {i} for ball {j} outside its support")));
            }
        }
    }
    Ok(dist)
}

/// One panel of a distribution with probability `mass / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PanelTerm {
    pub panel: Panel,
    pub mass: u64,
    /// Point seated for each ball, in ball order; empty when the
    /// distribution did not come from an allocation.
    pub ball_members: Vec<usize>,
}

/// A finite distribution over panels with exact probabilities. Terms keep
/// decomposition order and the same panel may occur in several terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PanelDistribution {
    k: usize,
    denominator: u64,
    terms: Vec<PanelTerm>,
}

impl PanelDistribution {
    /// Builds a distribution from explicit probabilities, which must be
    /// positive and sum to one.
    pub fn new(entries: Vec<(Panel, Rational)>) -> Result<Self> {
        let k = match entries.first() {
            Some((p, _)) => p.len(),
            None => return invalid("a distribution needs at least one panel"),
        };
        let mut denominator: i64 = 1;
        for (p, lambda) in &entries {
            if p.len() != k {
                return invalid("all panels must have the same size");
            }
            if *lambda <= Rational::from_integer(0) {
                return invalid("probabilities must be positive");
            }
            denominator = denominator.lcm(lambda.denom());
        }
        let terms: Vec<PanelTerm> = entries
            .into_iter()
            .map(|(panel, l)| PanelTerm { panel, mass: (l.numer() * (denominator / l.denom())) as u64, ball_members: Vec::new() })
            .collect();
        if terms.iter().map(|t| t.mass).sum::<u64>() != denominator as u64 {
            return invalid("probabilities must sum to one");
        }
        Ok(PanelDistribution { k, denominator: denominator as u64, terms })
    }

    /// A distribution concentrated on one panel.
    pub fn point(panel: Panel) -> Self {
        let k = panel.len();
        PanelDistribution { k, denominator: 1, terms: vec![PanelTerm { panel, mass: 1, ball_members: Vec::new() }] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn terms(&self) -> &[PanelTerm] {
        &self.terms
    }

    /// Number of terms `L`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn probability(&self, t: usize) -> Rational {
        Rational::new(self.terms[t].mass as i64, self.denominator as i64)
    }

    pub fn total(&self) -> Rational {
        Rational::new(self.terms.iter().map(|t| t.mass).sum::<u64>() as i64, self.denominator as i64)
    }

    /// Expected number of seats of every point `0..n`.
    pub fn marginals(&self, n: usize) -> Vec<Rational> {
        let mut seats = vec![0u64; n];
        for t in &self.terms {
            for &m in t.panel.members() {
                seats[m] += t.mass;
            }
        }
        seats.into_iter().map(|s| Rational::new(s as i64, self.denominator as i64)).collect()
    }

    /// Distinct panels with their total probability, sorted by panel.
    pub fn support(&self) -> Vec<(Panel, Rational)> {
        let mut merged: std::collections::BTreeMap<&Panel, u64> = std::collections::BTreeMap::new();
        for t in &self.terms {
            *merged.entry(&t.panel).or_default() += t.mass;
        }
        merged.into_iter().map(|(p, m)| (p.clone(), Rational::new(m as i64, self.denominator as i64))).collect()
    }

    /// Draws a panel with an exact integer draw over the masses.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> &Panel {
        let mut u = rng.gen_range(0..self.denominator);
        for t in &self.terms {
            if u < t.mass {
                return &t.panel;
            }
            u -= t.mass;
        }
        &self.terms[self.terms.len() - 1].panel
    }

    /// One `lambda numerator/denominator : id id ...` line per term.
    pub fn write_dump<W: Write>(&self, mut out: W) -> Result<()> {
        for t in 0..self.terms.len() {
            let p = self.probability(t);
            writeln!(out, "lambda {}/{} : {}", p.numer(), p.denom(), self.terms[t].panel)?;
        }
        Ok(())
    }
}

/// Samples one panel with a ChaCha stream seeded by `seed`.
pub fn sample_panel(dist: &PanelDistribution, seed: u64) -> Panel {
    dist.sample(&mut ChaCha8Rng::seed_from_u64(seed)).clone()
}
