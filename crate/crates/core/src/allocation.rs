//! Fractional allocation of the population into `k` balls.
//!
//! Every individual starts with unallocated mass `k·w_i/N`. Balls grow around
//! every point at the same rate; as soon as a ball holds unallocated mass of
//! at least one it is opened and exactly one unit of mass is moved into a new
//! row of `X`. Continuous growth is simulated exactly by visiting the sorted
//! pairwise distances: at each radius the centers whose ball just grew are
//! scanned in ascending id, and a center is re-checked after each opening
//! since it may qualify more than once.
//!
//! Masses are kept as integers scaled by `N`, so every entry of `X` is an
//! exact multiple of `1/N`.

use std::io::Write;

use crate::error::{invalid, Error, Result};
use crate::metric::MetricInstance;
use crate::scalar::{cmp_scalar, Rational, Scalar};

/// One opened ball: a row of `X`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball<D> {
    pub center: usize,
    /// Radius at which the ball was opened.
    pub radius: D,
    /// `(individual, numerator)` pairs; the entry is `numerator / N`.
    pub entries: Vec<(usize, u64)>,
}

/// The `k × n` matrix `X` with unit row sums and column sums `k·w_i/N`.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalAllocation<D> {
    n: usize,
    k: usize,
    population: u64,
    weights: Vec<u64>,
    balls: Vec<Ball<D>>,
}

impl<D: Scalar> FractionalAllocation<D> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Common denominator `N` of all entries.
    pub fn population(&self) -> u64 {
        self.population
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Balls in opening order.
    pub fn balls(&self) -> &[Ball<D>] {
        &self.balls
    }

    /// Numerator of `X[j][i]` over `N`.
    pub fn numerator(&self, j: usize, i: usize) -> u64 {
        self.balls[j].entries.iter().find(|e| e.0 == i).map_or(0, |e| e.1)
    }

    pub fn entry(&self, j: usize, i: usize) -> Rational {
        Rational::new(self.numerator(j, i) as i64, self.population as i64)
    }

    pub fn row_sum(&self, j: usize) -> Rational {
        let s: u64 = self.balls[j].entries.iter().map(|e| e.1).sum();
        Rational::new(s as i64, self.population as i64)
    }

    pub fn column_sum(&self, i: usize) -> Rational {
        let s: u64 = self.balls.iter().map(|b| b.entries.iter().filter(|e| e.0 == i).map(|e| e.1).sum::<u64>()).sum();
        Rational::new(s as i64, self.population as i64)
    }

    /// `b_i = { j : X[j][i] > 0 }` for every individual.
    pub fn memberships(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for (j, b) in self.balls.iter().enumerate() {
            for &(i, a) in &b.entries {
                if a > 0 {
                    out[i].push(j);
                }
            }
        }
        out
    }

    /// Ball memberships as CSV with columns `id,balls`; balls are separated
    /// by `;`. A panel with at least one member from every ball keeps the
    /// ex post core guarantee, so these columns can be used as quotas.
    pub fn export_ball_quotas<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "id,balls")?;
        for (i, bs) in self.memberships().iter().enumerate() {
            let list: Vec<String> = bs.iter().map(|b| b.to_string()).collect();
            writeln!(out, "{i},{}", list.join(";"))?;
        }
        Ok(())
    }

    /// Text dump: `ball j center c radius r` lines followed by one
    /// `row col numerator/denominator` line per positive entry.
    pub fn write_dump<W: Write>(&self, mut out: W) -> Result<()> {
        for (j, b) in self.balls.iter().enumerate() {
            writeln!(out, "ball {j} center {} radius {}", b.center, b.radius)?;
        }
        for (j, b) in self.balls.iter().enumerate() {
            let mut entries = b.entries.clone();
            entries.sort_unstable();
            for (i, a) in entries {
                let r = Rational::new(a as i64, self.population as i64);
                writeln!(out, "{j} {i} {}/{}", r.numer(), r.denom())?;
            }
        }
        Ok(())
    }
}

/// Builds the fractional allocation for panels of size `k`.
pub fn fractional_allocation<D: Scalar>(inst: &MetricInstance<D>, k: usize) -> Result<FractionalAllocation<D>> {
    let big_n = inst.population();
    if k == 0 || k as u64 > big_n {
        return invalid(format!("panel size k = {k} must lie in 1..={big_n}"));
    }
    let n = inst.n();
    let mut unallocated: Vec<u64> = inst.weights().iter().map(|&w| w * k as u64).collect();
    let neighbours: Vec<Vec<usize>> = (0..n).map(|c| inst.neighbours_by_distance(c)).collect();

    // (center, position in its neighbour list), sorted by distance
    let mut events: Vec<(usize, usize)> = (0..n).flat_map(|c| (0..n).map(move |t| (c, t))).collect();
    events.sort_by(|a, b| cmp_scalar(inst.dist(a.0, neighbours[a.0][a.1]), inst.dist(b.0, neighbours[b.0][b.1])));

    let mut reach = vec![0usize; n];
    let mut balls: Vec<Ball<D>> = Vec::with_capacity(k);
    let mut grown = Vec::new();
    let mut start = 0;
    while start < events.len() && balls.len() < k {
        let (c0, t0) = events[start];
        let radius = inst.dist(c0, neighbours[c0][t0]).clone();
        let mut end = start;
        grown.clear();
        while end < events.len() {
            let (c, t) = events[end];
            if *inst.dist(c, neighbours[c][t]) != radius {
                break;
            }
            if t + 1 > reach[c] {
                reach[c] = t + 1;
                grown.push(c);
            }
            end += 1;
        }
        start = end;
        grown.sort_unstable();
        grown.dedup();
        for &c in &grown {
            while balls.len() < k {
                let captured = &neighbours[c][..reach[c]];
                let mass: u64 = captured.iter().map(|&i| unallocated[i]).sum();
                if mass < big_n {
                    break;
                }
                let mut remaining = big_n;
                let mut entries = Vec::new();
                for &i in captured {
                    if remaining == 0 {
                        break;
                    }
                    let take = remaining.min(unallocated[i]);
                    if take > 0 {
                        unallocated[i] -= take;
                        remaining -= take;
                        entries.push((i, take));
                    }
                }
                balls.push(Ball { center: c, radius: radius.clone(), entries });
            }
        }
    }
    if balls.len() != k || unallocated.iter().any(|&y| y != 0) {
        return Err(Error::Internal(format!("opened {} of {k} balls", balls.len())));
    }
    Ok(FractionalAllocation { n, k, population: big_n, weights: inst.weights().to_vec(), balls })
}
