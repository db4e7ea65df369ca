use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::metric::{MetricInstance, Panel};
use crate::scalar::{cmp_scalar, Scalar};

use super::oracle::{check_population, for_each_multiset, DEFAULT_POPULATION_LIMIT};

/// How [`opt_social_cost`] searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SocialCostMethod {
    /// Exhaustive; populations up to 14 only.
    Brute,
    /// Single-seat swap local search from a density heuristic plus
    /// `restarts` uniformly random starting panels.
    Greedy { restarts: usize, seed: u64 },
}

impl Default for SocialCostMethod {
    fn default() -> Self {
        SocialCostMethod::Greedy { restarts: 5, seed: 0 }
    }
}

/// `Σ_i w_i · c_q(i, P)`.
pub fn social_cost<D: Scalar>(inst: &MetricInstance<D>, panel: &Panel, q: usize) -> Result<D> {
    if q == 0 || q > panel.len() {
        return invalid(format!("rank q = {q} must lie in 1..={}", panel.len()));
    }
    inst.check_panel(panel)?;
    Ok(total_cost(inst, panel.members(), q))
}

fn total_cost<D: Scalar>(inst: &MetricInstance<D>, seats: &[usize], q: usize) -> D {
    (0..inst.n()).fold(D::zero(), |acc, i| acc + weighted(inst.weight(i), inst.q_cost_of(i, seats, q)))
}

fn weighted<D: Scalar>(w: u64, c: D) -> D {
    if w == 1 {
        c
    } else {
        D::from_u64(w).expect("weight representable") * c
    }
}

/// Lowest q-social cost panel found by `method`, with its cost.
pub fn opt_social_cost<D: Scalar>(inst: &MetricInstance<D>, k: usize, q: usize, method: SocialCostMethod) -> Result<(Panel, D)> {
    if k == 0 || k as u64 > inst.population() {
        return invalid(format!("panel size k = {k} must lie in 1..={}", inst.population()));
    }
    if q == 0 || q > k {
        return invalid(format!("rank q = {q} must lie in 1..={k}"));
    }
    match method {
        SocialCostMethod::Brute => {
            check_population(inst, DEFAULT_POPULATION_LIMIT, "brute-force social cost")?;
            let mut best: Option<(Vec<usize>, D)> = None;
            for_each_multiset(inst.weights(), k, &mut |seats| {
                let c = total_cost(inst, seats, q);
                if best.as_ref().map_or(true, |b| c < b.1) {
                    best = Some((seats.to_vec(), c));
                }
            });
            let (seats, c) = best.expect("k ≤ N leaves a panel");
            Ok((Panel::from_sorted(seats), c))
        }
        SocialCostMethod::Greedy { restarts, seed } => {
            let mut best = LocalSearch::new(inst, q, density_start(inst, k, q)).run();
            let owners: Vec<usize> = (0..inst.n()).flat_map(|i| std::iter::repeat(i).take(inst.weight(i) as usize)).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..restarts {
                let mut pool = owners.clone();
                let (picked, _) = pool.partial_shuffle(&mut rng, k);
                let found = LocalSearch::new(inst, q, picked.to_vec()).run();
                if found.1 < best.1 {
                    best = found;
                }
            }
            Ok((Panel::from_unsorted(best.0), best.1))
        }
    }
}

/// Points ordered by the distance to their q-th nearest seat of the whole
/// population, one seat each per round until `k` seats are taken.
fn density_start<D: Scalar>(inst: &MetricInstance<D>, k: usize, q: usize) -> Vec<usize> {
    let everyone: Vec<usize> = (0..inst.n()).flat_map(|i| std::iter::repeat(i).take(inst.weight(i) as usize)).collect();
    let q = q.min(everyone.len());
    let dens: Vec<D> = (0..inst.n()).map(|i| inst.q_cost_of(i, &everyone, q)).collect();
    let mut order: Vec<usize> = (0..inst.n()).collect();
    order.sort_by(|&a, &b| cmp_scalar(&dens[a], &dens[b]).then(a.cmp(&b)));
    let mut seats = Vec::with_capacity(k);
    let mut round = 0u64;
    while seats.len() < k {
        for &i in &order {
            if seats.len() < k && inst.weight(i) > round {
                seats.push(i);
            }
        }
        round += 1;
    }
    seats
}

struct LocalSearch<'a, D> {
    inst: &'a MetricInstance<D>,
    q: usize,
    seats: Vec<usize>,
    used: Vec<u64>,
    // per point: distances to the seats in ascending order, and the rank of every seat
    sorted: Vec<Vec<D>>,
    rank: Vec<Vec<usize>>,
    cost: Vec<D>,
    total: D,
}

impl<'a, D: Scalar> LocalSearch<'a, D> {
    fn new(inst: &'a MetricInstance<D>, q: usize, seats: Vec<usize>) -> Self {
        let mut used = vec![0u64; inst.n()];
        for &s in &seats {
            used[s] += 1;
        }
        let mut ls = LocalSearch { inst, q, seats, used, sorted: Vec::new(), rank: Vec::new(), cost: Vec::new(), total: D::zero() };
        ls.rebuild();
        ls
    }

    fn rebuild(&mut self) {
        let (inst, k) = (self.inst, self.seats.len());
        self.sorted.clear();
        self.rank.clear();
        for i in 0..inst.n() {
            let row = inst.row(i);
            let mut pos: Vec<usize> = (0..k).collect();
            pos.sort_by(|&a, &b| cmp_scalar(&row[self.seats[a]], &row[self.seats[b]]).then(a.cmp(&b)));
            let mut rank = vec![0; k];
            for (r, &p) in pos.iter().enumerate() {
                rank[p] = r;
            }
            self.sorted.push(pos.iter().map(|&p| row[self.seats[p]].clone()).collect());
            self.rank.push(rank);
        }
        self.cost = self.sorted.iter().map(|s| s[self.q - 1].clone()).collect();
        self.total = (0..inst.n()).fold(D::zero(), |acc, i| acc + weighted(inst.weight(i), self.cost[i].clone()));
    }

    /// q-cost of `i` after seat position `r` is replaced by point `p`.
    fn swapped_cost(&self, i: usize, r: usize, p: usize) -> D {
        let v = &self.sorted[i];
        let rho = self.rank[i][r];
        // the list without the removed seat
        let at = |t: usize| if t < rho { v.get(t) } else { v.get(t + 1) };
        let d = &self.inst.row(i)[p];
        let upper = match at(self.q - 1) {
            Some(a) if a < d => a,
            _ => d,
        };
        match self.q.checked_sub(2).and_then(at) {
            Some(b) if b > upper => b.clone(),
            _ => upper.clone(),
        }
    }

    fn improves(&self, candidate: &D) -> bool {
        if *candidate >= self.total {
            return false;
        }
        let gap = (self.total.clone() - candidate.clone()).as_f64();
        gap > 1e-12 * self.total.as_f64().abs()
    }

    /// First-improvement swaps, resuming the scan after each accepted move,
    /// until a full cycle over (seat, point) pairs finds nothing.
    fn run(mut self) -> (Vec<usize>, D) {
        let (n, k) = (self.inst.n(), self.seats.len());
        let moves = k * n;
        let mut idx = 0;
        let mut since = 0;
        while since < moves {
            let (r, p) = (idx / n, idx % n);
            idx = (idx + 1) % moves;
            since += 1;
            if p == self.seats[r] || self.used[p] >= self.inst.weight(p) {
                continue;
            }
            let cand = (0..n).fold(D::zero(), |acc, i| acc + weighted(self.inst.weight(i), self.swapped_cost(i, r, p)));
            if self.improves(&cand) {
                self.used[self.seats[r]] -= 1;
                self.used[p] += 1;
                self.seats[r] = p;
                self.rebuild();
                since = 0;
            }
        }
        (self.seats, self.total)
    }
}
