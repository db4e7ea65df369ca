use crate::birkhoff::PanelDistribution;
use crate::error::{invalid, Error, Result};
use crate::metric::{ceil_div, MetricInstance, Panel};
use crate::scalar::{Improvement, Scalar};

use super::check_panel_args;

/// Largest population the enumerating oracles accept unless told otherwise.
pub const DEFAULT_POPULATION_LIMIT: u64 = 14;

/// Outcome of an exact core evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct CoreViolationResult<D> {
    /// Minimal `β` such that the panel is in the `β`-q-core.
    pub alpha_star: Improvement<D>,
    /// Alternative panel attaining `alpha_star` (first in enumeration order).
    pub witness_panel: Panel,
    /// Deviating coalition: the individuals with the largest ratios against
    /// the witness, reaching the entitled weight.
    pub witness_set: Vec<usize>,
    /// Entitled weight `⌈|P'|·N/k⌉` for the witness.
    pub threshold: u64,
    /// Number of alternatives enumerated.
    pub alternatives: usize,
}

/// Calls `f` with every seat multiset of `size` points (sorted ids), where
/// point `i` may be used at most `weights[i]` times.
pub(crate) fn for_each_multiset(weights: &[u64], size: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(weights: &[u64], start: usize, left: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if left == 0 {
            f(cur);
            return;
        }
        for i in start..weights.len() {
            let used = cur.iter().rev().take_while(|&&c| c == i).count() as u64;
            if used >= weights[i] {
                continue;
            }
            cur.push(i);
            rec(weights, i, left - 1, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(size);
    rec(weights, 0, size, &mut cur, f);
}

pub(crate) fn check_population<D: Scalar>(inst: &MetricInstance<D>, limit: u64, operation: &'static str) -> Result<()> {
    if inst.population() > limit {
        return Err(Error::TooLarge { operation, size: inst.population() as usize, limit: limit as usize });
    }
    Ok(())
}

struct Alternative<D> {
    seats: Vec<usize>,
    costs: Vec<D>,
    threshold: u64,
}

/// Precomputed alternatives for repeated exact evaluations on one instance.
pub struct ExactOracle<'a, D> {
    inst: &'a MetricInstance<D>,
    k: usize,
    q: usize,
    alternatives: Vec<Alternative<D>>,
}

impl<'a, D: Scalar> ExactOracle<'a, D> {
    /// Enumerates every alternative with `q ≤ |P'| ≤ min(k, max_size)`.
    /// Refuses populations above [`DEFAULT_POPULATION_LIMIT`].
    pub fn new(inst: &'a MetricInstance<D>, k: usize, q: usize, max_size: usize) -> Result<Self> {
        Self::with_limit(inst, k, q, max_size, DEFAULT_POPULATION_LIMIT)
    }

    pub fn with_limit(inst: &'a MetricInstance<D>, k: usize, q: usize, max_size: usize, limit: u64) -> Result<Self> {
        check_population(inst, limit, "exact core oracle")?;
        let big_n = inst.population();
        if k == 0 || k as u64 > big_n {
            return invalid(format!("panel size k = {k} must lie in 1..={big_n}"));
        }
        if q == 0 || q > k {
            return invalid(format!("rank q = {q} must lie in 1..={k}"));
        }
        let top = k.min(max_size);
        if top < q {
            return invalid(format!("max_size = {max_size} leaves no alternative of size at least q = {q}"));
        }
        let mut alternatives = Vec::new();
        for size in q..=top {
            let threshold = ceil_div(size as u64 * big_n, k as u64);
            for_each_multiset(inst.weights(), size, &mut |seats| {
                let costs = (0..inst.n()).map(|i| inst.q_cost_of(i, seats, q)).collect();
                alternatives.push(Alternative { seats: seats.to_vec(), costs, threshold });
            });
        }
        Ok(ExactOracle { inst, k, q, alternatives })
    }

    pub fn alternatives(&self) -> usize {
        self.alternatives.len()
    }

    /// Exact `α*` of a realized panel.
    pub fn evaluate(&self, panel: &Panel) -> Result<CoreViolationResult<D>> {
        check_panel_args(self.inst, panel, self.k, self.q)?;
        let costs: Vec<D> = (0..self.inst.n()).map(|i| self.inst.q_cost_of(i, panel.members(), self.q)).collect();
        Ok(self.evaluate_costs(&costs))
    }

    /// `α*` against arbitrary per-point costs (realized or expected).
    pub(crate) fn evaluate_costs(&self, costs: &[D]) -> CoreViolationResult<D> {
        let weights = self.inst.weights();
        let mut best: Option<(Improvement<D>, usize, Vec<usize>)> = None;
        let mut ratios: Vec<(Improvement<D>, usize)> = Vec::with_capacity(costs.len());
        for (a, alt) in self.alternatives.iter().enumerate() {
            ratios.clear();
            ratios.extend(costs.iter().zip(&alt.costs).enumerate().map(|(i, (c, ca))| (Improvement::of(c, ca), i)));
            ratios.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal).then(x.1.cmp(&y.1)));
            let mut seen = 0u64;
            let mut cut = ratios.len();
            for (pos, (_, i)) in ratios.iter().enumerate() {
                seen += weights[*i];
                if seen >= alt.threshold {
                    cut = pos;
                    break;
                }
            }
            // threshold ≤ N, so the cut is always reached
            let value = ratios[cut].0.clone();
            if best.as_ref().map_or(true, |b| value > b.0) {
                best = Some((value, a, ratios[..=cut].iter().map(|r| r.1).collect()));
            }
        }
        let (alpha_star, a, mut witness_set) = best.expect("at least one alternative");
        witness_set.sort_unstable();
        let alt = &self.alternatives[a];
        CoreViolationResult {
            alpha_star,
            witness_panel: Panel::from_sorted(alt.seats.clone()),
            witness_set,
            threshold: alt.threshold,
            alternatives: self.alternatives.len(),
        }
    }
}

/// Exact ex post core violation `α*` of `panel`, enumerating alternatives
/// with `q ≤ |P'| ≤ min(k, max_size)`.
pub fn exact_core_violation<D: Scalar>(
    inst: &MetricInstance<D>,
    panel: &Panel,
    k: usize,
    q: usize,
    max_size: usize,
) -> Result<CoreViolationResult<D>> {
    ExactOracle::new(inst, k, q, max_size)?.evaluate(panel)
}

/// `E[c_q(i, P)]` for every point under `dist`.
pub fn expected_costs<D: Scalar>(inst: &MetricInstance<D>, dist: &PanelDistribution, q: usize) -> Result<Vec<D>> {
    if q == 0 || q > dist.k() {
        return invalid(format!("rank q = {q} must lie in 1..={}", dist.k()));
    }
    let mut out = vec![D::zero(); inst.n()];
    for (t, term) in dist.terms().iter().enumerate() {
        inst.check_panel(&term.panel)?;
        let p = D::from_rational(&dist.probability(t));
        for (i, e) in out.iter_mut().enumerate() {
            *e = e.clone() + p.clone() * inst.q_cost_of(i, term.panel.members(), q);
        }
    }
    Ok(out)
}

/// Minimal `β` such that no coalition with an affordable alternative improves
/// its expected q-cost by more than `β` for all of its members.
pub fn expected_cost_core_violation<D: Scalar>(
    inst: &MetricInstance<D>,
    dist: &PanelDistribution,
    k: usize,
    q: usize,
) -> Result<CoreViolationResult<D>> {
    if dist.k() != k {
        return invalid(format!("distribution selects {} seats, expected k = {k}", dist.k()));
    }
    let oracle = ExactOracle::new(inst, k, q, k)?;
    let costs = expected_costs(inst, dist, q)?;
    Ok(oracle.evaluate_costs(&costs))
}
