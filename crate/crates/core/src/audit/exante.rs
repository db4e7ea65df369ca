use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::birkhoff::PanelDistribution;
use crate::error::{invalid, Error, Result};
use crate::metric::{MetricInstance, Panel};
use crate::scalar::{Rational, Scalar};
use crate::selectors::Selector;

use super::combinatorics::binomial;
use super::oracle::for_each_multiset;

/// Most uniform panels (`C(N, k)`) enumerated by [`UniformExAnte`].
pub const UNIFORM_PANEL_LIMIT: u64 = 250_000;

/// Where the panel is drawn from in an ex ante evaluation.
#[derive(Clone, Copy, Debug)]
pub enum ExAnteSource<'a> {
    /// Uniform over all `k`-seat panels of the weight-expanded population.
    Uniform { k: usize },
    Distribution(&'a PanelDistribution),
}

/// Every uniform panel with its multiplicity and q-costs, reusable across
/// alternatives.
pub struct UniformExAnte<'a, D> {
    inst: &'a MetricInstance<D>,
    q: usize,
    panels: Vec<(u64, Vec<D>)>,
    total: u64,
}

impl<'a, D: Scalar> UniformExAnte<'a, D> {
    pub fn new(inst: &'a MetricInstance<D>, k: usize, q: usize) -> Result<Self> {
        if k == 0 || k as u64 > inst.population() {
            return invalid(format!("panel size k = {k} must lie in 1..={}", inst.population()));
        }
        if q == 0 || q > k {
            return invalid(format!("rank q = {q} must lie in 1..={k}"));
        }
        let count = binomial(inst.population(), k as u64);
        if count > UNIFORM_PANEL_LIMIT.into() {
            return Err(Error::TooLarge {
                operation: "uniform ex ante enumeration",
                size: usize::try_from(count).unwrap_or(usize::MAX),
                limit: UNIFORM_PANEL_LIMIT as usize,
            });
        }
        let mut panels = Vec::new();
        let mut total = 0u64;
        for_each_multiset(inst.weights(), k, &mut |seats| {
            // number of seat subsets of the expanded population mapping onto this multiset
            let mut mult = 1u64;
            let mut s = 0;
            while s < seats.len() {
                let run = seats[s..].iter().take_while(|&&x| x == seats[s]).count() as u64;
                mult *= small_binomial(inst.weight(seats[s]), run);
                s += run as usize;
            }
            total += mult;
            let costs = (0..inst.n()).map(|i| inst.q_cost_of(i, seats, q)).collect();
            panels.push((mult, costs));
        });
        Ok(UniformExAnte { inst, q, panels, total })
    }

    /// Number of distinct seat multisets.
    pub fn len(&self) -> usize {
        self.panels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.panels.is_empty()
    }

    /// `E[V_q(P, P', α)]` for uniform `P`.
    pub fn expected_count(&self, alternative: &Panel, alpha: &D) -> Result<Rational> {
        check_alternative(self.inst, alternative, alpha, self.q)?;
        let alt: Vec<D> = (0..self.inst.n()).map(|i| self.inst.q_cost_of(i, alternative.members(), self.q)).collect();
        let w = self.inst.weights();
        let mut sum = 0u128;
        for (mult, costs) in &self.panels {
            let v: u64 = (0..costs.len()).filter(|&i| prefers(&costs[i], &alt[i], alpha)).map(|i| w[i]).sum();
            sum += *mult as u128 * v as u128;
        }
        ratio(sum, self.total as u128)
    }
}

fn small_binomial(n: u64, r: u64) -> u64 {
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn prefers<D: Scalar>(cur: &D, alt: &D, alpha: &D) -> bool {
    !cur.is_zero() && *cur > alpha.clone() * alt.clone()
}

fn check_alternative<D: Scalar>(inst: &MetricInstance<D>, alternative: &Panel, alpha: &D, q: usize) -> Result<()> {
    if alternative.len() < q {
        return invalid(format!("alternative has {} seats, fewer than q = {q}", alternative.len()));
    }
    if *alpha < D::zero() {
        return invalid(format!("alpha = {alpha} must be nonnegative"));
    }
    inst.check_panel(alternative)
}

fn ratio(num: u128, den: u128) -> Result<Rational> {
    let g = gcd(num, den);
    let (n, d) = (num / g, den / g);
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(n), Ok(d)) => Ok(Rational::new(n, d)),
        _ => Err(Error::Internal(format!("expectation {n}/{d} overflows 64-bit rationals"))),
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Exact `E_P[V_q(P, P', α)]` as a rational.
pub fn exante_exact<D: Scalar>(
    inst: &MetricInstance<D>,
    source: ExAnteSource<'_>,
    alternative: &Panel,
    alpha: &D,
    q: usize,
) -> Result<Rational> {
    match source {
        ExAnteSource::Uniform { k } => UniformExAnte::new(inst, k, q)?.expected_count(alternative, alpha),
        ExAnteSource::Distribution(dist) => {
            if q == 0 || q > dist.k() {
                return invalid(format!("rank q = {q} must lie in 1..={}", dist.k()));
            }
            check_alternative(inst, alternative, alpha, q)?;
            let mut sum = 0u128;
            for term in dist.terms() {
                inst.check_panel(&term.panel)?;
                let v = inst.preference_count_of(term.panel.members(), alternative.members(), alpha, q);
                sum += term.mass as u128 * v as u128;
            }
            ratio(sum, dist.denominator() as u128)
        }
    }
}

/// Sample mean of `V_q` with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: usize,
}

/// Estimates `E[V_q(P, P', α)]` by drawing `trials` panels from `selector`.
pub fn exante_monte_carlo<D: Scalar>(
    inst: &MetricInstance<D>,
    selector: &dyn Selector,
    alternative: &Panel,
    alpha: &D,
    q: usize,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if trials == 0 {
        return invalid("at least one trial is required");
    }
    if q == 0 || q > selector.k() {
        return invalid(format!("rank q = {q} must lie in 1..={}", selector.k()));
    }
    check_alternative(inst, alternative, alpha, q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sum, mut sq) = (0f64, 0f64);
    for _ in 0..trials {
        let p = selector.sample(&mut rng)?;
        let v = inst.preference_count_of(p.members(), alternative.members(), alpha, q) as f64;
        sum += v;
        sq += v * v;
    }
    let t = trials as f64;
    let mean = sum / t;
    let stderr = if trials > 1 { ((sq - t * mean * mean).max(0.0) / (t - 1.0) / t).sqrt() } else { 0.0 };
    Ok(MonteCarloEstimate { mean, stderr, trials })
}
