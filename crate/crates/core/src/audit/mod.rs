//! Measuring how well a panel represents the population.
//!
//! [`audit_panel`] is the polynomial auditing algorithm: every point `j`
//! proposes the panel of itself and its `q − 1` nearest neighbours, and the
//! largest entitled order statistic of the cost ratios is reported. The
//! exact oracles enumerate alternative panels and are meant for small
//! populations.

mod combinatorics;
mod exante;
mod oracle;
mod partition;
mod social;

pub use combinatorics::{binomial, chu_vandermonde_check, exante_uniform_bound};
pub use exante::{exante_exact, exante_monte_carlo, ExAnteSource, MonteCarloEstimate, UniformExAnte, UNIFORM_PANEL_LIMIT};
pub use oracle::{exact_core_violation, expected_cost_core_violation, expected_costs, CoreViolationResult, ExactOracle, DEFAULT_POPULATION_LIMIT};
pub use partition::{partition_by_topq, AnchorMode, PartitionResult};
pub use social::{opt_social_cost, social_cost, SocialCostMethod};

use std::io::Write;

use crate::error::{invalid, Result};
use crate::metric::{ceil_div, MetricInstance, Panel};
use crate::scalar::{weighted_rank_desc, Improvement, Scalar};

/// Audit result for one proposing center.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterAudit<D> {
    pub center: usize,
    /// `P̂_j`: the center and its `q − 1` nearest seats.
    pub panel: Panel,
    pub alpha: Improvement<D>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport<D> {
    pub k: usize,
    pub q: usize,
    pub alpha_hat: Improvement<D>,
    /// Center attaining `alpha_hat` (lowest id on ties).
    pub argmax: usize,
    pub centers: Vec<CenterAudit<D>>,
}

impl<D: Scalar> AuditReport<D> {
    /// `key = value` lines.
    pub fn write_summary<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "k = {}", self.k)?;
        writeln!(out, "q = {}", self.q)?;
        writeln!(out, "alpha_hat = {}", self.alpha_hat)?;
        writeln!(out, "unbounded = {}", self.alpha_hat.is_unbounded())?;
        writeln!(out, "argmax_center = {}", self.argmax)?;
        writeln!(out, "witness_panel = {}", self.centers[self.argmax].panel)?;
        Ok(())
    }

    /// CSV with columns `center,alpha,panel`; panel ids are separated by `;`.
    pub fn write_centers_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "center,alpha,panel")?;
        for c in &self.centers {
            let ids: Vec<String> = c.panel.members().iter().map(|m| m.to_string()).collect();
            writeln!(out, "{},{},{}", c.center, c.alpha, ids.join(";"))?;
        }
        Ok(())
    }
}

/// `P̂_j`: one seat of `j` followed by the `q − 1` nearest other seats,
/// ordered by distance, then point id, then seat index.
pub(crate) fn nearest_panel<D: Scalar>(inst: &MetricInstance<D>, j: usize, q: usize) -> Panel {
    // walking points by (distance, id) and taking their seats in index order
    // visits seats in exactly the (distance, id, seat) order
    let mut seats = vec![j];
    let mut left = q - 1;
    for i in inst.neighbours_by_distance(j) {
        if left == 0 {
            break;
        }
        let avail = inst.weight(i) - u64::from(i == j);
        let take = (avail.min(left as u64)) as usize;
        seats.extend(std::iter::repeat(i).take(take));
        left -= take;
    }
    Panel::from_unsorted(seats)
}

pub(crate) fn check_panel_args<D: Scalar>(inst: &MetricInstance<D>, panel: &Panel, k: usize, q: usize) -> Result<()> {
    if panel.len() != k {
        return invalid(format!("panel has {} seats, expected k = {k}", panel.len()));
    }
    if q == 0 || q > k {
        return invalid(format!("rank q = {q} must lie in 1..={k}"));
    }
    inst.check_panel(panel)
}

/// The auditing algorithm: `α̂ = max_j α̂_j`, where `α̂_j` is the
/// `⌈qN/k⌉`-th largest weighted ratio `c_q(i, P) / c_q(i, P̂_j)`.
pub fn audit_panel<D: Scalar>(inst: &MetricInstance<D>, panel: &Panel, k: usize, q: usize) -> Result<AuditReport<D>> {
    check_panel_args(inst, panel, k, q)?;
    let big_n = inst.population();
    if q as u64 > big_n {
        return invalid(format!("rank q = {q} exceeds the population {big_n}"));
    }
    let rank = ceil_div(q as u64 * big_n, k as u64);
    let costs: Vec<D> = (0..inst.n()).map(|i| inst.q_cost_of(i, panel.members(), q)).collect();
    let mut centers: Vec<CenterAudit<D>> = Vec::with_capacity(inst.n());
    let mut argmax = 0;
    for j in 0..inst.n() {
        let alt = nearest_panel(inst, j, q);
        let ratios = inst.improvements(&costs, alt.members(), q);
        let alpha = weighted_rank_desc(ratios, rank).expect("rank within population");
        if j > 0 && alpha > centers[argmax].alpha {
            argmax = j;
        }
        centers.push(CenterAudit { center: j, panel: alt, alpha });
    }
    Ok(AuditReport { k, q, alpha_hat: centers[argmax].alpha.clone(), argmax, centers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn co_located_population_audits_to_one() {
        let inst = MetricInstance::from_fn(6, |_, _| 0.0).unwrap();
        let p = Panel::new(vec![0, 3]).unwrap();
        for q in 1..=2 {
            let r = audit_panel(&inst, &p, 2, q).unwrap();
            assert_eq!(r.alpha_hat, Improvement::Finite(1.0));
        }
    }

    #[test]
    fn thm31_all_a_is_unbounded() {
        let fx = fixtures::thm31(12, 3).unwrap();
        let r = audit_panel(&fx.instance, fx.panel("all-A").unwrap(), 3, 1).unwrap();
        assert!(r.alpha_hat.is_unbounded());
        assert!(fx.group("B").unwrap().contains(&r.argmax));
    }

    #[test]
    fn nearest_panel_contains_center() {
        let inst = fixtures::random_clustered(10, 4).with_weights(vec![2, 1, 1, 3, 1, 1, 1, 1, 1, 1]).unwrap();
        for j in 0..10 {
            for q in 1..=5 {
                let p = nearest_panel(&inst, j, q);
                assert_eq!(p.len(), q);
                assert!(p.contains(j));
                inst.check_panel(&p).unwrap();
            }
        }
        // against a direct sort of all seats by (distance, id, seat)
        for j in 0..10 {
            let mut seats: Vec<(usize, u64)> = (0..10).flat_map(|i| (0..inst.weight(i)).map(move |s| (i, s))).filter(|&(i, s)| !(i == j && s == 0)).collect();
            seats.sort_by(|a, b| inst.dist(j, a.0).partial_cmp(inst.dist(j, b.0)).unwrap().then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
            for q in 1..=8 {
                let mut want = vec![j];
                want.extend(seats.iter().take(q - 1).map(|s| s.0));
                assert_eq!(nearest_panel(&inst, j, q), Panel::from_unsorted(want));
            }
        }
    }

    #[test]
    fn report_formats() {
        let inst = MetricInstance::from_fn(4, |i, j| (i as f64 - j as f64).abs()).unwrap();
        let r = audit_panel(&inst, &Panel::new(vec![0, 1]).unwrap(), 2, 1).unwrap();
        let mut s = Vec::new();
        r.write_summary(&mut s).unwrap();
        let s = String::from_utf8(s).unwrap();
        // center 2 proposes {2}: ratios 0, 0, inf, 2 and the 2nd largest is 2
        assert!(s.contains("alpha_hat = 2\n"), "{s}");
        assert!(s.contains("argmax_center = 2\n"), "{s}");
        let mut c = Vec::new();
        r.write_centers_csv(&mut c).unwrap();
        let c = String::from_utf8(c).unwrap();
        assert!(c.starts_with("center,alpha,panel\n0,"));
        assert_eq!(c.lines().count(), 5);
    }

    #[test]
    fn sandwich_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for seed in 0..40 {
            let n = rng.gen_range(4..=10);
            let inst = fixtures::random_clustered(n, seed);
            let k = rng.gen_range(1..=3.min(n));
            let p = crate::selectors::uniform_sample(n, k, seed).unwrap();
            for q in 1..=k {
                let hat = audit_panel(&inst, &p, k, q).unwrap().alpha_hat;
                let star = exact_core_violation(&inst, &p, k, q, k).unwrap().alpha_star;
                assert!(hat <= star, "{hat} > {star}");
                match (&hat, &star) {
                    (Improvement::Finite(h), Improvement::Finite(s)) => assert!(*s <= 3.0 * h + 2.0 + 1e-9),
                    (Improvement::Finite(_), Improvement::Unbounded) => panic!("finite audit for unbounded violation"),
                    _ => {}
                }
            }
        }
    }
}
