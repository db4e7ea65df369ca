//! Panel samplers: uniform selection, FairGreedyCapture and the augmented
//! variant that knows `q`.
//!
//! All samplers work on seats: a point of weight `w` contributes `w`
//! interchangeable units, and a returned panel lists the owning point of
//! every seat.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::birkhoff::{fgc_distribution_with, FgcOptions, PanelDistribution};
use crate::error::{invalid, Error, Result};
use crate::metric::{ceil_div, MetricInstance, Panel};
use crate::scalar::{cmp_scalar, Scalar};

/// Something that draws panels of a fixed size.
pub trait Selector: Send + Sync {
    fn k(&self) -> usize;
    fn sample(&self, rng: &mut dyn RngCore) -> Result<Panel>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelectorKind {
    Uniform,
    Fgc,
    Afgc,
}

impl SelectorKind {
    pub fn name(self) -> &'static str {
        match self {
            SelectorKind::Uniform => "uniform",
            SelectorKind::Fgc => "fgc",
            SelectorKind::Afgc => "afgc",
        }
    }
}

impl std::str::FromStr for SelectorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(SelectorKind::Uniform),
            "fgc" => Ok(SelectorKind::Fgc),
            "afgc" => Ok(SelectorKind::Afgc),
            other => invalid(format!("unknown algorithm `{other}` (expected uniform, fgc or afgc)")),
        }
    }
}

impl std::fmt::Display for SelectorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SelectorConfig {
    pub kind: SelectorKind,
    pub k: usize,
    /// Required by [`SelectorKind::Afgc`], ignored otherwise.
    pub q: Option<usize>,
    pub seed: u64,
    pub fgc: FgcOptions,
}

impl SelectorConfig {
    pub fn new(kind: SelectorKind, k: usize, q: Option<usize>, seed: u64) -> Self {
        SelectorConfig { kind, k, q, seed, fgc: FgcOptions::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return invalid("panel size k must be positive");
        }
        if self.kind == SelectorKind::Afgc {
            match self.q {
                Some(q) if (1..=self.k).contains(&q) => {}
                Some(q) => return invalid(format!("afgc needs 1 ≤ q ≤ k, got q = {q}, k = {}", self.k)),
                None => return invalid("afgc needs q"),
            }
        }
        Ok(())
    }

    pub fn build<D: Scalar>(&self, inst: &MetricInstance<D>) -> Result<Box<dyn Selector>> {
        self.validate()?;
        Ok(match self.kind {
            SelectorKind::Uniform => Box::new(UniformSelector::new(inst, self.k)?),
            SelectorKind::Fgc => Box::new(FgcSelector::new(fgc_distribution_with(inst, self.k, &self.fgc)?)),
            SelectorKind::Afgc => Box::new(AfgcSampler::new(inst, self.k, self.q.unwrap_or(1))?),
        })
    }

    /// Builds the selector and draws one panel from the configured seed.
    pub fn select<D: Scalar>(&self, inst: &MetricInstance<D>) -> Result<Panel> {
        self.build(inst)?.sample(&mut ChaCha8Rng::seed_from_u64(self.seed))
    }
}

/// `k` distinct ids out of `0..n`, every subset equally likely.
pub fn uniform_sample(n: usize, k: usize, seed: u64) -> Result<Panel> {
    if k == 0 || k > n {
        return invalid(format!("panel size k = {k} must lie in 1..={n}"));
    }
    let mut ids: Vec<usize> = (0..n).collect();
    let (chosen, _) = ids.partial_shuffle(&mut ChaCha8Rng::seed_from_u64(seed), k);
    Panel::new(chosen.to_vec())
}

/// Uniform selection over the `N` seats of a weighted population.
#[derive(Clone, Debug)]
pub struct UniformSelector {
    k: usize,
    owner: Vec<usize>,
}

impl UniformSelector {
    pub fn new<D: Scalar>(inst: &MetricInstance<D>, k: usize) -> Result<Self> {
        if k == 0 || k as u64 > inst.population() {
            return invalid(format!("panel size k = {k} must lie in 1..={}", inst.population()));
        }
        let owner = inst.weights().iter().enumerate().flat_map(|(i, &w)| std::iter::repeat(i).take(w as usize)).collect();
        Ok(UniformSelector { k, owner })
    }
}

impl Selector for UniformSelector {
    fn k(&self) -> usize {
        self.k
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Result<Panel> {
        let mut seats: Vec<usize> = (0..self.owner.len()).collect();
        let (chosen, _) = seats.partial_shuffle(rng, self.k);
        Ok(Panel::from_unsorted(chosen.iter().map(|&s| self.owner[s]).collect()))
    }
}

/// Draws from a precomputed FairGreedyCapture distribution.
#[derive(Clone, Debug)]
pub struct FgcSelector {
    dist: PanelDistribution,
}

impl FgcSelector {
    pub fn new(dist: PanelDistribution) -> Self {
        FgcSelector { dist }
    }

    pub fn distribution(&self) -> &PanelDistribution {
        &self.dist
    }
}

impl Selector for FgcSelector {
    fn k(&self) -> usize {
        self.dist.k()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Result<Panel> {
        Ok(self.dist.sample(rng).clone())
    }
}

/// A ball detected by the augmented algorithm.
#[derive(Clone, Debug, PartialEq)]
pub struct DetectedBall<D> {
    pub center: usize,
    pub radius: D,
    /// The `⌈qN/k⌉` captured units as `(point, count)` pairs.
    pub captured: Vec<(usize, u64)>,
    /// Points of the `q` selected units.
    pub selected: Vec<usize>,
}

/// Augmented-FairGreedyCapture for a known `q`.
///
/// Balls grow only around points that still have undisregarded units. A ball
/// holding at least `⌈qN/k⌉` such units is detected: exactly that many are
/// taken, closest to the center first and then by id, `q` of them are
/// selected uniformly and all are disregarded. The remaining seats are
/// filled by systematic sampling in id order: undisregarded units with
/// probability `k/N`, disregarded unselected ones uniformly with the rest.
#[derive(Clone, Debug)]
pub struct AfgcSampler<D> {
    k: usize,
    q: usize,
    quota: u64,
    population: u64,
    weights: Vec<u64>,
    neighbours: Vec<Vec<usize>>,
    /// `(center, neighbour position, radius)` sorted by radius.
    events: Vec<(usize, usize, D)>,
}

impl<D: Scalar> AfgcSampler<D> {
    pub fn new(inst: &MetricInstance<D>, k: usize, q: usize) -> Result<Self> {
        let big_n = inst.population();
        if k == 0 || k as u64 > big_n {
            return invalid(format!("panel size k = {k} must lie in 1..={big_n}"));
        }
        if q == 0 || q > k {
            return invalid(format!("rank q = {q} must lie in 1..={k}"));
        }
        let n = inst.n();
        let neighbours: Vec<Vec<usize>> = (0..n).map(|c| inst.neighbours_by_distance(c)).collect();
        let mut events: Vec<(usize, usize, D)> =
            (0..n).flat_map(|c| (0..n).map(move |t| (c, t))).map(|(c, t)| (c, t, inst.dist(c, neighbours[c][t]).clone())).collect();
        events.sort_by(|a, b| cmp_scalar(&a.2, &b.2));
        Ok(AfgcSampler {
            k,
            q,
            quota: ceil_div(q as u64 * big_n, k as u64),
            population: big_n,
            weights: inst.weights().to_vec(),
            neighbours,
            events,
        })
    }

    /// `⌈qN/k⌉`.
    pub fn quota(&self) -> u64 {
        self.quota
    }

    /// Draws a panel and reports the detected balls.
    pub fn sample_traced<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(Panel, Vec<DetectedBall<D>>)> {
        let n = self.weights.len();
        let mut remaining = self.weights.clone();
        let mut in_r: u64 = self.population;
        let mut selected = vec![0u64; n];
        let mut seats = Vec::with_capacity(self.k);
        let mut balls = Vec::new();
        let mut reach = vec![0usize; n];
        let mut grown = Vec::new();
        let mut start = 0;
        while in_r >= self.quota && start < self.events.len() {
            let radius = &self.events[start].2;
            let mut end = start;
            grown.clear();
            while end < self.events.len() && self.events[end].2 == *radius {
                let (c, t, _) = self.events[end];
                if t + 1 > reach[c] {
                    reach[c] = t + 1;
                    grown.push(c);
                }
                end += 1;
            }
            grown.sort_unstable();
            grown.dedup();
            for &c in &grown {
                while remaining[c] > 0 && in_r >= self.quota {
                    let captured = &self.neighbours[c][..reach[c]];
                    let mass: u64 = captured.iter().map(|&i| remaining[i]).sum();
                    if mass < self.quota {
                        break;
                    }
                    let mut need = self.quota;
                    let mut taken = Vec::new();
                    let mut units = Vec::with_capacity(self.quota as usize);
                    for &i in captured {
                        if need == 0 {
                            break;
                        }
                        let take = need.min(remaining[i]);
                        if take > 0 {
                            remaining[i] -= take;
                            need -= take;
                            taken.push((i, take));
                            units.extend(std::iter::repeat(i).take(take as usize));
                        }
                    }
                    in_r -= self.quota;
                    let (chosen, _) = units.partial_shuffle(rng, self.q);
                    let mut chosen = chosen.to_vec();
                    chosen.sort_unstable();
                    for &i in &chosen {
                        selected[i] += 1;
                        seats.push(i);
                    }
                    balls.push(DetectedBall { center: c, radius: radius.clone(), captured: taken, selected: chosen });
                }
            }
            start = end;
        }
        let left = (self.k - seats.len()) as u64;
        if left > 0 {
            self.fill_systematic(rng, &remaining, &selected, in_r, seats.len() as u64, &mut seats)?;
        }
        if seats.len() != self.k {
            return Err(Error::Internal(format!("afgc produced {} seats, expected {}", seats.len(), self.k)));
        }
        Ok((Panel::from_unsorted(seats), balls))
    }

    fn fill_systematic<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        remaining: &[u64],
        selected: &[u64],
        in_r: u64,
        placed: u64,
        seats: &mut Vec<usize>,
    ) -> Result<()> {
        let (big_n, k) = (self.population as u128, self.k as u128);
        let (p, r) = (placed as u128, in_r as u128);
        let left = k - p;
        let others = big_n - p - r;
        if others == 0 {
            // everyone outside R was selected, so R must fill the panel exactly
            if r != left {
                return Err(Error::Internal(format!("{r} undisregarded units for {left} open seats")));
            }
            for (i, &c) in remaining.iter().enumerate() {
                seats.extend(std::iter::repeat(i).take(c as usize));
            }
            return Ok(());
        }
        // probabilities as numerators over den = N·(N − |P| − |R|)
        let den = big_n * others;
        let p_r = k * others;
        let p_d = (left * big_n).checked_sub(r * k).ok_or_else(|| Error::Internal("negative leftover probability".into()))?;
        if p_r > den || p_d > den {
            return Err(Error::Internal("leftover probability exceeds one".into()));
        }
        let u = rng.gen_range(0..den);
        // number of points u + m·den (m ≥ 0) strictly below x
        let crossings = |x: u128| if x <= u { 0 } else { (x - u).div_ceil(den) };
        let mut cum = 0u128;
        for i in 0..remaining.len() {
            let disregarded = (self.weights[i] - remaining[i] - selected[i]) as u128;
            let span = remaining[i] as u128 * p_r + disregarded * p_d;
            let hits = crossings(cum + span) - crossings(cum);
            seats.extend(std::iter::repeat(i).take(hits as usize));
            cum += span;
        }
        if cum != den * left {
            return Err(Error::Internal("leftover probabilities do not sum to the open seats".into()));
        }
        Ok(())
    }
}

impl<D: Scalar> Selector for AfgcSampler<D> {
    fn k(&self) -> usize {
        self.k
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Result<Panel> {
        self.sample_traced(rng).map(|(p, _)| p)
    }
}

/// One Augmented-FairGreedyCapture panel.
pub fn afgc_sample<D: Scalar>(inst: &MetricInstance<D>, k: usize, q: usize, seed: u64) -> Result<Panel> {
    AfgcSampler::new(inst, k, q)?.sample(&mut ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sigma3(p: f64, trials: usize) -> f64 {
        3.0 * (p * (1.0 - p) / trials as f64).sqrt()
    }

    #[test]
    fn uniform_full_population() {
        assert_eq!(uniform_sample(4, 4, 1).unwrap().members(), &[0, 1, 2, 3]);
        assert!(uniform_sample(3, 4, 1).is_err());
        assert!(uniform_sample(3, 0, 1).is_err());
    }

    #[test]
    fn uniform_pairs_are_equiprobable() {
        let trials = 100_000;
        let mut counts = std::collections::HashMap::new();
        let sel = UniformSelector::new(&fixtures::random_euclidean(5, 2, 0), 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..trials {
            *counts.entry(sel.sample(&mut rng).unwrap()).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 10);
        for &c in counts.values() {
            assert!((c as f64 / trials as f64 - 0.1).abs() < sigma3(0.1, trials));
        }
    }

    #[test]
    fn uniform_weighted_seats() {
        let inst = fixtures::random_euclidean(3, 1, 0).with_weights(vec![3, 1, 1]).unwrap();
        let sel = UniformSelector::new(&inst, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let p = sel.sample(&mut rng).unwrap();
            assert_eq!(p.len(), 4);
            inst.check_panel(&p).unwrap();
        }
    }

    #[test]
    fn afgc_whole_population() {
        let inst = fixtures::random_euclidean(6, 2, 3);
        for q in 1..=6 {
            for seed in 0..5 {
                assert_eq!(afgc_sample(&inst, 6, q, seed).unwrap().members(), &[0, 1, 2, 3, 4, 5]);
            }
        }
    }

    #[test]
    fn afgc_separated_groups_get_q_each() {
        // k = 4, q = 2, n = 8: quota 4, two co-located groups of 4
        let inst = MetricInstance::from_fn(8, |i, j| if i / 4 == j / 4 { 0.0 } else { 5.0 }).unwrap();
        let sampler = AfgcSampler::new(&inst, 4, 2).unwrap();
        assert_eq!(sampler.quota(), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (p, balls) = sampler.sample_traced(&mut rng).unwrap();
            assert_eq!(balls.len(), 2);
            assert_eq!(p.members().iter().filter(|&&m| m < 4).count(), 2);
        }
    }

    #[test]
    fn afgc_rejects_bad_q() {
        let inst = fixtures::random_euclidean(5, 2, 3);
        assert!(afgc_sample(&inst, 3, 0, 0).is_err());
        assert!(afgc_sample(&inst, 3, 4, 0).is_err());
        assert!(SelectorConfig::new(SelectorKind::Afgc, 3, None, 0).validate().is_err());
    }

    #[test]
    fn afgc_balls_are_disjoint_and_ordered() {
        for seed in 0..30 {
            let inst = fixtures::random_clustered(25, seed).with_weights((0..25).map(|i| 1 + (i as u64 * seed) % 3).collect()).unwrap();
            for (k, q) in [(4, 1), (5, 2), (6, 6)] {
                let s = AfgcSampler::new(&inst, k, q).unwrap();
                let (p, balls) = s.sample_traced(&mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
                assert_eq!(p.len(), k);
                inst.check_panel(&p).unwrap();
                let mut used = vec![0u64; 25];
                for b in &balls {
                    assert_eq!(b.captured.iter().map(|c| c.1).sum::<u64>(), s.quota());
                    assert_eq!(b.selected.len(), q);
                    for &(i, c) in &b.captured {
                        used[i] += c;
                    }
                }
                assert!((0..25).all(|i| used[i] <= inst.weight(i)));
                assert!(balls.windows(2).all(|w| w[0].radius <= w[1].radius));
            }
        }
    }

    #[test]
    fn afgc_marginals_are_fair() {
        let inst = fixtures::random_euclidean(12, 2, 5);
        let s = AfgcSampler::new(&inst, 5, 2).unwrap();
        let trials = 40_000;
        let mut hits = [0usize; 12];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..trials {
            for &m in s.sample(&mut rng).unwrap().members() {
                hits[m] += 1;
            }
        }
        let p = 5.0 / 12.0;
        for h in hits {
            assert!((h as f64 / trials as f64 - p).abs() < 4.0 * (p * (1.0 - p) / trials as f64).sqrt());
        }
    }

    #[test]
    fn config_dispatch() {
        let inst = fixtures::random_euclidean(10, 2, 1);
        for kind in [SelectorKind::Uniform, SelectorKind::Fgc, SelectorKind::Afgc] {
            let cfg = SelectorConfig::new(kind, 3, Some(2), 11);
            let a = cfg.select(&inst).unwrap();
            assert_eq!(a.len(), 3);
            assert_eq!(cfg.select(&inst).unwrap(), a);
            assert_eq!(kind.name().parse::<SelectorKind>().unwrap(), kind);
        }
        assert!("random".parse::<SelectorKind>().is_err());
    }
}
