//! Population model and the cost primitives every other module builds on.
//!
//! A [`MetricInstance`] holds `n` data points with pairwise distances and a
//! positive integer multiplicity per point. The effective population is
//! `N = Σ weight[i]`; a point of weight `w` stands for `w` co-located people.
//!
//! Panels are multisets of *seats*: a point of weight `w` may be seated up to
//! `w` times. On unit-weight instances a panel is an ordinary set of ids.
//! Costs are positional, so a point seated twice contributes two entries to
//! the sorted distance list of every individual.

mod dataset;
mod io;

pub use dataset::{build_metric, load_dataset, BuiltMetric, Feature, FeatureKind, FeatureSchema, MetricOptions, Table, Value};
pub use io::{read_distance_matrix, read_panel, read_weights, write_distance_matrix, write_panel};


use crate::error::{invalid, Error, Result};
use crate::scalar::{cmp_scalar, Improvement, Scalar};

/// A population embedded in a metric space.
#[derive(Clone, Debug)]
pub struct MetricInstance<D> {
    n: usize,
    dist: Vec<D>,
    weights: Vec<u64>,
    population: u64,
    labels: Option<Vec<String>>,
}

impl<D: Scalar> MetricInstance<D> {
    /// Builds a unit-weight instance from a full distance matrix and checks
    /// every metric invariant, including the triangle inequality.
    pub fn new(rows: Vec<Vec<D>>) -> Result<Self> {
        let inst = Self::from_rows_unchecked(rows)?;
        inst.check_triangle()?;
        Ok(inst)
    }

    /// Builds an instance whose distances are a metric by construction.
    /// Only the O(n²) invariants are checked.
    pub fn from_trusted_rows(rows: Vec<Vec<D>>) -> Result<Self> {
        Self::from_rows_unchecked(rows)
    }

    /// Builds an instance from a distance function over `0..n`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> D) -> Result<Self> {
        let rows = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Self::new(rows)
    }

    fn from_rows_unchecked(rows: Vec<Vec<D>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMetric("empty population".into()));
        }
        let mut dist = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMetric(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            dist.extend(row);
        }
        let inst = MetricInstance { n, dist, weights: vec![1; n], population: n as u64, labels: None };
        inst.check_basic()?;
        Ok(inst)
    }

    fn check_basic(&self) -> Result<()> {
        let tol = D::TRIANGLE_TOLERANCE;
        for i in 0..self.n {
            if !self.dist(i, i).is_zero() {
                return Err(Error::InvalidMetric(format!("dist[{i}][{i}] = {} is not zero", self.dist(i, i))));
            }
            for j in 0..self.n {
                let d = self.dist(i, j);
                if !d.is_finite_value() || *d < D::zero() {
                    return Err(Error::InvalidMetric(format!("dist[{i}][{j}] = {d} is not a finite nonnegative value")));
                }
                if j > i {
                    let (a, b) = (d.as_f64(), self.dist(j, i).as_f64());
                    let asym = if tol == 0.0 { d != self.dist(j, i) } else { (a - b).abs() > tol * a.abs().max(b.abs()) };
                    if asym {
                        return Err(Error::InvalidMetric(format!("dist[{i}][{j}] != dist[{j}][{i}]")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks `d(i,j) ≤ d(i,l) + d(l,j)` for all triples, within the
    /// scalar's relative tolerance.
    pub fn check_triangle(&self) -> Result<()> {
        let tol = D::TRIANGLE_TOLERANCE;
        for l in 0..self.n {
            for i in 0..self.n {
                let dil = self.dist(i, l);
                for j in (i + 1)..self.n {
                    let via = dil.clone() + self.dist(l, j).clone();
                    let direct = self.dist(i, j);
                    let violated = if tol == 0.0 {
                        *direct > via
                    } else {
                        let (d, v) = (direct.as_f64(), via.as_f64());
                        d - v > tol * d.max(v)
                    };
                    if violated {
                        return Err(Error::InvalidMetric(format!(
                            "triangle inequality fails: d({i},{j}) = {direct} > d({i},{l}) + d({l},{j}) = {via}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Replaces the multiplicities. Every weight must be at least one.
    pub fn with_weights(mut self, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != self.n {
            return invalid(format!("{} weights for {} points", weights.len(), self.n));
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return invalid(format!("weight of point {i} must be at least 1"));
        }
        self.population = weights.iter().sum();
        self.weights = weights;
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return invalid(format!("{} labels for {} points", labels.len(), self.n));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Number of distinct data points.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Effective population `N = Σ weight[i]`.
    #[inline]
    pub fn population(&self) -> u64 {
        self.population
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> &D {
        &self.dist[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[D] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    #[inline]
    pub fn weight(&self, i: usize) -> u64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_unit_weight(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn max_distance(&self) -> D {
        self.dist.iter().fold(D::zero(), |m, d| if *d > m { d.clone() } else { m })
    }

    /// Expands every point of weight `w` into `w` co-located unit-weight
    /// points. Virtual ids of one point are contiguous and ordered by point id.
    pub fn expand_weights(&self) -> Expanded<D> {
        let mut owner = Vec::with_capacity(self.population as usize);
        let mut first_seat = Vec::with_capacity(self.n);
        for (i, &w) in self.weights.iter().enumerate() {
            first_seat.push(owner.len());
            owner.extend(std::iter::repeat(i).take(w as usize));
        }
        let big = owner.len();
        let mut dist = Vec::with_capacity(big * big);
        for &a in &owner {
            for &b in &owner {
                dist.push(self.dist(a, b).clone());
            }
        }
        let instance = MetricInstance { n: big, dist, weights: vec![1; big], population: big as u64, labels: None };
        Expanded { instance, owner, first_seat }
    }

    /// Checks ids are in range and no point is seated more often than its weight.
    pub fn check_panel(&self, panel: &Panel) -> Result<()> {
        let mut run = 0u64;
        let mut prev = usize::MAX;
        for &m in panel.members() {
            if m >= self.n {
                return invalid(format!("panel member {m} out of range 0..{}", self.n));
            }
            run = if m == prev { run + 1 } else { 1 };
            prev = m;
            if run > self.weights[m] {
                return invalid(format!("point {m} seated {run} times but has weight {}", self.weights[m]));
            }
        }
        Ok(())
    }

    /// Distance from `i` to its `q`-th closest seat in `seats` (1-based `q`).
    /// Callers guarantee `1 ≤ q ≤ seats.len()`.
    pub(crate) fn q_cost_of(&self, i: usize, seats: &[usize], q: usize) -> D {
        let row = self.row(i);
        if q == 1 {
            return seats.iter().map(|&s| &row[s]).min_by(|a, b| cmp_scalar(*a, *b)).cloned().unwrap_or_else(D::zero);
        }
        let mut ds: Vec<&D> = seats.iter().map(|&s| &row[s]).collect();
        let (_, nth, _) = ds.select_nth_unstable_by(q - 1, |a, b| cmp_scalar(*a, *b));
        (*nth).clone()
    }

    /// The q-cost `c_q(i, P)`: distance to the q-th closest panel member.
    pub fn q_cost(&self, i: usize, panel: &Panel, q: usize) -> Result<D> {
        self.check_rank(i, panel, q)?;
        Ok(self.q_cost_of(i, panel.members(), q))
    }

    /// The `q` closest members of `panel` to `i`, ties broken by ascending id.
    pub fn top_q(&self, i: usize, panel: &Panel, q: usize) -> Result<Vec<usize>> {
        self.check_rank(i, panel, q)?;
        Ok(self.top_q_positions(i, panel.members(), q).into_iter().map(|p| panel.members()[p]).collect())
    }

    /// Positions (indices into `seats`) of the `q` closest seats to `i`.
    pub(crate) fn top_q_positions(&self, i: usize, seats: &[usize], q: usize) -> Vec<usize> {
        let row = self.row(i);
        let mut pos: Vec<usize> = (0..seats.len()).collect();
        pos.sort_by(|&a, &b| cmp_scalar(&row[seats[a]], &row[seats[b]]).then(seats[a].cmp(&seats[b])).then(a.cmp(&b)));
        pos.truncate(q);
        pos
    }

    fn check_rank(&self, i: usize, panel: &Panel, q: usize) -> Result<()> {
        if i >= self.n {
            return invalid(format!("individual {i} out of range 0..{}", self.n));
        }
        if q == 0 || q > panel.len() {
            return invalid(format!("rank q = {q} must lie in 1..={}", panel.len()));
        }
        self.check_panel(panel)
    }

    /// Closed ball `B(i, r) = { i' : d(i, i') ≤ r }`.
    pub fn ball(&self, i: usize, r: &D) -> Result<Vec<usize>> {
        if i >= self.n {
            return invalid(format!("center {i} out of range 0..{}", self.n));
        }
        if *r < D::zero() {
            return invalid("ball radius must be nonnegative");
        }
        Ok((0..self.n).filter(|&j| self.dist(i, j) <= r).collect())
    }

    /// The α-q-preference count `V_q(P, P', α)`: total weight of individuals
    /// whose q-cost under `panel` exceeds `alpha` times their q-cost under
    /// `alternative`.
    pub fn preference_count(&self, panel: &Panel, alternative: &Panel, alpha: &D, q: usize) -> Result<u64> {
        if *alpha < D::one() {
            return invalid(format!("alpha = {alpha} must be at least 1"));
        }
        if q == 0 || q > panel.len().min(alternative.len()) {
            return invalid(format!("rank q = {q} must lie in 1..={}", panel.len().min(alternative.len())));
        }
        self.check_panel(panel)?;
        self.check_panel(alternative)?;
        Ok(self.preference_count_of(panel.members(), alternative.members(), alpha, q))
    }

    pub(crate) fn preference_count_of(&self, panel: &[usize], alternative: &[usize], alpha: &D, q: usize) -> u64 {
        (0..self.n)
            .filter(|&i| {
                let cur = self.q_cost_of(i, panel, q);
                !cur.is_zero() && cur > alpha.clone() * self.q_cost_of(i, alternative, q)
            })
            .map(|i| self.weights[i])
            .sum()
    }

    /// `c_q(i, P) / c_q(i, P')` for every point, with the zero conventions of
    /// [`Improvement::of`].
    pub(crate) fn improvements(&self, costs: &[D], alternative: &[usize], q: usize) -> Vec<(Improvement<D>, u64)> {
        (0..self.n).map(|i| (Improvement::of(&costs[i], &self.q_cost_of(i, alternative, q)), self.weights[i])).collect()
    }

    /// Ids sorted by `(distance from center, id)`.
    pub(crate) fn neighbours_by_distance(&self, center: usize) -> Vec<usize> {
        let row = self.row(center);
        let mut ids: Vec<usize> = (0..self.n).collect();
        ids.sort_by(|&a, &b| cmp_scalar(&row[a], &row[b]).then(a.cmp(&b)));
        ids
    }
}

/// A weight-expanded copy of an instance.
#[derive(Clone, Debug)]
pub struct Expanded<D> {
    pub instance: MetricInstance<D>,
    /// Original point of every virtual id.
    pub owner: Vec<usize>,
    /// First virtual id of every original point.
    pub first_seat: Vec<usize>,
}

impl<D> Expanded<D> {
    /// Maps a seat multiset over original points to distinct virtual ids.
    pub fn to_virtual(&self, panel: &Panel) -> Panel {
        let mut out = Vec::with_capacity(panel.len());
        let mut prev = usize::MAX;
        let mut run = 0;
        for &m in panel.members() {
            run = if m == prev { run + 1 } else { 0 };
            prev = m;
            out.push(self.first_seat[m] + run);
        }
        Panel::from_sorted(out)
    }

    /// Maps virtual ids back to a seat multiset over original points.
    pub fn to_original(&self, panel: &Panel) -> Panel {
        Panel::from_unsorted(panel.members().iter().map(|&v| self.owner[v]).collect())
    }
}

/// A panel: a sorted multiset of seat holders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Panel {
    members: Vec<usize>,
}

impl Panel {
    /// Builds a panel of distinct ids. Duplicates are rejected; use
    /// [`Panel::with_seats`] for weighted instances.
    pub fn new(mut ids: Vec<usize>) -> Result<Self> {
        if ids.is_empty() {
            return invalid("a panel needs at least one member");
        }
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return invalid("panel members must be distinct");
        }
        Ok(Panel { members: ids })
    }

    /// Builds a panel that may seat the same point several times.
    pub fn with_seats(ids: Vec<usize>) -> Result<Self> {
        if ids.is_empty() {
            return invalid("a panel needs at least one member");
        }
        Ok(Self::from_unsorted(ids))
    }

    pub(crate) fn from_unsorted(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        Panel { members: ids }
    }

    pub(crate) fn from_sorted(ids: Vec<usize>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] <= w[1]));
        Panel { members: ids }
    }

    #[inline]
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Panel size `k` (number of seats).
    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    /// Number of seats held by `id`.
    pub fn seats_of(&self, id: usize) -> usize {
        self.members.iter().filter(|&&m| m == id).count()
    }

    pub fn has_repeats(&self) -> bool {
        self.members.windows(2).any(|w| w[0] == w[1])
    }
}

impl std::fmt::Display for Panel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for m in &self.members {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

pub(crate) fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::Rational;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn line(xs: &[f64]) -> MetricInstance<f64> {
        MetricInstance::from_fn(xs.len(), |i, j| (xs[i] - xs[j]).abs()).unwrap()
    }

    #[test]
    fn rejects_non_metric() {
        let bad = vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]];
        assert!(matches!(MetricInstance::new(bad), Err(Error::InvalidMetric(_))));
        let asym = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        assert!(MetricInstance::new(asym).is_err());
        let diag = vec![vec![1.0, 1.0], vec![1.0, 0.0]];
        assert!(MetricInstance::new(diag).is_err());
    }

    #[test]
    fn q_cost_of_member_is_zero() {
        let inst = line(&[0.0, 1.0, 10.0, 11.0]);
        let p = Panel::new(vec![1, 2]).unwrap();
        assert_eq!(inst.q_cost(1, &p, 1).unwrap(), 0.0);
        assert_eq!(inst.q_cost(1, &p, 2).unwrap(), 9.0);
        assert!(inst.q_cost(1, &p, 3).is_err());
        assert!(inst.q_cost(1, &p, 0).is_err());
    }

    #[test]
    fn star_leaf_cost_is_one() {
        let fx = fixtures::thm42(3, 1, 18).unwrap();
        let centre = fx.panel("I").unwrap();
        for leaf in 1..18 {
            assert_eq!(fx.instance.q_cost(leaf, centre, 1).unwrap(), 1.0);
        }
    }

    #[test]
    fn tight_two_k_instance_cost() {
        let fx = fixtures::appx_b_tight(8, 3).unwrap();
        let p = fx.panel("A+B").unwrap();
        for &a in fx.group("A").unwrap() {
            assert_eq!(fx.instance.q_cost(a, p, 3).unwrap(), 2.0);
        }
    }

    #[test]
    fn top_q_ties_by_id() {
        let inst = MetricInstance::from_fn(5, |_, _| 0.0).unwrap();
        let p = Panel::new(vec![4, 1, 3, 0]).unwrap();
        assert_eq!(inst.top_q(2, &p, 2).unwrap(), vec![0, 1]);
        assert_eq!(inst.top_q(2, &p, 4).unwrap(), vec![0, 1, 3, 4]);
    }

    #[test]
    fn top_q_matches_full_sort() {
        let inst = fixtures::random_euclidean(8, 2, 11);
        let p = Panel::new(vec![0, 2, 3, 5, 7]).unwrap();
        for i in 0..8 {
            let mut all: Vec<(f64, usize)> = p.members().iter().map(|&m| (*inst.dist(i, m), m)).collect();
            all.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for q in 1..=5 {
                let want: Vec<usize> = all[..q].iter().map(|x| x.1).collect();
                assert_eq!(inst.top_q(i, &p, q).unwrap(), want);
                assert_eq!(inst.q_cost(i, &p, q).unwrap(), all[q - 1].0);
            }
        }
    }

    #[test]
    fn ball_examples() {
        let inst = line(&[0.0, 1.0, 10.0, 11.0]);
        assert_eq!(inst.ball(0, &1.0).unwrap(), vec![0, 1]);
        assert_eq!(inst.ball(2, &0.0).unwrap(), vec![2]);
        assert_eq!(inst.ball(3, &100.0).unwrap(), vec![0, 1, 2, 3]);
        assert!(inst.ball(0, &-1.0).is_err());
    }

    #[test]
    fn preference_count_against_itself_is_zero() {
        let inst = fixtures::random_euclidean(10, 2, 3);
        let p = Panel::new(vec![1, 4, 6]).unwrap();
        for q in 1..=3 {
            assert_eq!(inst.preference_count(&p, &p, &1.0, q).unwrap(), 0);
        }
        assert!(inst.preference_count(&p, &p, &0.5, 1).is_err());
    }

    #[test]
    fn preference_count_thm31() {
        let fx = fixtures::thm31(12, 3).unwrap();
        let all_a = fx.panel("all-A").unwrap();
        let b0 = fx.group("B").unwrap()[0];
        let alt = Panel::new(vec![b0]).unwrap();
        assert_eq!(fx.instance.preference_count(all_a, &alt, &10.0, 1).unwrap(), 8);
    }

    #[test]
    fn preference_count_matches_loop() {
        let inst = fixtures::random_euclidean(8, 2, 5);
        let p = Panel::new(vec![0, 3, 6]).unwrap();
        let alt = Panel::new(vec![1, 2]).unwrap();
        for q in 1..=2 {
            let mut want = 0;
            for i in 0..8 {
                let mut a: Vec<f64> = p.members().iter().map(|&m| *inst.dist(i, m)).collect();
                let mut b: Vec<f64> = alt.members().iter().map(|&m| *inst.dist(i, m)).collect();
                a.sort_by(|x, y| x.partial_cmp(y).unwrap());
                b.sort_by(|x, y| x.partial_cmp(y).unwrap());
                if a[q - 1] > 2.0 * b[q - 1] {
                    want += 1;
                }
            }
            assert_eq!(inst.preference_count(&p, &alt, &2.0, q).unwrap(), want);
        }
    }

    #[test]
    fn weighted_panels_respect_multiplicity() {
        let inst = line(&[0.0, 1.0]).with_weights(vec![2, 1]).unwrap();
        assert!(inst.check_panel(&Panel::with_seats(vec![0, 0, 1]).unwrap()).is_ok());
        assert!(inst.check_panel(&Panel::with_seats(vec![1, 1]).unwrap()).is_err());
        assert!(Panel::new(vec![0, 0]).is_err());
        let p = Panel::with_seats(vec![0, 0]).unwrap();
        assert_eq!(inst.q_cost(1, &p, 2).unwrap(), 1.0);
    }

    #[test]
    fn expansion_round_trip() {
        let inst = line(&[0.0, 1.0, 3.0]).with_weights(vec![2, 1, 3]).unwrap();
        let ex = inst.expand_weights();
        assert_eq!(ex.instance.n(), 6);
        assert_eq!(ex.owner, vec![0, 0, 1, 2, 2, 2]);
        let p = Panel::with_seats(vec![2, 0, 2]).unwrap();
        let v = ex.to_virtual(&p);
        assert_eq!(v.members(), &[0, 3, 4]);
        assert_eq!(ex.to_original(&v), p);
    }

    #[test]
    fn exact_rational_metric() {
        let third = Rational::new(1, 3);
        let inst = MetricInstance::from_fn(3, |i, j| Rational::from_integer((i as i64 - j as i64).abs()) * third).unwrap();
        let p = Panel::new(vec![0, 2]).unwrap();
        assert_eq!(inst.q_cost(1, &p, 2).unwrap(), third);
    }

    fn arb_instance() -> impl Strategy<Value = (MetricInstance<f64>, u64)> {
        (3usize..12, any::<u64>()).prop_map(|(n, seed)| (fixtures::random_clustered(n, seed), seed))
    }

    proptest! {
        #[test]
        fn q_cost_monotone_under_superset((inst, seed) in arb_instance()) {
            let n = inst.n();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let small: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            prop_assume!(!small.is_empty());
            let mut big = small.clone();
            big.extend((0..n).filter(|x| !small.contains(x) && rng.gen_bool(0.5)));
            let (p, pp) = (Panel::new(small).unwrap(), Panel::new(big).unwrap());
            for q in 1..=p.len() {
                for i in 0..n {
                    prop_assert!(inst.q_cost(i, &pp, q).unwrap() <= inst.q_cost(i, &p, q).unwrap());
                }
            }
        }

        #[test]
        fn cost_is_one_lipschitz((inst, seed) in arb_instance()) {
            let n = inst.n();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x55);
            let members: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
            prop_assume!(!members.is_empty());
            let p = Panel::new(members).unwrap();
            for q in 1..=p.len() {
                for i in 0..n {
                    for j in 0..n {
                        let lhs = inst.q_cost(i, &p, q).unwrap();
                        let rhs = inst.dist(i, j) + inst.q_cost(j, &p, q).unwrap();
                        prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-12);
                    }
                }
            }
        }

        #[test]
        fn preference_count_monotone_in_alpha((inst, seed) in arb_instance()) {
            let n = inst.n();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
            let a: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            let b: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            prop_assume!(!a.is_empty() && !b.is_empty());
            let (p, alt) = (Panel::new(a).unwrap(), Panel::new(b).unwrap());
            let q = 1 + (seed as usize) % p.len().min(alt.len());
            let mut last = u64::MAX;
            for alpha in [1.0, 1.5, 2.0, 3.0, 6.0, 100.0] {
                let v = inst.preference_count(&p, &alt, &alpha, q).unwrap();
                prop_assert!(v <= last);
                last = v;
            }
        }
    }
}
