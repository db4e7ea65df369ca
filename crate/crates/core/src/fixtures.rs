//! Named instances from the analysis, plus random generators for tests.
//!
//! Group-structured instances place every member of a group at the same
//! location. An infinite distance is encoded as `D_max`, one million times
//! the largest finite distance, which keeps the triangle inequality intact.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::metric::{MetricInstance, Panel};
use crate::scalar::Scalar;

/// Factor between the largest finite distance and the encoded infinity.
pub const UNBOUNDED_FACTOR: u64 = 1_000_000;

/// An instance with named groups and designated panels.
#[derive(Clone, Debug)]
pub struct Fixture<D> {
    pub name: &'static str,
    pub instance: MetricInstance<D>,
    pub k: usize,
    pub q: Option<usize>,
    /// Distance standing in for infinity, if the construction has one.
    pub unbounded: Option<D>,
    groups: Vec<(String, Vec<usize>)>,
    panels: Vec<(String, Panel)>,
}

impl<D: Scalar> Fixture<D> {
    pub fn group(&self, name: &str) -> Option<&[usize]> {
        self.groups.iter().find(|g| g.0 == name).map(|g| g.1.as_slice())
    }

    pub fn panel(&self, name: &str) -> Option<&Panel> {
        self.panels.iter().find(|p| p.0 == name).map(|p| &p.1)
    }

    pub fn groups(&self) -> impl Iterator<Item = (&str, &[usize])> {
        self.groups.iter().map(|(n, g)| (n.as_str(), g.as_slice()))
    }

    pub fn panels(&self) -> impl Iterator<Item = (&str, &Panel)> {
        self.panels.iter().map(|(n, p)| (n.as_str(), p))
    }

    /// `true` when `alpha` is only finite because infinity was encoded as
    /// `D_max`: any ratio at least `D_max / max finite distance` would be
    /// unbounded in the original construction.
    pub fn is_effectively_unbounded(&self, alpha: f64) -> bool {
        self.unbounded.is_some() && alpha >= UNBOUNDED_FACTOR as f64 / 10.0
    }
}

/// Parameters accepted by [`fixture`]. Unused fields are ignored.
#[derive(Clone, Copy, Debug, Default)]
pub struct FixtureParams {
    pub n: usize,
    pub k: usize,
    pub q: usize,
    pub epsilon: f64,
}

/// Builds a fixture by name: `thm31`, `thm42`, `appxA`, `appxB_tight`,
/// `propE1_a`, `propE1_b` or `appxG` (the last is `f64` only; use
/// [`appx_g`]).
pub fn fixture<D: Scalar>(name: &str, p: &FixtureParams) -> Result<Fixture<D>> {
    match name {
        "thm31" => thm31_in(p.n, p.k),
        "thm42" => thm42_in(p.k, p.q, p.n),
        "appxA" => appx_a_in(p.n),
        "appxB_tight" => appx_b_tight_in(p.n, p.k),
        "propE1_a" => prop_e1_a_in(p.n, p.k, p.q),
        "propE1_b" => prop_e1_b_in(p.n, p.k, p.q),
        "appxG" => invalid("appxG has irrational distances; call fixtures::appx_g"),
        other => invalid(format!("unknown fixture `{other}`")),
    }
}

pub const FIXTURE_NAMES: [&str; 7] = ["thm31", "thm42", "appxA", "appxB_tight", "propE1_a", "propE1_b", "appxG"];

fn d<D: Scalar>(v: u64) -> D {
    D::from_u64(v).expect("small integer")
}

/// Group-level distance table; `None` is infinity.
struct Groups<D> {
    names: Vec<&'static str>,
    sizes: Vec<usize>,
    table: Vec<Vec<Option<D>>>,
}

impl<D: Scalar> Groups<D> {
    fn build(self, name: &'static str, k: usize, q: Option<usize>) -> Result<Fixture<D>> {
        let mut owner = Vec::new();
        let mut groups = Vec::new();
        for (g, (&gname, &size)) in self.names.iter().zip(&self.sizes).enumerate() {
            groups.push((gname.to_string(), (owner.len()..owner.len() + size).collect()));
            owner.extend(std::iter::repeat(g).take(size));
        }
        let max_finite = self.table.iter().flatten().flatten().fold(D::zero(), |m, v| if *v > m { v.clone() } else { m });
        let has_inf = self.table.iter().enumerate().any(|(a, row)| {
            row.iter().enumerate().any(|(b, v)| v.is_none() && self.sizes[a] > 0 && self.sizes[b] > 0)
        });
        let big = max_finite * d(UNBOUNDED_FACTOR);
        let rows = owner
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                owner
                    .iter()
                    .enumerate()
                    .map(|(j, &b)| if i == j { D::zero() } else { self.table[a][b].clone().unwrap_or_else(|| big.clone()) })
                    .collect()
            })
            .collect();
        let instance = MetricInstance::new(rows)?;
        Ok(Fixture { name, instance, k, q, unbounded: has_inf.then_some(big), groups, panels: Vec::new() })
    }
}

impl<D: Scalar> Fixture<D> {
    fn with_panel(mut self, name: &str, members: Vec<usize>) -> Result<Self> {
        self.panels.push((name.to_string(), Panel::new(members)?));
        Ok(self)
    }

    fn take(&self, group: &str, count: usize) -> Vec<usize> {
        self.group(group).map(|g| g[..count].to_vec()).unwrap_or_default()
    }
}

/// Group `A` of `⌊n/k⌋` and group `B` of the rest; distance 0 inside a
/// group and 1 across. Panel `all-A` seats the first `k` members of `A`.
pub fn thm31(n: usize, k: usize) -> Result<Fixture<f64>> {
    thm31_in(n, k)
}

fn thm31_in<D: Scalar>(n: usize, k: usize) -> Result<Fixture<D>> {
    if k < 2 || k > n || n / k < k || n / k == n {
        return invalid(format!("thm31 needs 2 ≤ k and ⌊n/k⌋ ≥ k with a nonempty second group (n = {n}, k = {k})"));
    }
    let a = n / k;
    let g = Groups {
        names: vec!["A", "B"],
        sizes: vec![a, n - a],
        table: vec![vec![Some(D::zero()), Some(D::one())], vec![Some(D::one()), Some(D::zero())]],
    };
    let fx = g.build("thm31", k, None)?;
    let all_a = fx.take("A", k);
    fx.with_panel("all-A", all_a)
}

/// Star with `q` co-located centers `I` and `n − q` leaves; centers are at
/// distance 1 from every leaf and leaves at distance 2 from each other.
pub fn thm42(k: usize, q: usize, n: usize) -> Result<Fixture<f64>> {
    thm42_in(k, q, n)
}

fn thm42_in<D: Scalar>(k: usize, q: usize, n: usize) -> Result<Fixture<D>> {
    if q == 0 || q >= k || k > n || n * (k - q) < 2 * k * k {
        return invalid(format!("thm42 needs 1 ≤ q < k ≤ n and n ≥ 2k²/(k−q) (n = {n}, k = {k}, q = {q})"));
    }
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i == j, i < q, j < q) {
                    (true, _, _) | (false, true, true) => D::zero(),
                    (false, true, false) | (false, false, true) => D::one(),
                    (false, false, false) => d(2),
                })
                .collect()
        })
        .collect();
    let fx = Fixture {
        name: "thm42",
        instance: MetricInstance::new(rows)?,
        k,
        q: Some(q),
        unbounded: None,
        groups: vec![("I".into(), (0..q).collect()), ("leaves".into(), (q..n).collect())],
        panels: Vec::new(),
    };
    fx.with_panel("I", (0..q).collect())
}

/// Singletons `A` and `B` far from everyone, and two halves `C`, `D` at
/// distance 10 from each other; `k = 3`, `q = 1`.
pub fn appx_a(n: usize) -> Result<Fixture<f64>> {
    appx_a_in(n)
}

fn appx_a_in<D: Scalar>(n: usize) -> Result<Fixture<D>> {
    if n < 3 || n % 2 == 0 {
        return invalid(format!("appxA needs an odd n ≥ 3 (n = {n})"));
    }
    let h = (n - 1) / 2;
    let (z, ten) = (Some(D::zero()), Some(d::<D>(10)));
    let g = Groups {
        names: vec!["A", "B", "C", "D"],
        sizes: vec![1, 1, h, h],
        table: vec![
            vec![z.clone(), None, None, None],
            vec![None, z.clone(), None, None],
            vec![None, None, z.clone(), ten.clone()],
            vec![None, None, ten, z],
        ],
    };
    g.build("appxA", 3, Some(1))
}

/// Groups `A`, `B`, `C` of sizes `⌊k/2⌋`, `⌈k/2⌉`, `n − k`; `A`–`B` at
/// distance 2 and both at distance 1 from `C`. Panel `A+B` is all of `A ∪ B`.
pub fn appx_b_tight(n: usize, k: usize) -> Result<Fixture<f64>> {
    appx_b_tight_in(n, k)
}

fn appx_b_tight_in<D: Scalar>(n: usize, k: usize) -> Result<Fixture<D>> {
    if k < 2 || n <= k {
        return invalid(format!("appxB_tight needs 2 ≤ k < n (n = {n}, k = {k})"));
    }
    let (z, one, two) = (Some(D::zero()), Some(D::one()), Some(d::<D>(2)));
    let g = Groups {
        names: vec!["A", "B", "C"],
        sizes: vec![k / 2, k - k / 2, n - k],
        table: vec![
            vec![z.clone(), two.clone(), one.clone()],
            vec![two, z.clone(), one.clone()],
            vec![one.clone(), one, z],
        ],
    };
    let fx = g.build("appxB_tight", k, Some(k))?;
    let c = fx.take("C", k.min(n - k));
    let fx = fx.with_panel("A+B", (0..k).collect())?;
    if n - k >= k {
        fx.with_panel("C", c)
    } else {
        Ok(fx)
    }
}

/// Three groups `A`, `B`, `C` of `(qn/k − q)/3` pairwise at distance 2, a
/// hub `D` of `q` at distance 1 from them, and a far group `E` of the rest.
/// Panels `P_A`, `P_B`, `P_C` seat `q` members of that group and fill up
/// from `E`; `P'` is the hub.
pub fn prop_e1_a(n: usize, k: usize, q: usize) -> Result<Fixture<f64>> {
    prop_e1_a_in(n, k, q)
}

fn prop_e1_a_in<D: Scalar>(n: usize, k: usize, q: usize) -> Result<Fixture<D>> {
    if q == 0 || q > k || q % 3 != 0 || n % k != 0 || n / k < 2 {
        return invalid(format!("propE1_a needs 3 | q ≤ k, k | n and n ≥ 2k (n = {n}, k = {k}, q = {q})"));
    }
    let entitled = q * n / k;
    let s = (entitled - q) / 3;
    let (z, one, two) = (Some(D::zero()), Some(D::one()), Some(d::<D>(2)));
    let g = Groups {
        names: vec!["A", "B", "C", "D", "E"],
        sizes: vec![s, s, s, q, n - entitled],
        table: vec![
            vec![z.clone(), two.clone(), two.clone(), one.clone(), None],
            vec![two.clone(), z.clone(), two.clone(), one.clone(), None],
            vec![two.clone(), two, z.clone(), one.clone(), None],
            vec![one.clone(), one.clone(), one, z.clone(), None],
            vec![None, None, None, None, z],
        ],
    };
    let mut fx = g.build("propE1_a", k, Some(q))?;
    let fill = fx.take("E", k - q);
    for name in ["A", "B", "C"] {
        let mut members = fx.take(name, q);
        members.extend(&fill);
        fx = fx.with_panel(&format!("P_{name}"), members)?;
    }
    let hub = fx.take("D", q);
    fx.with_panel("P'", hub)
}

/// `A` of `qn/k − q`, `B` and `C` of `q` each, far group `D` of the rest;
/// `A`–`B` and `B`–`C` at distance 1, `A`–`C` at 2. Panels `P_1`, `P_2` seat
/// `q` members of `A` (resp. `C`) plus `k − q` of `D`; `P'` is `B`.
pub fn prop_e1_b(n: usize, k: usize, q: usize) -> Result<Fixture<f64>> {
    prop_e1_b_in(n, k, q)
}

fn prop_e1_b_in<D: Scalar>(n: usize, k: usize, q: usize) -> Result<Fixture<D>> {
    if q == 0 || q > k || (q * n) % k != 0 || q * n / k < q {
        return invalid(format!("propE1_b needs q ≤ k and k | qn (n = {n}, k = {k}, q = {q})"));
    }
    let entitled = q * n / k;
    if n < entitled + q + (k - q) {
        return invalid(format!("propE1_b needs n ≥ qn/k + k (n = {n}, k = {k}, q = {q})"));
    }
    let (z, one, two) = (Some(D::zero()), Some(D::one()), Some(d::<D>(2)));
    let g = Groups {
        names: vec!["A", "B", "C", "D"],
        sizes: vec![entitled - q, q, q, n - entitled - q],
        table: vec![
            vec![z.clone(), one.clone(), two.clone(), None],
            vec![one.clone(), z.clone(), one.clone(), None],
            vec![two, one, z.clone(), None],
            vec![None, None, None, z],
        ],
    };
    let mut fx = g.build("propE1_b", k, Some(q))?;
    let fill = fx.take("D", k - q);
    for (panel, group) in [("P_1", "A"), ("P_2", "C")] {
        let mut members = fx.take(group, q);
        members.extend(&fill);
        fx = fx.with_panel(panel, members)?;
    }
    let b = fx.take("B", q);
    fx.with_panel("P'", b)
}

/// Four far-apart copies of a 7-point block (`n = 28`, `k = 7`, `q = 1`).
///
/// Within a block the ids are ordered `a5, a6, a7, a4, a1, a2, a3`, so that
/// with ascending-id tie-breaking the first ball opened in each block is the
/// one centered at `a5` with radius `1 − ε`. Groups `block0..block3` list
/// ids in that order; `a1`..`a7` name the points of block 0. Panel `bad`
/// seats `a7` as the only member of block 0, `a5` and `a2` in blocks 1 and 2,
/// and `a5` in block 3.
pub fn appx_g(epsilon: f64) -> Result<Fixture<f64>> {
    if !(epsilon > 0.0 && epsilon < 0.05) {
        return invalid(format!("appxG needs 0 < ε < 0.05 (ε = {epsilon})"));
    }
    let s = 17f64.sqrt();
    let e = epsilon;
    // labels a1..a7 are indices 0..7
    let mut t = [[0.0f64; 7]; 7];
    let upper = [
        (0, 1, 1.0),
        (0, 2, 2.0),
        (0, 3, (s - 1.0) / 2.0),
        (0, 4, (s + 1.0) / 2.0 - e),
        (0, 5, (s + 1.0) / 2.0 - e),
        (0, 6, (s + 3.0) / 2.0 - 2.0 * e),
        (1, 2, 1.0),
        (1, 3, (s - 3.0) / 2.0),
        (1, 4, (s - 1.0) / 2.0 - e),
        (1, 5, (s - 1.0) / 2.0 - e),
        (1, 6, (s + 1.0) / 2.0 - 2.0 * e),
        (2, 3, (s - 1.0) / 2.0),
        (2, 4, (s + 1.0) / 2.0 - e),
        (2, 5, (s + 1.0) / 2.0 - e),
        (2, 6, (s + 3.0) / 2.0 - 2.0 * e),
        (3, 4, 1.0 - e),
        (3, 5, 1.0 - e),
        (3, 6, 2.0 - 2.0 * e),
        (4, 5, 0.0),
        (4, 6, 1.0 - e),
        (5, 6, 1.0 - e),
    ];
    for (a, b, v) in upper {
        t[a][b] = v;
        t[b][a] = v;
    }
    // position within a block -> label index
    const ORDER: [usize; 7] = [4, 5, 6, 3, 0, 1, 2];
    let max_finite = t.iter().flatten().cloned().fold(0.0, f64::max);
    let big = max_finite * UNBOUNDED_FACTOR as f64;
    let n = 28;
    let rows = (0..n)
        .map(|i| (0..n).map(|j| if i / 7 != j / 7 { big } else { t[ORDER[i % 7]][ORDER[j % 7]] }).collect())
        .collect();
    let mut groups: Vec<(String, Vec<usize>)> = (0..4).map(|b| (format!("block{b}"), (7 * b..7 * b + 7).collect())).collect();
    let pos = |label: usize| ORDER.iter().position(|&l| l == label).expect("label");
    for label in 0..7 {
        groups.push((format!("a{}", label + 1), vec![pos(label)]));
    }
    let fx = Fixture { name: "appxG", instance: MetricInstance::new(rows)?, k: 7, q: Some(1), unbounded: Some(big), groups, panels: Vec::new() };
    let (a2, a5, a7) = (pos(1), pos(4), pos(6));
    fx.with_panel("bad", vec![a7, 7 + a5, 7 + a2, 14 + a5, 14 + a2, 21 + a5, 21 + a2].into_iter().take(7).collect())
}

/// Points uniform in the unit cube of dimension `dim`, Euclidean distances.
pub fn random_euclidean(n: usize, dim: usize, seed: u64) -> MetricInstance<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect()).collect();
    let rows = pts
        .iter()
        .map(|a| pts.iter().map(|b| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()).collect())
        .collect();
    MetricInstance::from_trusted_rows(rows).expect("euclidean distances form a metric")
}

/// Clustered points on a small integer grid with `L1` distances. Ties and
/// co-located points are common, and every distance is an exact integer, so
/// the instance is the same in every scalar type.
pub fn random_grid<D: Scalar>(n: usize, seed: u64) -> MetricInstance<D> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clusters = rng.gen_range(1..=4usize);
    let centers: Vec<(i64, i64)> = (0..clusters).map(|_| (rng.gen_range(0..40), rng.gen_range(0..40))).collect();
    let spread = rng.gen_range(0..=3i64);
    let pts: Vec<(i64, i64)> = (0..n)
        .map(|_| {
            let c = centers[rng.gen_range(0..clusters)];
            (c.0 + rng.gen_range(-spread..=spread), c.1 + rng.gen_range(-spread..=spread))
        })
        .collect();
    let rows = pts.iter().map(|a| pts.iter().map(|b| d::<D>(((a.0 - b.0).abs() + (a.1 - b.1).abs()) as u64)).collect()).collect();
    MetricInstance::from_trusted_rows(rows).expect("L1 distances form a metric")
}

pub fn random_clustered(n: usize, seed: u64) -> MetricInstance<f64> {
    random_grid(n, seed)
}
