use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::scalar::BigRational;

/// Exact binomial coefficient; zero when `r > n`.
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        // acc·(n−i) is divisible by i+1 at every step
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Both sides of `Σ_{j=0}^{n} C(j, r)·C(n − j, k − r) = C(n + 1, k + 1)`.
pub fn chu_vandermonde_check(n: u64, k: u64, r: u64) -> Result<(BigUint, BigUint)> {
    if r > k || k > n {
        return invalid(format!("need r ≤ k ≤ n, got r = {r}, k = {k}, n = {n}"));
    }
    let lhs = (0..=n).map(|j| binomial(j, r) * binomial(n - j, k - r)).sum();
    Ok((lhs, binomial(n + 1, k + 1)))
}

/// Probability that a uniform `k`-subset of `[n]` holds fewer than `q` of
/// `j` designated individuals: `Σ_{r<q} C(j, r)·C(n − j, k − r) / C(n, k)`.
pub fn exante_uniform_bound(n: u64, k: u64, q: u64, j: u64) -> Result<BigRational> {
    if j > n || q > k || k > n {
        return invalid(format!("need j ≤ n and q ≤ k ≤ n, got n = {n}, k = {k}, q = {q}, j = {j}"));
    }
    let num: BigUint = (0..q).map(|r| binomial(j, r) * binomial(n - j, k - r)).sum();
    Ok(BigRational::new(BigInt::from(num), BigInt::from(binomial(n, k))))
}
