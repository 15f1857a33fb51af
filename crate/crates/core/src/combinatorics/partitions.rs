use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::genfun::rank_by_genfun;
use crate::error::{Error, Result};

/// `P(n, r, k)` for one fixed `n` and every `r ≤ n`, `0 ≤ k ≤ n(n+1)/2`.
#[derive(Clone, Debug)]
pub struct PartitionTable {
    n: usize,
    // counts[r][k]
    counts: Vec<Vec<BigInt>>,
}

impl PartitionTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_sum(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    /// Out-of-range arguments count zero partitions.
    pub fn get(&self, r: usize, k: i64) -> BigInt {
        match (self.counts.get(r), usize::try_from(k)) {
            (Some(row), Ok(k)) => row.get(k).cloned().unwrap_or_default(),
            _ => BigInt::zero(),
        }
    }
}

/// Counts by adding the parts `1, …, n` one at a time.
pub fn partition_table(n: usize) -> PartitionTable {
    let max = n * (n + 1) / 2;
    let mut counts = vec![vec![BigInt::zero(); max + 1]; n + 1];
    counts[0][0] = BigInt::one();
    for part in 1..=n {
        for r in (1..=part).rev() {
            let top = part * (part + 1) / 2;
            for k in (part..=top).rev() {
                if !counts[r - 1][k - part].is_zero() {
                    let add = counts[r - 1][k - part].clone();
                    counts[r][k] += add;
                }
            }
        }
    }
    PartitionTable { n, counts }
}

/// Number of ways to write `k` as a sum of `r` distinct integers in `1..=n`.
pub fn partition_count(n: usize, r: usize, k: i64) -> BigInt {
    if r > n || k < 0 || k as u128 > (n * (n + 1) / 2) as u128 {
        return BigInt::zero();
    }
    partition_table(n).get(r, k)
}

/// `a_{n,r} = P(n, r, ⌊r(n+1)/2⌋)`.
pub fn a_nr(n: usize, r: usize) -> Result<BigInt> {
    if r > n {
        return Err(Error::DegreeOutOfRange { n, r });
    }
    Ok(partition_count(n, r, (r * (n + 1) / 2) as i64))
}

/// `aₙ = Σᵣ a_{n,r}`.
pub fn rank_by_partitions(n: usize) -> BigInt {
    let table = partition_table(n);
    (0..=n)
        .map(|r| table.get(r, (r * (n + 1) / 2) as i64))
        .sum()
}

/// `√(24/π)`, the limit of [`asymptotic_ratio`].
pub fn asymptotic_limit() -> f64 {
    (24.0 / std::f64::consts::PI).sqrt()
}

/// `aₙ n^{3/2} / 2ⁿ` truncated to `digits` decimals, computed exactly as
/// `⌊√(aₙ² n³ 10^{2·digits} / 4ⁿ)⌋`.
pub fn asymptotic_ratio(n: usize, digits: u32) -> String {
    let a = rank_by_genfun(n);
    let scale = BigInt::from(10u32).pow(2 * digits);
    let num = &a * &a * BigInt::from(n).pow(3) * scale;
    let den = BigInt::one() << (2 * n);
    let v = (num / den).sqrt();
    let unit = BigInt::from(10u32).pow(digits);
    let (int, frac) = (&v / &unit, &v % &unit);
    if digits == 0 {
        int.to_string()
    } else {
        format!("{int}.{frac:0>width$}", width = digits as usize)
    }
}
