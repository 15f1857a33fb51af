//! Brute-force cokernel for small nonsingular square matrices.
//!
//! Cosets of `A·Zⁿ` are keyed by `adj(A)·v mod |det A|`, which is zero
//! exactly on the lattice, so the quotient embeds in `(Z/|det|)ⁿ`. The
//! group is enumerated by breadth-first closure under the images of the
//! standard basis and identified from its element-order census. Nothing
//! here shares code with the Smith-form path.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::abelian::FGAbelianGroup;
use super::matrix::ZMatrix;
use crate::error::{Error, Result};

pub const ORACLE_MAX_DIM: usize = 3;
pub const ORACLE_MAX_DET: i64 = 200;

fn small_entries(a: &ZMatrix) -> Result<Vec<Vec<i64>>> {
    (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .map(|x| {
                    x.to_i64()
                        .filter(|v| v.unsigned_abs() < 1 << 20)
                        .ok_or_else(|| Error::OracleBounds(format!("entry {x} too large")))
                })
                .collect()
        })
        .collect()
}

fn cofactor_det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * cofactor_det(&minor)
            })
            .sum(),
    }
}

fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let cofactor = |i: usize, j: usize| -> i64 {
        let minor: Vec<Vec<i64>> = m
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != i)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sign = if (i + j).is_multiple_of(2) { 1 } else { -1 };
        sign * cofactor_det(&minor)
    };
    // adj = transpose of the cofactor matrix
    (0..n)
        .map(|j| (0..n).map(|i| cofactor(i, j)).collect())
        .collect()
}

fn prime_factors(mut d: u64) -> Vec<u64> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            ps.push(p);
            while d.is_multiple_of(p) {
                d /= p;
            }
        }
        p += 1;
    }
    if d > 1 {
        ps.push(d);
    }
    ps
}

/// Structure of `Zⁿ / A·Zⁿ` for square `A` with `n ≤ 3`, `0 < |det A| ≤ 200`.
pub fn cokernel_oracle(a: &ZMatrix) -> Result<FGAbelianGroup> {
    if !a.is_square() || a.rows() > ORACLE_MAX_DIM {
        return Err(Error::OracleBounds(format!(
            "{}x{} matrix; oracle accepts square matrices up to {ORACLE_MAX_DIM}x{ORACLE_MAX_DIM}",
            a.rows(),
            a.cols()
        )));
    }
    let m = small_entries(a)?;
    let n = m.len();
    let det = cofactor_det(&m);
    if det == 0 || det.abs() > ORACLE_MAX_DET {
        return Err(Error::OracleBounds(format!(
            "|det| = {} outside 1..={ORACLE_MAX_DET}",
            det.abs()
        )));
    }
    let d = det.abs();
    let adj = adjugate(&m);
    let gens: Vec<Vec<i64>> = (0..n)
        .map(|j| (0..n).map(|i| adj[i][j].rem_euclid(d)).collect())
        .collect();

    let zero = vec![0i64; n];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| (a + b) % d).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }

    let orders: Vec<u64> = seen
        .iter()
        .map(|x| {
            (1..=d)
                .find(|k| x.iter().all(|c| (c * k) % d == 0))
                .expect("every element has order dividing |det|") as u64
        })
        .collect();
    let group_order = orders.len() as u64;
    let count_dividing = |m: u64| orders.iter().filter(|&&o| m.is_multiple_of(o)).count() as u64;

    // For each prime, exps[k-1] = number of cyclic factors of order ≥ p^k.
    let mut chain_exps: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in prime_factors(group_order) {
        let mut per_factor = Vec::new();
        let mut prev = 1u64;
        let mut pk = 1u64;
        loop {
            pk *= p;
            let now = count_dividing(pk);
            if now == prev {
                break;
            }
            let mut ratio = now / prev;
            let mut factors_at_least = 0usize;
            while ratio > 1 {
                ratio /= p;
                factors_at_least += 1;
            }
            per_factor.push(factors_at_least);
            prev = now;
        }
        // per_factor is non-increasing; turn it into one exponent per factor
        let count = per_factor.first().copied().unwrap_or(0);
        let exps: Vec<u32> = (0..count)
            .map(|i| per_factor.iter().filter(|&&c| c > i).count() as u32)
            .collect();
        chain_exps.push((p, exps));
    }
    let len = chain_exps.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    // exps are sorted largest first; the largest invariant factor collects
    // the largest exponent of every prime.
    let mut factors = vec![1u64; len];
    for (p, exps) in &chain_exps {
        for (i, e) in exps.iter().enumerate() {
            factors[i] *= p.pow(*e);
        }
    }
    Ok(FGAbelianGroup::new(
        0,
        factors.into_iter().map(BigInt::from).collect(),
    ))
}
