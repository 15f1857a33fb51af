//! Seeded randomized property suites shared by `pvk verify` and the
//! acceptance tests.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use pvk_core::combinatorics::{check_binom_identity, check_delta_identity, rank_by_partitions};
use pvk_core::exactmat::{cokernel, cokernel_oracle, ORACLE_MAX_DET};
use pvk_core::ktheory::{duality_check, pv_kgroups, rank_kgroups};
use pvk_core::ZMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 20_110_101;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str, seed: Option<u64>) -> Self {
        SuiteResult {
            name,
            seed,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Determinant exactly 1: random elementary row additions, swaps and sign
/// flips, with the first row negated at the end if the sign came out wrong.
pub fn random_det_one(rng: &mut impl Rng, n: usize) -> ZMatrix {
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut sign = 1;
    if n >= 2 {
        for _ in 0..2 * n * n {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            match rng.gen_range(0..8) {
                0 => {
                    rows.swap(i, j);
                    sign = -sign;
                }
                1 => {
                    rows[i].iter_mut().for_each(|x| *x = -*x);
                    sign = -sign;
                }
                _ => {
                    let c = rng.gen_range(-2i64..=2);
                    let src = rows[j].clone();
                    rows[i].iter_mut().zip(src).for_each(|(x, s)| *x += c * s);
                }
            }
        }
    }
    if sign < 0 {
        rows[0].iter_mut().for_each(|x| *x = -*x);
    }
    ZMatrix::from_rows(&rows)
}

/// Upper triangular, unit diagonal, nonzero superdiagonal, all off-diagonal
/// entries in `[-bound, bound]`.
pub fn random_max_degree_unipotent(rng: &mut impl Rng, n: usize, bound: i64) -> ZMatrix {
    let mut a = ZMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            let mut v = rng.gen_range(-bound..=bound);
            while j == i + 1 && v == 0 {
                v = rng.gen_range(-bound..=bound);
            }
            a[(i, j)] = BigInt::from(v);
        }
    }
    a
}

/// Square matrix of size 2 or 3 with `1 ≤ |det| ≤ 200`.
pub fn random_small_nonsingular(rng: &mut impl Rng) -> ZMatrix {
    loop {
        let n = rng.gen_range(2..=3);
        let data = (0..n * n)
            .map(|_| BigInt::from(rng.gen_range(-9..=9)))
            .collect();
        let a = ZMatrix::from_vec(n, n, data).expect("shape");
        let det = a.det().expect("square").abs();
        if !det.is_zero() && det <= BigInt::from(ORACLE_MAX_DET) {
            return a;
        }
    }
}

pub fn binomial_identity() -> SuiteResult {
    let mut s = SuiteResult::new("binomial-identity", None);
    for m in -10..=10 {
        for k in -10..=10 {
            for q in 1..=8 {
                s.record(check_binom_identity(m, k, q), || {
                    format!("m={m} k={k} q={q}")
                });
            }
        }
    }
    s
}

pub fn delta_identity() -> SuiteResult {
    let mut s = SuiteResult::new("delta-identity", None);
    for m in 2..=10 {
        for q in 1..=10 {
            for t in 1..m {
                let ok = check_delta_identity(m, q, t).unwrap_or(false);
                s.record(ok, || format!("m={m} q={q} s={t}"));
            }
        }
    }
    s
}

pub fn duality(seed: u64, count: usize) -> SuiteResult {
    let mut s = SuiteResult::new("duality", Some(seed));
    let mut rng = rng(seed);
    for _ in 0..count {
        let n = rng.gen_range(1..=5);
        let a = random_det_one(&mut rng, n);
        let ok = duality_check(&a).unwrap_or(false);
        s.record(ok, || format!("{:?}", a.to_rows()));
    }
    s
}

pub fn oracle(seed: u64, count: usize) -> SuiteResult {
    let mut s = SuiteResult::new("oracle", Some(seed));
    let mut rng = rng(seed);
    for _ in 0..count {
        let a = random_small_nonsingular(&mut rng);
        let ok = cokernel_oracle(&a).is_ok_and(|g| g == cokernel(&a));
        s.record(ok, || format!("{:?}", a.to_rows()));
    }
    s
}

pub fn unipotent_rank(seed: u64, count: usize, max_n: usize) -> SuiteResult {
    let mut s = SuiteResult::new("unipotent-rank", Some(seed));
    let mut rng = rng(seed);
    for _ in 0..count {
        let n = rng.gen_range(1..=max_n);
        let a = random_max_degree_unipotent(&mut rng, n, 5);
        let want = rank_by_partitions(n);
        let ok = rank_kgroups(&a).is_ok_and(|r| BigInt::from(r) == want);
        s.record(ok, || format!("{:?}", a.to_rows()));
    }
    s
}

pub fn odd_symmetry(seed: u64, count: usize) -> SuiteResult {
    let mut s = SuiteResult::new("odd-symmetry", Some(seed));
    let mut rng = rng(seed);
    for _ in 0..count {
        let n = [1, 3, 5, 7][rng.gen_range(0..4)];
        let a = random_det_one(&mut rng, n);
        debug_assert!(a.det().is_ok_and(|d| d.is_one()));
        let ok = pv_kgroups(&a).is_ok_and(|k| k.k0 == k.k1);
        s.record(ok, || format!("{:?}", a.to_rows()));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_respect_their_contracts() {
        let mut r = rng(1);
        for n in 1..=6 {
            for _ in 0..10 {
                assert!(random_det_one(&mut r, n).det().unwrap().is_one());
                let u = random_max_degree_unipotent(&mut r, n, 5);
                assert!(u.is_upper_triangular());
                assert!((0..n.saturating_sub(1)).all(|i| !u[(i, i + 1)].is_zero()));
            }
        }
        for _ in 0..20 {
            let a = random_small_nonsingular(&mut r);
            let d = a.det().unwrap().abs();
            assert!(d >= BigInt::one() && d <= BigInt::from(200));
        }
    }

    #[test]
    fn suites_are_reproducible() {
        let a = duality(7, 5);
        let b = duality(7, 5);
        assert_eq!((a.cases, a.failures), (b.cases, b.failures));
        assert!(a.passed());
        assert!(binomial_identity().passed());
    }
}
