use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient extended to negative upper index:
/// the falling factorial `k(k−1)⋯(k−r+1)/r!` when `0 ≤ r < k` or
/// `k < 0 < r`, `1` when `r = (k + |k|)/2`, and `0` otherwise.
pub fn extbinom(k: i64, r: i64) -> BigInt {
    if (0 <= r && r < k) || (k < 0 && r > 0) {
        // c_{i+1} = c_i (k − i) / (i + 1) stays integral at every step
        let mut c = BigInt::one();
        for i in 0..r {
            c = c * BigInt::from(k - i) / BigInt::from(i + 1);
        }
        c
    } else if r == (k + k.abs()) / 2 {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

/// `binom(m − q, k) = Σ_{j=0}^{q} (−1)ʲ binom(m − j, k − j) binom(q, j)`.
/// A `false` return means `extbinom` is wrong somewhere.
pub fn check_binom_identity(m: i64, k: i64, q: u32) -> bool {
    let q = i64::from(q);
    let mut rhs = BigInt::zero();
    for j in 0..=q {
        let term = extbinom(m - j, k - j) * extbinom(q, j);
        if j % 2 == 0 {
            rhs += term;
        } else {
            rhs -= term;
        }
    }
    extbinom(m - q, k) == rhs
}

/// `Σ_{r=1}^{m} (−1)^{m−r} binom(q+m−r−2, m−r) binom(q, r−s)`.
pub fn delta_sum(m: i64, q: i64, s: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for r in 1..=m {
        let term = extbinom(q + m - r - 2, m - r) * extbinom(q, r - s);
        if (m - r) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Checks `delta_sum(m, q, s) = δ_{s, m−1}` for `1 ≤ s ≤ m − 1`, `q ≥ 1`.
pub fn check_delta_identity(m: u32, q: u32, s: u32) -> Result<bool> {
    if q < 1 || s < 1 || s + 1 > m {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= s <= m-1 and q >= 1, got m={m} q={q} s={s}"
        )));
    }
    let expected = if s + 1 == m {
        BigInt::one()
    } else {
        BigInt::zero()
    };
    Ok(delta_sum(m.into(), q.into(), s.into()) == expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(k: i64, r: i64) -> i64 {
        extbinom(k, r).try_into().unwrap()
    }

    #[test]
    fn extbinom_branches() {
        assert_eq!(b(5, 2), 10);
        assert_eq!(b(-1, 2), 1);
        assert_eq!(b(-1, 3), -1);
        assert_eq!(b(-2, 3), -4);
        assert_eq!(b(3, 5), 0);
        assert_eq!(b(-2, 0), 1);
        assert_eq!(b(0, 0), 1);
        assert_eq!(b(4, 4), 1);
        assert_eq!(b(4, -1), 0);
        assert_eq!(b(-3, -1), 0);
    }

    #[test]
    fn identity_examples() {
        assert!(check_binom_identity(5, 2, 3));
        assert!(check_binom_identity(0, 0, 1));
        assert_eq!(delta_sum(4, 3, 3), BigInt::one());
        assert_eq!(delta_sum(4, 3, 1), BigInt::zero());
        assert!(check_delta_identity(4, 3, 3).unwrap());
        assert!(check_delta_identity(4, 3, 4).is_err());
        assert!(check_delta_identity(4, 0, 1).is_err());
    }
}
