use std::collections::BTreeMap;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Univariate Laurent polynomial with exact coefficients; zero terms are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::default();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `1 + z^exp`
    pub fn one_plus(exp: i64) -> Self {
        let mut p = Self::constant(1);
        p.add_term(exp, BigInt::one());
        p
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        let slot = self.terms.entry(exp).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// Polynomial in `u` and `t` stored as a map from `(r, k)` to the
/// coefficient of `uʳtᵏ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    terms: BTreeMap<(u64, i64), BigInt>,
}

impl BivariatePoly {
    pub fn coeff(&self, r: u64, k: i64) -> BigInt {
        self.terms.get(&(r, k)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u64, i64), &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Multiplies in place by `1 + u·tᵉ`.
    fn mul_one_plus_ut(&mut self, e: i64) {
        let shifted: Vec<((u64, i64), BigInt)> = self
            .terms
            .iter()
            .map(|(&(r, k), c)| ((r + 1, k + e), c.clone()))
            .collect();
        for (key, c) in shifted {
            let slot = self.terms.entry(key).or_default();
            *slot += c;
            if slot.is_zero() {
                self.terms.remove(&key);
            }
        }
    }
}

/// Expansion of `∏_{i=1}^{n} (1 + u tⁱ)`; the coefficient of `uʳtᵏ` is
/// `P(n, r, k)`.
pub fn genfun_coeffs(n: usize) -> BivariatePoly {
    let mut p = BivariatePoly::default();
    p.terms.insert((0, 0), BigInt::one());
    for i in 1..=n {
        p.mul_one_plus_ut(i as i64);
    }
    p
}

/// `aₙ` as the constant term of `∏_{i=1}^{n} (1 + z^{2i−n−1})`, with an
/// extra factor `1 + z` when `n` is even (the half-integer exponents of the
/// `t`-form become integers under `t = z²`).
pub fn rank_by_genfun(n: usize) -> BigInt {
    let n = n as i64;
    let mut p = if n % 2 == 0 {
        LaurentPoly::one_plus(1)
    } else {
        LaurentPoly::constant(1)
    };
    for i in 1..=n {
        p = &p * &LaurentPoly::one_plus(2 * i - n - 1);
    }
    p.constant_term()
}
