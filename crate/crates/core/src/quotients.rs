//! Invariants of the simple infinite-dimensional quotients of `C*(𝔇ₙ)`.
//!
//! Circle elements are written `e^{2πi(a + bθ)}` with `a, b` rational and
//! `θ` a fixed formal irrational, so equality is decided exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::extbinom;
use crate::error::{Error, Result};

/// `e^{2πi(rat + irr·θ)}` with `rat` reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircleElement {
    rat: BigRational,
    irr: BigRational,
}

fn frac(x: BigRational) -> BigRational {
    &x - x.floor()
}

impl CircleElement {
    pub fn new(rat: BigRational, irr: BigRational) -> Self {
        CircleElement {
            rat: frac(rat),
            irr,
        }
    }

    pub fn one() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    /// `e^{2πi·p/q}`
    pub fn root_of_unity(p: i64, q: i64) -> Self {
        Self::new(BigRational::new(p.into(), q.into()), BigRational::zero())
    }

    /// `e^{2πi(p/q)θ}`
    pub fn theta_power(p: i64, q: i64) -> Self {
        Self::new(BigRational::zero(), BigRational::new(p.into(), q.into()))
    }

    pub fn rat(&self) -> &BigRational {
        &self.rat
    }

    pub fn irr(&self) -> &BigRational {
        &self.irr
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.irr.is_zero()
    }

    /// Multiplicative order, `None` unless a root of unity.
    pub fn order(&self) -> Option<BigInt> {
        self.is_root_of_unity().then(|| self.rat.denom().clone())
    }

    pub fn pow(&self, e: &BigInt) -> Self {
        let e = BigRational::from_integer(e.clone());
        Self::new(&self.rat * &e, &self.irr * &e)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.rat + &other.rat, &self.irr + &other.irr)
    }

    pub fn inverse(&self) -> Self {
        Self::new(-&self.rat, -&self.irr)
    }
}

impl fmt::Display for CircleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp(2πi({} + {}θ))", self.rat, self.irr)
    }
}

/// `∏ zₖ^{eₖ}`.
pub fn circle_pow_mul(factors: &[(CircleElement, BigInt)]) -> CircleElement {
    factors
        .iter()
        .fold(CircleElement::one(), |acc, (z, e)| acc.mul(&z.pow(e)))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// Wire form `{"rat":"1/4","irr":"0"}`; integers may also be bare numbers.
#[derive(Serialize, Deserialize)]
pub(crate) struct CircleDoc {
    rat: serde_json::Value,
    irr: serde_json::Value,
}

fn rational_field(v: &serde_json::Value) -> Result<BigRational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) if n.is_i64() => {
            Ok(BigRational::from_integer(n.as_i64().unwrap().into()))
        }
        other => Err(Error::Parse(format!(
            "expected a rational like \"1/4\", got {other}"
        ))),
    }
}

impl TryFrom<CircleDoc> for CircleElement {
    type Error = Error;

    fn try_from(doc: CircleDoc) -> Result<Self> {
        Ok(CircleElement::new(
            rational_field(&doc.rat)?,
            rational_field(&doc.irr)?,
        ))
    }
}

impl From<&CircleElement> for CircleDoc {
    fn from(z: &CircleElement) -> Self {
        CircleDoc {
            rat: serde_json::Value::String(z.rat.to_string()),
            irr: serde_json::Value::String(z.irr.to_string()),
        }
    }
}

/// A simple infinite-dimensional quotient: the faithful one (`i = 0`,
/// determined by `λ`) or the level-`i` quotient with `λ, μ₁, …, μ_{i−1}`
/// roots of unity and `μᵢ` not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpec {
    pub n: usize,
    pub i: usize,
    pub lambda: CircleElement,
    pub mu: Vec<CircleElement>,
}

#[derive(Serialize, Deserialize)]
struct QuotientDoc {
    n: usize,
    i: usize,
    lambda: CircleDoc,
    #[serde(default)]
    mu: Vec<CircleDoc>,
}

impl QuotientSpec {
    pub fn new(n: usize, i: usize, lambda: CircleElement, mu: Vec<CircleElement>) -> Result<Self> {
        let spec = QuotientSpec { n, i, lambda, mu };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidQuotient(m));
        if self.i >= self.n {
            return bad(format!("level i = {} must be below n = {}", self.i, self.n));
        }
        if self.mu.len() != self.i {
            return bad(format!(
                "expected {} constants mu, got {}",
                self.i,
                self.mu.len()
            ));
        }
        if self.i == 0 {
            if self.lambda.is_root_of_unity() {
                return bad("lambda must not be a root of unity at level 0".into());
            }
            return Ok(());
        }
        if !self.lambda.is_root_of_unity() {
            return bad("lambda must be a root of unity".into());
        }
        let (last, roots) = self.mu.split_last().expect("i >= 1");
        if let Some(k) = roots.iter().position(|m| !m.is_root_of_unity()) {
            return bad(format!("mu{} must be a root of unity", k + 1));
        }
        if last.is_root_of_unity() {
            return bad(format!("mu{} must not be a root of unity", self.i));
        }
        Ok(())
    }

    /// Dimension `n − i` of the torus fibre.
    pub fn fibre_dim(&self) -> usize {
        self.n - self.i
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: QuotientDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mu = doc
            .mu
            .into_iter()
            .map(CircleElement::try_from)
            .collect::<Result<Vec<_>>>()?;
        QuotientSpec::new(doc.n, doc.i, doc.lambda.try_into()?, mu)
    }

    pub fn to_json(&self) -> String {
        let doc = QuotientDoc {
            n: self.n,
            i: self.i,
            lambda: (&self.lambda).into(),
            mu: self.mu.iter().map(Into::into).collect(),
        };
        serde_json::to_string(&doc).expect("quotient serialization is infallible")
    }

    /// `λ = μ₀, μ₁, …` as one list.
    fn constants(&self) -> Vec<&CircleElement> {
        std::iter::once(&self.lambda).chain(&self.mu).collect()
    }
}

/// Largest `r` the orbit scan will try before giving up.
pub const ORBIT_SCAN_LIMIT: u64 = 50_000_000;

fn binom(r: &BigInt, m: usize) -> BigInt {
    let r = i64::try_from(r).expect("scan is capped well inside i64");
    extbinom(r, m as i64)
}

/// Whether `∏_{k<j} μₖ^{binom(r, j−k)} = 1` for every `j = 1, …, i`.
fn orbit_closes(cs: &[&CircleElement], i: usize, r: &BigInt) -> bool {
    (1..=i).all(|j| {
        let factors: Vec<(CircleElement, BigInt)> =
            (0..j).map(|k| (cs[k].clone(), binom(r, j - k))).collect();
        circle_pow_mul(&factors).is_one()
    })
}

/// A value `r` is certainly reached by the scan: the state of the recursion
/// lives in a finite set whose size is the product of the running lcm of
/// the orders of `λ, μ₁, …`.
fn orbit_scan_bound(cs: &[&CircleElement], i: usize) -> BigInt {
    let mut q = BigInt::one();
    let mut bound = BigInt::one();
    for c in &cs[..i] {
        q = q.lcm(&c.order().expect("validated roots of unity"));
        bound *= &q;
    }
    bound
}

/// `Cᵢ`, the least `r ≥ 1` closing the orbit; `1` for the faithful case.
pub fn orbit_cardinality(spec: &QuotientSpec) -> Result<BigInt> {
    spec.validate()?;
    if spec.i == 0 {
        return Ok(BigInt::one());
    }
    let cs = spec.constants();
    let bound = orbit_scan_bound(&cs, spec.i);
    let cap = bound.clone().min(BigInt::from(ORBIT_SCAN_LIMIT));
    let mut r = BigInt::one();
    while r <= cap {
        if orbit_closes(&cs, spec.i, &r) {
            return Ok(r);
        }
        r += 1;
    }
    if cap < bound {
        return Err(Error::BudgetExceeded {
            budget: ORBIT_SCAN_LIMIT,
        });
    }
    Err(Error::Defect(format!("orbit did not close below {bound}")))
}

/// `ζᵢ = λ^{binom(C, i+1)} μ₁^{binom(C, i)} ⋯ μᵢ^{C}` with `C = Cᵢ`;
/// `ζ₀ = λ`.
pub fn zeta_invariant(spec: &QuotientSpec) -> Result<CircleElement> {
    let c = orbit_cardinality(spec)?;
    if spec.i == 0 {
        return Ok(spec.lambda.clone());
    }
    let cs = spec.constants();
    let factors: Vec<(CircleElement, BigInt)> = (0..=spec.i)
        .map(|k| (cs[k].clone(), binom(&c, spec.i + 1 - k)))
        .collect();
    Ok(circle_pow_mul(&factors))
}

/// The range of the trace on `K₀`, `(1/C)(Z + Zϑ)` with `e^{2πiϑ} = ζ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRange {
    pub denominator: BigInt,
    pub generator: CircleElement,
}

pub fn trace_range(spec: &QuotientSpec) -> Result<TraceRange> {
    Ok(TraceRange {
        denominator: orbit_cardinality(spec)?,
        generator: zeta_invariant(spec)?,
    })
}

/// Same fibre dimension, same `Cᵢ`, and `ζ` equal up to inversion.
pub fn quotients_isomorphic(s: &QuotientSpec, t: &QuotientSpec) -> Result<bool> {
    if s.fibre_dim() != t.fibre_dim() || orbit_cardinality(s)? != orbit_cardinality(t)? {
        return Ok(false);
    }
    let (zs, zt) = (zeta_invariant(s)?, zeta_invariant(t)?);
    Ok(zs == zt || zs == zt.inverse())
}
