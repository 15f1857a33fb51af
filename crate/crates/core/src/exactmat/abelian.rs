use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::ZMatrix;
use super::smith::{divisibility_chain, smith_invariants, Budget};
use crate::error::{Error, Result};

/// Finitely generated abelian group `Z^rank ⊕ Z_{d₁} ⊕ … ⊕ Z_{d_k}` with
/// `2 ≤ d₁ | d₂ | … | d_k`. The representation is canonical, so derived
/// equality is group isomorphism.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawGroup")]
pub struct FGAbelianGroup {
    #[serde(rename = "rank")]
    free_rank: usize,
    #[serde(with = "torsion_serde")]
    torsion: Vec<BigInt>,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::new(0, vec![order.into()])
    }

    /// Canonicalizes arbitrary cyclic orders: `0` contributes a free summand,
    /// units vanish, signs are ignored.
    pub fn new(free_rank: usize, orders: Vec<BigInt>) -> Self {
        let mut rank = free_rank;
        let mut finite = Vec::with_capacity(orders.len());
        for d in orders {
            if d.is_zero() {
                rank += 1;
            } else {
                let d = d.abs();
                if !d.is_one() {
                    finite.push(d);
                }
            }
        }
        let torsion = divisibility_chain(finite)
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        FGAbelianGroup {
            free_rank: rank,
            torsion,
        }
    }

    /// Convenience for presentations written as `Z^rank ⊕ Z_k^{(m)} ⊕ …`.
    pub fn from_summands(rank: usize, summands: &[(u64, usize)]) -> Self {
        let orders = summands
            .iter()
            .flat_map(|&(k, m)| std::iter::repeat_n(BigInt::from(k), m))
            .collect();
        Self::new(rank, orders)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn torsion_u64(&self) -> Option<Vec<u64>> {
        self.torsion.iter().map(ToPrimitive::to_u64).collect()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == d).count();
            if run == 1 {
                parts.push(format!("Z_{d}"));
            } else {
                parts.push(format!("Z_{d}^({run})"));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Parses the notation produced by `Display`: summands `Z`, `Z^r`, `Z_d`
/// and `Z_d^(m)` joined by `+` (or `⊕`), or `0` for the trivial group.
impl FromStr for FGAbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad group presentation {s:?}"));
        let s = s.trim();
        if s == "0" {
            return Ok(FGAbelianGroup::trivial());
        }
        let mut rank = 0;
        let mut orders = Vec::new();
        for term in s.split(['+', '⊕']).map(str::trim) {
            let rest = term.strip_prefix('Z').ok_or_else(bad)?;
            if rest.is_empty() {
                rank += 1;
            } else if let Some(r) = rest.strip_prefix('^') {
                rank += r.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(t) = rest.strip_prefix('_') {
                let (d, m) = match t.split_once("^(") {
                    Some((d, m)) => (
                        d,
                        m.strip_suffix(')')
                            .ok_or_else(bad)?
                            .parse()
                            .map_err(|_| bad())?,
                    ),
                    None => (t, 1usize),
                };
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d <= BigInt::one() {
                    return Err(bad());
                }
                orders.extend(std::iter::repeat_n(d, m));
            } else {
                return Err(bad());
            }
        }
        Ok(FGAbelianGroup::new(rank, orders))
    }
}

/// `Z^rows / A·Z^cols`.
pub fn cokernel(a: &ZMatrix) -> FGAbelianGroup {
    cokernel_with_budget(a, Budget::UNLIMITED).expect("unlimited budget")
}

pub fn cokernel_with_budget(a: &ZMatrix, budget: Budget) -> Result<FGAbelianGroup> {
    let inv = smith_invariants(a, budget)?;
    Ok(FGAbelianGroup::new(a.rows() - inv.rank(), inv.factors))
}

/// `{x ∈ Z^cols : A·x = 0}`, always free.
pub fn kernel(a: &ZMatrix) -> FGAbelianGroup {
    kernel_with_budget(a, Budget::UNLIMITED).expect("unlimited budget")
}

pub fn kernel_with_budget(a: &ZMatrix, budget: Budget) -> Result<FGAbelianGroup> {
    let inv = smith_invariants(a, budget)?;
    Ok(FGAbelianGroup::free(a.cols() - inv.rank()))
}

pub fn direct_sum<'a, I>(groups: I) -> FGAbelianGroup
where
    I: IntoIterator<Item = &'a FGAbelianGroup>,
{
    let mut rank = 0;
    let mut orders = Vec::new();
    for g in groups {
        rank += g.free_rank;
        orders.extend(g.torsion.iter().cloned());
    }
    FGAbelianGroup::new(rank, orders)
}

pub fn groups_isomorphic(g: &FGAbelianGroup, h: &FGAbelianGroup) -> bool {
    g == h
}

pub(crate) fn check_chain(g: &FGAbelianGroup) -> Result<()> {
    let ok = g.torsion.iter().all(|d| d > &BigInt::one())
        && g.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
    if ok {
        Ok(())
    } else {
        Err(Error::Defect(format!(
            "non-canonical torsion {:?}",
            g.torsion
        )))
    }
}

/// Wire form; accepts any cyclic orders and canonicalizes on the way in.
#[derive(Deserialize)]
struct RawGroup {
    rank: usize,
    #[serde(with = "torsion_serde")]
    torsion: Vec<BigInt>,
}

impl From<RawGroup> for FGAbelianGroup {
    fn from(raw: RawGroup) -> Self {
        FGAbelianGroup::new(raw.rank, raw.torsion)
    }
}

/// Small torsion values serialize as JSON numbers, anything past 64 bits as
/// a decimal string.
mod torsion_serde {
    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let vals: Vec<Value> = xs.iter().map(crate::exactmat::json::int_to_value).collect();
        vals.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let vals = Vec::<Value>::deserialize(d)?;
        vals.iter()
            .map(|v| crate::exactmat::json::value_to_int(v).map_err(D::Error::custom))
            .collect()
    }
}
