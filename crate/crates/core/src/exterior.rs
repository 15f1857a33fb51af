//! Exterior powers over the lexicographic wedge basis, the named matrices
//! `Sₙ` and `Mₙᵏ`, homotopy linearizations of skew products, and unipotence
//! diagnostics.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::extbinom;
use crate::error::{Error, Result};
use crate::exactmat::ZMatrix;

/// Basis vector `e_{i₁} ∧ … ∧ e_{i_r}` of `Λʳ Zⁿ`, indices 1-based and
/// strictly increasing. The derived order is lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WedgeBasisIndex {
    subset: Vec<usize>,
    n: usize,
}

impl WedgeBasisIndex {
    pub fn new(n: usize, subset: Vec<usize>) -> Result<Self> {
        let increasing = subset.windows(2).all(|w| w[0] < w[1]);
        let in_range = subset.iter().all(|&i| (1..=n).contains(&i));
        if !increasing || !in_range {
            return Err(Error::InvalidArgument(format!(
                "{subset:?} is not a strictly increasing subset of 1..={n}"
            )));
        }
        Ok(WedgeBasisIndex { subset, n })
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn degree(&self) -> usize {
        self.subset.len()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Sum of the indices.
    pub fn weight(&self) -> usize {
        self.subset.iter().sum()
    }
}

impl fmt::Display for WedgeBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.subset.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.subset.iter().map(|i| format!("e{i}")).collect();
        write!(f, "{}", parts.join("^"))
    }
}

/// All `r`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r).rev().find(|&i| cur[i] < n - r + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The lexicographically ordered basis of `Λʳ Zⁿ`.
pub fn wedge_basis(n: usize, r: usize) -> Vec<WedgeBasisIndex> {
    combinations(n, r)
        .into_iter()
        .map(|s| WedgeBasisIndex {
            subset: s.into_iter().map(|i| i + 1).collect(),
            n,
        })
        .collect()
}

fn mask(s: &[usize]) -> u128 {
    s.iter().fold(0u128, |m, &i| m | (1u128 << i))
}

/// Above this many entries per level the memoized Laplace expansion is
/// replaced by independent Bareiss determinants.
const LAPLACE_TABLE_LIMIT: usize = 4_000_000;

/// `∧ʳA`: entry `(I, J)` is the minor of `A` on rows `I`, columns `J`, with
/// both index sets running over the lexicographic wedge basis. Columns of
/// `A` are images of basis vectors, so `∧ʳ(AB) = ∧ʳA · ∧ʳB`.
pub fn wedge_power(a: &ZMatrix, r: usize) -> Result<ZMatrix> {
    a.require_square()?;
    let n = a.rows();
    if r > n {
        return Err(Error::DegreeOutOfRange { n, r });
    }
    if n > 127 {
        return Err(Error::InvalidArgument(format!(
            "dimension {n} too large for exterior powers"
        )));
    }
    let subsets = combinations(n, r);
    let m = subsets.len();
    if m.saturating_mul(m) > LAPLACE_TABLE_LIMIT {
        let rows: Vec<Vec<BigInt>> = subsets
            .par_iter()
            .map(|rs| {
                subsets
                    .iter()
                    .map(|cs| a.submatrix(rs, cs).det().expect("square minor"))
                    .collect()
            })
            .collect();
        return ZMatrix::try_from_rows(&rows);
    }

    // prev[(I, J)] holds the (s-1)-minors; extend by expanding along the
    // first row of each s-subset.
    let mut prev_index: HashMap<u128, usize> = HashMap::from([(0u128, 0usize)]);
    let mut prev: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for s in 1..=r {
        let level = combinations(n, s);
        let index: HashMap<u128, usize> = level
            .iter()
            .enumerate()
            .map(|(k, c)| (mask(c), k))
            .collect();
        let col_tails: Vec<Vec<(usize, usize)>> = level
            .iter()
            .map(|cs| {
                (0..s)
                    .map(|k| {
                        let rest: Vec<usize> = cs
                            .iter()
                            .enumerate()
                            .filter(|&(q, _)| q != k)
                            .map(|(_, &c)| c)
                            .collect();
                        (cs[k], prev_index[&mask(&rest)])
                    })
                    .collect()
            })
            .collect();
        let next: Vec<Vec<BigInt>> = level
            .par_iter()
            .map(|rs| {
                let head = rs[0];
                let tail = &prev[prev_index[&mask(&rs[1..])]];
                col_tails
                    .iter()
                    .map(|tails| {
                        let mut acc = BigInt::zero();
                        for (k, &(c, sub)) in tails.iter().enumerate() {
                            let x = &a[(head, c)];
                            if x.is_zero() || tail[sub].is_zero() {
                                continue;
                            }
                            let term = x * &tail[sub];
                            if k % 2 == 0 {
                                acc += term;
                            } else {
                                acc -= term;
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        prev = next;
        prev_index = index;
    }
    ZMatrix::try_from_rows(&prev)
}

/// `∧ʳA − I`, the block whose kernel and cokernel feed the K-groups.
pub fn wedge_block(a: &ZMatrix, r: usize) -> Result<ZMatrix> {
    wedge_power(a, r)?.minus_identity()
}

/// `Sₙ`: ones on the diagonal and the superdiagonal.
pub fn anzai_matrix(n: usize) -> ZMatrix {
    let mut s = ZMatrix::identity(n);
    for i in 0..n.saturating_sub(1) {
        s[(i, i + 1)] = BigInt::one();
    }
    s
}

/// `Mₙᵏ`, the `(n+1)×(n+1)` matrix with entries `binom(k, j − i)` in the
/// extended sense (valid for negative `k`).
pub fn dn_power(n: usize, k: i64) -> ZMatrix {
    let mut m = ZMatrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        for j in 0..=n {
            m[(i, j)] = extbinom(k, j as i64 - i as i64);
        }
    }
    m
}

/// Homotopy data of a skew product on `Tⁿ`. Translation parts do not affect
/// K-theory and are carried by [`crate::dynamics::AffineMap`] instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearizationSpec {
    /// `(v₁, …, vₙ) ↦ (λv₁, v₁v₂, …, v_{n−1}vₙ)`
    Anzai {
        n: usize,
    },
    /// `vᵢ₊₁ ↦ vᵢ^{kᵢ} vᵢ₊₁` with `kᵢ ≠ 0`, `kᵢ | kᵢ₊₁`.
    Ascending {
        k: Vec<BigInt>,
    },
    /// `v_j ↦ v₁^{b₁ⱼ} ⋯ v_{j−1}^{b_{j−1,j}} v_j`, keys `(i, j)` 1-based with
    /// `i < j`.
    Furstenberg {
        n: usize,
        b: BTreeMap<(usize, usize), BigInt>,
    },
    General(ZMatrix),
}

impl LinearizationSpec {
    pub fn dim(&self) -> usize {
        match self {
            LinearizationSpec::Anzai { n } | LinearizationSpec::Furstenberg { n, .. } => *n,
            LinearizationSpec::Ascending { k } => k.len() + 1,
            LinearizationSpec::General(a) => a.rows(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidLinearization(m));
        match self {
            LinearizationSpec::Anzai { n } => {
                if *n == 0 {
                    return bad("dimension must be at least 1".into());
                }
            }
            LinearizationSpec::Ascending { k } => {
                if let Some(i) = k.iter().position(Zero::is_zero) {
                    return bad(format!("k{} is zero", i + 1));
                }
                if let Some(i) = k.windows(2).position(|w| !w[1].is_multiple_of(&w[0])) {
                    return bad(format!("k{} does not divide k{}", i + 1, i + 2));
                }
            }
            LinearizationSpec::Furstenberg { n, b } => {
                if *n == 0 {
                    return bad("dimension must be at least 1".into());
                }
                for &(i, j) in b.keys() {
                    if !(1 <= i && i < j && j <= *n) {
                        return bad(format!("exponent b{i},{j} outside 1 <= i < j <= {n}"));
                    }
                }
                for i in 1..*n {
                    if b.get(&(i, i + 1)).is_none_or(Zero::is_zero) {
                        return bad(format!("b{},{} must be nonzero", i, i + 1));
                    }
                }
            }
            LinearizationSpec::General(a) => {
                a.require_square()?;
                let det = a.det()?;
                if !det.abs().is_one() {
                    return bad(format!("|det| = {} is not 1", det.abs()));
                }
            }
        }
        Ok(())
    }
}

/// The integer matrix `[b_{ij}]` of the induced map on `H¹(Tⁿ) = Zⁿ`.
pub fn linearization(spec: &LinearizationSpec) -> Result<ZMatrix> {
    spec.validate()?;
    Ok(match spec {
        LinearizationSpec::Anzai { n } => anzai_matrix(*n),
        LinearizationSpec::Ascending { k } => {
            let mut a = ZMatrix::identity(k.len() + 1);
            for (i, ki) in k.iter().enumerate() {
                a[(i, i + 1)] = ki.clone();
            }
            a
        }
        LinearizationSpec::Furstenberg { n, b } => {
            let mut a = ZMatrix::identity(*n);
            for (&(i, j), v) in b {
                a[(i - 1, j - 1)] = v.clone();
            }
            a
        }
        LinearizationSpec::General(a) => a.clone(),
    })
}

/// Least `k ≥ 1` with `(A − I)ᵏ = 0`, or `None` when `A` is not unipotent.
pub fn unipotent_degree(a: &ZMatrix) -> Result<Option<usize>> {
    let nil = a.minus_identity()?;
    let n = a.rows();
    let mut p = nil.clone();
    for k in 1..=n.max(1) {
        if p.is_zero() {
            return Ok(Some(k));
        }
        p = p.checked_mul(&nil)?;
    }
    Ok(None)
}

pub fn is_maximal_degree(a: &ZMatrix) -> Result<bool> {
    Ok(unipotent_degree(a)? == Some(a.rows()))
}

// JSON form: {"kind":"anzai","n":6} | {"kind":"ascending","k":[1,2,4]} |
// {"kind":"furstenberg","b":{"1,2":1,…}} | {"kind":"general","matrix":{…}}
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SpecDoc {
    Anzai {
        n: usize,
    },
    Ascending {
        k: Vec<serde_json::Value>,
    },
    Furstenberg {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        b: BTreeMap<String, serde_json::Value>,
    },
    General {
        matrix: ZMatrix,
    },
}

impl LinearizationSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SpecDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let int =
            |v: &serde_json::Value| crate::exactmat::json::value_to_int(v).map_err(Error::Parse);
        let spec = match doc {
            SpecDoc::Anzai { n } => LinearizationSpec::Anzai { n },
            SpecDoc::Ascending { k } => LinearizationSpec::Ascending {
                k: k.iter().map(int).collect::<Result<_>>()?,
            },
            SpecDoc::Furstenberg { n, b } => {
                let mut map = BTreeMap::new();
                for (key, v) in &b {
                    let (i, j) = key
                        .split_once(',')
                        .and_then(|(i, j)| Some((i.trim().parse().ok()?, j.trim().parse().ok()?)))
                        .ok_or_else(|| {
                            Error::Parse(format!("bad exponent key {key:?}, expected \"i,j\""))
                        })?;
                    map.insert((i, j), int(v)?);
                }
                let inferred = map.keys().map(|&(_, j)| j).max().unwrap_or(1);
                LinearizationSpec::Furstenberg {
                    n: n.unwrap_or(inferred),
                    b: map,
                }
            }
            SpecDoc::General { matrix } => LinearizationSpec::General(matrix),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        let v = crate::exactmat::json::int_to_value;
        let doc = match self {
            LinearizationSpec::Anzai { n } => SpecDoc::Anzai { n: *n },
            LinearizationSpec::Ascending { k } => SpecDoc::Ascending {
                k: k.iter().map(v).collect(),
            },
            LinearizationSpec::Furstenberg { n, b } => SpecDoc::Furstenberg {
                n: Some(*n),
                b: b.iter()
                    .map(|(&(i, j), x)| (format!("{i},{j}"), v(x)))
                    .collect(),
            },
            LinearizationSpec::General(a) => SpecDoc::General { matrix: a.clone() },
        };
        serde_json::to_string(&doc).expect("spec serialization is infallible")
    }
}
