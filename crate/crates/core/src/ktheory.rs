//! K₀ and K₁ of `C(Tⁿ) ⋊_α Z` assembled from the blocks `∧ʳA − I`.
//!
//! The Pimsner–Voiculescu sequence splits into
//! `K₀ ≅ ⊕_{r even} coker(∧ʳA − I) ⊕ ⊕_{r odd} ker(∧ʳA − I)` and dually for
//! `K₁`, so each block needs one Smith reduction.

use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::{direct_sum, smith_invariants, Budget, FGAbelianGroup, ZMatrix};
use crate::exterior::{anzai_matrix, wedge_block};

/// Cokernel and kernel of `∧ʳA − I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockGroups {
    pub r: usize,
    pub coker: FGAbelianGroup,
    pub ker: FGAbelianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGroups {
    pub n: usize,
    #[serde(rename = "K0")]
    pub k0: FGAbelianGroup,
    #[serde(rename = "K1")]
    pub k1: FGAbelianGroup,
    pub blocks: Vec<BlockGroups>,
}

impl KGroups {
    /// Folds blocks by parity of `r`.
    pub fn assemble(n: usize, blocks: Vec<BlockGroups>) -> Self {
        let (even, odd): (Vec<&BlockGroups>, Vec<&BlockGroups>) =
            blocks.iter().partition(|b| b.r % 2 == 0);
        let k0 = direct_sum(
            even.iter()
                .map(|b| &b.coker)
                .chain(odd.iter().map(|b| &b.ker)),
        );
        let k1 = direct_sum(
            odd.iter()
                .map(|b| &b.coker)
                .chain(even.iter().map(|b| &b.ker)),
        );
        KGroups { n, k0, k1, blocks }
    }

    /// Common free rank of `K₀` and `K₁`.
    pub fn rank(&self) -> usize {
        self.k0.free_rank()
    }

    /// Re-derives `K₀`, `K₁` from the blocks and checks the structural
    /// invariants: equal ranks, free kernels, canonical torsion.
    pub fn check_consistency(&self) -> Result<()> {
        let rebuilt = KGroups::assemble(self.n, self.blocks.clone());
        if rebuilt.k0 != self.k0 || rebuilt.k1 != self.k1 {
            return Err(Error::Defect("K-groups disagree with their blocks".into()));
        }
        if self.k0.free_rank() != self.k1.free_rank() {
            return Err(Error::Defect(format!(
                "rank K0 = {} but rank K1 = {}",
                self.k0.free_rank(),
                self.k1.free_rank()
            )));
        }
        for b in &self.blocks {
            if !b.ker.is_free() {
                return Err(Error::Defect(format!(
                    "kernel of block {} has torsion",
                    b.r
                )));
            }
            crate::exactmat::check_chain(&b.coker)?;
        }
        crate::exactmat::check_chain(&self.k0)?;
        crate::exactmat::check_chain(&self.k1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("K-groups serialization is infallible")
    }
}

/// Result of a budgeted run: blocks that exceeded the budget are `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialKGroups {
    pub n: usize,
    pub blocks: Vec<Option<BlockGroups>>,
    pub budget: u64,
}

impl PartialKGroups {
    pub fn failed_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&r| self.blocks[r].is_none())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KOutcome {
    Complete(KGroups),
    Partial(PartialKGroups),
}

fn require_invertible(a: &ZMatrix) -> Result<()> {
    let det = a.det()?;
    if det.abs().is_one() {
        Ok(())
    } else {
        Err(Error::NotUnimodular {
            det: det.to_string(),
        })
    }
}

fn block(a: &ZMatrix, r: usize, budget: Budget) -> Result<BlockGroups> {
    let m = wedge_block(a, r)?;
    let inv = smith_invariants(&m, budget)?;
    let rank = inv.rank();
    Ok(BlockGroups {
        r,
        coker: FGAbelianGroup::new(m.rows() - rank, inv.factors),
        ker: FGAbelianGroup::free(m.cols() - rank),
    })
}

/// K-groups with a per-block budget on Smith elimination steps; blocks that
/// run out are reported rather than aborting the whole computation.
pub fn pv_kgroups_with_budget(a: &ZMatrix, budget: Budget) -> Result<KOutcome> {
    require_invertible(a)?;
    let n = a.rows();
    let results: Vec<Result<BlockGroups>> = (0..=n)
        .into_par_iter()
        .map(|r| block(a, r, budget))
        .collect();
    let mut blocks = Vec::with_capacity(n + 1);
    let mut exhausted = None;
    for res in results {
        match res {
            Ok(b) => blocks.push(Some(b)),
            Err(Error::BudgetExceeded { budget }) => {
                exhausted = Some(budget);
                blocks.push(None);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(match exhausted {
        None => KOutcome::Complete(KGroups::assemble(n, blocks.into_iter().flatten().collect())),
        Some(budget) => KOutcome::Partial(PartialKGroups { n, blocks, budget }),
    })
}

pub fn pv_kgroups(a: &ZMatrix) -> Result<KGroups> {
    match pv_kgroups_with_budget(a, Budget::UNLIMITED)? {
        KOutcome::Complete(k) => Ok(k),
        KOutcome::Partial(_) => unreachable!("unlimited budget"),
    }
}

/// K-groups of the crossed product by the Anzai flow on `Tⁿ`.
pub fn kgroups_of_anzai(n: usize) -> Result<KGroups> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    pv_kgroups(&anzai_matrix(n))
}

/// K-groups of `C*(𝔇ₙ)`, which coincide with those for the Anzai flow on
/// `T^{n+1}`.
pub fn kgroups_of_group_algebra_dn(n: usize) -> Result<KGroups> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    kgroups_of_anzai(n + 1)
}

/// Whether `coker(∧ʳA − I) ≅ coker(∧^{n−r}A − I)` for every `r`. Holds for
/// every `A` with determinant 1, so `false` indicates a defect.
pub fn duality_check(a: &ZMatrix) -> Result<bool> {
    let det = a.det()?;
    if !det.is_one() {
        return Err(Error::DetNotOne {
            det: det.to_string(),
        });
    }
    let k = pv_kgroups(a)?;
    let n = a.rows();
    Ok((0..=n).all(|r| k.blocks[r].coker == k.blocks[n - r].coker))
}

/// `Σᵣ rank ker(∧ʳA − I)`, the common rank of `K₀` and `K₁`.
pub fn rank_kgroups(a: &ZMatrix) -> Result<usize> {
    rank_kgroups_with_budget(a, Budget::UNLIMITED)
}

pub fn rank_kgroups_with_budget(a: &ZMatrix, budget: Budget) -> Result<usize> {
    require_invertible(a)?;
    let n = a.rows();
    let ranks: Result<Vec<usize>> = (0..=n)
        .into_par_iter()
        .map(|r| {
            let m = wedge_block(a, r)?;
            Ok(m.cols() - smith_invariants(&m, budget)?.rank())
        })
        .collect();
    Ok(ranks?.iter().sum())
}
