//! The published table of K-groups for the Anzai flows on `Tⁿ`, `n ≤ 11`,
//! kept as printed (direct sums, not necessarily invariant-factor chains).

use pvk_core::FGAbelianGroup;

pub struct GoldenRow {
    pub n: usize,
    pub k0: &'static str,
    pub k1: &'static str,
    pub rank: u64,
}

pub const TABLE: [GoldenRow; 11] = [
    GoldenRow {
        n: 1,
        k0: "Z^2",
        k1: "Z^2",
        rank: 2,
    },
    GoldenRow {
        n: 2,
        k0: "Z^3",
        k1: "Z^3",
        rank: 3,
    },
    GoldenRow {
        n: 3,
        k0: "Z^4",
        k1: "Z^4",
        rank: 4,
    },
    GoldenRow {
        n: 4,
        k0: "Z^6",
        k1: "Z^6",
        rank: 6,
    },
    GoldenRow {
        n: 5,
        k0: "Z^8",
        k1: "Z^8",
        rank: 8,
    },
    GoldenRow {
        n: 6,
        k0: "Z^13",
        k1: "Z^13 + Z_2",
        rank: 13,
    },
    GoldenRow {
        n: 7,
        k0: "Z^20",
        k1: "Z^20",
        rank: 20,
    },
    GoldenRow {
        n: 8,
        k0: "Z^32 + Z_8^(2)",
        k1: "Z^32 + Z_18^(2)",
        rank: 32,
    },
    GoldenRow {
        n: 9,
        k0: "Z^52 + Z_3^(2) + Z_9^(2)",
        k1: "Z^52 + Z_3^(2) + Z_9^(2)",
        rank: 52,
    },
    GoldenRow {
        n: 10,
        k0: "Z^90 + Z_55^(4)",
        k1: "Z^90 + Z_11^(2) + Z_99 + Z_198 + Z_2574",
        rank: 90,
    },
    GoldenRow {
        n: 11,
        k0: "Z^152 + Z_11^(12) + Z_143^(4) + Z_286^(2)",
        k1: "Z^152 + Z_11^(12) + Z_143^(4) + Z_286^(2)",
        rank: 152,
    },
];

impl GoldenRow {
    /// Canonical forms of the printed `K₀`, `K₁`.
    pub fn groups(&self) -> (FGAbelianGroup, FGAbelianGroup) {
        (
            self.k0.parse().expect("golden data parses"),
            self.k1.parse().expect("golden data parses"),
        )
    }
}

pub fn row(n: usize) -> Option<&'static GoldenRow> {
    TABLE.iter().find(|r| r.n == n)
}

/// `coker(∧³S₆ − I)`, the block responsible for the first torsion.
pub const FIRST_TORSION_BLOCK: &str = "Z^3 + Z_2";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_rows_parse_and_ranks_match() {
        for r in &TABLE {
            let (k0, k1) = r.groups();
            assert_eq!(k0.free_rank() as u64, r.rank);
            assert_eq!(k1.free_rank() as u64, r.rank);
        }
        assert!(row(12).is_none());
    }
}
