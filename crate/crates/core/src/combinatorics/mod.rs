//! Closed-form counting layer: extended binomials, distinct-partition counts,
//! the rank sequence `aₙ` and its generating function.

mod binomial;
mod genfun;
mod partitions;

pub use binomial::{check_binom_identity, check_delta_identity, delta_sum, extbinom};
pub use genfun::{genfun_coeffs, rank_by_genfun, BivariatePoly, LaurentPoly};
pub use partitions::{
    a_nr, asymptotic_limit, asymptotic_ratio, partition_count, partition_table, rank_by_partitions,
    PartitionTable,
};
