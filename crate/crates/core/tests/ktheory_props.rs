mod common;

use pvk_core::combinatorics::rank_by_partitions;
use pvk_core::exterior::anzai_matrix;
use pvk_core::ktheory::{duality_check, pv_kgroups, rank_kgroups};
use rand::Rng;

#[test]
fn ranks_agree_and_blocks_fold_back() {
    let mut rng = common::rng(21);
    for _ in 0..60 {
        let n = rng.gen_range(1..=5);
        let a = common::random_unimodular(&mut rng, n, 8);
        let k = pv_kgroups(&a).unwrap();
        k.check_consistency().unwrap();
        assert_eq!(k.k0.free_rank(), k.k1.free_rank());
        assert_eq!(rank_kgroups(&a).unwrap(), k.rank());
    }
}

#[test]
fn odd_dimension_symmetry_for_random_det_one() {
    let mut rng = common::rng(22);
    for _ in 0..30 {
        let n = [1, 3, 5][rng.gen_range(0..3)];
        let a = common::random_det_one(&mut rng, n, 10);
        let k = pv_kgroups(&a).unwrap();
        assert_eq!(k.k0, k.k1, "{a:?}");
    }
}

#[test]
fn duality_for_random_det_one() {
    let mut rng = common::rng(23);
    for _ in 0..30 {
        let n = rng.gen_range(1..=5);
        let a = common::random_det_one(&mut rng, n, 10);
        assert!(duality_check(&a).unwrap(), "{a:?}");
    }
}

#[test]
fn maximal_degree_unipotents_share_the_anzai_rank() {
    let mut rng = common::rng(24);
    for _ in 0..40 {
        let n = rng.gen_range(1..=7);
        let a = common::random_max_degree_unipotent(&mut rng, n, 5);
        let want = rank_by_partitions(n);
        assert_eq!(
            rank_kgroups(&a).unwrap(),
            usize::try_from(&want).unwrap(),
            "{a:?}"
        );
    }
}

#[test]
fn anzai_rank_matches_partition_formula() {
    for n in 1..=10 {
        let r = rank_kgroups(&anzai_matrix(n)).unwrap();
        assert_eq!(rank_by_partitions(n), r.into());
    }
}
