mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use pvk_core::combinatorics::rank_by_genfun;
use pvk_core::dynamics::{orbit_points, AffineMap};
use pvk_core::exterior::anzai_matrix;
use pvk_core::quotients::{
    orbit_cardinality, quotients_isomorphic, zeta_invariant, CircleElement, QuotientSpec,
};
use rand::Rng;

fn random_root(rng: &mut impl Rng) -> CircleElement {
    let q = rng.gen_range(1..=6);
    CircleElement::root_of_unity(rng.gen_range(0..q), q)
}

fn random_irrational(rng: &mut impl Rng) -> CircleElement {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-3..=3);
    }
    CircleElement::new(
        BigRational::new(rng.gen_range(0..4).into(), 4.into()),
        BigRational::new(p.into(), rng.gen_range(1..=2).into()),
    )
}

fn random_spec(rng: &mut impl Rng) -> QuotientSpec {
    let n = rng.gen_range(2..=5);
    let i = rng.gen_range(0..n);
    if i == 0 {
        return QuotientSpec::new(n, 0, random_irrational(rng), vec![]).unwrap();
    }
    let mut mu: Vec<CircleElement> = (1..i).map(|_| random_root(rng)).collect();
    mu.push(random_irrational(rng));
    QuotientSpec::new(n, i, random_root(rng), mu).unwrap()
}

/// First return time of the finite part of the orbit, found by running the
/// skew product `(y₁, …, yᵢ) ↦ (λy₁, μ₁y₁y₂, …)` on `Tⁱ`.
fn first_return(spec: &QuotientSpec, limit: usize) -> Option<usize> {
    let mut t = vec![spec.lambda.clone()];
    t.extend(spec.mu[..spec.i - 1].iter().cloned());
    let map = AffineMap::new(t, anzai_matrix(spec.i)).unwrap();
    let mut x = orbit_points(&map, 0).pop().unwrap();
    for r in 1..=limit {
        x = map.apply(&x).unwrap();
        if x.iter().all(CircleElement::is_one) {
            return Some(r);
        }
    }
    None
}

#[test]
fn orbit_cardinality_is_the_first_return_time() {
    let mut rng = common::rng(51);
    let mut seen = 0;
    while seen < 150 {
        let spec = random_spec(&mut rng);
        if spec.i == 0 {
            continue;
        }
        let c = orbit_cardinality(&spec).unwrap();
        let r = first_return(&spec, 5000).expect("orbit closes");
        assert_eq!(c, BigInt::from(r), "{spec:?}");
        seen += 1;
    }
}

#[test]
fn zeta_is_never_a_root_of_unity() {
    let mut rng = common::rng(52);
    for _ in 0..150 {
        let spec = random_spec(&mut rng);
        assert!(!zeta_invariant(&spec).unwrap().irr().is_zero());
    }
}

#[test]
fn isomorphism_is_an_equivalence_relation() {
    let mut rng = common::rng(53);
    let specs: Vec<QuotientSpec> = (0..40).map(|_| random_spec(&mut rng)).collect();
    let n = specs.len();
    let mut iso = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            iso[a][b] = quotients_isomorphic(&specs[a], &specs[b]).unwrap();
        }
    }
    for a in 0..n {
        assert!(iso[a][a]);
        for b in 0..n {
            assert_eq!(iso[a][b], iso[b][a]);
            for c in 0..n {
                if iso[a][b] && iso[b][c] {
                    assert!(iso[a][c]);
                }
            }
        }
    }
}

#[test]
fn inverted_invariant_gives_isomorphic_quotient() {
    let mut rng = common::rng(54);
    for _ in 0..50 {
        let n = rng.gen_range(1..=6);
        let l = random_irrational(&mut rng);
        let a = QuotientSpec::new(n, 0, l.clone(), vec![]).unwrap();
        let b = QuotientSpec::new(n, 0, l.inverse(), vec![]).unwrap();
        assert!(quotients_isomorphic(&a, &b).unwrap());
    }
}

#[test]
fn different_fibres_are_separated_by_rank() {
    let mut rng = common::rng(55);
    for _ in 0..100 {
        let (s, t) = (random_spec(&mut rng), random_spec(&mut rng));
        if s.fibre_dim() != t.fibre_dim() {
            assert!(!quotients_isomorphic(&s, &t).unwrap());
            assert_ne!(rank_by_genfun(s.fibre_dim()), rank_by_genfun(t.fibre_dim()));
        }
    }
}
