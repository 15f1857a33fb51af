#![allow(dead_code)]

use num_bigint::BigInt;
use pvk_core::ZMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> ZMatrix {
    let data = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    ZMatrix::from_vec(rows, cols, data).unwrap()
}

/// Product of random elementary row operations, a row swap or two and a
/// sign, so the determinant is ±1.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> ZMatrix {
    let mut rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    if n < 2 {
        return ZMatrix::from_rows(&[vec![if rng.gen_bool(0.5) { 1 } else { -1 }]]);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..6) {
            0 => rows.swap(i, j),
            1 => rows[i].iter_mut().for_each(|x| *x = -*x),
            _ => {
                let c = rng.gen_range(-2..=2);
                let src = rows[j].clone();
                for (x, s) in rows[i].iter_mut().zip(src) {
                    *x += c * s;
                }
            }
        }
    }
    ZMatrix::from_rows(&rows)
}

/// Determinant exactly 1.
pub fn random_det_one(rng: &mut impl Rng, n: usize, steps: usize) -> ZMatrix {
    loop {
        let a = random_unimodular(rng, n, steps);
        if a.det().unwrap() == BigInt::from(1) {
            return a;
        }
    }
}

/// Upper triangular, unit diagonal, nonzero superdiagonal, other entries
/// in `[-bound, bound]`.
pub fn random_max_degree_unipotent(rng: &mut impl Rng, n: usize, bound: i64) -> ZMatrix {
    let mut a = ZMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            let v = if j == i + 1 {
                let mut v = 0;
                while v == 0 {
                    v = rng.gen_range(-bound..=bound);
                }
                v
            } else {
                rng.gen_range(-bound..=bound)
            };
            a[(i, j)] = BigInt::from(v);
        }
    }
    a
}
