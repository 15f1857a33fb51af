//! Smith normal form by elementary row and column operations.
//!
//! The pivot is always the nonzero entry of least magnitude in the active
//! block. Elimination first runs on `i64` with checked arithmetic and is
//! restarted on `BigInt` only if an intermediate value overflows, so the
//! small-entry blocks that dominate in practice never touch the allocator.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::ZMatrix;
use crate::error::{Error, Result};

/// `U·A·V == S` with `U`, `V` unimodular and `S` in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: ZMatrix,
    pub s: ZMatrix,
    pub v: ZMatrix,
}

impl SmithForm {
    /// Diagonal `d₁, …, d_k` (`k = min(rows, cols)`), zeros trailing.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal()
            .iter()
            .filter(|d| !Zero::is_zero(*d))
            .count()
    }
}

/// Invariant factors without the transforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithInvariants {
    /// Nonzero invariant factors in divisibility order (units included).
    pub factors: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithInvariants {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

/// Cap on the number of elementary row/column operations one reduction may
/// perform. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget(pub Option<u64>);

impl Budget {
    pub const UNLIMITED: Budget = Budget(None);
}

#[derive(Debug)]
enum Halt {
    Overflow,
    Budget(u64),
}

trait Scalar: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    /// `|self| < |other|`
    fn smaller_than(&self, other: &Self) -> bool;
    fn is_unit(&self) -> bool;
    /// Quotient `q` with `|self − q·p| ≤ |p|/2`.
    fn round_quot(&self, p: &Self) -> Option<Self>;
    /// `self − q·b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn add(&self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn divides(&self, a: &Self) -> bool;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        // Keep headroom so |x| always fits after negation.
        b.to_i64().filter(|&x| x != i64::MIN)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn smaller_than(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_unit(&self) -> bool {
        self.unsigned_abs() == 1
    }
    fn round_quot(&self, p: &Self) -> Option<Self> {
        let mut q = self.div_floor(p);
        let r = self.checked_sub(q.checked_mul(*p)?)?;
        if r.unsigned_abs() > p.unsigned_abs() - r.unsigned_abs() {
            q = q.checked_add(1)?;
        }
        Some(q)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        let v = self.checked_sub(q.checked_mul(*b)?)?;
        (v != i64::MIN).then_some(v)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        let v = self.checked_add(*b)?;
        (v != i64::MIN).then_some(v)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn divides(&self, a: &Self) -> bool {
        a % self == 0
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn smaller_than(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn round_quot(&self, p: &Self) -> Option<Self> {
        let (mut q, r) = self.div_mod_floor(p);
        let ra = r.abs();
        if ra > p.abs() - &ra {
            q += 1;
        }
        Some(q)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn divides(&self, a: &Self) -> bool {
        a.is_multiple_of(self)
    }
}

struct Work<T> {
    a: Vec<Vec<T>>,
    u: Option<Vec<Vec<T>>>,
    v: Option<Vec<Vec<T>>>,
    ops: u64,
    budget: Option<u64>,
}

fn ident<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

impl<T: Scalar> Work<T> {
    fn new(m: &ZMatrix, transforms: bool, budget: Budget) -> Option<Self> {
        let mut a = Vec::with_capacity(m.rows());
        for i in 0..m.rows() {
            a.push(
                m.row(i)
                    .iter()
                    .map(T::from_big)
                    .collect::<Option<Vec<T>>>()?,
            );
        }
        Some(Work {
            a,
            u: transforms.then(|| ident(m.rows())),
            v: transforms.then(|| ident(m.cols())),
            ops: 0,
            budget: budget.0,
        })
    }

    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn tick(&mut self) -> std::result::Result<(), Halt> {
        self.ops += 1;
        match self.budget {
            Some(b) if self.ops > b => Err(Halt::Budget(b)),
            _ => Ok(()),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(v) = &mut self.v {
                for row in v.iter_mut() {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row_i ← row_i − q·row_t, touching columns `from..`.
    fn row_axpy(
        &mut self,
        i: usize,
        t: usize,
        q: &T,
        from: usize,
    ) -> std::result::Result<(), Halt> {
        self.tick()?;
        let (src, dst) = pair_mut(&mut self.a, t, i);
        for (d, s) in dst[from..].iter_mut().zip(&src[from..]) {
            if !s.is_zero() {
                *d = d.sub_mul(q, s).ok_or(Halt::Overflow)?;
            }
        }
        if let Some(u) = &mut self.u {
            let (src, dst) = pair_mut(u, t, i);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d = d.sub_mul(q, s).ok_or(Halt::Overflow)?;
                }
            }
        }
        Ok(())
    }

    /// col_j ← col_j − q·col_t, touching rows `from..`.
    fn col_axpy(
        &mut self,
        j: usize,
        t: usize,
        q: &T,
        from: usize,
    ) -> std::result::Result<(), Halt> {
        self.tick()?;
        for row in &mut self.a[from..] {
            if !row[t].is_zero() {
                row[j] = row[j].sub_mul(q, &row[t]).ok_or(Halt::Overflow)?;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[t].is_zero() {
                    row[j] = row[j].sub_mul(q, &row[t]).ok_or(Halt::Overflow)?;
                }
            }
        }
        Ok(())
    }

    /// row_t ← row_t + row_i (used to repair divisibility).
    fn add_row(&mut self, t: usize, i: usize, from: usize) -> std::result::Result<(), Halt> {
        self.tick()?;
        let (src, dst) = pair_mut(&mut self.a, i, t);
        for (d, s) in dst[from..].iter_mut().zip(&src[from..]) {
            *d = d.add(s).ok_or(Halt::Overflow)?;
        }
        if let Some(u) = &mut self.u {
            let (src, dst) = pair_mut(u, i, t);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                *d = d.add(s).ok_or(Halt::Overflow)?;
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, t: usize) -> std::result::Result<(), Halt> {
        for x in self.a[t].iter_mut() {
            *x = x.neg().ok_or(Halt::Overflow)?;
        }
        if let Some(u) = &mut self.u {
            for x in u[t].iter_mut() {
                *x = x.neg().ok_or(Halt::Overflow)?;
            }
        }
        Ok(())
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if !x.smaller_than(&self.a[bi][bj]) => {}
                    _ => {
                        if x.is_unit() {
                            return Some((i, j));
                        }
                        best = Some((i, j));
                    }
                }
            }
        }
        best
    }

    /// Reduces to diagonal form. With `strict`, also enforces `dᵢ | dᵢ₊₁`
    /// in place; otherwise the diagonal is normalized afterwards.
    fn run(&mut self, strict: bool) -> std::result::Result<(), Halt> {
        let (m, n) = (self.rows(), self.cols());
        for t in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = self.min_pivot(t) else {
                    return Ok(());
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let mut clean = true;
                for i in t + 1..m {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t]
                        .round_quot(&self.a[t][t])
                        .ok_or(Halt::Overflow)?;
                    self.row_axpy(i, t, &q, t)?;
                    clean &= self.a[i][t].is_zero();
                }
                for j in t + 1..n {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j]
                        .round_quot(&self.a[t][t])
                        .ok_or(Halt::Overflow)?;
                    self.col_axpy(j, t, &q, t)?;
                    clean &= self.a[t][j].is_zero();
                }
                if !clean {
                    continue;
                }
                if strict && !self.a[t][t].is_unit() {
                    let p = self.a[t][t].clone();
                    let bad = (t + 1..m).find(|&i| {
                        self.a[i][t + 1..]
                            .iter()
                            .any(|x| !x.is_zero() && !p.divides(x))
                    });
                    if let Some(i) = bad {
                        self.add_row(t, i, t)?;
                        continue;
                    }
                }
                break;
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t)?;
            }
        }
        Ok(())
    }
}

fn pair_mut<T>(rows: &mut [Vec<T>], src: usize, dst: usize) -> (&Vec<T>, &mut Vec<T>) {
    assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = rows.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

fn to_zmatrix<T: Scalar>(rows: &[Vec<T>]) -> ZMatrix {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    let data = rows
        .iter()
        .flat_map(|row| row.iter().map(T::to_big))
        .collect();
    ZMatrix::from_vec(r, c, data).expect("shape preserved")
}

fn attempt<T: Scalar>(
    a: &ZMatrix,
    transforms: bool,
    strict: bool,
    budget: Budget,
) -> std::result::Result<Work<T>, Halt> {
    let mut w = Work::<T>::new(a, transforms, budget).ok_or(Halt::Overflow)?;
    w.run(strict)?;
    Ok(w)
}

fn reduce(a: &ZMatrix, transforms: bool, strict: bool, budget: Budget) -> Result<Work<BigInt>> {
    let halt = match attempt::<i64>(a, transforms, strict, budget) {
        Ok(w) => {
            return Ok(Work {
                a: w.a
                    .iter()
                    .map(|r| r.iter().map(Scalar::to_big).collect())
                    .collect(),
                u: w.u.map(|u| {
                    u.iter()
                        .map(|r| r.iter().map(Scalar::to_big).collect())
                        .collect()
                }),
                v: w.v.map(|v| {
                    v.iter()
                        .map(|r| r.iter().map(Scalar::to_big).collect())
                        .collect()
                }),
                ops: w.ops,
                budget: w.budget,
            })
        }
        Err(h) => h,
    };
    match halt {
        Halt::Budget(b) => Err(Error::BudgetExceeded { budget: b }),
        Halt::Overflow => attempt::<BigInt>(a, transforms, strict, budget).map_err(|h| match h {
            Halt::Budget(b) => Error::BudgetExceeded { budget: b },
            Halt::Overflow => unreachable!("BigInt arithmetic cannot overflow"),
        }),
    }
}

/// Full Smith normal form with unimodular transforms.
pub fn snf(a: &ZMatrix) -> SmithForm {
    let w = reduce(a, true, true, Budget::UNLIMITED).expect("unlimited budget");
    SmithForm {
        s: to_zmatrix(&w.a),
        u: to_zmatrix(w.u.as_deref().unwrap_or_default()),
        v: to_zmatrix(w.v.as_deref().unwrap_or_default()),
    }
}

/// Invariant factors only, under a work budget.
pub fn smith_invariants(a: &ZMatrix, budget: Budget) -> Result<SmithInvariants> {
    let w = reduce(a, false, false, budget)?;
    let diag: Vec<BigInt> = (0..a.rows().min(a.cols()))
        .map(|i| w.a[i][i].abs())
        .filter(|d| !Zero::is_zero(d))
        .collect();
    Ok(SmithInvariants {
        factors: divisibility_chain(diag),
        rows: a.rows(),
        cols: a.cols(),
    })
}

/// Rank over Q.
pub fn rank(a: &ZMatrix) -> usize {
    smith_invariants(a, Budget::UNLIMITED)
        .expect("unlimited budget")
        .rank()
}

/// Rewrites positive integers as a divisibility chain generating the same
/// abelian group, by the pairwise replacement `(a, b) → (gcd, lcm)`.
pub(crate) fn divisibility_chain(mut xs: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[j].is_multiple_of(&xs[i]) {
                continue;
            }
            let g = xs[i].gcd(&xs[j]);
            let l = &xs[i] / &g * &xs[j];
            xs[i] = g;
            xs[j] = l;
        }
    }
    xs
}

/// Basis of the integer kernel `{x : A·x = 0}` as matrix columns.
pub fn kernel_basis(a: &ZMatrix) -> ZMatrix {
    let f = snf(a);
    let r = f.rank();
    let cols: Vec<usize> = (r..a.cols()).collect();
    let rows: Vec<usize> = (0..a.cols()).collect();
    f.v.submatrix(&rows, &cols)
}
