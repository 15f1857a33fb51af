use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ZMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ZMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows. Panics on ragged input; use
    /// [`ZMatrix::try_from_rows`] for untrusted data.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        Self::try_from_rows(rows).expect("ragged rows")
    }

    pub fn try_from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(ZMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self[(i, j)].is_zero()))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &ZMatrix) -> Result<ZMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &ZMatrix) -> Result<ZMatrix> {
        self.same_shape(rhs)?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ZMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn checked_sub(&self, rhs: &ZMatrix) -> Result<ZMatrix> {
        self.same_shape(rhs)?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(ZMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// `self - I`; the workhorse for every `∧ʳA − I` block.
    pub fn minus_identity(&self) -> Result<ZMatrix> {
        self.require_square()?;
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] -= 1;
        }
        Ok(m)
    }

    pub fn scale(&self, c: &BigInt) -> ZMatrix {
        ZMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Result<BigInt> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Inverse of a matrix in GL(n, Z).
    pub fn inverse_unimodular(&self) -> Result<ZMatrix> {
        self.require_square()?;
        let det = self.det()?;
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular {
                det: det.to_string(),
            });
        }
        // Gauss-Jordan over Z: every pivot is a unit once the column is
        // reduced to its gcd, which is 1 for a unimodular matrix.
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for col in 0..n {
            loop {
                let pivot = (col..n)
                    .filter(|&i| !a[i][col].is_zero())
                    .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()))
                    .ok_or_else(|| Error::Defect("singular column in unimodular inverse".into()))?;
                a.swap(col, pivot);
                inv.swap(col, pivot);
                let mut done = true;
                for i in col + 1..n {
                    if a[i][col].is_zero() {
                        continue;
                    }
                    let q = a[i][col].div_floor(&a[col][col]);
                    let (pa, pi) = (a[col].clone(), inv[col].clone());
                    for j in 0..n {
                        a[i][j] -= &q * &pa[j];
                        inv[i][j] -= &q * &pi[j];
                    }
                    if !a[i][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if a[col][col].is_negative() {
                for j in 0..n {
                    a[col][j] = -&a[col][j];
                    inv[col][j] = -&inv[col][j];
                }
            }
        }
        for col in (0..n).rev() {
            for i in 0..col {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].clone();
                let (pa, pi) = (a[col].clone(), inv[col].clone());
                for j in 0..n {
                    a[i][j] -= &q * &pa[j];
                    inv[i][j] -= &q * &pi[j];
                }
            }
        }
        ZMatrix::try_from_rows(&inv)
    }

    /// `self^k` for any integer `k`; negative powers need `self ∈ GL(n, Z)`.
    pub fn pow(&self, k: i64) -> Result<ZMatrix> {
        self.require_square()?;
        let base = if k < 0 {
            self.inverse_unimodular()?
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(self.rows);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Submatrix on the given (ordered) row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ZMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        ZMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Largest entry magnitude in bits; a cheap growth diagnostic.
    pub fn max_bits(&self) -> u64 {
        self.data.iter().map(|x| x.bits()).max().unwrap_or(0)
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn same_shape(&self, rhs: &ZMatrix) -> Result<()> {
        if self.rows == rhs.rows && self.cols == rhs.cols {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )))
        }
    }
}

impl Index<(usize, usize)> for ZMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ZMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl fmt::Display for ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = strs.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", strs[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let a = ZMatrix::from_rows(&[vec![2, 1, 0], vec![1, 1, 0], vec![5, -3, 1]]);
        assert_eq!(a.det().unwrap(), BigInt::one());
        let inv = a.inverse_unimodular().unwrap();
        assert!(a.checked_mul(&inv).unwrap().is_identity());
        assert!(inv.checked_mul(&a).unwrap().is_identity());
    }

    #[test]
    fn det_of_singular_and_permuted() {
        let a = ZMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.det().unwrap(), BigInt::from(-1));
        let s = ZMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(s.det().unwrap().is_zero());
        assert!(matches!(
            s.inverse_unimodular(),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn negative_powers() {
        let s = ZMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let p = s.pow(-3).unwrap();
        assert_eq!(p, ZMatrix::from_rows(&[vec![1, -3], vec![0, 1]]));
        assert!(s.pow(3).unwrap().checked_mul(&p).unwrap().is_identity());
        assert!(s.pow(0).unwrap().is_identity());
    }

    #[test]
    fn ragged_rows_rejected() {
        let r = ZMatrix::try_from_rows(&[vec![1, 2], vec![3]]);
        assert!(matches!(r, Err(Error::Dimension(_))));
    }
}
