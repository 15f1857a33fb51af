//! Affine transformations of `Tⁿ` in exponent coordinates and Hahn's
//! sufficient conditions for minimality and unique ergodicity.
//!
//! A map `(t, A)` with `A = [b_{ij}]` sends `v` to the point whose `j`-th
//! coordinate is `e^{2πi t_j} ∏ᵢ vᵢ^{b_{ij}}`; on exponents this is
//! `x ↦ t + Aᵀx`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::{kernel_basis, rank, ZMatrix};
use crate::exterior::{anzai_matrix, unipotent_degree};
use crate::quotients::{circle_pow_mul, CircleDoc, CircleElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    t: Vec<CircleElement>,
    a: ZMatrix,
}

impl AffineMap {
    pub fn new(t: Vec<CircleElement>, a: ZMatrix) -> Result<Self> {
        a.require_square()?;
        if t.len() != a.rows() {
            return Err(Error::Dimension(format!(
                "translation of length {} for a {}x{} matrix",
                t.len(),
                a.rows(),
                a.cols()
            )));
        }
        let det = a.det()?;
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular {
                det: det.to_string(),
            });
        }
        Ok(AffineMap { t, a })
    }

    pub fn identity(n: usize) -> Self {
        AffineMap {
            t: vec![CircleElement::one(); n],
            a: ZMatrix::identity(n),
        }
    }

    /// Rotation by `t` with trivial linear part.
    pub fn rotation(t: Vec<CircleElement>) -> Self {
        let n = t.len();
        AffineMap {
            t,
            a: ZMatrix::identity(n),
        }
    }

    /// `(v₁, …, vₙ) ↦ (λv₁, v₁v₂, …, v_{n−1}vₙ)`.
    pub fn anzai(n: usize, lambda: CircleElement) -> Self {
        let mut t = vec![CircleElement::one(); n];
        if n > 0 {
            t[0] = lambda;
        }
        AffineMap {
            t,
            a: anzai_matrix(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn translation(&self) -> &[CircleElement] {
        &self.t
    }

    pub fn matrix(&self) -> &ZMatrix {
        &self.a
    }

    /// Image of an exponent vector, `t + Aᵀx`.
    pub fn apply(&self, x: &[CircleElement]) -> Result<Vec<CircleElement>> {
        if x.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "point of length {} on T^{}",
                x.len(),
                self.dim()
            )));
        }
        Ok((0..self.dim())
            .map(|j| {
                let mut factors: Vec<(CircleElement, BigInt)> =
                    vec![(self.t[j].clone(), BigInt::one())];
                factors.extend((0..self.dim()).map(|i| (x[i].clone(), self.a[(i, j)].clone())));
                circle_pow_mul(&factors)
            })
            .collect())
    }

    /// `self ∘ other`, i.e. `other` first: `(t + Aᵀt′, A′A)` in the
    /// `[b_{ij}]` convention.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "T^{} after T^{}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(AffineMap {
            t: self.apply(&other.t)?,
            a: other.a.checked_mul(&self.a)?,
        })
    }

    /// `(−(A⁻¹)ᵀt, A⁻¹)`.
    pub fn inverse(&self) -> AffineMap {
        let inv = self.a.inverse_unimodular().expect("validated unimodular");
        let back = AffineMap {
            t: vec![CircleElement::one(); self.dim()],
            a: inv.clone(),
        };
        let t = back
            .apply(&self.t)
            .expect("same dimension")
            .into_iter()
            .map(|z| z.inverse())
            .collect();
        AffineMap { t, a: inv }
    }

    /// `self` iterated `m` times.
    pub fn power(&self, m: u64) -> AffineMap {
        let mut acc = AffineMap::identity(self.dim());
        for _ in 0..m {
            acc = self.compose(&acc).expect("same dimension");
        }
        acc
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AffineDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let t = doc
            .t
            .into_iter()
            .map(CircleElement::try_from)
            .collect::<Result<Vec<_>>>()?;
        AffineMap::new(t, doc.matrix)
    }

    pub fn to_json(&self) -> String {
        let doc = AffineDoc {
            t: self.t.iter().map(Into::into).collect(),
            matrix: self.a.clone(),
        };
        serde_json::to_string(&doc).expect("affine map serialization is infallible")
    }
}

#[derive(Serialize, Deserialize)]
struct AffineDoc {
    t: Vec<CircleDoc>,
    matrix: ZMatrix,
}

/// Exponents of the base point and its first `m` images: `x₀ = 0`,
/// `x_{k+1} = t + Aᵀx_k`.
pub fn orbit_points(a: &AffineMap, m: usize) -> Vec<Vec<CircleElement>> {
    let mut out = Vec::with_capacity(m + 1);
    out.push(vec![CircleElement::one(); a.dim()]);
    for k in 0..m {
        let next = a.apply(&out[k]).expect("same dimension");
        out.push(next);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HahnReport {
    /// `Z₁(A) = Z_p(A)` for every `p`.
    pub c1: bool,
    /// `t` rationally independent over `Z₁(A)`.
    pub c2: bool,
    /// `Z₁(A) ≠ 0`.
    pub c3: bool,
    /// `A` unipotent.
    pub c4: bool,
}

impl HahnReport {
    pub fn all(&self) -> bool {
        self.c1 && self.c2 && self.c3 && self.c4
    }
}

fn totient(mut m: u64) -> u64 {
    let mut phi = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

/// Orders `m ≥ 2` of roots of unity that can be eigenvalues of an integer
/// `n×n` matrix, i.e. those with `φ(m) ≤ n`. Since `φ(m) ≥ √(m/2)` the
/// search stops at `2n²`.
pub fn cyclotomic_orders(n: usize) -> Vec<u64> {
    let n = n as u64;
    (2..=2 * n * n + 2).filter(|&m| totient(m) <= n).collect()
}

/// Decides Hahn's four conditions exactly. Here `Z_p(A) = ker(Aᵖ − I)`
/// acting on characters, so `Z_p = Z₁` for all `p` reduces to the finitely
/// many cyclotomic orders an `n×n` integer matrix admits.
pub fn hahn_conditions(map: &AffineMap) -> Result<HahnReport> {
    let a = &map.a;
    let n = map.dim();
    let c4 = unipotent_degree(a)?.is_some();
    let z1 = kernel_basis(&a.minus_identity()?);
    let d = z1.cols();
    let c3 = d > 0;
    let mut c1 = true;
    for p in cyclotomic_orders(n) {
        let ap = a.pow(p as i64)?.minus_identity()?;
        if n - rank(&ap) != d {
            c1 = false;
            break;
        }
    }
    // ⟨t, k⟩ is rational exactly when its θ-part vanishes, so independence
    // means k ↦ θ-part of ⟨t, k⟩ is injective on Z₁; a functional into Q
    // is injective on a lattice only if the lattice has rank ≤ 1.
    let c2 = match d {
        0 => true,
        1 => {
            let w: BigRational = (0..n)
                .map(|i| map.t[i].irr() * BigRational::from_integer(z1[(i, 0)].clone()))
                .sum();
            !w.is_zero()
        }
        _ => false,
    };
    Ok(HahnReport { c1, c2, c3, c4 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::extbinom;

    fn theta() -> CircleElement {
        CircleElement::theta_power(1, 1)
    }

    #[test]
    fn anzai_orbit() {
        let pts = orbit_points(&AffineMap::anzai(3, theta()), 2);
        assert!(pts[0].iter().all(CircleElement::is_one));
        assert_eq!(
            pts[2],
            vec![
                CircleElement::theta_power(2, 1),
                theta(),
                CircleElement::one()
            ]
        );
        let pts = orbit_points(&AffineMap::anzai(5, theta()), 7);
        for (j, p) in pts[7].iter().enumerate() {
            assert_eq!(*p, theta().pow(&extbinom(7, j as i64 + 1)));
        }
    }

    #[test]
    fn composition_and_inverse() {
        let a = AffineMap::new(
            vec![CircleElement::root_of_unity(1, 3), theta()],
            ZMatrix::from_rows(&[vec![2, 1], vec![1, 1]]),
        )
        .unwrap();
        let id = AffineMap::identity(2);
        assert_eq!(a.compose(&a.inverse()).unwrap(), id);
        assert_eq!(a.inverse().compose(&a).unwrap(), id);
        let x = vec![
            CircleElement::theta_power(1, 2),
            CircleElement::root_of_unity(1, 5),
        ];
        let twice = a.compose(&a).unwrap();
        assert_eq!(
            twice.apply(&x).unwrap(),
            a.apply(&a.apply(&x).unwrap()).unwrap()
        );
        let r1 = AffineMap::rotation(vec![theta(), CircleElement::root_of_unity(1, 2)]);
        let r2 = AffineMap::rotation(vec![theta(), CircleElement::root_of_unity(1, 2)]);
        assert_eq!(
            r1.compose(&r2).unwrap().translation(),
            &[CircleElement::theta_power(2, 1), CircleElement::one()]
        );
        assert!(AffineMap::new(vec![theta()], ZMatrix::from_rows(&[vec![2]])).is_err());
    }

    #[test]
    fn anzai_power_has_binomial_matrix() {
        let s = AffineMap::anzai(4, theta()).power(5);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(s.matrix()[(i, j)], extbinom(5, j as i64 - i as i64));
            }
        }
    }

    #[test]
    fn hahn_examples() {
        for n in 1..=6 {
            assert!(hahn_conditions(&AffineMap::anzai(n, theta()))
                .unwrap()
                .all());
        }
        let rational = AffineMap::rotation(vec![CircleElement::root_of_unity(1, 3); 2]);
        let r = hahn_conditions(&rational).unwrap();
        assert_eq!(
            r,
            HahnReport {
                c1: true,
                c2: false,
                c3: true,
                c4: true
            }
        );
        let swap = AffineMap::new(
            vec![theta(), CircleElement::one()],
            ZMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
        )
        .unwrap();
        assert!(!hahn_conditions(&swap).unwrap().c1);
    }

    #[test]
    fn cyclotomic_order_list() {
        assert_eq!(cyclotomic_orders(1), vec![2]);
        assert_eq!(cyclotomic_orders(2), vec![2, 3, 4, 6]);
        assert_eq!(totient(12), 4);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"t":[{"rat":"0","irr":"1"},{"rat":"1/2","irr":"0"}],"matrix":{"rows":2,"cols":2,"data":[[1,1],[0,1]]}}"#;
        let a = AffineMap::from_json(text).unwrap();
        assert_eq!(
            a,
            AffineMap::new(
                vec![theta(), CircleElement::root_of_unity(1, 2)],
                anzai_matrix(2)
            )
            .unwrap()
        );
        assert_eq!(AffineMap::from_json(&a.to_json()).unwrap(), a);
    }
}
