//! Lattice groups `Zᵐ ⋊_G Z`: the discrete Heisenberg-type groups `𝔇ₙ`
//! (with `G = Mₙ`), the groups `Γ_α` of affine Furstenberg maps, and the
//! embedding `Γ_α ↪ 𝔇ₙ`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmat::{cokernel, direct_sum, FGAbelianGroup, ZMatrix};
use crate::exterior::{dn_power, LinearizationSpec};

/// `Zᵐ ⋊ Z` where the generator of `Z` acts by `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    g: ZMatrix,
}

impl GroupPresentation {
    pub fn new(g: ZMatrix) -> Result<Arc<Self>> {
        let det = g.det()?;
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular {
                det: det.to_string(),
            });
        }
        Ok(Arc::new(GroupPresentation { g }))
    }

    /// `𝔇ₙ = Z^{n+1} ⋊ Z` acting by `Mₙ`.
    pub fn dn(n: usize) -> Arc<Self> {
        Arc::new(GroupPresentation { g: dn_power(n, 1) })
    }

    /// `Γ_α` for Furstenberg exponents `b_{ij}` (`1 ≤ i < j ≤ n`, keys
    /// 1-based, `b_{i,i+1} ≠ 0`).
    pub fn gamma(n: usize, b: &BTreeMap<(usize, usize), BigInt>) -> Result<Arc<Self>> {
        Ok(Arc::new(GroupPresentation {
            g: gamma_matrix(n, b)?,
        }))
    }

    pub fn lattice_rank(&self) -> usize {
        self.g.rows()
    }

    pub fn action(&self) -> &ZMatrix {
        &self.g
    }

    /// `Gᵏ`; negative powers go through the integral inverse.
    pub fn act(&self, k: i64) -> ZMatrix {
        self.g.pow(k).expect("G is unimodular")
    }
}

/// `G_α`: identity plus `1` at `(0, 1)` and `b_{ij}` at `(i, j)`.
pub fn gamma_matrix(n: usize, b: &BTreeMap<(usize, usize), BigInt>) -> Result<ZMatrix> {
    LinearizationSpec::Furstenberg { n, b: b.clone() }.validate()?;
    let mut g = ZMatrix::identity(n + 1);
    if n >= 1 {
        g[(0, 1)] = BigInt::one();
    }
    for (&(i, j), v) in b {
        g[(i, j)] = v.clone();
    }
    Ok(g)
}

/// Element `(v, k)` of a semidirect product; multiplication is
/// `(v, k)(v′, k′) = (v + Gᵏv′, k + k′)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SemidirectElement {
    vector: Vec<BigInt>,
    shift: i64,
    parent: Arc<GroupPresentation>,
}

impl fmt::Debug for SemidirectElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vector.iter().map(ToString::to_string).collect();
        write!(f, "(({}), {})", v.join(", "), self.shift)
    }
}

impl SemidirectElement {
    pub fn new(parent: &Arc<GroupPresentation>, vector: Vec<BigInt>, shift: i64) -> Result<Self> {
        if vector.len() != parent.lattice_rank() {
            return Err(Error::Dimension(format!(
                "vector of length {} in a rank {} lattice",
                vector.len(),
                parent.lattice_rank()
            )));
        }
        Ok(SemidirectElement {
            vector,
            shift,
            parent: Arc::clone(parent),
        })
    }

    pub fn identity(parent: &Arc<GroupPresentation>) -> Self {
        SemidirectElement {
            vector: vec![BigInt::zero(); parent.lattice_rank()],
            shift: 0,
            parent: Arc::clone(parent),
        }
    }

    /// The generator `x = (0, 1)`.
    pub fn x(parent: &Arc<GroupPresentation>) -> Self {
        SemidirectElement {
            shift: 1,
            ..Self::identity(parent)
        }
    }

    /// The lattice generator `y_j = (e_j, 0)`, `j` 0-based.
    pub fn y(parent: &Arc<GroupPresentation>, j: usize) -> Result<Self> {
        let mut e = Self::identity(parent);
        let slot = e
            .vector
            .get_mut(j)
            .ok_or_else(|| Error::Dimension(format!("no generator y{j}")))?;
        *slot = BigInt::one();
        Ok(e)
    }

    pub fn vector(&self) -> &[BigInt] {
        &self.vector
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn parent(&self) -> &Arc<GroupPresentation> {
        &self.parent
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.vector.iter().all(Zero::is_zero)
    }

    fn same_parent(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_parent(other)?;
        let moved = self.parent.act(self.shift).mul_vec(&other.vector)?;
        Ok(SemidirectElement {
            vector: self.vector.iter().zip(moved).map(|(a, b)| a + b).collect(),
            shift: self.shift + other.shift,
            parent: Arc::clone(&self.parent),
        })
    }

    /// `(v, k)⁻¹ = (−G^{−k}v, −k)`.
    pub fn inverse(&self) -> Self {
        let back = self
            .parent
            .act(-self.shift)
            .mul_vec(&self.vector)
            .expect("length checked on construction");
        SemidirectElement {
            vector: back.into_iter().map(|x| -x).collect(),
            shift: -self.shift,
            parent: Arc::clone(&self.parent),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(&self.parent);
        for _ in 0..k.unsigned_abs() {
            acc = acc.multiply(&base).expect("same parent");
        }
        acc
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.multiply(other)?
            .multiply(&self.inverse())?
            .multiply(&other.inverse())
    }
}

/// `((G^{k₁} − I)x₂ − (G^{k₂} − I)x₁, 0)`, the commutator of `(x₁, k₁)` and
/// `(x₂, k₂)` without forming inverses.
pub fn commutator_closed_form(
    a: &SemidirectElement,
    b: &SemidirectElement,
) -> Result<SemidirectElement> {
    a.same_parent(b)?;
    let p = &a.parent;
    let u = p.act(a.shift).minus_identity()?.mul_vec(&b.vector)?;
    let w = p.act(b.shift).minus_identity()?.mul_vec(&a.vector)?;
    SemidirectElement::new(p, u.into_iter().zip(w).map(|(x, y)| x - y).collect(), 0)
}

/// `Γ / [Γ, Γ] ≅ coker(G − I) ⊕ Z`.
pub fn abelianization(p: &GroupPresentation) -> FGAbelianGroup {
    let g = p.g.minus_identity().expect("square");
    direct_sum([&cokernel(&g), &FGAbelianGroup::free(1)])
}

/// Matrix `C` whose column `k` holds the `y₀, …, yₙ` exponents of `ι(y′_k)`,
/// where `ι : Γ_α ↪ 𝔇ₙ` fixes `x`, `y₀`, `y₁` and is forced on the rest by
/// `[x, ι(y′_k)] = ι(y′₁)^{b₁ₖ} ⋯ ι(y′_{k−1})^{b_{k−1,k}}`.
///
/// For `k = 4` this gives `y₂^{b₁₄} y₃^{b₁₂b₂₄ + b₁₃b₃₄} y₄^{b₁₂b₂₃b₃₄}`; the
/// last factor is sometimes misprinted as a second power of `y₃`.
pub fn embed_gamma_exponents(n: usize, b: &BTreeMap<(usize, usize), BigInt>) -> Result<ZMatrix> {
    LinearizationSpec::Furstenberg { n, b: b.clone() }.validate()?;
    let mut c = ZMatrix::zeros(n + 1, n + 1);
    c[(0, 0)] = BigInt::one();
    if n >= 1 {
        c[(1, 1)] = BigInt::one();
    }
    let mut diag = BigInt::one();
    for k in 2..=n {
        let mut rhs = vec![BigInt::zero(); n + 1];
        for s in 1..k {
            if let Some(bsk) = b.get(&(s, k)) {
                for (i, slot) in rhs.iter_mut().enumerate() {
                    *slot += bsk * &c[(i, s)];
                }
            }
        }
        // (Mₙ − I) sends e_j to e_{j−1}, so the solution is rhs shifted up
        // by one index; the top coordinate of rhs has to vanish.
        if !rhs[n].is_zero() {
            return Err(Error::Defect(format!("no preimage for y'{k}")));
        }
        for i in 0..n {
            c[(i + 1, k)] = rhs[i].clone();
        }
        diag *= &b[&(k - 1, k)];
        if c[(k, k)] != diag {
            return Err(Error::Defect(format!(
                "diagonal exponent of y'{k} is {}",
                c[(k, k)]
            )));
        }
    }
    Ok(c)
}

/// Applies `ι` to an element of `Γ_α`: `(v, k) ↦ (Cv, k)`.
pub fn embed_gamma(
    element: &SemidirectElement,
    c: &ZMatrix,
    dn: &Arc<GroupPresentation>,
) -> Result<SemidirectElement> {
    SemidirectElement::new(dn, c.mul_vec(element.vector())?, element.shift())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bmap(entries: &[((usize, usize), i64)]) -> BTreeMap<(usize, usize), BigInt> {
        entries.iter().map(|&(k, v)| (k, BigInt::from(v))).collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn dn_relations() {
        let d = GroupPresentation::dn(4);
        let x = SemidirectElement::x(&d);
        for j in 1..=4 {
            let yj = SemidirectElement::y(&d, j).unwrap();
            let yprev = SemidirectElement::y(&d, j - 1).unwrap();
            assert_eq!(x.commutator(&yj).unwrap(), yprev);
        }
        let y0 = SemidirectElement::y(&d, 0).unwrap();
        assert!(x.commutator(&y0).unwrap().is_identity());
        let (y1, y3) = (
            SemidirectElement::y(&d, 1).unwrap(),
            SemidirectElement::y(&d, 3).unwrap(),
        );
        assert!(y1.commutator(&y3).unwrap().is_identity());
    }

    #[test]
    fn d1_commutator_by_hand() {
        let d = GroupPresentation::dn(1);
        let a = SemidirectElement::new(&d, ints(&[0, 1]), 0).unwrap();
        let x = SemidirectElement::x(&d);
        let c = x.commutator(&a).unwrap();
        assert_eq!(c.vector(), ints(&[1, 0]).as_slice());
        assert_eq!(c.shift(), 0);
    }

    #[test]
    fn inverse_and_identity() {
        let d = GroupPresentation::dn(3);
        let a = SemidirectElement::new(&d, ints(&[3, -1, 4, 2]), -2).unwrap();
        assert!(a.multiply(&a.inverse()).unwrap().is_identity());
        assert!(a.inverse().multiply(&a).unwrap().is_identity());
        assert_eq!(a.multiply(&SemidirectElement::identity(&d)).unwrap(), a);
        assert_eq!(a.pow(3), a.multiply(&a).unwrap().multiply(&a).unwrap());
        assert!(a.pow(-2).multiply(&a.pow(2)).unwrap().is_identity());
    }

    #[test]
    fn parents_must_match() {
        let d2 = GroupPresentation::dn(2);
        let d3 = GroupPresentation::dn(3);
        let a = SemidirectElement::x(&d2);
        let b = SemidirectElement::x(&d3);
        assert!(matches!(a.multiply(&b), Err(Error::ParentMismatch)));
        let again = GroupPresentation::dn(2);
        assert!(a.multiply(&SemidirectElement::x(&again)).is_ok());
    }

    #[test]
    fn gamma_relations() {
        let b = bmap(&[((1, 2), 2), ((1, 3), 5), ((2, 3), -3)]);
        let g = GroupPresentation::gamma(3, &b).unwrap();
        let x = SemidirectElement::x(&g);
        let y = |j| SemidirectElement::y(&g, j).unwrap();
        assert_eq!(x.commutator(&y(1)).unwrap(), y(0));
        assert_eq!(x.commutator(&y(2)).unwrap(), y(1).pow(2));
        let want = y(1).pow(5).multiply(&y(2).pow(-3)).unwrap();
        assert_eq!(x.commutator(&y(3)).unwrap(), want);
    }

    #[test]
    fn abelianizations() {
        assert_eq!(
            abelianization(&GroupPresentation::dn(4)),
            FGAbelianGroup::free(2)
        );
        let p = GroupPresentation::new(ZMatrix::identity(3)).unwrap();
        assert_eq!(abelianization(&p), FGAbelianGroup::free(4));
        let g = GroupPresentation::gamma(3, &bmap(&[((1, 2), 2), ((2, 3), 1)])).unwrap();
        let ab = abelianization(&g);
        assert_ne!(ab, FGAbelianGroup::free(2));
        assert_eq!(ab, FGAbelianGroup::from_summands(2, &[(2, 1)]));
    }

    #[test]
    fn embedding_examples() {
        let b = bmap(&[
            ((1, 2), 2),
            ((1, 3), 3),
            ((2, 3), 5),
            ((1, 4), 7),
            ((2, 4), 11),
            ((3, 4), 13),
        ]);
        let c = embed_gamma_exponents(4, &b).unwrap();
        let col =
            |k: usize| -> Vec<i64> { (0..5).map(|i| i64::try_from(&c[(i, k)]).unwrap()).collect() };
        assert_eq!(col(0), vec![1, 0, 0, 0, 0]);
        assert_eq!(col(1), vec![0, 1, 0, 0, 0]);
        assert_eq!(col(2), vec![0, 0, 2, 0, 0]);
        assert_eq!(col(3), vec![0, 0, 3, 10, 0]);
        assert_eq!(col(4), vec![0, 0, 7, 2 * 11 + 3 * 13, 2 * 5 * 13]);
        let m = dn_power(4, 1);
        let g = gamma_matrix(4, &b).unwrap();
        assert_eq!(m.checked_mul(&c).unwrap(), c.checked_mul(&g).unwrap());
    }

    #[test]
    fn embedding_rejects_degenerate_exponents() {
        let b = bmap(&[((1, 2), 0), ((2, 3), 1)]);
        assert!(embed_gamma_exponents(3, &b).is_err());
    }
}
