use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::element::AlgebraElement;
use super::operator::{HomogeneousDerivation, Nilpotency, Operator};
use crate::cone::Face;
use crate::error::{Error, Result};
use crate::lattice::{pair, LatticePoint, LatticeVector};
use crate::monoid::AffineMonoid;

/// Which monomials are allowed in the support of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportMode {
    /// `K[P]`, the coordinate ring itself.
    Strict,
    /// `K[P_sat]`, its normalisation.
    Normalization,
    /// All Laurent monomials.
    Laurent,
}

/// The semigroup algebra of a monoid in one of the three support modes.
#[derive(Clone, Debug)]
pub struct SemigroupAlgebra {
    monoid: AffineMonoid,
    mode: SupportMode,
}

impl SemigroupAlgebra {
    pub fn new(monoid: AffineMonoid, mode: SupportMode) -> Self {
        SemigroupAlgebra { monoid, mode }
    }

    pub fn monoid(&self) -> &AffineMonoid {
        &self.monoid
    }

    pub fn mode(&self) -> SupportMode {
        self.mode
    }

    pub fn allows(&self, m: &LatticePoint) -> bool {
        match self.mode {
            SupportMode::Strict => self.monoid.contains(m),
            SupportMode::Normalization => self.monoid.in_saturation(m),
            SupportMode::Laurent => true,
        }
    }

    /// Errors with the first monomial outside the algebra.
    pub fn check(&self, f: &AlgebraElement) -> Result<()> {
        match f.support().find(|m| !self.allows(m)) {
            Some(m) => Err(Error::Closure {
                monomial: m.to_string(),
            }),
            None => Ok(()),
        }
    }

    /// `δ(f)`, failing if `f` or its image leaves the algebra.
    pub fn apply(&self, op: &Operator, f: &AlgebraElement, max_iter: usize) -> Result<AlgebraElement> {
        self.check(f)?;
        let g = op.apply(f, max_iter)?;
        self.check(&g)?;
        Ok(g)
    }

    pub fn exponential(
        &self,
        op: &Operator,
        t: &BigRational,
        f: &AlgebraElement,
        max_iter: usize,
    ) -> Result<AlgebraElement> {
        self.check(f)?;
        let g = op.exponential(t, f, max_iter)?;
        self.check(&g)?;
        Ok(g)
    }

    /// The replica `g ↦ f·δ(g)`; `f` must lie in the kernel of `δ`.
    pub fn replica(&self, f: &AlgebraElement, op: &Operator, max_iter: usize) -> Result<Operator> {
        self.check(f)?;
        if !op.apply(f, max_iter)?.is_zero() {
            return Err(Error::Domain(format!("{f} is not in the kernel of {op}")));
        }
        Ok(Operator::Replica {
            factor: f.clone(),
            inner: Box::new(op.clone()),
        })
    }

    /// Whether `δ(χ^m) = 0` for every monomial `m ∈ P ∩ face` of degree at most `bound`.
    pub fn vanishes_on_face(
        &self,
        op: &Operator,
        face: &Face<LatticePoint>,
        bound: &BigInt,
        max_iter: usize,
    ) -> Result<bool> {
        for m in self.monoid.members_up_to(bound) {
            if face.contains(&m) && !op.apply(&AlgebraElement::monomial(m), max_iter)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Default iteration cap `deg(f)·H + 4`.
    pub fn default_max_iter(&self, f: &AlgebraElement, height: &BigInt) -> usize {
        let deg = f
            .support()
            .map(|m| self.monoid.degree(m))
            .max()
            .unwrap_or_default()
            .max(BigInt::from(0));
        (deg * height + 4u32).to_usize().unwrap_or(usize::MAX)
    }
}

/// Outcome of checking that `δ + δ'` is locally nilpotent with slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceSumReport {
    pub slice: LatticePoint,
    /// `δ'(s) = 0`.
    pub slice_in_other_kernel: bool,
    /// `(δ + δ')(s) = 1`.
    pub slice_preserved: bool,
    /// Nilpotency of `δ + δ'` on each sample monomial.
    pub samples: Vec<(LatticePoint, Nilpotency)>,
    /// Sample count per layer `⟨m, ρ⟩` of the slice derivation's normal.
    pub layers: BTreeMap<BigInt, usize>,
}

impl SliceSumReport {
    pub fn all_nilpotent(&self) -> bool {
        self.samples.iter().all(|(_, n)| n.index().is_some())
    }

    pub fn passed(&self) -> bool {
        self.slice_in_other_kernel && self.slice_preserved && self.all_nilpotent()
    }
}

/// Checks on sample monomials that `δ + δ'` is nilpotent and keeps the slice `s` of `δ`.
pub fn sum_with_slice_check(
    delta: &HomogeneousDerivation,
    slice: &LatticePoint,
    other: &Operator,
    samples: &[LatticePoint],
    max_iter: usize,
) -> Result<SliceSumReport> {
    let sum = Operator::Sum(vec![Operator::Homogeneous(delta.clone()), other.clone()]);
    let s = AlgebraElement::monomial(slice.clone());
    let one = AlgebraElement::one(slice.rank());
    let slice_in_other_kernel = other.apply(&s, max_iter)?.is_zero();
    let slice_preserved = sum.apply(&s, max_iter)? == one;
    let results = crate::par::map(samples, |m| {
        sum.nilpotency_index(&AlgebraElement::monomial(m.clone()), max_iter)
    });
    let mut out = Vec::with_capacity(samples.len());
    let mut layers = BTreeMap::new();
    for (m, r) in samples.iter().zip(results) {
        *layers.entry(pair(m, &delta.rho)).or_insert(0) += 1;
        out.push((m.clone(), r?));
    }
    Ok(SliceSumReport {
        slice: slice.clone(),
        slice_in_other_kernel,
        slice_preserved,
        samples: out,
        layers,
    })
}

/// `exp(tD) ∘ δ ∘ exp(-tD)`.
pub fn conjugate(by: &Operator, t: BigRational, inner: &Operator) -> Operator {
    Operator::Conjugate {
        by: Box::new(by.clone()),
        t,
        inner: Box::new(inner.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::element::rational;
    use crate::lattice::DualVector;

    fn p(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64s(c)
    }

    fn x(c: &[i64]) -> AlgebraElement {
        AlgebraElement::monomial(p(c))
    }

    fn example2() -> SemigroupAlgebra {
        let m = AffineMonoid::from_i64s(&[&[1, 0], &[0, 2], &[0, 3]]).unwrap();
        SemigroupAlgebra::new(m, SupportMode::Strict)
    }

    fn slice() -> HomogeneousDerivation {
        HomogeneousDerivation::unit(DualVector::from_i64s(&[1, 0]), p(&[-1, 0])).unwrap()
    }

    #[test]
    fn closure_is_enforced() {
        let alg = example2();
        let bad: Operator = HomogeneousDerivation::unit(DualVector::from_i64s(&[1, 0]), p(&[-1, 1]))
            .unwrap()
            .into();
        assert_eq!(
            alg.apply(&bad, &x(&[1, 0]), 8),
            Err(Error::Closure {
                monomial: "(0,1)".into()
            })
        );
        let norm = SemigroupAlgebra::new(alg.monoid().clone(), SupportMode::Normalization);
        assert_eq!(norm.apply(&bad, &x(&[1, 0]), 8).unwrap(), x(&[0, 1]));
    }

    #[test]
    fn replica_of_slice_derivation() {
        let alg = example2();
        let d: Operator = slice().into();
        let r = alg.replica(&x(&[0, 2]), &d, 8).unwrap();
        assert_eq!(alg.apply(&r, &x(&[2, 0]), 8).unwrap(), x(&[1, 2]).scaled(&rational(2)));
        assert_eq!(r.nilpotency_index(&x(&[2, 0]), 8).unwrap(), Nilpotency::Index(3));
        assert!(alg.apply(&r, &x(&[0, 3]), 8).unwrap().is_zero());
        assert!(alg.replica(&x(&[1, 0]), &d, 8).is_err());
        let trivial = alg.replica(&AlgebraElement::one(2), &d, 8).unwrap();
        assert_eq!(trivial.apply(&x(&[3, 2]), 8).unwrap(), d.apply(&x(&[3, 2]), 8).unwrap());
    }

    #[test]
    fn slice_sum_with_zero() {
        let report = sum_with_slice_check(&slice(), &p(&[1, 0]), &Operator::zero(), &[p(&[2, 3]), p(&[0, 2])], 20)
            .unwrap();
        assert!(report.passed());
        assert_eq!(report.layers.len(), 2);
    }

    #[test]
    fn face_vanishing() {
        let alg = example2();
        let d: Operator = slice().into();
        let cone = alg.monoid().dual_cone().clone();
        // facet with normal (1,0) is the vertical axis
        assert!(alg.vanishes_on_face(&d, &cone.facet(1), &BigInt::from(12), 8).unwrap());
        assert!(!alg.vanishes_on_face(&d, &cone.facet(0), &BigInt::from(12), 8).unwrap());
    }
}
