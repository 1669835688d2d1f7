//! Demazure roots, their descent to the coordinate ring, and the affine
//! facet / affine ray classification behind derivations with a slice.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cone::intersect_faces;
use crate::cone::points::{lattice_points_in_polytope, HalfSpace};
use crate::cone::RationalCone;
use crate::derivation::HomogeneousDerivation;
use crate::error::{Error, Result};
use crate::lattice::{pair, DualVector, LatticePoint, LatticeVector};
use crate::monoid::{AffineMonoid, Bounds, Certification, DescentVerdict, FacetVerdict, Propagation};

/// `e ∈ M` with `⟨e, n_ρ⟩ = -1` and `⟨e, n_ξ⟩ >= 0` for the other rays `ξ` of `σ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DemazureRoot {
    /// Index of the ray `ρ` of `σ`.
    pub ray: usize,
    pub e: LatticePoint,
}

impl DemazureRoot {
    /// Checks the defining inequalities against `σ`.
    pub fn is_valid(&self, sigma: &RationalCone<DualVector>) -> bool {
        sigma.rays().iter().enumerate().all(|(i, n)| {
            let v = pair(&self.e, n);
            if i == self.ray {
                v == BigInt::from(-1)
            } else {
                v >= BigInt::zero()
            }
        })
    }

    /// The homogeneous derivation `χ^m ↦ ⟨m, n_ρ⟩ χ^{m+e}`.
    pub fn derivation(&self, sigma: &RationalCone<DualVector>) -> HomogeneousDerivation {
        HomogeneousDerivation::unit(sigma.rays()[self.ray].clone(), self.e.clone())
            .expect("root and ray share the rank")
    }
}

/// Tri-state outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Inconclusive,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }
}

/// All roots of ray `ray` with `0 <= ⟨e, n_ξ⟩ <= height` for the other rays,
/// sorted lexicographically.
pub fn demazure_roots(sigma: &RationalCone<DualVector>, ray: usize, height: &BigInt) -> Result<Vec<DemazureRoot>> {
    if !sigma.is_pointed() || !sigma.is_full_dimensional() {
        return Err(Error::Domain("roots need a pointed full-dimensional cone".into()));
    }
    if ray >= sigma.rays().len() {
        return Err(Error::Domain(format!("ray index {ray} out of range")));
    }
    let n = sigma.ambient_rank();
    let mut hs = Vec::new();
    for (i, nv) in sigma.rays().iter().enumerate() {
        let c = nv.coords().to_vec();
        let neg: Vec<BigInt> = c.iter().map(|x| -x).collect();
        if i == ray {
            hs.push(HalfSpace::new(c, BigInt::from(-1)));
            hs.push(HalfSpace::new(neg, BigInt::one()));
        } else {
            hs.push(HalfSpace::new(c, BigInt::zero()));
            hs.push(HalfSpace::new(neg, -height));
        }
    }
    let pts = lattice_points_in_polytope(n, &hs)?;
    Ok(pts
        .into_iter()
        .map(|c| DemazureRoot {
            ray,
            e: LatticePoint::new(c),
        })
        .collect())
}

/// Whether the derivation of `root` preserves `K[P]`.
pub fn descends(monoid: &AffineMonoid, root: &DemazureRoot, bound: &BigInt) -> DescentVerdict {
    monoid.descends(&root.e, bound)
}

/// Some root of `ray`, found by raising the height until one appears.
pub fn some_root(sigma: &RationalCone<DualVector>, ray: usize) -> Result<DemazureRoot> {
    let mut h = BigInt::one();
    loop {
        if let Some(r) = demazure_roots(sigma, ray, &h)?.into_iter().next() {
            return Ok(r);
        }
        h *= 2;
    }
}

/// Why a ray fails to be affine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineRayFailure {
    NotInMonoid,
    PairingNotOne { pairing: BigInt },
    SeriesBreaks { hole: LatticePoint, member: LatticePoint },
}

/// The affine-ray test for the distinguished ray of an affine facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineRayCheck {
    /// Index of the ray of `σ∨` off the facet.
    pub ray: usize,
    pub vector: LatticePoint,
    pub in_monoid: bool,
    pub pairing: BigInt,
    pub failure: Option<AffineRayFailure>,
    pub certification: Certification,
}

impl AffineRayCheck {
    pub fn is_affine(&self) -> bool {
        self.failure.is_none()
    }
}

/// A derivation with slice: `χ^m ↦ ⟨m, n_ρ⟩ χ^{m-r}` and the slice `χ^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceDerivation {
    pub facet: usize,
    pub derivation: HomogeneousDerivation,
    pub root: DemazureRoot,
    pub slice: LatticePoint,
}

/// Everything decided about one facet of `σ∨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetClassification {
    pub facet: usize,
    /// Primitive normal, the ray `n_ρ` of `σ` dual to the facet.
    pub normal: DualVector,
    /// Rays of `σ∨` on the facet.
    pub rays: BTreeSet<usize>,
    pub saturation: FacetVerdict,
    /// No hole lies on the facet.
    pub strictly_saturated: Decision,
    /// The single ray the other facets meet in, when their intersection is one-dimensional.
    pub distinguished_ray: Option<usize>,
    pub affine: Decision,
    pub affine_ray: Option<AffineRayCheck>,
    pub slice: Option<SliceDerivation>,
    /// A root of `n_ρ` whose derivation preserves `K[P]` (almost saturated facets only).
    pub descending_root: Option<DemazureRoot>,
}

/// The unique ray in which the facets other than `k` meet, if their
/// intersection is one-dimensional.
pub fn distinguished_ray(monoid: &AffineMonoid, k: usize) -> Option<usize> {
    let cone = monoid.dual_cone();
    let others: Vec<_> = (0..monoid.facet_count()).filter(|&j| j != k).map(|j| cone.facet(j)).collect();
    let f = intersect_faces(cone, &others).expect("faces of one cone");
    if f.dim() == 1 && f.ray_indices().len() == 1 {
        f.ray_indices().iter().next().copied()
    } else {
        None
    }
}

fn affine_decision(monoid: &AffineMonoid, k: usize, verdict: &FacetVerdict) -> Decision {
    if distinguished_ray(monoid, k).is_none() {
        return Decision::No;
    }
    match &verdict.status {
        crate::monoid::FacetStatus::Inconclusive => Decision::Inconclusive,
        s => Decision::from_bool(s.is_almost_saturated()),
    }
}

/// Whether facet `k` is affine: almost saturated, and the other facets meet in a ray.
pub fn is_affine_facet(monoid: &AffineMonoid, k: usize, bounds: &Bounds) -> Decision {
    let verdict = monoid.facet_saturation_status(k, bounds);
    affine_decision(monoid, k, &verdict)
}

fn affine_ray_check(monoid: &AffineMonoid, k: usize, tau: usize, verdict: &FacetVerdict, bounds: &Bounds) -> AffineRayCheck {
    let r = monoid.dual_cone().rays()[tau].clone();
    let normal = &monoid.dual_cone().normals()[k];
    let in_monoid = monoid.contains(&r);
    let pairing = pair(&r, normal);
    let mut certification = Certification::Exact;
    let failure = if !in_monoid {
        Some(AffineRayFailure::NotInMonoid)
    } else if !pairing.is_one() {
        Some(AffineRayFailure::PairingNotOne {
            pairing: pairing.clone(),
        })
    } else {
        certification = verdict.certification.clone();
        let mut broken = None;
        for h in verdict.status.holes_on_facet() {
            match monoid.propagates(h, tau, bounds) {
                Propagation::Holds(c) => certification = certification.weaker(c),
                Propagation::Breaks { member } => {
                    broken = Some(AffineRayFailure::SeriesBreaks {
                        hole: h.clone(),
                        member,
                    });
                    certification = Certification::Exact;
                    break;
                }
            }
        }
        broken
    };
    AffineRayCheck {
        ray: tau,
        vector: r,
        in_monoid,
        pairing,
        failure,
        certification,
    }
}

/// The affine-ray test for affine facet `k`; errors if `k` is not affine.
pub fn is_affine_ray(monoid: &AffineMonoid, k: usize, bounds: &Bounds) -> Result<AffineRayCheck> {
    let verdict = monoid.facet_saturation_status(k, bounds);
    match affine_decision(monoid, k, &verdict) {
        Decision::Yes => {}
        Decision::No => return Err(Error::Domain(format!("facet {k} is not affine"))),
        Decision::Inconclusive => {
            return Err(Error::Inconclusive(format!("saturation of facet {k}")));
        }
    }
    let tau = distinguished_ray(monoid, k).expect("affine");
    Ok(affine_ray_check(monoid, k, tau, &verdict, bounds))
}

fn slice_for(monoid: &AffineMonoid, k: usize, check: &AffineRayCheck) -> Option<SliceDerivation> {
    if !check.is_affine() {
        return None;
    }
    let rho = monoid.sigma().rays()[k].clone();
    let e = -&check.vector;
    Some(SliceDerivation {
        facet: k,
        derivation: HomogeneousDerivation::unit(rho, e.clone()).expect("same rank"),
        root: DemazureRoot { ray: k, e },
        slice: check.vector.clone(),
    })
}

/// The derivation with slice attached to facet `k`, if the facet and its ray are affine.
pub fn slice_derivation_for_facet(monoid: &AffineMonoid, k: usize, bounds: &Bounds) -> Result<Option<SliceDerivation>> {
    match is_affine_ray(monoid, k, bounds) {
        Ok(check) => Ok(slice_for(monoid, k, &check)),
        Err(Error::Domain(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// A root of facet `k` whose derivation descends: any root shifted by a
/// saturation point on the facet.
pub fn descending_root(monoid: &AffineMonoid, k: usize, witness: &LatticePoint) -> Result<DemazureRoot> {
    let base = some_root(monoid.sigma(), k)?;
    Ok(DemazureRoot {
        ray: k,
        e: &base.e + witness,
    })
}

/// Classifies facet `k`.
pub fn classify_facet(monoid: &AffineMonoid, k: usize, bounds: &Bounds) -> Result<FacetClassification> {
    let verdict = monoid.facet_saturation_status(k, bounds);
    let affine = affine_decision(monoid, k, &verdict);
    let tau = distinguished_ray(monoid, k);
    let strictly_saturated = match &verdict.status {
        crate::monoid::FacetStatus::Saturated { .. } => Decision::Yes,
        crate::monoid::FacetStatus::Inconclusive => Decision::Inconclusive,
        crate::monoid::FacetStatus::AlmostSaturated { .. } => Decision::No,
        crate::monoid::FacetStatus::NowhereSaturated { .. } => {
            // holes on the facet itself decide; search up to the bound
            let on = monoid
                .holes_up_to(&bounds.degree_bound)
                .into_iter()
                .any(|h| pair(&h, &monoid.dual_cone().normals()[k]).is_zero());
            if on {
                Decision::No
            } else if monoid.is_exact() && monoid.rank() <= 2 {
                strict_planar(monoid, k)
            } else {
                Decision::Inconclusive
            }
        }
    };
    let affine_ray = match (affine, tau) {
        (Decision::Yes, Some(t)) => Some(affine_ray_check(monoid, k, t, &verdict, bounds)),
        _ => None,
    };
    let slice = affine_ray.as_ref().and_then(|c| slice_for(monoid, k, c));
    let descending_root = match verdict.status.saturation_witness() {
        Some(w) => Some(descending_root(monoid, k, w)?),
        None => None,
    };
    Ok(FacetClassification {
        facet: k,
        normal: monoid.dual_cone().normals()[k].clone(),
        rays: monoid.dual_cone().rays_on_facet(k),
        saturation: verdict,
        strictly_saturated,
        distinguished_ray: tau,
        affine,
        affine_ray,
        slice,
        descending_root,
    })
}

/// Holes on a nowhere saturated facet in rank at most two: the facet is a ray
/// (or the apex) and its lattice points are multiples of the ray generator; a
/// hole on it, if any, lies below the first generator multiple that starts an
/// all-member tail, which the exact membership test finds.
fn strict_planar(monoid: &AffineMonoid, k: usize) -> Decision {
    let rays = monoid.dual_cone().rays_on_facet(k);
    let Some(&i) = rays.iter().next() else {
        // the apex: only 0, which is a member
        return Decision::Yes;
    };
    let r = &monoid.dual_cone().rays()[i];
    // the monoid on the ray is numerical; gaps are below the product of its two smallest elements
    let mut on_ray = Vec::new();
    let mut q = r.clone();
    while on_ray.len() < 2 {
        if monoid.contains(&q) {
            on_ray.push(q.clone());
        }
        q = &q + r;
    }
    let limit = monoid.degree(&on_ray[0]) * monoid.degree(&on_ray[1]);
    let mut q = r.clone();
    while monoid.degree(&q) <= limit {
        if !monoid.contains(&q) {
            return Decision::No;
        }
        q = &q + r;
    }
    Decision::Yes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::BoundsOverride;

    fn p(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64s(c)
    }

    fn m(gens: &[&[i64]]) -> AffineMonoid {
        AffineMonoid::from_i64s(gens).unwrap()
    }

    fn bounds(m: &AffineMonoid) -> Bounds {
        BoundsOverride::default().resolve(m)
    }

    #[test]
    fn roots_of_the_plane() {
        let a2 = m(&[&[1, 0], &[0, 1]]);
        // rays of σ sorted: (0,1), (1,0); ray 1 is (1,0)
        let roots = demazure_roots(a2.sigma(), 1, &BigInt::from(3)).unwrap();
        let es: Vec<_> = roots.iter().map(|r| r.e.clone()).collect();
        assert_eq!(es, vec![p(&[-1, 0]), p(&[-1, 1]), p(&[-1, 2]), p(&[-1, 3])]);
        assert!(roots.iter().all(|r| r.is_valid(a2.sigma())));
    }

    #[test]
    fn roots_of_example1() {
        let e1 = m(&[&[1, 0], &[1, 1], &[1, 2]]);
        // σ rays (0,1), (2,-1)
        let roots = demazure_roots(e1.sigma(), 0, &BigInt::from(4)).unwrap();
        assert!(roots.iter().all(|r| r.e.coords()[1] == BigInt::from(-1)));
        assert!(roots.iter().all(|r| r.e.coords()[0] >= BigInt::zero()));
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn descent_examples() {
        let e2 = m(&[&[1, 0], &[0, 2], &[0, 3]]);
        let b = BigInt::from(36);
        let good = DemazureRoot { ray: 1, e: p(&[-1, 0]) };
        let bad = DemazureRoot { ray: 1, e: p(&[-1, 1]) };
        assert!(descends(&e2, &good, &b).is_yes());
        assert!(!descends(&e2, &bad, &b).is_yes());
    }

    #[test]
    fn affine_facets_and_rays() {
        let e1 = m(&[&[1, 0], &[1, 1], &[1, 2]]);
        let bd = bounds(&e1);
        for k in 0..2 {
            assert_eq!(is_affine_facet(&e1, k, &bd), Decision::Yes);
            let c = is_affine_ray(&e1, k, &bd).unwrap();
            assert_eq!(c.failure, Some(AffineRayFailure::PairingNotOne { pairing: BigInt::from(2) }));
            assert_eq!(slice_derivation_for_facet(&e1, k, &bd).unwrap(), None);
        }
        let e2 = m(&[&[1, 0], &[0, 2], &[0, 3]]);
        let bd = bounds(&e2);
        assert_eq!(is_affine_facet(&e2, 0, &bd), Decision::No);
        assert_eq!(is_affine_facet(&e2, 1, &bd), Decision::Yes);
        assert!(is_affine_ray(&e2, 0, &bd).is_err());
        let s = slice_derivation_for_facet(&e2, 1, &bd).unwrap().unwrap();
        assert_eq!(s.slice, p(&[1, 0]));
        assert_eq!(s.derivation.e, p(&[-1, 0]));
        assert_eq!(s.derivation.rho, DualVector::from_i64s(&[1, 0]));
    }

    #[test]
    fn pyramid_facets_not_affine() {
        let mut gens = Vec::new();
        for y in -1..=1 {
            for z in -1..=1 {
                gens.push(p(&[1, y, z]));
            }
        }
        let pyr = AffineMonoid::new(&gens).unwrap();
        let bd = bounds(&pyr);
        for k in 0..4 {
            let c = classify_facet(&pyr, k, &bd).unwrap();
            assert_eq!(c.affine, Decision::No);
            assert_eq!(c.strictly_saturated, Decision::Yes);
        }
    }

    #[test]
    fn broken_series_refutes_affine_ray() {
        let e5 = m(&[&[1, 0], &[1, 2], &[0, 3], &[0, 4], &[0, 5]]);
        let bd = bounds(&e5);
        let c = classify_facet(&e5, 1, &bd).unwrap();
        assert_eq!(c.strictly_saturated, Decision::No);
        assert_eq!(
            c.affine_ray.unwrap().failure,
            Some(AffineRayFailure::SeriesBreaks {
                hole: p(&[0, 2]),
                member: p(&[1, 2])
            })
        );
        assert!(c.slice.is_none());
    }

    #[test]
    fn constructed_root_descends() {
        let e2 = m(&[&[1, 0], &[0, 2], &[0, 3]]);
        let bd = bounds(&e2);
        let c = classify_facet(&e2, 1, &bd).unwrap();
        let root = c.descending_root.unwrap();
        assert!(root.is_valid(e2.sigma()));
        assert!(descends(&e2, &root, &bd.degree_bound).is_yes());
        let line = m(&[&[1]]);
        let c = classify_facet(&line, 0, &bounds(&line)).unwrap();
        assert!(c.slice.is_some());
        assert_eq!(c.descending_root.unwrap().e, p(&[-1]));
    }
}
