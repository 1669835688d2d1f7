//! Assembly of the Makar-Limanov data of an affine toric variety: the face
//! whose monomials span ML, the face for ML*, the splitting `X = X' × A^k`
//! and the rigidity verdicts.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cone::{intersect_faces, Face};
use crate::demazure::{classify_facet, Decision, FacetClassification};
use crate::error::{Error, Result};
use crate::lattice::{pair, LatticePoint, LatticeVector};
use crate::monoid::{AffineMonoid, Bounds, Certification, Mode};

/// The face of `σ∨` for ML*, or the marker for "no derivation with slice".
#[derive(Clone, Debug, PartialEq)]
pub enum MlStarFace {
    Face(Face<LatticePoint>),
    /// ML* is the empty intersection, all of `K[X]`.
    NoSlice,
}

impl MlStarFace {
    pub fn face(&self) -> Option<&Face<LatticePoint>> {
        match self {
            MlStarFace::Face(f) => Some(f),
            MlStarFace::NoSlice => None,
        }
    }
}

/// `X = X' × A^k` with `X'` given by its monoid.
#[derive(Clone, Debug)]
pub struct AffineSplit {
    pub k: usize,
    /// Primitive vectors of the affine rays.
    pub affine_vectors: Vec<LatticePoint>,
    /// The core parts `g - Σ c_i r_i` of the generators (nonzero, deduplicated).
    pub core_generators: Vec<LatticePoint>,
    /// The monoid of `X'` in its own coordinates; `None` when `X'` is a point.
    pub core: Option<AffineMonoid>,
}

/// Summary of the core `X'` analysed on its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreCheck {
    pub rank: usize,
    /// `X'` admits no nonzero homogeneous locally nilpotent derivation.
    pub rigid: Option<bool>,
    /// `X'` has no affine ray of its own.
    pub no_affine_rays: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportStatus {
    Complete,
    Partial,
}

/// Everything the analysis decides about one monoid.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub monoid: AffineMonoid,
    pub bounds: Bounds,
    pub exact_only: bool,
    pub facets: Vec<FacetClassification>,
    /// Almost saturated facets; `None` if some status is undecided.
    pub almost_saturated: Option<BTreeSet<usize>>,
    pub ml_face: Option<Face<LatticePoint>>,
    /// Indices (rays of `σ∨`) of the affine rays.
    pub affine_rays: Option<BTreeSet<usize>>,
    pub ml_star_face: Option<MlStarFace>,
    pub split: Option<AffineSplit>,
    pub core_check: Option<CoreCheck>,
    /// `ML*_h` and `ML_h` give the same face (with the marker read as `σ∨`).
    pub is_rigid_core: Option<bool>,
    /// No facet is almost saturated.
    pub is_rigid: Option<bool>,
    pub is_affine_space: Option<bool>,
    /// `ML = ML*`; known when a slice exists or `X` is rigid.
    pub ml_equals_ml_star: Option<bool>,
    /// `ML_h` face lies in the `ML*_h` face.
    pub ml_in_ml_star: Option<bool>,
    pub certification: Certification,
    pub status: ReportStatus,
    pub notes: Vec<String>,
}

impl InvariantReport {
    pub fn split_k(&self) -> Option<usize> {
        self.affine_rays.as_ref().map(BTreeSet::len)
    }

    pub fn is_complete(&self) -> bool {
        self.status == ReportStatus::Complete
    }
}

fn fmt_points(ps: &[LatticePoint]) -> String {
    const SHOWN: usize = 6;
    let mut s = ps.iter().take(SHOWN).map(ToString::to_string).collect::<Vec<_>>().join(", ");
    if ps.len() > SHOWN {
        s.push_str(&format!(" and {} more", ps.len() - SHOWN));
    }
    s
}

/// A decision that counts only if its certification is acceptable.
fn gated(d: Decision, cert: &Certification, exact_only: bool) -> Decision {
    if exact_only && !cert.is_exact() {
        Decision::Inconclusive
    } else {
        d
    }
}

/// Runs the full analysis; `exact_only` discards every verdict that is not exact.
pub fn analyze(monoid: &AffineMonoid, bounds: &Bounds, exact_only: bool) -> Result<InvariantReport> {
    analyze_at_depth(monoid, bounds, exact_only, true)
}

fn analyze_at_depth(monoid: &AffineMonoid, bounds: &Bounds, exact_only: bool, check_core: bool) -> Result<InvariantReport> {
    let cone = monoid.dual_cone().clone();
    let indices: Vec<usize> = (0..monoid.facet_count()).collect();
    let facets = crate::par::map(&indices, |&k| classify_facet(monoid, k, bounds))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut notes = Vec::new();
    let mut certification = Certification::Exact;

    // almost saturated facets
    let mut almost = Some(BTreeSet::new());
    for c in &facets {
        let d = match &c.saturation.status {
            crate::monoid::FacetStatus::Inconclusive => Decision::Inconclusive,
            s => Decision::from_bool(s.is_almost_saturated()),
        };
        match gated(d, &c.saturation.certification, exact_only) {
            Decision::Yes => {
                if let Some(s) = almost.as_mut() {
                    s.insert(c.facet);
                }
            }
            Decision::No => {}
            Decision::Inconclusive => {
                notes.push(format!("facet {}: saturation status undecided within the bounds", c.facet));
                almost = None;
            }
        }
        certification = certification.weaker(c.saturation.certification.clone());
    }
    let ml_face = match &almost {
        Some(s) => {
            let fs: Vec<_> = s.iter().map(|&k| cone.facet(k)).collect();
            Some(intersect_faces(&cone, &fs)?)
        }
        None => None,
    };

    // affine rays
    let mut affine_rays = Some(BTreeSet::new());
    for c in &facets {
        let cert_ok = |cert: &Certification| !(exact_only && !cert.is_exact());
        match c.affine {
            Decision::No => {}
            Decision::Inconclusive => affine_rays = None,
            Decision::Yes if !cert_ok(&c.saturation.certification) => affine_rays = None,
            Decision::Yes => {
                if c.strictly_saturated != Decision::Yes {
                    notes.push(format!(
                        "facet {}: counted as affine because it is almost saturated, although holes lie on it ({})",
                        c.facet,
                        fmt_points(c.saturation.status.holes_on_facet())
                    ));
                }
                let check = c.affine_ray.as_ref().expect("affine facets carry a ray check");
                certification = certification.weaker(check.certification.clone());
                if !cert_ok(&check.certification) {
                    affine_rays = None;
                    continue;
                }
                match &check.failure {
                    None => {
                        if let Some(s) = affine_rays.as_mut() {
                            s.insert(check.ray);
                        }
                    }
                    Some(f) => notes.push(format!(
                        "facet {}: ray {} = {} is not affine: {}",
                        c.facet,
                        check.ray,
                        check.vector,
                        describe_failure(f, &check.vector)
                    )),
                }
            }
        }
    }
    if let Some(rays) = &affine_rays {
        if rays.len() > monoid.rank() {
            return Err(Error::Internal(format!("{} affine rays in rank {}", rays.len(), monoid.rank())));
        }
    }

    let ml_star_face = affine_rays.as_ref().map(|rays| {
        if rays.is_empty() {
            MlStarFace::NoSlice
        } else {
            let others: BTreeSet<usize> = (0..cone.rays().len()).filter(|i| !rays.contains(i)).collect();
            MlStarFace::Face(cone.face_spanned_by(&others))
        }
    });

    let split = match &affine_rays {
        Some(rays) => Some(split_affine_factor(monoid, &facets, rays)?),
        None => None,
    };

    let core_check = match (&split, check_core) {
        (Some(AffineSplit { core: Some(core), .. }), true) => {
            let b = crate::monoid::BoundsOverride::default().resolve(core);
            let r = analyze_at_depth(core, &b, exact_only, false)?;
            certification = certification.weaker(r.certification.clone());
            Some(CoreCheck {
                rank: core.rank(),
                rigid: r.is_rigid,
                no_affine_rays: r.affine_rays.as_ref().map(BTreeSet::is_empty),
            })
        }
        _ => None,
    };

    let is_rigid = almost.as_ref().map(BTreeSet::is_empty);
    let is_rigid_core = match (&ml_face, &ml_star_face) {
        (Some(ml), Some(MlStarFace::Face(f))) => Some(f == ml),
        (Some(ml), Some(MlStarFace::NoSlice)) => Some(ml.is_improper()),
        _ => None,
    };
    let is_affine_space = ml_star_face.as_ref().map(|m| m.face().is_some_and(Face::is_apex));
    let has_slice = affine_rays.as_ref().map(|r| !r.is_empty());
    let ml_equals_ml_star = match (has_slice, is_rigid) {
        (Some(true), _) | (_, Some(true)) => Some(true),
        _ => None,
    };
    let ml_in_ml_star = match (&ml_face, &ml_star_face) {
        (Some(ml), Some(MlStarFace::Face(f))) => Some(ml.is_subface_of(f)),
        (Some(_), Some(MlStarFace::NoSlice)) => Some(true),
        _ => None,
    };
    if let (Some(cc), Some(rc)) = (&core_check, is_rigid_core) {
        if cc.rigid.is_some_and(|r| r != rc) {
            notes.push("the core analysed on its own disagrees with the rigidity verdict".into());
        }
    }

    let complete = ml_face.is_some() && ml_star_face.is_some();
    let status = if complete { ReportStatus::Complete } else { ReportStatus::Partial };
    Ok(InvariantReport {
        monoid: monoid.clone(),
        bounds: bounds.clone(),
        exact_only,
        facets,
        almost_saturated: almost,
        ml_face,
        affine_rays,
        ml_star_face,
        split,
        core_check,
        is_rigid_core,
        is_rigid,
        is_affine_space,
        ml_equals_ml_star,
        ml_in_ml_star,
        certification,
        status,
        notes,
    })
}

fn describe_failure(f: &crate::demazure::AffineRayFailure, r: &LatticePoint) -> String {
    use crate::demazure::AffineRayFailure::*;
    match f {
        NotInMonoid => "its primitive vector is not in the monoid".into(),
        PairingNotOne { pairing } => format!("it pairs to {pairing} with the facet normal"),
        SeriesBreaks { hole, member } => format!("hole {hole} + {r} = {member} lies in the monoid"),
    }
}

/// Splits off one polynomial factor per affine ray and checks the
/// decomposition on every generator.
pub fn split_affine_factor(
    monoid: &AffineMonoid,
    facets: &[FacetClassification],
    affine_rays: &BTreeSet<usize>,
) -> Result<AffineSplit> {
    let cone = monoid.dual_cone();
    // the facet whose distinguished ray is r_i supplies the coefficient ⟨g, n_F⟩
    let mut pairs = Vec::new();
    for &i in affine_rays {
        let c = facets
            .iter()
            .find(|c| c.affine_ray.as_ref().is_some_and(|a| a.ray == i && a.is_affine()))
            .ok_or_else(|| Error::Internal(format!("no facet for affine ray {i}")))?;
        pairs.push((cone.rays()[i].clone(), c.normal.clone()));
    }
    let star: BTreeSet<usize> = (0..cone.rays().len()).filter(|i| !affine_rays.contains(i)).collect();
    let star_face = cone.face_spanned_by(&star);
    let mut core_generators: Vec<LatticePoint> = Vec::new();
    for g in monoid.generators() {
        let mut rest = g.clone();
        for (r, n) in &pairs {
            let c = pair(g, n);
            if c < BigInt::zero() {
                return Err(Error::Internal(format!("generator {g} pairs negatively with an affine facet")));
            }
            rest = &rest - &r.scaled(&c);
        }
        if !monoid.contains(&rest) || !star_face.contains(&rest) {
            return Err(Error::Internal(format!("generator {g} does not split along the affine rays")));
        }
        if !rest.is_zero() && !core_generators.contains(&rest) {
            core_generators.push(rest);
        }
    }
    core_generators.sort();
    let core = if core_generators.is_empty() {
        None
    } else {
        Some(AffineMonoid::new(&core_generators)?)
    };
    Ok(AffineSplit {
        k: pairs.len(),
        affine_vectors: pairs.into_iter().map(|(r, _)| r).collect(),
        core_generators,
        core,
    })
}

/// Convenience: whether `m` is in the monoid rebuilt from the split, i.e.
/// `m - Σ c_i r_i` lies in the core monoid with `c_i = ⟨m, n_{F_i}⟩ >= 0`.
pub fn split_membership(report: &InvariantReport, m: &LatticePoint) -> Option<bool> {
    let split = report.split.as_ref()?;
    let rays = report.affine_rays.as_ref()?;
    let cone = report.monoid.dual_cone();
    let mut rest = m.clone();
    for &i in rays {
        let c = report
            .facets
            .iter()
            .find(|c| c.affine_ray.as_ref().is_some_and(|a| a.ray == i))?;
        let k = pair(m, &c.normal);
        if k < BigInt::zero() {
            return Some(false);
        }
        rest = &rest - &cone.rays()[i].scaled(&k);
    }
    Some(match &split.core {
        None => rest.is_zero(),
        Some(core) => {
            if rest.is_zero() {
                true
            } else {
                let others: BTreeSet<usize> = (0..cone.rays().len()).filter(|i| !rays.contains(i)).collect();
                cone.face_spanned_by(&others).contains(&rest)
                    && core.transform().apply(&rest).is_some_and(|y| core.contains(&y))
            }
        }
    })
}

/// Mode of the monoid, re-exported for report rendering.
pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Saturated => "saturated",
        Mode::NumericalSemigroup => "numerical-semigroup",
        Mode::Planar => "planar",
        Mode::Bounded => "bounded",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::BoundsOverride;

    fn run(gens: &[&[i64]]) -> InvariantReport {
        let m = AffineMonoid::from_i64s(gens).unwrap();
        let b = BoundsOverride::default().resolve(&m);
        analyze(&m, &b, false).unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn example1() {
        let r = run(&[&[1, 0], &[1, 1], &[1, 2]]);
        assert!(r.facets.iter().all(|c| c.affine == Decision::Yes));
        assert!(r.ml_face.as_ref().unwrap().is_apex());
        assert_eq!(r.ml_star_face, Some(MlStarFace::NoSlice));
        assert_eq!(r.split_k(), Some(0));
        assert_eq!(r.is_rigid, Some(false));
        assert_eq!(r.is_rigid_core, Some(false));
        assert!(r.certification.is_exact());
        assert!(r.is_complete());
    }

    #[test]
    fn example2() {
        let r = run(&[&[1, 0], &[0, 2], &[0, 3]]);
        let f2 = r.monoid.dual_cone().facet(1);
        assert_eq!(r.ml_face.as_ref(), Some(&f2));
        assert_eq!(r.ml_star_face, Some(MlStarFace::Face(f2)));
        assert_eq!(r.split_k(), Some(1));
        let split = r.split.as_ref().unwrap();
        assert_eq!(split.core.as_ref().unwrap().generators().len(), 2);
        assert_eq!(r.is_rigid_core, Some(true));
        assert_eq!(r.ml_equals_ml_star, Some(true));
        assert_eq!(r.core_check.as_ref().unwrap().rigid, Some(true));
        assert!(r.certification.is_exact());
        for x in 0..5 {
            for y in 0..5 {
                let m = LatticePoint::from_i64s(&[x, y]);
                assert_eq!(split_membership(&r, &m), Some(r.monoid.contains(&m)));
            }
        }
    }

    #[test]
    fn example5_notes_discrepancy() {
        let r = run(&[&[1, 0], &[1, 2], &[0, 3], &[0, 4], &[0, 5]]);
        assert_eq!(r.almost_saturated, Some(set(&[1])));
        assert_eq!(r.ml_star_face, Some(MlStarFace::NoSlice));
        assert!(r.notes.iter().any(|n| n.contains("(0,2)") && n.contains("almost saturated")));
        assert!(r.notes.iter().any(|n| n.contains("(1,2)")));
    }

    #[test]
    fn affine_spaces() {
        for gens in [vec![vec![1]], vec![vec![1, 0], vec![0, 1]]] {
            let g: Vec<&[i64]> = gens.iter().map(Vec::as_slice).collect();
            let r = run(&g);
            assert_eq!(r.is_affine_space, Some(true));
            assert_eq!(r.split_k(), Some(gens.len()));
            assert!(r.ml_face.unwrap().is_apex());
            assert!(r.split.unwrap().core.is_none());
        }
    }

    #[test]
    fn product_is_not_rigid_core() {
        let r = run(&[&[1, 0, 0], &[1, 1, 0], &[1, 2, 0], &[0, 0, 1]]);
        assert_eq!(r.split_k(), Some(1));
        assert!(r.ml_face.as_ref().unwrap().is_apex());
        let star = r.ml_star_face.as_ref().unwrap().face().unwrap().clone();
        assert_eq!(star.dim(), 2);
        assert!(star.contains(&LatticePoint::from_i64s(&[1, 1, 0])));
        assert_eq!(r.is_rigid_core, Some(false));
        assert_eq!(r.core_check.as_ref().unwrap().rigid, Some(false));
    }

    #[test]
    fn cusp_is_rigid() {
        let r = run(&[&[2], &[3]]);
        assert_eq!(r.is_rigid, Some(true));
        assert_eq!(r.ml_star_face, Some(MlStarFace::NoSlice));
        assert_eq!(r.is_rigid_core, Some(true));
        assert_eq!(r.ml_equals_ml_star, Some(true));
    }
}
