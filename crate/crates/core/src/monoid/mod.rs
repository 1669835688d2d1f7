//! Affine monoids `P ⊂ Z^n`: membership, saturation, holes, saturation points
//! and the saturation status of facets.
//!
//! Decisions are exact whenever the structure allows it: in rank one (gaps of a
//! numerical semigroup), in rank two (a finite module description, see
//! [`planar`]) and for saturated monoids of any rank (certified by a finite
//! degree check). Otherwise answers are certified up to a degree bound and
//! infinite hole families are detected through a finite window.

mod numerical;
mod planar;
mod table;

use std::collections::BTreeSet;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cone::{cone_in, dual_cone, RationalCone};
use crate::error::{Error, Result};
use crate::lattice::{
    pair, smith_reindex, DualVector, LatticePoint, LatticeTransform, LatticeVector,
    NonnegativeSolver,
};

use numerical::Numerical;
use planar::Planar;
use table::MemberTable;

/// How strongly a verdict is established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Exact,
    /// Verified for every point of degree at most the bound.
    Bounded { degree_bound: BigInt },
    /// Additionally relies on an infinite family observed through a finite window.
    HeuristicWindow { degree_bound: BigInt, window: usize },
}

impl Certification {
    pub fn is_exact(&self) -> bool {
        matches!(self, Certification::Exact)
    }

    fn rank(&self) -> u8 {
        match self {
            Certification::Exact => 0,
            Certification::Bounded { .. } => 1,
            Certification::HeuristicWindow { .. } => 2,
        }
    }

    /// The weaker of two certifications.
    pub fn weaker(self, other: Certification) -> Certification {
        if other.rank() > self.rank() {
            other
        } else {
            self
        }
    }
}

/// Which decision procedure the monoid admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Saturated, certified by a finite degree check.
    Saturated,
    /// Rank one.
    NumericalSemigroup,
    /// Rank two.
    Planar,
    /// Rank at least three and not saturated: degree-bounded answers.
    Bounded,
}

/// Bounds steering every bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Degree bound `B` for hole enumeration and bounded checks.
    pub degree_bound: BigInt,
    /// Window `K` for hole families.
    pub family_window: usize,
    /// Height `H` for Demazure root enumeration.
    pub root_height: BigInt,
    /// Iteration cap for nilpotency checks (`None`: derived per input).
    pub max_iter: Option<usize>,
}

/// Optional overrides of the default bounds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundsOverride {
    pub degree_bound: Option<BigInt>,
    pub family_window: Option<usize>,
    pub root_height: Option<BigInt>,
    pub max_iter: Option<usize>,
}

impl BoundsOverride {
    /// Fills unset fields with the defaults for `monoid`.
    pub fn resolve(&self, monoid: &AffineMonoid) -> Bounds {
        let d = monoid.max_generator_degree();
        Bounds {
            degree_bound: self.degree_bound.clone().unwrap_or_else(|| &d * 12),
            family_window: self.family_window.unwrap_or(8),
            root_height: self.root_height.clone().unwrap_or_else(|| &d * 2),
            max_iter: self.max_iter,
        }
    }
}

/// An infinite progression `base + k * step * direction` (`k >= 0`) of holes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleFamily {
    pub base: LatticePoint,
    /// Primitive, on a facet of the cone.
    pub direction: LatticePoint,
    pub step: BigInt,
    pub certification: Certification,
}

impl HoleFamily {
    pub fn member(&self, k: &BigInt) -> LatticePoint {
        &self.base + &self.direction.scaled(&(&self.step * k))
    }
}

/// Holes up to a degree bound together with the detected infinite families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleInventory {
    pub degree_bound: BigInt,
    /// Every hole of degree at most the bound, sorted by degree then lexicographically.
    pub holes: Vec<LatticePoint>,
    pub families: Vec<HoleFamily>,
    /// In exact modes: all holes that belong to no family (a finite set).
    pub isolated: Option<Vec<LatticePoint>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturationStatus {
    Yes,
    No { hole: LatticePoint },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationVerdict {
    pub point: LatticePoint,
    pub status: SaturationStatus,
    pub certification: Certification,
}

impl SaturationVerdict {
    pub fn is_yes(&self) -> bool {
        self.status == SaturationStatus::Yes
    }
}

/// Saturation status of a facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FacetStatus {
    /// Contains a saturation point and no hole lies on the facet.
    Saturated { witness: LatticePoint },
    /// Contains a saturation point; the listed holes lie on the facet.
    AlmostSaturated {
        witness: LatticePoint,
        holes_on_facet: Vec<LatticePoint>,
    },
    /// No point of the facet is a saturation point.
    NowhereSaturated {
        hole: LatticePoint,
        family: Option<HoleFamily>,
    },
    Inconclusive,
}

impl FacetStatus {
    /// Saturated or almost saturated.
    pub fn is_almost_saturated(&self) -> bool {
        matches!(
            self,
            FacetStatus::Saturated { .. } | FacetStatus::AlmostSaturated { .. }
        )
    }

    pub fn saturation_witness(&self) -> Option<&LatticePoint> {
        match self {
            FacetStatus::Saturated { witness } | FacetStatus::AlmostSaturated { witness, .. } => {
                Some(witness)
            }
            _ => None,
        }
    }

    pub fn holes_on_facet(&self) -> &[LatticePoint] {
        match self {
            FacetStatus::AlmostSaturated { holes_on_facet, .. } => holes_on_facet,
            _ => &[],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetVerdict {
    pub facet: usize,
    pub status: FacetStatus,
    pub certification: Certification,
}

/// Outcome of the descent test `(P + e) ∩ P_sat ⊂ P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescentStatus {
    Yes,
    /// `member + e` is a hole.
    No { member: LatticePoint, hole: LatticePoint },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentVerdict {
    pub status: DescentStatus,
    pub certification: Certification,
}

impl DescentVerdict {
    pub fn is_yes(&self) -> bool {
        self.status == DescentStatus::Yes
    }
}

/// Outcome of "`h + k r` is a hole for every `k >= 1`".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    Holds(Certification),
    /// `h + k r` is in the monoid.
    Breaks { member: LatticePoint },
}

#[derive(Debug)]
enum Structure {
    Saturated,
    Numerical(Numerical),
    Planar(Planar),
    Bounded,
}

struct MonoidData {
    input: Vec<LatticePoint>,
    transform: LatticeTransform,
    generators: Vec<LatticePoint>,
    dual: RationalCone<LatticePoint>,
    sigma: RationalCone<DualVector>,
    grading: DualVector,
    degrees: Vec<BigInt>,
    structure: Structure,
    solver: Mutex<NonnegativeSolver>,
    table: Mutex<Option<Arc<MemberTable>>>,
}

/// A finitely generated submonoid of a lattice, normalised so that its
/// generators generate `Z^r` as a group.
///
/// All points passed to or returned from methods are in these normalised
/// coordinates; [`AffineMonoid::transform`] converts from and to the input
/// coordinates. Cloning is cheap.
#[derive(Clone)]
pub struct AffineMonoid {
    data: Arc<MonoidData>,
}

impl std::fmt::Debug for AffineMonoid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AffineMonoid")
            .field("generators", &self.data.generators)
            .field("mode", &self.mode())
            .finish()
    }
}

impl AffineMonoid {
    /// Builds the monoid generated by `generators` (zero vectors and repeats are
    /// ignored). Fails on an empty list, mixed ranks, or nonzero units.
    pub fn new(generators: &[LatticePoint]) -> Result<Self> {
        let n = generators.first().ok_or(Error::EmptyGenerators)?.rank();
        if let Some(bad) = generators.iter().find(|g| g.rank() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.rank(),
            });
        }
        let mut input: Vec<LatticePoint> = Vec::new();
        for g in generators {
            if !g.is_zero() && !input.contains(g) {
                input.push(g.clone());
            }
        }
        if input.is_empty() {
            return Err(Error::Unsupported("the monoid is trivial (all generators are zero)".into()));
        }
        let (transform, r) = smith_reindex(&input)?;
        let gens: Vec<LatticePoint> = input
            .iter()
            .map(|g| transform.apply(g).expect("generator lies in its own group"))
            .collect();
        let dual = cone_in(r, &gens);
        if let Some(line) = dual.lineality().first() {
            return Err(Error::HasUnits {
                line: transform.unapply(line).to_string(),
            });
        }
        let sigma = dual_cone(&dual);
        if sigma.rays() != dual.normals() {
            return Err(Error::Internal("dual rays differ from facet normals".into()));
        }
        let mut w = vec![BigInt::zero(); r];
        for nrm in dual.normals() {
            for (a, b) in w.iter_mut().zip(nrm.coords()) {
                *a += b;
            }
        }
        let grading = DualVector::new(w);
        let degrees: Vec<BigInt> = gens.iter().map(|g| pair(g, &grading)).collect();
        let solver = NonnegativeSolver::new(&gens, &grading)?.with_cone_normals(dual.normals());

        let mut data = MonoidData {
            input,
            transform,
            generators: gens,
            dual,
            sigma,
            grading,
            degrees,
            structure: Structure::Bounded,
            solver: Mutex::new(solver),
            table: Mutex::new(None),
        };
        data.structure = match r {
            1 => {
                let values: Vec<BigInt> = data.generators.iter().map(|g| g.coords()[0].clone()).collect();
                let num = Numerical::new(&values)?;
                if num.is_saturated() {
                    Structure::Saturated
                } else {
                    Structure::Numerical(num)
                }
            }
            2 => {
                let rays = [data.dual.rays()[0].clone(), data.dual.rays()[1].clone()];
                Structure::Planar(Planar::new(&data.generators, rays)?)
            }
            _ => Structure::Bounded,
        };
        let mut monoid = AffineMonoid { data: Arc::new(data) };
        if matches!(monoid.data.structure, Structure::Bounded) && monoid.saturation_certified() {
            Arc::get_mut(&mut monoid.data).unwrap().structure = Structure::Saturated;
        }
        Ok(monoid)
    }

    /// Convenience constructor from small integer coordinates.
    pub fn from_i64s(generators: &[&[i64]]) -> Result<Self> {
        let g: Vec<LatticePoint> = generators.iter().map(|c| LatticePoint::from_i64s(c)).collect();
        Self::new(&g)
    }

    /// Any point of the cone is a sum of a point of the fundamental
    /// parallelepiped of some simplicial subcone and integer multiples of ray
    /// generators; all of those have degree at most the sum of ray degrees.
    fn saturation_certified(&self) -> bool {
        let bound: BigInt = self.data.dual.rays().iter().map(|r| self.degree(r)).sum();
        self.holes_up_to(&bound).is_empty()
    }

    pub fn mode(&self) -> Mode {
        match self.data.structure {
            Structure::Saturated => Mode::Saturated,
            Structure::Numerical(_) => Mode::NumericalSemigroup,
            Structure::Planar(_) => Mode::Planar,
            Structure::Bounded => Mode::Bounded,
        }
    }

    /// True when every decision about this monoid is exact.
    pub fn is_exact(&self) -> bool {
        self.mode() != Mode::Bounded
    }

    /// Whether `P = P_sat` (always decided exactly).
    pub fn is_saturated(&self) -> bool {
        match &self.data.structure {
            Structure::Saturated => true,
            Structure::Planar(p) => p.progressions().is_empty() && p.isolated_holes().is_empty(),
            Structure::Numerical(_) | Structure::Bounded => false,
        }
    }

    /// Rank `r` after normalisation.
    pub fn rank(&self) -> usize {
        self.data.grading.rank()
    }

    pub fn ambient_rank(&self) -> usize {
        self.data.transform.ambient_rank()
    }

    pub fn transform(&self) -> &LatticeTransform {
        &self.data.transform
    }

    /// Generators as given (zero vectors and repeats removed), input coordinates.
    pub fn input_generators(&self) -> &[LatticePoint] {
        &self.data.input
    }

    /// Generators in normalised coordinates, in input order.
    pub fn generators(&self) -> &[LatticePoint] {
        &self.data.generators
    }

    /// The cone `σ∨` spanned by the monoid.
    pub fn dual_cone(&self) -> &RationalCone<LatticePoint> {
        &self.data.dual
    }

    /// The cone `σ` in the dual lattice; its ray `k` is the normal of facet `k` of `σ∨`.
    pub fn sigma(&self) -> &RationalCone<DualVector> {
        &self.data.sigma
    }

    /// The grading `w`, the sum of the primitive facet normals of `σ∨`.
    pub fn grading(&self) -> &DualVector {
        &self.data.grading
    }

    pub fn degree(&self, m: &LatticePoint) -> BigInt {
        pair(m, &self.data.grading)
    }

    pub fn generator_degrees(&self) -> &[BigInt] {
        &self.data.degrees
    }

    pub fn max_generator_degree(&self) -> BigInt {
        self.data.degrees.iter().max().cloned().unwrap_or_default()
    }

    pub fn facet_count(&self) -> usize {
        self.data.dual.normals().len()
    }

    /// Exact membership through non-negative integer feasibility.
    pub fn membership(&self, m: &LatticePoint) -> bool {
        if m.rank() != self.rank() {
            return false;
        }
        self.data.solver.lock().unwrap().is_feasible(m)
    }

    /// A non-negative integer combination of the generators equal to `m`.
    pub fn decompose(&self, m: &LatticePoint) -> Option<Vec<BigInt>> {
        if m.rank() != self.rank() {
            return None;
        }
        self.data.solver.lock().unwrap().solve(m)
    }

    /// `m ∈ P_sat`: `m` satisfies every facet inequality.
    pub fn in_saturation(&self, m: &LatticePoint) -> bool {
        self.data.dual.contains(m)
    }

    pub fn is_hole(&self, m: &LatticePoint) -> bool {
        self.in_saturation(m) && !self.contains(m)
    }

    /// Membership through the cheapest exact route available.
    pub fn contains(&self, m: &LatticePoint) -> bool {
        if !self.in_saturation(m) {
            return false;
        }
        match &self.data.structure {
            Structure::Saturated => true,
            Structure::Numerical(n) => n.contains(m),
            Structure::Planar(p) => p.contains(m),
            Structure::Bounded => {
                let deg = self.degree(m);
                if let Some(t) = self.data.table.lock().unwrap().as_ref() {
                    if deg <= *t.bound() {
                        return t.is_member(m);
                    }
                }
                self.membership(m)
            }
        }
    }

    fn table(&self, bound: &BigInt) -> Arc<MemberTable> {
        let mut guard = self.data.table.lock().unwrap();
        if let Some(t) = guard.as_ref() {
            if t.bound() >= bound {
                return Arc::clone(t);
            }
        }
        let t = Arc::new(MemberTable::build(self, bound));
        *guard = Some(Arc::clone(&t));
        t
    }

    /// Lattice points of `σ∨` with degree at most `bound`, sorted by degree then
    /// lexicographically.
    pub fn points_up_to(&self, bound: &BigInt) -> Vec<LatticePoint> {
        table::cone_points_up_to(self, bound)
    }

    /// Members of `P` with degree at most `bound`, sorted by degree then lexicographically.
    pub fn members_up_to(&self, bound: &BigInt) -> Vec<LatticePoint> {
        let t = self.table(bound);
        t.points()
            .iter()
            .filter(|(d, p)| d <= bound && t.is_member(p))
            .map(|(_, p)| p.clone())
            .collect()
    }

    /// Every hole of degree at most `bound`, sorted by degree then lexicographically.
    pub fn holes_up_to(&self, bound: &BigInt) -> Vec<LatticePoint> {
        if matches!(self.data.structure, Structure::Saturated) {
            return Vec::new();
        }
        let t = self.table(bound);
        t.points()
            .iter()
            .filter(|(d, p)| d <= bound && !t.is_member(p))
            .map(|(_, p)| p.clone())
            .collect()
    }

    /// Directions used for family detection: primitive ray generators and the
    /// primitive sum of each facet's rays.
    fn family_directions(&self) -> Vec<LatticePoint> {
        let mut dirs: BTreeSet<LatticePoint> = self.data.dual.rays().iter().cloned().collect();
        for k in 0..self.facet_count() {
            dirs.insert(self.facet_interior_direction(k));
        }
        dirs.into_iter().collect()
    }

    /// The primitive sum of the rays of facet `k`, a point of its relative interior.
    pub fn facet_interior_direction(&self, k: usize) -> LatticePoint {
        let rays = self.data.dual.rays();
        let mut sum = LatticePoint::zero(self.rank());
        for i in self.data.dual.rays_on_facet(k) {
            sum = &sum + &rays[i];
        }
        if sum.is_zero() {
            sum
        } else {
            sum.primitive().expect("nonzero")
        }
    }

    /// Infinite hole families. Exact in ranks one and two; otherwise every hole
    /// `h` of degree at most `bound` and every candidate direction `d` with
    /// `h - d` not a hole is reported when `h + k d` is a hole for `1 <= k <= window`.
    pub fn hole_families(&self, bound: &BigInt, window: usize) -> Vec<HoleFamily> {
        match &self.data.structure {
            Structure::Saturated | Structure::Numerical(_) => Vec::new(),
            Structure::Planar(p) => p
                .progressions()
                .into_iter()
                .map(|pr| HoleFamily {
                    base: pr.base,
                    direction: p.rays()[pr.ray].clone(),
                    step: pr.step,
                    certification: Certification::Exact,
                })
                .collect(),
            Structure::Bounded => {
                let holes = self.holes_up_to(bound);
                let dirs = self.family_directions();
                let cert = Certification::HeuristicWindow {
                    degree_bound: bound.clone(),
                    window,
                };
                let candidates: Vec<(LatticePoint, LatticePoint)> = holes
                    .iter()
                    .flat_map(|h| dirs.iter().map(move |d| (h.clone(), d.clone())))
                    .filter(|(h, d)| !self.is_hole(&(h - d)))
                    .collect();
                let keep = crate::par::map(&candidates, |(h, d)| {
                    let mut q = h.clone();
                    for _ in 0..window {
                        q = &q + d;
                        if !self.is_hole(&q) {
                            return false;
                        }
                    }
                    true
                });
                candidates
                    .into_iter()
                    .zip(keep)
                    .filter(|(_, k)| *k)
                    .map(|((base, direction), _)| HoleFamily {
                        base,
                        direction,
                        step: BigInt::from(1),
                        certification: cert.clone(),
                    })
                    .collect()
            }
        }
    }

    pub fn hole_inventory(&self, bound: &BigInt, window: usize) -> HoleInventory {
        let isolated = match &self.data.structure {
            Structure::Saturated => Some(Vec::new()),
            Structure::Numerical(n) => Some(n.gaps().collect()),
            Structure::Planar(p) => Some(p.isolated_holes()),
            Structure::Bounded => None,
        };
        HoleInventory {
            degree_bound: bound.clone(),
            holes: self.holes_up_to(bound),
            families: self.hole_families(bound, window),
            isolated,
        }
    }

    /// Whether `p + σ∨` contains no hole. Errors if `p` is not in the monoid.
    pub fn is_saturation_point(&self, p: &LatticePoint, bound: &BigInt) -> Result<SaturationVerdict> {
        if p.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: p.rank(),
            });
        }
        if !self.contains(p) {
            return Err(Error::Domain(format!("{p} is not in the monoid")));
        }
        let exact = |hole: Option<LatticePoint>| SaturationVerdict {
            point: p.clone(),
            status: hole.map_or(SaturationStatus::Yes, |hole| SaturationStatus::No { hole }),
            certification: Certification::Exact,
        };
        Ok(match &self.data.structure {
            Structure::Saturated => exact(None),
            Structure::Numerical(n) => exact(n.hole_above(p)),
            Structure::Planar(pl) => exact(pl.hole_in_translate(p)),
            Structure::Bounded => {
                let hole = self
                    .holes_up_to(bound)
                    .into_iter()
                    .find(|h| self.in_saturation(&(h - p)));
                match hole {
                    Some(hole) => SaturationVerdict {
                        point: p.clone(),
                        status: SaturationStatus::No { hole },
                        certification: Certification::Exact,
                    },
                    None => SaturationVerdict {
                        point: p.clone(),
                        status: SaturationStatus::Yes,
                        certification: Certification::Bounded {
                            degree_bound: bound.clone(),
                        },
                    },
                }
            }
        })
    }

    /// Lattice points on facet `k` with a zero pairing against its normal.
    fn on_facet(&self, k: usize, m: &LatticePoint) -> bool {
        pair(m, &self.data.dual.normals()[k]).is_zero()
    }

    /// Saturation status of facet `k` (indexed like the facet normals of `σ∨`).
    pub fn facet_saturation_status(&self, k: usize, bounds: &Bounds) -> FacetVerdict {
        assert!(k < self.facet_count(), "facet index out of range");
        let exact = |status| FacetVerdict {
            facet: k,
            status,
            certification: Certification::Exact,
        };
        match &self.data.structure {
            Structure::Saturated => exact(FacetStatus::Saturated {
                witness: LatticePoint::zero(self.rank()),
            }),
            Structure::Numerical(n) => exact(FacetStatus::NowhereSaturated {
                hole: n.gaps().next().expect("non-saturated"),
                family: None,
            }),
            Structure::Planar(p) => {
                let ray = *self
                    .data
                    .dual
                    .rays_on_facet(k)
                    .iter()
                    .next()
                    .expect("a planar facet is a ray");
                match p.saturation_point_on_ray(ray) {
                    Some(witness) => {
                        let r = &p.rays()[ray];
                        let mut holes = Vec::new();
                        let mut q = LatticePoint::zero(2);
                        while self.degree(&q) < self.degree(&witness) {
                            if !p.contains(&q) {
                                holes.push(q.clone());
                            }
                            q = &q + r;
                        }
                        exact(if holes.is_empty() {
                            FacetStatus::Saturated { witness }
                        } else {
                            FacetStatus::AlmostSaturated {
                                witness,
                                holes_on_facet: holes,
                            }
                        })
                    }
                    None => {
                        let dir = &p.rays()[ray];
                        let family = self
                            .hole_families(&bounds.degree_bound, bounds.family_window)
                            .into_iter()
                            .find(|f| f.direction == *dir)
                            .expect("a nowhere saturated planar facet carries a family");
                        exact(FacetStatus::NowhereSaturated {
                            hole: family.base.clone(),
                            family: Some(family),
                        })
                    }
                }
            }
            Structure::Bounded => self.bounded_facet_status(k, bounds),
        }
    }

    fn bounded_facet_status(&self, k: usize, bounds: &Bounds) -> FacetVerdict {
        let b = &bounds.degree_bound;
        let holes = self.holes_up_to(b);
        let half = b / 2;
        let candidates: Vec<LatticePoint> = self
            .members_up_to(&half)
            .into_iter()
            .filter(|p| self.on_facet(k, p))
            .collect();
        let witness = candidates
            .into_iter()
            .find(|p| !holes.iter().any(|h| self.in_saturation(&(h - p))));
        if let Some(witness) = witness {
            let on: Vec<LatticePoint> = holes.iter().filter(|h| self.on_facet(k, h)).cloned().collect();
            return FacetVerdict {
                facet: k,
                status: if on.is_empty() {
                    FacetStatus::Saturated { witness }
                } else {
                    FacetStatus::AlmostSaturated {
                        witness,
                        holes_on_facet: on,
                    }
                },
                certification: Certification::Bounded {
                    degree_bound: b.clone(),
                },
            };
        }
        // a family running in the relative interior of the facet meets every p + σ∨, p on F
        let dir = self.facet_interior_direction(k);
        let others_positive = (0..self.facet_count())
            .filter(|&j| j != k)
            .all(|j| pair(&dir, &self.data.dual.normals()[j]).is_positive());
        if others_positive {
            if let Some(family) = self
                .hole_families(b, bounds.family_window)
                .into_iter()
                .find(|f| f.direction == dir)
            {
                return FacetVerdict {
                    facet: k,
                    certification: family.certification.clone(),
                    status: FacetStatus::NowhereSaturated {
                        hole: family.base.clone(),
                        family: Some(family),
                    },
                };
            }
        }
        FacetVerdict {
            facet: k,
            status: FacetStatus::Inconclusive,
            certification: Certification::Bounded {
                degree_bound: b.clone(),
            },
        }
    }

    /// Whether `(P + e) ∩ P_sat ⊂ P`.
    pub fn descends(&self, e: &LatticePoint, bound: &BigInt) -> DescentVerdict {
        let found = match &self.data.structure {
            Structure::Saturated => None,
            Structure::Numerical(n) => n.descent_failure(e),
            Structure::Planar(p) => p.descent_failure(e),
            Structure::Bounded => {
                let members = self.members_up_to(bound);
                let bad = crate::par::map(&members, |p| self.is_hole(&(p + e)));
                let failure = members.into_iter().zip(bad).find(|(_, b)| *b).map(|(p, _)| p);
                return match failure {
                    Some(member) => DescentVerdict {
                        status: DescentStatus::No {
                            hole: &member + e,
                            member,
                        },
                        certification: Certification::Exact,
                    },
                    None => DescentVerdict {
                        status: DescentStatus::Yes,
                        certification: Certification::Bounded {
                            degree_bound: bound.clone(),
                        },
                    },
                };
            }
        };
        DescentVerdict {
            status: match found {
                Some(member) => DescentStatus::No {
                    hole: &member + e,
                    member,
                },
                None => DescentStatus::Yes,
            },
            certification: Certification::Exact,
        }
    }

    /// Whether `h + k r` is a hole for every `k >= 1`, where `r` is the primitive
    /// generator of ray `ray` of `σ∨` and `h` is a hole.
    pub fn propagates(&self, h: &LatticePoint, ray: usize, bounds: &Bounds) -> Propagation {
        let r = &self.data.dual.rays()[ray];
        if let Structure::Planar(p) = &self.data.structure {
            return match p.propagates(h, ray) {
                Ok(()) => Propagation::Holds(Certification::Exact),
                Err(member) => Propagation::Breaks { member },
            };
        }
        let mut q = h.clone();
        for _ in 0..bounds.family_window {
            q = &q + r;
            if self.contains(&q) {
                return Propagation::Breaks { member: q };
            }
        }
        Propagation::Holds(Certification::HeuristicWindow {
            degree_bound: bounds.degree_bound.clone(),
            window: bounds.family_window,
        })
    }

    /// Rational point `t·r / deg(r)` helper for region enumeration.
    pub(crate) fn ray_vertex(&self, r: &LatticePoint, bound: &BigInt) -> Vec<BigRational> {
        let d = self.degree(r);
        r.coords()
            .iter()
            .map(|c| BigRational::new(c * bound, d.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64s(c)
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn example2() -> AffineMonoid {
        AffineMonoid::from_i64s(&[&[1, 0], &[0, 2], &[0, 3]]).unwrap()
    }

    fn example5() -> AffineMonoid {
        AffineMonoid::from_i64s(&[&[1, 0], &[1, 2], &[0, 3], &[0, 4], &[0, 5]]).unwrap()
    }

    fn bounds(m: &AffineMonoid) -> Bounds {
        BoundsOverride::default().resolve(m)
    }

    #[test]
    fn membership_examples() {
        let m = example2();
        assert!(m.membership(&p(&[3, 2])));
        assert!(!m.membership(&p(&[2, 1])));
        assert!(m.membership(&p(&[0, 0])));
        assert!(m.in_saturation(&p(&[2, 1])));
        let e1 = AffineMonoid::from_i64s(&[&[1, 0], &[1, 1], &[1, 2]]).unwrap();
        assert!(!e1.in_saturation(&p(&[1, 3])));
        assert_eq!(e1.mode(), Mode::Planar);
        assert!(e1.is_saturated());
    }

    #[test]
    fn hole_lists() {
        assert_eq!(
            example2().holes_up_to(&b(4)),
            vec![p(&[0, 1]), p(&[1, 1]), p(&[2, 1]), p(&[3, 1])]
        );
        let mut h = example5().holes_up_to(&b(4));
        h.sort();
        assert_eq!(h, vec![p(&[0, 1]), p(&[0, 2]), p(&[1, 1]), p(&[2, 1]), p(&[3, 1])]);
    }

    #[test]
    fn families() {
        let f = example2().hole_families(&b(36), 8);
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].base.clone(), f[0].direction.clone()), (p(&[0, 1]), p(&[1, 0])));
        let f5 = example5().hole_families(&b(36), 8);
        assert_eq!(f5.len(), 1);
        assert_eq!(f5[0].base, p(&[0, 1]));
    }

    #[test]
    fn saturation_points() {
        let m = example2();
        assert!(m.is_saturation_point(&p(&[0, 2]), &b(36)).unwrap().is_yes());
        assert_eq!(
            m.is_saturation_point(&p(&[1, 0]), &b(36)).unwrap().status,
            SaturationStatus::No { hole: p(&[1, 1]) }
        );
        assert!(m.is_saturation_point(&p(&[0, 1]), &b(36)).is_err());
    }

    #[test]
    fn facet_statuses() {
        let m = example2();
        let bd = bounds(&m);
        // normals sorted: (0,1) is the horizontal facet, (1,0) the vertical one
        let horizontal = m.facet_saturation_status(0, &bd);
        assert!(matches!(horizontal.status, FacetStatus::NowhereSaturated { .. }));
        let vertical = m.facet_saturation_status(1, &bd);
        assert_eq!(vertical.status.saturation_witness(), Some(&p(&[0, 2])));
        assert_eq!(vertical.status.holes_on_facet(), &[p(&[0, 1])]);
    }

    #[test]
    fn units_rejected() {
        assert!(matches!(
            AffineMonoid::from_i64s(&[&[1], &[-1]]),
            Err(Error::HasUnits { .. })
        ));
    }

    #[test]
    fn rank_three_saturated_certificate() {
        let m = AffineMonoid::from_i64s(&[&[1, 0, 0], &[1, 1, 0], &[1, 2, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(m.mode(), Mode::Saturated);
        let m = AffineMonoid::from_i64s(&[&[1, 0, 0], &[0, 2, 0], &[0, 3, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(m.mode(), Mode::Bounded);
        let bd = BoundsOverride {
            degree_bound: Some(b(12)),
            ..Default::default()
        }
        .resolve(&m);
        let statuses: Vec<bool> = (0..3)
            .map(|k| m.facet_saturation_status(k, &bd).status.is_almost_saturated())
            .collect();
        // normals (0,0,1), (0,1,0), (1,0,0): only y = 0 is nowhere saturated
        assert_eq!(statuses, vec![true, false, true]);
    }

    #[test]
    fn descent() {
        let m = example2();
        assert!(m.descends(&p(&[-1, 0]), &b(36)).is_yes());
        assert_eq!(
            m.descends(&p(&[-1, 1]), &b(36)).status,
            DescentStatus::No {
                member: p(&[1, 0]),
                hole: p(&[0, 1])
            }
        );
    }
}
