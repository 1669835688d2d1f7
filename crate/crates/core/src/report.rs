//! Serializable reports and their text rendering.
//!
//! Every document is plain data with a fixed field order, so its JSON form is
//! byte-deterministic and parses back to an equal value. Points are given in
//! the normalised coordinates of the monoid; `monoid.transform` maps them back
//! to the input lattice when the generators do not generate it.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::demazure::{AffineRayCheck, AffineRayFailure, Decision, FacetClassification};
use crate::input::MonoidInputDocument;
use crate::invariants::{mode_name, CoreCheck, InvariantReport, MlStarFace, ReportStatus};
use crate::lattice::{DualVector, LatticePoint, LatticeVector};
use crate::monoid::{
    AffineMonoid, Bounds, Certification, DescentStatus, DescentVerdict, FacetStatus, HoleFamily, HoleInventory,
};

pub const TOOL_NAME: &str = "toric-ml";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CertificationDoc {
    Exact,
    Bounded {
        #[serde(with = "crate::wire::int")]
        degree_bound: BigInt,
    },
    HeuristicWindow {
        #[serde(with = "crate::wire::int")]
        degree_bound: BigInt,
        window: usize,
    },
}

impl From<&Certification> for CertificationDoc {
    fn from(c: &Certification) -> Self {
        match c {
            Certification::Exact => CertificationDoc::Exact,
            Certification::Bounded { degree_bound } => CertificationDoc::Bounded {
                degree_bound: degree_bound.clone(),
            },
            Certification::HeuristicWindow { degree_bound, window } => CertificationDoc::HeuristicWindow {
                degree_bound: degree_bound.clone(),
                window: *window,
            },
        }
    }
}

impl std::fmt::Display for CertificationDoc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertificationDoc::Exact => write!(f, "exact"),
            CertificationDoc::Bounded { degree_bound } => write!(f, "bounded(B={degree_bound})"),
            CertificationDoc::HeuristicWindow { degree_bound, window } => {
                write!(f, "heuristic(B={degree_bound},K={window})")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionDoc {
    Yes,
    No,
    Inconclusive,
}

impl From<Decision> for DecisionDoc {
    fn from(d: Decision) -> Self {
        match d {
            Decision::Yes => DecisionDoc::Yes,
            Decision::No => DecisionDoc::No,
            Decision::Inconclusive => DecisionDoc::Inconclusive,
        }
    }
}

impl DecisionDoc {
    fn as_str(self) -> &'static str {
        match self {
            DecisionDoc::Yes => "yes",
            DecisionDoc::No => "no",
            DecisionDoc::Inconclusive => "?",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToolDoc {
    pub name: String,
    pub version: String,
}

impl ToolDoc {
    pub fn current() -> Self {
        ToolDoc {
            name: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformDoc {
    pub identity: bool,
    /// Rows of the unimodular matrix `U`.
    pub matrix: Vec<LatticePoint>,
    #[serde(with = "crate::wire::int_vec")]
    pub divisors: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDoc {
    pub rank: usize,
    pub ambient_rank: usize,
    pub mode: String,
    pub saturated: bool,
    pub transform: TransformDoc,
    pub generators: Vec<LatticePoint>,
    pub grading: DualVector,
    /// Extremal rays of `σ∨`, primitive, in index order.
    pub cone_rays: Vec<LatticePoint>,
    /// Primitive facet normals of `σ∨` (the rays of `σ`), in facet order.
    pub facet_normals: Vec<DualVector>,
}

impl MonoidDoc {
    pub fn new(m: &AffineMonoid) -> Self {
        let t = m.transform();
        let mat = t.matrix();
        MonoidDoc {
            rank: m.rank(),
            ambient_rank: m.ambient_rank(),
            mode: mode_name(m.mode()).into(),
            saturated: m.is_saturated(),
            transform: TransformDoc {
                identity: t.is_identity(),
                matrix: (0..mat.rows()).map(|i| LatticePoint::new(mat.row(i).to_vec())).collect(),
                divisors: t.divisors().to_vec(),
            },
            generators: m.generators().to_vec(),
            grading: m.grading().clone(),
            cone_rays: m.dual_cone().rays().to_vec(),
            facet_normals: m.dual_cone().normals().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsDoc {
    #[serde(with = "crate::wire::int")]
    pub degree_bound: BigInt,
    pub family_window: usize,
    #[serde(with = "crate::wire::int")]
    pub root_height: BigInt,
    pub max_iter: Option<usize>,
}

impl From<&Bounds> for BoundsDoc {
    fn from(b: &Bounds) -> Self {
        BoundsDoc {
            degree_bound: b.degree_bound.clone(),
            family_window: b.family_window,
            root_height: b.root_height.clone(),
            max_iter: b.max_iter,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub base: LatticePoint,
    pub direction: LatticePoint,
    #[serde(with = "crate::wire::int")]
    pub step: BigInt,
    pub certification: CertificationDoc,
}

impl From<&HoleFamily> for FamilyDoc {
    fn from(f: &HoleFamily) -> Self {
        FamilyDoc {
            base: f.base.clone(),
            direction: f.direction.clone(),
            step: f.step.clone(),
            certification: (&f.certification).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FacetStatusDoc {
    Saturated {
        witness: LatticePoint,
    },
    AlmostSaturated {
        witness: LatticePoint,
        holes_on_facet: Vec<LatticePoint>,
    },
    NowhereSaturated {
        hole: LatticePoint,
        family: Option<FamilyDoc>,
    },
    Inconclusive,
}

impl From<&FacetStatus> for FacetStatusDoc {
    fn from(s: &FacetStatus) -> Self {
        match s {
            FacetStatus::Saturated { witness } => FacetStatusDoc::Saturated {
                witness: witness.clone(),
            },
            FacetStatus::AlmostSaturated {
                witness,
                holes_on_facet,
            } => FacetStatusDoc::AlmostSaturated {
                witness: witness.clone(),
                holes_on_facet: holes_on_facet.clone(),
            },
            FacetStatus::NowhereSaturated { hole, family } => FacetStatusDoc::NowhereSaturated {
                hole: hole.clone(),
                family: family.as_ref().map(FamilyDoc::from),
            },
            FacetStatus::Inconclusive => FacetStatusDoc::Inconclusive,
        }
    }
}

impl FacetStatusDoc {
    fn label(&self) -> &'static str {
        match self {
            FacetStatusDoc::Saturated { .. } => "saturated",
            FacetStatusDoc::AlmostSaturated { .. } => "almost saturated",
            FacetStatusDoc::NowhereSaturated { .. } => "nowhere saturated",
            FacetStatusDoc::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RayFailureDoc {
    NotInMonoid,
    PairingNotOne {
        #[serde(with = "crate::wire::int")]
        pairing: BigInt,
    },
    SeriesBreaks {
        hole: LatticePoint,
        member: LatticePoint,
    },
}

impl From<&AffineRayFailure> for RayFailureDoc {
    fn from(f: &AffineRayFailure) -> Self {
        match f {
            AffineRayFailure::NotInMonoid => RayFailureDoc::NotInMonoid,
            AffineRayFailure::PairingNotOne { pairing } => RayFailureDoc::PairingNotOne {
                pairing: pairing.clone(),
            },
            AffineRayFailure::SeriesBreaks { hole, member } => RayFailureDoc::SeriesBreaks {
                hole: hole.clone(),
                member: member.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineRayDoc {
    pub ray: usize,
    pub vector: LatticePoint,
    pub in_monoid: bool,
    #[serde(with = "crate::wire::int")]
    pub pairing: BigInt,
    pub affine: bool,
    pub failure: Option<RayFailureDoc>,
    pub certification: CertificationDoc,
}

impl From<&AffineRayCheck> for AffineRayDoc {
    fn from(c: &AffineRayCheck) -> Self {
        AffineRayDoc {
            ray: c.ray,
            vector: c.vector.clone(),
            in_monoid: c.in_monoid,
            pairing: c.pairing.clone(),
            affine: c.is_affine(),
            failure: c.failure.as_ref().map(RayFailureDoc::from),
            certification: (&c.certification).into(),
        }
    }
}

/// A homogeneous derivation `χ^m ↦ ⟨m, rho⟩ χ^{m+e}` with a slice `χ^slice`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceDoc {
    pub rho: DualVector,
    pub e: LatticePoint,
    pub slice: LatticePoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacetDoc {
    pub index: usize,
    pub normal: DualVector,
    pub rays: Vec<usize>,
    pub status: FacetStatusDoc,
    pub certification: CertificationDoc,
    pub strictly_saturated: DecisionDoc,
    pub distinguished_ray: Option<usize>,
    pub affine: DecisionDoc,
    pub affine_ray: Option<AffineRayDoc>,
    pub slice: Option<SliceDoc>,
    pub descending_root: Option<LatticePoint>,
}

impl From<&FacetClassification> for FacetDoc {
    fn from(c: &FacetClassification) -> Self {
        FacetDoc {
            index: c.facet,
            normal: c.normal.clone(),
            rays: c.rays.iter().copied().collect(),
            status: (&c.saturation.status).into(),
            certification: (&c.saturation.certification).into(),
            strictly_saturated: c.strictly_saturated.into(),
            distinguished_ray: c.distinguished_ray,
            affine: c.affine.into(),
            affine_ray: c.affine_ray.as_ref().map(AffineRayDoc::from),
            slice: c.slice.as_ref().map(|s| SliceDoc {
                rho: s.derivation.rho.clone(),
                e: s.derivation.e.clone(),
                slice: s.slice.clone(),
            }),
            descending_root: c.descending_root.as_ref().map(|r| r.e.clone()),
        }
    }
}

/// A face of `σ∨` by its ray indices and primitive ray vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceDoc {
    pub dim: usize,
    pub rays: Vec<usize>,
    pub vectors: Vec<LatticePoint>,
}

impl FaceDoc {
    pub fn new(f: &crate::cone::Face<LatticePoint>) -> Self {
        FaceDoc {
            dim: f.dim(),
            rays: f.ray_indices().iter().copied().collect(),
            vectors: f.rays(),
        }
    }
}

impl std::fmt::Display for FaceDoc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vs: Vec<String> = self.vectors.iter().map(ToString::to_string).collect();
        write!(f, "dim {} cone{{{}}}", self.dim, vs.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MlStarDoc {
    Face { face: FaceDoc },
    NoSlice,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitDoc {
    pub k: usize,
    pub affine_vectors: Vec<LatticePoint>,
    pub core_generators: Vec<LatticePoint>,
    pub core_rank: usize,
    /// Generators of the core monoid in its own coordinates.
    pub core_monoid: Vec<LatticePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoreCheckDoc {
    pub rank: usize,
    pub rigid: Option<bool>,
    pub no_affine_rays: Option<bool>,
}

impl From<&CoreCheck> for CoreCheckDoc {
    fn from(c: &CoreCheck) -> Self {
        CoreCheckDoc {
            rank: c.rank,
            rigid: c.rigid,
            no_affine_rays: c.no_affine_rays,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsDoc {
    pub is_rigid: Option<bool>,
    pub is_rigid_core: Option<bool>,
    pub is_affine_space: Option<bool>,
    pub ml_equals_ml_star: Option<bool>,
    pub ml_in_ml_star: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatusDoc {
    Complete,
    Partial,
}

/// The full analysis report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub tool: ToolDoc,
    pub input: MonoidInputDocument,
    pub monoid: MonoidDoc,
    pub bounds: BoundsDoc,
    pub exact_only: bool,
    pub facets: Vec<FacetDoc>,
    pub almost_saturated: Option<Vec<usize>>,
    pub ml_face: Option<FaceDoc>,
    pub affine_rays: Option<Vec<usize>>,
    pub ml_star_face: Option<MlStarDoc>,
    pub split: Option<SplitDoc>,
    pub core_check: Option<CoreCheckDoc>,
    pub flags: FlagsDoc,
    pub certification: CertificationDoc,
    pub status: StatusDoc,
    pub notes: Vec<String>,
}

impl ReportDocument {
    pub fn new(input: &MonoidInputDocument, r: &InvariantReport) -> Self {
        ReportDocument {
            tool: ToolDoc::current(),
            input: input.clone(),
            monoid: MonoidDoc::new(&r.monoid),
            bounds: (&r.bounds).into(),
            exact_only: r.exact_only,
            facets: r.facets.iter().map(FacetDoc::from).collect(),
            almost_saturated: r.almost_saturated.as_ref().map(|s| s.iter().copied().collect()),
            ml_face: r.ml_face.as_ref().map(FaceDoc::new),
            affine_rays: r.affine_rays.as_ref().map(|s| s.iter().copied().collect()),
            ml_star_face: r.ml_star_face.as_ref().map(|m| match m {
                MlStarFace::Face(f) => MlStarDoc::Face { face: FaceDoc::new(f) },
                MlStarFace::NoSlice => MlStarDoc::NoSlice,
            }),
            split: r.split.as_ref().map(|s| SplitDoc {
                k: s.k,
                affine_vectors: s.affine_vectors.clone(),
                core_generators: s.core_generators.clone(),
                core_rank: s.core.as_ref().map_or(0, AffineMonoid::rank),
                core_monoid: s.core.as_ref().map(|c| c.generators().to_vec()).unwrap_or_default(),
            }),
            core_check: r.core_check.as_ref().map(CoreCheckDoc::from),
            flags: FlagsDoc {
                is_rigid: r.is_rigid,
                is_rigid_core: r.is_rigid_core,
                is_affine_space: r.is_affine_space,
                ml_equals_ml_star: r.ml_equals_ml_star,
                ml_in_ml_star: r.ml_in_ml_star,
            },
            certification: (&r.certification).into(),
            status: match r.status {
                ReportStatus::Complete => StatusDoc::Complete,
                ReportStatus::Partial => StatusDoc::Partial,
            },
            notes: r.notes.clone(),
        }
    }

    pub fn split_k(&self) -> Option<usize> {
        self.affine_rays.as_ref().map(Vec::len)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let name = self.input.name.as_deref().unwrap_or("(unnamed)");
        let _ = writeln!(o, "monoid      {name}");
        let _ = writeln!(
            o,
            "rank        {}  mode {}  saturated {}",
            self.monoid.rank,
            self.monoid.mode,
            yes_no(self.monoid.saturated)
        );
        let _ = writeln!(o, "generators  {}", join(&self.monoid.generators));
        let _ = writeln!(o, "cone rays   {}", indexed(&self.monoid.cone_rays));
        let _ = writeln!(
            o,
            "bounds      B={} K={} H={}",
            self.bounds.degree_bound, self.bounds.family_window, self.bounds.root_height
        );
        let _ = writeln!(o);
        let rows: Vec<Vec<String>> = self
            .facets
            .iter()
            .map(|f| {
                vec![
                    f.index.to_string(),
                    f.normal.to_string(),
                    f.status.label().into(),
                    match &f.status {
                        FacetStatusDoc::Saturated { witness } | FacetStatusDoc::AlmostSaturated { witness, .. } => {
                            witness.to_string()
                        }
                        FacetStatusDoc::NowhereSaturated { hole, .. } => format!("hole {hole}"),
                        FacetStatusDoc::Inconclusive => "-".into(),
                    },
                    f.affine.as_str().into(),
                    match &f.affine_ray {
                        Some(a) if a.affine => format!("{} affine", a.vector),
                        Some(a) => format!("{} not affine", a.vector),
                        None => "-".into(),
                    },
                    f.slice.as_ref().map_or("-".into(), |s| format!("x^{}", s.slice)),
                    f.certification.to_string(),
                ]
            })
            .collect();
        o.push_str(&table(
            &["facet", "normal", "status", "witness", "affine", "ray", "slice", "certification"],
            &rows,
        ));
        let _ = writeln!(o);
        let _ = writeln!(o, "ML face     {}", opt(self.ml_face.as_ref().map(ToString::to_string)));
        let star = self.ml_star_face.as_ref().map(|m| match m {
            MlStarDoc::Face { face } => face.to_string(),
            MlStarDoc::NoSlice => "no slice (ML* = K[X])".into(),
        });
        let _ = writeln!(o, "ML* face    {}", opt(star));
        let _ = writeln!(o, "affine rays {}", opt(self.split_k().map(|k| k.to_string())));
        if let Some(s) = &self.split {
            let core = if s.core_rank == 0 {
                "point".to_string()
            } else {
                format!("rank {} generated by {}", s.core_rank, join(&s.core_monoid))
            };
            let _ = writeln!(o, "core X'     {core}");
        }
        let f = &self.flags;
        let _ = writeln!(o, "rigid       {}", opt_bool(f.is_rigid));
        let _ = writeln!(o, "rigid core  {}", opt_bool(f.is_rigid_core));
        let _ = writeln!(o, "affine sp.  {}", opt_bool(f.is_affine_space));
        let _ = writeln!(o, "ML = ML*    {}", opt_bool(f.ml_equals_ml_star));
        let _ = writeln!(o, "certified   {}", self.certification);
        let _ = writeln!(
            o,
            "status      {}",
            match self.status {
                StatusDoc::Complete => "complete",
                StatusDoc::Partial => "partial",
            }
        );
        for n in &self.notes {
            let _ = writeln!(o, "note        {n}");
        }
        o
    }
}

/// The hole listing of `holes --bound B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HolesDocument {
    pub tool: ToolDoc,
    pub input: MonoidInputDocument,
    #[serde(with = "crate::wire::int")]
    pub degree_bound: BigInt,
    pub holes: Vec<LatticePoint>,
    pub families: Vec<FamilyDoc>,
    pub isolated: Option<Vec<LatticePoint>>,
    pub exact: bool,
}

impl HolesDocument {
    pub fn new(input: &MonoidInputDocument, m: &AffineMonoid, inv: &HoleInventory) -> Self {
        HolesDocument {
            tool: ToolDoc::current(),
            input: input.clone(),
            degree_bound: inv.degree_bound.clone(),
            holes: inv.holes.clone(),
            families: inv.families.iter().map(FamilyDoc::from).collect(),
            isolated: inv.isolated.clone(),
            exact: m.is_exact(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(o, "holes of degree <= {}: {}", self.degree_bound, self.holes.len());
        for h in &self.holes {
            let _ = writeln!(o, "  {h}");
        }
        for f in &self.families {
            let _ = writeln!(
                o,
                "family      {} + k*{}*{}  [{}]",
                f.base, f.step, f.direction, f.certification
            );
        }
        if let Some(iso) = &self.isolated {
            let _ = writeln!(o, "isolated    {}", join(iso));
        }
        o
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDoc {
    pub e: LatticePoint,
    pub descends: bool,
    /// `member + e` is a hole, when the root does not descend.
    pub member: Option<LatticePoint>,
    pub hole: Option<LatticePoint>,
    pub certification: CertificationDoc,
}

impl RootDoc {
    pub fn new(e: &LatticePoint, v: &DescentVerdict) -> Self {
        let (member, hole) = match &v.status {
            DescentStatus::Yes => (None, None),
            DescentStatus::No { member, hole } => (Some(member.clone()), Some(hole.clone())),
        };
        RootDoc {
            e: e.clone(),
            descends: v.is_yes(),
            member,
            hole,
            certification: (&v.certification).into(),
        }
    }
}

/// Output of `roots --ray i --height H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootsDocument {
    pub tool: ToolDoc,
    pub input: MonoidInputDocument,
    pub ray: usize,
    pub normal: DualVector,
    #[serde(with = "crate::wire::int")]
    pub height: BigInt,
    pub roots: Vec<RootDoc>,
}

impl RootsDocument {
    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(
            o,
            "roots of ray {} (normal {}) with height <= {}: {}",
            self.ray,
            self.normal,
            self.height,
            self.roots.len()
        );
        let rows: Vec<Vec<String>> = self
            .roots
            .iter()
            .map(|r| {
                vec![
                    r.e.to_string(),
                    yes_no(r.descends).into(),
                    match (&r.member, &r.hole) {
                        (Some(m), Some(h)) => format!("{m} -> hole {h}"),
                        _ => "-".into(),
                    },
                    r.certification.to_string(),
                ]
            })
            .collect();
        o.push_str(&table(&["e", "descends", "obstruction", "certification"], &rows));
        o
    }
}

/// One rational coefficient times a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub monomial: LatticePoint,
    /// `p` or `p/q` in lowest terms.
    pub coefficient: String,
}

/// Output of `derive`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeriveDocument {
    pub tool: ToolDoc,
    pub input: MonoidInputDocument,
    pub ray: usize,
    pub rho: DualVector,
    pub e: LatticePoint,
    pub operation: String,
    pub argument: LatticePoint,
    pub t: Option<String>,
    pub result: Vec<TermDoc>,
    pub result_text: String,
    pub nilpotency_index: Option<usize>,
}

impl DeriveDocument {
    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let _ = writeln!(o, "derivation  d[rho={}, e={}]", self.rho, self.e);
        match &self.t {
            Some(t) => {
                let _ = writeln!(o, "exp({t} d)(x^{}) = {}", self.argument, self.result_text);
            }
            None => {
                let _ = writeln!(o, "d(x^{}) = {}", self.argument, self.result_text);
            }
        }
        let _ = writeln!(
            o,
            "nilpotency  {}",
            self.nilpotency_index
                .map_or("none within the cap".into(), |k| format!("index {k}"))
        );
        o
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt(s: Option<String>) -> String {
    s.unwrap_or_else(|| "undecided".into())
}

fn opt_bool(b: Option<bool>) -> String {
    opt(b.map(|b| yes_no(b).to_string()))
}

fn join<V: LatticeVector + std::fmt::Display>(vs: &[V]) -> String {
    if vs.is_empty() {
        return "-".into();
    }
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn indexed(vs: &[LatticePoint]) -> String {
    vs.iter()
        .enumerate()
        .map(|(i, v)| format!("{i}:{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let mut o = String::new();
    let line = |cells: Vec<&str>, o: &mut String| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                s.push_str(c);
                s.extend(std::iter::repeat_n(' ', w[i] - c.chars().count() + 2));
            }
        }
        o.push_str(s.trim_end());
        o.push('\n');
    };
    line(header.to_vec(), &mut o);
    for r in rows {
        line(r.iter().map(String::as_str).collect(), &mut o);
    }
    o
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::analyze;

    fn doc(text: &str) -> ReportDocument {
        let input = MonoidInputDocument::parse(text).unwrap();
        let m = input.monoid().unwrap();
        let b = input.bounds_override().resolve(&m);
        ReportDocument::new(&input, &analyze(&m, &b, false).unwrap())
    }

    #[test]
    fn round_trip_and_determinism() {
        let d = doc(r#"{"rank":2,"generators":[[1,0],[0,2],[0,3]],"name":"example2"}"#);
        let j = d.to_json();
        assert_eq!(ReportDocument::from_json(&j).unwrap(), d);
        assert_eq!(doc(r#"{"rank":2,"generators":[[1,0],[0,2],[0,3]],"name":"example2"}"#).to_json(), j);
        assert!(j.contains("\"kind\": \"exact\""));
    }

    #[test]
    fn text_mentions_the_verdicts() {
        let d = doc(r#"{"rank":2,"generators":[[1,0],[0,2],[0,3]]}"#);
        let t = d.to_text();
        assert!(t.contains("nowhere saturated"));
        assert!(t.contains("almost saturated"));
        assert!(t.contains("x^(1,0)"));
        assert!(t.contains("rigid core  yes"));
    }

    #[test]
    fn table_alignment() {
        let t = table(&["a", "bb"], &[vec!["long".into(), "x".into()]]);
        assert_eq!(t, "a     bb\nlong  x\n");
    }
}
