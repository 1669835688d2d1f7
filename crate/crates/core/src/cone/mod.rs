//! Rational polyhedral cones, their duals and face lattices.

mod dd;
pub mod points;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{pair, rank_of_rows, LatticeVector};

pub(crate) use dd::{canonical_basis, generators_of_inequalities, project_out};

#[derive(Debug, PartialEq, Eq)]
struct ConeData<V: LatticeVector> {
    ambient: usize,
    rays: Vec<V>,
    normals: Vec<V::Dual>,
    equations: Vec<V::Dual>,
    lineality: Vec<V>,
    dim: usize,
}

/// A finitely generated cone in `Q^n`, stored by its primitive extremal rays and
/// primitive facet normals (both sorted lexicographically).
///
/// When the cone is not full-dimensional the facet normals are taken
/// orthogonal to the equations, which makes them canonical.
pub struct RationalCone<V: LatticeVector> {
    data: Arc<ConeData<V>>,
}

impl<V: LatticeVector> Clone for RationalCone<V> {
    fn clone(&self) -> Self {
        RationalCone {
            data: Arc::clone(&self.data),
        }
    }
}

impl<V: LatticeVector> PartialEq for RationalCone<V> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl<V: LatticeVector> Eq for RationalCone<V> {}

impl<V: LatticeVector> fmt::Debug for RationalCone<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RationalCone")
            .field("rays", &self.data.rays)
            .field("normals", &self.data.normals)
            .field("dim", &self.data.dim)
            .finish()
    }
}

fn to_rows<V: LatticeVector>(vs: &[V]) -> Vec<Vec<BigInt>> {
    vs.iter().map(|v| v.coords().to_vec()).collect()
}

fn from_rows<V: LatticeVector>(rows: Vec<Vec<BigInt>>) -> Vec<V> {
    rows.into_iter().map(V::from_coords).collect()
}

/// The cone generated by `generators` (no error cases; an empty list gives `{0}`).
pub(crate) fn cone_in<V: LatticeVector>(ambient: usize, generators: &[V]) -> RationalCone<V> {
    let gen_rows = to_rows(generators);
    let dim = rank_of_rows(&gen_rows);

    // the dual {y : g·y >= 0}: lineality = equations, rays = facet normals
    let dual = generators_of_inequalities(ambient, &gen_rows);
    let equations = canonical_basis(&dual.lineality, ambient);
    let mut normals: Vec<Vec<BigInt>> = dual
        .rays
        .iter()
        .map(|r| project_out(r, &equations))
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .collect();
    normals.sort();
    normals.dedup();

    let mut ineqs = normals.clone();
    for e in &equations {
        ineqs.push(e.clone());
        ineqs.push(e.iter().map(|c| -c).collect());
    }
    let primal = generators_of_inequalities(ambient, &ineqs);
    let lineality = canonical_basis(&primal.lineality, ambient);
    let mut rays: Vec<Vec<BigInt>> = primal
        .rays
        .iter()
        .map(|r| project_out(r, &lineality))
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .collect();
    rays.sort();
    rays.dedup();

    RationalCone {
        data: Arc::new(ConeData {
            ambient,
            rays: from_rows(rays),
            normals: from_rows(normals),
            equations: from_rows(equations),
            lineality: from_rows(lineality),
            dim,
        }),
    }
}

/// The cone generated by a nonempty list of vectors of common rank.
pub fn cone_from_generators<V: LatticeVector>(generators: &[V]) -> Result<RationalCone<V>> {
    let n = generators.first().ok_or(Error::EmptyGenerators)?.rank();
    if let Some(bad) = generators.iter().find(|g| g.rank() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.rank(),
        });
    }
    Ok(cone_in(n, generators))
}

/// `{y : <x, y> >= 0 for all x in C}`.
pub fn dual_cone<V: LatticeVector>(cone: &RationalCone<V>) -> RationalCone<V::Dual> {
    let d = &cone.data;
    let mut gens: Vec<V::Dual> = d.normals.clone();
    for e in &d.equations {
        gens.push(e.clone());
        gens.push(V::Dual::from_coords(e.coords().iter().map(|c| -c).collect()));
    }
    cone_in(d.ambient, &gens)
}

pub fn facets<V: LatticeVector>(cone: &RationalCone<V>) -> Vec<Face<V>> {
    cone.facets()
}

pub fn extremal_rays<V: LatticeVector>(cone: &RationalCone<V>) -> &[V] {
    cone.rays()
}

pub fn is_pointed<V: LatticeVector>(cone: &RationalCone<V>) -> bool {
    cone.is_pointed()
}

pub fn contains<V: LatticeVector>(cone: &RationalCone<V>, point: &V) -> bool {
    cone.contains(point)
}

impl<V: LatticeVector> RationalCone<V> {
    pub fn ambient_rank(&self) -> usize {
        self.data.ambient
    }

    pub fn dim(&self) -> usize {
        self.data.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.data.dim == self.data.ambient
    }

    pub fn is_pointed(&self) -> bool {
        self.data.lineality.is_empty()
    }

    /// Primitive extremal ray generators, sorted.
    pub fn rays(&self) -> &[V] {
        &self.data.rays
    }

    /// Primitive inward facet normals, sorted.
    pub fn normals(&self) -> &[V::Dual] {
        &self.data.normals
    }

    /// A basis of the linear forms vanishing on the cone.
    pub fn equations(&self) -> &[V::Dual] {
        &self.data.equations
    }

    /// A basis of the largest linear subspace inside the cone.
    pub fn lineality(&self) -> &[V] {
        &self.data.lineality
    }

    pub fn contains(&self, point: &V) -> bool {
        point.rank() == self.data.ambient
            && self.data.normals.iter().all(|n| !pair(point, n).is_negative())
            && self.data.equations.iter().all(|e| pair(point, e).is_zero())
    }

    /// True if `point` lies in the relative interior.
    pub fn contains_in_relative_interior(&self, point: &V) -> bool {
        self.contains(point) && self.data.normals.iter().all(|n| pair(point, n).is_positive())
    }

    /// Indices of the rays annihilated by facet normal `k`.
    pub fn rays_on_facet(&self, k: usize) -> BTreeSet<usize> {
        let n = &self.data.normals[k];
        (0..self.data.rays.len())
            .filter(|&i| pair(&self.data.rays[i], n).is_zero())
            .collect()
    }

    fn face_dim(&self, rays: &BTreeSet<usize>) -> usize {
        let rows: Vec<Vec<BigInt>> = rays
            .iter()
            .map(|&i| self.data.rays[i].coords().to_vec())
            .chain(self.data.lineality.iter().map(|l| l.coords().to_vec()))
            .collect();
        rank_of_rows(&rows)
    }

    fn make_face(&self, rays: BTreeSet<usize>) -> Face<V> {
        let dim = self.face_dim(&rays);
        Face {
            cone: self.clone(),
            rays,
            dim,
        }
    }

    /// The facet cut out by normal `k`.
    pub fn facet(&self, k: usize) -> Face<V> {
        self.make_face(self.rays_on_facet(k))
    }

    /// One face per facet normal, in normal order.
    pub fn facets(&self) -> Vec<Face<V>> {
        (0..self.data.normals.len()).map(|k| self.facet(k)).collect()
    }

    /// The cone itself as a face.
    pub fn improper_face(&self) -> Face<V> {
        self.make_face((0..self.data.rays.len()).collect())
    }

    /// The minimal face (the apex when the cone is pointed).
    pub fn apex_face(&self) -> Face<V> {
        self.make_face(BTreeSet::new())
    }

    /// The smallest face containing the given rays.
    pub fn face_spanned_by(&self, rays: &BTreeSet<usize>) -> Face<V> {
        let mut set: BTreeSet<usize> = (0..self.data.rays.len()).collect();
        for k in 0..self.data.normals.len() {
            let on = self.rays_on_facet(k);
            if rays.is_subset(&on) {
                set = set.intersection(&on).copied().collect();
            }
        }
        self.make_face(set)
    }

    /// The face with exactly this ray set, if it is one.
    pub fn face_with_rays(&self, rays: &BTreeSet<usize>) -> Option<Face<V>> {
        let f = self.face_spanned_by(rays);
        (f.rays == *rays).then_some(f)
    }

    /// Every face, sorted by dimension and then by ray set.
    pub fn all_faces(&self) -> Vec<Face<V>> {
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let top: BTreeSet<usize> = (0..self.data.rays.len()).collect();
        seen.insert(top.clone());
        let mut frontier = vec![top];
        let facet_sets: Vec<BTreeSet<usize>> =
            (0..self.data.normals.len()).map(|k| self.rays_on_facet(k)).collect();
        while let Some(s) = frontier.pop() {
            for f in &facet_sets {
                let t: BTreeSet<usize> = s.intersection(f).copied().collect();
                if seen.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        let mut faces: Vec<Face<V>> = seen.into_iter().map(|s| self.make_face(s)).collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.rays.cmp(&b.rays)));
        faces
    }
}

/// A face of a cone, recorded by the extremal rays lying on it.
#[derive(Clone)]
pub struct Face<V: LatticeVector> {
    cone: RationalCone<V>,
    rays: BTreeSet<usize>,
    dim: usize,
}

impl<V: LatticeVector> PartialEq for Face<V> {
    fn eq(&self, other: &Self) -> bool {
        self.rays == other.rays && self.cone == other.cone
    }
}

impl<V: LatticeVector> Eq for Face<V> {}

impl<V: LatticeVector> fmt::Debug for Face<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Face")
            .field("rays", &self.rays)
            .field("dim", &self.dim)
            .finish()
    }
}

impl<V: LatticeVector> Face<V> {
    pub fn cone(&self) -> &RationalCone<V> {
        &self.cone
    }

    pub fn ray_indices(&self) -> &BTreeSet<usize> {
        &self.rays
    }

    pub fn rays(&self) -> Vec<V> {
        self.rays.iter().map(|&i| self.cone.data.rays[i].clone()).collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_improper(&self) -> bool {
        self.rays.len() == self.cone.data.rays.len()
    }

    pub fn is_apex(&self) -> bool {
        self.rays.is_empty()
    }

    /// Indices of the facet normals vanishing on the whole face.
    pub fn supporting_normals(&self) -> Vec<usize> {
        (0..self.cone.data.normals.len())
            .filter(|&k| {
                let n = &self.cone.data.normals[k];
                self.rays.iter().all(|&i| pair(&self.cone.data.rays[i], n).is_zero())
            })
            .collect()
    }

    /// True if the point lies in the cone and on this face.
    pub fn contains(&self, point: &V) -> bool {
        self.cone.contains(point)
            && self
                .supporting_normals()
                .into_iter()
                .all(|k| pair(point, &self.cone.data.normals[k]).is_zero())
    }

    pub fn is_subface_of(&self, other: &Face<V>) -> bool {
        self.cone == other.cone && self.rays.is_subset(&other.rays)
    }

    /// The dual face `self^⊥ ∩ C^∨`, as a face of `dual` (which must be the dual cone).
    pub fn dual_face(&self, dual: &RationalCone<V::Dual>) -> Face<V::Dual> {
        let set: BTreeSet<usize> = (0..dual.rays().len())
            .filter(|&j| {
                let y = &dual.rays()[j];
                self.rays
                    .iter()
                    .all(|&i| pair(&self.cone.data.rays[i], y).is_zero())
            })
            .collect();
        dual.make_face(set)
    }
}

/// Intersection of faces of one cone; an empty list gives the whole cone.
pub fn intersect_faces<V: LatticeVector>(cone: &RationalCone<V>, faces: &[Face<V>]) -> Result<Face<V>> {
    let mut set: BTreeSet<usize> = (0..cone.rays().len()).collect();
    for f in faces {
        if f.cone != *cone {
            return Err(Error::Domain("faces belong to different cones".into()));
        }
        set = set.intersection(&f.rays).copied().collect();
    }
    Ok(cone.make_face(set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{DualVector, LatticePoint};

    fn p(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64s(c)
    }

    fn d(c: &[i64]) -> DualVector {
        DualVector::from_i64s(c)
    }

    fn pyramid() -> RationalCone<LatticePoint> {
        cone_from_generators(&[p(&[1, 1, 1]), p(&[1, 1, -1]), p(&[1, -1, 1]), p(&[1, -1, -1])])
            .unwrap()
    }

    #[test]
    fn quadrant_is_self_dual() {
        let c = cone_from_generators(&[p(&[1, 0]), p(&[0, 1])]).unwrap();
        assert_eq!(c.normals(), &[d(&[0, 1]), d(&[1, 0])]);
        assert_eq!(c.facets().len(), 2);
        assert!(c.is_pointed());
        assert!(c.contains(&p(&[3, 5])));
        let dual = dual_cone(&c);
        assert_eq!(dual.rays(), &[d(&[0, 1]), d(&[1, 0])]);
    }

    #[test]
    fn narrow_cone_normals() {
        let c = cone_from_generators(&[p(&[1, 0]), p(&[1, 2])]).unwrap();
        assert_eq!(c.normals(), &[d(&[0, 1]), d(&[2, -1])]);
        assert_eq!(dual_cone(&c).rays(), &[d(&[0, 1]), d(&[2, -1])]);
        assert!(!c.contains(&p(&[1, 3])));
    }

    #[test]
    fn pyramid_has_four_facets() {
        let c = pyramid();
        assert_eq!(c.dim(), 3);
        assert!(c.is_pointed());
        assert_eq!(c.facets().len(), 4);
        assert!(c.facets().iter().all(|f| f.dim() == 2));
    }

    #[test]
    fn redundant_generators_dropped() {
        let c = cone_from_generators(&[p(&[1, 0]), p(&[2, 2]), p(&[1, 1]), p(&[0, 3]), p(&[1, 2])])
            .unwrap();
        assert_eq!(c.rays(), &[p(&[0, 1]), p(&[1, 0])]);
    }

    #[test]
    fn half_plane_is_not_pointed() {
        let c = cone_from_generators(&[p(&[1, 0]), p(&[-1, 0]), p(&[0, 1])]).unwrap();
        assert!(!c.is_pointed());
        assert_eq!(c.lineality().len(), 1);
        assert_eq!(c.normals(), &[d(&[0, 1])]);
    }

    #[test]
    fn lower_dimensional_cone() {
        let c = cone_from_generators(&[p(&[1, 0, 0]), p(&[1, 1, 0])]).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.equations(), &[d(&[0, 0, 1])]);
        assert_eq!(c.normals(), &[d(&[0, 1, 0]), d(&[1, -1, 0])]);
        assert!(!c.contains(&p(&[1, 0, 1])));
    }

    #[test]
    fn double_dual_of_pyramid() {
        let c = pyramid();
        assert_eq!(dual_cone(&dual_cone(&c)).rays(), c.rays());
    }

    #[test]
    fn intersections() {
        let c = cone_from_generators(&[p(&[1, 0]), p(&[1, 2])]).unwrap();
        let f = c.facets();
        let one = intersect_faces(&c, &f[1..]).unwrap();
        assert_eq!(one.dim(), 1);
        assert!(intersect_faces(&c, &f).unwrap().is_apex());
        let py = pyramid();
        let pf = py.facets();
        let three = intersect_faces(&py, &pf[..3]).unwrap();
        assert_eq!(three.dim(), 0);
        assert!(intersect_faces(&py, &[]).unwrap().is_improper());
        assert!(intersect_faces(&py, &f[..1]).is_err());
    }

    #[test]
    fn dimension_reversal() {
        let c = pyramid();
        let dual = dual_cone(&c);
        for face in c.all_faces() {
            let hat = face.dual_face(&dual);
            assert_eq!(face.dim() + hat.dim(), 3);
        }
        assert_eq!(c.all_faces().len(), 1 + 4 + 4 + 1);
    }
}
