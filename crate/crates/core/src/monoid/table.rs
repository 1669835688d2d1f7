//! Membership for every lattice point of the cone up to a degree bound, by
//! dynamic programming over degree levels.

use std::collections::HashSet;

use num_bigint::BigInt;

use super::AffineMonoid;
use crate::cone::points::lattice_points_in_hull_box;
use crate::lattice::{LatticePoint, LatticeVector};

/// Lattice points of `σ∨` of degree at most `bound`, sorted by degree then lexicographically.
pub(crate) fn cone_points_up_to(monoid: &AffineMonoid, bound: &BigInt) -> Vec<LatticePoint> {
    graded_points(monoid, bound).into_iter().map(|(_, p)| p).collect()
}

fn graded_points(monoid: &AffineMonoid, bound: &BigInt) -> Vec<(BigInt, LatticePoint)> {
    let n = monoid.rank();
    let mut vertices = vec![LatticePoint::zero(n)
        .coords()
        .iter()
        .map(|c| c.clone().into())
        .collect()];
    for r in monoid.dual_cone().rays() {
        vertices.push(monoid.ray_vertex(r, bound));
    }
    let mut out: Vec<(BigInt, LatticePoint)> = Vec::new();
    lattice_points_in_hull_box(n, &vertices, |x| {
        let p = LatticePoint::new(x.to_vec());
        let d = monoid.degree(&p);
        if d <= *bound && monoid.in_saturation(&p) {
            out.push((d, p));
        }
        false
    });
    out.sort();
    out
}

pub(crate) struct MemberTable {
    bound: BigInt,
    points: Vec<(BigInt, LatticePoint)>,
    members: HashSet<LatticePoint>,
}

impl MemberTable {
    /// `p` is a member iff `p = 0` or `p - g` is a member for some generator `g`;
    /// `p - g` has smaller degree, so levels are filled in increasing degree.
    pub fn build(monoid: &AffineMonoid, bound: &BigInt) -> Self {
        let points = graded_points(monoid, bound);
        let mut members: HashSet<LatticePoint> = HashSet::new();
        let gens = monoid.generators();
        let mut start = 0;
        while start < points.len() {
            let deg = &points[start].0;
            let end = start + points[start..].iter().take_while(|(d, _)| d == deg).count();
            let level = &points[start..end];
            let flags = crate::par::map(level, |(_, p)| {
                p.is_zero() || gens.iter().any(|g| members.contains(&(p - g)))
            });
            for ((_, p), f) in level.iter().zip(flags) {
                if f {
                    members.insert(p.clone());
                }
            }
            start = end;
        }
        MemberTable {
            bound: bound.clone(),
            points,
            members,
        }
    }

    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    pub fn points(&self) -> &[(BigInt, LatticePoint)] {
        &self.points
    }

    pub fn is_member(&self, p: &LatticePoint) -> bool {
        self.members.contains(p)
    }
}
