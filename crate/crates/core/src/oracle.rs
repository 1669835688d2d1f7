//! Brute-force reference computations, independent of the structured
//! decision procedures and used to cross-check them.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::lattice::{LatticePoint, LatticeVector};
use crate::monoid::AffineMonoid;

/// Every sum of generators of degree at most `bound`, by breadth-first closure.
pub fn brute_force_members(monoid: &AffineMonoid, bound: &BigInt) -> BTreeSet<LatticePoint> {
    let gens = monoid.generators();
    let zero = LatticePoint::zero(monoid.rank());
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = &p + g;
            if monoid.degree(&q) <= *bound && seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen
}

/// Points of the saturation of degree at most `bound` that brute force does not reach.
pub fn brute_force_holes(monoid: &AffineMonoid, bound: &BigInt) -> Vec<LatticePoint> {
    let members = brute_force_members(monoid, bound);
    monoid
        .points_up_to(bound)
        .into_iter()
        .filter(|p| !members.contains(p))
        .collect()
}
