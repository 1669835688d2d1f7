//! Lattice points of bounded polyhedra.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::dd::generators_of_inequalities;
use crate::error::{Error, Result};
use crate::lattice::dot;

/// A half-space `a · x >= b`.
#[derive(Clone, Debug)]
pub struct HalfSpace {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl HalfSpace {
    pub fn new(normal: Vec<BigInt>, offset: BigInt) -> Self {
        HalfSpace { normal, offset }
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        dot(&self.normal, x) >= self.offset
    }
}

/// Vertices of `{x : a_i·x >= b_i}`; errors if the polyhedron is unbounded.
pub fn polytope_vertices(n: usize, halfspaces: &[HalfSpace]) -> Result<Vec<Vec<BigRational>>> {
    // homogenise: (a, -b)·(x, t) >= 0, t >= 0
    let mut ineqs: Vec<Vec<BigInt>> = halfspaces
        .iter()
        .map(|h| {
            let mut row = h.normal.clone();
            row.push(-h.offset.clone());
            row
        })
        .collect();
    let mut t_row = vec![BigInt::zero(); n + 1];
    t_row[n] = BigInt::from(1);
    ineqs.push(t_row);
    let gens = generators_of_inequalities(n + 1, &ineqs);
    let vertices: Vec<Vec<BigRational>> = gens
        .rays
        .iter()
        .filter(|r| r[n].is_positive())
        .map(|r| {
            r[..n]
                .iter()
                .map(|c| BigRational::new(c.clone(), r[n].clone()))
                .collect()
        })
        .collect();
    if vertices.is_empty() {
        return Ok(vertices);
    }
    let recedes = !gens.lineality.is_empty() || gens.rays.iter().any(|r| r[n].is_zero());
    if recedes {
        return Err(Error::Domain("polyhedron is unbounded".into()));
    }
    Ok(vertices)
}

/// All lattice points of the box spanned by `vertices` that satisfy `keep`,
/// in lexicographic order.
pub fn lattice_points_in_hull_box<F>(n: usize, vertices: &[Vec<BigRational>], mut keep: F) -> Vec<Vec<BigInt>>
where
    F: FnMut(&[BigInt]) -> bool,
{
    if vertices.is_empty() {
        return Vec::new();
    }
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for k in 0..n {
        let min = vertices.iter().map(|v| &v[k]).min().unwrap();
        let max = vertices.iter().map(|v| &v[k]).max().unwrap();
        lo.push(min.ceil().to_integer());
        hi.push(max.floor().to_integer());
    }
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        if keep(&cur) {
            out.push(cur.clone());
        }
        // odometer, last coordinate fastest
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < hi[k] {
                cur[k] += 1;
                cur[k + 1..n].clone_from_slice(&lo[k + 1..n]);
                break;
            }
        }
    }
}

/// All lattice points of the bounded polyhedron `{x : a_i·x >= b_i}`, sorted.
pub fn lattice_points_in_polytope(n: usize, halfspaces: &[HalfSpace]) -> Result<Vec<Vec<BigInt>>> {
    let vertices = polytope_vertices(n, halfspaces)?;
    Ok(lattice_points_in_hull_box(n, &vertices, |x| {
        halfspaces.iter().all(|h| h.contains(x))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs(a: &[i64], b: i64) -> HalfSpace {
        HalfSpace::new(a.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(b))
    }

    #[test]
    fn triangle_points() {
        // x >= 0, y >= 0, x + y <= 4 : 15 points
        let pts = lattice_points_in_polytope(2, &[hs(&[1, 0], 0), hs(&[0, 1], 0), hs(&[-1, -1], -4)])
            .unwrap();
        assert_eq!(pts.len(), 15);
    }

    #[test]
    fn unbounded_rejected() {
        assert!(lattice_points_in_polytope(2, &[hs(&[1, 0], 0), hs(&[0, 1], 0)]).is_err());
    }

    #[test]
    fn empty_polytope() {
        let pts = lattice_points_in_polytope(1, &[hs(&[1], 2), hs(&[-1], -1)]).unwrap();
        assert!(pts.is_empty());
    }

    #[test]
    fn segment_on_a_hyperplane() {
        // e1 = -1 and 0 <= e2 <= 3
        let pts = lattice_points_in_polytope(
            2,
            &[hs(&[1, 0], -1), hs(&[-1, 0], 1), hs(&[0, 1], 0), hs(&[0, -1], -3)],
        )
        .unwrap();
        assert_eq!(pts.len(), 4);
    }
}
