use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{smith_normal_form, IntegerMatrix};
use super::vector::{LatticePoint, LatticeVector};
use crate::error::{Error, Result};

/// An isomorphism between the group generated by some lattice points of `Z^n`
/// and `Z^r` in standard coordinates.
///
/// Forward: `x -> (U x)_i / d_i` for `i < r`; backward: `y -> U^{-1} (d_i y_i, 0, ..., 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTransform {
    ambient: usize,
    left: IntegerMatrix,
    left_inverse: IntegerMatrix,
    divisors: Vec<BigInt>,
    identity: bool,
}

impl LatticeTransform {
    pub fn identity(n: usize) -> Self {
        LatticeTransform {
            ambient: n,
            left: IntegerMatrix::identity(n),
            left_inverse: IntegerMatrix::identity(n),
            divisors: vec![BigInt::one(); n],
            identity: true,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// Rank `r` of the group identified with `Z^r`.
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.left
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    /// Coordinates in `Z^r` of a point of the generated group, or `None` when
    /// the point lies outside that group.
    pub fn apply(&self, x: &LatticePoint) -> Option<LatticePoint> {
        if x.rank() != self.ambient {
            return None;
        }
        if self.identity {
            return Some(x.clone());
        }
        let ux = self.left.mul_vec(x.coords());
        let r = self.rank();
        if ux[r..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut out = Vec::with_capacity(r);
        for (c, d) in ux.into_iter().zip(&self.divisors) {
            let (q, rem) = c.div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(LatticePoint::new(out))
    }

    /// The point of `Z^n` with the given coordinates in `Z^r`.
    pub fn unapply(&self, y: &LatticePoint) -> LatticePoint {
        assert_eq!(y.rank(), self.rank());
        if self.identity {
            return y.clone();
        }
        let mut scaled: Vec<BigInt> = y
            .coords()
            .iter()
            .zip(&self.divisors)
            .map(|(c, d)| c * d)
            .collect();
        scaled.resize(self.ambient, BigInt::zero());
        LatticePoint::new(self.left_inverse.mul_vec(&scaled))
    }
}

/// Identifies the group generated by `generators` with `Z^r`.
///
/// Returns the coordinate change and `r`. When the generators already generate
/// all of `Z^n` the identity is returned.
pub fn smith_reindex(generators: &[LatticePoint]) -> Result<(LatticeTransform, usize)> {
    let n = generators.first().ok_or(Error::EmptyGenerators)?.rank();
    if let Some(bad) = generators.iter().find(|g| g.rank() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.rank(),
        });
    }
    let cols: Vec<Vec<BigInt>> = generators.iter().map(|g| g.coords().to_vec()).collect();
    let a = IntegerMatrix::from_columns(&cols, n)?;
    let snf = smith_normal_form(&a)?;
    let r = snf.rank();
    if r == n && snf.invariant_factors.iter().all(One::is_one) {
        return Ok((LatticeTransform::identity(n), n));
    }
    let mut left = snf.left;
    let mut left_inverse = left.unimodular_inverse()?;
    let divisors = snf.invariant_factors;

    // orient each new axis so that the first generator with a non-zero entry there is positive
    let images: Vec<Vec<BigInt>> = generators.iter().map(|g| left.mul_vec(g.coords())).collect();
    for axis in 0..r {
        if let Some(img) = images.iter().find(|img| !img[axis].is_zero()) {
            if img[axis].is_negative() {
                for j in 0..n {
                    let v = -&left[(axis, j)];
                    left[(axis, j)] = v;
                    let w = -&left_inverse[(j, axis)];
                    left_inverse[(j, axis)] = w;
                }
            }
        }
    }

    Ok((
        LatticeTransform {
            ambient: n,
            left,
            left_inverse,
            divisors,
            identity: false,
        },
        r,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::rank_of_rows;

    fn p(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64s(c)
    }

    /// Checks that the images of `gens` generate all of `Z^r` (via the Smith form).
    fn images_generate_full_lattice(t: &LatticeTransform, gens: &[LatticePoint]) -> bool {
        let imgs: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| t.apply(g).unwrap().into_coords())
            .collect();
        let a = IntegerMatrix::from_columns(&imgs, t.rank()).unwrap();
        let s = smith_normal_form(&a).unwrap();
        s.rank() == t.rank() && s.invariant_factors.iter().all(One::is_one)
    }

    #[test]
    fn coprime_rank_one() {
        let gens = [p(&[2]), p(&[3])];
        let (t, r) = smith_reindex(&gens).unwrap();
        assert_eq!(r, 1);
        assert!(t.is_identity());
    }

    #[test]
    fn index_two_sublattice() {
        let gens = [p(&[2, 0]), p(&[0, 1])];
        let (t, r) = smith_reindex(&gens).unwrap();
        assert_eq!(r, 2);
        assert!(!t.is_identity());
        assert!(images_generate_full_lattice(&t, &gens));
        assert_eq!(t.apply(&p(&[1, 0])), None);
        for g in &gens {
            assert_eq!(&t.unapply(&t.apply(g).unwrap()), g);
        }
    }

    #[test]
    fn standard_basis_is_identity() {
        let (t, r) = smith_reindex(&[p(&[1, 0]), p(&[0, 1])]).unwrap();
        assert_eq!(r, 2);
        assert!(t.is_identity());
    }

    #[test]
    fn rank_deficient_embedding() {
        let gens = [p(&[0, 2, 0]), p(&[0, 3, 0])];
        let (t, r) = smith_reindex(&gens).unwrap();
        assert_eq!(r, 1);
        let imgs: Vec<_> = gens.iter().map(|g| t.apply(g).unwrap()).collect();
        assert_eq!(imgs, vec![p(&[2]), p(&[3])]);
        assert_eq!(t.apply(&p(&[1, 0, 0])), None);
        assert_eq!(t.unapply(&p(&[1])), p(&[0, 1, 0]));
    }

    #[test]
    fn skew_plane_in_three_space() {
        let gens = [p(&[1, 1, 0]), p(&[1, -1, 2]), p(&[3, 1, 2])];
        let (t, r) = smith_reindex(&gens).unwrap();
        let rows: Vec<Vec<BigInt>> = gens.iter().map(|g| g.coords().to_vec()).collect();
        assert_eq!(r, rank_of_rows(&rows));
        assert!(images_generate_full_lattice(&t, &gens));
        for g in &gens {
            assert_eq!(&t.unapply(&t.apply(g).unwrap()), g);
        }
    }
}
