use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact integer vector living in one of the two mutually dual lattices.
///
/// `LatticePoint` is the character lattice `M`, `DualVector` the lattice `N`
/// of one-parameter subgroups. Cones and faces are generic over this trait so
/// the dual of a cone over `M` is a cone over `N` and vice versa.
pub trait LatticeVector:
    Clone + Eq + Ord + std::hash::Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    type Dual: LatticeVector<Dual = Self>;

    fn from_coords(coords: Vec<BigInt>) -> Self;
    fn coords(&self) -> &[BigInt];

    fn rank(&self) -> usize {
        self.coords().len()
    }

    fn is_zero(&self) -> bool {
        self.coords().iter().all(Zero::is_zero)
    }

    fn zero(rank: usize) -> Self {
        Self::from_coords(vec![BigInt::zero(); rank])
    }

    /// The vector divided by the gcd of its entries.
    fn primitive(&self) -> Result<Self> {
        let g = content(self.coords());
        if g.is_zero() {
            return Err(Error::ZeroVector("primitive_vector"));
        }
        Ok(Self::from_coords(self.coords().iter().map(|c| c / &g).collect()))
    }

    fn scaled(&self, k: &BigInt) -> Self {
        Self::from_coords(self.coords().iter().map(|c| c * k).collect())
    }
}

/// Gcd of all entries (non-negative; zero for the zero vector).
pub fn content(coords: &[BigInt]) -> BigInt {
    coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content; leaves the zero vector unchanged.
pub fn make_primitive(coords: &mut [BigInt]) {
    let g = content(coords);
    if !g.is_zero() && g != BigInt::from(1) {
        for c in coords.iter_mut() {
            *c = &*c / &g;
        }
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

macro_rules! lattice_vector_type {
    ($name:ident, $dual:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(#[serde(with = "crate::wire::int_vec")] Vec<BigInt>);

        impl $name {
            pub fn new(coords: Vec<BigInt>) -> Self {
                $name(coords)
            }

            pub fn from_i64s(coords: &[i64]) -> Self {
                $name(coords.iter().map(|&c| BigInt::from(c)).collect())
            }

            pub fn into_coords(self) -> Vec<BigInt> {
                self.0
            }

            /// Coordinates as `i64`, when every entry fits.
            pub fn to_i64s(&self) -> Option<Vec<i64>> {
                use num_traits::ToPrimitive;
                self.0.iter().map(|c| c.to_i64()).collect()
            }

            fn check_rank(&self, other: &Self) {
                assert_eq!(self.0.len(), other.0.len(), "lattice vectors of different rank");
            }
        }

        impl LatticeVector for $name {
            type Dual = $dual;

            fn from_coords(coords: Vec<BigInt>) -> Self {
                $name(coords)
            }

            fn coords(&self) -> &[BigInt] {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                self.check_rank(rhs);
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                self.check_rank(rhs);
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                &self + &rhs
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                &self - &rhs
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|c| -c).collect())
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                -&self
            }
        }
    };
}

lattice_vector_type!(
    LatticePoint,
    DualVector,
    "A point of the character lattice `M = Z^n` (exponent of a monomial)."
);
lattice_vector_type!(
    DualVector,
    LatticePoint,
    "A vector of the dual lattice `N = Z^n` (one-parameter subgroups)."
);

/// The natural pairing `M x N -> Z`.
pub fn pairing(m: &LatticePoint, v: &DualVector) -> Result<BigInt> {
    if m.rank() != v.rank() {
        return Err(Error::DimensionMismatch {
            expected: m.rank(),
            found: v.rank(),
        });
    }
    Ok(dot(m.coords(), v.coords()))
}

/// Pairing for vectors already known to share a rank.
pub(crate) fn pair<V: LatticeVector>(a: &V, b: &V::Dual) -> BigInt {
    debug_assert_eq!(a.rank(), b.rank());
    dot(a.coords(), b.coords())
}

/// `v` divided by the gcd of its entries.
pub fn primitive_vector<V: LatticeVector>(v: &V) -> Result<V> {
    v.primitive()
}

/// True if every entry is non-negative.
pub fn is_nonnegative(coords: &[BigInt]) -> bool {
    coords.iter().all(|c| !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64s(c)
    }

    fn d(c: &[i64]) -> DualVector {
        DualVector::from_i64s(c)
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&p(&[1, 0]), &d(&[0, 1])).unwrap(), BigInt::from(0));
        assert_eq!(pairing(&p(&[1, 2]), &d(&[0, 1])).unwrap(), BigInt::from(2));
        assert_eq!(pairing(&p(&[1, 0]), &d(&[2, -1])).unwrap(), BigInt::from(2));
    }

    #[test]
    fn pairing_rank_mismatch() {
        assert!(matches!(
            pairing(&p(&[1, 0]), &d(&[1, 0, 0])),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive_vector(&p(&[2, 4])).unwrap(), p(&[1, 2]));
        assert_eq!(primitive_vector(&p(&[0, 3])).unwrap(), p(&[0, 1]));
        assert_eq!(primitive_vector(&d(&[1, -1])).unwrap(), d(&[1, -1]));
        assert_eq!(primitive_vector(&d(&[-6, 4])).unwrap(), d(&[-3, 2]));
        assert!(matches!(
            primitive_vector(&p(&[0, 0])),
            Err(Error::ZeroVector(_))
        ));
    }

    #[test]
    fn display_is_compact() {
        assert_eq!(p(&[1, -2, 0]).to_string(), "(1,-2,0)");
    }
}
