//! Rank one: numerical semigroups.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticeVector};

/// A submonoid of `Z_{>=0}` with finite complement, stored by its gaps.
#[derive(Clone, Debug)]
pub(crate) struct Numerical {
    gaps: BTreeSet<i64>,
}

impl Numerical {
    /// `generators` are positive integers with gcd one.
    pub fn new(generators: &[BigInt]) -> Result<Self> {
        let gens: Vec<i64> = generators
            .iter()
            .map(|g| {
                g.to_i64()
                    .filter(|&v| v > 0 && v < 1 << 20)
                    .ok_or_else(|| Error::Unsupported(format!("rank-one generator {g} out of range")))
            })
            .collect::<Result<_>>()?;
        let g = gens.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::Internal(format!("rank-one generators have gcd {g}")));
        }
        let min = *gens.iter().min().unwrap();
        let max = *gens.iter().max().unwrap();
        // every integer >= min*max is representable
        let limit = (min * max) as usize;
        let mut member = vec![false; limit + 1];
        member[0] = true;
        for v in 1..=limit {
            member[v] = gens.iter().any(|&g| v as i64 >= g && member[v - g as usize]);
        }
        let gaps = (0..=limit).filter(|&v| !member[v]).map(|v| v as i64).collect();
        Ok(Numerical { gaps })
    }

    pub fn gaps(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.gaps.iter().map(|&g| LatticePoint::from_i64s(&[g]))
    }

    pub fn is_saturated(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn contains(&self, y: &LatticePoint) -> bool {
        let v = &y.coords()[0];
        if v.is_negative() {
            return false;
        }
        match v.to_i64() {
            Some(v) => !self.gaps.contains(&v),
            None => true,
        }
    }

    /// The least hole in `p + Z_{>=0}`, if any.
    pub fn hole_above(&self, p: &LatticePoint) -> Option<LatticePoint> {
        let v = &p.coords()[0];
        self.gaps
            .iter()
            .find(|&&g| BigInt::from(g) >= *v)
            .map(|&g| LatticePoint::from_i64s(&[g]))
    }

    /// Conductor: the least saturation point.
    #[cfg(test)]
    pub fn conductor(&self) -> BigInt {
        self.gaps.last().map_or_else(|| BigInt::from(0), |&g| BigInt::from(g) + 1)
    }

    /// A member `p` with `p + e` a hole, if one exists.
    pub fn descent_failure(&self, e: &LatticePoint) -> Option<LatticePoint> {
        let e = &e.coords()[0];
        self.gaps.iter().find_map(|&h| {
            let p = LatticePoint::new(vec![BigInt::from(h) - e]);
            self.contains(&p).then_some(p)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_has_one_gap() {
        let n = Numerical::new(&[BigInt::from(2), BigInt::from(3)]).unwrap();
        assert_eq!(n.gaps().collect::<Vec<_>>(), vec![LatticePoint::from_i64s(&[1])]);
        assert_eq!(n.conductor(), BigInt::from(2));
        // shifting 2 down by one lands on the gap
        assert_eq!(
            n.descent_failure(&LatticePoint::from_i64s(&[-1])),
            Some(LatticePoint::from_i64s(&[2]))
        );
    }

    #[test]
    fn frobenius_of_three_generators() {
        let n = Numerical::new(&[BigInt::from(6), BigInt::from(9), BigInt::from(20)]).unwrap();
        assert_eq!(n.conductor(), BigInt::from(44));
    }

    #[test]
    fn line_is_saturated() {
        let n = Numerical::new(&[BigInt::from(1)]).unwrap();
        assert!(n.is_saturated());
        assert_eq!(n.descent_failure(&LatticePoint::from_i64s(&[-1])), None);
    }
}
