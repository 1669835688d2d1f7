//! Rank two: exact description of a planar monoid as a module over the
//! submonoid generated by the first generators on the two boundary rays.
//!
//! With `a1 = c1 r1`, `a2 = c2 r2`, every lattice point of the cone is uniquely
//! `x + i a1 + j a2` with `x` in the half-open parallelogram spanned by `a1, a2`
//! and `i, j >= 0`. For each residue `x` the pairs `(i, j)` landing in the monoid
//! form an upper set of `N^2`, stored by its finitely many minimal elements.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cone::points::lattice_points_in_hull_box;
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticeVector};
use num_rational::BigRational;

fn det(a: &LatticePoint, b: &LatticePoint) -> BigInt {
    let (a, b) = (a.coords(), b.coords());
    &a[0] * &b[1] - &a[1] * &b[0]
}

#[derive(Clone, Debug)]
pub(crate) struct Planar {
    rays: [LatticePoint; 2],
    a: [LatticePoint; 2],
    steps: [BigInt; 2],
    d: BigInt,
    sign: BigInt,
    reps: Vec<LatticePoint>,
    index: HashMap<LatticePoint, usize>,
    // minimal elements per residue, sorted by i ascending (so j descending)
    minimal: Vec<Vec<(i64, i64)>>,
}

/// A maximal progression `base + k * step * rays[ray]`, `k >= 0`, of holes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Progression {
    pub base: LatticePoint,
    pub ray: usize,
    pub step: BigInt,
}

impl Planar {
    /// `rays` are the primitive extremal rays of the cone spanned by `generators`.
    pub fn new(generators: &[LatticePoint], rays: [LatticePoint; 2]) -> Result<Self> {
        let mut a = Vec::with_capacity(2);
        let mut steps = Vec::with_capacity(2);
        for r in &rays {
            let c = generators
                .iter()
                .filter_map(|g| {
                    if !det(r, g).is_zero() {
                        return None;
                    }
                    let k = (0..2).find(|&t| !r.coords()[t].is_zero()).unwrap();
                    Some(&g.coords()[k] / &r.coords()[k])
                })
                .filter(|c| c.is_positive())
                .min()
                .ok_or_else(|| Error::Internal(format!("no generator on ray {r}")))?;
            a.push(r.scaled(&c));
            steps.push(c);
        }
        let a: [LatticePoint; 2] = [a[0].clone(), a[1].clone()];
        let det_a = det(&a[0], &a[1]);
        let sign = det_a.signum();
        let d = det_a.abs();

        // residues: lattice points of the half-open parallelogram
        let corners: Vec<Vec<BigRational>> = [
            LatticePoint::zero(2),
            a[0].clone(),
            a[1].clone(),
            &a[0] + &a[1],
        ]
        .iter()
        .map(|p| p.coords().iter().map(|c| BigRational::from(c.clone())).collect())
        .collect();
        let mut planar = Planar {
            rays,
            a,
            steps: [steps[0].clone(), steps[1].clone()],
            d,
            sign,
            reps: Vec::new(),
            index: HashMap::new(),
            minimal: Vec::new(),
        };
        let reps: Vec<LatticePoint> = lattice_points_in_hull_box(2, &corners, |x| {
            let y = LatticePoint::new(x.to_vec());
            let (s, t) = planar.st(&y);
            !s.is_negative() && s < planar.d && !t.is_negative() && t < planar.d
        })
        .into_iter()
        .map(LatticePoint::new)
        .collect();
        if BigInt::from(reps.len()) != planar.d {
            return Err(Error::Internal("residue count differs from the index".into()));
        }
        planar.index = reps.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        planar.minimal = vec![Vec::new(); reps.len()];
        planar.reps = reps;
        planar.close(generators)?;
        Ok(planar)
    }

    /// Numerators of the coordinates in the basis `a1, a2` (denominator `d`).
    fn st(&self, y: &LatticePoint) -> (BigInt, BigInt) {
        (
            &self.sign * det(y, &self.a[1]),
            &self.sign * det(&self.a[0], y),
        )
    }

    /// `(residue, i, j)` with `y = rep + i a1 + j a2`; `i, j` may be negative.
    fn decompose(&self, y: &LatticePoint) -> (usize, BigInt, BigInt) {
        let (s, t) = self.st(y);
        let i = s.div_floor(&self.d);
        let j = t.div_floor(&self.d);
        let x = y - &(&self.a[0].scaled(&i) + &self.a[1].scaled(&j));
        (self.index[&x], i, j)
    }

    fn compose(&self, class: usize, i: &BigInt, j: &BigInt) -> LatticePoint {
        &self.reps[class] + &(&self.a[0].scaled(i) + &self.a[1].scaled(j))
    }

    fn in_upper(&self, class: usize, i: &BigInt, j: &BigInt) -> bool {
        self.minimal[class]
            .iter()
            .any(|&(mi, mj)| BigInt::from(mi) <= *i && BigInt::from(mj) <= *j)
    }

    fn close(&mut self, generators: &[LatticePoint]) -> Result<()> {
        let mut queue = VecDeque::new();
        let zero = self.index[&LatticePoint::zero(2)];
        self.minimal[zero].push((0, 0));
        queue.push_back((zero, 0i64, 0i64));
        let small = |v: BigInt| {
            v.to_i64()
                .filter(|v| v.abs() < 1 << 40)
                .ok_or_else(|| Error::Unsupported("planar structure too large".into()))
        };
        while let Some((c, i, j)) = queue.pop_front() {
            if !self.minimal[c].contains(&(i, j)) {
                continue;
            }
            let y = self.compose(c, &BigInt::from(i), &BigInt::from(j));
            for g in generators {
                let (c2, i2, j2) = self.decompose(&(&y + g));
                let (i2, j2) = (small(i2)?, small(j2)?);
                let mins = &mut self.minimal[c2];
                if mins.iter().any(|&(a, b)| a <= i2 && b <= j2) {
                    continue;
                }
                mins.retain(|&(a, b)| !(i2 <= a && j2 <= b));
                mins.push((i2, j2));
                mins.sort();
                queue.push_back((c2, i2, j2));
            }
        }
        Ok(())
    }

    pub fn rays(&self) -> &[LatticePoint; 2] {
        &self.rays
    }

    pub fn contains(&self, y: &LatticePoint) -> bool {
        let (c, i, j) = self.decompose(y);
        !i.is_negative() && !j.is_negative() && self.in_upper(c, &i, &j)
    }

    fn imin(&self, c: usize) -> i64 {
        self.minimal[c][0].0
    }

    fn jmin(&self, c: usize) -> i64 {
        self.minimal[c].last().unwrap().1
    }

    /// Number of infinite hole progressions along `ray` is zero.
    pub fn ray_facet_almost_saturated(&self, ray: usize) -> bool {
        (0..self.reps.len()).all(|c| if ray == 0 { self.jmin(c) == 0 } else { self.imin(c) == 0 })
    }

    /// All maximal infinite progressions of holes, merged to step one where
    /// every residue along the line is present.
    pub fn progressions(&self) -> Vec<Progression> {
        let mut out = Vec::new();
        for ray in 0..2 {
            // line key (the other coordinate) -> bases with first coordinate in [0, 1)
            let mut lines: BTreeMap<BigInt, Vec<(BigInt, LatticePoint)>> = BTreeMap::new();
            for c in 0..self.reps.len() {
                let limit = if ray == 0 { self.jmin(c) } else { self.imin(c) };
                for k in 0..limit {
                    let k = BigInt::from(k);
                    let base = if ray == 0 {
                        self.compose(c, &BigInt::zero(), &k)
                    } else {
                        self.compose(c, &k, &BigInt::zero())
                    };
                    let (s, t) = self.st(&base);
                    let (along, key) = if ray == 0 { (s, t) } else { (t, s) };
                    lines.entry(key).or_default().push((along, base));
                }
            }
            for (_, mut bases) in lines {
                bases.sort();
                if BigInt::from(bases.len()) == self.steps[ray] {
                    out.push(Progression {
                        base: bases[0].1.clone(),
                        ray,
                        step: BigInt::from(1),
                    });
                } else {
                    for (_, base) in bases {
                        out.push(Progression {
                            base,
                            ray,
                            step: self.steps[ray].clone(),
                        });
                    }
                }
            }
        }
        out.sort_by(|x, y| (x.ray, &x.base).cmp(&(y.ray, &y.base)));
        out
    }

    /// Holes lying on no infinite progression (a finite set), sorted.
    pub fn isolated_holes(&self) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        for c in 0..self.reps.len() {
            let mins = &self.minimal[c];
            let (i0, j0) = (self.imin(c), self.jmin(c));
            let i1 = mins.last().unwrap().0;
            let j1 = mins[0].1;
            for i in i0..i1 {
                for j in j0..j1 {
                    let (bi, bj) = (BigInt::from(i), BigInt::from(j));
                    if !self.in_upper(c, &bi, &bj) {
                        out.push(self.compose(c, &bi, &bj));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// A hole of `p + cone`, or `None` if `p` is a saturation point (`p` in the cone).
    pub fn hole_in_translate(&self, p: &LatticePoint) -> Option<LatticePoint> {
        let (sp, tp) = self.st(p);
        let mut best: Option<LatticePoint> = None;
        for c in 0..self.reps.len() {
            let (sx, tx) = self.st(&self.reps[c]);
            let i = (&sp - sx).div_ceil(&self.d).max(BigInt::zero());
            let j = (&tp - tx).div_ceil(&self.d).max(BigInt::zero());
            if !self.in_upper(c, &i, &j) {
                let h = self.compose(c, &i, &j);
                if best.as_ref().is_none_or(|b| h < *b) {
                    best = Some(h);
                }
            }
        }
        best
    }

    /// Least multiple of `rays[ray]` that is a saturation point, if the ray's
    /// facet is almost saturated.
    pub fn saturation_point_on_ray(&self, ray: usize) -> Option<LatticePoint> {
        if !self.ray_facet_almost_saturated(ray) {
            return None;
        }
        let r = &self.rays[ray];
        let mut p = LatticePoint::zero(2);
        loop {
            if self.contains(&p) && self.hole_in_translate(&p).is_none() {
                return Some(p);
            }
            p = &p + r;
        }
    }

    /// True iff `h + k rays[ray]` is a hole for every `k >= 0`; otherwise the
    /// least member of that progression.
    pub fn propagates(&self, h: &LatticePoint, ray: usize) -> std::result::Result<(), LatticePoint> {
        let r = &self.rays[ray];
        let mut ok = true;
        let mut q = h.clone();
        let mut k = BigInt::zero();
        while k < self.steps[ray] {
            let (c, i, j) = self.decompose(&q);
            let full = if ray == 0 {
                j < BigInt::from(self.jmin(c))
            } else {
                i < BigInt::from(self.imin(c))
            };
            if i.is_negative() || j.is_negative() || !full {
                ok = false;
                break;
            }
            q = &q + r;
            k += 1;
        }
        if ok {
            return Ok(());
        }
        let mut q = h.clone();
        loop {
            if self.contains(&q) {
                return Err(q);
            }
            q = &q + r;
        }
    }

    /// A member `p` with `p + e` a hole, if one exists.
    pub fn descent_failure(&self, e: &LatticePoint) -> Option<LatticePoint> {
        let mut best: Option<LatticePoint> = None;
        for c in 0..self.reps.len() {
            for &(mi, mj) in &self.minimal[c] {
                let pm = self.compose(c, &BigInt::from(mi), &BigInt::from(mj));
                let (c2, i0, j0) = self.decompose(&(&pm + e));
                let i = i0.clone().max(BigInt::zero());
                let j = j0.clone().max(BigInt::zero());
                if !self.in_upper(c2, &i, &j) {
                    let k = (-i0).max(BigInt::zero());
                    let l = (-j0).max(BigInt::zero());
                    let p = &pm + &(&self.a[0].scaled(&k) + &self.a[1].scaled(&l));
                    if best.as_ref().is_none_or(|b| p < *b) {
                        best = Some(p);
                    }
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> LatticePoint {
        LatticePoint::from_i64s(c)
    }

    fn planar(gens: &[&[i64]], rays: [&[i64]; 2]) -> Planar {
        let g: Vec<_> = gens.iter().map(|c| p(c)).collect();
        Planar::new(&g, [p(rays[0]), p(rays[1])]).unwrap()
    }

    #[test]
    fn row_of_holes() {
        let s = planar(&[&[1, 0], &[0, 2], &[0, 3]], [&[0, 1], &[1, 0]]);
        assert!(s.contains(&p(&[3, 2])));
        assert!(!s.contains(&p(&[2, 1])));
        assert_eq!(
            s.progressions(),
            vec![Progression {
                base: p(&[0, 1]),
                ray: 1,
                step: BigInt::from(1)
            }]
        );
        assert!(s.isolated_holes().is_empty());
        assert!(s.ray_facet_almost_saturated(0));
        assert!(!s.ray_facet_almost_saturated(1));
        assert_eq!(s.saturation_point_on_ray(0), Some(p(&[0, 2])));
        assert_eq!(s.hole_in_translate(&p(&[1, 0])), Some(p(&[1, 1])));
        assert_eq!(s.propagates(&p(&[0, 1]), 1), Ok(()));
        assert_eq!(s.descent_failure(&p(&[-1, 0])), None);
        assert_eq!(s.descent_failure(&p(&[-1, 1])), Some(p(&[1, 0])));
    }

    #[test]
    fn broken_series() {
        let s = planar(
            &[&[1, 0], &[1, 2], &[0, 3], &[0, 4], &[0, 5]],
            [&[0, 1], &[1, 0]],
        );
        assert_eq!(s.isolated_holes(), vec![p(&[0, 2])]);
        assert_eq!(s.progressions().len(), 1);
        assert_eq!(s.saturation_point_on_ray(0), Some(p(&[0, 3])));
        assert_eq!(s.propagates(&p(&[0, 2]), 1), Err(p(&[1, 2])));
    }

    #[test]
    fn saturated_cone() {
        let s = planar(&[&[1, 0], &[1, 1], &[1, 2]], [&[1, 0], &[1, 2]]);
        assert!(s.progressions().is_empty());
        assert!(s.isolated_holes().is_empty());
        assert_eq!(s.saturation_point_on_ray(0), Some(p(&[0, 0])));
    }

    #[test]
    fn step_two_progression() {
        // (1,0) is missing from the boundary ray, only (2,0) and (3,0)
        let s = planar(&[&[2, 0], &[3, 0], &[0, 1], &[1, 1]], [&[0, 1], &[1, 0]]);
        assert!(!s.contains(&p(&[1, 0])));
        assert!(s.contains(&p(&[1, 1])));
        assert!(s.progressions().is_empty());
        assert_eq!(s.isolated_holes(), vec![p(&[1, 0])]);
    }
}
