use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::vector::{dot, DualVector, LatticePoint, LatticeVector};
use crate::error::{Error, Result};

/// Exact non-negative integer feasibility `sum x_i g_i = target`.
///
/// Depth-first search over generator indices in non-decreasing order, pruned by
/// the degree of the remaining target under a grading that is strictly positive
/// on every generator. Sub-results are memoised, so one solver can answer many
/// queries against the same generator list cheaply.
pub struct NonnegativeSolver {
    generators: Vec<LatticePoint>,
    degrees: Vec<BigInt>,
    grading: DualVector,
    cone_normals: Vec<DualVector>,
    // (target, first usable generator) -> generator taken first, or None if infeasible
    memo: HashMap<(LatticePoint, usize), Option<usize>>,
}

impl NonnegativeSolver {
    pub fn new(generators: &[LatticePoint], grading: &DualVector) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyGenerators)?;
        let n = first.rank();
        if grading.rank() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: grading.rank(),
            });
        }
        let mut degrees = Vec::with_capacity(generators.len());
        for g in generators {
            if g.rank() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.rank(),
                });
            }
            let deg = dot(g.coords(), grading.coords());
            if !deg.is_positive() {
                return Err(Error::Unsupported(format!(
                    "generator {g} has non-positive degree {deg} under grading {grading}"
                )));
            }
            degrees.push(deg);
        }
        Ok(NonnegativeSolver {
            generators: generators.to_vec(),
            degrees,
            grading: grading.clone(),
            cone_normals: Vec::new(),
            memo: HashMap::new(),
        })
    }

    /// Additional pruning: every partial remainder must satisfy `<x, n> >= 0`
    /// for each supplied normal (valid when the generators do).
    pub fn with_cone_normals(mut self, normals: &[DualVector]) -> Self {
        self.cone_normals = normals.to_vec();
        self
    }

    pub fn generators(&self) -> &[LatticePoint] {
        &self.generators
    }

    pub fn is_feasible(&mut self, target: &LatticePoint) -> bool {
        self.search(target, 0)
    }

    pub fn solve(&mut self, target: &LatticePoint) -> Option<Vec<BigInt>> {
        if !self.search(target, 0) {
            return None;
        }
        let mut coeffs = vec![BigInt::zero(); self.generators.len()];
        let mut cur = target.clone();
        let mut start = 0;
        while let Some(Some(i)) = self.memo.get(&(cur.clone(), start)).cloned() {
            coeffs[i] += 1;
            cur = &cur - &self.generators[i];
            start = i;
        }
        debug_assert!(cur.is_zero());
        Some(coeffs)
    }

    fn search(&mut self, target: &LatticePoint, start: usize) -> bool {
        if target.is_zero() {
            return true;
        }
        let deg = dot(target.coords(), self.grading.coords());
        if !deg.is_positive() {
            return false;
        }
        if self
            .cone_normals
            .iter()
            .any(|n| dot(target.coords(), n.coords()).is_negative())
        {
            return false;
        }
        let key = (target.clone(), start);
        if let Some(hit) = self.memo.get(&key) {
            return hit.is_some();
        }
        let mut found = None;
        for i in start..self.generators.len() {
            if self.degrees[i] > deg {
                continue;
            }
            let rest = target - &self.generators[i];
            if self.search(&rest, i) {
                found = Some(i);
                break;
            }
        }
        self.memo.insert(key, found);
        found.is_some()
    }
}

/// Non-negative integer coefficients `x` with `sum x_i g_i = target`, or `None`.
///
/// `grading` must be strictly positive on every generator; otherwise the search
/// would not be finite and an unsupported-input error is returned.
pub fn solve_nonnegative(
    generators: &[LatticePoint],
    target: &LatticePoint,
    grading: &DualVector,
) -> Result<Option<Vec<BigInt>>> {
    let mut solver = NonnegativeSolver::new(generators, grading)?;
    if target.rank() != grading.rank() {
        return Err(Error::DimensionMismatch {
            expected: grading.rank(),
            found: target.rank(),
        });
    }
    Ok(solver.solve(target))
}
