//! Double description: generators of `{x : a_i · x >= 0}` from the inequalities,
//! in exact integer arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{dot, make_primitive, rank_of_rows};

/// Generators of a polyhedral cone: `lin(lineality) + cone(rays)`.
#[derive(Clone, Debug, Default)]
pub(crate) struct ConeGenerators {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

/// `(a·p) q - (a·q) p`, made primitive.
fn combine(a_p: &BigInt, q: &[BigInt], a_q: &BigInt, p: &[BigInt]) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = q
        .iter()
        .zip(p)
        .map(|(qi, pi)| a_p * qi - a_q * pi)
        .collect();
    make_primitive(&mut v);
    v
}

/// Incremental double description starting from the whole space.
pub(crate) fn generators_of_inequalities(n: usize, inequalities: &[Vec<BigInt>]) -> ConeGenerators {
    let mut lineality: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            e
        })
        .collect();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut processed: Vec<Vec<BigInt>> = Vec::new();

    for a in inequalities {
        assert_eq!(a.len(), n, "inequality of wrong length");
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut a_l0 = dot(a, &l0);
            if a_l0.is_negative() {
                l0.iter_mut().for_each(|c| *c = -&*c);
                a_l0 = -a_l0;
            }
            for l in lineality.iter_mut() {
                let a_l = dot(a, l);
                if !a_l.is_zero() {
                    *l = combine(&a_l0, l, &a_l, &l0);
                }
            }
            for r in rays.iter_mut() {
                let a_r = dot(a, r);
                if !a_r.is_zero() {
                    *r = combine(&a_l0, r, &a_r, &l0);
                }
            }
            rays.push(l0);
        } else {
            let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
            let positive: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
            let negative: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
            if !negative.is_empty() {
                // the current cone {x : processed x >= 0} has lineality of dim n - rank
                let target_rank = rank_of_rows(&processed).saturating_sub(2);
                let zero_set = |r: &[BigInt]| -> Vec<usize> {
                    (0..processed.len())
                        .filter(|&k| dot(&processed[k], r).is_zero())
                        .collect()
                };
                let zero_sets: Vec<Vec<usize>> = rays.iter().map(|r| zero_set(r)).collect();
                let mut fresh = Vec::new();
                for &p in &positive {
                    for &q in &negative {
                        let common: Vec<usize> = zero_sets[p]
                            .iter()
                            .copied()
                            .filter(|k| zero_sets[q].contains(k))
                            .collect();
                        if common.len() < target_rank {
                            continue;
                        }
                        // cheap combinatorial filter before the rank test
                        let dominated = (0..rays.len()).any(|r| {
                            r != p && r != q && common.iter().all(|k| zero_sets[r].contains(k))
                        });
                        if dominated {
                            continue;
                        }
                        let rows: Vec<Vec<BigInt>> =
                            common.iter().map(|&k| processed[k].clone()).collect();
                        if rank_of_rows(&rows) == target_rank {
                            fresh.push(combine(&vals[p], &rays[q], &vals[q], &rays[p]));
                        }
                    }
                }
                let mut next: Vec<Vec<BigInt>> = (0..rays.len())
                    .filter(|&i| !vals[i].is_negative())
                    .map(|i| rays[i].clone())
                    .collect();
                for f in fresh {
                    if !next.contains(&f) {
                        next.push(f);
                    }
                }
                rays = next;
            }
        }
        processed.push(a.clone());
    }
    ConeGenerators { lineality, rays }
}

/// Row-reduced, integer-scaled basis of the span of `vectors` (canonical for the span).
pub(crate) fn canonical_basis(vectors: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = a[rank][col].recip();
        for x in a[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let v = &a[rank][j] * &f;
                    a[r][j] -= v;
                }
            }
        }
        rank += 1;
    }
    a.truncate(rank);
    a.into_iter().map(|row| rational_to_primitive(&row)).collect()
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub(crate) fn rational_to_primitive(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let mut out: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    make_primitive(&mut out);
    out
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`, as a
/// primitive integer vector on the same ray (zero if `v` lies in the span).
pub(crate) fn project_out(v: &[BigInt], basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    if basis.is_empty() {
        let mut out = v.to_vec();
        make_primitive(&mut out);
        return out;
    }
    let k = basis.len();
    // Gram system G c = B v
    let gram: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| BigRational::from(dot(&basis[i], &basis[j])))
                .collect()
        })
        .collect();
    let rhs: Vec<BigRational> = basis.iter().map(|b| BigRational::from(dot(b, v))).collect();
    let c = solve_square(gram, rhs);
    let proj: Vec<BigRational> = (0..v.len())
        .map(|t| {
            let mut x = BigRational::from(v[t].clone());
            for i in 0..k {
                x -= &c[i] * BigRational::from(basis[i][t].clone());
            }
            x
        })
        .collect();
    rational_to_primitive(&proj)
}

fn solve_square(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Gram matrix of a basis is invertible");
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let v = &a[col][j] * &f;
                    a[r][j] -= v;
                }
                let v = &b[col] * &f;
                b[r] -= v;
            }
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(r: &[&[i64]]) -> Vec<Vec<BigInt>> {
        r.iter()
            .map(|x| x.iter().map(|&c| BigInt::from(c)).collect())
            .collect()
    }

    #[test]
    fn quadrant() {
        let g = generators_of_inequalities(2, &rows(&[&[1, 0], &[0, 1]]));
        assert!(g.lineality.is_empty());
        let mut r = g.rays;
        r.sort();
        assert_eq!(r, rows(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn half_plane_keeps_a_line() {
        let g = generators_of_inequalities(2, &rows(&[&[0, 1]]));
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.rays.len(), 1);
    }

    #[test]
    fn square_pyramid_dual() {
        // inequalities are the four rays of the square pyramid; result = its facet normals
        let g = generators_of_inequalities(
            3,
            &rows(&[&[1, 1, 1], &[1, 1, -1], &[1, -1, 1], &[1, -1, -1]]),
        );
        assert!(g.lineality.is_empty());
        let mut r = g.rays;
        r.sort();
        assert_eq!(r, rows(&[&[1, -1, 0], &[1, 0, -1], &[1, 0, 1], &[1, 1, 0]]));
    }

    #[test]
    fn projection() {
        let p = project_out(&rows(&[&[1, 1, 3]])[0], &rows(&[&[0, 0, 1]]));
        assert_eq!(p, rows(&[&[1, 1, 0]])[0]);
    }
}
