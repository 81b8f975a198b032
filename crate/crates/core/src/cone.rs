//! Rational polyhedral cones: double description and Hilbert bases.
//!
//! Cones are given in a fixed lattice `Z^n`, either by generators or by a
//! system of homogeneous inequalities `a . x >= 0`.

use num_integer::Integer;

use crate::par;
use crate::vector::{self, Vector};

/// Extreme rays and lineality of `{x in Q^n : a . x >= 0 for all a}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DoubleDescription {
    /// Primitive integral extreme rays of the cone modulo its lineality
    /// space, sorted.
    pub rays: Vec<Vector>,
    /// Integral basis of the lineality space (not necessarily saturated).
    pub lineality: Vec<Vector>,
}

fn primitive128(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

fn dot(a: &[i64], x: &[i128]) -> i128 {
    a.iter().zip(x).map(|(&p, &q)| p as i128 * q).sum()
}

fn combine(alpha: i128, x: &[i128], beta: i128, y: &[i128]) -> Vec<i128> {
    let mut out: Vec<i128> = x
        .iter()
        .zip(y)
        .map(|(&p, &q)| {
            alpha
                .checked_mul(p)
                .and_then(|s| beta.checked_mul(q).and_then(|t| s.checked_sub(t)))
                .expect("double description overflow")
        })
        .collect();
    primitive128(&mut out);
    out
}

fn to_i64(v: &[i128]) -> Vector {
    v.iter()
        .map(|&x| i64::try_from(x).expect("double description overflow"))
        .collect()
}

/// Double description of the cone cut out by `inequalities` in `Q^dim`.
///
/// Constraints are added one at a time; lineality directions are consumed
/// first, and rays are combined only across pairs that pass the
/// combinatorial adjacency test.
pub fn double_description(dim: usize, inequalities: &[Vector]) -> DoubleDescription {
    let mut lineality: Vec<Vec<i128>> = (0..dim)
        .map(|i| (0..dim).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut rays: Vec<Vec<i128>> = Vec::new();

    for (c, a) in inequalities.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| dot(a, l) != 0) {
            let mut l = lineality.remove(pos);
            if dot(a, &l) < 0 {
                l.iter_mut().for_each(|x| *x = -*x);
            }
            let al = dot(a, &l);
            for other in lineality.iter_mut() {
                let ao = dot(a, other);
                if ao != 0 {
                    *other = combine(al, other, ao, &l);
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, r);
                if ar != 0 {
                    *r = combine(al, r, ar, &l);
                }
            }
            rays.push(l);
            continue;
        }
        let processed = &inequalities[..=c];
        let values: Vec<i128> = rays.iter().map(|r| dot(a, r)).collect();
        let zero_sets: Vec<Vec<bool>> = rays
            .iter()
            .map(|r| processed[..c].iter().map(|b| dot(b, r) == 0).collect())
            .collect();
        let mut next: Vec<Vec<i128>> = Vec::new();
        for (r, &v) in rays.iter().zip(&values) {
            if v >= 0 {
                next.push(r.clone());
            }
        }
        for (p, &vp) in values.iter().enumerate() {
            if vp <= 0 {
                continue;
            }
            for (n, &vn) in values.iter().enumerate() {
                if vn >= 0 {
                    continue;
                }
                let common: Vec<bool> = zero_sets[p]
                    .iter()
                    .zip(&zero_sets[n])
                    .map(|(x, y)| *x && *y)
                    .collect();
                let blocked = (0..rays.len()).any(|o| {
                    o != p
                        && o != n
                        && common
                            .iter()
                            .zip(&zero_sets[o])
                            .all(|(need, have)| !*need || *have)
                });
                if !blocked {
                    next.push(combine(vp, &rays[n], vn, &rays[p]));
                }
            }
        }
        rays = next;
    }

    let mut rays: Vec<Vector> = rays.iter().map(|r| to_i64(r)).collect();
    rays.sort();
    rays.dedup();
    DoubleDescription {
        rays,
        lineality: lineality.iter().map(|l| to_i64(l)).collect(),
    }
}

/// Primitive inner facet normals of the cone generated by `gens`, which must
/// span `Q^dim`. Sorted lexicographically.
pub fn facets_of_generated(dim: usize, gens: &[Vector]) -> Vec<Vector> {
    let dd = double_description(dim, gens);
    assert!(
        dd.lineality.is_empty(),
        "generators do not span the ambient space"
    );
    dd.rays
}

/// Hilbert basis of the pointed full-dimensional cone
/// `{x in Z^dim : a . x >= 0}` with the given extreme rays.
///
/// Every Hilbert basis element lies in the half-open parallelepiped of some
/// simplicial subcone, so its weight (sum of the inequalities) is bounded by
/// the sum of the `dim` largest ray weights. All lattice points of the cone
/// up to that weight are enumerated and then reduced in weight order.
/// Returned sorted by (weight, lex).
pub fn hilbert_basis(dim: usize, inequalities: &[Vector], rays: &[Vector]) -> Vec<Vector> {
    if dim == 0 {
        return Vec::new();
    }
    let weight: Vector = (0..dim)
        .map(|j| inequalities.iter().map(|a| a[j]).sum())
        .collect();
    let mut ray_weights: Vec<i64> = rays.iter().map(|r| vector::dot(&weight, r)).collect();
    ray_weights.sort_unstable_by(|a, b| b.cmp(a));
    let bound: i64 = ray_weights.iter().take(dim).sum();

    // coordinate box containing {x in cone : weight . x <= bound}
    let mut lo = vec![0i64; dim];
    let mut hi = vec![0i64; dim];
    for r in rays {
        let w = vector::dot(&weight, r);
        for c in 0..dim {
            let ext = Integer::div_floor(&(bound * r[c]), &w);
            let ext_hi = Integer::div_ceil(&(bound * r[c]), &w);
            lo[c] = lo[c].min(ext);
            hi[c] = hi[c].max(ext_hi);
        }
    }

    let in_cone = |x: &[i64]| inequalities.iter().all(|a| vector::dot(a, x) >= 0);
    let firsts: Vec<i64> = (lo[0]..=hi[0]).collect();
    let slices: Vec<Vec<(i64, Vector)>> = par::map(&firsts, |&x0| {
        let mut out = Vec::new();
        let mut x = lo.clone();
        x[0] = x0;
        loop {
            let w = vector::dot(&weight, &x);
            if w > 0 && w <= bound && in_cone(&x) {
                out.push((w, x.clone()));
            }
            // odometer over coordinates 1..dim
            let mut c = 1;
            loop {
                if c == dim {
                    return out;
                }
                if x[c] < hi[c] {
                    x[c] += 1;
                    break;
                }
                x[c] = lo[c];
                c += 1;
            }
        }
    });
    let mut candidates: Vec<(i64, Vector)> = slices.into_iter().flatten().collect();
    candidates.sort();

    let mut basis: Vec<Vector> = Vec::new();
    for (_, x) in candidates {
        let reducible = basis.iter().any(|h| in_cone(&vector::sub(&x, h)));
        if !reducible {
            basis.push(x);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrant() {
        let dd = double_description(2, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(dd.rays, vec![vec![0, 1], vec![1, 0]]);
        assert!(dd.lineality.is_empty());
    }

    #[test]
    fn half_plane_keeps_lineality() {
        let dd = double_description(2, &[vec![1, 0]]);
        assert_eq!(dd.rays, vec![vec![1, 0]]);
        assert_eq!(dd.lineality.len(), 1);
    }

    #[test]
    fn facets_of_paper_cone() {
        // cone over (0,1) and (2,-1)
        let f = facets_of_generated(2, &[vec![0, 1], vec![1, 0], vec![2, -1]]);
        assert_eq!(f, vec![vec![1, 0], vec![1, 2]]);
    }

    #[test]
    fn whole_space_has_no_facets() {
        assert!(facets_of_generated(1, &[vec![1], vec![-1]]).is_empty());
    }

    #[test]
    fn square_pyramid_has_four_facets() {
        let gens = vec![vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]];
        let f = facets_of_generated(3, &gens);
        assert_eq!(f.len(), 4);
        let dd = double_description(3, &f);
        let mut expected = gens.clone();
        expected.sort();
        assert_eq!(dd.rays, expected);
    }

    #[test]
    fn hilbert_bases() {
        let ineq = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(
            hilbert_basis(2, &ineq, &[vec![1, 0], vec![0, 1]]),
            vec![vec![0, 1], vec![1, 0]]
        );
        // cone over (1,0),(1,2): needs (1,1)
        let ineq = vec![vec![0, 1], vec![2, -1]];
        let hb = hilbert_basis(2, &ineq, &[vec![1, 0], vec![1, 2]]);
        assert_eq!(hb, vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
    }
}
