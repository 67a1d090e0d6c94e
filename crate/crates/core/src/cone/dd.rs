use num_traits::{Signed, Zero};

use crate::linalg::{IntVector, RatMatrix};

/// Extreme rays of the cone {y ∈ Q^d : a·y ≥ 0 for every constraint a},
/// by the double description method with the algebraic adjacency test.
///
/// The constraint system must have rank d, which makes the solution cone
/// pointed; every caller here constructs such systems (duals of
/// full-dimensional cones, or orthant restrictions of spanning bases).
/// Rays are returned primitive and lexicographically sorted.
pub fn extreme_rays_from_inequalities(constraints: &[IntVector], dim: usize) -> Vec<IntVector> {
    if dim == 0 {
        return Vec::new();
    }
    // Clean: drop zero rows, dedup by primitive form, deterministic order.
    let mut cleaned: Vec<IntVector> = Vec::new();
    for c in constraints {
        if c.is_zero() {
            continue;
        }
        let p = c.primitive().expect("nonzero");
        if !cleaned.contains(&p) {
            cleaned.push(p);
        }
    }
    cleaned.sort();
    assert_eq!(
        RatMatrix::from_int_rows(&cleaned).rank(),
        dim,
        "constraint system must have full rank (pointed solution cone)"
    );

    // Initial simplicial cone from d linearly independent constraints.
    let mut processed: Vec<usize> = Vec::new();
    let mut remaining: Vec<usize> = Vec::new();
    for i in 0..cleaned.len() {
        if processed.len() < dim {
            let mut trial: Vec<IntVector> = processed.iter().map(|&j| cleaned[j].clone()).collect();
            trial.push(cleaned[i].clone());
            if RatMatrix::from_int_rows(&trial).rank() == trial.len() {
                processed.push(i);
                continue;
            }
        }
        remaining.push(i);
    }
    debug_assert_eq!(processed.len(), dim);

    // Rays of the initial cone: solutions of M·r = e_j for the square
    // system M of picked constraints.
    let m = RatMatrix::from_int_rows(
        &processed
            .iter()
            .map(|&j| cleaned[j].clone())
            .collect::<Vec<_>>(),
    );
    let mut rays: Vec<IntVector> = Vec::new();
    for j in 0..dim {
        let e = IntVector::unit(dim, j).to_rational();
        let sol = m.solve(&e).expect("square invertible system");
        rays.push(clear_denominators(&sol));
    }

    for &ci in &remaining {
        let a = &cleaned[ci];
        let evals: Vec<_> = rays.iter().map(|r| a.dot(r)).collect();
        if evals.iter().all(|v| !v.is_negative()) {
            processed.push(ci);
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| evals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| evals[i].is_negative()).collect();
        let zero: Vec<usize> = (0..rays.len()).filter(|&i| evals[i].is_zero()).collect();

        let mut next: Vec<IntVector> = pos
            .iter()
            .chain(zero.iter())
            .map(|&i| rays[i].clone())
            .collect();
        for &p in &pos {
            for &n in &neg {
                if !adjacent(&cleaned, &processed, &rays[p], &rays[n], dim) {
                    continue;
                }
                let w = &rays[n].scale(&evals[p]) - &rays[p].scale(&evals[n]);
                let w = w.primitive().expect("combination of independent rays");
                if !next.contains(&w) {
                    next.push(w);
                }
            }
        }
        rays = next;
        processed.push(ci);
    }

    rays.sort();
    rays
}

/// Two extreme rays are adjacent iff the constraints tight at both span a
/// subspace of rank d − 2.
fn adjacent(
    constraints: &[IntVector],
    processed: &[usize],
    r1: &IntVector,
    r2: &IntVector,
    dim: usize,
) -> bool {
    let tight: Vec<IntVector> = processed
        .iter()
        .map(|&i| &constraints[i])
        .filter(|a| a.dot(r1).is_zero() && a.dot(r2).is_zero())
        .cloned()
        .collect();
    if dim < 2 {
        return false;
    }
    if tight.is_empty() {
        return dim == 2;
    }
    RatMatrix::from_int_rows(&tight).rank() == dim - 2
}

fn clear_denominators(sol: &[num_rational::BigRational]) -> IntVector {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::One;
    let lcm = sol
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let v = IntVector::new(sol.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
    v.primitive().expect("nonzero ray")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_of_wedge_generators() {
        // {y : y·(1,0) >= 0, y·(1,2) >= 0} has extreme rays (0,1) and (2,-1).
        let rays = extreme_rays_from_inequalities(
            &[IntVector::from_i64(&[1, 0]), IntVector::from_i64(&[1, 2])],
            2,
        );
        assert_eq!(
            rays,
            vec![IntVector::from_i64(&[0, 1]), IntVector::from_i64(&[2, -1])]
        );
    }

    #[test]
    fn quadrant_is_self_dual() {
        let rays = extreme_rays_from_inequalities(
            &[IntVector::from_i64(&[1, 0]), IntVector::from_i64(&[0, 1])],
            2,
        );
        assert_eq!(
            rays,
            vec![IntVector::from_i64(&[0, 1]), IntVector::from_i64(&[1, 0])]
        );
    }

    #[test]
    fn opposite_halfplanes_leave_only_a_line_of_rank_failure() {
        // {y : y >= 0, -y >= 0} in d=1 is {0}: no extreme rays.
        let rays = extreme_rays_from_inequalities(
            &[IntVector::from_i64(&[1]), IntVector::from_i64(&[-1])],
            1,
        );
        assert!(rays.is_empty());
    }

    #[test]
    fn octant_in_three_dimensions() {
        let rays = extreme_rays_from_inequalities(
            &[
                IntVector::from_i64(&[1, 0, 0]),
                IntVector::from_i64(&[0, 1, 0]),
                IntVector::from_i64(&[0, 0, 1]),
            ],
            3,
        );
        assert_eq!(rays.len(), 3);
    }

    #[test]
    fn redundant_constraints_do_not_add_rays() {
        let rays = extreme_rays_from_inequalities(
            &[
                IntVector::from_i64(&[1, 0]),
                IntVector::from_i64(&[0, 1]),
                IntVector::from_i64(&[1, 1]),
                IntVector::from_i64(&[2, 1]),
            ],
            2,
        );
        assert_eq!(rays.len(), 2);
    }

    #[test]
    fn square_pyramid_dual_has_four_rays() {
        // Constraints are the four generators of a 3d cone over a square.
        let rays = extreme_rays_from_inequalities(
            &[
                IntVector::from_i64(&[1, 0, 1]),
                IntVector::from_i64(&[0, 1, 1]),
                IntVector::from_i64(&[-1, 0, 1]),
                IntVector::from_i64(&[0, -1, 1]),
            ],
            3,
        );
        assert_eq!(rays.len(), 4, "rays: {rays:?}");
        for r in &rays {
            // Every dual ray is tight on at least two generators.
            let gens = [
                IntVector::from_i64(&[1, 0, 1]),
                IntVector::from_i64(&[0, 1, 1]),
                IntVector::from_i64(&[-1, 0, 1]),
                IntVector::from_i64(&[0, -1, 1]),
            ];
            let tight = gens.iter().filter(|g| g.dot(r).is_zero()).count();
            assert!(tight >= 2);
        }
    }
}
