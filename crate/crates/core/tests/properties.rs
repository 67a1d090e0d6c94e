//! Property tests for the algebraic substrate: exact linear algebra,
//! cone/monoid consistency, and polynomial ring axioms.

use num_bigint::BigInt;
use proptest::prelude::*;

use monoidkit::cone::Cone;
use monoidkit::linalg::{
    hnf, in_span, integer_coordinates, lattice_intersection, span, IntMatrix, IntVector,
};
use monoidkit::monoid::AffineMonoid;
use monoidkit::poly::{
    bounded_ideal_membership, Domain, Ideal, IdealMembership, SparsePoly,
};

fn ivec(coords: Vec<i64>) -> IntVector {
    IntVector::from_i64(&coords)
}

fn small_vectors(rank: usize, max: i64, count: usize) -> impl Strategy<Value = Vec<IntVector>> {
    prop::collection::vec(
        prop::collection::vec(0..=max, rank).prop_map(|v| IntVector::from_i64(&v)),
        1..=count,
    )
}

fn signed_vectors(rank: usize, max: i64, count: usize) -> impl Strategy<Value = Vec<IntVector>> {
    prop::collection::vec(
        prop::collection::vec(-max..=max, rank).prop_map(|v| IntVector::from_i64(&v)),
        1..=count,
    )
}

fn small_poly(rank: usize) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=4i64, rank), -5..=5i64),
        0..=4,
    )
    .prop_map(move |terms| {
        SparsePoly::from_terms(
            rank,
            Domain::Integers,
            terms
                .into_iter()
                .map(|(e, c)| (IntVector::from_i64(&e), BigInt::from(c))),
        )
        .expect("valid terms")
    })
}

fn natural_poly(rank: usize) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=4i64, rank), 1..=5i64),
        0..=4,
    )
    .prop_map(move |terms| {
        SparsePoly::from_terms(
            rank,
            Domain::Naturals,
            terms
                .into_iter()
                .map(|(e, c)| (IntVector::from_i64(&e), BigInt::from(c))),
        )
        .expect("valid terms")
    })
}

fn is_staircase(h: &IntMatrix) -> bool {
    use num_traits::{Signed, Zero};
    let mut last: Option<usize> = None;
    let mut zero_row_seen = false;
    for i in 0..h.rows() {
        match h.row(i).iter().position(|c| !c.is_zero()) {
            None => zero_row_seen = true,
            Some(p) => {
                if zero_row_seen || last.is_some_and(|lp| p <= lp) || h.get(i, p).is_negative() {
                    return false;
                }
                for j in 0..i {
                    if h.get(j, p).is_negative() || h.get(j, p) >= h.get(i, p) {
                        return false;
                    }
                }
                last = Some(p);
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hnf_transform_is_exact_and_idempotent(rows in signed_vectors(3, 9, 4)) {
        let m = IntMatrix::from_rows(&rows);
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m), h.clone());
        prop_assert!(is_staircase(&h));
        let (h2, u2) = hnf(&h);
        prop_assert_eq!(h2, h);
        prop_assert_eq!(u2, IntMatrix::identity(m.rows()));
    }

    #[test]
    fn span_contains_its_inputs_and_is_order_free(vectors in signed_vectors(3, 6, 4)) {
        let s = span(3, &vectors);
        for v in &vectors {
            prop_assert!(in_span(v, &s));
        }
        let mut reversed = vectors.clone();
        reversed.reverse();
        prop_assert_eq!(span(3, &reversed), s);
    }

    #[test]
    fn lattice_intersection_hits_every_small_point(vectors in signed_vectors(2, 5, 3)) {
        let s = span(2, &vectors);
        let basis = lattice_intersection(&s);
        prop_assert_eq!(basis.len(), s.dim());
        // Every lattice point of the span with coordinates bounded by 10
        // is an integer combination of the computed basis.
        for x in -10i64..=10 {
            for y in -10i64..=10 {
                let p = ivec(vec![x, y]);
                if in_span(&p, &s) {
                    prop_assert!(integer_coordinates(&basis, &p).is_some(),
                        "{p} in span but not in the lattice");
                }
            }
        }
    }

    #[test]
    fn cone_generators_satisfy_their_facets(gens in small_vectors(3, 4, 4)) {
        use num_traits::Signed;
        let cone = Cone::from_generators(3, &gens).unwrap();
        for g in cone.generators() {
            prop_assert!(cone.contains(g));
            for eta in cone.facet_normals() {
                prop_assert!(!eta.dot(g).is_negative());
            }
        }
        // Each facet normal vanishes on at least one extreme ray; for
        // one-dimensional cones the only facet is the apex, which contains
        // no ray.
        use num_traits::Zero;
        if cone.dim() >= 2 {
            for eta in cone.facet_normals() {
                prop_assert!(cone.extreme_rays().iter().any(|r| eta.dot(r).is_zero()));
            }
        }
    }

    #[test]
    fn monoid_membership_is_additive(gens in small_vectors(2, 3, 3), a in 0..=4i64, b in 0..=4i64) {
        let m = AffineMonoid::new(2, &gens).unwrap();
        if let (Some(g1), Some(g2)) = (m.generators().first(), m.generators().last()) {
            let p = &g1.scale(&BigInt::from(a)) + &g2.scale(&BigInt::from(b));
            prop_assert!(m.member(&p));
        }
    }

    #[test]
    fn polynomial_ring_axioms(f in small_poly(2), g in small_poly(2), h in small_poly(2)) {
        let fg = f.add(&g).unwrap();
        prop_assert_eq!(fg.clone(), g.add(&f).unwrap());
        prop_assert_eq!(
            fg.add(&h).unwrap(),
            f.add(&g.add(&h).unwrap()).unwrap()
        );
        let fgm = f.mul(&g).unwrap();
        prop_assert_eq!(fgm.clone(), g.mul(&f).unwrap());
        prop_assert_eq!(
            fgm.mul(&h).unwrap(),
            f.mul(&g.mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
        // Subtraction inverts addition over the integers.
        prop_assert_eq!(f.add(&g).unwrap().sub(&g).unwrap(), f.clone().into_integers());
    }

    #[test]
    fn naturals_domain_is_closed(f in natural_poly(2), g in natural_poly(2)) {
        use num_traits::Signed;
        for result in [f.add(&g).unwrap(), f.mul(&g).unwrap()] {
            prop_assert_eq!(result.domain(), Domain::Naturals);
            prop_assert!(result.terms().all(|(_, c)| c.is_positive()));
        }
    }

    #[test]
    fn polynomial_text_round_trips(f in small_poly(3)) {
        let text = f.to_string();
        let back = SparsePoly::parse(&text, 3, Domain::Integers).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn found_certificates_reverify(c0 in 1..=4i64, e0 in 1..=3i64, k in 0..=3i64, shift in 0..=2i64) {
        // Build f = (k x^shift) · g for g = c0·x^e0, then search for the
        // certificate and re-verify it by expansion.
        let universe = AffineMonoid::new(1, &[ivec(vec![1])]).unwrap();
        let g = SparsePoly::monomial(BigInt::from(c0), ivec(vec![e0]), Domain::Integers).unwrap();
        let ideal = Ideal::new(universe, vec![g.clone()]).unwrap();
        let cofactor =
            SparsePoly::monomial(BigInt::from(k), ivec(vec![shift]), Domain::Integers).unwrap();
        let f = cofactor.mul(&g).unwrap();
        let cap: Vec<IntVector> = (0..=3).map(|i| ivec(vec![i])).collect();
        match bounded_ideal_membership(&f, &ideal, &cap).unwrap() {
            IdealMembership::Certificate(cert) => prop_assert!(cert.verify(&ideal).is_ok()),
            IdealMembership::Undecided => prop_assert!(false, "constructed member must certify"),
        }
    }
}
