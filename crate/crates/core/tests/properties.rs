mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use toric_ml::cone::{cone_from_generators, dual_cone};
use toric_ml::demazure::demazure_roots;
use toric_ml::derivation::{AlgebraElement, HomogeneousDerivation, Nilpotency, Operator};
use toric_ml::input::MonoidInputDocument;
use toric_ml::invariants::analyze;
use toric_ml::lattice::{pairing, DualVector, LatticePoint, LatticeVector};
use toric_ml::monoid::{AffineMonoid, BoundsOverride};
use toric_ml::oracle::brute_force_members;
use toric_ml::report::ReportDocument;

const CAP: usize = 64;

fn point(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = LatticePoint> {
    prop::collection::vec(lo..=hi, n).prop_map(|c| LatticePoint::from_i64s(&c))
}

fn ratio() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=5).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

fn element(n: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((point(n, -4, 4), ratio()), 1..4).prop_map(AlgebraElement::from_terms)
}

fn derivation(n: usize) -> impl Strategy<Value = HomogeneousDerivation> {
    (point(n, -3, 3), point(n, -2, 2), ratio())
        .prop_filter_map("nonzero", |(r, e, l)| {
            HomogeneousDerivation::new(DualVector::new(r.into_coords()), e, l).ok()
        })
}

/// Pointed, full-dimensional rank-2 monoids with generators in the box `[0,6]^2`.
fn rank2_monoid() -> impl Strategy<Value = AffineMonoid> {
    prop::collection::vec(point(2, 0, 6), 2..5).prop_filter_map("full rank", |g| {
        AffineMonoid::new(&g).ok().filter(|m| m.rank() == 2)
    })
}

fn dedup(points: Vec<LatticePoint>) -> BTreeSet<LatticePoint> {
    points.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn leibniz_rule(d in derivation(2), f in element(2), g in element(2)) {
        let op: Operator = d.into();
        let lhs = op.apply(&(&f * &g), CAP).unwrap();
        let rhs = &(&f * &op.apply(&g, CAP).unwrap()) + &(&op.apply(&f, CAP).unwrap() * &g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivations_shift_degree_by_e(d in derivation(3), m in point(3, -5, 5)) {
        let image = Operator::from(d.clone()).apply(&AlgebraElement::monomial(m.clone()), CAP).unwrap();
        let target = &m + &d.e;
        prop_assert!(image.support().all(|s| *s == target));
    }

    #[test]
    fn root_nilpotency_index(ray in 0usize..2, m in point(2, 0, 5)) {
        let a2 = AffineMonoid::from_i64s(&[&[1, 0], &[0, 1]]).unwrap();
        let roots = demazure_roots(a2.sigma(), ray, &BigInt::from(3)).unwrap();
        for root in roots {
            let d = root.derivation(a2.sigma());
            let k = pairing(&m, &d.rho).unwrap();
            let got = Operator::from(d).nilpotency_index(&AlgebraElement::monomial(m.clone()), CAP).unwrap();
            prop_assert_eq!(got, Nilpotency::Index(usize::try_from(k).unwrap() + 1));
        }
    }

    #[test]
    fn exponential_is_multiplicative(
        ray in 0usize..2, pick in 0usize..8, m1 in point(2, 0, 4), m2 in point(2, 0, 4), t in ratio()
    ) {
        let a2 = AffineMonoid::from_i64s(&[&[1, 0], &[0, 1]]).unwrap();
        let roots = demazure_roots(a2.sigma(), ray, &BigInt::from(3)).unwrap();
        let op: Operator = roots[pick % roots.len()].derivation(a2.sigma()).into();
        let (f, g) = (AlgebraElement::monomial(m1), AlgebraElement::monomial(m2));
        let whole = op.exponential(&t, &(&f * &g), CAP).unwrap();
        let parts = &op.exponential(&t, &f, CAP).unwrap() * &op.exponential(&t, &g, CAP).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn double_dual_is_the_cone(gens in prop::collection::vec(point(3, -3, 3), 1..6)) {
        let Ok(cone) = cone_from_generators(&gens) else { return Ok(()) };
        prop_assume!(cone.is_pointed() && cone.is_full_dimensional());
        let back = dual_cone(&dual_cone(&cone));
        let a: BTreeSet<_> = cone.rays().iter().cloned().collect();
        let b: BTreeSet<_> = back.rays().iter().cloned().collect();
        prop_assert_eq!(a, b);
        for g in &gens {
            prop_assert!(back.contains(g));
        }
    }

    #[test]
    fn membership_matches_brute_force(m in rank2_monoid()) {
        let bound = BigInt::from(12);
        let brute = brute_force_members(&m, &bound);
        for x in m.points_up_to(&bound) {
            prop_assert_eq!(m.contains(&x), brute.contains(&x), "at {}", x);
        }
        prop_assert_eq!(dedup(m.members_up_to(&bound)), brute.clone());
        let holes = dedup(m.holes_up_to(&bound));
        for h in &holes {
            prop_assert!(m.in_saturation(h) && !brute.contains(h));
        }
    }

    #[test]
    fn saturation_witnesses_are_valid(m in rank2_monoid()) {
        let b = BoundsOverride::default().resolve(&m);
        for k in 0..m.facet_count() {
            let v = m.facet_saturation_status(k, &b);
            if let Some(w) = v.status.saturation_witness() {
                let normal = &m.sigma().rays()[k];
                prop_assert!(m.contains(w));
                prop_assert_eq!(pairing(w, normal).unwrap(), BigInt::from(0));
                prop_assert!(m.is_saturation_point(w, &b.degree_bound).unwrap().is_yes());
            }
        }
    }

    #[test]
    fn report_json_round_trips(m in rank2_monoid()) {
        let b = BoundsOverride::default().resolve(&m);
        let r = analyze(&m, &b, false).unwrap();
        let input = MonoidInputDocument {
            rank: 2,
            generators: m.input_generators().to_vec(),
            name: Some("random".into()),
            bounds: None,
        };
        let doc = ReportDocument::new(&input, &r);
        let json = doc.to_json();
        let back = ReportDocument::from_json(&json).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_json(), json);
    }

    #[test]
    fn input_documents_round_trip(gens in prop::collection::vec(point(3, -9, 9), 1..6)) {
        let gens: Vec<_> = dedup(gens).into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let doc = MonoidInputDocument { rank: 3, generators: gens, name: None, bounds: None };
        let text = serde_json::to_string_pretty(&doc).unwrap();
        prop_assert_eq!(MonoidInputDocument::parse(&text).unwrap(), doc);
    }
}

#[test]
fn large_coordinates_survive_round_trip() {
    let big = "123456789012345678901234567890";
    let text = format!(r#"{{"rank":2,"generators":[["{big}",1],[0,1]]}}"#);
    let doc = MonoidInputDocument::parse(&text).unwrap();
    let again = MonoidInputDocument::parse(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(again, doc);
    assert_eq!(doc.generators[0].coords()[0], big.parse::<BigInt>().unwrap());
}
