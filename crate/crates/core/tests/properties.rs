mod common;

use bsg_core::algebra::{bareiss_determinant, Exponent};
use bsg_core::diagram::{parse_diagram, validate, GraphDiagram};
use bsg_core::generate::random_diagram;
use bsg_core::resolve::{brute_force_states, enumerate_states, enumerate_states_parallel, resolve_vertices};
use bsg_core::torsion::{cross_check, homology_model, tau};
use bsg_core::{unit_equiv, unit_normalize, BigPoly, Poly};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly(vars: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, vars), -3i64..=3), 0..5)
        .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|(e, c)| (Exponent::new(e), c))))
}

fn diagram(max_crossings: usize) -> impl Strategy<Value = GraphDiagram> {
    any::<u64>().prop_map(move |seed| random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), max_crossings).unwrap())
}

fn to_big(p: &Poly) -> BigPoly {
    BigPoly::from_terms(p.terms().map(|(e, c)| (e.clone(), BigInt::from(*c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(2), b in poly(2), c in poly(2)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn unit_equivalence(a in poly(2), b in poly(2), e in prop::collection::vec(-3i64..=3, 2), neg in any::<bool>()) {
        let u = a.mul_monomial(&Exponent::new(e), &(if neg { -1 } else { 1 }));
        prop_assert!(unit_equiv(&a, &u));
        prop_assert_eq!(unit_normalize(&a), unit_normalize(&u));
        prop_assert_eq!(unit_normalize(&unit_normalize(&a)), unit_normalize(&a));
        prop_assert_eq!(unit_equiv(&a, &b), unit_equiv(&b, &a));
    }

    #[test]
    fn big_and_machine_determinants_agree(m in prop::collection::vec(poly(2), 9)) {
        let rows: Vec<Vec<Poly>> = m.chunks(3).map(<[Poly]>::to_vec).collect();
        let big: Vec<Vec<BigPoly>> = rows.iter().map(|r| r.iter().map(to_big).collect()).collect();
        prop_assert_eq!(to_big(&bareiss_determinant(&rows)), bareiss_determinant(&big));
        prop_assert_eq!(bareiss_determinant(&rows), common::leibniz(&rows));
    }

    #[test]
    fn bsg_round_trip(d in diagram(5)) {
        let again = parse_diagram(&d.to_bsg()).unwrap();
        prop_assert_eq!(&again, &d);
        prop_assert!(validate(&again).is_valid());
    }

    #[test]
    fn projection_is_a_homomorphism(d in diagram(3), a in poly(6), b in poly(6)) {
        let h = homology_model(&d).unwrap();
        let m = d.edges().len();
        let cut = |p: &Poly| p.map_exponents(|e| Exponent::new(e.to_dense(m.max(6))[..m].to_vec()));
        let (a, b) = (cut(&a), cut(&b));
        prop_assert_eq!(h.project_poly(&(&a * &b)), &h.project_poly(&a) * &h.project_poly(&b));
        prop_assert!(h.smith().diagonal.iter().all(|x| *x == 0 || *x == 1));
    }

    #[test]
    fn states_match_brute_force(d in diagram(4)) {
        let rd = resolve_vertices(&d, None).unwrap();
        prop_assume!(rd.num_crossings() <= 8);
        let fast: Vec<_> = enumerate_states(&rd).collect();
        prop_assert_eq!(&fast, &brute_force_states(&rd));
        prop_assert_eq!(&fast, &enumerate_states_parallel(&rd, 3));
    }

    #[test]
    fn oracle_and_scalar_types_agree(d in diagram(4)) {
        let h = homology_model(&d).unwrap();
        let rd = resolve_vertices(&d, None).unwrap();
        let c = cross_check::<i64>(&rd, &h).unwrap();
        prop_assert!(c.matches(), "{:?}", c);
        prop_assert_eq!(to_big(&c.state_sum), tau::<BigInt>(&rd, &h).normalized);
    }
}
