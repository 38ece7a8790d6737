use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use linmap::maps::{check_additive, check_homogeneous, ratio_map, MapBody};
use linmap::{Field, FieldElement, MapSpec, Space, Strategy as CheckStrategy, Vector};

const FIELDS: [&str; 5] = ["Fp:2", "Fp:3", "Fp:5", "Fq:2:1,1,1", "Fq:3:1,0,1"];

fn space_and_vector() -> impl Strategy<Value = (Space, Vector)> {
    (0..FIELDS.len(), 1usize..=4).prop_flat_map(|(i, dim)| {
        let space = Space::new(FIELDS[i].parse().unwrap(), dim).unwrap();
        let n = space.cardinality().unwrap();
        (Just(space), 0..n).prop_map(|(s, r)| {
            let v = s.vector_at(r).unwrap();
            (s, v)
        })
    })
}

fn rational() -> impl Strategy<Value = FieldElement> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| FieldElement::Rational(BigRational::new(BigInt::from(n), BigInt::from(d))))
}

/// A random table map `F^du -> F^dv` over a small field.
fn table_map() -> impl Strategy<Value = MapSpec> {
    (0..3usize, 1usize..=2, 1usize..=2).prop_flat_map(|(i, du, dv)| {
        let f: Field = ["Fp:2", "Fp:3", "Fq:2:1,1,1"][i].parse().unwrap();
        let dom = Space::new(f.clone(), du).unwrap();
        let cod = Space::new(f, dv).unwrap();
        let n = dom.cardinality().unwrap() as usize;
        let m = cod.cardinality().unwrap();
        prop::collection::vec(0..m, n).prop_map(move |ranks| {
            let values = ranks.iter().map(|&r| cod.vector_at(r).unwrap()).collect();
            MapSpec::new(dom.clone(), cod.clone(), MapBody::Table(values)).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn canonical_rep_recovers_the_vector((space, v) in space_and_vector()) {
        if space.is_zero(&v) {
            prop_assert!(space.canonical_rep(&v).is_err());
        } else {
            let (rep, scale) = space.canonical_rep(&v).unwrap();
            prop_assert!(space.is_canonical(&rep));
            prop_assert_eq!(space.scale(&scale, &rep).unwrap(), v);
            let idx = space.orbit_index(&rep).unwrap();
            prop_assert!(idx < space.orbit_count().unwrap());
            prop_assert_eq!(&space.orbits().unwrap()[idx as usize].representative, &rep);
        }
    }

    #[test]
    fn vector_rank_round_trips((space, v) in space_and_vector()) {
        let r = space.rank(&v).unwrap();
        prop_assert_eq!(space.vector_at(r).unwrap(), v.clone());
        prop_assert_eq!(space.parse_vector(&v.to_string()).unwrap(), v);
    }

    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational()) {
        let q = Field::rationals();
        prop_assert_eq!(q.mul(&a, &q.add(&b, &c)), q.add(&q.mul(&a, &b), &q.mul(&a, &c)));
        prop_assert_eq!(q.add(&q.add(&a, &b), &c), q.add(&a, &q.add(&b, &c)));
        if !q.is_zero(&b) {
            prop_assert_eq!(q.mul(&q.div(&a, &b).unwrap(), &b), a.clone());
        }
        prop_assert_eq!(q.parse_element(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn sqrt2_extension_inverts(x in rational(), y in rational()) {
        let f: Field = "Qext:-2,0,1".parse().unwrap();
        let a = FieldElement::Coeffs(vec![x, y]);
        if f.is_zero(&a) {
            prop_assert!(f.inv(&a).is_err());
        } else {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
    }

    #[test]
    fn witnesses_recheck_and_checks_are_deterministic(map in table_map()) {
        for report in [
            check_additive(&map, CheckStrategy::Exhaustive).unwrap(),
            check_homogeneous(&map, CheckStrategy::Exhaustive).unwrap(),
        ] {
            prop_assert_eq!(report.witness.is_some(), !report.holds());
            if let Some(w) = &report.witness {
                prop_assert!(w.recheck(&map).unwrap());
                prop_assert_ne!(w.lhs(), w.rhs());
            }
        }
        prop_assert_eq!(
            check_additive(&map, CheckStrategy::Exhaustive).unwrap(),
            check_additive(&map, CheckStrategy::Exhaustive).unwrap()
        );
    }

    #[test]
    fn ratio_map_is_homogeneous_on_any_seed(seed in any::<u64>()) {
        let map = ratio_map(&Field::rationals()).unwrap();
        let strategy = CheckStrategy::Sampled { seed, samples: 50 };
        prop_assert!(check_homogeneous(&map, strategy).unwrap().holds());
        let additive = check_additive(&map, strategy).unwrap();
        prop_assert!(!additive.holds());
        prop_assert!(additive.witness.unwrap().recheck(&map).unwrap());
    }
}

#[test]
fn prime_field_additive_tables_are_homogeneous() {
    // every additive table over Z_p found by exhaustive filtering also
    // passes exhaustive homogeneity
    for p in [2u64, 3] {
        let f = Field::prime(p).unwrap();
        let dom = Space::new(f.clone(), 2).unwrap();
        let cod = Space::new(f.clone(), 1).unwrap();
        let n = dom.cardinality().unwrap() as u32;
        for t in 0..p.pow(n) {
            let mut r = t;
            let values = (0..n)
                .map(|_| {
                    let v = cod.vector_at(r % p).unwrap();
                    r /= p;
                    v
                })
                .collect();
            let map = MapSpec::new(dom.clone(), cod.clone(), MapBody::Table(values)).unwrap();
            if check_additive(&map, CheckStrategy::Exhaustive).unwrap().holds() {
                assert!(check_homogeneous(&map, CheckStrategy::Exhaustive).unwrap().holds());
            }
        }
    }
}
