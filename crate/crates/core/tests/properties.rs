use std::sync::OnceLock;

use godeaux_core::curves::{all_elliptic, all_lines, Catalog};
use godeaux_core::lattice::{pairing, weyl_reflect, ClassTable, NumClass, SimpleRoots, RANK};
use godeaux_core::poly::{groebner_basis, is_groebner_basis, normal_form, s_polynomial, MPoly, Monomial, MonomialOrder, Ring};
use godeaux_core::CycNum;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn catalog() -> &'static Catalog {
    static C: OnceLock<Catalog> = OnceLock::new();
    C.get_or_init(Catalog::new)
}

fn cyc() -> impl Strategy<Value = CycNum> {
    let q = (-40i64..=40, 1i64..=12).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)));
    [q.clone(), q.clone(), q.clone(), q].prop_map(CycNum::from_coords)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, CycNum::zero());
        prop_assert_eq!(&a * &CycNum::one(), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn galois_is_a_ring_map_and_composes(a in cyc(), b in cyc(), r in 1i64..5, s in 1i64..5) {
        let g = |x: &CycNum, k: i64| x.galois(k).unwrap();
        prop_assert_eq!(g(&(&a * &b), r), &g(&a, r) * &g(&b, r));
        prop_assert_eq!(g(&(&a + &b), r), &g(&a, r) + &g(&b, r));
        prop_assert_eq!(g(&g(&a, s), r), g(&a, (r * s) % 5));
        prop_assert_eq!(g(&CycNum::zeta(), r), CycNum::zeta_pow(r));
    }
}

fn small_poly(ring: &std::sync::Arc<Ring>) -> impl Strategy<Value = MPoly> {
    let ring = ring.clone();
    let exps = (0u16..3, 0u16..3, 0u16..3).prop_filter("degree at most 3", |(a, b, c)| a + b + c <= 3);
    proptest::collection::vec((exps, -3i64..=3), 1..4).prop_map(move |terms| {
        let mut p = MPoly::zero(&ring);
        for ((a, b, c), k) in terms {
            let m = Monomial::from_exponents(&[a, b, c]);
            p = &p + &MPoly::monomial(&ring, m, CycNum::from_int(k));
        }
        p
    })
}

fn ring3() -> std::sync::Arc<Ring> {
    Ring::new(&["x", "y", "z"], &[0, 0, 0]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn buchberger_criterion_on_random_ideals(gens in proptest::collection::vec(small_poly(&ring3()), 1..4)) {
        for order in [MonomialOrder::GRevLex, MonomialOrder::Lex] {
            let (basis, _) = groebner_basis(&gens, order, Some(200_000)).unwrap();
            prop_assert!(is_groebner_basis(&basis, order));
            for f in &basis {
                for g in &basis {
                    prop_assert!(normal_form(&s_polynomial(f, g, order), &basis, order).is_zero());
                }
            }
            for g in &gens {
                prop_assert!(normal_form(g, &basis, order).is_zero());
            }
        }
    }

    #[test]
    fn reflections_preserve_the_pairing(x in proptest::array::uniform9(-6i64..=6), y in proptest::array::uniform9(-6i64..=6), k in 0usize..8) {
        let alpha = simple()[k];
        let (x, y) = (NumClass { coords: x }, NumClass { coords: y });
        let (sx, sy) = (weyl_reflect(&alpha, &x).unwrap(), weyl_reflect(&alpha, &y).unwrap());
        prop_assert_eq!(pairing(&sx, &sy), pairing(&x, &y));
        prop_assert_eq!(weyl_reflect(&alpha, &sx).unwrap(), x);
    }
}

fn simple() -> &'static [NumClass; 8] {
    static S: OnceLock<[NumClass; 8]> = OnceLock::new();
    S.get_or_init(|| SimpleRoots::from_table(&ClassTable::compute(catalog()).unwrap()).e8_basis())
}

#[test]
fn reflections_in_simple_roots_on_basis_vectors() {
    for a in simple() {
        for i in 0..RANK {
            for j in 0..RANK {
                let (x, y) = (NumClass::basis(i), NumClass::basis(j));
                let (sx, sy) = (weyl_reflect(a, &x).unwrap(), weyl_reflect(a, &y).unwrap());
                assert_eq!(pairing(&sx, &sy), pairing(&x, &y));
            }
        }
    }
}

#[test]
fn every_catalog_basis_passes_buchberger() {
    let cat = catalog();
    for c in all_lines().into_iter().chain(all_elliptic()) {
        let ideal = cat.ideal(c);
        assert!(is_groebner_basis(&ideal.gb().unwrap(), MonomialOrder::GRevLex), "{c}");
    }
}

#[test]
fn hilbert_series_do_not_depend_on_the_order() {
    let cat = catalog();
    let lines = all_lines();
    let ell = all_elliptic();
    let mut ideals = Vec::new();
    for k in 0..12 {
        ideals.push(cat.ideal(lines[k * 6]).add_gens(&[cat.fermat()]));
    }
    for k in 0..10 {
        ideals.push(cat.ideal(ell[k * 5]).add_gens(&[cat.fermat()]));
    }
    assert!(ideals.len() >= 20);
    for i in &ideals {
        let a = i.hilbert_series_for(MonomialOrder::GRevLex).unwrap();
        let b = i.hilbert_series_for(MonomialOrder::Lex).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.projective_info().dimension, 1);
        assert!(is_groebner_basis(&i.groebner(MonomialOrder::Lex).unwrap(), MonomialOrder::Lex));
    }
}
