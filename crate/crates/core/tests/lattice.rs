mod common;

use std::collections::HashSet;
use std::sync::OnceLock;

use godeaux_core::curves::{godeaux_curves, Catalog, GodeauxCurve, Sign};
use godeaux_core::lattice::*;

fn setup() -> &'static (Catalog, ClassTable) {
    static CELL: OnceLock<(Catalog, ClassTable)> = OnceLock::new();
    CELL.get_or_init(|| {
        let cat = Catalog::new();
        let table = ClassTable::compute(&cat).expect("class table");
        (cat, table)
    })
}

fn roots() -> &'static (SimpleRoots, Vec<NumClass>) {
    static CELL: OnceLock<(SimpleRoots, Vec<NumClass>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let s = SimpleRoots::from_table(&setup().1);
        let r = enumerate_roots(&s.e8_basis()).unwrap();
        (s, r)
    })
}

#[test]
fn classes_agree_with_the_closed_form_tables() {
    let (_, table) = setup();
    let curves: Vec<GodeauxCurve> = godeaux_curves()
        .into_iter()
        .filter(|c| !matches!(c, GodeauxCurve::PlaneQuintic { .. }))
        .collect();
    assert_eq!(curves.len(), 65);
    // Oracle: coordinates from the closed-form pairings against the basis.
    for c in &curves {
        let p: [i64; RANK] = std::array::from_fn(|k| common::expected(*c, basis_curves()[k]).unwrap_or(1));
        assert_eq!(class_from_pairings(&p).unwrap(), table.get(*c).unwrap(), "{c}");
    }
    for a in &curves {
        for b in &curves {
            let (x, y) = (table.get(*a).unwrap(), table.get(*b).unwrap());
            assert_eq!(pairing(&x, &y), common::expected(*a, *b).unwrap(), "{a}·{b}");
        }
    }
}

#[test]
fn basis_members_and_plane_quintics() {
    let (_, table) = setup();
    for (k, c) in basis_curves().iter().enumerate() {
        assert_eq!(table.get(*c).unwrap(), NumClass::basis(k));
    }
    for coord in 1..=4 {
        assert_eq!(table.get(GodeauxCurve::PlaneQuintic { coord }).unwrap(), NumClass::canonical());
    }
    // frozen after the closed-form oracle above agreed
    assert_eq!(table.e(Sign::Minus, 0, 4).coords, [0, -1, -1, 1, 7, -1, -2, -2, 0]);
}

#[test]
fn catalog_certificate_rechecks_every_pair() {
    let (cat, table) = setup();
    let cert = table.certify(cat).unwrap();
    assert_eq!(cert.curves, 69);
    assert_eq!(cert.pairs_checked, 69 * 70 / 2);
    for c in table.entries() {
        assert_eq!(degree(&c.class), 1, "{}", c.curve);
        if matches!(c.curve, GodeauxCurve::Elliptic { .. }) {
            assert_eq!(pairing(&c.class, &c.class), -1);
        }
    }
}

#[test]
fn simple_roots_certify() {
    let (s, _) = roots();
    let cert = s.certify().unwrap();
    assert_eq!(cert.b1_dot_b2, -1);
    for a in s.alpha {
        assert_eq!(degree(&a), 0);
    }
    let a = s.a();
    assert_eq!(weyl_reflect(&a[0], &(a[0] + a[1])).unwrap(), a[1]);
}

#[test]
fn root_enumeration_and_model() {
    let (s, r) = roots();
    assert_eq!(r.len(), 240);
    let set: HashSet<&NumClass> = r.iter().collect();
    assert!(r.iter().all(|x| is_root(x) && set.contains(&-*x)));
    for a in s.e8_basis() {
        for x in r {
            assert!(set.contains(&weyl_reflect(&a, x).unwrap()));
        }
    }
    let a = s.a();
    for i in 0..8 {
        for j in i..8 {
            let p: NumClass = a[i..=j].iter().copied().sum();
            assert!(set.contains(&p));
        }
    }
    let m = cross_check_model(&s.e8_basis(), r).unwrap();
    assert_eq!((m.integral_vectors, m.half_vectors, m.matched), (112, 128, 240));
}

#[test]
fn numerical_sequence_is_exceptional() {
    let (s, r) = roots();
    let seq = numerical_sequence(s);
    let rep = verify_numerically_exceptional(&seq);
    assert!(rep.passes(), "{:?}", rep.failures);
    assert_eq!(rep.checked, 55);
    let a = s.a();
    let partials: Vec<NumClass> = (1..=8).map(|n| a[..n].iter().copied().sum()).collect();
    assert!(completely_orthogonal(&partials));
    let k = NumClass::canonical();
    let b = s.b();
    assert_eq!(chi(&((k - b[1]) - (k - b[0]))), 0);
    assert_eq!(chi(&a[0]), 0);
    for alpha in r.iter().step_by(7) {
        let moved = reflect_sequence(alpha, &seq).unwrap();
        assert!(verify_numerically_exceptional(&moved).passes());
    }
    // not exceptional when reversed
    let rev: Vec<NumClass> = seq.iter().rev().copied().collect();
    assert!(!verify_numerically_exceptional(&rev).passes());
}

#[test]
fn borel_de_siebenthal_types() {
    let (s, r) = roots();
    let rep = borel_de_siebenthal(&s.e8_basis(), r).unwrap();
    assert_eq!(rep.marks, [1, 2, 3, 4, 6, 5, 4, 3, 2]);
    let mut labels = rep.labels();
    labels.sort();
    assert_eq!(labels, ["A4+A4", "A8", "D8", "E6+A2", "E7+A1"]);
    let a8 = closed_subsystem(&s.a(), r).unwrap();
    assert_eq!(a8.components, vec![DynkinType::A(8)]);
    assert_eq!(a8.roots, 72);
    assert!(a8.reflection_closed && a8.addition_closed);
}
