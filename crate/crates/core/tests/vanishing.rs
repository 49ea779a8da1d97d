use std::sync::{Arc, OnceLock};

use godeaux_core::curves::{line_orbit, Catalog, CurveRef, Family, Sign};
use godeaux_core::lattice::{pairing, ClassTable, NumClass};
use godeaux_core::vanishing::*;
use godeaux_core::Z5;

fn catalog() -> &'static Arc<Catalog> {
    static C: OnceLock<Arc<Catalog>> = OnceLock::new();
    C.get_or_init(|| Arc::new(Catalog::new()))
}

fn table() -> &'static ClassTable {
    static T: OnceLock<ClassTable> = OnceLock::new();
    T.get_or_init(|| ClassTable::compute(catalog()).unwrap())
}

fn engine() -> &'static SectionsEngine {
    static E: OnceLock<SectionsEngine> = OnceLock::new();
    E.get_or_init(|| SectionsEngine::new(catalog().clone()))
}

#[test]
fn point_equations_cut_out_the_elliptic_curves() {
    let cat = catalog();
    let ring = cat.ring();
    for p in campedelli_points() {
        let [psi, phi] = point_equations(ring, &p).unwrap();
        let e = cat.ideal(CurveRef::Elliptic { sign: p.sign, i: p.a, j: Z5::ZERO });
        let e = e.add_gens(&[cat.fermat()]);
        assert!(e.contains(&psi).unwrap(), "ψ-equation of {}", p.label());
        assert!(e.contains(&phi).unwrap(), "φ-equation of {}", p.label());
        // the φ-cubic also contains the lines over L0_0
        for l in line_orbit(Family::Zero, Z5::ZERO) {
            assert!(cat.ideal(l).contains(&phi).unwrap(), "{} on {l}", p.label());
        }
        // and no other elliptic curve over the same ψ-value
        for q in campedelli_points().into_iter().filter(|q| q != &p) {
            let f = cat.ideal(CurveRef::Elliptic { sign: q.sign, i: q.a, j: Z5::ZERO }).add_gens(&[cat.fermat()]);
            assert!(!f.contains(&psi).unwrap());
        }
    }
}

#[test]
fn fibre_relation_in_the_lattice() {
    // E⁺_a + E⁻_a = 3K − L⁰₀ numerically
    let t = table();
    let l00 = t.get(godeaux_core::curves::GodeauxCurve::line(Family::Zero, 0)).unwrap();
    for a in 0..5 {
        assert_eq!(t.e(Sign::Plus, a, 0) + t.e(Sign::Minus, a, 0), 3 * NumClass::canonical() - l00);
    }
}

#[test]
fn canonical_profiles_have_no_sections() {
    let c = bidegree_certificate(&canonical_profile()).unwrap();
    assert_eq!(c.h0, 0);
    let Witness::Rank { direct, reduction, .. } = &c.witness else { panic!() };
    assert_eq!((direct.columns, direct.rank), (10, 10));
    // every fibre is forced twice, leaving a negative degree
    assert!(reduction.residual.bidegree.1 < 0);
    assert!(reduction.certifies);

    let profiles = twisted_canonical_profiles();
    assert_eq!(profiles.len(), 20);
    for p in profiles {
        let c = bidegree_certificate(&p).unwrap();
        assert_eq!(c.h0, 0, "{}", p.describe());
        assert_eq!(p.num_class(table()).degree(), 1);
    }
}

#[test]
fn four_fibre_profiles_have_no_sections() {
    let all = FourFibreClass::all();
    assert_eq!(all.len(), 480);
    for case in all {
        let p = case.profile();
        let c = bidegree_certificate(&p).unwrap();
        assert_eq!(c.h0, 0, "{}", case.describe());
        let Witness::Rank { direct, reduction, .. } = &c.witness else { panic!() };
        assert_eq!(direct.columns, 27);
        assert!(direct.recheck());
        assert!(matches_pictured_shape(&case, reduction), "{} {:?} {:?}", case.describe(), reduction.residual.conditions, reduction.fibres_removed);
        assert!(reduction.residual.independent());
        assert_eq!(p.num_class(table()).degree(), 2);
    }
}

#[test]
fn torsion_certificates() {
    let t = table();
    for c in godeaux_core::curves::godeaux_curves() {
        for tau in Z5::all() {
            let r = torsion_vanishing(c, tau, t);
            match c {
                godeaux_core::curves::GodeauxCurve::Elliptic { .. } if tau != Z5::ZERO => {
                    let cert = r.unwrap();
                    assert_eq!(cert.h0, 0);
                    let Witness::Torsion { self_intersection, pullback_self_intersection, .. } = cert.witness else {
                        panic!()
                    };
                    assert_eq!((self_intersection, pullback_self_intersection), (-1, -5));
                }
                _ => assert!(r.is_err(), "{c} τ^{tau}"),
            }
        }
    }
}

#[test]
fn degree7_patterns() {
    let eng = engine();
    let special = [[Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus], [Sign::Minus, Sign::Plus, Sign::Plus, Sign::Minus]];
    for signs in sign_patterns() {
        let out = eng.degree7_check(signs).unwrap();
        let expect_special = special.contains(&signs);
        assert_eq!(out.special, expect_special, "{signs:?}");
        if expect_special {
            assert_eq!(out.h0, [0, 1, 1, 1, 1]);
            assert!(out.septic.is_some());
        } else {
            assert_eq!(out.h0, [0; 5]);
        }
    }
}

#[test]
fn degree7_normalization_is_invariant() {
    // the missing fibre moved away from 0 by δ gives the same answers
    let eng = engine();
    let pattern = [Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus];
    for shift in [1, 3] {
        let mut s = [None; 5];
        for (k, sign) in pattern.iter().enumerate() {
            s[(k + 1 + shift) % 5] = Some(*sign);
        }
        let out = eng.degree7_at(s).unwrap();
        assert!(out.special);
        assert_eq!(out.h0, [0, 1, 1, 1, 1]);
    }
    let mut s = [Some(Sign::Plus); 5];
    s[2] = None;
    assert!(!eng.degree7_at(s).unwrap().special);
}

#[test]
fn residual_class_is_k_plus_a_line_exactly_when_special() {
    let t = table();
    for signs in sign_patterns() {
        let mut s = [None; 5];
        for (k, sign) in signs.iter().enumerate() {
            s[k + 1] = Some(*sign);
        }
        let c = residual_class(&s, t).unwrap();
        // 8K − D′ has K-degree 8 − 2 − 4 = 2
        assert_eq!(c.degree(), 2);
        let special = signs == [Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus]
            || signs == [Sign::Minus, Sign::Plus, Sign::Plus, Sign::Minus];
        assert_eq!(is_numerically_k_plus_line(&c, t).is_some(), special, "{signs:?}");
    }
    let l = t.get(godeaux_core::curves::GodeauxCurve::line(Family::Plus, 2)).unwrap();
    let k_plus = NumClass::canonical() + l;
    assert!(is_numerically_k_plus_line(&k_plus, t).is_some());
    assert_eq!(pairing(&k_plus, &NumClass::canonical()), 2);
}
