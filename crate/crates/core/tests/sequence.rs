mod common;

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use godeaux_core::curves::{godeaux_curves, Catalog, GodeauxCurve, Sign};
use godeaux_core::lattice::{basis_curves, ClassTable, NumClass, SimpleRoots};
use godeaux_core::report::Status;
use godeaux_core::sequence::*;
use godeaux_core::vanishing::{Method, SectionsEngine};
use godeaux_core::Z5;

struct Setup {
    oracle: SectionOracle,
    seq: Vec<BundleSpec>,
    verdicts: Vec<PairVerdict>,
}

fn setup() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| {
        let catalog = Arc::new(Catalog::new());
        let table = Arc::new(ClassTable::compute(&catalog).unwrap());
        let simple = SimpleRoots::from_table(&table);
        let seq = build_sequence(&table, &simple).unwrap();
        let oracle = SectionOracle::new(table, Arc::new(SectionsEngine::new(catalog)));
        let verdicts = check_all_pairs(&oracle, &seq).unwrap();
        Setup { oracle, seq, verdicts }
    })
}

#[test]
fn sequence_degrees_and_trivial_first_bundle() {
    let s = setup();
    assert_eq!(s.seq.len(), 11);
    assert!(s.seq[0].class.num.is_zero());
    assert_eq!(s.seq[0].class.torsion, Z5::ZERO);
    let degrees: Vec<i64> = s.seq.iter().map(|b| b.degree).collect();
    assert_eq!(degrees, vec![0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0]);
    assert_eq!(s.seq[7].class.torsion, TAU);
    assert_eq!(s.seq[10].class.torsion, TAU);
}

#[test]
fn effective_degree_one_classes() {
    let s = setup();
    let eff = effective_degree1_classes(s.oracle.table());
    assert!(eff.iter().all(|c| c.degree() == 1));
    assert!(eff.contains(&NumClass::canonical()));
    // independent count: distinct pairing vectors against the basis from the
    // closed-form intersection numbers, plus K for the plane quintics
    let basis = basis_curves();
    let mut vectors = BTreeSet::new();
    for c in godeaux_curves() {
        if matches!(c, GodeauxCurve::PlaneQuintic { .. }) {
            continue;
        }
        // every curve has degree one, which is its pairing with the plane quintic
        let v: Vec<i64> = basis
            .iter()
            .map(|b| if matches!(b, GodeauxCurve::PlaneQuintic { .. }) { 1 } else { common::expected(c, *b).unwrap() })
            .collect();
        vectors.insert(v);
    }
    assert_eq!(eff.len(), vectors.len() + 1);
    assert_eq!(eff.len(), 66);
}

#[test]
fn all_pairs_certified() {
    let s = setup();
    assert_eq!(s.verdicts.len(), 55);
    for v in &s.verdicts {
        assert_eq!(v.status, Status::Certified, "({}, {})", v.later, v.earlier);
        assert_eq!(v.chi, 0);
    }
}

#[test]
fn routes_match_the_expected_decision_tree() {
    let s = setup();
    for v in &s.verdicts {
        let pair = (v.later, v.earlier);
        let exceptional = EXCEPTIONAL_PAIRS.contains(&pair);
        assert_eq!(v.exceptional, exceptional, "{pair:?}");
        if exceptional {
            assert_eq!(v.h2.method, Method::BidegreeRank, "{pair:?}");
            assert!(!v.h2.cross_checks.is_empty());
        } else {
            assert!(v.h2.degree <= 1);
            assert_ne!(v.h2.method, Method::BidegreeRank, "{pair:?}");
        }
        if pair == (11, 7) || pair == (8, 7) {
            assert_eq!(v.h0.method, Method::TorsionNegative, "{pair:?}");
        } else {
            assert_ne!(v.h0.method, Method::TorsionNegative, "{pair:?}");
        }
    }
    let v21 = s.verdicts.iter().find(|v| (v.later, v.earlier) == (2, 1)).unwrap();
    assert_eq!(v21.h0.method, Method::NonEffective);
    assert_eq!(v21.h2.method, Method::NonEffective);
}

#[test]
fn lemma_other_variant() {
    let s = setup();
    let r = verify_lemma_other(&s.oracle, &s.seq).unwrap();
    assert_eq!(r.pairs.len(), 10);
    assert_eq!(r.status, Status::Certified);
    assert!(r.k_plus_line.iter().all(|(_, l)| l.is_none()));
    assert_eq!(r.ext2_o_otau.h0, 1);
    for p in &r.pairs {
        if p.later == 3 || p.later == 7 {
            assert_eq!(p.h2.method, Method::Degree7Groebner);
        }
    }
}

#[test]
fn hom_table_and_rigidity() {
    let s = setup();
    let t = hom_table(&s.oracle, &s.seq, &s.verdicts).unwrap();
    assert_eq!(t.get(1, 3).chi, -1);
    assert_eq!(t.get(3, 4).chi, 1);
    let r = rigidity_report(&t);
    assert!(r.orthogonal);
    assert!(r.chi_pattern);
    assert!(r.hom_support);
    assert!(r.ext2_where_chi_one);
    assert!(r.ext2_where_chi_minus_one);
    // Hom(L2, L3) is computed, not assumed
    assert_eq!(t.get(2, 3).hom.status, Status::Certified);
    assert_eq!(t.get(2, 3).hom.value, 1);
    for e in &t.entries {
        assert_eq!(e.hom.value - e.ext1.value + e.ext2.value, e.chi);
        if e.hom.status != Status::Certified || e.ext2.status != Status::Certified {
            assert_eq!(e.chi, 1, "only χ = 1 Ext² values may be asserted: ({}, {})", e.from, e.to);
        }
    }
    println!("asserted: {:#?}", r.asserted);

    let audit = a_infinity_degree_audit(&t, 3..=6);
    assert_eq!(audit.status, Status::Certified);
    let d3 = &audit.degrees[0];
    let target_zero: Vec<&Vec<usize>> = d3
        .nonzero_chains
        .iter()
        .filter(|c| matches!(c.blocked, Blocked::TargetZero { .. }))
        .map(|c| &c.chain)
        .collect();
    assert_eq!(target_zero, vec![&vec![2, 3, 4, 7], &vec![2, 3, 5, 7], &vec![2, 3, 6, 7]]);
    assert_eq!(audit.degrees[1].min_input_degree, Some(5));
    for d in &audit.degrees[2..] {
        assert!(d.nonzero_chains.is_empty());
        assert_eq!(d.zero_factor, d.chains);
    }
}

#[test]
fn torsion_only_differences_are_handled() {
    let s = setup();
    let o_tau = Bundle::new(FormalDivisor::default(), TAU);
    assert_eq!(s.oracle.h0_required(&o_tau).unwrap().h0, 0);
    assert_eq!(s.oracle.h0_required(&Bundle::trivial()).unwrap().h0, 1);
    let e = Bundle::new(FormalDivisor::e(Sign::Plus, 0, 0), Z5::ZERO);
    assert!(s.oracle.h0(&e).unwrap().is_none());
}
