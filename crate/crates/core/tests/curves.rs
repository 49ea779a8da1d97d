mod common;

use std::sync::OnceLock;

use godeaux_core::curves::*;
use godeaux_core::tables::{elliptic_tables, line_tables, mixed_tables};

fn catalog() -> &'static Catalog {
    static C: OnceLock<Catalog> = OnceLock::new();
    C.get_or_init(Catalog::new)
}

#[test]
fn every_line_lies_on_the_fermat() {
    let cat = catalog();
    let lines = all_lines();
    assert_eq!(lines.len(), 75);
    for l in lines {
        assert!(cat.ideal(l).contains(&cat.fermat()).unwrap(), "{l}");
    }
}

#[test]
fn line_table_matches_closed_form() {
    let t = line_tables(catalog()).unwrap();
    assert!(t.matches());
    assert_eq!(t.values.len(), 15);
    for (a, r) in t.rows.iter().enumerate() {
        for (b, c) in t.columns.iter().enumerate() {
            assert_eq!(t.values[a][b], common::expected(*r, *c).unwrap(), "{r}·{c}");
        }
    }
    // the diagonal and the i = j, m − n = ±2 cell
    let l = |f, i| GodeauxCurve::line(f, i);
    let idx = |c: GodeauxCurve| t.rows.iter().position(|x| *x == c).unwrap();
    assert_eq!(t.values[idx(l(Family::Plus, 1))][idx(l(Family::Plus, 1))], -3);
    assert_eq!(t.values[idx(l(Family::Plus, 1))][idx(l(Family::Minus, 1))], 5);
}

#[test]
fn elliptic_parameter_points() {
    let v = count_invariant_elliptic_verify();
    assert_eq!(v.count, 50);
    assert!(v.witnesses.iter().all(|w| w.rank == 7));
    for c in all_elliptic() {
        let CurveRef::Elliptic { sign, i, j } = c else { unreachable!() };
        assert!(reid_point(sign, i, j).is_smooth(), "{c}");
    }
}

#[test]
fn elliptic_ideals_are_quintic_curves_on_the_fermat() {
    let cat = catalog();
    for c in all_elliptic() {
        let ideal = cat.ideal(c);
        assert!(ideal.contains(&cat.fermat()).unwrap(), "{c}");
        let info = ideal.scheme_info().unwrap();
        assert_eq!((info.dimension, info.degree), (1, 5), "{c}");
    }
}

#[test]
fn elliptic_and_mixed_tables_match_closed_form() {
    let cat = catalog();
    for t in [elliptic_tables(cat).unwrap(), mixed_tables(cat).unwrap()] {
        assert!(t.matches(), "{}", t.to_markdown());
        for (a, r) in t.rows.iter().enumerate() {
            for (b, c) in t.columns.iter().enumerate() {
                assert_eq!(t.values[a][b], common::expected(*r, *c).unwrap(), "{r}·{c}");
            }
        }
    }
}

#[test]
fn eliminate_count_finds_fifty_reduced_points() {
    let c = count_invariant_elliptic_eliminate(None).unwrap();
    assert_eq!((c.dimension, c.degree, c.catalog_points_on_locus), (0, 50, 50));
    assert_eq!(c.equations.len(), 5);
}

#[test]
fn tables_render_deterministically() {
    let cat = catalog();
    let a = elliptic_tables(cat).unwrap().to_markdown();
    let b = elliptic_tables(cat).unwrap().to_markdown();
    assert_eq!(a, b);
    assert!(a.starts_with("| E+_{i,j}.E+_{k,l} (j-l) | 0 | ±1 | ±2 |\n|---|---|---|---|\n| i=k | -1 | 0 | 1 |"));
}
