//! Intersection tables of lines and elliptic curves on X, computed cell by
//! cell and folded into the compact layouts indexed by index differences.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::curves::{all_elliptic, line_classes, Catalog, CurveRef, Family, GodeauxCurve, Sign};
use crate::error::Result;
use crate::report::markdown_table;

/// Distance class of an index difference mod 5: 0, ±1 or ±2.
pub fn dist(d: i64) -> usize {
    match d.rem_euclid(5) {
        0 => 0,
        1 | 4 => 1,
        _ => 2,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCell {
    pub expected: i64,
    /// Values met among the computed pairs falling into this cell.
    pub observed: BTreeSet<i64>,
    pub pairs: usize,
}

impl PatternCell {
    pub fn matches(&self) -> bool {
        self.pairs > 0 && self.observed.len() == 1 && self.observed.contains(&self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternTable {
    pub title: String,
    pub column_header: String,
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    pub cells: Vec<Vec<PatternCell>>,
}

impl PatternTable {
    fn new(title: &str, column_header: &str, rows: &[&str], cols: &[&str], expected: &[&[i64]]) -> Self {
        PatternTable {
            title: title.into(),
            column_header: column_header.into(),
            row_labels: rows.iter().map(|s| s.to_string()).collect(),
            column_labels: cols.iter().map(|s| s.to_string()).collect(),
            cells: expected
                .iter()
                .map(|r| r.iter().map(|&e| PatternCell { expected: e, observed: BTreeSet::new(), pairs: 0 }).collect())
                .collect(),
        }
    }

    fn record(&mut self, row: usize, col: usize, value: i64) {
        let c = &mut self.cells[row][col];
        c.observed.insert(value);
        c.pairs += 1;
    }

    pub fn matches(&self) -> bool {
        self.cells.iter().flatten().all(PatternCell::matches)
    }

    /// Computed values in the compact layout; a cell that is not a single
    /// value shows every value met.
    pub fn to_markdown(&self) -> String {
        let mut header = vec![format!("{} ({})", self.title, self.column_header)];
        header.extend(self.column_labels.iter().cloned());
        let rows: Vec<Vec<String>> = self
            .row_labels
            .iter()
            .zip(&self.cells)
            .map(|(label, cells)| {
                let mut r = vec![label.clone()];
                r.extend(cells.iter().map(|c| {
                    c.observed.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("/")
                }));
                r
            })
            .collect();
        markdown_table(&header, &rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionTables {
    pub kind: String,
    pub rows: Vec<GodeauxCurve>,
    pub columns: Vec<GodeauxCurve>,
    /// Full matrix of intersection numbers.
    pub values: Vec<Vec<i64>>,
    pub patterns: Vec<PatternTable>,
}

impl IntersectionTables {
    pub fn matches(&self) -> bool {
        self.patterns.iter().all(PatternTable::matches)
    }

    pub fn to_markdown(&self) -> String {
        self.patterns.iter().map(PatternTable::to_markdown).collect::<Vec<_>>().join("\n")
    }
}

fn matrix(cat: &Catalog, rows: &[GodeauxCurve], cols: &[GodeauxCurve], symmetric: bool) -> Result<Vec<Vec<i64>>> {
    let mut m = vec![vec![0i64; cols.len()]; rows.len()];
    for (a, r) in rows.iter().enumerate() {
        for (b, c) in cols.iter().enumerate() {
            m[a][b] = if symmetric && b < a { m[b][a] } else { cat.godeaux_intersection(*r, *c)? };
        }
    }
    Ok(m)
}

const DIST3: [&str; 3] = ["0", "±1", "±2"];

/// L^m_i · L^n_j over the 15 line classes.
pub fn line_tables(cat: &Catalog) -> Result<IntersectionTables> {
    let lines = line_classes();
    let values = matrix(cat, &lines, &lines, true)?;
    let mut t = PatternTable::new("L^m_i.L^n_j", "m-n", &["i=j", "i≠j"], &DIST3, &[&[-3, 1, 5], &[2, 1, 0]]);
    for (a, l1) in lines.iter().enumerate() {
        for (b, l2) in lines.iter().enumerate() {
            let (GodeauxCurve::Line { family: m, index: i }, GodeauxCurve::Line { family: n, index: j }) = (l1, l2) else {
                unreachable!("line classes")
            };
            t.record(usize::from(i != j), dist(m.value() - n.value()), values[a][b]);
        }
    }
    Ok(IntersectionTables { kind: "lines".into(), rows: lines.clone(), columns: lines, values, patterns: vec![t] })
}

fn elliptic_classes() -> Vec<GodeauxCurve> {
    all_elliptic()
        .into_iter()
        .map(|c| match c {
            CurveRef::Elliptic { sign, i, j } => GodeauxCurve::Elliptic { sign, i, j },
            _ => unreachable!("elliptic catalog"),
        })
        .collect()
}

/// The three tables E⁺·E⁺, E⁻·E⁻, E⁺·E⁻ over the 50 elliptic curves.
pub fn elliptic_tables(cat: &Catalog) -> Result<IntersectionTables> {
    let es = elliptic_classes();
    let values = matrix(cat, &es, &es, true)?;
    let rows = ["i=k", "i≠k"];
    let mut pp = PatternTable::new("E+_{i,j}.E+_{k,l}", "j-l", &rows, &DIST3, &[&[-1, 0, 1], &[0, 1, 2]]);
    let mut mm = PatternTable::new("E-_{i,j}.E-_{k,l}", "j-l", &rows, &DIST3, &[&[-1, 1, 0], &[0, 2, 1]]);
    let mut pm = PatternTable::new("E+_{i,j}.E-_{k,l}", "j, l", &rows, &["j=l", "j≠l"], &[&[1, 2], &[0, 1]]);
    for (a, e1) in es.iter().enumerate() {
        for (b, e2) in es.iter().enumerate() {
            let (GodeauxCurve::Elliptic { sign: s, i, j }, GodeauxCurve::Elliptic { sign: t, i: k, j: l }) = (e1, e2) else {
                unreachable!("elliptic classes")
            };
            let row = usize::from(i != k);
            match (s, t) {
                (Sign::Plus, Sign::Plus) => pp.record(row, dist(j.value() - l.value()), values[a][b]),
                (Sign::Minus, Sign::Minus) => mm.record(row, dist(j.value() - l.value()), values[a][b]),
                (Sign::Plus, Sign::Minus) => pm.record(row, usize::from(j != l), values[a][b]),
                (Sign::Minus, Sign::Plus) => {}
            }
        }
    }
    Ok(IntersectionTables { kind: "elliptic".into(), rows: es.clone(), columns: es, values, patterns: vec![pp, mm, pm] })
}

/// E^±_{i,j} · L^n_k over the 50 elliptic curves and 15 line classes.
pub fn mixed_tables(cat: &Catalog) -> Result<IntersectionTables> {
    let es = elliptic_classes();
    let lines = line_classes();
    let values = matrix(cat, &es, &lines, false)?;
    let mut signed = PatternTable::new(
        "E.L (±)",
        "i-k",
        &["E^±_{i,j}.L^±_k", "E^±_{i,j}.L^∓_k"],
        &DIST3,
        &[&[1, 2, 0], &[1, 0, 2]],
    );
    let mut zero =
        PatternTable::new("E.L (0)", "j-k", &["E-_{i,j}.L0_k", "E+_{i,j}.L0_k"], &DIST3, &[&[3, 0, 1], &[3, 1, 0]]);
    for (a, e) in es.iter().enumerate() {
        for (b, l) in lines.iter().enumerate() {
            let (GodeauxCurve::Elliptic { sign, i, j }, GodeauxCurve::Line { family, index: k }) = (e, l) else {
                unreachable!("catalog kinds")
            };
            let v = values[a][b];
            match family {
                Family::Zero => zero.record(usize::from(*sign == Sign::Plus), dist(j.value() - k.value()), v),
                f => {
                    let same = (*f == Family::Plus) == (*sign == Sign::Plus);
                    signed.record(usize::from(!same), dist(i.value() - k.value()), v)
                }
            }
        }
    }
    Ok(IntersectionTables { kind: "mixed".into(), rows: es, columns: lines, values, patterns: vec![signed, zero] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_classes() {
        assert_eq!((0..5).map(dist).collect::<Vec<_>>(), vec![0, 1, 2, 2, 1]);
        assert_eq!(dist(-1), 1);
    }

    #[test]
    fn pattern_cells_need_a_single_expected_value() {
        let mut t = PatternTable::new("t", "x", &["r"], &["c"], &[&[2]]);
        assert!(!t.matches());
        t.record(0, 0, 2);
        assert!(t.matches());
        t.record(0, 0, 3);
        assert!(!t.matches());
        assert!(t.to_markdown().contains("2/3"));
    }
}
