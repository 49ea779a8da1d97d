//! Expected intersection numbers written out as closed-form rules, used as an
//! oracle independent of the Gröbner computations.
#![allow(dead_code)]

use godeaux_core::curves::{Family, GodeauxCurve, Sign};

/// 0 for d ≡ 0, 1 for d ≡ ±1, 2 for d ≡ ±2 (mod 5).
pub fn dist(d: i64) -> usize {
    match d.rem_euclid(5) {
        0 => 0,
        1 | 4 => 1,
        _ => 2,
    }
}

pub fn expected_ee(s: Sign, i: i64, j: i64, t: Sign, k: i64, l: i64) -> i64 {
    let same = (i - k).rem_euclid(5) == 0;
    match (s, t) {
        (Sign::Plus, Sign::Plus) => [[-1, 0, 1], [0, 1, 2]][usize::from(!same)][dist(j - l)],
        (Sign::Minus, Sign::Minus) => [[-1, 1, 0], [0, 2, 1]][usize::from(!same)][dist(j - l)],
        (Sign::Plus, Sign::Minus) => {
            let eq = (j - l).rem_euclid(5) == 0;
            [[1, 2], [0, 1]][usize::from(!same)][usize::from(!eq)]
        }
        (Sign::Minus, Sign::Plus) => expected_ee(t, k, l, s, i, j),
    }
}

pub fn expected_el(s: Sign, i: i64, j: i64, f: Family, k: i64) -> i64 {
    match (s, f) {
        (_, Family::Zero) => match s {
            Sign::Minus => [3, 0, 1][dist(j - k)],
            Sign::Plus => [3, 1, 0][dist(j - k)],
        },
        (Sign::Plus, Family::Plus) | (Sign::Minus, Family::Minus) => [1, 2, 0][dist(i - k)],
        _ => [1, 0, 2][dist(i - k)],
    }
}

pub fn expected_ll(m: Family, i: i64, n: Family, j: i64) -> i64 {
    let same = (i - j).rem_euclid(5) == 0;
    [[-3, 1, 5], [2, 1, 0]][usize::from(!same)][dist(m.value() - n.value())]
}

/// Expected pairing of two elliptic curves or line classes.
pub fn expected(a: GodeauxCurve, b: GodeauxCurve) -> Option<i64> {
    use GodeauxCurve::*;
    Some(match (a, b) {
        (Elliptic { sign: s, i, j }, Elliptic { sign: t, i: k, j: l }) => {
            expected_ee(s, i.value(), j.value(), t, k.value(), l.value())
        }
        (Elliptic { sign, i, j }, Line { family, index }) | (Line { family, index }, Elliptic { sign, i, j }) => {
            expected_el(sign, i.value(), j.value(), family, index.value())
        }
        (Line { family: m, index: i }, Line { family: n, index: j }) => expected_ll(m, i.value(), n, j.value()),
        _ => return None,
    })
}
