use std::sync::Arc;

use super::{MPoly, Monomial, MonomialOrder, Ring};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};

pub(super) fn format_poly(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(&Monomial, &CycNum)> = p.terms().collect();
    terms.sort_by(|a, b| MonomialOrder::GRevLex.cmp(b.0, a.0));
    let names = p.ring().names();
    let parts: Vec<String> = terms
        .into_iter()
        .map(|(m, c)| {
            let mut s = c.to_string();
            for (i, name) in names.iter().enumerate() {
                match m.exp(i) {
                    0 => {}
                    1 => s.push_str(&format!("*{name}")),
                    e => s.push_str(&format!("*{name}^{e}")),
                }
            }
            s
        })
        .collect();
    parts.join(" + ")
}

/// Splits on top-level `+`/`-` (outside parentheses), keeping the sign.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
                }
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                let t = cur.trim().to_string();
                if !t.is_empty() {
                    out.push((neg, t));
                    neg = false;
                } else if ch == '-' {
                    // sign before the first term, or `+ -` sequences
                    neg = !neg;
                    cur.clear();
                    continue;
                }
                if ch == '-' {
                    neg = true;
                }
                cur.clear();
            }
            c if c.is_whitespace() => {}
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
    }
    let t = cur.trim().to_string();
    if !t.is_empty() {
        out.push((neg, t));
    } else if out.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    } else {
        return Err(Error::Parse(format!("dangling operator in {s:?}")));
    }
    Ok(out)
}

fn parse_factor(ring: &Arc<Ring>, f: &str, coeff: &mut CycNum, mono: &mut Monomial) -> Result<()> {
    if f.starts_with('(') {
        let c: CycNum = f.parse()?;
        *coeff = &*coeff * &c;
        return Ok(());
    }
    if f.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        let q = crate::cyclotomic::parse_rational(f)?;
        *coeff = &*coeff * &CycNum::from_rational(&q);
        return Ok(());
    }
    let (name, exp) = match f.split_once('^') {
        Some((n, e)) => (n, e.parse::<u16>().map_err(|_| Error::Parse(format!("bad exponent in {f:?}")))?),
        None => (f, 1),
    };
    let i = ring.index_of(name).ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
    let e = mono
        .exp(i)
        .checked_add(exp)
        .ok_or_else(|| Error::Parse(format!("exponent overflow in {f:?}")))?;
    *mono = mono.with_exp(i, e);
    Ok(())
}

/// Splits a term on `*` outside parentheses.
fn split_factors(t: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in t.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch)
            }
            ')' => {
                depth -= 1;
                cur.push(ch)
            }
            '*' if depth == 0 => out.push(std::mem::take(&mut cur)),
            c => cur.push(c),
        }
    }
    out.push(cur);
    out
}

pub(super) fn parse_poly(ring: &Arc<Ring>, s: &str) -> Result<MPoly> {
    let s = s.trim();
    if s == "0" {
        return Ok(MPoly::zero(ring));
    }
    let mut p = MPoly::zero(ring);
    for (neg, t) in split_terms(s)? {
        let mut coeff = CycNum::one();
        let mut mono = Monomial::one();
        for f in split_factors(&t) {
            if f.is_empty() {
                return Err(Error::Parse(format!("empty factor in {t:?}")));
            }
            parse_factor(ring, &f, &mut coeff, &mut mono)?;
        }
        if neg {
            coeff = -coeff;
        }
        p.add_term(mono, &coeff);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let r = Ring::fermat();
        let p = MPoly::parse(&r, "x1^2*x3 - x1*x2^2 + (0, 1, 0, 0)*x3^2*x4 - 1/2*x2*x4^2 + 3").unwrap();
        assert_eq!(p.len(), 5);
        let q = MPoly::parse(&r, &p.to_string()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn leading_minus_and_errors() {
        let r = Ring::fermat();
        let p = MPoly::parse(&r, "-x1 + x2").unwrap();
        assert_eq!(p.coeff(&Monomial::var(0)), CycNum::from_int(-1));
        assert!(MPoly::parse(&r, "x9").is_err());
        assert!(MPoly::parse(&r, "x1 +").is_err());
        assert!(MPoly::parse(&r, "(1, 2").is_err());
    }
}
