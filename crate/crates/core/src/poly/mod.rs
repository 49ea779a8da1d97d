//! Multivariate polynomials over Q(ζ₅) with a total-degree grading and a
//! Z/5 weight grading, plus the Gröbner machinery built on top of them.

mod groebner;
mod hilbert;
mod ideal;
mod order;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycNum, Z5};
use crate::error::{Error, Result};

pub use groebner::{groebner_basis, is_groebner_basis, normal_form, s_polynomial, GroebnerStats};
pub use hilbert::{HilbertSeries, SchemeInfo};
pub use ideal::{Ideal, PieceBasis};
pub use order::MonomialOrder;

pub const MAX_VARS: usize = 8;

/// Variable names and per-variable Z/5 weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    names: Vec<String>,
    weights: Vec<Z5>,
}

impl Ring {
    pub fn new(names: &[&str], weights: &[i64]) -> Result<Arc<Ring>> {
        if names.len() != weights.len() {
            return Err(Error::InvalidArgument("names and weights differ in length".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::InvalidArgument(format!("at most {MAX_VARS} variables supported")));
        }
        let mut seen = std::collections::HashSet::new();
        for n in names {
            if n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') || !seen.insert(*n) {
                return Err(Error::InvalidArgument(format!("bad variable name {n:?}")));
            }
            if n.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                return Err(Error::InvalidArgument(format!("variable name {n:?} starts with a digit")));
            }
        }
        Ok(Arc::new(Ring {
            names: names.iter().map(|s| s.to_string()).collect(),
            weights: weights.iter().map(|&w| Z5::new(w)).collect(),
        }))
    }

    /// The coordinate ring of P³ with the quotient weights (1, 2, 3, 4).
    pub fn fermat() -> Arc<Ring> {
        Ring::new(&["x1", "x2", "x3", "x4"], &[1, 2, 3, 4]).expect("valid ring")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weight(&self, var: usize) -> Z5 {
        self.weights[var]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same ring with extra weight-0 variables appended.
    pub fn extended(&self, extra: &[&str]) -> Result<Arc<Ring>> {
        let names: Vec<&str> = self.names.iter().map(String::as_str).chain(extra.iter().copied()).collect();
        let weights: Vec<i64> =
            self.weights.iter().map(|w| w.value()).chain(std::iter::repeat_n(0, extra.len())).collect();
        Ring::new(&names, &weights)
    }

    /// Stable textual descriptor used in cache keys.
    pub fn descriptor(&self) -> String {
        let parts: Vec<String> = self.names.iter().zip(&self.weights).map(|(n, w)| format!("{n}:{w}")).collect();
        format!("Q(zeta5)[{}]", parts.join(","))
    }

    pub fn var(self: &Arc<Self>, name: &str) -> MPoly {
        let i = self.index_of(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        MPoly::monomial(self, Monomial::var(i), CycNum::one())
    }

    pub fn var_at(self: &Arc<Self>, i: usize) -> MPoly {
        MPoly::monomial(self, Monomial::var(i), CycNum::one())
    }

    /// All monomials of total degree `d` in the ring, in descending lex order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut cur = [0u16; MAX_VARS];
        fn rec(i: usize, n: usize, left: u32, cur: &mut [u16; MAX_VARS], out: &mut Vec<Monomial>) {
            if i == n - 1 {
                cur[i] = left as u16;
                out.push(Monomial { exps: *cur });
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(i + 1, n, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if n > 0 {
            rec(0, n, d, &mut cur, &mut out);
        }
        out
    }

    pub fn monomial_weight(&self, m: &Monomial) -> Z5 {
        let w: i64 = (0..self.nvars()).map(|i| m.exps[i] as i64 * self.weights[i].value()).sum();
        Z5::new(w)
    }
}

/// Exponent vector; the derived ordering is lexicographic with x₀ largest.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::default();
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let mut m = Monomial::default();
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial { exps: std::array::from_fn(|i| other.exps[i] - self.exps[i]) }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: std::array::from_fn(|i| self.exps[i].max(other.exps[i])) }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: std::array::from_fn(|i| self.exps[i].min(other.exps[i])) }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: std::array::from_fn(|i| self.exps[i] + other.exps[i]) }
    }

    pub fn with_exp(mut self, i: usize, e: u16) -> Monomial {
        self.exps[i] = e;
        self
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// A polynomial over Q(ζ₅). Terms are kept in a map keyed by exponent vector,
/// zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, CycNum>,
}

impl MPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        MPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: CycNum) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, CycNum::one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: CycNum) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { ring: ring.clone(), terms }
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, CycNum)>) -> Self {
        let mut p = MPoly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> CycNum {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// Z/5 weight if every term has the same weight.
    pub fn weight(&self) -> Option<Z5> {
        let mut ws = self.terms.keys().map(|m| self.ring.monomial_weight(m));
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    pub fn is_weight_homogeneous(&self) -> bool {
        self.is_zero() || self.weight().is_some()
    }

    /// Homogeneous with respect to total degree restricted to the variables in `vars`.
    pub fn is_homogeneous_in(&self, vars: &[usize]) -> bool {
        let mut degs = self.terms.keys().map(|m| vars.iter().map(|&i| m.exp(i) as u32).sum::<u32>());
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn scale(&self, c: &CycNum) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates with variable `var` replaced by the constant `value`.
    pub fn substitute(&self, var: usize, value: &CycNum) -> MPoly {
        let mut out = MPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            out.add_term(m.with_exp(var, 0), &(c * &value.pow(e as u32)));
        }
        out
    }

    /// Substitutes polynomials for every variable (same or another ring).
    pub fn compose(&self, target: &Arc<Ring>, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.ring.nvars());
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, img) in images.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = &t * &img.pow(e as u32);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Evaluates at a point given by one value per variable.
    pub fn eval(&self, point: &[CycNum]) -> CycNum {
        let mut acc = CycNum::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = &t * &v.pow(e as u32);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Moves the polynomial into a ring whose first variables agree with this one.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<MPoly> {
        let n = self.ring.nvars();
        if target.nvars() < n || target.names()[..n] != self.ring.names()[..] {
            return Err(Error::RingMismatch(format!(
                "cannot embed {} into {}",
                self.ring.descriptor(),
                target.descriptor()
            )));
        }
        Ok(MPoly { ring: target.clone(), terms: self.terms.clone() })
    }

    /// Restricts to a ring that is a prefix of this one; fails if a dropped
    /// variable occurs.
    pub fn restrict(&self, target: &Arc<Ring>) -> Result<MPoly> {
        let n = target.nvars();
        if self.terms.keys().any(|m| m.exponents()[n..].iter().any(|&e| e > 0)) {
            return Err(Error::RingMismatch("polynomial uses variables outside the target ring".into()));
        }
        if self.ring.names()[..n] != target.names()[..] {
            return Err(Error::RingMismatch("target ring is not a prefix".into()));
        }
        Ok(MPoly { ring: target.clone(), terms: self.terms.clone() })
    }

    pub fn uses_variable(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    /// Splits into homogeneous components by Z/5 weight.
    pub fn weight_components(&self) -> BTreeMap<Z5, MPoly> {
        let mut out: BTreeMap<Z5, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(self.ring.monomial_weight(m)).or_insert_with(|| MPoly::zero(&self.ring)).add_term(*m, c);
        }
        out
    }

    /// Applies a diagonal substitution x_i ↦ scales[i]·x_i.
    pub fn diagonal_action(&self, scales: &[CycNum]) -> MPoly {
        let mut out = MPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, s) in scales.iter().enumerate() {
                t = &t * &s.pow(m.exp(i) as u32);
            }
            out.add_term(*m, &t);
        }
        out
    }

    /// Applies a Galois automorphism to all coefficients.
    pub fn galois(&self, r: i64) -> Result<MPoly> {
        let mut out = MPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(*m, &c.galois(r)?);
        }
        Ok(out)
    }

    fn check_ring(&self, other: &MPoly) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "ring mismatch: {} vs {}",
            self.ring.descriptor(),
            other.ring.descriptor()
        );
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &(-c));
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.check_ring(rhs);
        let mut out = MPoly::zero(&self.ring);
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a.mul(b), &(c * d));
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&CycNum::from_int(-1))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_poly(self))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl MPoly {
    /// Parses the textual grammar `c*x1^a1*x2^a2 + ...` with coefficients in
    /// the cyclotomic textual form (bare integers are accepted as well).
    pub fn parse(ring: &Arc<Ring>, s: &str) -> Result<MPoly> {
        text::parse_poly(ring, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials_of_degree_counts() {
        let r = Ring::fermat();
        assert_eq!(r.monomials_of_degree(0).len(), 1);
        assert_eq!(r.monomials_of_degree(5).len(), 56);
        assert_eq!(r.monomials_of_degree(7).len(), 120);
    }

    #[test]
    fn variables_carry_distinct_weights() {
        let r = Ring::fermat();
        let ws: Vec<Z5> = (0..4).map(|i| r.var_at(i).weight().unwrap()).collect();
        assert_eq!(ws, vec![Z5::new(1), Z5::new(2), Z5::new(3), Z5::new(4)]);
    }

    #[test]
    fn fermat_is_weight_zero() {
        let r = Ring::fermat();
        let f = (0..4).fold(MPoly::zero(&r), |acc, i| &acc + &r.var_at(i).pow(5));
        assert_eq!(f.weight(), Some(Z5::ZERO));
        assert!(f.is_homogeneous());
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(Ring::new(&["x", "x"], &[0, 0]).is_err());
        assert!(Ring::new(&["1x"], &[0]).is_err());
        assert!(Ring::new(&["x"], &[0, 1]).is_err());
    }
}
