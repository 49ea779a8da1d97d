//! Lines, invariant elliptic quintics and plane sections on the Fermat
//! quintic Y, their images on the Godeaux surface X = Y/(Z/5), automorphism
//! and Galois actions, and intersection numbers.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycNum, Z5};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Ideal, MPoly, Monomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

/// Line families `l⁻`, `l⁰`, `l⁺`, read as -1, 0, +1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Minus,
    Zero,
    Plus,
}

impl Family {
    pub fn value(self) -> i64 {
        match self {
            Family::Minus => -1,
            Family::Zero => 0,
            Family::Plus => 1,
        }
    }

    pub fn all() -> [Family; 3] {
        [Family::Minus, Family::Zero, Family::Plus]
    }

    pub fn symbol(self) -> char {
        match self {
            Family::Minus => '-',
            Family::Zero => '0',
            Family::Plus => '+',
        }
    }
}

/// A curve on the Fermat quintic Y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveRef {
    Line { family: Family, i: Z5, j: Z5 },
    Elliptic { sign: Sign, i: Z5, j: Z5 },
    /// The hyperplane section x_k = 0, k in 1..=4.
    PlaneQuintic { coord: u8 },
}

impl fmt::Display for CurveRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveRef::Line { family, i, j } => write!(f, "l{}({i},{j})", family.symbol()),
            CurveRef::Elliptic { sign, i, j } => write!(f, "E{}({i},{j})", sign.symbol()),
            CurveRef::PlaneQuintic { coord } => write!(f, "P{coord}"),
        }
    }
}

/// A curve on the Godeaux surface X.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GodeauxCurve {
    /// Image of the orbit of l^family(0, index).
    Line { family: Family, index: Z5 },
    Elliptic { sign: Sign, i: Z5, j: Z5 },
    PlaneQuintic { coord: u8 },
}

impl GodeauxCurve {
    pub fn elliptic(sign: Sign, i: i64, j: i64) -> Self {
        GodeauxCurve::Elliptic { sign, i: Z5::new(i), j: Z5::new(j) }
    }

    pub fn line(family: Family, index: i64) -> Self {
        GodeauxCurve::Line { family, index: Z5::new(index) }
    }
}

/// The cataloged curves on X: 50 elliptic curves, 15 line classes and the
/// four invariant plane quintics.
pub fn godeaux_curves() -> Vec<GodeauxCurve> {
    let mut out: Vec<GodeauxCurve> = all_elliptic()
        .into_iter()
        .map(|c| match c {
            CurveRef::Elliptic { sign, i, j } => GodeauxCurve::Elliptic { sign, i, j },
            _ => unreachable!(),
        })
        .collect();
    out.extend(line_classes());
    out.extend((1..=4).map(|coord| GodeauxCurve::PlaneQuintic { coord }));
    out
}

impl fmt::Display for GodeauxCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GodeauxCurve::Line { family, index } => write!(f, "L{}_{index}", family.symbol()),
            GodeauxCurve::Elliptic { sign, i, j } => write!(f, "E{}_{i}{j}", sign.symbol()),
            GodeauxCurve::PlaneQuintic { coord } => write!(f, "P{coord}"),
        }
    }
}

pub fn fermat(ring: &Arc<Ring>) -> MPoly {
    (0..4).fold(MPoly::zero(ring), |acc, i| &acc + &ring.var_at(i).pow(5))
}

fn xi(k: i64) -> CycNum {
    CycNum::zeta_pow(k)
}

// ---------------------------------------------------------------- lines

/// All 75 lines on Y.
pub fn all_lines() -> Vec<CurveRef> {
    let mut out = Vec::with_capacity(75);
    for family in Family::all() {
        for i in Z5::all() {
            for j in Z5::all() {
                out.push(CurveRef::Line { family, i, j });
            }
        }
    }
    out
}

/// The 15 line classes on X.
pub fn line_classes() -> Vec<GodeauxCurve> {
    Family::all()
        .into_iter()
        .flat_map(|family| Z5::all().map(move |index| GodeauxCurve::Line { family, index }))
        .collect()
}

/// Point of the line at parameter (s:t).
pub fn line_point(family: Family, i: Z5, j: Z5, s: &CycNum, t: &CycNum) -> [CycNum; 4] {
    let (xi_i, xi_j) = (xi(i.value()), xi(j.value()));
    match family {
        Family::Minus => [s.clone(), -(&xi_i * s), t.clone(), -(&xi_j * t)],
        Family::Zero => [s.clone(), t.clone(), -(&xi_j * t), -(&xi_i * s)],
        Family::Plus => [s.clone(), t.clone(), -(&xi_i * s), -(&xi_j * t)],
    }
}

/// The two linear forms cutting out a line.
pub fn line_forms(ring: &Arc<Ring>, family: Family, i: Z5, j: Z5) -> [MPoly; 2] {
    let x = |k: usize| ring.var_at(k);
    let (xi_i, xi_j) = (xi(i.value()), xi(j.value()));
    match family {
        Family::Minus => [&x(1) + &x(0).scale(&xi_i), &x(3) + &x(2).scale(&xi_j)],
        Family::Zero => [&x(3) + &x(0).scale(&xi_i), &x(2) + &x(1).scale(&xi_j)],
        Family::Plus => [&x(2) + &x(0).scale(&xi_i), &x(3) + &x(1).scale(&xi_j)],
    }
}

pub fn line_ideal(ring: &Arc<Ring>, family: Family, i: Z5, j: Z5) -> Ideal {
    Ideal::new(ring, line_forms(ring, family, i, j).to_vec()).expect("same ring")
}

/// Image of a line under the Z/5 generator x_k ↦ ξ^k x_k.
pub fn z5_on_line(family: Family, i: Z5, j: Z5) -> (Z5, Z5) {
    match family {
        Family::Minus => (i + Z5::new(1), j + Z5::new(1)),
        Family::Zero => (i + Z5::new(3), j + Z5::new(1)),
        Family::Plus => (i + Z5::new(2), j + Z5::new(2)),
    }
}

/// The five lines over the class L^family_index.
pub fn line_orbit(family: Family, index: Z5) -> Vec<CurveRef> {
    let mut out = Vec::with_capacity(5);
    let (mut i, mut j) = (Z5::ZERO, index);
    for _ in 0..5 {
        out.push(CurveRef::Line { family, i, j });
        (i, j) = z5_on_line(family, i, j);
    }
    out
}

// ---------------------------------------------------------------- Reid curves

/// A point (a:b:c:d, s:t) of the parameter space P³ × P¹.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReidParams {
    pub abcd: [CycNum; 4],
    pub st: [CycNum; 2],
}

impl ReidParams {
    pub fn new(abcd: [CycNum; 4], st: [CycNum; 2]) -> Result<Self> {
        let p = ReidParams { abcd, st };
        if p.abcd.iter().all(CycNum::is_zero) || p.st.iter().all(CycNum::is_zero) {
            return Err(Error::InvalidArgument("projective coordinates cannot all vanish".into()));
        }
        Ok(p.normalized())
    }

    /// Representative with the first nonzero of (a,b,c,d) equal to one and
    /// t = 1 (or s = 1 when t = 0).
    pub fn normalized(&self) -> Self {
        let lead = self.abcd.iter().find(|c| !c.is_zero()).expect("nonzero").inv().expect("nonzero");
        let abcd = std::array::from_fn(|k| &self.abcd[k] * &lead);
        let st = if !self.st[1].is_zero() {
            let inv = self.st[1].inv().expect("nonzero");
            [&self.st[0] * &inv, CycNum::one()]
        } else {
            [CycNum::one(), CycNum::zero()]
        };
        ReidParams { abcd, st }
    }

    pub fn validate(&self) -> Result<()> {
        if self.abcd.iter().any(CycNum::is_zero) || self.st.iter().any(CycNum::is_zero) {
            return Err(Error::InvalidArgument("a, b, c, d, s, t must all be nonzero".into()));
        }
        Ok(())
    }

    /// The invariant t·b·c / (s·a·d).
    pub fn modulus(&self) -> Result<CycNum> {
        let [a, b, c, d] = &self.abcd;
        let [s, t] = &self.st;
        (&(t * b) * c).checked_div(&(&(s * a) * d))
    }

    /// Smoothness criterion: the modulus avoids 0, ∞ and the fifth powers of
    /// the roots of x² + x - 1.
    pub fn is_smooth(&self) -> bool {
        let Ok(m) = self.modulus() else { return false };
        if m.is_zero() {
            return false;
        }
        // ((-1 ± √5)/2)^5 are the roots of x² + 11x - 1.
        let q = &(&(&m * &m) + &m.scale_int(&11.into())) - &CycNum::one();
        !q.is_zero()
    }
}

pub fn reid_point(sign: Sign, i: Z5, j: Z5) -> ReidParams {
    let (i, j) = (i.value(), j.value());
    let phi = CycNum::golden();
    let s = match sign {
        Sign::Plus => phi,
        Sign::Minus => -phi.inv().expect("nonzero"),
    };
    ReidParams::new([xi(i + 2 * j), -xi(-i + j), xi(-i - j), -xi(i - 2 * j)], [s, xi(-i)]).expect("valid")
}

pub fn all_elliptic() -> Vec<CurveRef> {
    let mut out = Vec::with_capacity(50);
    for sign in Sign::both() {
        for i in Z5::all() {
            for j in Z5::all() {
                out.push(CurveRef::Elliptic { sign, i, j });
            }
        }
    }
    out
}

/// The catalog point equal to `p`, if any.
pub fn identify(p: &ReidParams) -> Option<(Sign, Z5, Z5)> {
    let p = p.normalized();
    for sign in Sign::both() {
        for i in Z5::all() {
            for j in Z5::all() {
                if reid_point(sign, i, j) == p {
                    return Some((sign, i, j));
                }
            }
        }
    }
    None
}

/// The five cubics R₀..R₄; R_k has Z/5 weight k.
pub fn reid_cubics(ring: &Arc<Ring>, p: &ReidParams) -> [MPoly; 5] {
    let [a, b, c, d] = &p.abcd;
    let [s, t] = &p.st;
    let m = |coef: CycNum, e: [u16; 4]| MPoly::monomial(ring, Monomial::from_exponents(&e), coef);
    let sum = |ts: Vec<MPoly>| ts.iter().fold(MPoly::zero(ring), |acc, t| &acc + t);
    let n = |x: &CycNum| -x.clone();
    [
        sum(vec![m(a.clone(), [2, 0, 1, 0]), m(n(b), [1, 2, 0, 0]), m(c.clone(), [0, 0, 2, 1]), m(n(d), [0, 1, 0, 2])]),
        sum(vec![m(a * s, [1, 1, 1, 0]), m(n(&(a * t)), [2, 0, 0, 1]), m(n(&(b * s)), [0, 3, 0, 0]), m(n(&(c * t)), [0, 0, 1, 2])]),
        sum(vec![m(a * s, [1, 0, 2, 0]), m(n(&(b * s)), [0, 2, 1, 0]), m(n(&(b * t)), [1, 1, 0, 1]), m(n(&(d * t)), [0, 0, 0, 3])]),
        sum(vec![m(a * t, [3, 0, 0, 0]), m(c * s, [0, 1, 2, 0]), m(c * t, [1, 0, 1, 1]), m(n(&(d * s)), [0, 2, 0, 1])]),
        sum(vec![m(b * t, [2, 1, 0, 0]), m(c * s, [0, 0, 3, 0]), m(n(&(d * s)), [0, 1, 1, 1]), m(d * t, [1, 0, 0, 2])]),
    ]
}

pub fn elliptic_ideal(ring: &Arc<Ring>, p: &ReidParams) -> Result<Ideal> {
    p.validate()?;
    Ideal::new(ring, reid_cubics(ring, p).to_vec())
}

/// The skew 5×5 linear matrix whose 4×4 Pfaffians define the elliptic normal
/// curve in P⁴ (coordinates x0..x4 of `ring`).
pub fn pfaffian_matrix(ring: &Arc<Ring>, p: &ReidParams) -> Vec<Vec<MPoly>> {
    let [a, b, c, d] = &p.abcd;
    let [s, t] = &p.st;
    let x = |k: usize| ring.var_at(k);
    let z = MPoly::zero(ring);
    let upper: [[MPoly; 5]; 5] = [
        [z.clone(), x(1), x(2), x(3), x(4)],
        [z.clone(), z.clone(), x(3).scale(c), x(4).scale(d), x(0).scale(s)],
        [z.clone(), z.clone(), z.clone(), x(0).scale(t), x(1).scale(a)],
        [z.clone(), z.clone(), z.clone(), z.clone(), x(2).scale(b)],
        [z.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
    ];
    let mut m = vec![vec![z.clone(); 5]; 5];
    for r in 0..5 {
        for col in r + 1..5 {
            m[r][col] = upper[r][col].clone();
            m[col][r] = -&upper[r][col];
        }
    }
    m
}

/// The five 4×4 Pfaffians of a skew 5×5 matrix (the k-th omits row/column k).
pub fn pfaffians(m: &[Vec<MPoly>]) -> Vec<MPoly> {
    (0..5)
        .map(|k| {
            let idx: Vec<usize> = (0..5).filter(|&r| r != k).collect();
            let e = |u: usize, v: usize| &m[idx[u]][idx[v]];
            let t1 = e(0, 1) * e(2, 3);
            let t2 = e(0, 2) * e(1, 3);
            let t3 = e(0, 3) * e(1, 2);
            &(&t1 - &t2) + &t3
        })
        .collect()
}

/// Entries of the 12×8 coefficient matrix expressing that the Fermat quintic
/// lies in the span of the seven invariant quintics of an elliptic curve.
/// Each entry is a pair (coefficient, monomial in a,b,c,d,s,t).
pub fn coefficient_matrix_pattern() -> [[(i64, [u8; 6]); 8]; 12] {
    const Z: (i64, [u8; 6]) = (0, [0; 6]);
    const ONE: (i64, [u8; 6]) = (1, [0; 6]);
    // exponent vectors over (a, b, c, d, s, t)
    let v = |c: i64, e: [u8; 6]| (c, e);
    let (a, b, c, d) = ([1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0]);
    let (at, as_) = ([1, 0, 0, 0, 0, 1], [1, 0, 0, 0, 1, 0]);
    let (bs, bt) = ([0, 1, 0, 0, 1, 0], [0, 1, 0, 0, 0, 1]);
    let (cs, ct) = ([0, 0, 1, 0, 1, 0], [0, 0, 1, 0, 0, 1]);
    let (ds, dt) = ([0, 0, 0, 1, 1, 0], [0, 0, 0, 1, 0, 1]);
    [
        [v(1, at), Z, Z, Z, Z, Z, Z, ONE],
        [Z, v(-1, bs), Z, Z, Z, Z, Z, ONE],
        [Z, v(1, as_), Z, Z, Z, v(-1, b), Z, Z],
        [v(1, cs), Z, v(1, bt), Z, Z, v(1, a), Z, Z],
        [Z, Z, v(1, cs), Z, Z, Z, Z, ONE],
        [v(-1, ds), v(-1, at), Z, Z, v(-1, b), Z, Z, Z],
        [v(1, ct), Z, Z, Z, v(1, a), Z, v(1, at), Z],
        [Z, Z, v(-1, ds), Z, Z, v(1, c), v(1, cs), Z],
        [Z, v(-1, ct), Z, v(-1, bs), Z, v(-1, d), v(-1, ds), Z],
        [Z, Z, v(1, dt), v(1, as_), v(1, c), Z, v(1, ct), Z],
        [Z, Z, Z, v(-1, bt), v(-1, d), Z, Z, Z],
        [Z, Z, Z, v(-1, dt), Z, Z, Z, ONE],
    ]
}

/// The coefficient matrix evaluated at a parameter point.
pub fn coefficient_matrix(p: &ReidParams) -> linalg::Matrix {
    let vals: Vec<&CycNum> = p.abcd.iter().chain(p.st.iter()).collect();
    coefficient_matrix_pattern()
        .iter()
        .map(|row| {
            row.iter()
                .map(|(c, e)| {
                    if *c == 0 {
                        return CycNum::zero();
                    }
                    let mut x = CycNum::from_int(*c);
                    for (k, &ek) in e.iter().enumerate() {
                        if ek > 0 {
                            x = &x * &vals[k].pow(ek as u32);
                        }
                    }
                    x
                })
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------- automorphisms

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Aut {
    Gamma,
    Delta,
    Alpha,
    Beta,
}

impl Aut {
    pub fn all() -> [Aut; 4] {
        [Aut::Gamma, Aut::Delta, Aut::Alpha, Aut::Beta]
    }

    /// Action on Reid's parameter space.
    pub fn on_params(self, p: &ReidParams) -> ReidParams {
        let [a, b, c, d] = &p.abcd;
        let [s, t] = &p.st;
        let (abcd, st) = match self {
            Aut::Gamma => ([&xi(2) * a, &xi(1) * b, &xi(-1) * c, &xi(-2) * d], [s.clone(), t.clone()]),
            Aut::Delta => ([&xi(1) * a, &xi(-1) * b, &xi(-1) * c, &xi(1) * d], [&xi(-2) * s, &xi(2) * t]),
            Aut::Alpha => ([-b.clone(), d.clone(), a.clone(), -c.clone()], [t.clone(), -s.clone()]),
            Aut::Beta => ([d.clone(), c.clone(), b.clone(), a.clone()], [s.clone(), t.clone()]),
        };
        ReidParams::new(abcd, st).expect("automorphisms preserve validity")
    }

    /// Action on points of P³.
    pub fn on_point(self, x: &[CycNum; 4]) -> [CycNum; 4] {
        match self {
            Aut::Gamma => [&xi(1) * &x[0], x[1].clone(), x[2].clone(), &xi(-1) * &x[3]],
            Aut::Delta => [&xi(1) * &x[0], &xi(-1) * &x[1], &xi(-1) * &x[2], &xi(1) * &x[3]],
            Aut::Alpha => [x[2].clone(), x[0].clone(), x[3].clone(), x[1].clone()],
            Aut::Beta => [x[3].clone(), x[2].clone(), x[1].clone(), x[0].clone()],
        }
    }

    /// f ↦ f∘g⁻¹, so that V(image) = g(V(f)).
    pub fn on_poly(self, f: &MPoly) -> MPoly {
        let r = f.ring();
        let x = |k: usize| r.var_at(k);
        let images: Vec<MPoly> = match self {
            Aut::Gamma => vec![x(0).scale(&xi(-1)), x(1), x(2), x(3).scale(&xi(1))],
            Aut::Delta => vec![x(0).scale(&xi(-1)), x(1).scale(&xi(1)), x(2).scale(&xi(1)), x(3).scale(&xi(-1))],
            // α(x) = (x3, x1, x4, x2), so α⁻¹(y) = (y2, y4, y1, y3)
            Aut::Alpha => vec![x(1), x(3), x(0), x(2)],
            Aut::Beta => vec![x(3), x(2), x(1), x(0)],
        };
        f.compose(r, &images)
    }

    /// Action on the catalog indices of the 50 invariant elliptic curves,
    /// found by applying the parameter action and identifying the result.
    pub fn on_elliptic(self, sign: Sign, i: Z5, j: Z5) -> (Sign, Z5, Z5) {
        identify(&self.on_params(&reid_point(sign, i, j))).expect("the catalog is Aut-stable")
    }
}

/// Galois automorphism ρ_r (ξ ↦ ξ^r) on the catalog indices, found by
/// conjugating the parameter point.
pub fn galois_on_elliptic(r: i64, sign: Sign, i: Z5, j: Z5) -> Result<(Sign, Z5, Z5)> {
    let p = reid_point(sign, i, j);
    let abcd = [p.abcd[0].galois(r)?, p.abcd[1].galois(r)?, p.abcd[2].galois(r)?, p.abcd[3].galois(r)?];
    let st = [p.st[0].galois(r)?, p.st[1].galois(r)?];
    identify(&ReidParams::new(abcd, st)?).ok_or_else(|| Error::Inconsistent("Galois image off the catalog".into()))
}

// ---------------------------------------------------------------- catalog

/// Ideals of cataloged curves with memoized Gröbner data.
pub struct Catalog {
    ring: Arc<Ring>,
    budget: Option<u64>,
    ideals: Mutex<HashMap<CurveRef, Arc<Ideal>>>,
    pair_degrees: Mutex<HashMap<(CurveRef, CurveRef), i64>>,
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::new()
    }
}

impl Catalog {
    pub fn new() -> Self {
        Catalog {
            ring: Ring::fermat(),
            budget: None,
            ideals: Mutex::new(HashMap::new()),
            pair_degrees: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn fermat(&self) -> MPoly {
        fermat(&self.ring)
    }

    pub fn ideal(&self, c: CurveRef) -> Arc<Ideal> {
        if let Some(i) = self.ideals.lock().expect("poisoned").get(&c) {
            return i.clone();
        }
        let ideal = match c {
            CurveRef::Line { family, i, j } => line_ideal(&self.ring, family, i, j),
            CurveRef::Elliptic { sign, i, j } => {
                elliptic_ideal(&self.ring, &reid_point(sign, i, j)).expect("catalog points are valid")
            }
            CurveRef::PlaneQuintic { coord } => {
                Ideal::new(&self.ring, vec![self.ring.var_at(coord as usize - 1), self.fermat()]).expect("ring")
            }
        };
        let ideal = Arc::new(ideal.with_budget(self.budget));
        self.ideals.lock().expect("poisoned").insert(c, ideal.clone());
        ideal
    }

    /// Intersection number on Y of two distinct curves meeting properly,
    /// as the degree of the scheme cut out by the sum of their ideals.
    pub fn meet_degree(&self, a: CurveRef, b: CurveRef) -> Result<i64> {
        let key = if a <= b { (a, b) } else { (b, a) };
        if let Some(&d) = self.pair_degrees.lock().expect("poisoned").get(&key) {
            return Ok(d);
        }
        let sum = self.ideal(a).sum(&self.ideal(b)).add_gens(&[self.fermat()]);
        let info = sum.scheme_info()?;
        if info.dimension > 0 {
            return Err(Error::Inconsistent(format!("{a} and {b} share a component")));
        }
        let d = info.degree.max(0);
        self.pair_degrees.lock().expect("poisoned").insert(key, d);
        Ok(d)
    }

    /// Intersection number on Y, with self-intersections from adjunction
    /// (K_Y = O(1)): lines -3, elliptic quintics -5, plane sections 5.
    pub fn y_intersection(&self, a: CurveRef, b: CurveRef) -> Result<i64> {
        if a != b {
            return self.meet_degree(a, b);
        }
        Ok(match a {
            CurveRef::Line { .. } => -3,
            CurveRef::Elliptic { .. } => -5,
            // H² on Y: two different hyperplane sections meet in 5 points.
            CurveRef::PlaneQuintic { coord } => {
                let other = if coord == 1 { 2 } else { 1 };
                self.meet_degree(a, CurveRef::PlaneQuintic { coord: other })?
            }
        })
    }

    /// Pullback to Y of a curve on X, as a list of curves on Y.
    pub fn pullback(c: GodeauxCurve) -> Vec<CurveRef> {
        match c {
            GodeauxCurve::Line { family, index } => line_orbit(family, index),
            GodeauxCurve::Elliptic { sign, i, j } => vec![CurveRef::Elliptic { sign, i, j }],
            GodeauxCurve::PlaneQuintic { coord } => vec![CurveRef::PlaneQuintic { coord }],
        }
    }

    /// C₁·C₂ on X as (p*C₁ · p*C₂)/5, with the divisibility by 5 checked.
    /// When one pullback is a single invariant curve, its pairing with an orbit
    /// is computed from one orbit member.
    pub fn godeaux_intersection(&self, c1: GodeauxCurve, c2: GodeauxCurve) -> Result<i64> {
        let (p1, p2) = (Self::pullback(c1), Self::pullback(c2));
        let total: i64 = if (p1.len(), p2.len()) == (1, 5) || (p1.len(), p2.len()) == (5, 1) {
            5 * self.y_intersection(p1[0], p2[0])?
        } else if p1.len() == 5 && p2.len() == 5 {
            let mut s = 0;
            for g in &p1 {
                for h in &p2 {
                    s += self.y_intersection(*g, *h)?;
                }
            }
            s
        } else {
            self.y_intersection(p1[0], p2[0])?
        };
        if total % 5 != 0 {
            return Err(Error::Inconsistent(format!("{c1}·{c2}: pullback pairing {total} not divisible by 5")));
        }
        Ok(total / 5)
    }

    /// Degree of a curve on X, i.e. its pairing with K_X.
    pub fn k_degree(&self, c: GodeauxCurve) -> Result<i64> {
        // p*K_X = O_Y(1), so the pairing is the total degree of the pullback / 5.
        let total: i64 = Self::pullback(c)
            .into_iter()
            .map(|y| match y {
                CurveRef::Line { .. } => 1,
                _ => 5,
            })
            .sum();
        if total % 5 != 0 {
            return Err(Error::Inconsistent("degree not divisible by 5".into()));
        }
        Ok(total / 5)
    }
}

// ---------------------------------------------------------------- counting

/// Certificate for one of the 50 invariant elliptic curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticWitness {
    pub sign: Sign,
    pub i: Z5,
    pub j: Z5,
    pub params: ReidParams,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyCount {
    pub count: usize,
    pub distinct: bool,
    pub witnesses: Vec<EllipticWitness>,
}

/// Rank-7 check of the coefficient matrix at each catalog point, together with
/// pairwise distinctness of the points.
pub fn count_invariant_elliptic_verify() -> VerifyCount {
    let mut witnesses = Vec::with_capacity(50);
    for sign in Sign::both() {
        for i in Z5::all() {
            for j in Z5::all() {
                let params = reid_point(sign, i, j);
                let rank = linalg::rank_bareiss(&coefficient_matrix(&params));
                witnesses.push(EllipticWitness { sign, i, j, params, rank });
            }
        }
    }
    let mut pts: Vec<&ReidParams> = witnesses.iter().map(|w| &w.params).collect();
    pts.sort_by_key(|p| format!("{:?}", p));
    let distinct = pts.windows(2).all(|w| w[0] != w[1]);
    let count = if distinct { witnesses.iter().filter(|w| w.rank == 7).count() } else { 0 };
    VerifyCount { count, distinct, witnesses }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminateCount {
    /// Conditions on (b, c, d, s) in the chart a = t = 1, with u = 1/(bcds).
    pub equations: Vec<String>,
    pub dimension: i64,
    pub degree: i64,
    /// Catalog points satisfying every equation.
    pub catalog_points_on_locus: usize,
}

/// Counts invariant elliptic curves as the length of the scheme where the
/// Fermat column of the coefficient matrix lies in the span of the other
/// seven. The seven span coefficients are solved one pivot at a time (each
/// pivot is a monomial, hence a unit once a, b, c, d, s, t are inverted),
/// leaving polynomial conditions on the parameters. Every solution has
/// a, b, c, d, s, t ≠ 0 because four rows read (monomial)·λ + 1 = 0, so the
/// chart a = t = 1 loses nothing.
pub fn count_invariant_elliptic_eliminate(budget: Option<u64>) -> Result<EliminateCount> {
    let ring = Ring::new(&["b", "c", "d", "s", "u"], &[0, 0, 0, 0, 0])?;
    // a and t set to 1; variables b, c, d, s at ring indices 0..4
    let monomial = |e: &[u8; 6]| -> Monomial { Monomial::from_exponents(&[e[1] as u16, e[2] as u16, e[3] as u16, e[4] as u16, 0]) };
    let inverse = |m: &Monomial| -> MPoly {
        let top = (0..4).map(|k| m.exp(k)).max().unwrap_or(0);
        let mut ex = [0u16; 5];
        for (k, slot) in ex.iter_mut().enumerate().take(4) {
            *slot = top - m.exp(k);
        }
        ex[4] = top;
        MPoly::monomial(&ring, Monomial::from_exponents(&ex), CycNum::one())
    };
    let pattern = coefficient_matrix_pattern();
    let entry = |r: usize, c: usize| -> Option<(i64, Monomial)> {
        let (k, e) = pattern[r][c];
        (k != 0).then(|| (k, monomial(&e)))
    };
    let mut value: Vec<Option<MPoly>> = vec![None; 8];
    value[7] = Some(MPoly::one(&ring));
    let mut pivot_rows = Vec::new();
    while value.iter().any(Option::is_none) {
        let found = (0..12).filter(|r| !pivot_rows.contains(r)).find_map(|r| {
            let unknown: Vec<usize> = (0..8).filter(|&c| entry(r, c).is_some() && value[c].is_none()).collect();
            (unknown.len() == 1).then(|| (r, unknown[0]))
        });
        let Some((r, col)) = found else {
            return Err(Error::Inconsistent("no monomial pivot left in the coefficient matrix".into()));
        };
        let mut known = MPoly::zero(&ring);
        for c in (0..8).filter(|&c| c != col) {
            if let (Some((k, m)), Some(v)) = (entry(r, c), &value[c]) {
                known = &known + &v.mul_monomial(&m).scale(&CycNum::from_int(k));
            }
        }
        let (k, m) = entry(r, col).expect("pivot entry");
        let sol = (&known * &inverse(&m)).scale(&CycNum::from_int(-k).inv()?);
        value[col] = Some(sol);
        pivot_rows.push(r);
    }
    let unit = &MPoly::parse(&ring, "b*c*d*s*u")? - &MPoly::one(&ring);
    let mut gens = vec![unit];
    let mut equations = Vec::new();
    for r in (0..12).filter(|r| !pivot_rows.contains(r)) {
        let mut row = MPoly::zero(&ring);
        for c in 0..8 {
            if let (Some((k, m)), Some(v)) = (entry(r, c), &value[c]) {
                row = &row + &v.mul_monomial(&m).scale(&CycNum::from_int(k));
            }
        }
        equations.push(row.to_string());
        gens.push(row);
    }
    let mut on_locus = 0;
    for p in all_elliptic() {
        let CurveRef::Elliptic { sign, i, j } = p else { continue };
        let n = reid_point(sign, i, j);
        let a = &n.abcd[0];
        let t = &n.st[1];
        let pt: Vec<CycNum> = vec![
            n.abcd[1].checked_div(a)?,
            n.abcd[2].checked_div(a)?,
            n.abcd[3].checked_div(a)?,
            n.st[0].checked_div(t)?,
        ];
        let prod = pt.iter().fold(CycNum::one(), |acc, x| &acc * x);
        let mut full = pt.clone();
        full.push(prod.inv()?);
        if gens.iter().all(|g| g.eval(&full).is_zero()) {
            on_locus += 1;
        }
    }
    let info = Ideal::new(&ring, gens)?.with_budget(budget).affine_info()?;
    Ok(EliminateCount { equations, dimension: info.dimension, degree: info.degree, catalog_points_on_locus: on_locus })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventy_five_lines_on_the_fermat() {
        let r = Ring::fermat();
        let f = fermat(&r);
        let lines = all_lines();
        assert_eq!(lines.len(), 75);
        for c in lines {
            let CurveRef::Line { family, i, j } = c else { unreachable!() };
            assert!(line_ideal(&r, family, i, j).contains(&f).unwrap(), "{c}");
        }
    }

    #[test]
    fn line_example_matches_parametrization() {
        let r = Ring::fermat();
        let forms = line_forms(&r, Family::Minus, Z5::ZERO, Z5::ZERO);
        assert_eq!(forms[0], MPoly::parse(&r, "x2 + x1").unwrap());
        assert_eq!(forms[1], MPoly::parse(&r, "x4 + x3").unwrap());
        // Points of every line satisfy its forms.
        let (s, t) = (CycNum::from_int(2), CycNum::from_int(-3));
        for c in all_lines() {
            let CurveRef::Line { family, i, j } = c else { unreachable!() };
            let pt = line_point(family, i, j, &s, &t);
            for f in line_forms(&r, family, i, j) {
                assert!(f.eval(&pt).is_zero());
            }
        }
    }

    #[test]
    fn z5_generator_permutes_lines() {
        let r = Ring::fermat();
        let g: Vec<CycNum> = (1..=4).map(xi).collect();
        for c in all_lines() {
            let CurveRef::Line { family, i, j } = c else { unreachable!() };
            let (i2, j2) = z5_on_line(family, i, j);
            // the image of a point of l lies on the predicted line
            let pt = line_point(family, i, j, &CycNum::from_int(3), &CycNum::from_int(5));
            let img: Vec<CycNum> = pt.iter().zip(&g).map(|(a, b)| a * b).collect();
            for f in line_forms(&r, family, i2, j2) {
                assert!(f.eval(&img).is_zero());
            }
        }
        // Orbit representatives: each class has exactly one line with i = 0.
        let mut seen = std::collections::HashSet::new();
        for cls in line_classes() {
            let GodeauxCurve::Line { family, index } = cls else { unreachable!() };
            for l in line_orbit(family, index) {
                assert!(seen.insert(l));
            }
        }
        assert_eq!(seen.len(), 75);
    }

    #[test]
    fn reid_point_example() {
        let p = reid_point(Sign::Plus, Z5::ZERO, Z5::ZERO);
        let one = CycNum::one();
        assert_eq!(p.abcd, [one.clone(), -one.clone(), one.clone(), -one.clone()]);
        assert_eq!(p.st, [CycNum::golden(), one]);
    }

    #[test]
    fn cubic_example_and_weights() {
        let r = Ring::fermat();
        let one = CycNum::one();
        let p = ReidParams::new([one.clone(), one.clone(), one.clone(), one.clone()], [one.clone(), one]).unwrap();
        let rs = reid_cubics(&r, &p);
        assert_eq!(rs[0], MPoly::parse(&r, "x1^2*x3 - x1*x2^2 + x3^2*x4 - x2*x4^2").unwrap());
        for (k, rk) in rs.iter().enumerate() {
            assert_eq!(rk.weight(), Some(Z5::new(k as i64)));
        }
    }

    #[test]
    fn modulus_of_catalog_points() {
        for sign in Sign::both() {
            for i in Z5::all() {
                for j in Z5::all() {
                    let p = reid_point(sign, i, j);
                    let phi = CycNum::golden();
                    let expected = match sign {
                        Sign::Plus => phi.inv().unwrap(),
                        Sign::Minus => -phi,
                    };
                    assert_eq!(p.modulus().unwrap(), expected);
                    assert!(p.is_smooth());
                }
            }
        }
    }

    #[test]
    fn parameter_actions_on_indices() {
        for sign in Sign::both() {
            for i in Z5::all() {
                for j in Z5::all() {
                    assert_eq!(Aut::Gamma.on_elliptic(sign, i, j), (sign, i, j + Z5::new(1)));
                    assert_eq!(Aut::Delta.on_elliptic(sign, i, j), (sign, i + Z5::new(1), j));
                    assert_eq!(Aut::Beta.on_elliptic(sign, i, j), (sign, i, -j));
                    assert_eq!(Aut::Alpha.on_elliptic(sign, i, j), (sign.flip(), -i, Z5::new(-2) * j));
                    assert_ne!(Aut::Delta.on_elliptic(sign, i, j), (sign, i, j));
                }
            }
        }
    }

    #[test]
    fn alpha_squared_is_beta() {
        let p = reid_point(Sign::Plus, Z5::new(1), Z5::new(3));
        let q = ReidParams::new(
            [CycNum::from_int(2), CycNum::from_int(3), CycNum::from_int(5), CycNum::from_int(7)],
            [CycNum::from_int(11), CycNum::from_int(13)],
        )
        .unwrap();
        for x in [p, q] {
            assert_eq!(Aut::Alpha.on_params(&Aut::Alpha.on_params(&x)), Aut::Beta.on_params(&x));
        }
    }

    #[test]
    fn galois_action_on_catalog() {
        for sign in Sign::both() {
            for i in Z5::all() {
                for j in Z5::all() {
                    for r in 1..5i64 {
                        let rz = Z5::new(r);
                        let expected_sign = if r == 1 || r == 4 { sign } else { sign.flip() };
                        assert_eq!(galois_on_elliptic(r, sign, i, j).unwrap(), (expected_sign, rz * i, rz * j));
                    }
                }
            }
        }
    }

    #[test]
    fn coefficient_matrix_ranks() {
        let v = count_invariant_elliptic_verify();
        assert!(v.distinct);
        assert_eq!(v.count, 50);
        let q = ReidParams::new(
            [CycNum::from_int(2), CycNum::from_int(-3), CycNum::from_int(5), CycNum::from_int(7)],
            [CycNum::from_int(11), CycNum::from_int(13)],
        )
        .unwrap();
        assert_eq!(linalg::rank_bareiss(&coefficient_matrix(&q)), 8);
    }
}
