//! The Néron–Severi lattice N(X) ≅ 1 ⊕ (−E8).
//!
//! Classes are integer vectors in the effective basis
//! `E⁺₁₀, E⁺₂₀, E⁺₃₀, E⁺₄₀, K, E⁻₁₁, E⁻₂₂, E⁻₃₃, E⁻₄₄`. Coordinates of other
//! curves are recovered from their intersection numbers with this basis,
//! which is possible because the Gram matrix is unimodular.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::curves::{godeaux_curves, Catalog, GodeauxCurve, Sign};
use crate::cyclotomic::Z5;
use crate::error::{Error, Result};

pub const RANK: usize = 9;
/// Index of the canonical class in the basis.
pub const K_SLOT: usize = 4;

/// Intersection matrix of the effective basis.
pub const GRAM: [[i64; RANK]; RANK] = [
    [-1, 0, 0, 0, 1, 2, 1, 1, 1],
    [0, -1, 0, 0, 1, 1, 2, 1, 1],
    [0, 0, -1, 0, 1, 1, 1, 2, 1],
    [0, 0, 0, -1, 1, 1, 1, 1, 2],
    [1, 1, 1, 1, 1, 1, 1, 1, 1],
    [2, 1, 1, 1, 1, -1, 2, 1, 1],
    [1, 2, 1, 1, 1, 2, -1, 2, 1],
    [1, 1, 2, 1, 1, 1, 2, -1, 2],
    [1, 1, 1, 2, 1, 1, 1, 2, -1],
];

/// Cartan matrix of E8, node 2 being the branch leaf.
pub const E8_CARTAN: [[i64; 8]; 8] = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
];

/// A numerical class of divisors on X.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NumClass {
    pub coords: [i64; RANK],
}

impl NumClass {
    pub fn zero() -> Self {
        NumClass::default()
    }

    pub fn basis(i: usize) -> Self {
        let mut c = NumClass::zero();
        c.coords[i] = 1;
        c
    }

    pub fn canonical() -> Self {
        NumClass::basis(K_SLOT)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn dot(&self, other: &NumClass) -> i64 {
        pairing(self, other)
    }

    pub fn degree(&self) -> i64 {
        degree(self)
    }
}

impl Add for NumClass {
    type Output = NumClass;
    fn add(mut self, rhs: NumClass) -> NumClass {
        for (a, b) in self.coords.iter_mut().zip(rhs.coords) {
            *a += b;
        }
        self
    }
}

impl Sub for NumClass {
    type Output = NumClass;
    fn sub(self, rhs: NumClass) -> NumClass {
        self + (-rhs)
    }
}

impl Neg for NumClass {
    type Output = NumClass;
    fn neg(mut self) -> NumClass {
        for a in self.coords.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul<NumClass> for i64 {
    type Output = NumClass;
    fn mul(self, mut rhs: NumClass) -> NumClass {
        for a in rhs.coords.iter_mut() {
            *a *= self;
        }
        rhs
    }
}

impl std::iter::Sum for NumClass {
    fn sum<I: Iterator<Item = NumClass>>(iter: I) -> NumClass {
        iter.fold(NumClass::zero(), |a, b| a + b)
    }
}

impl fmt::Display for NumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A line bundle up to isomorphism: numerical class plus a torsion exponent.
/// The torsion part pairs trivially with everything.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineBundleClass {
    pub num: NumClass,
    pub torsion: Z5,
}

impl LineBundleClass {
    pub fn new(num: NumClass, torsion: Z5) -> Self {
        LineBundleClass { num, torsion }
    }

    pub fn untwisted(num: NumClass) -> Self {
        LineBundleClass { num, torsion: Z5::ZERO }
    }

    pub fn twist(self, t: Z5) -> Self {
        LineBundleClass { num: self.num, torsion: self.torsion + t }
    }

    pub fn dual(self) -> Self {
        LineBundleClass { num: -self.num, torsion: -self.torsion }
    }
}

impl Add for LineBundleClass {
    type Output = LineBundleClass;
    fn add(self, rhs: Self) -> Self {
        LineBundleClass { num: self.num + rhs.num, torsion: self.torsion + rhs.torsion }
    }
}

impl Sub for LineBundleClass {
    type Output = LineBundleClass;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.dual()
    }
}

impl fmt::Display for LineBundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗τ^{}", self.num, self.torsion)
    }
}

pub fn pairing(a: &NumClass, b: &NumClass) -> i64 {
    let mut s = 0;
    for (i, row) in GRAM.iter().enumerate() {
        if a.coords[i] == 0 {
            continue;
        }
        let r: i64 = row.iter().zip(&b.coords).map(|(g, y)| g * y).sum();
        s += a.coords[i] * r;
    }
    s
}

/// Degree c·K.
pub fn degree(c: &NumClass) -> i64 {
    pairing(c, &NumClass::canonical())
}

/// χ(O(c)) = ½·c·(c − K) + 1.
pub fn chi(c: &NumClass) -> i64 {
    let v = pairing(c, &(*c - NumClass::canonical()));
    debug_assert!(v % 2 == 0, "lattice is even on c(c-K)");
    v / 2 + 1
}

/// χ(a, b) = χ(a^∨ ⊗ b).
pub fn chi_pair(from: &NumClass, to: &NumClass) -> i64 {
    chi(&(*to - *from))
}

pub fn gram_determinant() -> i64 {
    let m: Vec<Vec<i64>> = GRAM.iter().map(|r| r.to_vec()).collect();
    let d = rational_det(&m);
    d.to_integer().to_i64().expect("small determinant")
}

// ---------------------------------------------------------------- exact solving

fn to_q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn rational_det(m: &[Vec<i64>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|&x| to_q(x)).collect()).collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    det
}

/// Solves the square system m·x = rhs exactly; `None` if m is singular.
fn solve(m: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(r, &b)| r.iter().map(|&x| to_q(x)).chain(std::iter::once(to_q(b))).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let inv = a[c][c].recip();
        for k in c..=n {
            a[c][k] = &a[c][k] * &inv;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in c..=n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().expect("augmented")).collect())
}

fn integral(v: Vec<BigRational>) -> Option<Vec<i64>> {
    v.into_iter().map(|q| if q.is_integer() { q.to_integer().to_i64() } else { None }).collect()
}

/// The unique class whose pairings with the basis are `p`.
pub fn class_from_pairings(p: &[i64; RANK]) -> Result<NumClass> {
    let m: Vec<Vec<i64>> = GRAM.iter().map(|r| r.to_vec()).collect();
    let sol = solve(&m, p).ok_or_else(|| Error::Inconsistent("singular Gram matrix".into()))?;
    let v = integral(sol).ok_or_else(|| Error::Inconsistent(format!("pairings {p:?} give a non-integral class")))?;
    let mut c = NumClass::zero();
    c.coords.copy_from_slice(&v);
    Ok(c)
}

// ---------------------------------------------------------------- curve classes

pub fn basis_curves() -> [GodeauxCurve; RANK] {
    let e = GodeauxCurve::elliptic;
    [
        e(Sign::Plus, 1, 0),
        e(Sign::Plus, 2, 0),
        e(Sign::Plus, 3, 0),
        e(Sign::Plus, 4, 0),
        GodeauxCurve::PlaneQuintic { coord: 1 },
        e(Sign::Minus, 1, 1),
        e(Sign::Minus, 2, 2),
        e(Sign::Minus, 3, 3),
        e(Sign::Minus, 4, 4),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveClass {
    pub curve: GodeauxCurve,
    pub pairings: [i64; RANK],
    pub class: NumClass,
}

/// Numerical classes of every cataloged curve on X.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTable {
    entries: Vec<CurveClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCertificate {
    pub curves: usize,
    pub pairs_checked: usize,
    pub gram_from_catalog: Vec<Vec<i64>>,
}

impl ClassTable {
    pub fn compute(catalog: &Catalog) -> Result<Self> {
        let basis = basis_curves();
        let mut entries = Vec::new();
        for curve in godeaux_curves() {
            let mut p = [0i64; RANK];
            for (k, b) in basis.iter().enumerate() {
                p[k] = catalog.godeaux_intersection(curve, *b)?;
            }
            let class = class_from_pairings(&p)?;
            entries.push(CurveClass { curve, pairings: p, class });
        }
        entries.sort_by_key(|e| e.curve);
        Ok(ClassTable { entries })
    }

    pub fn entries(&self) -> &[CurveClass] {
        &self.entries
    }

    pub fn get(&self, c: GodeauxCurve) -> Option<NumClass> {
        self.entries.binary_search_by_key(&c, |e| e.curve).ok().map(|i| self.entries[i].class)
    }

    /// Class of an elliptic curve; panics on an uncataloged curve.
    pub fn e(&self, sign: Sign, i: i64, j: i64) -> NumClass {
        self.get(GodeauxCurve::elliptic(sign, i, j)).expect("all elliptic curves are cataloged")
    }

    /// Re-derives every pairwise intersection number (self-intersections
    /// included) through the catalog and compares it with the lattice pairing
    /// of the coordinates. Also checks the Gram matrix and degrees.
    pub fn certify(&self, catalog: &Catalog) -> Result<TableCertificate> {
        let basis = basis_curves();
        let mut gram = vec![vec![0i64; RANK]; RANK];
        for (a, ca) in basis.iter().enumerate() {
            for (b, cb) in basis.iter().enumerate() {
                gram[a][b] = catalog.godeaux_intersection(*ca, *cb)?;
                if gram[a][b] != GRAM[a][b] {
                    return Err(Error::CertificateFailed(format!(
                        "Gram entry ({a},{b}): catalog {} vs expected {}",
                        gram[a][b], GRAM[a][b]
                    )));
                }
            }
        }
        if gram_determinant() != 1 {
            return Err(Error::CertificateFailed("Gram determinant is not 1".into()));
        }
        let mut pairs = 0;
        for (x, ex) in self.entries.iter().enumerate() {
            let deg = catalog.k_degree(ex.curve)?;
            if deg != degree(&ex.class) {
                return Err(Error::CertificateFailed(format!("degree of {}: {deg} vs {}", ex.curve, degree(&ex.class))));
            }
            for ey in &self.entries[x..] {
                let geo = catalog.godeaux_intersection(ex.curve, ey.curve)?;
                let lat = pairing(&ex.class, &ey.class);
                if geo != lat {
                    return Err(Error::CertificateFailed(format!("{}·{}: catalog {geo} vs lattice {lat}", ex.curve, ey.curve)));
                }
                pairs += 1;
            }
        }
        Ok(TableCertificate { curves: self.entries.len(), pairs_checked: pairs, gram_from_catalog: gram })
    }
}

// ---------------------------------------------------------------- roots

pub fn is_root(c: &NumClass) -> bool {
    pairing(c, c) == -2 && degree(c) == 0
}

/// σ_α(β) = β − ⟨β, α⟩α, with ⟨β, α⟩ = −β·α for roots of norm −2.
pub fn weyl_reflect(alpha: &NumClass, beta: &NumClass) -> Result<NumClass> {
    if !is_root(alpha) {
        return Err(Error::InvalidArgument(format!("{alpha} is not a root")));
    }
    Ok(*beta + pairing(beta, alpha) * *alpha)
}

/// Closure of ±gens under the reflections in gens, i.e. the root subsystem
/// they generate (gens must be roots). Sorted.
pub fn reflection_closure(gens: &[NumClass]) -> Result<Vec<NumClass>> {
    let mut seen: HashSet<NumClass> = HashSet::new();
    let mut queue: VecDeque<NumClass> = VecDeque::new();
    for g in gens {
        if !is_root(g) {
            return Err(Error::InvalidArgument(format!("{g} is not a root")));
        }
        for r in [*g, -*g] {
            if seen.insert(r) {
                queue.push_back(r);
            }
        }
    }
    while let Some(r) = queue.pop_front() {
        for g in gens {
            let s = r + pairing(&r, g) * *g;
            if seen.insert(s) {
                queue.push_back(s);
            }
        }
    }
    let mut out: Vec<NumClass> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The E8 roots in N(X), as the Weyl orbit of the simple roots.
pub fn enumerate_roots(simple: &[NumClass]) -> Result<Vec<NumClass>> {
    reflection_closure(simple)
}

/// The ten distinguished roots α₁..α₁₀.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleRoots {
    pub alpha: [NumClass; 10],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootCertificate {
    pub gram_alpha_1_8: Vec<Vec<i64>>,
    pub gram_reordered: Vec<Vec<i64>>,
    pub gram_ab: Vec<Vec<i64>>,
    pub b1_dot_b2: i64,
}

fn gram_of(v: &[NumClass]) -> Vec<Vec<i64>> {
    v.iter().map(|a| v.iter().map(|b| pairing(a, b)).collect()).collect()
}

fn check_against_cartan(name: &str, g: &[Vec<i64>]) -> Result<()> {
    for (i, row) in g.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x != -E8_CARTAN[i][j] {
                return Err(Error::CertificateFailed(format!(
                    "{name}: entry ({},{}) is {x}, expected {}",
                    i + 1,
                    j + 1,
                    -E8_CARTAN[i][j]
                )));
            }
        }
    }
    Ok(())
}

impl SimpleRoots {
    pub fn from_table(t: &ClassTable) -> Self {
        use Sign::{Minus as M, Plus as P};
        let e = |s, i, j| t.e(s, i, j);
        SimpleRoots {
            alpha: [
                e(M, 0, 4) - e(P, 4, 4),
                e(P, 1, 4) - e(M, 2, 4),
                e(P, 4, 0) - e(P, 3, 0),
                e(P, 3, 0) - e(P, 2, 0),
                e(P, 2, 0) - e(P, 1, 0),
                e(P, 1, 0) - e(M, 0, 0),
                e(M, 0, 2) - e(M, 0, 4),
                e(M, 0, 3) - e(M, 0, 0),
                NumClass::canonical() - e(P, 0, 2),
                e(M, 0, 4) - e(M, 0, 1),
            ],
        }
    }

    /// α_i with 1-based index.
    pub fn alpha(&self, i: usize) -> NumClass {
        self.alpha[i - 1]
    }

    pub fn e8_basis(&self) -> [NumClass; 8] {
        std::array::from_fn(|i| self.alpha[i])
    }

    /// α₁₀, α₉, α₈, …, α₃.
    pub fn reordered_basis(&self) -> [NumClass; 8] {
        [10, 9, 8, 7, 6, 5, 4, 3].map(|i| self.alpha(i))
    }

    /// A₁..A₈ = α₁, α₃, α₄, α₅, α₆, α₇, α₈, α₁₀.
    pub fn a(&self) -> [NumClass; 8] {
        [1, 3, 4, 5, 6, 7, 8, 10].map(|i| self.alpha(i))
    }

    /// B₁ = α₂, B₂ = α₉.
    pub fn b(&self) -> [NumClass; 2] {
        [self.alpha(2), self.alpha(9)]
    }

    pub fn certify(&self) -> Result<RootCertificate> {
        for (i, a) in self.alpha.iter().enumerate() {
            if !is_root(a) {
                return Err(Error::CertificateFailed(format!("α{} = {a} is not a root", i + 1)));
            }
        }
        let g1 = gram_of(&self.e8_basis());
        check_against_cartan("Gram(α1..α8)", &g1)?;
        let g2 = gram_of(&self.reordered_basis());
        check_against_cartan("Gram(α10,α9,α8..α3)", &g2)?;
        let ab: Vec<NumClass> = self.a().into_iter().chain(self.b()).collect();
        let g3 = gram_of(&ab);
        // Expected diagram: A-chain, B1–A3, B2–A6, and B1·B2 = −1.
        let mut expected = vec![vec![0i64; 10]; 10];
        for (i, row) in expected.iter_mut().enumerate() {
            row[i] = -2;
        }
        let mut join = |x: usize, y: usize, v: i64| {
            expected[x][y] = v;
            expected[y][x] = v;
        };
        for i in 0..7 {
            join(i, i + 1, 1);
        }
        join(8, 2, 1);
        join(9, 5, 1);
        join(8, 9, -1);
        for i in 0..10 {
            for j in 0..10 {
                if g3[i][j] != expected[i][j] {
                    return Err(Error::CertificateFailed(format!(
                        "A/B diagram entry ({i},{j}) is {}, expected {}",
                        g3[i][j], expected[i][j]
                    )));
                }
            }
        }
        let b = self.b();
        Ok(RootCertificate {
            gram_alpha_1_8: g1,
            gram_reordered: g2,
            gram_ab: g3,
            b1_dot_b2: pairing(&b[0], &b[1]),
        })
    }
}

// ---------------------------------------------------------------- E8 model

/// The 240 roots of the Euclidean E8 model, in doubled coordinates:
/// ±(e_i ± e_j) become entries ±2, the half-vectors entries ±1.
pub fn e8_model_roots() -> Vec<[i64; 8]> {
    let mut out = Vec::with_capacity(240);
    for i in 0..8 {
        for j in i + 1..8 {
            for si in [2, -2] {
                for sj in [2, -2] {
                    let mut v = [0i64; 8];
                    v[i] = si;
                    v[j] = sj;
                    out.push(v);
                }
            }
        }
    }
    for bits in 0u32..256 {
        if bits.count_ones() % 2 == 0 {
            out.push(std::array::from_fn(|i| if bits >> i & 1 == 1 { -1 } else { 1 }));
        }
    }
    out
}

/// Simple roots of the model (doubled coordinates), in the Cartan numbering.
pub fn e8_model_simple() -> [[i64; 8]; 8] {
    let mut d = [[0i64; 8]; 8];
    d[0] = [1, -1, -1, -1, -1, -1, -1, 1];
    d[1][0] = 2;
    d[1][1] = 2;
    d[2][0] = -2;
    d[2][1] = 2;
    for (k, row) in d.iter_mut().enumerate().skip(3) {
        row[k - 1] = 2;
        row[k - 2] = -2;
    }
    d
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCheck {
    pub integral_vectors: usize,
    pub half_vectors: usize,
    pub matched: usize,
}

/// Independent count of E8 roots in the Euclidean model, and transport of
/// every model root into N(X) through the simple-root identification.
pub fn cross_check_model(simple: &[NumClass; 8], roots: &[NumClass]) -> Result<ModelCheck> {
    let model = e8_model_roots();
    let integral_vectors = model.iter().filter(|v| v.iter().any(|&x| x.abs() == 2)).count();
    let half_vectors = model.len() - integral_vectors;
    let delta = e8_model_simple();
    for (i, a) in delta.iter().enumerate() {
        for (j, b) in delta.iter().enumerate() {
            let dot: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
            if dot != 4 * E8_CARTAN[i][j] {
                return Err(Error::CertificateFailed(format!("model simple roots {i},{j} pair to {dot}/4")));
            }
        }
    }
    for v in &model {
        if v.iter().map(|x| x * x).sum::<i64>() != 8 {
            return Err(Error::CertificateFailed(format!("model vector {v:?} has norm ≠ 2")));
        }
    }
    let set: HashSet<&NumClass> = roots.iter().collect();
    // Columns of the system are the model simple roots.
    let m: Vec<Vec<i64>> = (0..8).map(|r| (0..8).map(|c| delta[c][r]).collect()).collect();
    let mut matched = 0;
    for v in &model {
        let c = solve(&m, v)
            .and_then(integral)
            .ok_or_else(|| Error::CertificateFailed(format!("model root {v:?} is not integral in the simple roots")))?;
        let image: NumClass = c.iter().zip(simple).map(|(&k, a)| k * *a).sum();
        if set.contains(&image) {
            matched += 1;
        }
    }
    Ok(ModelCheck { integral_vectors, half_vectors, matched })
}

// ---------------------------------------------------------------- sequences

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiFailure {
    pub earlier: usize,
    pub later: usize,
    pub chi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalReport {
    pub length: usize,
    pub checked: usize,
    pub failures: Vec<ChiFailure>,
}

impl ExceptionalReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks χ(l_j, l_i) = χ(l_i − l_j) = 0 for all j > i (1-based indices in
/// the report).
pub fn verify_numerically_exceptional(seq: &[NumClass]) -> ExceptionalReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            checked += 1;
            let v = chi_pair(&seq[j], &seq[i]);
            if v != 0 {
                failures.push(ChiFailure { earlier: i + 1, later: j + 1, chi: v });
            }
        }
    }
    ExceptionalReport { length: seq.len(), checked, failures }
}

/// χ vanishes in both directions for every pair.
pub fn completely_orthogonal(seq: &[NumClass]) -> bool {
    let rev: Vec<NumClass> = seq.iter().rev().copied().collect();
    verify_numerically_exceptional(seq).passes() && verify_numerically_exceptional(&rev).passes()
}

/// A₁, A₁+A₂, K−B₁, A₁+A₂+A₃, …, A₁+…+A₅, K−B₂, A₁+…+A₆, …, A₁+…+A₈, 0.
pub fn numerical_sequence(s: &SimpleRoots) -> Vec<NumClass> {
    let a = s.a();
    let b = s.b();
    let k = NumClass::canonical();
    let partial = |n: usize| a[..n].iter().copied().sum::<NumClass>();
    vec![
        partial(1),
        partial(2),
        k - b[0],
        partial(3),
        partial(4),
        partial(5),
        k - b[1],
        partial(6),
        partial(7),
        partial(8),
        NumClass::zero(),
    ]
}

/// Applies σ_α to every member. Since α·K = 0 this fixes the K-component and
/// reflects the degree-0 part.
pub fn reflect_sequence(alpha: &NumClass, seq: &[NumClass]) -> Result<Vec<NumClass>> {
    seq.iter().map(|c| weyl_reflect(alpha, c)).collect()
}

// ---------------------------------------------------------------- subsystems

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }

    pub fn root_count(self) -> usize {
        match self {
            DynkinType::A(n) => n * (n + 1),
            DynkinType::D(n) => 2 * n * (n - 1),
            DynkinType::E(6) => 72,
            DynkinType::E(7) => 126,
            DynkinType::E(8) => 240,
            DynkinType::E(n) => panic!("no E{n}"),
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

pub fn type_label(components: &[DynkinType]) -> String {
    components.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("+")
}

/// Connected components of a simply-laced diagram given by the pairing
/// matrix of norm −2 roots (edges where the pairing is 1), each classified.
/// Sorted by decreasing rank.
pub fn classify_diagram(gram: &[Vec<i64>]) -> Result<Vec<DynkinType>> {
    let n = gram.len();
    for (i, row) in gram.iter().enumerate() {
        if row[i] != -2 {
            return Err(Error::InvalidArgument("diagonal entries must be -2".into()));
        }
        for (j, &x) in row.iter().enumerate() {
            if i != j && !(x == 0 || x == 1) {
                return Err(Error::InvalidArgument(format!("entry ({i},{j}) = {x} is not a simply-laced edge")));
            }
        }
    }
    let adj = |i: usize| (0..n).filter(move |&j| j != i && gram[i][j] == 1);
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut nodes = vec![start];
        comp[start] = start;
        let mut k = 0;
        while k < nodes.len() {
            for j in adj(nodes[k]) {
                if comp[j] == usize::MAX {
                    comp[j] = start;
                    nodes.push(j);
                }
            }
            k += 1;
        }
        let edges: usize = nodes.iter().map(|&i| adj(i).count()).sum::<usize>() / 2;
        if edges + 1 != nodes.len() {
            return Err(Error::InvalidArgument("diagram component is not a tree".into()));
        }
        let branch: Vec<usize> = nodes.iter().copied().filter(|&i| adj(i).count() >= 3).collect();
        let m = nodes.len();
        let t = match branch.as_slice() {
            [] => DynkinType::A(m),
            [c] => {
                if adj(*c).count() != 3 {
                    return Err(Error::InvalidArgument("node of valence > 3".into()));
                }
                let mut arms: Vec<usize> = adj(*c)
                    .map(|first| {
                        let (mut prev, mut cur, mut len) = (*c, first, 1);
                        loop {
                            let next: Vec<usize> = adj(cur).filter(|&x| x != prev).collect();
                            match next.as_slice() {
                                [] => break len,
                                [x] => {
                                    prev = cur;
                                    cur = *x;
                                    len += 1;
                                }
                                _ => break usize::MAX,
                            }
                        }
                    })
                    .collect();
                arms.sort();
                match arms.as_slice() {
                    [1, 1, _] => DynkinType::D(m),
                    [1, 2, 2] => DynkinType::E(6),
                    [1, 2, 3] => DynkinType::E(7),
                    [1, 2, 4] => DynkinType::E(8),
                    _ => return Err(Error::InvalidArgument(format!("not a Dynkin diagram (arms {arms:?})"))),
                }
            }
            _ => return Err(Error::InvalidArgument("more than one branch node".into())),
        };
        out.push(t);
    }
    out.sort_by(|a, b| b.rank().cmp(&a.rank()).then(a.cmp(b)));
    Ok(out)
}

/// Coefficients of a root in the given simple roots.
fn simple_coordinates(simple: &[NumClass; 8], r: &NumClass) -> Result<[i64; 8]> {
    let m: Vec<Vec<i64>> = simple.iter().map(|a| simple.iter().map(|b| pairing(a, b)).collect()).collect();
    let rhs: Vec<i64> = simple.iter().map(|a| pairing(a, r)).collect();
    let c = solve(&m, &rhs)
        .and_then(integral)
        .ok_or_else(|| Error::Inconsistent(format!("{r} is not in the root lattice")))?;
    Ok(std::array::from_fn(|i| c[i]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalSubsystem {
    /// Deleted node of the extended diagram; 0 is the extra node −θ.
    pub deleted: usize,
    pub mark: i64,
    pub components: Vec<DynkinType>,
    pub label: String,
    pub root_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BdsReport {
    pub highest_root: NumClass,
    pub marks: [i64; 9],
    pub maximal: Vec<MaximalSubsystem>,
}

impl BdsReport {
    pub fn labels(&self) -> Vec<String> {
        self.maximal.iter().map(|m| m.label.clone()).collect()
    }
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Node deletion on the extended E8 diagram: removing a node whose mark in
/// the highest root is prime leaves a maximal closed subsystem. Each result is
/// classified from its Gram matrix and its root count is confirmed by
/// reflection closure inside N(X).
pub fn borel_de_siebenthal(simple: &[NumClass; 8], roots: &[NumClass]) -> Result<BdsReport> {
    let mut best: Option<(i64, NumClass, [i64; 8])> = None;
    for r in roots {
        let c = simple_coordinates(simple, r)?;
        let h: i64 = c.iter().sum();
        if best.as_ref().is_none_or(|b| h > b.0) {
            best = Some((h, *r, c));
        }
    }
    let (_, theta, coeffs) = best.ok_or_else(|| Error::InvalidArgument("empty root set".into()))?;
    if coeffs.iter().any(|&c| c <= 0) {
        return Err(Error::CertificateFailed("highest root is not positive".into()));
    }
    let mut marks = [1i64; 9];
    marks[1..].copy_from_slice(&coeffs);
    let mut nodes = vec![-theta];
    nodes.extend_from_slice(simple);
    let mut maximal = Vec::new();
    for (k, &mark) in marks.iter().enumerate() {
        if !is_prime(mark) {
            continue;
        }
        let kept: Vec<NumClass> = nodes.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, c)| *c).collect();
        let components = classify_diagram(&gram_of(&kept))?;
        let root_count = reflection_closure(&kept)?.len();
        let expected: usize = components.iter().map(|t| t.root_count()).sum();
        if root_count != expected {
            return Err(Error::CertificateFailed(format!(
                "node {k}: closure has {root_count} roots, type predicts {expected}"
            )));
        }
        let label = type_label(&components);
        maximal.push(MaximalSubsystem { deleted: k, mark, components, label, root_count });
    }
    Ok(BdsReport { highest_root: theta, marks, maximal })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedSubsystem {
    pub components: Vec<DynkinType>,
    pub roots: usize,
    pub reflection_closed: bool,
    pub addition_closed: bool,
}

/// The subsystem generated by `gens` inside the root set, with the two
/// closedness conditions checked directly.
pub fn closed_subsystem(gens: &[NumClass], all_roots: &[NumClass]) -> Result<ClosedSubsystem> {
    let psi = reflection_closure(gens)?;
    let phi: HashSet<&NumClass> = all_roots.iter().collect();
    if psi.iter().any(|r| !phi.contains(r)) {
        return Err(Error::Inconsistent("generated roots escape the root set".into()));
    }
    let set: BTreeSet<&NumClass> = psi.iter().collect();
    let mut reflection_closed = true;
    let mut addition_closed = true;
    for a in &psi {
        for b in &psi {
            let s = *b + pairing(b, a) * *a;
            reflection_closed &= set.contains(&s);
            let sum = *a + *b;
            if phi.contains(&sum) {
                addition_closed &= set.contains(&sum);
            }
        }
    }
    Ok(ClosedSubsystem {
        components: classify_diagram(&gram_of(gens))?,
        roots: psi.len(),
        reflection_closed,
        addition_closed,
    })
}
