//! Certificates that certain line bundles on X have no sections.
//!
//! Two engines live here. The first works on the Campedelli model
//! P¹ × P¹: sections of `kK + Σ e E` correspond to bidegree (k, 4k) forms
//! with prescribed multiplicities at ten points, so vanishing reduces to the
//! rank of an explicit matrix over Q(ζ₅). The second works on the Fermat
//! quintic: sections of `8K − D′` twisted by torsion are Z/5-graded pieces of
//! the ideal of the pullback of D′.
//!
//! The first P¹ factor carries the ψ-coordinate, the second the
//! φ-coordinate; the fibres F_a = {φ = −ξ^{3a}} each contain p⁺_a and p⁻_a,
//! and p^±_a is the image of E^±_{a,0}.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::curves::{line_orbit, Catalog, CurveRef, Family, GodeauxCurve, Sign};
use crate::cyclotomic::{CycNum, Z5};
use crate::error::{Error, Result};
use crate::lattice::{pairing, ClassTable, NumClass};
use crate::linalg;
use crate::poly::{Ideal, MPoly, Ring};

fn xi(k: i64) -> CycNum {
    CycNum::zeta_pow(k)
}

// ---------------------------------------------------------------- points

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampedelliPoint {
    pub sign: Sign,
    pub a: Z5,
    pub psi: [CycNum; 2],
    pub phi: [CycNum; 2],
}

impl CampedelliPoint {
    pub fn new(sign: Sign, a: Z5) -> Self {
        let g = CycNum::golden();
        let s = match sign {
            Sign::Plus => g,
            Sign::Minus => -g.inv().expect("golden ratio is nonzero"),
        };
        let ai = a.value();
        CampedelliPoint {
            sign,
            a,
            psi: [&s * &xi(ai), CycNum::one()],
            phi: [-xi(3 * ai), CycNum::one()],
        }
    }

    pub fn label(&self) -> String {
        format!("p{}_{}", self.sign.symbol(), self.a)
    }
}

/// p⁺₀..p⁺₄, p⁻₀..p⁻₄.
pub fn campedelli_points() -> Vec<CampedelliPoint> {
    Sign::both().into_iter().flat_map(|s| Z5::all().map(move |a| CampedelliPoint::new(s, a))).collect()
}

/// Linear form c₀X₀ + c₁X₁ on one P¹ factor.
type Form = [CycNum; 2];

fn zero_of(f: &Form) -> [CycNum; 2] {
    [-f[1].clone(), f[0].clone()]
}

fn same_point(p: &[CycNum; 2], q: &[CycNum; 2]) -> bool {
    (&p[0] * &q[1] - &p[1] * &q[0]).is_zero()
}

/// The ideal generators of a point: a ψ-form and a φ-form.
fn point_forms(p: &CampedelliPoint) -> (Form, Form) {
    ([p.psi[1].clone(), -p.psi[0].clone()], [p.phi[1].clone(), -p.phi[0].clone()])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CampedelliAut {
    Delta,
    Alpha,
}

impl CampedelliAut {
    /// Images of (X₀, X₁) under the substitution on the ψ and φ factors.
    fn substitution(self) -> ([Form; 2], [Form; 2]) {
        let (z, o) = (CycNum::zero(), CycNum::one());
        match self {
            CampedelliAut::Delta => (
                [[xi(2), z.clone()], [z.clone(), xi(3)]],
                [[xi(1), z.clone()], [z, xi(4)]],
            ),
            CampedelliAut::Alpha => ([[z.clone(), o.clone()], [-o.clone(), z.clone()]], [[z.clone(), o.clone()], [o, z]]),
        }
    }

    fn apply(images: &[Form; 2], f: &Form) -> Form {
        [
            &(&f[0] * &images[0][0]) + &(&f[1] * &images[1][0]),
            &(&f[0] * &images[0][1]) + &(&f[1] * &images[1][1]),
        ]
    }

    /// The point cut out by the transformed ideal of `p`.
    pub fn on_point(self, p: &CampedelliPoint) -> Result<CampedelliPoint> {
        let (sp, sf) = self.substitution();
        let (fp, ff) = point_forms(p);
        let (zp, zf) = (zero_of(&Self::apply(&sp, &fp)), zero_of(&Self::apply(&sf, &ff)));
        campedelli_points()
            .into_iter()
            .find(|q| same_point(&q.psi, &zp) && same_point(&q.phi, &zf))
            .ok_or_else(|| Error::Inconsistent(format!("{self:?} moves {} off the configuration", p.label())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionRow {
    pub point: String,
    pub delta: String,
    pub alpha: String,
}

/// δ and α on the ten points; checked against δ(p^±_a) = p^±_{a+1} and
/// α(p^±_a) = p^∓_{−a}.
pub fn action_table() -> Result<Vec<ActionRow>> {
    let mut rows = Vec::new();
    for p in campedelli_points() {
        let d = CampedelliAut::Delta.on_point(&p)?;
        let a = CampedelliAut::Alpha.on_point(&p)?;
        if (d.sign, d.a) != (p.sign, p.a + Z5::new(1)) || (a.sign, a.a) != (p.sign.flip(), -p.a) {
            return Err(Error::CertificateFailed(format!("unexpected action on {}", p.label())));
        }
        rows.push(ActionRow { point: p.label(), delta: d.label(), alpha: a.label() });
    }
    Ok(rows)
}

/// The pencils φ = (φ₁, φ₂) of cubics and ψ = (ψ₁, ψ₂) of quartics on the
/// Fermat quintic whose ratios give the map to P¹ × P¹.
pub fn campedelli_forms(ring: &Arc<Ring>) -> Result<[MPoly; 4]> {
    Ok([
        MPoly::parse(ring, "x1^2*x3 + x4^2*x2")?,
        MPoly::parse(ring, "x1*x2^2 + x4*x3^2")?,
        MPoly::parse(ring, "x1^3*x2 - x4^3*x3")?,
        MPoly::parse(ring, "x1*x3^3 - x4*x2^3")?,
    ])
}

/// Pullbacks to Y of the two generators of the ideal of `p`.
pub fn point_equations(ring: &Arc<Ring>, p: &CampedelliPoint) -> Result<[MPoly; 2]> {
    let [phi1, phi2, psi1, psi2] = campedelli_forms(ring)?;
    let (fp, ff) = point_forms(p);
    Ok([&psi1.scale(&fp[0]) + &psi2.scale(&fp[1]), &phi1.scale(&ff[0]) + &phi2.scale(&ff[1])])
}

// ---------------------------------------------------------------- profiles

/// D = kK + Σ e⁺_a E⁺_{a,0} + Σ e⁻_a E⁻_{a,0}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplicityProfile {
    pub k: i64,
    pub plus: [i64; 5],
    pub minus: [i64; 5],
}

impl MultiplicityProfile {
    pub fn new(k: i64) -> Self {
        MultiplicityProfile { k, plus: [0; 5], minus: [0; 5] }
    }

    pub fn with(mut self, sign: Sign, a: Z5, e: i64) -> Self {
        let slot = a.value() as usize;
        match sign {
            Sign::Plus => self.plus[slot] += e,
            Sign::Minus => self.minus[slot] += e,
        }
        self
    }

    pub fn coefficient(&self, sign: Sign, a: Z5) -> i64 {
        match sign {
            Sign::Plus => self.plus[a.value() as usize],
            Sign::Minus => self.minus[a.value() as usize],
        }
    }

    /// Whether the reduction to P¹ × P¹ applies.
    pub fn validate(&self) -> Result<()> {
        if !(0..=2).contains(&self.k) {
            return Err(Error::InvalidArgument(format!("k = {} outside 0..=2", self.k)));
        }
        for a in 0..5 {
            let (p, m) = (self.plus[a], self.minus[a]);
            if p + m - self.k > 0 || p > self.k || m > self.k {
                return Err(Error::InvalidArgument(format!("coefficients ({p}, {m}) at fibre {a} exceed k = {}", self.k)));
            }
        }
        Ok(())
    }

    /// Required multiplicity k − e at p^±_a.
    pub fn multiplicity(&self, sign: Sign, a: Z5) -> i64 {
        self.k - self.coefficient(sign, a)
    }

    pub fn num_class(&self, table: &ClassTable) -> NumClass {
        let mut c = self.k * NumClass::canonical();
        for a in Z5::all() {
            for s in Sign::both() {
                c = c + self.coefficient(s, a) * table.e(s, a.value(), 0);
            }
        }
        c
    }

    pub fn describe(&self) -> String {
        let mut s = format!("{}K", self.k);
        for a in Z5::all() {
            for sign in Sign::both() {
                let e = self.coefficient(sign, a);
                if e != 0 {
                    s.push_str(&format!(" {} {}E{}_{}0", if e > 0 { '+' } else { '-' }, if e.abs() > 1 { e.abs().to_string() } else { String::new() }, sign.symbol(), a));
                }
            }
        }
        s
    }
}

/// Profile of K_X.
pub fn canonical_profile() -> MultiplicityProfile {
    MultiplicityProfile::new(1)
}

/// K + E⁺_{i₀,0} − E⁺_{j₀,0} for all i₀ ≠ j₀.
pub fn twisted_canonical_profiles() -> Vec<MultiplicityProfile> {
    let mut out = Vec::new();
    for i in Z5::all() {
        for j in Z5::all() {
            if i != j {
                out.push(MultiplicityProfile::new(1).with(Sign::Plus, i, 1).with(Sign::Plus, j, -1));
            }
        }
    }
    out
}

/// 2K + E_I + E_J − E_K − E_L with four distinct fibres and arbitrary signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FourFibreClass {
    pub added: [(Sign, Z5); 2],
    pub removed: [(Sign, Z5); 2],
}

impl FourFibreClass {
    pub fn new(added: [(Sign, Z5); 2], removed: [(Sign, Z5); 2]) -> Result<Self> {
        let mut fibres = vec![added[0].1, added[1].1, removed[0].1, removed[1].1];
        fibres.sort();
        fibres.dedup();
        if fibres.len() != 4 {
            return Err(Error::InvalidArgument("the four curves must lie in distinct fibres".into()));
        }
        Ok(FourFibreClass { added, removed })
    }

    pub fn missing(&self) -> Z5 {
        Z5::all()
            .find(|f| !self.added.iter().chain(&self.removed).any(|(_, g)| g == f))
            .expect("four of five fibres are used")
    }

    pub fn profile(&self) -> MultiplicityProfile {
        let mut p = MultiplicityProfile::new(2);
        for (s, a) in self.added {
            p = p.with(s, a, 1);
        }
        for (s, a) in self.removed {
            p = p.with(s, a, -1);
        }
        p
    }

    /// Signs of the elliptic curves in D′ = 2L⁰₀ + Σ E, one per used fibre,
    /// after rewriting each added E^s as 3K − L⁰₀ − E^{−s}.
    pub fn residual_signs(&self) -> [Option<Sign>; 5] {
        let mut out = [None; 5];
        for (s, a) in self.added {
            out[a.value() as usize] = Some(s.flip());
        }
        for (s, a) in self.removed {
            out[a.value() as usize] = Some(s);
        }
        out
    }

    pub fn describe(&self) -> String {
        let t = |(s, a): (Sign, Z5)| format!("E{}_{}0", s.symbol(), a);
        format!("2K + {} + {} - {} - {}", t(self.added[0]), t(self.added[1]), t(self.removed[0]), t(self.removed[1]))
    }

    /// All 480 classes: a missing fibre, an unordered pair of added fibres,
    /// and a sign for each of the four curves.
    pub fn all() -> Vec<FourFibreClass> {
        let mut out = Vec::new();
        for m in Z5::all() {
            let used: Vec<Z5> = Z5::all().filter(|f| *f != m).collect();
            for x in 0..4 {
                for y in x + 1..4 {
                    let rest: Vec<Z5> = (0..4).filter(|&k| k != x && k != y).map(|k| used[k]).collect();
                    for bits in 0..16u8 {
                        let s = |b: u8| if bits >> b & 1 == 0 { Sign::Plus } else { Sign::Minus };
                        out.push(
                            FourFibreClass::new([(s(0), used[x]), (s(1), used[y])], [(s(2), rest[0]), (s(3), rest[1])])
                                .expect("distinct fibres"),
                        );
                    }
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------- linear systems

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankWitness {
    pub bidegree: (i64, i64),
    pub columns: usize,
    pub rows: usize,
    pub rank: usize,
    /// Conditions as (point label, multiplicity).
    pub conditions: Vec<(String, i64)>,
    pub matrix: Vec<Vec<CycNum>>,
}

impl RankWitness {
    pub fn kernel_dim(&self) -> usize {
        self.columns - self.rank
    }

    pub fn independent(&self) -> bool {
        self.rank == self.rows
    }

    /// Recomputes the rank of the stored matrix.
    pub fn recheck(&self) -> bool {
        linalg::rank(&self.matrix) == self.rank
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Local coordinate and exponent map of a P¹ point in the chart where its
/// nonzero coordinate is set to 1.
fn chart(p: &[CycNum; 2], d: i64) -> (CycNum, Box<dyn Fn(i64) -> i64>) {
    if !p[1].is_zero() {
        (p[0].checked_div(&p[1]).expect("nonzero"), Box::new(|a| a))
    } else {
        (p[1].checked_div(&p[0]).expect("nonzero"), Box::new(move |a| d - a))
    }
}

/// Rows imposing multiplicity ≥ m at each point on forms of the bidegree:
/// all Taylor coefficients of order < m vanish. Columns are the monomials
/// X₀^a X₁^{d₁−a} Y₀^b Y₁^{d₂−b}, a-major.
pub fn multiplicity_conditions(bidegree: (i64, i64), conditions: &[(&CampedelliPoint, i64)]) -> RankWitness {
    let (d1, d2) = bidegree;
    let columns = if d1 < 0 || d2 < 0 { 0 } else { ((d1 + 1) * (d2 + 1)) as usize };
    let mut matrix: linalg::Matrix = Vec::new();
    for (p, m) in conditions {
        if *m <= 0 || columns == 0 {
            continue;
        }
        let (u, eu) = chart(&p.psi, d1);
        let (v, ev) = chart(&p.phi, d2);
        for order in 0..*m {
            for pu in 0..=order {
                let pv = order - pu;
                let mut row = Vec::with_capacity(columns);
                for a in 0..=d1 {
                    for b in 0..=d2 {
                        let (ea, eb) = (eu(a), ev(b));
                        let c = binomial(ea, pu) * binomial(eb, pv);
                        if c == 0 {
                            row.push(CycNum::zero());
                        } else {
                            row.push((&u.pow((ea - pu) as u32) * &v.pow((eb - pv) as u32)).scale_int(&c.into()));
                        }
                    }
                }
                matrix.push(row);
            }
        }
    }
    let rank = if matrix.is_empty() { 0 } else { linalg::rank(&matrix) };
    RankWitness {
        bidegree,
        columns,
        rows: matrix.len(),
        rank,
        conditions: conditions.iter().map(|(p, m)| (p.label(), *m)).collect(),
        matrix,
    }
}

/// Dimension of bidegree (k, 4k) forms with multiplicity k − e at each point;
/// zero certifies H⁰(X, O(D)) = 0.
pub fn h0_bidegree_system(profile: &MultiplicityProfile) -> Result<RankWitness> {
    profile.validate()?;
    let pts = campedelli_points();
    let conds: Vec<(&CampedelliPoint, i64)> = pts.iter().map(|p| (p, profile.multiplicity(p.sign, p.a))).collect();
    Ok(multiplicity_conditions((profile.k, 4 * profile.k), &conds))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreReduction {
    /// How often each fibre F_a was split off.
    pub fibres_removed: [i64; 5],
    pub residual: RankWitness,
    /// Residual has no forms.
    pub certifies: bool,
}

/// Splits off fibres forced by Bézout: a (d₁, d₂) form meets a fibre in d₁
/// points, so if the multiplicities on a fibre add up to more than d₁ the
/// fibre is a component. Repeats until stable, then solves the residual
/// system.
pub fn reduction_check(profile: &MultiplicityProfile) -> Result<FibreReduction> {
    profile.validate()?;
    let pts = campedelli_points();
    let mut mult: Vec<i64> = pts.iter().map(|p| profile.multiplicity(p.sign, p.a).max(0)).collect();
    let (d1, mut d2) = (profile.k, 4 * profile.k);
    let mut removed = [0i64; 5];
    loop {
        let mut changed = false;
        for a in Z5::all() {
            let on_fibre: Vec<usize> = (0..pts.len()).filter(|&i| pts[i].a == a).collect();
            let total: i64 = on_fibre.iter().map(|&i| mult[i]).sum();
            if total > d1 && d2 >= 0 {
                for &i in &on_fibre {
                    mult[i] = (mult[i] - 1).max(0);
                }
                removed[a.value() as usize] += 1;
                d2 -= 1;
                changed = true;
            }
        }
        if !changed || d2 < 0 {
            break;
        }
    }
    let conds: Vec<(&CampedelliPoint, i64)> = pts.iter().zip(&mult).filter(|(_, m)| **m > 0).map(|(p, m)| (p, *m)).collect();
    let residual = multiplicity_conditions((d1, d2), &conds);
    let certifies = residual.kernel_dim() == 0;
    Ok(FibreReduction { fibres_removed: removed, residual, certifies })
}

/// Whether a reduced four-fibre configuration has the shape drawn for it:
/// one simple point on each of the four used fibres and both points on the
/// missing one, on bidegree (2, 1).
pub fn matches_pictured_shape(case: &FourFibreClass, red: &FibreReduction) -> bool {
    if red.residual.bidegree != (2, 1) || red.residual.conditions.len() != 6 {
        return false;
    }
    let missing = format!("_{}", case.missing());
    let on_missing = red.residual.conditions.iter().filter(|(l, _)| l.ends_with(&missing)).count();
    on_missing == 2 && red.residual.conditions.iter().all(|(_, m)| *m == 1)
}

// ---------------------------------------------------------------- certificates

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    BidegreeRank,
    TorsionNegative,
    NonEffective,
    Degree7Groebner,
    FormCount,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Rank {
        divisor: String,
        direct: RankWitness,
        reduction: FibreReduction,
    },
    Torsion {
        curve: GodeauxCurve,
        torsion: Z5,
        self_intersection: i64,
        pullback_self_intersection: i64,
        /// h⁰(Y, p*O(C)) = h⁰(X, O(C)) + Σ_{τ≠0} h⁰(X, O(C) ⊗ τ).
        h0_pullback: i64,
        h0_untwisted: i64,
    },
    Classifier {
        class: NumClass,
        degree: i64,
        reason: String,
    },
    Degree7 {
        outcome: Degree7Outcome,
        torsion: Z5,
    },
    /// H⁰(X, mK ⊗ τ^t) is the weight-t part of H⁰(Y, O(m)).
    Forms {
        degree: u32,
        weight: Z5,
        monomials: usize,
        fermat_multiples: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingCertificate {
    pub claim: String,
    pub h0: usize,
    pub method: Method,
    pub witness: Witness,
}

/// h⁰ = 0 for a divisor of Prop-6.2 shape, certified by both the direct rank
/// computation and the fibre reduction.
pub fn bidegree_certificate(profile: &MultiplicityProfile) -> Result<VanishingCertificate> {
    let direct = h0_bidegree_system(profile)?;
    let reduction = reduction_check(profile)?;
    if (direct.kernel_dim() == 0) != reduction.certifies {
        return Err(Error::Inconsistent(format!("direct and reduced systems disagree for {}", profile.describe())));
    }
    Ok(VanishingCertificate {
        claim: format!("h0({}) = {}", profile.describe(), direct.kernel_dim()),
        h0: direct.kernel_dim(),
        method: Method::BidegreeRank,
        witness: Witness::Rank { divisor: profile.describe(), direct, reduction },
    })
}

/// O(C) ⊗ τ has no sections when C is one of the elliptic curves and τ ≠ 0:
/// the pullback of C is a single irreducible curve of negative square, so
/// the five torsion twists share one section.
pub fn torsion_vanishing(curve: GodeauxCurve, torsion: Z5, table: &ClassTable) -> Result<VanishingCertificate> {
    let GodeauxCurve::Elliptic { .. } = curve else {
        return Err(Error::InvalidArgument(format!(
            "{curve}: the pullback is not a single irreducible curve"
        )));
    };
    if torsion == Z5::ZERO {
        return Err(Error::InvalidArgument(format!("{curve} with trivial torsion has h0 = 1")));
    }
    let c = table.get(curve).ok_or_else(|| Error::InvalidArgument(format!("{curve} is not cataloged")))?;
    let self_intersection = pairing(&c, &c);
    if self_intersection >= 0 {
        return Err(Error::InvalidArgument(format!("{curve} has nonnegative square")));
    }
    Ok(VanishingCertificate {
        claim: format!("h0(O({curve}) ⊗ τ^{torsion}) = 0"),
        h0: 0,
        method: Method::TorsionNegative,
        witness: Witness::Torsion {
            curve,
            torsion,
            self_intersection,
            pullback_self_intersection: 5 * self_intersection,
            h0_pullback: 1,
            h0_untwisted: 1,
        },
    })
}

// ---------------------------------------------------------------- degree 7

/// Graded pieces of ideals of curves on the Fermat quintic, with the
/// component ideals of D′ built once and shared.
pub struct SectionsEngine {
    ring: Arc<Ring>,
    catalog: Arc<Catalog>,
    double_lines: Mutex<Option<Arc<Vec<Ideal>>>>,
    elliptic: Mutex<HashMap<(Sign, Z5), Arc<Ideal>>>,
    outcomes: Mutex<HashMap<[Option<Sign>; 5], Degree7Outcome>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degree7Outcome {
    /// Sign of the elliptic curve on each fibre; `None` on the missing one.
    pub signs: [Option<Sign>; 5],
    /// dim of the degree-7 piece modulo the Fermat relation, by weight.
    pub degree7: [usize; 5],
    /// dim of the degree-8 piece modulo the Fermat relation, by weight.
    pub degree8: [usize; 5],
    /// h⁰(O(8K − D′) ⊗ τ^i), i = 0..4.
    pub h0: [usize; 5],
    pub special: bool,
    /// The invariant septic in the special case.
    pub septic: Option<String>,
}

impl SectionsEngine {
    pub fn new(catalog: Arc<Catalog>) -> Self {
        SectionsEngine {
            ring: catalog.ring().clone(),
            catalog,
            double_lines: Mutex::new(None),
            elliptic: Mutex::new(HashMap::new()),
            outcomes: Mutex::new(HashMap::new()),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    fn weighted_count(&self, d: u32, w: Z5) -> usize {
        self.ring.monomials_of_degree(d).iter().filter(|m| self.ring.monomial_weight(m) == w).count()
    }

    /// h⁰(X, mK ⊗ τ^t) from forms of degree m and weight t on Y.
    pub fn canonical_multiple(&self, m: u32, torsion: Z5) -> VanishingCertificate {
        let monomials = self.weighted_count(m, torsion);
        let fermat_multiples = if m >= 5 { self.weighted_count(m - 5, torsion) } else { 0 };
        let h0 = monomials - fermat_multiples;
        VanishingCertificate {
            claim: format!("h0({m}K ⊗ τ^{torsion}) = {h0}"),
            h0,
            method: Method::FormCount,
            witness: Witness::Forms { degree: m, weight: torsion, monomials, fermat_multiples },
        }
    }

    fn irrelevant(&self) -> Result<Ideal> {
        Ideal::new(&self.ring, (0..4).map(|i| self.ring.var_at(i)).collect())
    }

    /// Ideals of 2l for the five lines over L⁰₀: (I_l² + (F)) saturated.
    pub fn double_lines(&self) -> Result<Arc<Vec<Ideal>>> {
        if let Some(v) = self.double_lines.lock().expect("poisoned").as_ref() {
            return Ok(v.clone());
        }
        let m = self.irrelevant()?;
        let mut out = Vec::new();
        for c in line_orbit(Family::Zero, Z5::ZERO) {
            let sq = self.catalog.ideal(c).power(2).add_gens(&[self.catalog.fermat()]);
            out.push(sq.saturate_by_ideal(&m)?);
        }
        let out = Arc::new(out);
        *self.double_lines.lock().expect("poisoned") = Some(out.clone());
        Ok(out)
    }

    pub fn elliptic(&self, sign: Sign, a: Z5) -> Result<Arc<Ideal>> {
        if let Some(i) = self.elliptic.lock().expect("poisoned").get(&(sign, a)) {
            return Ok(i.clone());
        }
        let base = self.catalog.ideal(CurveRef::Elliptic { sign, i: a, j: Z5::ZERO });
        let i = Arc::new(base.add_gens(&[self.catalog.fermat()]).saturate_by_ideal(&self.irrelevant()?)?);
        self.elliptic.lock().expect("poisoned").insert((sign, a), i.clone());
        Ok(i)
    }

    fn components(&self, signs: &[Option<Sign>; 5]) -> Result<Vec<Ideal>> {
        let mut out: Vec<Ideal> = self.double_lines()?.iter().cloned().collect();
        for a in Z5::all() {
            if let Some(s) = signs[a.value() as usize] {
                out.push((*self.elliptic(s, a)?).clone());
            }
        }
        Ok(out)
    }

    /// Dimension of (I_{D′})_{d,w} modulo F·S_{d−5}.
    fn quotient_dim(&self, comps: &[Ideal], d: u32, w: Z5) -> Result<(usize, Ideal)> {
        let piece = Ideal::intersection_piece(comps, d, Some(w))?;
        let fermat_multiples = if d >= 5 { self.weighted_count(d - 5, w) } else { 0 };
        let dim = piece.dim().checked_sub(fermat_multiples).ok_or_else(|| {
            Error::Inconsistent("piece is smaller than the Fermat multiples it must contain".into())
        })?;
        let gens = piece.polys(&self.ring);
        let ideal = Ideal::new(&self.ring, if gens.is_empty() { vec![MPoly::zero(&self.ring)] } else { gens })?;
        Ok((dim, ideal))
    }

    /// Sections of 8K − D′ with D′ = 2L⁰₀ + Σ E^{s_a}_{a,0} over the fibres
    /// with a sign. Either there is a unique invariant septic through D′ and
    /// the twists by τ^i, i ≠ 0, each have one section; or nothing through D′
    /// exists below degree 9.
    pub fn degree7_at(&self, signs: [Option<Sign>; 5]) -> Result<Degree7Outcome> {
        if signs.iter().filter(|s| s.is_some()).count() != 4 {
            return Err(Error::InvalidArgument("exactly four fibres carry an elliptic curve".into()));
        }
        if let Some(o) = self.outcomes.lock().expect("poisoned").get(&signs) {
            return Ok(o.clone());
        }
        let comps = self.components(&signs)?;
        let mut degree7 = [0usize; 5];
        let mut degree8 = [0usize; 5];
        let mut septic = None;
        for w in Z5::all() {
            let (d7, piece) = self.quotient_dim(&comps, 7, w)?;
            degree7[w.value() as usize] = d7;
            if w == Z5::ZERO && d7 > 0 {
                let fermat = self.catalog.fermat();
                let f = piece
                    .gens()
                    .iter()
                    .find(|g| !g.is_zero() && !Ideal::new(&self.ring, vec![fermat.clone()]).and_then(|i| i.contains(g)).unwrap_or(true))
                    .cloned();
                septic = f.map(|f| f.to_string());
            }
            degree8[w.value() as usize] = self.quotient_dim(&comps, 8, w)?.0;
        }
        let special = degree7 == [1, 0, 0, 0, 0] && degree8 == [0, 1, 1, 1, 1];
        let generic = degree7 == [0; 5] && degree8 == [0; 5];
        if !special && !generic {
            return Err(Error::Undecided(format!(
                "degree-7 pieces {degree7:?} and degree-8 pieces {degree8:?} match neither pattern"
            )));
        }
        let out = Degree7Outcome { signs, degree7, degree8, h0: degree8, special, septic: if special { septic } else { None } };
        self.outcomes.lock().expect("poisoned").insert(signs, out.clone());
        Ok(out)
    }

    /// The normalized case: fibre 0 missing, `signs` on fibres 1..4.
    pub fn degree7_check(&self, signs: [Sign; 4]) -> Result<Degree7Outcome> {
        let mut s = [None; 5];
        for (k, sign) in signs.into_iter().enumerate() {
            s[k + 1] = Some(sign);
        }
        self.degree7_at(s)
    }

    /// Certificate for h⁰((2K + E_I + E_J − E_K − E_L) ⊗ τ^t).
    pub fn four_fibre_certificate(&self, case: &FourFibreClass, torsion: Z5) -> Result<VanishingCertificate> {
        let outcome = self.degree7_at(case.residual_signs())?;
        let h0 = outcome.h0[torsion.value() as usize];
        Ok(VanishingCertificate {
            claim: format!("h0(({}) ⊗ τ^{torsion}) = {h0}", case.describe()),
            h0,
            method: Method::Degree7Groebner,
            witness: Witness::Degree7 { outcome, torsion },
        })
    }
}

/// 8K − 2L⁰₀ − Σ E^{s_a}_{a,0}.
pub fn residual_class(signs: &[Option<Sign>; 5], table: &ClassTable) -> Result<NumClass> {
    let l00 = table
        .get(GodeauxCurve::line(Family::Zero, 0))
        .ok_or_else(|| Error::InvalidArgument("L0_0 missing from the table".into()))?;
    let mut c = 8 * NumClass::canonical() - 2 * l00;
    for a in 0..5 {
        if let Some(s) = signs[a] {
            c = c - table.e(s, a as i64, 0);
        }
    }
    Ok(c)
}

/// The line class L^±_k with c = K + L^±_k numerically, if any.
pub fn is_numerically_k_plus_line(c: &NumClass, table: &ClassTable) -> Option<GodeauxCurve> {
    for family in [Family::Plus, Family::Minus] {
        for k in 0..5 {
            let l = GodeauxCurve::line(family, k);
            if let Some(lc) = table.get(l) {
                if NumClass::canonical() + lc == *c {
                    return Some(l);
                }
            }
        }
    }
    None
}

/// All sixteen normalized sign patterns, in binary order with + first.
pub fn sign_patterns() -> Vec<[Sign; 4]> {
    (0..16u8)
        .map(|bits| std::array::from_fn(|k| if bits >> (3 - k) & 1 == 0 { Sign::Plus } else { Sign::Minus }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_coordinates() {
        let p = CampedelliPoint::new(Sign::Plus, Z5::ZERO);
        assert!(same_point(&p.phi, &[CycNum::from_int(-1), CycNum::one()]));
        let pts = campedelli_points();
        assert_eq!(pts.len(), 10);
        // ψ separates all ten points; φ pairs them by fibre
        for (x, p) in pts.iter().enumerate() {
            for q in &pts[x + 1..] {
                assert!(!same_point(&p.psi, &q.psi));
                assert_eq!(same_point(&p.phi, &q.phi), p.a == q.a);
            }
        }
    }

    #[test]
    fn actions() {
        let rows = action_table().unwrap();
        assert_eq!(rows.len(), 10);
        let p = CampedelliPoint::new(Sign::Plus, Z5::new(1));
        let q = CampedelliAut::Alpha.on_point(&p).unwrap();
        assert_eq!((q.sign, q.a), (Sign::Minus, Z5::new(4)));
        let d = CampedelliAut::Delta.on_point(&CampedelliPoint::new(Sign::Plus, Z5::ZERO)).unwrap();
        assert_eq!((d.sign, d.a), (Sign::Plus, Z5::new(1)));
    }

    #[test]
    fn empty_conditions_give_full_space() {
        let w = multiplicity_conditions((1, 4), &[]);
        assert_eq!(w.kernel_dim(), 10);
        assert_eq!(multiplicity_conditions((2, 1), &[]).kernel_dim(), 6);
    }

    #[test]
    fn profile_validation() {
        assert!(canonical_profile().validate().is_ok());
        assert!(MultiplicityProfile::new(3).validate().is_err());
        assert!(MultiplicityProfile::new(1).with(Sign::Plus, Z5::ZERO, 1).with(Sign::Minus, Z5::ZERO, 1).validate().is_err());
    }

    #[test]
    fn canonical_and_twisted_canonical() {
        let w = h0_bidegree_system(&canonical_profile()).unwrap();
        assert_eq!((w.columns, w.rows, w.rank), (10, 10, 10));
        assert!(w.recheck());
        for p in twisted_canonical_profiles() {
            assert_eq!(h0_bidegree_system(&p).unwrap().kernel_dim(), 0, "{}", p.describe());
            let r = reduction_check(&p).unwrap();
            assert!(r.certifies);
            assert_eq!(r.residual.bidegree, (1, 0));
            assert_eq!(r.fibres_removed.iter().sum::<i64>(), 4);
        }
    }

    #[test]
    fn repeated_point_is_dependent() {
        let p = CampedelliPoint::new(Sign::Plus, Z5::ZERO);
        let others: Vec<CampedelliPoint> = (1..5).map(|a| CampedelliPoint::new(Sign::Minus, Z5::new(a))).collect();
        let mut conds = vec![(&p, 1), (&p, 1)];
        conds.extend(others.iter().map(|q| (q, 1)));
        let w = multiplicity_conditions((2, 1), &conds);
        assert_eq!(w.rows, 6);
        assert!(w.rank < 6);
        assert!(!w.independent());
    }

    #[test]
    fn sign_pattern_order() {
        let p = sign_patterns();
        assert_eq!(p.len(), 16);
        assert_eq!(p[0], [Sign::Plus; 4]);
        assert_eq!(p[9], [Sign::Minus, Sign::Plus, Sign::Plus, Sign::Minus]);
    }

    #[test]
    fn four_fibre_enumeration() {
        let all = FourFibreClass::all();
        assert_eq!(all.len(), 480);
        let c = all[0];
        assert_eq!(c.profile().k, 2);
        assert!(c.profile().validate().is_ok());
        assert!(FourFibreClass::new([(Sign::Plus, Z5::ZERO), (Sign::Plus, Z5::ZERO)], [(Sign::Plus, Z5::new(1)), (Sign::Plus, Z5::new(2))]).is_err());
    }
}
