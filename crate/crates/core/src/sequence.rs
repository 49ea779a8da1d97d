//! The exceptional sequence of eleven line bundles on X.
//!
//! Bundles are kept as formal divisor expressions in K and the elliptic
//! curves, together with a torsion exponent relative to that expression.
//! Every linear equivalence used is one that holds exactly (the fibre
//! relation E⁺_a + E⁻_a ~ E⁺_b + E⁻_b), so torsion bookkeeping never relies on
//! the unknown torsion components of individual curves.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curves::{GodeauxCurve, Sign};
use crate::cyclotomic::Z5;
use crate::error::{Error, Result};
use crate::lattice::{chi_pair, numerical_sequence, ClassTable, LineBundleClass, NumClass, SimpleRoots};
use crate::report::Status;
use crate::vanishing::{
    bidegree_certificate, is_numerically_k_plus_line, torsion_vanishing, FourFibreClass, Method,
    MultiplicityProfile, SectionsEngine, VanishingCertificate, Witness,
};

/// The nontrivial torsion class used throughout.
pub const TAU: Z5 = Z5::ONE;

// ---------------------------------------------------------------- divisors

/// k·K + Σ c·E over elliptic curves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormalDivisor {
    pub k: i64,
    pub terms: Vec<(GodeauxCurve, i64)>,
}

impl FormalDivisor {
    pub fn canonical(k: i64) -> Self {
        FormalDivisor { k, terms: Vec::new() }
    }

    pub fn e(sign: Sign, i: i64, j: i64) -> Self {
        FormalDivisor { k: 0, terms: vec![(GodeauxCurve::elliptic(sign, i, j), 1)] }
    }

    fn normalized(mut self) -> Self {
        self.terms.sort_by_key(|t| t.0);
        let mut out: Vec<(GodeauxCurve, i64)> = Vec::new();
        for (c, n) in self.terms {
            match out.last_mut() {
                Some(last) if last.0 == c => last.1 += n,
                _ => out.push((c, n)),
            }
        }
        out.retain(|t| t.1 != 0);
        FormalDivisor { k: self.k, terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.k == 0 && self.terms.is_empty()
    }

    pub fn num_class(&self, table: &ClassTable) -> Result<NumClass> {
        let mut c = self.k * NumClass::canonical();
        for (curve, n) in &self.terms {
            let cc = table.get(*curve).ok_or_else(|| Error::InvalidArgument(format!("{curve} is not cataloged")))?;
            c = c + *n * cc;
        }
        Ok(c)
    }

    /// The profile kK + Σ e E^±_{a,0}, when only j = 0 curves occur.
    pub fn fibre_profile(&self) -> Option<MultiplicityProfile> {
        let mut p = MultiplicityProfile::new(self.k);
        for (c, n) in &self.terms {
            match c {
                GodeauxCurve::Elliptic { sign, i, j } if *j == Z5::ZERO => p = p.with(*sign, *i, *n),
                _ => return None,
            }
        }
        Some(p)
    }

    /// The curve C when the divisor is exactly C.
    pub fn single_curve(&self) -> Option<GodeauxCurve> {
        match self.terms.as_slice() {
            [(c, 1)] if self.k == 0 => Some(*c),
            _ => None,
        }
    }
}

impl Add for FormalDivisor {
    type Output = FormalDivisor;
    fn add(mut self, o: FormalDivisor) -> FormalDivisor {
        self.k += o.k;
        self.terms.extend(o.terms);
        self.normalized()
    }
}

impl Neg for FormalDivisor {
    type Output = FormalDivisor;
    fn neg(self) -> FormalDivisor {
        FormalDivisor { k: -self.k, terms: self.terms.into_iter().map(|(c, n)| (c, -n)).collect() }
    }
}

impl Sub for FormalDivisor {
    type Output = FormalDivisor;
    fn sub(self, o: FormalDivisor) -> FormalDivisor {
        self + (-o)
    }
}

impl fmt::Display for FormalDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(i64, String)> = Vec::new();
        if self.k != 0 {
            parts.push((self.k, "K".into()));
        }
        for (c, n) in &self.terms {
            parts.push((*n, c.to_string()));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        for (idx, (n, name)) in parts.iter().enumerate() {
            let mag = if n.abs() == 1 { String::new() } else { n.abs().to_string() };
            match (idx, *n < 0) {
                (0, false) => write!(f, "{mag}{name}")?,
                (0, true) => write!(f, "-{mag}{name}")?,
                (_, false) => write!(f, " + {mag}{name}")?,
                (_, true) => write!(f, " - {mag}{name}")?,
            }
        }
        Ok(())
    }
}

/// A line bundle O(D) ⊗ τ^t.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bundle {
    pub divisor: FormalDivisor,
    pub torsion: Z5,
}

impl Bundle {
    pub fn new(divisor: FormalDivisor, torsion: Z5) -> Self {
        Bundle { divisor: divisor.normalized(), torsion }
    }

    pub fn trivial() -> Self {
        Bundle::default()
    }

    pub fn plus_canonical(self) -> Self {
        Bundle::new(self.divisor + FormalDivisor::canonical(1), self.torsion)
    }

    pub fn class(&self, table: &ClassTable) -> Result<LineBundleClass> {
        Ok(LineBundleClass::new(self.divisor.num_class(table)?, self.torsion))
    }
}

impl Add for Bundle {
    type Output = Bundle;
    fn add(self, o: Bundle) -> Bundle {
        Bundle::new(self.divisor + o.divisor, self.torsion + o.torsion)
    }
}

impl Neg for Bundle {
    type Output = Bundle;
    fn neg(self) -> Bundle {
        Bundle::new(-self.divisor, -self.torsion)
    }
}

impl Sub for Bundle {
    type Output = Bundle;
    fn sub(self, o: Bundle) -> Bundle {
        self + (-o)
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.torsion == Z5::ZERO {
            write!(f, "O({})", self.divisor)
        } else {
            write!(f, "O({}) ⊗ τ^{}", self.divisor, self.torsion)
        }
    }
}

// ---------------------------------------------------------------- sequence

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleSpec {
    pub index: usize,
    pub name: String,
    pub bundle: Bundle,
    pub class: LineBundleClass,
    pub degree: i64,
    /// A second divisor with the same numerical class.
    pub numerically: Option<FormalDivisor>,
}

/// The eleven bundles as formal expressions.
pub fn sequence_bundles() -> Vec<(String, Bundle, Option<FormalDivisor>)> {
    use Sign::{Minus as M, Plus as P};
    let e = FormalDivisor::e;
    let k = FormalDivisor::canonical;
    let n = k(1) + e(P, 0, 0) - e(P, 1, 0) - e(P, 2, 0) + e(M, 3, 0);
    let m = k(1) + e(P, 0, 0) - e(P, 1, 0) - e(P, 2, 0) + e(P, 4, 0);
    let b = |d: FormalDivisor| Bundle::new(d, Z5::ZERO);
    vec![
        ("L1".into(), b(e(P, 4, 0) - e(P, 4, 0)), None),
        ("L2".into(), b(e(P, 4, 0) - e(P, 3, 0)), None),
        ("L3 = M".into(), b(m), None),
        ("L4".into(), b(e(P, 4, 0) - e(P, 2, 0)), None),
        ("L5".into(), b(e(P, 4, 0) - e(P, 1, 0)), None),
        ("L6".into(), b(e(P, 4, 0) - e(M, 0, 0)), None),
        ("L7 = N".into(), b(n.clone()), None),
        ("L8".into(), Bundle::new(n.clone() - e(P, 0, 3), TAU), Some(e(P, 4, 1) - e(M, 0, 1))),
        ("L9".into(), b(e(P, 4, 2) - e(M, 0, 2)), None),
        ("L10".into(), b(e(P, 4, 3) - e(M, 0, 3)), None),
        ("L11".into(), Bundle::new(n - e(P, 0, 2), TAU), Some(e(P, 4, 4) - e(M, 0, 4))),
    ]
}

/// Builds the sequence and checks degrees, the alternative numerical forms,
/// and that twisting by −(E⁺_{4,4} − E⁻_{0,4}) gives the root-lattice
/// sequence.
pub fn build_sequence(table: &ClassTable, simple: &SimpleRoots) -> Result<Vec<BundleSpec>> {
    let twist = FormalDivisor::e(Sign::Plus, 4, 4) - FormalDivisor::e(Sign::Minus, 0, 4);
    let twist = twist.num_class(table)?;
    let target = numerical_sequence(simple);
    let mut out = Vec::new();
    for (idx, (name, bundle, numerically)) in sequence_bundles().into_iter().enumerate() {
        let class = bundle.class(table)?;
        let degree = class.num.degree();
        let expected_degree = if idx == 2 || idx == 6 { 1 } else { 0 };
        if degree != expected_degree {
            return Err(Error::Inconsistent(format!("{name} has degree {degree}")));
        }
        if let Some(alt) = &numerically {
            if alt.num_class(table)? != class.num {
                return Err(Error::Inconsistent(format!("{name} differs numerically from {alt}")));
            }
        }
        if class.num - twist != target[idx] {
            return Err(Error::Inconsistent(format!(
                "{name} twisted is {}, expected {}",
                class.num - twist,
                target[idx]
            )));
        }
        out.push(BundleSpec { index: idx + 1, name, bundle, class, degree, numerically });
    }
    Ok(out)
}

/// Classes of all cataloged curves on X; every effective divisor of degree
/// one is one of these curves.
pub fn effective_degree1_classes(table: &ClassTable) -> BTreeSet<NumClass> {
    table.entries().iter().map(|e| e.class).collect()
}

// ---------------------------------------------------------------- sections

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionClaim {
    pub bundle: String,
    pub class: NumClass,
    pub degree: i64,
    pub torsion: Z5,
    pub h0: usize,
    pub method: Method,
    pub certificate: VanishingCertificate,
    /// Independent computations of the same number.
    pub cross_checks: Vec<VanishingCertificate>,
}

/// Decides h⁰ of a bundle through the first applicable route.
pub struct SectionOracle {
    table: Arc<ClassTable>,
    effective: BTreeSet<NumClass>,
    engine: Arc<SectionsEngine>,
}

/// Profiles reachable by moving fibre pairs E⁺_a + E⁻_a to other fibres,
/// nearest first.
pub fn fibre_equivalent_profiles(p: &MultiplicityProfile, max_moves: usize) -> Vec<MultiplicityProfile> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([(*p, 0usize)]);
    seen.insert(*p);
    while let Some((q, depth)) = queue.pop_front() {
        out.push(q);
        if depth == max_moves {
            continue;
        }
        for a in 0..5 {
            for b in 0..5 {
                if a == b {
                    continue;
                }
                let mut r = q;
                r.plus[a] -= 1;
                r.minus[a] -= 1;
                r.plus[b] += 1;
                r.minus[b] += 1;
                let bounded = r.plus.iter().chain(&r.minus).all(|e| e.abs() <= p.k.abs() + 2);
                if bounded && seen.insert(r) {
                    queue.push_back((r, depth + 1));
                }
            }
        }
    }
    out
}

/// 2K + E + E − E − E over four distinct fibres.
pub fn four_fibre_form(p: &MultiplicityProfile) -> Option<FourFibreClass> {
    if p.k != 2 {
        return None;
    }
    let mut added = Vec::new();
    let mut removed = Vec::new();
    for a in Z5::all() {
        for s in Sign::both() {
            match p.coefficient(s, a) {
                0 => {}
                1 => added.push((s, a)),
                -1 => removed.push((s, a)),
                _ => return None,
            }
        }
    }
    if added.len() != 2 || removed.len() != 2 {
        return None;
    }
    FourFibreClass::new([added[0], added[1]], [removed[0], removed[1]]).ok()
}

impl SectionOracle {
    pub fn new(table: Arc<ClassTable>, engine: Arc<SectionsEngine>) -> Self {
        let effective = effective_degree1_classes(&table);
        SectionOracle { table, effective, engine }
    }

    pub fn table(&self) -> &ClassTable {
        &self.table
    }

    pub fn engine(&self) -> &Arc<SectionsEngine> {
        &self.engine
    }

    fn classifier(class: NumClass, reason: &str) -> VanishingCertificate {
        VanishingCertificate {
            claim: format!("h0 = 0 for class {class}"),
            h0: 0,
            method: Method::NonEffective,
            witness: Witness::Classifier { class, degree: class.degree(), reason: reason.into() },
        }
    }

    /// h⁰ with a certificate, or `None` if no implemented route applies.
    pub fn h0(&self, b: &Bundle) -> Result<Option<SectionClaim>> {
        let class = b.divisor.num_class(&self.table)?;
        let degree = class.degree();
        let claim = |certificate: VanishingCertificate, cross_checks: Vec<VanishingCertificate>| SectionClaim {
            bundle: b.to_string(),
            class,
            degree,
            torsion: b.torsion,
            h0: certificate.h0,
            method: certificate.method,
            certificate,
            cross_checks,
        };
        if b.divisor.terms.is_empty() && b.divisor.k >= 0 {
            return Ok(Some(claim(self.engine.canonical_multiple(b.divisor.k as u32, b.torsion), vec![])));
        }
        if degree < 0 {
            return Ok(Some(claim(Self::classifier(class, "negative degree"), vec![])));
        }
        if degree == 0 && !class.is_zero() {
            return Ok(Some(claim(Self::classifier(class, "degree 0 and numerically nontrivial"), vec![])));
        }
        if degree == 1 && !self.effective.contains(&class) {
            return Ok(Some(claim(Self::classifier(class, "degree 1 and not the class of a curve"), vec![])));
        }
        if let Some(c) = b.divisor.single_curve() {
            if matches!(c, GodeauxCurve::Elliptic { .. }) && b.torsion != Z5::ZERO {
                return Ok(Some(claim(torsion_vanishing(c, b.torsion, &self.table)?, vec![])));
            }
        }
        let Some(raw) = b.divisor.fibre_profile() else { return Ok(None) };
        let candidates = fibre_equivalent_profiles(&raw, 3);
        let valid = candidates.iter().find(|p| p.validate().is_ok());
        let four = candidates.iter().find_map(four_fibre_form);
        if b.torsion == Z5::ZERO {
            let Some(valid) = valid else { return Ok(None) };
            let primary = bidegree_certificate(valid)?;
            let mut cross = Vec::new();
            if let Some(case) = four {
                if case.profile() != *valid {
                    cross.push(bidegree_certificate(&case.profile())?);
                }
                cross.push(self.engine.four_fibre_certificate(&case, Z5::ZERO)?);
            }
            if let Some(bad) = cross.iter().find(|c| c.h0 != primary.h0) {
                return Err(Error::Inconsistent(format!("{b}: {} against {}", primary.claim, bad.claim)));
            }
            return Ok(Some(claim(primary, cross)));
        }
        let Some(case) = four else { return Ok(None) };
        let cert = self.engine.four_fibre_certificate(&case, b.torsion)?;
        let Witness::Degree7 { outcome, .. } = &cert.witness else { unreachable!("degree-7 witness") };
        let k_plus_line = is_numerically_k_plus_line(&class, &self.table).is_some();
        if outcome.special != k_plus_line {
            return Err(Error::Inconsistent(format!(
                "{b}: Gröbner pattern special = {}, numerical K + line = {k_plus_line}",
                outcome.special
            )));
        }
        Ok(Some(claim(cert, vec![])))
    }

    pub fn h0_required(&self, b: &Bundle) -> Result<SectionClaim> {
        self.h0(b)?.ok_or_else(|| Error::Undecided(b.to_string()))
    }
}

// ---------------------------------------------------------------- pairs

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub later: usize,
    pub earlier: usize,
    pub later_name: String,
    pub earlier_name: String,
    /// χ(L_later, L_earlier).
    pub chi: i64,
    /// h⁰(L_later^∨ ⊗ L_earlier).
    pub h0: SectionClaim,
    /// h⁰(L_earlier^∨ ⊗ L_later ⊗ K) = h²(L_later^∨ ⊗ L_earlier).
    pub h2: SectionClaim,
    /// The Serre-dual side has degree two.
    pub exceptional: bool,
    pub status: Status,
}

/// RHom(later, earlier) = 0 from χ = 0 and vanishing of h⁰ and h².
pub fn check_bundles(
    oracle: &SectionOracle,
    (later, later_name, li): (&Bundle, &str, usize),
    (earlier, earlier_name, ej): (&Bundle, &str, usize),
) -> Result<PairVerdict> {
    let table = oracle.table();
    let chi = chi_pair(&later.divisor.num_class(table)?, &earlier.divisor.num_class(table)?);
    let h0 = oracle.h0_required(&(earlier.clone() - later.clone()))?;
    let h2 = oracle.h0_required(&(later.clone() - earlier.clone()).plus_canonical())?;
    let ok = chi == 0 && h0.h0 == 0 && h2.h0 == 0;
    Ok(PairVerdict {
        later: li,
        earlier: ej,
        later_name: later_name.into(),
        earlier_name: earlier_name.into(),
        chi,
        exceptional: h2.degree == 2,
        h0,
        h2,
        status: if ok { Status::Certified } else { Status::Failed },
    })
}

pub fn check_pair(oracle: &SectionOracle, seq: &[BundleSpec], i: usize, j: usize) -> Result<PairVerdict> {
    if !(1..=seq.len()).contains(&i) || j == 0 || j >= i {
        return Err(Error::InvalidArgument(format!("pair ({i}, {j}) needs {} ≥ i > j ≥ 1", seq.len())));
    }
    let (a, b) = (&seq[i - 1], &seq[j - 1]);
    check_bundles(oracle, (&a.bundle, &a.name, i), (&b.bundle, &b.name, j))
}

/// All pairs i > j, ordered by (i, j).
pub fn check_all_pairs(oracle: &SectionOracle, seq: &[BundleSpec]) -> Result<Vec<PairVerdict>> {
    let mut out = Vec::new();
    for i in 1..=seq.len() {
        for j in 1..i {
            out.push(check_pair(oracle, seq, i, j)?);
        }
    }
    Ok(out)
}

/// The degree-two pairs, where the Serre-dual side needs the Campedelli
/// computation.
pub const EXCEPTIONAL_PAIRS: [(usize, usize); 7] = [(3, 2), (3, 1), (7, 6), (7, 5), (7, 4), (7, 2), (7, 1)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaOtherReport {
    /// RHom(L_m, O_τ) for m = 2..11.
    pub pairs: Vec<PairVerdict>,
    /// For m = 3, 7: the line class L with K + L_m − τ ≡ K + L, if any.
    pub k_plus_line: Vec<(usize, Option<GodeauxCurve>)>,
    /// h⁰(K ⊗ τ⁻¹), the dimension of Ext²(O, O_τ).
    pub ext2_o_otau: SectionClaim,
    pub status: Status,
}

/// The sequence with L₁ replaced by O_τ.
pub fn verify_lemma_other(oracle: &SectionOracle, seq: &[BundleSpec]) -> Result<LemmaOtherReport> {
    let o_tau = Bundle::new(FormalDivisor::default(), TAU);
    let mut pairs = Vec::new();
    for s in &seq[1..] {
        pairs.push(check_bundles(oracle, (&s.bundle, &s.name, s.index), (&o_tau, "O_τ", 1))?);
    }
    let mut k_plus_line = Vec::new();
    for m in [3usize, 7] {
        let c = seq[m - 1].class.num + NumClass::canonical();
        k_plus_line.push((m, is_numerically_k_plus_line(&c, oracle.table())));
    }
    let ext2 = oracle.h0_required(&Bundle::new(FormalDivisor::canonical(1), -TAU))?;
    let ok = pairs.iter().all(|p| p.status == Status::Certified)
        && k_plus_line.iter().all(|(_, l)| l.is_none())
        && ext2.h0 == 1;
    Ok(LemmaOtherReport {
        pairs,
        k_plus_line,
        ext2_o_otau: ext2,
        status: if ok { Status::Certified } else { Status::Failed },
    })
}

// ---------------------------------------------------------------- Hom table

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dim {
    pub value: i64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
}

impl Dim {
    fn certified(value: i64, method: Option<Method>) -> Self {
        Dim { value, status: Status::Certified, method }
    }

    fn asserted(value: i64) -> Self {
        Dim { value, status: Status::PaperAsserted, method: None }
    }

    fn from_claim(c: &SectionClaim) -> Self {
        Dim::certified(c.h0 as i64, Some(c.method))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomEntry {
    pub from: usize,
    pub to: usize,
    pub chi: i64,
    pub hom: Dim,
    pub ext1: Dim,
    pub ext2: Dim,
}

impl HomEntry {
    pub fn dims(&self) -> [i64; 3] {
        [self.hom.value, self.ext1.value, self.ext2.value]
    }

    /// Degrees k with Ext^k(from, to) ≠ 0.
    pub fn support(&self) -> Vec<i64> {
        (0..3).filter(|&k| self.dims()[k as usize] > 0).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomTable {
    pub size: usize,
    pub entries: Vec<HomEntry>,
}

impl HomTable {
    /// Entry for Ext^•(L_from, L_to), 1-based.
    pub fn get(&self, from: usize, to: usize) -> &HomEntry {
        &self.entries[(from - 1) * self.size + (to - 1)]
    }

    pub fn from_supports(size: usize, support: impl Fn(usize, usize) -> Vec<i64>) -> Self {
        let mut entries = Vec::new();
        for from in 1..=size {
            for to in 1..=size {
                let s = support(from, to);
                let d = |k: i64| Dim::certified(s.contains(&k) as i64, None);
                let (h, e1, e2) = (d(0), d(1), d(2));
                let chi = h.value - e1.value + e2.value;
                entries.push(HomEntry { from, to, chi, hom: h, ext1: e1, ext2: e2 });
            }
        }
        HomTable { size, entries }
    }
}

/// Asserted values for dimensions the engines cannot reach: Ext² is C exactly
/// when χ = 1 among the pairs from < to.
fn asserted_ext2(chi: i64) -> i64 {
    if chi == 1 {
        1
    } else {
        0
    }
}

pub fn hom_table(oracle: &SectionOracle, seq: &[BundleSpec], verdicts: &[PairVerdict]) -> Result<HomTable> {
    let n = seq.len();
    let mut entries = Vec::new();
    for from in 1..=n {
        for to in 1..=n {
            let (a, b) = (&seq[from - 1], &seq[to - 1]);
            let chi = chi_pair(&a.class.num, &b.class.num);
            let entry = if from == to {
                let k = oracle.h0_required(&Bundle::new(FormalDivisor::canonical(1), Z5::ZERO))?;
                HomEntry {
                    from,
                    to,
                    chi,
                    hom: Dim::certified(1, Some(Method::FormCount)),
                    ext1: Dim::certified(0, None),
                    ext2: Dim::from_claim(&k),
                }
            } else if from > to {
                let v = verdicts
                    .iter()
                    .find(|v| v.later == from && v.earlier == to)
                    .ok_or_else(|| Error::InvalidArgument(format!("no verdict for ({from}, {to})")))?;
                let st = v.status;
                let d = |x: &SectionClaim| Dim { value: x.h0 as i64, status: st, method: Some(x.method) };
                HomEntry { from, to, chi, hom: d(&v.h0), ext1: Dim { value: 0, status: st, method: None }, ext2: d(&v.h2) }
            } else {
                let hom = match oracle.h0(&(b.bundle.clone() - a.bundle.clone()))? {
                    Some(c) => Dim::from_claim(&c),
                    None => Dim::asserted(if (from, to) == (2, 3) { 1 } else { 0 }),
                };
                let ext2 = match oracle.h0(&(a.bundle.clone() - b.bundle.clone()).plus_canonical())? {
                    Some(c) => Dim::from_claim(&c),
                    None => Dim::asserted(asserted_ext2(chi)),
                };
                let value = hom.value + ext2.value - chi;
                if value < 0 {
                    return Err(Error::Inconsistent(format!("negative Ext¹ for ({from}, {to})")));
                }
                let ext1 = Dim { value, status: Status::worst(hom.status, ext2.status), method: None };
                HomEntry { from, to, chi, hom, ext1, ext2 }
            };
            if entry.hom.value - entry.ext1.value + entry.ext2.value != chi {
                return Err(Error::Inconsistent(format!("χ mismatch for ({from}, {to})")));
            }
            entries.push(entry);
        }
    }
    Ok(HomTable { size: n, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityReport {
    /// Both subsequences completely orthogonal, with certified dimensions.
    pub orthogonal: bool,
    pub chi_pattern: bool,
    /// Hom(L_i, L_j) ≠ 0 only for i = j and (2, 3).
    pub hom_support: bool,
    /// Ext² = C wherever χ = 1.
    pub ext2_where_chi_one: bool,
    /// Ext² = 0 wherever χ = −1.
    pub ext2_where_chi_minus_one: bool,
    /// Items taken as stated rather than computed.
    pub asserted: Vec<String>,
}

pub const ORTHOGONAL_NINE: [usize; 9] = [1, 2, 4, 5, 6, 8, 9, 10, 11];

pub fn rigidity_report(t: &HomTable) -> RigidityReport {
    let mut asserted = Vec::new();
    for e in &t.entries {
        for (name, d) in [("Hom", &e.hom), ("Ext1", &e.ext1), ("Ext2", &e.ext2)] {
            if d.status != Status::Certified {
                asserted.push(format!("{name}(L{}, L{}) = {} [{}]", e.from, e.to, d.value, d.status));
            }
        }
    }
    let zero = |e: &HomEntry| e.dims() == [0, 0, 0];
    let orth = |set: &[usize]| {
        set.iter().all(|&a| {
            set.iter().all(|&b| a == b || (zero(t.get(a, b)) && t.get(a, b).hom.status == Status::Certified))
        })
    };
    let orthogonal = orth(&ORTHOGONAL_NINE) && orth(&[3, 7]);
    let n = t.size;
    let mut chi_pattern = true;
    for i in 1..=n {
        for j in 1..=n {
            let expected = if i == j {
                1
            } else if i < j && (j == 3 || (j == 7 && i != 3)) {
                -1
            } else if (i == 3 && j > 3 && j != 7) || (i == 7 && j > 7) {
                1
            } else {
                0
            };
            chi_pattern &= t.get(i, j).chi == expected;
        }
    }
    let hom_support = t.entries.iter().all(|e| (e.hom.value > 0) == (e.from == e.to || (e.from, e.to) == (2, 3)));
    let ext2_where_chi_one = t.entries.iter().filter(|e| e.from != e.to && e.chi == 1).all(|e| e.ext2.value == 1);
    let ext2_where_chi_minus_one = t.entries.iter().filter(|e| e.chi == -1).all(|e| e.ext2.value == 0);
    RigidityReport { orthogonal, chi_pattern, hom_support, ext2_where_chi_one, ext2_where_chi_minus_one, asserted }
}

// ---------------------------------------------------------------- A∞ audit

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Blocked {
    ZeroFactor,
    /// Every input has degree too large for any Ext to receive it.
    DegreeBound,
    /// The output Ext group is zero in the only reachable degrees.
    TargetZero { degrees: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainAudit {
    pub chain: Vec<usize>,
    pub min_input_degree: i64,
    pub blocked: Blocked,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeAudit {
    pub d: usize,
    pub chains: usize,
    pub zero_factor: usize,
    /// Chains of nonzero spaces, with the reason m_d vanishes on them.
    pub nonzero_chains: Vec<ChainAudit>,
    pub min_input_degree: Option<i64>,
    /// Chains on which m_d could be nonzero.
    pub obstructions: Vec<Vec<usize>>,
}

impl DegreeAudit {
    pub fn all_blocked(&self) -> bool {
        self.obstructions.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AInfinityAudit {
    pub degrees: Vec<DegreeAudit>,
    pub status: Status,
}

fn increasing_chains(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(x + 1, n, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, len, &mut Vec::new(), &mut out);
    out
}

/// m_d : Ext^{a₁} ⊗ … ⊗ Ext^{a_d} → Ext^{Σa + 2 − d} on chains of distinct
/// objects (identities are killed by strict unitality). Uses only the
/// supports recorded in the table.
pub fn a_infinity_degree_audit(t: &HomTable, degrees: impl IntoIterator<Item = usize>) -> AInfinityAudit {
    let mut out = Vec::new();
    for d in degrees {
        let chains = increasing_chains(t.size, d + 1);
        let mut audit =
            DegreeAudit { d, chains: chains.len(), zero_factor: 0, nonzero_chains: vec![], min_input_degree: None, obstructions: vec![] };
        for chain in chains {
            let supports: Vec<Vec<i64>> = chain.windows(2).map(|w| t.get(w[0], w[1]).support()).collect();
            if supports.iter().any(|s| s.is_empty()) {
                audit.zero_factor += 1;
                continue;
            }
            let mut sums = BTreeSet::from([0i64]);
            for s in &supports {
                sums = sums.iter().flat_map(|x| s.iter().map(move |y| x + y)).collect();
            }
            let min = *sums.iter().next().expect("nonempty");
            audit.min_input_degree = Some(audit.min_input_degree.map_or(min, |m: i64| m.min(min)));
            let target = t.get(chain[0], chain[d]).support();
            let reachable: Vec<i64> = sums.iter().map(|s| s + 2 - d as i64).filter(|k| (0..=2).contains(k)).collect();
            let blocked = if reachable.is_empty() {
                Blocked::DegreeBound
            } else if reachable.iter().all(|k| !target.contains(k)) {
                Blocked::TargetZero { degrees: reachable }
            } else {
                audit.obstructions.push(chain.clone());
                continue;
            };
            audit.nonzero_chains.push(ChainAudit { chain, min_input_degree: min, blocked });
        }
        out.push(audit);
    }
    let status = if out.iter().all(DegreeAudit::all_blocked) { Status::Certified } else { Status::Failed };
    AInfinityAudit { degrees: out, status }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::Sign::{Minus, Plus};

    #[test]
    fn formal_arithmetic() {
        let d = FormalDivisor::e(Plus, 4, 0) - FormalDivisor::e(Plus, 4, 0);
        assert!(d.is_zero());
        let d = FormalDivisor::canonical(2) + FormalDivisor::e(Plus, 1, 0) - FormalDivisor::e(Minus, 2, 0);
        assert_eq!(d.to_string(), "2K + E+_10 - E-_20");
        assert_eq!((-d.clone()).to_string(), "-2K - E+_10 + E-_20");
        let b = Bundle::new(d, TAU) - Bundle::new(FormalDivisor::canonical(2), TAU);
        assert_eq!(b.torsion, Z5::ZERO);
        assert_eq!(b.divisor.terms.len(), 2);
    }

    #[test]
    fn fibre_moves_reach_four_fibre_forms() {
        // 2K + E⁺₀ + E⁻₀ − E⁺₁ − E⁺₂ + E⁻₃ − E⁺₄
        let p = MultiplicityProfile::new(2)
            .with(Plus, Z5::ZERO, 1)
            .with(Minus, Z5::ZERO, 1)
            .with(Plus, Z5::new(1), -1)
            .with(Plus, Z5::new(2), -1)
            .with(Minus, Z5::new(3), 1)
            .with(Plus, Z5::new(4), -1);
        assert!(four_fibre_form(&p).is_none());
        let all = fibre_equivalent_profiles(&p, 1);
        let forms: Vec<FourFibreClass> = all.iter().filter_map(four_fibre_form).collect();
        assert!(!forms.is_empty());
        for f in forms {
            assert_eq!(f.profile().k, 2);
        }
    }

    #[test]
    fn chains_are_counted() {
        assert_eq!(increasing_chains(11, 4).len(), 330);
        assert_eq!(increasing_chains(5, 6).len(), 0);
    }

    #[test]
    fn audit_sees_an_unblocked_chain() {
        // three objects with Hom everywhere: m₂-style degree allows a target
        let t = HomTable::from_supports(3, |a, b| if a <= b { vec![0] } else { vec![] });
        let a = a_infinity_degree_audit(&t, [2]);
        assert_eq!(a.degrees[0].obstructions, vec![vec![1, 2, 3]]);
        assert_eq!(a.status, Status::Failed);
    }
}
