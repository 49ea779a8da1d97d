use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::groebner::{groebner_basis, leading_monomial, normal_forms};
use super::hilbert::{HilbertSeries, SchemeInfo};
use super::{MPoly, Monomial, MonomialOrder, Ring};
use crate::cache::{Cache, CacheEntry};
use crate::cyclotomic::{CycNum, Z5};
use crate::error::{Error, Result};
use crate::linalg;

/// A polynomial ideal given by generators, with lazily computed reduced
/// Gröbner bases per monomial order.
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<MPoly>,
    budget: Option<u64>,
    bases: Mutex<HashMap<MonomialOrder, Arc<Vec<MPoly>>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            budget: self.budget,
            bases: Mutex::new(self.bases.lock().expect("poisoned").clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal").field("ring", &self.ring.descriptor()).field("gens", &self.gens).finish()
    }
}

/// Echelonized basis of a graded piece. `rows[k]` gives the coefficients of
/// the k-th basis element on `monomials`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceBasis {
    pub degree: u32,
    pub weight: Option<Z5>,
    pub monomials: Vec<Monomial>,
    pub rows: Vec<Vec<CycNum>>,
}

impl PieceBasis {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn polys(&self, ring: &Arc<Ring>) -> Vec<MPoly> {
        self.rows
            .iter()
            .map(|r| MPoly::from_terms(ring, self.monomials.iter().copied().zip(r.iter().cloned())))
            .collect()
    }
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<MPoly>) -> Result<Ideal> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch(format!(
                    "generator in {} but ideal in {}",
                    g.ring().descriptor(),
                    ring.descriptor()
                )));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, budget: None, bases: Mutex::new(HashMap::new()) })
    }

    pub fn from_strs(ring: &Arc<Ring>, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|s| MPoly::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Ideal {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    fn derived(&self, gens: Vec<MPoly>) -> Ideal {
        Ideal::new(&self.ring, gens).expect("same ring").with_budget(self.budget)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[MPoly] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(MPoly::is_homogeneous)
    }

    /// Reduced Gröbner basis for `order`, consulting the in-memory and on-disk
    /// caches.
    pub fn groebner(&self, order: MonomialOrder) -> Result<Arc<Vec<MPoly>>> {
        if let Some(b) = self.bases.lock().expect("poisoned").get(&order) {
            return Ok(b.clone());
        }
        let disk = Cache::from_env();
        let gen_strs: Vec<String> = self.gens.iter().map(MPoly::to_string).collect();
        let ring_desc = self.ring.descriptor();
        let order_desc = order.descriptor();
        let mut basis = None;
        if let Some(c) = &disk {
            if let Some(entry) = c.get(&ring_desc, &order_desc, &gen_strs) {
                let parsed: Result<Vec<MPoly>> = entry.basis.iter().map(|s| MPoly::parse(&self.ring, s)).collect();
                match parsed {
                    // a cached basis is only used if it passes Buchberger's
                    // criterion and contains the generators
                    Ok(b) if super::groebner::is_groebner_basis(&b, order)
                        && self.gens.iter().all(|g| super::groebner::normal_form(g, &b, order).is_zero()) =>
                    {
                        basis = Some(b)
                    }
                    Ok(_) => log::warn!("ignoring cache entry that fails the basis check"),
                    Err(e) => log::warn!("ignoring unreadable cache entry: {e}"),
                }
            }
        }
        let basis = match basis {
            Some(b) => b,
            None => {
                let (b, stats) = groebner_basis(&self.gens, order, self.budget)?;
                log::debug!("groebner {}: {:?}", order_desc, stats);
                if let Some(c) = &disk {
                    let entry = CacheEntry {
                        ring: ring_desc,
                        order: order_desc,
                        generators: gen_strs,
                        basis: b.iter().map(MPoly::to_string).collect(),
                    };
                    if let Err(e) = c.put(&entry) {
                        log::warn!("cache write failed: {e}");
                    }
                }
                b
            }
        };
        let basis = Arc::new(basis);
        self.bases.lock().expect("poisoned").insert(order, basis.clone());
        Ok(basis)
    }

    pub fn gb(&self) -> Result<Arc<Vec<MPoly>>> {
        self.groebner(MonomialOrder::GRevLex)
    }

    pub fn normal_form(&self, f: &MPoly) -> Result<MPoly> {
        let gb = self.gb()?;
        Ok(super::groebner::normal_form(f, &gb, MonomialOrder::GRevLex))
    }

    pub fn contains(&self, f: &MPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        let gb = self.gb()?;
        Ok(normal_forms(other.gens(), &gb, MonomialOrder::GRevLex).iter().all(MPoly::is_zero))
    }

    pub fn same_as(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.iter().any(|g| g.degree() == Some(0)))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        self.derived(g)
    }

    pub fn add_gens(&self, extra: &[MPoly]) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        self.derived(g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        self.derived(g)
    }

    pub fn power(&self, e: u32) -> Ideal {
        let mut acc = self.derived(vec![MPoly::one(&self.ring)]);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    pub fn leading_monomials(&self, order: MonomialOrder) -> Result<Vec<Monomial>> {
        Ok(self.groebner(order)?.iter().filter_map(|g| leading_monomial(g, order)).collect())
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        self.hilbert_series_for(MonomialOrder::GRevLex)
    }

    pub fn hilbert_series_for(&self, order: MonomialOrder) -> Result<HilbertSeries> {
        if !self.is_homogeneous() {
            return Err(Error::InvalidArgument("Hilbert series needs a homogeneous ideal".into()));
        }
        Ok(HilbertSeries::of_monomial_ideal(self.ring.nvars(), &self.leading_monomials(order)?))
    }

    /// Projective dimension and degree of V(I).
    pub fn scheme_info(&self) -> Result<SchemeInfo> {
        Ok(self.hilbert_series()?.projective_info())
    }

    pub fn scheme_degree(&self) -> Result<i64> {
        Ok(self.scheme_info()?.degree)
    }

    pub fn scheme_dimension(&self) -> Result<i64> {
        Ok(self.scheme_info()?.dimension)
    }

    /// Krull dimension and multiplicity data of an affine (possibly
    /// inhomogeneous) ideal; for 0-dimensional ideals `degree` is the number
    /// of standard monomials, i.e. the length of the quotient.
    pub fn affine_info(&self) -> Result<SchemeInfo> {
        let lms = self.leading_monomials(MonomialOrder::GRevLex)?;
        let hs = HilbertSeries::of_monomial_ideal(self.ring.nvars(), &lms);
        let info = hs.affine_info();
        if info.dimension > 0 && !self.is_homogeneous() {
            // Only the dimension is meaningful in this case.
            return Ok(SchemeInfo { dimension: info.dimension, degree: -1 });
        }
        Ok(info)
    }

    /// I ∩ k[remaining variables], computed with an elimination order. The
    /// result lives in the same ring.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Ideal> {
        let order = MonomialOrder::eliminating(vars);
        let gb = self.groebner(order)?;
        let kept = gb.iter().filter(|g| vars.iter().all(|&v| !g.uses_variable(v))).cloned().collect();
        Ok(self.derived(kept))
    }

    /// Elimination of trailing auxiliary variables followed by restriction to
    /// the prefix ring `target`.
    fn eliminate_into(ext: &Ideal, target: &Arc<Ring>, budget: Option<u64>) -> Result<Ideal> {
        let aux: Vec<usize> = (target.nvars()..ext.ring.nvars()).collect();
        let e = ext.eliminate(&aux)?;
        let gens = e.gens.iter().map(|g| g.restrict(target)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(target, gens)?.with_budget(budget))
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        let ext = self.ring.extended(&["aux_t"])?;
        let t = ext.var_at(self.ring.nvars());
        let one_minus_t = &MPoly::one(&ext) - &t;
        let mut g = Vec::new();
        for f in &self.gens {
            g.push(&f.embed(&ext)? * &t);
        }
        for f in &other.gens {
            g.push(&f.embed(&ext)? * &one_minus_t);
        }
        let ext_ideal = Ideal::new(&ext, g)?.with_budget(self.budget);
        Self::eliminate_into(&ext_ideal, &self.ring, self.budget)
    }

    pub fn intersect_all(ideals: &[Ideal]) -> Result<Ideal> {
        let (first, rest) = ideals.split_first().ok_or_else(|| Error::InvalidArgument("empty list".into()))?;
        let mut acc = first.clone();
        for i in rest {
            acc = acc.intersect(i)?;
        }
        Ok(acc)
    }

    /// I : f, as (I ∩ (f)) / f.
    pub fn colon(&self, f: &MPoly) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::InvalidArgument("colon by zero".into()));
        }
        let principal = self.derived(vec![f.clone()]);
        let inter = self.intersect(&principal)?;
        let mut quotients = Vec::new();
        for g in inter.gens() {
            quotients.push(exact_division(g, f)?);
        }
        Ok(self.derived(quotients))
    }

    /// I : f^∞ via the auxiliary-variable trick, certified stable by checking
    /// that one further colon by f adds nothing.
    pub fn saturate(&self, f: &MPoly) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::InvalidArgument("saturation by zero".into()));
        }
        if f.degree() == Some(0) {
            return Ok(self.clone());
        }
        let sat = self.saturate_unchecked(f)?;
        let again = sat.colon(f)?;
        if !sat.contains_ideal(&again)? {
            return Err(Error::CertificateFailed("saturation is not stable under a further colon".into()));
        }
        Ok(sat)
    }

    /// I : f^∞ without the stability certificate.
    pub fn saturate_unchecked(&self, f: &MPoly) -> Result<Ideal> {
        if f.degree() == Some(0) {
            return Ok(self.clone());
        }
        let ext = self.ring.extended(&["aux_y"])?;
        let y = ext.var_at(self.ring.nvars());
        let mut g: Vec<MPoly> = self.gens.iter().map(|h| h.embed(&ext)).collect::<Result<_>>()?;
        g.push(&(&y * &f.embed(&ext)?) - &MPoly::one(&ext));
        let ext_ideal = Ideal::new(&ext, g)?.with_budget(self.budget);
        let sat = Self::eliminate_into(&ext_ideal, &self.ring, self.budget)?;
        // Reuse the reduced grevlex basis as generators for a compact result.
        let gb = sat.gb()?;
        let out = self.derived(gb.to_vec());
        out.bases.lock().expect("poisoned").insert(MonomialOrder::GRevLex, gb);
        Ok(out)
    }

    /// Iterated saturation by each of `fs` until a full pass changes nothing.
    pub fn saturate_multi(&self, fs: &[MPoly]) -> Result<Ideal> {
        let mut cur = self.clone();
        loop {
            let mut changed = false;
            for f in fs {
                let next = cur.saturate_unchecked(f)?;
                if !cur.contains_ideal(&next)? {
                    changed = true;
                }
                cur = next;
            }
            if !changed {
                break;
            }
        }
        for f in fs {
            if f.degree() == Some(0) {
                continue;
            }
            let again = cur.colon(f)?;
            if !cur.contains_ideal(&again)? {
                return Err(Error::CertificateFailed("joint saturation is not stable".into()));
            }
        }
        Ok(cur)
    }

    /// I : J^∞ as the intersection of the saturations by the generators of J.
    pub fn saturate_by_ideal(&self, j: &Ideal) -> Result<Ideal> {
        let parts = j.gens().iter().map(|g| self.saturate_unchecked(g)).collect::<Result<Vec<_>>>()?;
        Ideal::intersect_all(&parts)
    }

    /// Echelonized basis of the degree-`d` part of I (restricted to Z/5
    /// weight `w` when given), spanned by monomial multiples of homogeneous
    /// generators.
    pub fn graded_piece(&self, d: u32, w: Option<Z5>) -> Result<PieceBasis> {
        if !self.is_homogeneous() {
            return Err(Error::InvalidArgument("graded pieces need homogeneous generators".into()));
        }
        let all = self.ring.monomials_of_degree(d);
        // Columns of the wanted weight go last so that echelon rows with pivots
        // there have no other-weight entries.
        let (mut cols, wanted): (Vec<Monomial>, Vec<Monomial>) = match w {
            Some(w) => {
                let (a, b): (Vec<_>, Vec<_>) = all.iter().partition(|m| self.ring.monomial_weight(m) != w);
                (a, b)
            }
            None => (Vec::new(), all.clone()),
        };
        let split = cols.len();
        cols.extend(wanted.iter().copied());
        let index: HashMap<Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();

        let mut rows: linalg::Matrix = Vec::new();
        for g in &self.gens {
            let gd = g.degree().expect("nonzero generator");
            if gd > d {
                continue;
            }
            let gw = g.weight();
            for m in self.ring.monomials_of_degree(d - gd) {
                if let (Some(w), Some(gw)) = (w, gw) {
                    if self.ring.monomial_weight(&m) + gw != w {
                        continue;
                    }
                }
                let mut row = vec![CycNum::zero(); cols.len()];
                for (mono, c) in g.terms() {
                    row[index[&mono.mul(&m)]] = c.clone();
                }
                rows.push(row);
            }
        }
        let pivots = linalg::rref(&mut rows);
        let rows: Vec<Vec<CycNum>> = rows
            .into_iter()
            .zip(pivots)
            .filter(|(_, p)| *p >= split)
            .map(|(r, _)| r[split..].to_vec())
            .collect();
        Ok(PieceBasis { degree: d, weight: w, monomials: wanted, rows })
    }

    pub fn quotient_piece_dim(&self, d: u32, w: Option<Z5>) -> Result<usize> {
        let p = self.graded_piece(d, w)?;
        Ok(p.monomials.len() - p.dim())
    }

    /// Degree-`d` (weight-`w`) part of the intersection of homogeneous ideals,
    /// computed as the common kernel of the normal-form maps into each
    /// quotient.
    pub fn intersection_piece(ideals: &[Ideal], d: u32, w: Option<Z5>) -> Result<PieceBasis> {
        let ring = ideals.first().ok_or_else(|| Error::InvalidArgument("empty list".into()))?.ring.clone();
        let monomials: Vec<Monomial> = ring
            .monomials_of_degree(d)
            .into_iter()
            .filter(|m| w.is_none_or(|w| ring.monomial_weight(m) == w))
            .collect();
        let polys: Vec<MPoly> = monomials.iter().map(|m| MPoly::monomial(&ring, *m, CycNum::one())).collect();
        // Each ideal contributes rows indexed by the standard monomials that
        // appear in normal forms; the kernel of the stacked map is the piece.
        let mut rows: linalg::Matrix = Vec::new();
        for ideal in ideals {
            if !ideal.is_homogeneous() {
                return Err(Error::InvalidArgument("intersection pieces need homogeneous ideals".into()));
            }
            let gb = ideal.gb()?;
            let nfs = normal_forms(&polys, &gb, MonomialOrder::GRevLex);
            let mut targets: Vec<Monomial> = nfs.iter().flat_map(|p| p.terms().map(|(m, _)| *m)).collect();
            targets.sort();
            targets.dedup();
            for t in targets {
                rows.push(nfs.iter().map(|p| p.coeff(&t)).collect());
            }
        }
        let mut kern = linalg::kernel(&rows, monomials.len());
        linalg::rref(&mut kern);
        Ok(PieceBasis { degree: d, weight: w, monomials, rows: kern })
    }
}

/// Exact division of polynomials, failing when there is a remainder.
pub fn exact_division(g: &MPoly, f: &MPoly) -> Result<MPoly> {
    let order = MonomialOrder::GRevLex;
    let lf = leading_monomial(f, order).ok_or(Error::DivisionByZero)?;
    let lc_inv = f.coeff(&lf).inv()?;
    let mut rem = g.clone();
    let mut q = MPoly::zero(g.ring());
    while let Some(lm) = leading_monomial(&rem, order) {
        if !lf.divides(&lm) {
            return Err(Error::Inconsistent("polynomial division left a remainder".into()));
        }
        let c = &rem.coeff(&lm) * &lc_inv;
        let m = lf.quotient(&lm);
        q.add_term(m, &c);
        rem = &rem - &f.mul_monomial(&m).scale(&c);
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3() -> Arc<Ring> {
        Ring::new(&["x", "y", "z"], &[0, 0, 0]).unwrap()
    }

    #[test]
    fn containment_example() {
        let r = r3();
        let i = Ideal::from_strs(&r, &["x^2", "x"]).unwrap();
        assert_eq!(i.gb().unwrap().as_slice(), &[r.var("x")]);
    }

    #[test]
    fn saturation_examples() {
        let r = r3();
        let i = Ideal::from_strs(&r, &["x*y", "x*z"]).unwrap();
        let s = i.saturate(&r.var("x")).unwrap();
        assert!(s.same_as(&Ideal::from_strs(&r, &["y", "z"]).unwrap()).unwrap());
        let s1 = i.saturate(&MPoly::one(&r)).unwrap();
        assert!(s1.same_as(&i).unwrap());
    }

    #[test]
    fn intersection_of_coordinate_ideals() {
        let r = r3();
        let a = Ideal::from_strs(&r, &["x"]).unwrap();
        let b = Ideal::from_strs(&r, &["y"]).unwrap();
        let c = a.intersect(&b).unwrap();
        assert!(c.same_as(&Ideal::from_strs(&r, &["x*y"]).unwrap()).unwrap());
    }

    #[test]
    fn colon_and_division() {
        let r = r3();
        let i = Ideal::from_strs(&r, &["x^2*y", "x*z^2"]).unwrap();
        let c = i.colon(&r.var("x")).unwrap();
        assert!(c.same_as(&Ideal::from_strs(&r, &["x*y", "z^2"]).unwrap()).unwrap());
        let g = MPoly::parse(&r, "x^2 - y^2").unwrap();
        let f = MPoly::parse(&r, "x - y").unwrap();
        assert_eq!(exact_division(&g, &f).unwrap(), MPoly::parse(&r, "x + y").unwrap());
        assert!(exact_division(&f, &g).is_err());
    }

    #[test]
    fn fermat_line_pieces() {
        let r = Ring::fermat();
        let line = Ideal::from_strs(&r, &["x2 + x1", "x4 + x3"]).unwrap();
        // Degree-1 piece: two forms, both of weight... mixed.
        assert_eq!(line.graded_piece(1, None).unwrap().dim(), 2);
        assert_eq!(line.quotient_piece_dim(5, None).unwrap(), 6);
        let info = line.scheme_info().unwrap();
        assert_eq!((info.dimension, info.degree), (1, 1));
        // Intersection piece of the line with itself is the line's piece.
        let p = Ideal::intersection_piece(&[line.clone(), line.clone()], 3, None).unwrap();
        assert_eq!(p.dim(), line.graded_piece(3, None).unwrap().dim());
    }

    #[test]
    fn weight_restricted_piece() {
        let r = Ring::fermat();
        let full = Ideal::new(&r, vec![MPoly::one(&r)]).unwrap();
        for (i, w) in [1, 2, 3, 4].into_iter().enumerate() {
            let p = full.graded_piece(1, Some(Z5::new(w))).unwrap();
            assert_eq!(p.dim(), 1);
            assert_eq!(p.monomials, vec![Monomial::var(i)]);
        }
    }
}
