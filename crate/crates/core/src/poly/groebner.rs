//! Buchberger's algorithm with the Gebauer–Möller pair update. Pairs are
//! selected by sugar for degree-compatible orders and by least lcm for lex.

use std::cmp::Ordering;
use serde::{Deserialize, Serialize};

use super::{MPoly, Monomial, MonomialOrder};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};

type Term = (Monomial, CycNum);

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerStats {
    pub pairs_created: u64,
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub basis_size: usize,
}

#[derive(Clone)]
struct GPoly {
    terms: Vec<Term>,
    sugar: u32,
}

impl GPoly {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

pub(crate) fn sorted_terms(p: &MPoly, order: MonomialOrder) -> Vec<Term> {
    let mut v: Vec<Term> = p.terms().map(|(m, c)| (*m, c.clone())).collect();
    v.sort_by(|a, b| order.cmp(&b.0, &a.0));
    v
}

fn make_monic(terms: &mut [Term]) {
    let lc = terms[0].1.clone();
    if lc.is_one() {
        return;
    }
    let inv = lc.inv().expect("leading coefficient is nonzero");
    for t in terms.iter_mut() {
        t.1 = &t.1 * &inv;
    }
}

/// a - c·q·b, all inputs sorted in descending order.
fn sub_mul(a: &[Term], c: &CycNum, q: &Monomial, b: &[Term], order: MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].0.mul(q);
        match order.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, -(c * &b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = &a[i].1 - &(c * &b[j].1);
                if !v.is_zero() {
                    out.push((bm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push((t.0.mul(q), -(c * &t.1)));
    }
    out
}

fn shifted(a: &[Term], q: &Monomial) -> Vec<Term> {
    a.iter().map(|(m, c)| (m.mul(q), c.clone())).collect()
}

fn find_reducer(m: &Monomial, basis: &[GPoly], active: &[usize]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for &k in active {
        if basis[k].lm().divides(m) && best.is_none_or(|b| basis[k].terms.len() < basis[b].terms.len()) {
            best = Some(k);
        }
    }
    best
}

/// Step counter shared by the S-pair loop and the reductions inside it.
struct Steps {
    used: u64,
    limit: Option<u64>,
}

impl Steps {
    fn tick(&mut self) -> Result<()> {
        if let Some(b) = self.limit {
            if self.used >= b {
                return Err(Error::BudgetExceeded { budget: b });
            }
        }
        self.used += 1;
        Ok(())
    }
}

/// Full reduction of `p` by the (monic) polynomials `active` of `basis`.
fn reduce_full(p: Vec<Term>, basis: &[GPoly], active: &[usize], order: MonomialOrder) -> Vec<Term> {
    let mut unlimited = Steps { used: 0, limit: None };
    reduce_full_counted(p, basis, active, order, &mut unlimited).expect("no step limit")
}

fn reduce_full_counted(
    mut p: Vec<Term>,
    basis: &[GPoly],
    active: &[usize],
    order: MonomialOrder,
    steps: &mut Steps,
) -> Result<Vec<Term>> {
    let mut rem: Vec<Term> = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (m, c) = (p[start].0, p[start].1.clone());
        match find_reducer(&m, basis, active) {
            Some(k) => {
                steps.tick()?;
                let g = &basis[k];
                let q = g.lm().quotient(&m);
                p = sub_mul(&p[start + 1..], &c, &q, &g.terms[1..], order);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    Ok(rem)
}

fn spoly_terms(f: &GPoly, g: &GPoly, lcm: &Monomial, order: MonomialOrder) -> Vec<Term> {
    let qf = f.lm().quotient(lcm);
    let qg = g.lm().quotient(lcm);
    let a = shifted(&f.terms[1..], &qf);
    sub_mul(&a, &CycNum::one(), &qg, &g.terms[1..], order)
}

fn pair_sugar(f: &GPoly, g: &GPoly, lcm: &Monomial) -> u32 {
    let d = lcm.degree();
    (f.sugar + d - f.lm().degree()).max(g.sugar + d - g.lm().degree())
}

struct Engine {
    order: MonomialOrder,
    polys: Vec<GPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    stats: GroebnerStats,
}

impl Engine {
    /// Gebauer–Möller update with a new element `h` (index into `polys`).
    fn update(&mut self, h: usize) {
        let lh = *self.polys[h].lm();
        let mut cand: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| {
                let lcm = lh.lcm(self.polys[g].lm());
                Pair { i: g, j: h, lcm, sugar: pair_sugar(&self.polys[g], &self.polys[h], &lcm) }
            })
            .collect();
        self.stats.pairs_created += cand.len() as u64;

        // Chain criterion among the new pairs.
        let mut kept: Vec<Pair> = Vec::new();
        for idx in 0..cand.len() {
            let p = &cand[idx];
            let coprime = lh.is_coprime(self.polys[p.i].lm());
            let dominated = cand[idx + 1..].iter().any(|q| q.lcm.divides(&p.lcm))
                || kept.iter().any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p.clone());
            }
        }
        kept.retain(|p| !lh.is_coprime(self.polys[p.i].lm()));
        cand.clear();

        // Old pairs made redundant by h.
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && lh.lcm(polys[p.i].lm()) != p.lcm
                && lh.lcm(polys[p.j].lm()) != p.lcm)
        });
        self.pairs.extend(kept);

        self.active.retain(|&g| !lh.divides(polys[g].lm()));
        self.active.push(h);
    }

    fn select_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            // Lex is not degree compatible, so sugar is a poor guide there.
            let better = if order == MonomialOrder::Lex {
                order.cmp(&a.lcm, &b.lcm) == Ordering::Less
            } else {
                a.sugar < b.sugar || (a.sugar == b.sugar && order.cmp(&a.lcm, &b.lcm) == Ordering::Less)
            };
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// ascending leading monomial. `budget` bounds the number of steps, counting
/// each S-pair and each elementary reduction.
pub fn groebner_basis(
    gens: &[MPoly],
    order: MonomialOrder,
    budget: Option<u64>,
) -> Result<(Vec<MPoly>, GroebnerStats)> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Ok((Vec::new(), GroebnerStats::default())),
    };
    let mut steps = Steps { used: 0, limit: budget };
    let mut eng = Engine { order, polys: Vec::new(), active: Vec::new(), pairs: Vec::new(), stats: Default::default() };

    let mut inputs: Vec<Vec<Term>> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| sorted_terms(g, order)).collect();
    inputs.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    for t in inputs {
        let sugar = t.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        let mut r = reduce_full_counted(t, &eng.polys, &eng.active, order, &mut steps)?;
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r);
        eng.polys.push(GPoly { terms: r, sugar });
        let h = eng.polys.len() - 1;
        eng.update(h);
    }

    while let Some(pair) = eng.select_pair() {
        steps.tick()?;
        eng.stats.pairs_reduced += 1;
        let s = spoly_terms(&eng.polys[pair.i], &eng.polys[pair.j], &pair.lcm, order);
        let mut r = reduce_full_counted(s, &eng.polys, &eng.active, order, &mut steps)?;
        if r.is_empty() {
            eng.stats.zero_reductions += 1;
            continue;
        }
        make_monic(&mut r);
        let sugar = pair.sugar.max(r.iter().map(|t| t.0.degree()).max().unwrap_or(0));
        eng.polys.push(GPoly { terms: r, sugar });
        let h = eng.polys.len() - 1;
        eng.update(h);
        if eng.polys[h].lm().is_one() {
            eng.pairs.clear();
            eng.active = vec![h];
        }
    }

    // Inter-reduce the minimal basis.
    let mut active = eng.active.clone();
    active.sort_by(|&a, &b| order.cmp(eng.polys[a].lm(), eng.polys[b].lm()));
    let mut reduced: Vec<GPoly> = Vec::with_capacity(active.len());
    for (pos, &k) in active.iter().enumerate() {
        let others: Vec<usize> = active.iter().enumerate().filter(|(p, _)| *p != pos).map(|(_, &a)| a).collect();
        let lead = eng.polys[k].terms[0].clone();
        let tail = reduce_full_counted(eng.polys[k].terms[1..].to_vec(), &eng.polys, &others, order, &mut steps)?;
        let mut terms = vec![lead];
        terms.extend(tail);
        reduced.push(GPoly { terms, sugar: eng.polys[k].sugar });
    }
    eng.stats.basis_size = reduced.len();
    let out = reduced.into_iter().map(|g| MPoly::from_terms(&ring, g.terms)).collect();
    Ok((out, eng.stats))
}

fn to_gpolys(basis: &[MPoly], order: MonomialOrder) -> Vec<GPoly> {
    basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut t = sorted_terms(g, order);
            make_monic(&mut t);
            GPoly { terms: t, sugar: 0 }
        })
        .collect()
}

/// Remainder of `f` on division by `basis` (which should be a Gröbner basis
/// for the remainder to be canonical).
pub fn normal_form(f: &MPoly, basis: &[MPoly], order: MonomialOrder) -> MPoly {
    let gp = to_gpolys(basis, order);
    let active: Vec<usize> = (0..gp.len()).collect();
    let r = reduce_full(sorted_terms(f, order), &gp, &active, order);
    MPoly::from_terms(f.ring(), r)
}

/// Normal forms of many polynomials against one basis.
pub(crate) fn normal_forms(fs: &[MPoly], basis: &[MPoly], order: MonomialOrder) -> Vec<MPoly> {
    let gp = to_gpolys(basis, order);
    let active: Vec<usize> = (0..gp.len()).collect();
    fs.iter()
        .map(|f| MPoly::from_terms(f.ring(), reduce_full(sorted_terms(f, order), &gp, &active, order)))
        .collect()
}

/// Leading monomial under `order`.
pub(crate) fn leading_monomial(f: &MPoly, order: MonomialOrder) -> Option<Monomial> {
    f.terms().map(|(m, _)| *m).max_by(|a, b| order.cmp(a, b))
}

pub fn s_polynomial(f: &MPoly, g: &MPoly, order: MonomialOrder) -> MPoly {
    let gp = to_gpolys(&[f.clone(), g.clone()], order);
    let lcm = gp[0].lm().lcm(gp[1].lm());
    MPoly::from_terms(f.ring(), spoly_terms(&gp[0], &gp[1], &lcm, order))
}

/// Buchberger's criterion checked directly on every pair, without any of the
/// pair-elimination shortcuts used during the computation.
pub fn is_groebner_basis(basis: &[MPoly], order: MonomialOrder) -> bool {
    let gp = to_gpolys(basis, order);
    let active: Vec<usize> = (0..gp.len()).collect();
    for i in 0..gp.len() {
        for j in i + 1..gp.len() {
            if gp[i].lm().is_coprime(gp[j].lm()) {
                continue;
            }
            let lcm = gp[i].lm().lcm(gp[j].lm());
            let s = spoly_terms(&gp[i], &gp[j], &lcm, order);
            if !reduce_full(s, &gp, &active, order).is_empty() {
                return false;
            }
        }
    }
    true
}
