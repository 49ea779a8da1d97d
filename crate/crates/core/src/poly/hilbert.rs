//! Hilbert series of monomial ideals and the dimension/degree data read off
//! from them.

use serde::{Deserialize, Serialize};

use super::{Monomial, MAX_VARS};

/// `numerator(t) / (1 - t)^nvars` for the quotient by a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub nvars: usize,
    pub numerator: Vec<i64>,
}

/// Dimension and degree of a projective scheme (or of an affine one when
/// built from a 0-dimensional ideal).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeInfo {
    /// Projective dimension; -1 for the empty scheme.
    pub dimension: i64,
    pub degree: i64,
}

fn minimize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = gens.to_vec();
    v.sort_by_key(|m| m.degree());
    v.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in v {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

/// Numerator of the Hilbert series of k[x]/(gens).
fn numerator(gens: &[Monomial]) -> Vec<i64> {
    let gens = minimize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(Monomial::is_one) {
        return vec![0];
    }
    // Pairwise coprime generators: product formula.
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let mut f = vec![0i64; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // Pivot on the variable occurring in the most mixed generators, with the
    // smallest exponent it has there; such a pivot is never in the ideal.
    let is_mixed = |g: &Monomial| g.exponents().iter().filter(|&&e| e > 0).count() > 1;
    let mut counts = [0usize; MAX_VARS];
    for g in gens.iter().filter(|g| is_mixed(g)) {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let var = (0..MAX_VARS).rev().max_by_key(|&i| counts[i]).expect("nonempty");
    let e = gens.iter().filter(|g| is_mixed(g)).map(|g| g.exp(var)).filter(|&e| e > 0).min().expect("mixed generator");
    let pivot = Monomial::var(var).with_exp(var, e);

    // H(I) = H(I + p) + t^deg(p) H(I : p)
    let mut plus = gens.clone();
    plus.push(pivot);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| g.with_exp(var, g.exp(var).saturating_sub(e)))
        .collect();
    let mut out = numerator(&plus);
    poly_add(&mut out, &numerator(&colon), e as usize);
    out
}

impl HilbertSeries {
    pub fn of_monomial_ideal(nvars: usize, gens: &[Monomial]) -> Self {
        let mut numerator = numerator(gens);
        while numerator.len() > 1 && *numerator.last().unwrap() == 0 {
            numerator.pop();
        }
        HilbertSeries { nvars, numerator }
    }

    /// Reduced form `q(t) / (1 - t)^d` with `q(1) != 0` (or `q = 0`).
    pub fn reduced(&self) -> (Vec<i64>, usize) {
        let mut q = self.numerator.clone();
        let mut d = self.nvars;
        if q.iter().all(|&c| c == 0) {
            return (vec![0], 0);
        }
        while d > 0 && q.iter().sum::<i64>() == 0 {
            // divide by (1 - t): q = (1 - t) r  =>  r_k = sum_{j<=k} q_j
            let mut r = Vec::with_capacity(q.len() - 1);
            let mut acc = 0i64;
            for &c in &q[..q.len() - 1] {
                acc += c;
                r.push(acc);
            }
            q = r;
            d -= 1;
        }
        (q, d)
    }

    /// Projective dimension and degree of Proj(k[x]/I).
    pub fn projective_info(&self) -> SchemeInfo {
        let (q, d) = self.reduced();
        if q.iter().all(|&c| c == 0) || d == 0 {
            return SchemeInfo { dimension: -1, degree: 0 };
        }
        SchemeInfo { dimension: d as i64 - 1, degree: q.iter().sum() }
    }

    /// Affine dimension and degree of Spec(k[x]/I) for a homogeneous I, or
    /// the number of standard monomials when the quotient is finite.
    pub fn affine_info(&self) -> SchemeInfo {
        let (q, d) = self.reduced();
        if q.iter().all(|&c| c == 0) {
            return SchemeInfo { dimension: -1, degree: 0 };
        }
        SchemeInfo { dimension: d as i64, degree: q.iter().sum() }
    }

    /// Coefficient of t^n in the series.
    pub fn value(&self, n: usize) -> i64 {
        let m = self.nvars;
        let mut total = 0i64;
        for (j, &c) in self.numerator.iter().enumerate().take(n + 1) {
            let k = n - j;
            let b = if m == 0 { i64::from(k == 0) } else { binom(k + m - 1, m - 1) };
            total += c * b;
        }
        total
    }
}

fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn hypersurface_degree() {
        // x0^5 in four variables: a degree-5 surface in P^3.
        let h = HilbertSeries::of_monomial_ideal(4, &[m(&[5])]);
        assert_eq!(h.projective_info(), SchemeInfo { dimension: 2, degree: 5 });
    }

    #[test]
    fn points_and_lines() {
        // (x, y) in k[x,y,z,w]: a line.
        let h = HilbertSeries::of_monomial_ideal(4, &[m(&[1]), m(&[0, 1])]);
        assert_eq!(h.projective_info(), SchemeInfo { dimension: 1, degree: 1 });
        // (x^2, xy, y^2) in k[x,y,z]: a fat point of degree 3.
        let h = HilbertSeries::of_monomial_ideal(3, &[m(&[2]), m(&[1, 1]), m(&[0, 2])]);
        assert_eq!(h.projective_info(), SchemeInfo { dimension: 0, degree: 3 });
    }

    #[test]
    fn finite_affine_count() {
        // (x^2, y^3) in k[x,y]: six standard monomials.
        let h = HilbertSeries::of_monomial_ideal(2, &[m(&[2]), m(&[0, 3])]);
        assert_eq!(h.affine_info(), SchemeInfo { dimension: 0, degree: 6 });
    }

    #[test]
    fn series_values() {
        let h = HilbertSeries::of_monomial_ideal(4, &[m(&[5])]);
        assert_eq!(h.value(0), 1);
        assert_eq!(h.value(1), 4);
        assert_eq!(h.value(5), 55);
    }
}
