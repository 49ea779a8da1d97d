//! Exact arithmetic in the cyclotomic field Q(ζ) with ζ a primitive fifth root
//! of unity.
//!
//! Elements are stored in the power basis `{1, ζ, ζ², ζ³}` as four integer
//! numerators over a single positive common denominator. The representation is
//! normalized after every operation (gcd of all five integers is one, the
//! denominator is positive), so structural equality is field equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of Q(ζ₅).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    num: [BigInt; 4],
    den: BigInt,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { num: Default::default(), den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        let mut c = Self::zero();
        c.num[0] = BigInt::from(n);
        c
    }

    pub fn from_rational(q: &BigRational) -> Self {
        let mut c = CycNum {
            num: [q.numer().clone(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            den: q.denom().clone(),
        };
        c.normalize();
        c
    }

    /// Builds `q0 + q1 ζ + q2 ζ² + q3 ζ³`.
    pub fn from_coords(coords: [BigRational; 4]) -> Self {
        let den = coords.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = coords.map(|q| q.numer() * (&den / q.denom()));
        let mut c = CycNum { num, den };
        c.normalize();
        c
    }

    pub fn from_int_coords(coords: [i64; 4]) -> Self {
        let mut c = CycNum { num: coords.map(BigInt::from), den: BigInt::one() };
        c.normalize();
        c
    }

    /// The primitive root ζ.
    pub fn zeta() -> Self {
        Self::from_int_coords([0, 1, 0, 0])
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let mut coords = [0i64; 4];
        match k.rem_euclid(5) {
            4 => coords = [-1, -1, -1, -1],
            e => coords[e as usize] = 1,
        }
        Self::from_int_coords(coords)
    }

    /// The golden section Φ = −ζ³ − ζ², a root of x² − x − 1.
    pub fn golden() -> Self {
        Self::from_int_coords([0, 0, -1, -1])
    }

    /// Coordinates in the power basis.
    pub fn coords(&self) -> [BigRational; 4] {
        std::array::from_fn(|i| BigRational::new(self.num[i].clone(), self.den.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Returns the value as a rational if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Bit size of the largest integer in the representation; used to track
    /// coefficient growth.
    pub fn height_bits(&self) -> u64 {
        self.num.iter().chain(std::iter::once(&self.den)).map(|n| n.bits()).max().unwrap_or(0)
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(n);
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for n in &mut self.num {
                *n /= &g;
            }
            self.den /= &g;
        }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // a · ρ₂(a)ρ₃(a)ρ₄(a) is the norm, a rational number
        let others = self.galois_unchecked(2) * self.galois_unchecked(3) * self.galois_unchecked(4);
        let norm = (self * &others).as_rational().expect("norm lies in Q");
        let inv_norm = CycNum::from_rational(&norm.recip());
        Ok(others * inv_norm)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// The field norm N(a) = ∏ ρ_r(a) over r = 1..4.
    pub fn norm(&self) -> BigRational {
        let p = self * &(self.galois_unchecked(2) * self.galois_unchecked(3) * self.galois_unchecked(4));
        p.as_rational().expect("norm lies in Q")
    }

    /// The Galois automorphism ρ_r determined by ζ ↦ ζ^r.
    pub fn galois(&self, r: i64) -> Result<Self> {
        if r.rem_euclid(5) == 0 {
            return Err(Error::InvalidArgument(format!("galois exponent {r} is not a unit mod 5")));
        }
        Ok(self.galois_unchecked(r))
    }

    fn galois_unchecked(&self, r: i64) -> Self {
        let r = r.rem_euclid(5) as usize;
        let mut out: [BigInt; 4] = Default::default();
        for (k, n) in self.num.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            match (k * r) % 5 {
                4 => {
                    for o in out.iter_mut() {
                        *o -= n;
                    }
                }
                e => out[e] += n,
            }
        }
        let mut c = CycNum { num: out, den: self.den.clone() };
        c.normalize();
        c
    }

    /// Complex conjugation, i.e. ρ₄.
    pub fn conj(&self) -> Self {
        self.galois_unchecked(4)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CycNum::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power allowing negative exponents.
    pub fn powi(&self, e: i32) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Multiplies by a rational integer.
    pub fn scale_int(&self, k: &BigInt) -> Self {
        let mut c = CycNum { num: self.num.clone().map(|n| n * k), den: self.den.clone() };
        c.normalize();
        c
    }
}

impl Default for CycNum {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.den == rhs.den {
            let mut c = CycNum {
                num: std::array::from_fn(|i| &self.num[i] + &rhs.num[i]),
                den: self.den.clone(),
            };
            c.normalize();
            return c;
        }
        let mut c = CycNum {
            num: std::array::from_fn(|i| &self.num[i] * &rhs.den + &rhs.num[i] * &self.den),
            den: &self.den * &rhs.den,
        };
        c.normalize();
        c
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.is_zero() || rhs.is_zero() {
            return CycNum::zero();
        }
        let mut prod: [BigInt; 7] = Default::default();
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let [c0, c1, c2, c3, c4, c5, c6] = prod;
        // ζ⁵ = 1, ζ⁶ = ζ, ζ⁴ = −1 − ζ − ζ² − ζ³
        let c0 = c0 + c5 - &c4;
        let c1 = c1 + c6 - &c4;
        let c2 = c2 - &c4;
        let c3 = c3 - &c4;
        let mut c = CycNum { num: [c0, c1, c2, c3], den: &self.den * &rhs.den };
        c.normalize();
        c
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { num: self.num.clone().map(|n| -n), den: self.den.clone() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { num: self.num.map(|n| -n), den: self.den }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for CycNum {
    /// Canonical textual form `(q0, q1, q2, q3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coords();
        write!(f, "({}, {}, {}, {})", c[0], c[1], c[2], c[3])
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for CycNum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("cyclotomic number must be parenthesized: {s:?}")))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("expected 4 coordinates in {s:?}")));
        }
        let mut coords: [BigRational; 4] = Default::default();
        for (slot, p) in coords.iter_mut().zip(&parts) {
            *slot = parse_rational(p)?;
        }
        Ok(CycNum::from_coords(coords))
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Residue class modulo 5.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Z5(u8);

impl Z5 {
    pub const ZERO: Z5 = Z5(0);
    pub const ONE: Z5 = Z5(1);

    pub fn new(v: i64) -> Self {
        Z5(v.rem_euclid(5) as u8)
    }

    pub fn value(self) -> i64 {
        self.0 as i64
    }

    pub fn all() -> impl Iterator<Item = Z5> {
        (0..5).map(Z5)
    }
}

impl Add for Z5 {
    type Output = Z5;
    fn add(self, rhs: Z5) -> Z5 {
        Z5::new(self.value() + rhs.value())
    }
}

impl Sub for Z5 {
    type Output = Z5;
    fn sub(self, rhs: Z5) -> Z5 {
        Z5::new(self.value() - rhs.value())
    }
}

impl Neg for Z5 {
    type Output = Z5;
    fn neg(self) -> Z5 {
        Z5::new(-self.value())
    }
}

impl Mul for Z5 {
    type Output = Z5;
    fn mul(self, rhs: Z5) -> Z5 {
        Z5::new(self.value() * rhs.value())
    }
}

impl fmt::Display for Z5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64) -> CycNum {
        CycNum::zeta_pow(k)
    }

    #[test]
    fn zeta_relations() {
        assert_eq!(z(2) * z(3), CycNum::one());
        assert_eq!(z(5), CycNum::one());
        assert_eq!(CycNum::zeta().pow(5), CycNum::one());
        let sum = (0..5).fold(CycNum::zero(), |acc, k| acc + z(k));
        assert!(sum.is_zero());
    }

    #[test]
    fn golden_section() {
        let phi = CycNum::golden();
        assert_eq!(&phi * &phi, &phi + &CycNum::one());
        // ρ₂(Φ) = 1 − Φ = −Φ⁻¹
        let g2 = phi.galois(2).unwrap();
        assert_eq!(g2, CycNum::one() - &phi);
        assert_eq!(g2, -phi.inv().unwrap());
    }

    #[test]
    fn inverse_and_division_by_zero() {
        let a = CycNum::one() + CycNum::zeta();
        assert_eq!(&a * &a.inv().unwrap(), CycNum::one());
        assert!(matches!(CycNum::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn galois_basics() {
        assert_eq!(CycNum::zeta().galois(2).unwrap(), z(2));
        assert_eq!(CycNum::zeta().conj(), z(4));
        assert!(CycNum::zeta().galois(5).is_err());
        assert!(CycNum::zeta().galois(0).is_err());
    }

    #[test]
    fn text_round_trip() {
        let a: CycNum = "(1/2, -3, 0, 7/9)".parse().unwrap();
        assert_eq!(a.to_string(), "(1/2, -3, 0, 7/9)");
        assert_eq!(a.to_string().parse::<CycNum>().unwrap(), a);
        assert!("(1, 2, 3)".parse::<CycNum>().is_err());
        assert!("1, 2, 3, 4".parse::<CycNum>().is_err());
    }

    #[test]
    fn norm_of_one_minus_zeta_is_five() {
        let a = CycNum::one() - CycNum::zeta();
        assert_eq!(a.norm(), BigRational::from_integer(5.into()));
    }
}
