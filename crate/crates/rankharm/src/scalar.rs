//! Exact coefficients.
//!
//! [`Scalar`] is an element of the rational function field Q(r) in a formal
//! parameter `r`. [`CyclotomicScalar`] is an element of Q(ζ_p) for a prime `p`,
//! used by the finite local-field model.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Poly(Vec<BigInt>);

impl Poly {
    fn zero() -> Self {
        Poly(Vec::new())
    }

    fn constant(c: BigInt) -> Self {
        Poly(vec![c]).trimmed()
    }

    fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Poly(v).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    /// Exponent of the lowest nonzero term.
    fn order(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    fn term_count(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }

    fn shift_down(&self, k: usize) -> Self {
        Poly(self.0[k..].to_vec())
    }

    fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn scale_div(&self, d: &BigInt) -> Self {
        Poly(self.0.iter().map(|c| c / d).collect())
    }

    fn scale(&self, m: &BigInt) -> Self {
        Poly(self.0.iter().map(|c| c * m).collect()).trimmed()
    }

    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        self.scale_div(&c)
    }

    fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let zero = BigInt::zero();
        Poly(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
        .trimmed()
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trimmed()
    }

    /// Pseudo-remainder of `self` by `divisor`.
    fn pseudo_rem(&self, divisor: &Poly) -> Poly {
        let mut rem = self.clone();
        let dl = divisor.lead().clone();
        let dd = divisor.degree();
        while !rem.is_zero() && rem.degree() >= dd {
            let shift = rem.degree() - dd;
            let rl = rem.lead().clone();
            rem = rem.scale(&dl).add(&Poly::monomial(rl, shift).mul(divisor).neg());
        }
        rem
    }

    /// Exact quotient; the divisor must divide `self` over Z.
    fn div_exact(&self, divisor: &Poly) -> Poly {
        let mut rem = self.clone();
        let dd = divisor.degree();
        let mut quot = vec![BigInt::zero(); self.degree().saturating_sub(dd) + 1];
        while !rem.is_zero() && rem.degree() >= dd {
            let shift = rem.degree() - dd;
            let (q, r) = rem.lead().div_rem(divisor.lead());
            debug_assert!(r.is_zero(), "inexact polynomial division");
            rem = rem.add(&Poly::monomial(q.clone(), shift).mul(divisor).neg());
            quot[shift] = q;
        }
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        Poly(quot).trimmed()
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    fn eval(&self, q: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * q + BigRational::from_integer(c.clone()))
    }

    fn render(&self) -> String {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("[{k},{c}]"))
            .collect();
        format!("[{}]", terms.join(","))
    }

    fn parse(text: &str) -> Result<Poly> {
        let t = text.trim();
        if !t.starts_with('[') {
            let c = BigInt::from_str(t).map_err(|_| Error::Parse(format!("bad integer `{t}`")))?;
            return Ok(Poly::constant(c));
        }
        let cleaned: String = t.chars().map(|ch| if ch == '[' || ch == ']' { ' ' } else { ch }).collect();
        let parts: Vec<&str> = cleaned.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        if !parts.len().is_multiple_of(2) {
            return Err(Error::Parse(format!("odd number of entries in `{t}`")));
        }
        let mut acc = Poly::zero();
        for pair in parts.chunks(2) {
            let k: usize = pair[0].parse().map_err(|_| Error::Parse(format!("bad exponent `{}`", pair[0])))?;
            let c = BigInt::from_str(pair[1]).map_err(|_| Error::Parse(format!("bad coefficient `{}`", pair[1])))?;
            acc = acc.add(&Poly::monomial(c, k));
        }
        Ok(acc)
    }
}

/// An element of Q(r), kept as a reduced quotient of integer polynomials.
///
/// The canonical form has coprime numerator and denominator, a denominator
/// with positive leading coefficient, and no common integer content, so two
/// scalars are equal exactly when their representations coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::constant(BigInt::one()) }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar { num: Poly::constant(n), den: Poly::constant(BigInt::one()) }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::normalized(Poly::constant(q.numer().clone()), Poly::constant(q.denom().clone()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(Poly::constant(BigInt::from(n)), Poly::constant(BigInt::from(d))))
    }

    /// The formal parameter `r`.
    pub fn r() -> Self {
        Self::r_pow(1)
    }

    /// `r^k` for any integer `k`.
    pub fn r_pow(k: i64) -> Self {
        let one = BigInt::one();
        if k >= 0 {
            Scalar { num: Poly::monomial(one.clone(), k as usize), den: Poly::constant(one) }
        } else {
            Scalar { num: Poly::constant(one.clone()), den: Poly::monomial(one, (-k) as usize) }
        }
    }

    /// Builds `num/den` from integer coefficient lists (lowest degree first).
    pub fn from_coeffs(num: &[i64], den: &[i64]) -> Result<Self> {
        let n = Poly(num.iter().map(|&c| BigInt::from(c)).collect()).trimmed();
        let d = Poly(den.iter().map(|&c| BigInt::from(c)).collect()).trimmed();
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(n, d))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let low = num.order().min(den.order());
        let (mut num, mut den) = (num.shift_down(low), den.shift_down(low));
        if num.term_count() > 1 && den.term_count() > 1 {
            let g = num.gcd(&den);
            if g.degree() > 0 {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        let mut c = num.content().gcd(&den.content());
        if den.lead().is_negative() {
            c = -c;
        }
        Scalar { num: num.scale_div(&c), den: den.scale_div(&c) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Scalar) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Specializes `r` to the rational `q`.
    pub fn eval_at(&self, q: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return Err(Error::Pole(q.to_string()));
        }
        Ok(self.num.eval(q) / d)
    }

    /// Returns the value when the scalar does not depend on `r`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.degree() == 0 && self.den.degree() == 0 {
            let n = self.num.0.first().cloned().unwrap_or_default();
            Some(BigRational::new(n, self.den.0[0].clone()))
        } else {
            None
        }
    }

    /// Canonical text form: `a` or `a/b` for constants, otherwise `num/den`
    /// with each side a list of `[exponent, coefficient]` pairs.
    pub fn to_canonical_string(&self) -> String {
        match self.as_rational() {
            Some(q) => q.to_string(),
            None => format!("{}/{}", self.num.render(), self.den.render()),
        }
    }

    /// Parses the canonical form; a bare integer or `a/b` of integers is also accepted.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let (n, d) = match split_top_level_slash(t) {
            Some((n, d)) => (Poly::parse(n)?, Poly::parse(d)?),
            None => (Poly::parse(t)?, Poly::constant(BigInt::one())),
        };
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(n, d))
    }
}

fn split_top_level_slash(t: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in t.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '/' if depth == 0 => return Some((&t[..i], &t[i + 1..])),
            _ => {}
        }
    }
    None
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_canonical_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let text = match v {
            serde_json::Value::String(s) => s,
            serde_json::Value::Number(n) => n.to_string(),
            other => return Err(serde::de::Error::custom(format!("expected scalar string, got {other}"))),
        };
        Scalar::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Scalar::normalized(self.num.add(&o.num), self.den.clone());
        }
        Scalar::normalized(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        Scalar::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $ty:ty) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, o: $ty) -> $ty {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add, Scalar);
forward_owned!(Sub, sub, Scalar);
forward_owned!(Mul, mul, Scalar);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| &a + &b)
    }
}

/// Element of the cyclotomic field Q(ζ_p), stored in the basis 1, ζ, …, ζ^{p−2}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicScalar {
    p: u32,
    coeffs: Vec<BigRational>,
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl CyclotomicScalar {
    pub fn zero(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(CyclotomicScalar { p, coeffs: vec![BigRational::zero(); (p - 1) as usize] })
    }

    pub fn from_rational(p: u32, q: BigRational) -> Result<Self> {
        let mut z = Self::zero(p)?;
        z.coeffs[0] = q;
        Ok(z)
    }

    /// ζ_p^e for any integer exponent.
    pub fn zeta_pow(p: u32, e: i64) -> Result<Self> {
        let mut z = Self::zero(p)?;
        let e = e.rem_euclid(p as i64) as usize;
        if e == p as usize - 1 {
            for c in z.coeffs.iter_mut() {
                *c = -BigRational::one();
            }
        } else {
            z.coeffs[e] = BigRational::one();
        }
        Ok(z)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Returns the value when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.p != o.p {
            return Err(Error::PrimeMismatch(self.p, o.p));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(CyclotomicScalar { p: self.p, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicScalar { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicScalar { p: self.p, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let p = self.p as usize;
        let mut full = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                full[(i + j) % p] += a * b;
            }
        }
        let top = full[p - 1].clone();
        let coeffs = full[..p - 1].iter().map(|c| c - &top).collect();
        Ok(CyclotomicScalar { p: self.p, coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn inverse_law() {
        assert_eq!(Scalar::r() * Scalar::r_pow(-1), Scalar::one());
    }

    #[test]
    fn cancellation() {
        let a = Scalar::one() - Scalar::r_pow(-1);
        assert_eq!(a + Scalar::r_pow(-1), Scalar::one());
    }

    #[test]
    fn gcd_reduction() {
        let x = Scalar::from_coeffs(&[-1, 1], &[-1, 0, 1]).unwrap();
        let y = Scalar::from_coeffs(&[1], &[1, 1]).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.eval_at(&q(3, 1)).unwrap(), q(1, 4));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(Scalar::r_pow(-1).eval_at(&q(2, 1)).unwrap(), q(1, 2));
        let a = Scalar::one() - Scalar::r_pow(-1);
        assert_eq!(a.eval_at(&q(2, 1)).unwrap(), q(1, 2));
        let pole = Scalar::from_coeffs(&[1], &[-1, 1]).unwrap();
        assert!(matches!(pole.eval_at(&q(1, 1)), Err(Error::Pole(_))));
    }

    #[test]
    fn division_by_zero_is_distinct() {
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(Scalar::one().div(&Scalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn text_round_trip() {
        let x = Scalar::from_coeffs(&[3, 0, -2], &[0, 5, 1]).unwrap();
        let s = x.to_canonical_string();
        assert_eq!(Scalar::parse(&s).unwrap(), x);
        assert_eq!(Scalar::parse("3/4").unwrap(), Scalar::from_ratio(3, 4).unwrap());
        assert_eq!(Scalar::parse("[[1,1]]/[[0,1]]").unwrap(), Scalar::r());
        assert_eq!(Scalar::from_ratio(-3, 6).unwrap().to_canonical_string(), "-1/2");
        assert_eq!(Scalar::one().to_canonical_string(), "1");
        assert_eq!(Scalar::parse("-1/2").unwrap(), Scalar::from_ratio(-1, 2).unwrap());
    }

    #[test]
    fn content_is_normalized() {
        let x = Scalar::from_coeffs(&[2, 4], &[6]).unwrap();
        assert_eq!(x.to_canonical_string(), "[[0,1],[1,2]]/[[0,3]]");
        let y = Scalar::from_coeffs(&[1], &[0, -2]).unwrap();
        assert_eq!(y.to_canonical_string(), "[[0,-1]]/[[1,2]]");
    }

    #[test]
    fn cyclotomic_relations() {
        let z2 = CyclotomicScalar::zeta_pow(2, 1).unwrap();
        assert_eq!(z2.mul(&z2).unwrap().as_rational(), Some(q(1, 1)));
        let one = CyclotomicScalar::zeta_pow(3, 0).unwrap();
        let z = CyclotomicScalar::zeta_pow(3, 1).unwrap();
        let z_sq = z.mul(&z).unwrap();
        assert!(one.add(&z).unwrap().add(&z_sq).unwrap().is_zero());
        let total = (0..3)
            .map(|x| CyclotomicScalar::zeta_pow(3, x).unwrap())
            .try_fold(CyclotomicScalar::zero(3).unwrap(), |acc, t| acc.add(&t))
            .unwrap();
        assert!(total.is_zero());
    }

    #[test]
    fn cyclotomic_prime_mismatch() {
        let a = CyclotomicScalar::zeta_pow(3, 1).unwrap();
        let b = CyclotomicScalar::zeta_pow(5, 1).unwrap();
        assert_eq!(a.add(&b), Err(Error::PrimeMismatch(3, 5)));
        assert_eq!(CyclotomicScalar::zero(4), Err(Error::NotPrime(4)));
    }
}
