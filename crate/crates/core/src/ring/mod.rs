//! Exact coefficient rings: ℚ, ℤ, 𝔽_p and ℤ/p^N.

mod matrix;
pub mod padic;
mod snf;

pub use matrix::{rank, rank_mod_p, row_reduce, solve_over_ring, LinearSolver, Matrix, RowReduction};
pub use snf::{elementary_divisors, local_smith_form, smith_normal_form, LocalSmithForm, SmithNormalForm};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Residue moduli must leave headroom for `a + b` in a u64.
const MAX_MODULUS: u64 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Rationals,
    Integers,
    PrimeField { p: u64 },
    TruncatedPAdic { p: u64, precision: u32 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl RingSpec {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_MODULUS {
            return Err(Error::InvalidPrecision { p, precision: 1, reason: "modulus too large".into() });
        }
        Ok(RingSpec::PrimeField { p })
    }

    pub fn truncated_padic(p: u64, precision: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if precision == 0 {
            return Err(Error::InvalidPrecision { p, precision, reason: "precision must be at least 1".into() });
        }
        match p.checked_pow(precision) {
            Some(m) if m < MAX_MODULUS => Ok(RingSpec::TruncatedPAdic { p, precision }),
            _ => Err(Error::InvalidPrecision { p, precision, reason: "p^N must stay below 2^62".into() }),
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match *self {
            RingSpec::PrimeField { p } | RingSpec::TruncatedPAdic { p, .. } => Some(p),
            _ => None,
        }
    }

    /// The modulus of a residue ring.
    pub fn modulus(&self) -> Option<u64> {
        match *self {
            RingSpec::PrimeField { p } => Some(p),
            RingSpec::TruncatedPAdic { p, precision } => Some(p.pow(precision)),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, RingSpec::Rationals | RingSpec::PrimeField { .. })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Q" => return Ok(RingSpec::Rationals),
            "Z" => return Ok(RingSpec::Integers),
            _ => {}
        }
        let bad = || Error::Parse(format!("unknown ring '{s}'"));
        if let Some(p) = s.strip_prefix("F_") {
            return RingSpec::prime_field(p.parse().map_err(|_| bad())?);
        }
        if let Some(rest) = s.strip_prefix("Z/") {
            let (p, n) = rest.split_once('^').unwrap_or((rest, "1"));
            return RingSpec::truncated_padic(p.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?);
        }
        Err(bad())
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::PrimeField { p } => write!(f, "F_{p}"),
            RingSpec::TruncatedPAdic { p, precision } => write!(f, "Z/{p}^{precision}"),
        }
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        RingSpec::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Rational(BigRational),
    Integer(BigInt),
    Residue(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    ring: RingSpec,
    value: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn ring_arith(a: &RingElem, b: &RingElem, op: ArithOp) -> Result<RingElem> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch(a.ring.to_string(), b.ring.to_string()));
    }
    Ok(match op {
        ArithOp::Add => a.add_same(b),
        ArithOp::Sub => a.add_same(&b.neg_ref()),
        ArithOp::Mul => a.mul_same(b),
    })
}

pub fn ring_inverse(a: &RingElem) -> Result<RingElem> {
    a.inverse()
}

fn reduce_bigint(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits in u64")
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    mod_inverse(a % m, m)
}

impl RingElem {
    pub fn zero(ring: RingSpec) -> Self {
        Self::from_int(ring, 0)
    }

    pub fn one(ring: RingSpec) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn from_int(ring: RingSpec, n: i64) -> Self {
        Self::from_bigint(ring, &BigInt::from(n))
    }

    pub fn from_bigint(ring: RingSpec, n: &BigInt) -> Self {
        let value = match ring {
            RingSpec::Rationals => Value::Rational(BigRational::from_integer(n.clone())),
            RingSpec::Integers => Value::Integer(n.clone()),
            _ => Value::Residue(reduce_bigint(n, ring.modulus().unwrap())),
        };
        RingElem { ring, value }
    }

    /// Maps a rational into the ring; the denominator has to be invertible there.
    pub fn from_rational(ring: RingSpec, q: &BigRational) -> Result<Self> {
        let num = Self::from_bigint(ring, q.numer());
        if q.denom().is_one() {
            return Ok(num);
        }
        if ring == RingSpec::Rationals {
            return Ok(RingElem { ring, value: Value::Rational(q.clone()) });
        }
        let den = Self::from_bigint(ring, q.denom());
        let inv = den.inverse().map_err(|_| Error::NonUnit { ring: ring.to_string(), elem: q.to_string() })?;
        Ok(num.mul_same(&inv))
    }

    /// Parses an exact literal such as `3`, `-1` or `5/3`.
    pub fn parse(ring: RingSpec, s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid ring literal '{s}'"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Self::from_rational(ring, &BigRational::new(n, d))
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_zero(),
            Value::Integer(n) => n.is_zero(),
            Value::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_one(),
            Value::Integer(n) => n.is_one(),
            Value::Residue(r) => *r == 1 % self.ring.modulus().unwrap(),
        }
    }

    pub fn is_unit(&self) -> bool {
        match &self.value {
            Value::Rational(q) => !q.is_zero(),
            Value::Integer(n) => n.abs().is_one(),
            Value::Residue(r) => *r % self.ring.prime().unwrap() != 0,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let err = || Error::NonUnit { ring: self.ring.to_string(), elem: self.to_string() };
        let value = match &self.value {
            Value::Rational(q) if !q.is_zero() => Value::Rational(q.recip()),
            Value::Integer(n) if n.abs().is_one() => Value::Integer(n.clone()),
            Value::Residue(r) => Value::Residue(mod_inverse(*r, self.ring.modulus().unwrap()).ok_or_else(err)?),
            _ => return Err(err()),
        };
        Ok(RingElem { ring: self.ring, value })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_same(&base);
            }
        }
        acc
    }

    /// Integer representative: the integer itself, or the residue in `[0, m)`.
    /// `None` for a rational that is not an integer.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match &self.value {
            Value::Rational(q) => q.is_integer().then(|| q.to_integer()),
            Value::Integer(n) => Some(n.clone()),
            Value::Residue(r) => Some(BigInt::from(*r)),
        }
    }

    /// Residue representative in `(-m/2, m/2]`, or the integer itself.
    pub fn symmetric_lift(&self) -> Option<BigInt> {
        match &self.value {
            Value::Residue(r) => {
                let m = self.ring.modulus().unwrap();
                Some(if *r > m / 2 { BigInt::from(*r) - BigInt::from(m) } else { BigInt::from(*r) })
            }
            _ => self.to_bigint(),
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.value {
            Value::Rational(q) => Some(q.clone()),
            Value::Integer(n) => Some(BigRational::from_integer(n.clone())),
            Value::Residue(_) => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self.value {
            Value::Residue(r) => Some(r),
            _ => None,
        }
    }

    /// Reinterprets an integer (or integral residue) in another ring.
    pub fn map_to(&self, ring: RingSpec) -> Result<Self> {
        match &self.value {
            Value::Rational(q) => Self::from_rational(ring, q),
            Value::Integer(n) => Ok(Self::from_bigint(ring, n)),
            Value::Residue(r) => {
                let ok = match (self.ring, ring) {
                    (a, b) if a == b => true,
                    (RingSpec::TruncatedPAdic { p, .. }, RingSpec::PrimeField { p: q }) => p == q,
                    (RingSpec::TruncatedPAdic { p, precision: n }, RingSpec::TruncatedPAdic { p: q, precision: k }) => {
                        p == q && k <= n
                    }
                    _ => false,
                };
                if !ok {
                    return Err(Error::RingMismatch(self.ring.to_string(), ring.to_string()));
                }
                Ok(Self::from_bigint(ring, &BigInt::from(*r)))
            }
        }
    }

    fn add_same(&self, other: &Self) -> Self {
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            (Value::Integer(a), Value::Integer(b)) => Value::Integer(a + b),
            (Value::Residue(a), Value::Residue(b)) => {
                let m = self.ring.modulus().unwrap();
                let s = a + b;
                Value::Residue(if s >= m { s - m } else { s })
            }
            _ => unreachable!("ring tags checked by caller"),
        };
        RingElem { ring: self.ring, value }
    }

    fn mul_same(&self, other: &Self) -> Self {
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            (Value::Integer(a), Value::Integer(b)) => Value::Integer(a * b),
            (Value::Residue(a), Value::Residue(b)) => Value::Residue(mul_mod(*a, *b, self.ring.modulus().unwrap())),
            _ => unreachable!("ring tags checked by caller"),
        };
        RingElem { ring: self.ring, value }
    }

    fn neg_ref(&self) -> Self {
        let value = match &self.value {
            Value::Rational(a) => Value::Rational(-a),
            Value::Integer(a) => Value::Integer(-a),
            Value::Residue(a) => {
                let m = self.ring.modulus().unwrap();
                Value::Residue(if *a == 0 { 0 } else { m - a })
            }
        };
        RingElem { ring: self.ring, value }
    }

    /// Sign used when printing: true for values that print with a leading minus.
    pub fn is_negative(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_negative(),
            Value::Integer(n) => n.is_negative(),
            Value::Residue(_) => false,
        }
    }
}

fn check_same(a: &RingElem, b: &RingElem) {
    assert_eq!(a.ring, b.ring, "coefficients from different rings");
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        check_same(self, rhs);
        self.add_same(rhs)
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        check_same(self, rhs);
        self.add_same(&rhs.neg_ref())
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        check_same(self, rhs);
        self.mul_same(rhs)
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.neg_ref()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: RingElem) -> RingElem { (&self).$m(&rhs) }
        }
        impl $tr<&RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: &RingElem) -> RingElem { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.neg_ref()
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Value::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Value::Integer(n) => write!(f, "{n}"),
            Value::Residue(r) => write!(f, "{r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> RingElem {
        RingElem::parse(RingSpec::Rationals, s).unwrap()
    }

    #[test]
    fn fraction_addition() {
        let r = ring_arith(&q("1/2"), &q("1/3"), ArithOp::Add).unwrap();
        assert_eq!(r, q("5/6"));
    }

    #[test]
    fn small_field_and_wraparound() {
        let f3 = RingSpec::prime_field(3).unwrap();
        let two = RingElem::from_int(f3, 2);
        assert_eq!(ring_arith(&two, &two, ArithOp::Mul).unwrap(), RingElem::one(f3));
        let z8 = RingSpec::truncated_padic(2, 3).unwrap();
        let s = ring_arith(&RingElem::from_int(z8, 7), &RingElem::one(z8), ArithOp::Add).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let f3 = RingSpec::prime_field(3).unwrap();
        let err = ring_arith(&RingElem::one(f3), &q("1"), ArithOp::Add).unwrap_err();
        assert!(matches!(err, Error::RingMismatch(..)));
    }

    #[test]
    fn inverses() {
        let f5 = RingSpec::prime_field(5).unwrap();
        assert_eq!(RingElem::from_int(f5, 2).inverse().unwrap(), RingElem::from_int(f5, 3));
        let z16 = RingSpec::truncated_padic(2, 4).unwrap();
        assert_eq!(RingElem::from_int(z16, 3).inverse().unwrap(), RingElem::from_int(z16, 11));
        let err = RingElem::from_int(RingSpec::Integers, 2).inverse().unwrap_err();
        assert!(matches!(err, Error::NonUnit { .. }));
        assert!(RingElem::from_int(z16, 6).inverse().is_err());
        assert_eq!(RingElem::from_int(RingSpec::Integers, -1).inverse().unwrap().to_string(), "-1");
    }

    #[test]
    fn ring_construction_checks() {
        assert!(matches!(RingSpec::prime_field(4), Err(Error::NotPrime(4))));
        assert!(RingSpec::truncated_padic(3, 0).is_err());
        assert!(RingSpec::truncated_padic(2, 70).is_err());
        for s in ["Q", "Z", "F_7", "Z/3^6"] {
            assert_eq!(RingSpec::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn literals_in_residue_rings() {
        let f7 = RingSpec::prime_field(7).unwrap();
        assert_eq!(RingElem::parse(f7, "5/3").unwrap(), RingElem::from_int(f7, 4));
        assert_eq!(RingElem::parse(f7, "-1").unwrap(), RingElem::from_int(f7, 6));
        assert!(RingElem::parse(f7, "1/7").is_err());
        assert!(RingElem::parse(RingSpec::Integers, "1/2").is_err());
        assert_eq!(RingElem::parse(RingSpec::Integers, "6/3").unwrap().to_string(), "2");
        assert!(RingElem::parse(RingSpec::Rationals, "x").is_err());
    }

    #[test]
    fn symmetric_lift_of_minus_one() {
        let z = RingSpec::truncated_padic(3, 6).unwrap();
        let m1 = RingElem::from_int(z, -1);
        assert_eq!(m1.symmetric_lift().unwrap(), BigInt::from(-1));
        assert_eq!(m1.to_bigint().unwrap(), BigInt::from(728));
    }
}
