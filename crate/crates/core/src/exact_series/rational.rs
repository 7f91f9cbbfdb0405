//! Arbitrary-precision rationals kept in lowest terms.
//!
//! `num-bigint` ships Stein's binary gcd, which degrades badly when one
//! operand has thousands of bits and the other a handful (the common case
//! when unrolling a recurrence). Normalization here goes through a
//! Euclidean gcd that drops to machine words as soon as both operands fit.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Greatest common divisor of two integers, always non-negative.
pub fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    loop {
        if b.is_zero() {
            return a;
        }
        if let (Some(x), Some(y)) = (a.to_u64(), b.to_u64()) {
            return BigInt::from(x.gcd(&y));
        }
        // One Euclidean step shrinks the larger operand to the size of the smaller.
        let r = &a % &b;
        a = b;
        b = r;
    }
}

/// An exact rational number `numer / denom` with `denom > 0` and
/// `gcd(|numer|, denom) = 1`. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactRational {
    numer: BigInt,
    denom: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

impl ExactRational {
    /// Builds `numer / denom` in lowest terms.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        let mut r = ExactRational { numer, denom };
        r.normalize();
        r
    }

    pub fn from_integer(n: BigInt) -> Self {
        ExactRational {
            numer: n,
            denom: BigInt::one(),
        }
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn normalize(&mut self) {
        if self.denom.is_negative() {
            self.numer = -std::mem::take(&mut self.numer);
            self.denom = -std::mem::take(&mut self.denom);
        }
        if self.numer.is_zero() {
            self.denom = BigInt::one();
            return;
        }
        if self.denom.is_one() {
            return;
        }
        let g = big_gcd(&self.numer, &self.denom);
        if !g.is_one() {
            self.numer /= &g;
            self.denom /= &g;
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn into_parts(self) -> (BigInt, BigInt) {
        (self.numer, self.denom)
    }

    pub fn is_integer(&self) -> bool {
        self.denom.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.numer.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.numer.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.numer.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        ExactRational {
            numer: self.numer.abs(),
            denom: self.denom.clone(),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.numer.is_zero(), "reciprocal of zero");
        let mut r = ExactRational {
            numer: self.denom.clone(),
            denom: self.numer.clone(),
        };
        if r.denom.is_negative() {
            r.numer = -r.numer;
            r.denom = -r.denom;
        }
        r
    }

    /// Integer power; negative exponents invert. Panics on `0^(-k)`.
    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.recip() } else { self.clone() };
        let e = exp.unsigned_abs();
        let e = u32::try_from(e).expect("exponent too large");
        // Powers of a reduced fraction stay reduced.
        ExactRational {
            numer: num_traits::Pow::pow(&base.numer, e),
            denom: num_traits::Pow::pow(&base.denom, e),
        }
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        self.numer.div_floor(&self.denom)
    }

    pub fn to_f64(&self) -> f64 {
        match (self.numer.to_f64(), self.denom.to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                // Scale both down to keep the quotient in range.
                let shift = self.numer.bits().max(self.denom.bits()).saturating_sub(900);
                let n = (&self.numer >> shift).to_f64().unwrap_or(0.0);
                let d = (&self.denom >> shift).to_f64().unwrap_or(f64::INFINITY);
                n / d
            }
        }
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.denom == rhs.denom {
            return ExactRational::new(&self.numer + &rhs.numer, self.denom.clone());
        }
        if self.numer.is_zero() {
            return rhs.clone();
        }
        if rhs.numer.is_zero() {
            return self.clone();
        }
        let numer = &self.numer * &rhs.denom + &rhs.numer * &self.denom;
        ExactRational::new(numer, &self.denom * &rhs.denom)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.numer.is_zero() || rhs.numer.is_zero() {
            return ExactRational::zero();
        }
        if self.denom.is_one() && rhs.denom.is_one() {
            return ExactRational::from_integer(&self.numer * &rhs.numer);
        }
        // Cross-cancel first so the products stay small.
        let g1 = big_gcd(&self.numer, &rhs.denom);
        let g2 = big_gcd(&rhs.numer, &self.denom);
        let numer = (&self.numer / &g1) * (&rhs.numer / &g2);
        let denom = (&self.denom / &g2) * (&rhs.denom / &g1);
        ExactRational { numer, denom }
    }
}

impl Zero for ExactRational {
    fn zero() -> Self {
        ExactRational::from_integer(BigInt::zero())
    }
    fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }
}

impl One for ExactRational {
    fn one() -> Self {
        ExactRational::from_integer(BigInt::one())
    }
    fn is_one(&self) -> bool {
        self.numer.is_one() && self.denom.is_one()
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for ExactRational {
            fn from(v: $t) -> Self {
                ExactRational::from_integer(BigInt::from(v))
            }
        }
    )*};
}
from_prim!(i32, i64, u32, u64, usize);

impl From<BigInt> for ExactRational {
    fn from(v: BigInt) -> Self {
        ExactRational::from_integer(v)
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> Self {
        ExactRational {
            numer: -self.numer,
            denom: self.denom,
        }
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                let f: fn(&ExactRational, &ExactRational) -> ExactRational = $body;
                f(self, rhs)
            }
        }
        impl $tr<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                (&self).$method(rhs)
            }
        }
        impl $tr<ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b));
binop!(Sub, sub, |a, b| a.add_ref(&-b));
binop!(Mul, mul, |a, b| a.mul_ref(b));
binop!(Div, div, |a, b| a.mul_ref(&b.recip()));

macro_rules! assignop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&ExactRational> for ExactRational {
            fn $method(&mut self, rhs: &ExactRational) {
                *self = &*self $op rhs;
            }
        }
        impl $tr<ExactRational> for ExactRational {
            fn $method(&mut self, rhs: ExactRational) {
                *self = &*self $op &rhs;
            }
        }
    };
}

assignop!(AddAssign, add_assign, +);
assignop!(SubAssign, sub_assign, -);
assignop!(MulAssign, mul_assign, *);
assignop!(DivAssign, div_assign, /);

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactRational> for ExactRational {
    fn sum<I: Iterator<Item = &'a ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}

impl Product for ExactRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactRational::one(), |acc, x| acc * x)
    }
}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.denom == other.denom {
            return self.numer.cmp(&other.numer);
        }
        (&self.numer * &other.denom).cmp(&(&other.numer * &self.denom))
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            None => s
                .parse::<BigInt>()
                .map(ExactRational::from_integer)
                .map_err(|_| err()),
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(ExactRational::new(n, d))
            }
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Binomial coefficient over the integers, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Generalized binomial `C(a, m)` for rational `a`.
pub fn rational_binomial(a: &ExactRational, m: usize) -> ExactRational {
    let mut acc = ExactRational::one();
    for i in 0..m {
        acc = acc * (a - ExactRational::from(i)) / ExactRational::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::from_ratio(n, d)
    }

    #[test]
    fn lowest_terms_and_sign() {
        let r = q(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(q(0, -7), ExactRational::zero());
        assert_eq!(q(0, -7).denom(), &BigInt::one());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(1, 2) - q(1, 2), ExactRational::zero());
        assert_eq!(q(2, 3) * q(9, 4), q(3, 2));
        assert_eq!(q(2, 3) / q(4, 9), q(3, 2));
        assert_eq!(q(-2, 3).pow(-2), q(9, 4));
        assert!(q(1, 3) < q(1, 2));
        assert_eq!(q(-7, 2).floor(), BigInt::from(-4));
    }

    #[test]
    fn text_form() {
        assert_eq!(q(3, 1).to_string(), "3");
        assert_eq!(q(-9, 8).to_string(), "-9/8");
        assert_eq!(
            "36939/32768".parse::<ExactRational>().unwrap(),
            q(36939, 32768)
        );
        assert_eq!("-4".parse::<ExactRational>().unwrap(), q(-4, 1));
        assert!("1/0".parse::<ExactRational>().is_err());
        assert!("x".parse::<ExactRational>().is_err());
    }

    #[test]
    fn gcd_mixed_sizes() {
        let big = BigInt::from(3u32).pow(2000u32) * BigInt::from(14);
        assert_eq!(big_gcd(&big, &BigInt::from(35)), BigInt::from(7));
        assert_eq!(big_gcd(&BigInt::zero(), &BigInt::from(-5)), BigInt::from(5));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(4, 5), BigInt::zero());
        assert_eq!(rational_binomial(&q(-3, 2), 2), q(15, 8));
    }

    #[test]
    fn f64_of_huge_values() {
        let r = ExactRational::new(
            BigInt::from(10).pow(400u32),
            BigInt::from(10).pow(399u32) * 4,
        );
        assert!((r.to_f64() - 2.5).abs() < 1e-12);
    }
}
