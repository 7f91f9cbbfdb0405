use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactRational;

/// A Laurent polynomial in `x` over the rationals.
///
/// Stored densely from `low` upwards; the first and last stored entries are
/// always nonzero, and the zero polynomial stores nothing. Interior zeros are
/// an internal detail: every accessor skips them, so the observable support
/// is exactly the set of exponents with nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<ExactRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * x^exp`.
    pub fn monomial(c: ExactRational, exp: i64) -> Self {
        let mut p = LaurentPoly {
            low: exp,
            coeffs: vec![c],
        };
        p.trim();
        p
    }

    /// `x`
    pub fn x() -> Self {
        Self::monomial(ExactRational::one(), 1)
    }

    /// `x̄ = 1/x`
    pub fn xbar() -> Self {
        Self::monomial(ExactRational::one(), -1)
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, ExactRational)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let Some(low) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![ExactRational::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    /// Dense constructor: `coeffs[k]` is the coefficient of `x^(low + k)`.
    pub fn from_dense(low: i64, coeffs: Vec<ExactRational>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn min_deg(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_deg(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `x^exp` (zero outside the support).
    pub fn coeff(&self, exp: i64) -> ExactRational {
        self.coeff_ref(exp)
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    fn coeff_ref(&self, exp: i64) -> Option<&ExactRational> {
        let idx = exp.checked_sub(self.low)?;
        usize::try_from(idx).ok().and_then(|i| self.coeffs.get(i))
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &ExactRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// `Some((c, e))` when the polynomial is the single term `c x^e`.
    pub fn as_monomial(&self) -> Option<(&ExactRational, i64)> {
        (self.coeffs.len() == 1).then(|| (&self.coeffs[0], self.low))
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs.len() == 1)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Drops every term with a negative exponent.
    pub fn nonneg_part(&self) -> Self {
        if self.low >= 0 {
            return self.clone();
        }
        let skip = (-self.low) as usize;
        if skip >= self.coeffs.len() {
            return Self::zero();
        }
        Self::from_dense(0, self.coeffs[skip..].to_vec())
    }

    /// Substitutes `x -> 1/x`.
    pub fn reflect(&self) -> Self {
        match self.max_deg() {
            None => Self::zero(),
            Some(high) => LaurentPoly {
                low: -high,
                coeffs: self.coeffs.iter().rev().cloned().collect(),
            },
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn add_impl(&self, rhs: &Self, negate_rhs: bool) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate_rhs { -rhs } else { rhs.clone() };
        }
        let low = self.low.min(rhs.low);
        let high = self.max_deg().unwrap().max(rhs.max_deg().unwrap());
        let mut coeffs = vec![ExactRational::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] = c.clone();
        }
        let off = (rhs.low - low) as usize;
        for (k, c) in rhs.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let slot = &mut coeffs[off + k];
            if negate_rhs {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::from_dense(low, coeffs)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some((c, e)) = self.as_monomial() {
            return rhs.scale(c).shift(e);
        }
        if let Some((c, e)) = rhs.as_monomial() {
            return self.scale(c).shift(e);
        }
        let mut coeffs = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Self::from_dense(self.low + rhs.low, coeffs)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_impl(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_impl(rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_impl(rhs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<ExactRational> for LaurentPoly {
    fn from(c: ExactRational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<_> = self.terms().collect();
        for (n, (e, c)) in terms.iter().rev().enumerate() {
            let (neg, mag) = if c.is_negative() {
                (true, c.abs())
            } else {
                (false, (*c).clone())
            };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let var = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<(i64, ExactRational)>::deserialize(deserializer)?;
        if terms.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(D::Error::custom("exponents must be strictly increasing"));
        }
        if terms.iter().any(|(_, c)| c.is_zero()) {
            return Err(D::Error::custom("zero coefficient in term list"));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}
