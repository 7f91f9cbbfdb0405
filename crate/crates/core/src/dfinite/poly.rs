use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact_series::{big_gcd, ExactRational};

/// Dense univariate polynomial over the rationals, lowest degree first,
/// with no trailing zeros. The variable name only matters for display.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<ExactRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn monomial(c: ExactRational, deg: usize) -> Self {
        let mut coeffs = vec![ExactRational::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| ExactRational::from(v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ExactRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn lead(&self) -> Option<&ExactRational> {
        self.coeffs.last()
    }

    /// Coefficient of the lowest-degree nonzero term.
    pub fn trailing(&self) -> Option<&ExactRational> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Poly::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    /// Multiplies by `var^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ExactRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval(&self, v: &ExactRational) -> ExactRational {
        let mut acc = ExactRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * v + c;
        }
        acc
    }

    /// Evaluation at an integer, in integer arithmetic when the
    /// coefficients are integers.
    pub fn eval_int(&self, v: i64) -> ExactRational {
        self.eval(&ExactRational::from(v))
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * ExactRational::from(k))
                .collect(),
        )
    }

    /// `p(var + s)`
    pub fn shift_var(&self, s: &ExactRational) -> Self {
        let mut acc = Poly::zero();
        let lin = Poly::new(vec![s.clone(), ExactRational::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `p(a * var)`
    pub fn scale_var(&self, a: &ExactRational) -> Self {
        let mut pw = ExactRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw = &pw * a;
        }
        Poly::new(out)
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![ExactRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Integer primitive part: denominators cleared, integer content removed.
    /// Returns the scale factor applied.
    pub fn primitive_factor(polys: &[&Poly]) -> ExactRational {
        let mut lcm = BigInt::one();
        for p in polys {
            for c in &p.coeffs {
                lcm = lcm.lcm(c.denom());
            }
        }
        let mut content = BigInt::zero();
        for p in polys {
            for c in &p.coeffs {
                content = big_gcd(&content, &(c.numer() * (&lcm / c.denom())));
            }
        }
        if content.is_zero() {
            return ExactRational::one();
        }
        ExactRational::new(lcm, content)
    }

    /// Non-negative integer roots, with multiplicity.
    pub fn nonneg_integer_roots(&self) -> Vec<i64> {
        let mut out = Vec::new();
        let Some(d) = self.degree() else {
            return out;
        };
        if d == 0 {
            return out;
        }
        // Cauchy bound on root size.
        let lead = self.lead().unwrap().abs();
        let bound: BigInt = self
            .coeffs
            .iter()
            .map(|c| (c.abs() / &lead).floor())
            .max()
            .unwrap_or_else(BigInt::zero)
            + 1;
        let bound: i64 = bound.try_into().unwrap_or(i64::MAX);
        let mut p = self.clone();
        let mut k = 0i64;
        while k <= bound && p.degree().is_some_and(|d| d > 0) {
            if p.eval_int(k).is_zero() {
                out.push(k);
                p = p.div_rem(&Poly::from_ints(&[-k, 1])).0;
            } else {
                k += 1;
            }
        }
        out
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.display_in("z"))
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Poly::new(Vec::<ExactRational>::deserialize(deserializer)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_series::{frac, int};

    #[test]
    fn arithmetic_and_division() {
        let a = Poly::from_ints(&[1, 2, 1]);
        let b = Poly::from_ints(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(a.gcd(&Poly::from_ints(&[-1, 0, 1])), b);
        assert_eq!((&a - &a), Poly::zero());
    }

    #[test]
    fn shifts_and_derivative() {
        let p = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(p.shift_var(&int(1)), Poly::from_ints(&[1, 2, 1]));
        assert_eq!(p.scale_var(&int(2)), Poly::from_ints(&[0, 0, 4]));
        assert_eq!(p.derivative(), Poly::from_ints(&[0, 2]));
        assert_eq!(p.eval(&frac(1, 2)), frac(1, 4));
    }

    #[test]
    fn integer_roots() {
        // (n)(n - 3)(n + 2)
        let p =
            &(&Poly::from_ints(&[0, 1]) * &Poly::from_ints(&[-3, 1])) * &Poly::from_ints(&[2, 1]);
        assert_eq!(p.nonneg_integer_roots(), vec![0, 3]);
        assert!(Poly::from_ints(&[4, 1]).nonneg_integer_roots().is_empty());
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[3, 0, -16]).display_in("t"), "-16*t^2 + 3");
        assert_eq!(Poly::from_ints(&[4, 1]).display_in("n"), "n + 4");
    }
}
