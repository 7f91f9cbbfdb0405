use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact_series::{big_gcd, ExactRational, LaurentPoly, Series};

/// Exponent triple `(i, j, k)` of the monomial `x^i t^j Y^k`.
pub type Exps = (u32, u32, u32);

/// An exact polynomial in `x`, `t` and `Y` over the rationals.
///
/// Used for kernel polynomials, algebraic equations, annihilators and
/// their resultants. Polynomials "in `Y` over `Q[x, t]`" are the same type
/// read through [`TriPoly::y_coeffs`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TriPoly {
    terms: BTreeMap<Exps, ExactRational>,
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::monomial(c, (0, 0, 0))
    }

    pub fn monomial(c: ExactRational, e: Exps) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        TriPoly { terms }
    }

    pub fn x() -> Self {
        Self::monomial(ExactRational::one(), (1, 0, 0))
    }

    pub fn t() -> Self {
        Self::monomial(ExactRational::one(), (0, 1, 0))
    }

    pub fn y() -> Self {
        Self::monomial(ExactRational::one(), (0, 0, 1))
    }

    /// Integer-coefficient constructor, mostly for tests and fixtures.
    pub fn from_terms<I: IntoIterator<Item = (Exps, i64)>>(terms: I) -> Self {
        Self::from_rational_terms(terms.into_iter().map(|(e, c)| (e, ExactRational::from(c))))
    }

    pub fn from_rational_terms<I: IntoIterator<Item = (Exps, ExactRational)>>(terms: I) -> Self {
        let mut out = TriPoly::zero();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    /// The kernel of the simple walk, `x(1 - t(x + x̄)) = x - t - t x^2`.
    pub fn walk_kernel() -> Self {
        Self::from_terms([((1, 0, 0), 1), ((0, 1, 0), -1), ((2, 1, 0), -1)])
    }

    fn add_term(&mut self, e: Exps, c: &ExactRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &ExactRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: Exps) -> ExactRational {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn deg_t(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.2).max()
    }

    pub fn depends_on_x(&self) -> bool {
        self.terms.keys().any(|e| e.0 > 0)
    }

    pub fn depends_on_y(&self) -> bool {
        self.terms.keys().any(|e| e.2 > 0)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return TriPoly::zero();
        }
        TriPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by `x^a t^b Y^c`.
    pub fn shift(&self, (a, b, c): Exps) -> Self {
        TriPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| ((e.0 + a, e.1 + b, e.2 + c), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = TriPoly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients of `Y^0, Y^1, ...` as polynomials in `x, t`.
    pub fn y_coeffs(&self) -> Vec<TriPoly> {
        let Some(d) = self.deg_y() else {
            return Vec::new();
        };
        let mut out = vec![TriPoly::zero(); d as usize + 1];
        for (e, c) in &self.terms {
            out[e.2 as usize].terms.insert((e.0, e.1, 0), c.clone());
        }
        out
    }

    /// Inverse of [`TriPoly::y_coeffs`]; the inputs must be `Y`-free.
    pub fn from_y_coeffs(coeffs: &[TriPoly]) -> Self {
        let mut out = TriPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                debug_assert_eq!(e.2, 0);
                out.add_term((e.0, e.1, e.2 + k as u32), v);
            }
        }
        out
    }

    /// `∂/∂Y`
    pub fn derivative_y(&self) -> Self {
        TriPoly::from_rational_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e.2 > 0)
                .map(|(e, c)| ((e.0, e.1, e.2 - 1), c * ExactRational::from(e.2))),
        )
    }

    /// `P(0, t, Y)`
    pub fn at_x_zero(&self) -> Self {
        TriPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0 == 0)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// The `Y`-free part of the polynomial as a series in `t` with
    /// polynomial-in-`x` coefficients, truncated at `order`.
    pub fn xt_to_series(&self, order: usize) -> Series {
        let mut coeffs: Vec<Vec<(i64, ExactRational)>> = vec![Vec::new(); order + 1];
        for (e, c) in &self.terms {
            assert_eq!(e.2, 0, "xt_to_series on a polynomial involving Y");
            if (e.1 as usize) <= order {
                coeffs[e.1 as usize].push((e.0 as i64, c.clone()));
            }
        }
        Series::new(coeffs.into_iter().map(LaurentPoly::from_terms).collect())
    }

    /// `P(x, t, y)` for a series `y`, truncated at `y`'s order (Horner in `Y`).
    pub fn eval_series(&self, y: &Series) -> Series {
        let order = y.order();
        let coeffs = self.y_coeffs();
        let mut acc = Series::zero(order);
        for c in coeffs.iter().rev() {
            acc = &(&acc * y) + &c.xt_to_series(order);
        }
        acc
    }

    /// Integer-coefficient primitive form: denominators cleared, integer
    /// content removed, and the coefficient of the greatest monomial under
    /// `(k, j, i)` lexicographic order made positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return TriPoly::zero();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            let v = c.numer() * (&lcm / c.denom());
            content = big_gcd(&content, &v);
        }
        let lead = self.leading_term().1;
        let mut factor = ExactRational::new(lcm, content);
        if lead.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Greatest monomial under `(k, j, i)` lexicographic order and its coefficient.
    pub fn leading_term(&self) -> (Exps, &ExactRational) {
        let (e, c) = self
            .terms
            .iter()
            .max_by_key(|(e, _)| (e.2, e.1, e.0))
            .expect("leading term of zero polynomial");
        (*e, c)
    }

    /// True when `self = c * other` for some nonzero rational `c`.
    pub fn is_proportional(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// Divides out the largest monomial `x^a t^b` dividing every term.
    pub fn without_xt_monomial_content(&self) -> Self {
        let a = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let b = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        TriPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((e.0 - a, e.1 - b, e.2), c.clone()))
                .collect(),
        }
    }

    /// Removes the largest power of `Y` dividing the polynomial.
    /// Returns the exponent and the cofactor.
    pub fn split_y_power(&self) -> (u32, TriPoly) {
        let m = self.terms.keys().map(|e| e.2).min().unwrap_or(0);
        let cof = TriPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ((e.0, e.1, e.2 - m), c.clone()))
                .collect(),
        };
        (m, cof)
    }

    /// Pseudo-remainder of `self` by `divisor` as polynomials in `Y` over `Q[x, t]`.
    /// Zero exactly when `divisor` divides `self` over `Q(x, t)` (for `divisor`
    /// of positive `Y`-degree).
    pub fn pseudo_rem_y(&self, divisor: &TriPoly) -> TriPoly {
        let d = divisor.deg_y().expect("division by zero polynomial");
        let dcoeffs = divisor.y_coeffs();
        let lead = &dcoeffs[d as usize];
        let mut rem = self.y_coeffs();
        while rem.len() > d as usize && !rem.is_empty() {
            let top = rem.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = rem.len() - d as usize;
            for c in rem.iter_mut() {
                *c = &*c * lead;
            }
            for (k, dc) in dcoeffs.iter().enumerate().take(d as usize) {
                rem[shift + k] = &rem[shift + k] - &(&top * dc);
            }
        }
        TriPoly::from_y_coeffs(&rem)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        let mut out = TriPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term((ea.0 + eb.0, ea.1 + eb.1, ea.2 + eb.2), &(ca * cb));
            }
        }
        out
    }
}

impl Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        self.scale(&ExactRational::from(-1))
    }
}

impl Add for TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: TriPoly) -> TriPoly {
        &self + &rhs
    }
}

impl Sub for TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: TriPoly) -> TriPoly {
        &self - &rhs
    }
}

impl Mul for TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: TriPoly) -> TriPoly {
        &self * &rhs
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|e| (e.2, e.1, e.0));
        for (n, e) in keys.iter().enumerate() {
            let c = &self.terms[e];
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for (name, p) in [("x", e.0), ("t", e.1), ("Y", e.2)] {
                match p {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{p}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TriPoly({self})")
    }
}

impl Serialize for TriPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter().map(|(e, c)| ([e.0, e.1, e.2], c)))
    }
}

impl<'de> Deserialize<'de> for TriPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<([u32; 3], ExactRational)>::deserialize(deserializer)?;
        Ok(TriPoly::from_rational_terms(
            terms.into_iter().map(|(e, c)| ((e[0], e[1], e[2]), c)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_times_x_identity() {
        // x(1 - t(x + x̄)) expanded
        let k = TriPoly::walk_kernel();
        assert_eq!(k.to_string(), "x - t - x^2*t");
        assert_eq!(k.deg_x(), Some(2));
    }

    #[test]
    fn normalization_is_canonical() {
        let p = TriPoly::from_rational_terms([
            ((0, 0, 0), ExactRational::from_ratio(-1, 2)),
            ((0, 0, 1), ExactRational::from_ratio(1, 2)),
            ((0, 2, 2), ExactRational::from_ratio(-1, 2)),
        ]);
        let n = p.normalized();
        assert_eq!(
            n,
            TriPoly::from_terms([((0, 0, 0), 1), ((0, 0, 1), -1), ((0, 2, 2), 1)])
        );
        assert!(p.is_proportional(&n.scale(&ExactRational::from(-7))));
    }

    #[test]
    fn pseudo_remainder_detects_divisibility() {
        let a = TriPoly::from_terms([((0, 0, 1), 1), ((1, 0, 0), -1)]); // Y - x
        let b = TriPoly::from_terms([((0, 1, 1), 1), ((0, 0, 0), 1)]); // tY + 1
        let prod = &a * &b;
        assert!(prod.pseudo_rem_y(&b).is_zero());
        assert!(prod.pseudo_rem_y(&a).is_zero());
        assert!(!(&prod + &TriPoly::one()).pseudo_rem_y(&b).is_zero());
    }

    #[test]
    fn eval_series_geometric() {
        // (1 - t) Y - 1 at Y = 1/(1-t)
        let p = TriPoly::from_terms([((0, 0, 1), 1), ((0, 1, 1), -1), ((0, 0, 0), -1)]);
        let y = Series::from_rationals((0..6).map(|_| ExactRational::one()));
        assert!(p.eval_series(&y).is_zero());
    }

    #[test]
    fn split_and_derivative() {
        let p = TriPoly::from_terms([((0, 0, 1), 1), ((0, 2, 3), -1)]);
        let (m, cof) = p.split_y_power();
        assert_eq!(m, 1);
        assert_eq!(cof, TriPoly::from_terms([((0, 0, 0), 1), ((0, 2, 2), -1)]));
        assert_eq!(
            p.derivative_y(),
            TriPoly::from_terms([((0, 0, 0), 1), ((0, 2, 2), -3)])
        );
    }

    #[test]
    fn json_form() {
        let p = TriPoly::from_terms([((1, 0, 0), 1), ((0, 1, 2), -3)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[[0,1,2],"-3"],[[1,0,0],"1"]]"#);
        assert_eq!(serde_json::from_str::<TriPoly>(&s).unwrap(), p);
    }
}
