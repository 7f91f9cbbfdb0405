use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ExactRational, LaurentPoly, SeriesError};

/// A power series in `t` known modulo `t^(order+1)`, with Laurent-polynomial
/// coefficients in `x`.
///
/// Binary operations truncate to the smaller of the two orders.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<LaurentPoly>,
}

impl Series {
    /// `coeffs[n]` is the coefficient of `t^n`; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty coefficient vector.
    pub fn new(coeffs: Vec<LaurentPoly>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the t^0 coefficient"
        );
        Series { coeffs }
    }

    pub fn from_rationals<I: IntoIterator<Item = ExactRational>>(coeffs: I) -> Self {
        Self::new(coeffs.into_iter().map(LaurentPoly::constant).collect())
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![LaurentPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(LaurentPoly::one(), order)
    }

    pub fn constant(c: LaurentPoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t` (zero when `order` is 0).
    pub fn t(order: usize) -> Self {
        Self::monomial_t(LaurentPoly::one(), 1, order)
    }

    /// `c * t^n` at the given order.
    pub fn monomial_t(c: LaurentPoly, n: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[t^n]`; panics when `n` exceeds the order.
    pub fn coeff(&self, n: usize) -> &LaurentPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<LaurentPoly> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    /// Reduces to a lower order. Panics if `order` exceeds the current one.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise the truncation order");
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Pads with zeros (or truncates) to `order`. Padding does not make the
    /// new coefficients known; callers use this only as a Newton work buffer.
    pub(crate) fn padded(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, LaurentPoly::zero());
        Series { coeffs }
    }

    /// Least `n` with `[t^n] != 0`, or `None` when every stored coefficient
    /// vanishes (the series is zero to its order).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_x_free(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_constant)
    }

    /// Coefficients as rationals when every coefficient is x-free.
    pub fn to_rationals(&self) -> Option<Vec<ExactRational>> {
        self.coeffs
            .iter()
            .map(|c| c.is_constant().then(|| c.coeff(0)))
            .collect()
    }

    /// The x-free series `[x^e]` of this series.
    pub fn x_coeff(&self, e: i64) -> Series {
        Series::from_rationals(self.coeffs.iter().map(|c| c.coeff(e)))
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        self.map_coeffs(|p| p.scale(c))
    }

    /// Multiplies every coefficient by the Laurent polynomial `p`.
    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        self.map_coeffs(|c| c * p)
    }

    /// Multiplies by `t^k`, keeping the order.
    pub fn mul_t_pow(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![LaurentPoly::zero(); (k).min(n + 1)];
        coeffs.extend(self.coeffs.iter().take((n + 1).saturating_sub(k)).cloned());
        Series { coeffs }
    }

    /// Divides by `t^k`; the order drops by `k`. `None` when one of the
    /// first `k` coefficients is nonzero or `k` exceeds the order.
    pub fn div_t_pow(&self, k: usize) -> Option<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Series {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Keeps only the non-negative powers of `x` in every coefficient.
    pub fn nonneg_part(&self) -> Self {
        self.map_coeffs(LaurentPoly::nonneg_part)
    }

    /// Substitutes `x -> 1/x` coefficientwise.
    pub fn reflect_x(&self) -> Self {
        self.map_coeffs(LaurentPoly::reflect)
    }

    /// Multiplicative inverse modulo `t^(order+1)`.
    ///
    /// The constant term must be a single nonzero monomial `c x^k`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let Some((c, k)) = self.coeffs[0].as_monomial() else {
            return Err(SeriesError::NotInvertible(self.coeffs[0].to_string()));
        };
        let head_inv = LaurentPoly::monomial(c.recip(), -k);
        let neg_head_inv = -&head_inv;
        let n = self.order();
        let mut out: Vec<LaurentPoly> = Vec::with_capacity(n + 1);
        out.push(head_inv);
        for m in 1..=n {
            let mut acc = LaurentPoly::zero();
            for j in 1..=m {
                let a = &self.coeffs[j];
                if a.is_zero() || out[m - j].is_zero() {
                    continue;
                }
                acc = &acc + &(a * &out[m - j]);
            }
            out.push(&neg_head_inv * &acc);
        }
        Ok(Series { coeffs: out })
    }

    /// Square root with constant term 1, by Newton iteration on `Y^2 - A`.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::BadConstantTerm(self.coeffs[0].to_string()));
        }
        let target = self.order();
        let half = ExactRational::from_ratio(1, 2);
        let mut y = Series::one(0);
        let mut prec = 0;
        while prec < target {
            prec = (2 * prec + 1).min(target);
            let y_ext = y.padded(prec);
            let a = self.truncate(prec);
            let quotient = &a * &y_ext.inverse()?;
            y = (&y_ext + &quotient).scale(&half);
        }
        Ok(y)
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Series::one(self.order());
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

    fn zip_with(&self, rhs: &Self, f: impl Fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    fn cauchy(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![LaurentPoly::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Series { coeffs }
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.cauchy(rhs)
    }
}

impl Add for Series {
    type Output = Series;
    fn add(self, rhs: Series) -> Series {
        &self + &rhs
    }
}

impl Sub for Series {
    type Output = Series;
    fn sub(self, rhs: Series) -> Series {
        &self - &rhs
    }
}

impl Mul for Series {
    type Output = Series;
    fn mul(self, rhs: Series) -> Series {
        &self * &rhs
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

fn fmt_t_term(f: &mut fmt::Formatter<'_>, first: bool, c: &LaurentPoly, n: i64) -> fmt::Result {
    if !first {
        write!(f, " + ")?;
    }
    let tpow = match n {
        0 => String::new(),
        1 => "t".into(),
        _ => format!("t^{n}"),
    };
    if tpow.is_empty() {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{tpow}")
    } else if c.num_terms() == 1 && !c.coeff(c.min_deg().unwrap()).is_negative() {
        write!(f, "{c}*{tpow}")
    } else {
        write!(f, "({c})*{tpow}")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            fmt_t_term(f, first, c, n as i64)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<LaurentPoly>,
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom("coefficient count must be order + 1"));
        }
        Ok(Series::new(repr.coeffs))
    }
}

/// A Laurent series in `t` known through `t^order`, starting at `t^valuation`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    valuation: i64,
    coeffs: Vec<LaurentPoly>,
}

impl LaurentSeries {
    /// `t^shift * s`, normalized so the stored leading coefficient is nonzero.
    pub fn from_series(s: &Series, shift: i64) -> Self {
        let order = s.order() as i64 + shift;
        match s.valuation() {
            Some(v) => LaurentSeries {
                valuation: v as i64 + shift,
                coeffs: s.coeffs()[v..].to_vec(),
            },
            None => LaurentSeries {
                valuation: order,
                coeffs: vec![LaurentPoly::zero()],
            },
        }
    }

    /// `c * t^exp` known through `t^order`.
    pub fn monomial_t(c: LaurentPoly, exp: i64, order: i64) -> Self {
        assert!(exp <= order);
        let mut coeffs = vec![LaurentPoly::zero(); (order - exp + 1) as usize];
        coeffs[0] = c;
        LaurentSeries {
            valuation: exp,
            coeffs,
        }
        .normalized()
    }

    fn normalized(self) -> Self {
        let order = self.order();
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(0) => self,
            Some(k) => LaurentSeries {
                valuation: self.valuation + k as i64,
                coeffs: self.coeffs[k..].to_vec(),
            },
            None => LaurentSeries {
                valuation: order,
                coeffs: vec![LaurentPoly::zero()],
            },
        }
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn order(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::is_zero)
    }

    /// `[t^n]`; zero below the valuation. Panics above the order.
    pub fn coeff(&self, n: i64) -> LaurentPoly {
        assert!(n <= self.order(), "coefficient beyond known order");
        if n < self.valuation {
            LaurentPoly::zero()
        } else {
            self.coeffs[(n - self.valuation) as usize].clone()
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// The power series obtained when the valuation is non-negative.
    pub fn to_series(&self) -> Option<Series> {
        if self.valuation < 0 && !self.is_zero() {
            return None;
        }
        if self.order() < 0 {
            return None;
        }
        let order = self.order() as usize;
        let mut coeffs = vec![LaurentPoly::zero(); order + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = self.valuation + k as i64;
            if e >= 0 {
                coeffs[e as usize] = c.clone();
            }
        }
        Some(Series::new(coeffs))
    }

    /// Truncates to `order` (at most the current order).
    pub fn truncate(&self, order: i64) -> Self {
        assert!(order <= self.order());
        if order < self.valuation {
            return LaurentSeries {
                valuation: order,
                coeffs: vec![LaurentPoly::zero()],
            };
        }
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs[..=(order - self.valuation) as usize].to_vec(),
        }
    }

    /// Inverse; the leading coefficient must be a nonzero monomial in `x`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let unit = Series::new(self.coeffs.clone());
        let inv = unit.inverse()?;
        Ok(LaurentSeries {
            valuation: -self.valuation,
            coeffs: inv.into_coeffs(),
        })
    }

    fn body(&self) -> Series {
        Series::new(self.coeffs.clone())
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let order = self.order().min(rhs.order());
        let low = self.valuation.min(rhs.valuation).min(order);
        let coeffs = (low..=order).map(|n| {
            let a = if n <= self.order() {
                self.coeff(n)
            } else {
                LaurentPoly::zero()
            };
            let b = if n <= rhs.order() {
                rhs.coeff(n)
            } else {
                LaurentPoly::zero()
            };
            &a + &b
        });
        LaurentSeries {
            valuation: low,
            coeffs: coeffs.collect(),
        }
        .normalized()
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        let valuation = self.valuation + rhs.valuation;
        // Relative precision is the smaller of the two.
        let rel = (self.coeffs.len()).min(rhs.coeffs.len()) - 1;
        let a = self.body().truncate(rel);
        let b = rhs.body().truncate(rel);
        LaurentSeries {
            valuation,
            coeffs: (&a * &b).into_coeffs(),
        }
        .normalized()
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            fmt_t_term(f, first, c, self.valuation + k as i64)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries({self})")
    }
}

impl Serialize for LaurentSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            valuation: i64,
            order: i64,
            coeffs: &'a [LaurentPoly],
        }
        Repr {
            valuation: self.valuation,
            order: self.order(),
            coeffs: &self.coeffs,
        }
        .serialize(serializer)
    }
}
