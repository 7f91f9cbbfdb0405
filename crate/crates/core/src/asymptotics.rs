//! Formal solutions `phi^n n^alpha (1 + c_1/n + c_2/n^2 + ...)` of
//! P-recurrences, and numerical estimation of the constant factor.
//!
//! Only the case without Gamma-factors, ramification, exponential parts
//! or logarithms is handled; everything else is a named error.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dfinite::{PRec, Poly};
use crate::exact_series::{rational_binomial, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AsympError {
    #[error("characteristic polynomial has a non-rational factor {0}")]
    IrrationalRoot(String),
    #[error("characteristic root {0} is repeated")]
    RepeatedRoot(String),
    #[error("no admissible exponential growth (ramified or Gamma-factor case)")]
    RamifiedCase,
    #[error("characteristic coefficients too large for the rational-root test")]
    CoefficientTooLarge,
    #[error("phi must be positive")]
    NonPositivePhi,
    #[error("index {0} is outside the supplied values")]
    IndexOutOfRange(usize),
    #[error("the expansion vanishes at n = {0}")]
    DegenerateAt(usize),
    #[error("no evaluation points given")]
    NoPoints,
}

/// `phi^n n^alpha (1 + sum_k c_k n^-k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsympExpansion {
    pub phi: ExactRational,
    pub alpha: ExactRational,
    pub c: Vec<ExactRational>,
}

impl AsympExpansion {
    pub fn depth(&self) -> usize {
        self.c.len()
    }

    /// `1 + sum_k c_k n^-k` at an exact `n`.
    pub fn correction_at(&self, n: &ExactRational) -> ExactRational {
        let inv = n.recip();
        let mut acc = ExactRational::zero();
        for c in self.c.iter().rev() {
            acc = (acc + c) * &inv;
        }
        acc + ExactRational::one()
    }
}

impl fmt::Display for AsympExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phi.is_integer() && self.phi.is_positive() {
            write!(f, "{}^n", self.phi)?;
        } else {
            write!(f, "({})^n", self.phi)?;
        }
        if !self.alpha.is_zero() {
            write!(f, " * n^({})", self.alpha)?;
        }
        write!(f, " * (1")?;
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, " {sign} {}*n^-{}", c.abs(), k + 1)?;
        }
        write!(f, ")")
    }
}

/// Truncated power series in `u = 1/n`.
fn mul_trunc(a: &[ExactRational], b: &[ExactRational], m: usize) -> Vec<ExactRational> {
    let mut out = vec![ExactRational::zero(); m + 1];
    for (i, x) in a.iter().enumerate().take(m + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(m + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(1 + s u)^beta` through `u^m`.
fn binomial_series(beta: &ExactRational, s: i64, m: usize) -> Vec<ExactRational> {
    let s = ExactRational::from(s);
    let mut pw = ExactRational::one();
    (0..=m)
        .map(|l| {
            let v = rational_binomial(beta, l) * &pw;
            pw = &pw * &s;
            v
        })
        .collect()
}

fn max_degree(rec: &PRec) -> usize {
    rec.coeffs
        .iter()
        .filter_map(Poly::degree)
        .max()
        .unwrap_or(0)
}

/// Coefficients `e_0, ..., e_m` of `u^0..u^m` in
/// `phi^-n n^(-alpha-D) sum_j q_j(n) f(n + r - j)` for the ansatz `f`.
pub fn formal_residual(
    rec: &PRec,
    phi: &ExactRational,
    alpha: &ExactRational,
    c: &[ExactRational],
    m: usize,
) -> Vec<ExactRational> {
    let d = max_degree(rec);
    let r = rec.order();
    let mut total = vec![ExactRational::zero(); m + 1];
    for (j, q) in rec.coeffs.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let s = (r - j) as i64;
        // q(n) / n^D as a polynomial in u
        let mut qu = vec![ExactRational::zero(); m + 1];
        for (i, qc) in q.coeffs().iter().enumerate() {
            if d - i <= m {
                qu[d - i] = qc.clone();
            }
        }
        // S(n + s) = sum_k c_k u^k (1 + s u)^-k
        let mut shifted = vec![ExactRational::zero(); m + 1];
        shifted[0] = ExactRational::one();
        for (k, ck) in c.iter().enumerate() {
            let k = k + 1;
            if k > m || ck.is_zero() {
                continue;
            }
            let tail = binomial_series(&ExactRational::from(-(k as i64)), s, m - k);
            for (l, v) in tail.iter().enumerate() {
                shifted[k + l] += ck * v;
            }
        }
        let growth = binomial_series(alpha, s, m);
        let term = mul_trunc(&mul_trunc(&qu, &growth, m), &shifted, m);
        let scale = phi.pow(s);
        for (t, v) in total.iter_mut().zip(term) {
            *t += v * &scale;
        }
    }
    total
}

/// `chi(phi) = sum_j lc_D(q_j) phi^(r-j)`, lowest degree first.
pub fn characteristic_polynomial(rec: &PRec) -> Poly {
    let d = max_degree(rec);
    let r = rec.order();
    let mut coeffs = vec![ExactRational::zero(); r + 1];
    for (j, q) in rec.coeffs.iter().enumerate() {
        coeffs[r - j] = q.coeff(d);
    }
    Poly::new(coeffs)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, AsympError> {
    let n = n
        .abs()
        .to_u64()
        .filter(|&v| v <= 1 << 40)
        .ok_or(AsympError::CoefficientTooLarge)?;
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(BigInt::from(k));
            if k * k != n {
                out.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    Ok(out)
}

/// Nonzero rational roots with multiplicities; errors if a non-rational
/// factor remains.
fn nonzero_rational_roots(chi: &Poly) -> Result<Vec<(ExactRational, usize)>, AsympError> {
    let mut p = chi.clone();
    while p.degree().is_some_and(|d| d > 0) && p.coeff(0).is_zero() {
        p = p.div_rem(&Poly::var()).0;
    }
    let mut roots: Vec<(ExactRational, usize)> = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return Ok(roots);
    }
    let s = Poly::primitive_factor(&[&p]);
    let ip = p.scale(&s);
    let a0 = ip.coeff(0).numer().clone();
    let an = ip.lead().unwrap().numer().clone();
    let mut candidates = Vec::new();
    for num in divisors(&a0)? {
        for den in divisors(&an)? {
            for sign in [1, -1] {
                candidates.push(ExactRational::new(&num * sign, den.clone()));
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    for cand in candidates {
        let mut mult = 0;
        while p.degree().is_some_and(|d| d > 0) && p.eval(&cand).is_zero() {
            p = p
                .div_rem(&Poly::new(vec![-cand.clone(), ExactRational::one()]))
                .0;
            mult += 1;
        }
        if mult > 0 {
            roots.push((cand, mult));
        }
    }
    if p.degree().is_some_and(|d| d > 0) {
        return Err(AsympError::IrrationalRoot(p.monic().display_in("phi")));
    }
    Ok(roots)
}

/// Solves `e(v) = 0` for the affine function `v -> e(v)`.
fn solve_affine(e: impl Fn(&ExactRational) -> ExactRational) -> Option<ExactRational> {
    let e0 = e(&ExactRational::zero());
    let slope = e(&ExactRational::one()) - &e0;
    if slope.is_zero() {
        return None;
    }
    Some(-e0 / slope)
}

/// One expansion per nonzero rational characteristic root, each with
/// `depth` correction coefficients.
pub fn poincare_expansion(rec: &PRec, depth: usize) -> Result<Vec<AsympExpansion>, AsympError> {
    let chi = characteristic_polynomial(rec);
    let roots = nonzero_rational_roots(&chi)?;
    if roots.is_empty() {
        return Err(AsympError::RamifiedCase);
    }
    if let Some((phi, _)) = roots.iter().find(|(_, m)| *m > 1) {
        return Err(AsympError::RepeatedRoot(phi.to_string()));
    }
    let mut out = Vec::new();
    for (phi, _) in roots {
        let alpha = solve_affine(|a| formal_residual(rec, &phi, a, &[], 1)[1].clone())
            .ok_or(AsympError::RamifiedCase)?;
        let mut c: Vec<ExactRational> = Vec::with_capacity(depth);
        for k in 1..=depth {
            let ck = solve_affine(|v| {
                let mut trial = c.clone();
                trial.push(v.clone());
                formal_residual(rec, &phi, &alpha, &trial, k + 1)[k + 1].clone()
            })
            .ok_or(AsympError::RamifiedCase)?;
            c.push(ck);
        }
        out.push(AsympExpansion { phi, alpha, c });
    }
    Ok(out)
}

/// A decimal number `scaled / 10^digits`, truncated toward zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decimal {
    pub scaled: BigInt,
    pub digits: u32,
}

impl Decimal {
    pub fn from_rational(x: &ExactRational, digits: u32) -> Self {
        let scale = BigInt::from(10).pow(digits);
        let v = x.numer() * scale / x.denom();
        Decimal { scaled: v, digits }
    }

    pub fn abs_diff(&self, other: &Decimal) -> Decimal {
        assert_eq!(self.digits, other.digits);
        Decimal {
            scaled: (&self.scaled - &other.scaled).abs(),
            digits: self.digits,
        }
    }

    pub fn to_rational(&self) -> ExactRational {
        ExactRational::new(self.scaled.clone(), BigInt::from(10).pow(self.digits))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64()
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.scaled.is_negative() { "-" } else { "" };
        let s = self.scaled.abs().to_string();
        let d = self.digits as usize;
        if d == 0 {
            return write!(f, "{sign}{s}");
        }
        let padded = format!("{:0>width$}", s, width = d + 1);
        let (int, frac) = padded.split_at(padded.len() - d);
        write!(f, "{sign}{int}.{frac}")
    }
}

impl Serialize for Decimal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Result of comparing data against an expansion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstantEstimate {
    /// The ratio at the last supplied point.
    pub estimate: Decimal,
    /// Max minus min of the ratios over all points.
    pub spread: Decimal,
    pub ratios: Vec<(usize, Decimal)>,
}

pub const DEFAULT_DIGITS: u32 = 50;

/// `x^(1/q)` for positive rational `x`, truncated to `digits` decimals.
fn rational_root(x: &ExactRational, q: u32, digits: u32) -> BigInt {
    let scale = BigInt::from(10).pow(digits * q);
    let v = x.numer() * scale / x.denom();
    v.nth_root(q)
}

/// `values[n] / (phi^n n^alpha (1 + sum c_k n^-k))` at each point, exactly
/// up to a single final decimal truncation.
pub fn estimate_constant(
    values: &[ExactRational],
    e: &AsympExpansion,
    points: &[usize],
    digits: u32,
) -> Result<ConstantEstimate, AsympError> {
    if !e.phi.is_positive() {
        return Err(AsympError::NonPositivePhi);
    }
    if points.is_empty() {
        return Err(AsympError::NoPoints);
    }
    let p = e.alpha.numer().clone();
    let q: u32 = e
        .alpha
        .denom()
        .to_u32()
        .expect("alpha denominator fits in u32");
    let mut ratios = Vec::with_capacity(points.len());
    for &n in points {
        let v = values.get(n).ok_or(AsympError::IndexOutOfRange(n))?;
        if n == 0 && !e.alpha.is_zero() {
            return Err(AsympError::DegenerateAt(0));
        }
        let nn = ExactRational::from(n);
        let corr = if n == 0 {
            ExactRational::one()
        } else {
            e.correction_at(&nn)
        };
        if corr.is_zero() {
            return Err(AsympError::DegenerateAt(n));
        }
        // base = values[n] / (phi^n S(n)); ratio = base * n^(-p/q)
        let base = v / (e.phi.pow(n as i64) * corr);
        let negative = base.is_negative();
        let mut power = base.abs().pow(q as i64);
        if n > 0 {
            let np = ExactRational::from(n).pow(-p.to_i64().expect("alpha numerator fits in i64"));
            power *= np;
        }
        let mut scaled = rational_root(&power, q, digits);
        if negative {
            scaled = -scaled;
        }
        ratios.push((n, Decimal { scaled, digits }));
    }
    let max = ratios.iter().map(|(_, d)| &d.scaled).max().unwrap().clone();
    let min = ratios.iter().map(|(_, d)| &d.scaled).min().unwrap().clone();
    Ok(ConstantEstimate {
        estimate: ratios.last().unwrap().1.clone(),
        spread: Decimal {
            scaled: max - min,
            digits,
        },
        ratios,
    })
}
