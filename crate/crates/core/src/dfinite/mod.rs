//! From an algebraic equation to a linear ODE, from the ODE to a
//! P-recurrence, and fast exact evaluation of the resulting sequence.

mod poly;
mod ratfunc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact_series::ExactRational;
use crate::guessing::TriPoly;
pub use poly::Poly;
pub use ratfunc::RatFunc;
use ratfunc::{
    rf_nullspace, rp_add, rp_derivative_t, rp_derivative_y, rp_divrem, rp_ext_gcd, rp_mul, rp_trim,
    RfPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DFiniteError {
    #[error("the polynomial involves x; only P(t, Y) is supported")]
    XDependent,
    #[error("the polynomial has Y-degree 0")]
    ConstantInY,
    #[error("P and dP/dY have a common factor")]
    NotSquarefree,
    #[error("no linear dependence among the derivatives")]
    DependenceNotFound,
    #[error("the ODE is inhomogeneous")]
    Inhomogeneous,
    #[error("the operator collapses to a single shift")]
    DegenerateRecurrence,
    #[error("leading coefficient vanishes at n = {0}")]
    LeadingCoeffVanishes(i64),
    #[error("denominator vanishes at k = {0}")]
    ZeroDenominator(i64),
    #[error("expected {expected} initial values, got {got}")]
    InitLength { expected: usize, got: usize },
    #[error("expected a first-order recurrence, got order {0}")]
    NotFirstOrder(usize),
    #[error("the recurrence links indices of different parity")]
    OddShift,
}

/// `p_0 F^(d) + p_1 F^(d-1) + ... + p_d F = g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinODE {
    pub coeffs: Vec<Poly>,
    pub inhomogeneous: Poly,
}

/// `q_0(n) f(n+r) + q_1(n) f(n+r-1) + ... + q_r(n) f(n) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PRec {
    pub coeffs: Vec<Poly>,
}

/// Scale that makes a list of polynomials integral and primitive, with the
/// sign chosen by `sign_of`.
fn primitive_scale(polys: &[&Poly], sign_of: Option<&ExactRational>) -> ExactRational {
    let mut f = Poly::primitive_factor(polys);
    if sign_of.is_some_and(|c| c.is_negative()) {
        f = -f;
    }
    f
}

impl LinODE {
    pub fn new(coeffs: Vec<Poly>, inhomogeneous: Poly) -> Self {
        let mut coeffs = coeffs;
        // Drop zero coefficients of the highest derivatives.
        while coeffs.len() > 1 && coeffs[0].is_zero() {
            coeffs.remove(0);
        }
        LinODE {
            coeffs,
            inhomogeneous,
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_homogeneous(&self) -> bool {
        self.inhomogeneous.is_zero()
    }

    /// Coefficients by derivative order: entry `b` multiplies `F^(b)`.
    fn by_derivative(&self) -> Vec<Poly> {
        self.coeffs.iter().rev().cloned().collect()
    }

    fn from_derivative_list(ops: Vec<Poly>, inhomogeneous: Poly) -> Self {
        LinODE::new(ops.into_iter().rev().collect(), inhomogeneous)
    }

    /// Divides out the common polynomial factor and integer content; the
    /// lowest-degree term of `p_0` is made positive.
    pub fn normalized(&self) -> LinODE {
        let mut g = Poly::zero();
        for p in self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.inhomogeneous))
        {
            g = g.gcd(p);
        }
        let divide = |p: &Poly| {
            if g.is_zero() {
                p.clone()
            } else {
                p.div_rem(&g).0
            }
        };
        let coeffs: Vec<Poly> = self.coeffs.iter().map(divide).collect();
        let inh = divide(&self.inhomogeneous);
        let all: Vec<&Poly> = coeffs.iter().chain(std::iter::once(&inh)).collect();
        let s = primitive_scale(&all, coeffs[0].trailing());
        LinODE {
            coeffs: coeffs.iter().map(|p| p.scale(&s)).collect(),
            inhomogeneous: inh.scale(&s),
        }
    }

    /// `L(F) - g` for a power series given by its coefficients; entries
    /// beyond `len - d` are not determined and are dropped.
    pub fn apply(&self, f: &[ExactRational]) -> Vec<ExactRational> {
        let ops = self.by_derivative();
        let len = f.len().saturating_sub(self.order());
        let mut out = vec![ExactRational::zero(); len];
        for (b, p) in ops.iter().enumerate() {
            // F^(b) has coefficient (m+b)!/m! f_{m+b} at t^m.
            let deriv: Vec<ExactRational> = (0..len)
                .map(|m| {
                    let mut c = f[m + b].clone();
                    for k in 1..=b {
                        c *= ExactRational::from(m + k);
                    }
                    c
                })
                .collect();
            for (a, pc) in p.coeffs().iter().enumerate() {
                for m in 0..len.saturating_sub(a) {
                    out[m + a] += pc * &deriv[m];
                }
            }
        }
        for (k, c) in self.inhomogeneous.coeffs().iter().enumerate() {
            if k < len {
                out[k] -= c;
            }
        }
        out
    }

    pub fn display(&self) -> String {
        let d = self.order();
        let mut parts = Vec::new();
        for (k, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let deriv = d - k;
            let f = match deriv {
                0 => "F".to_string(),
                1..=3 => format!("F{}", "'".repeat(deriv)),
                _ => format!("F^({deriv})"),
            };
            parts.push(format!("({})*{f}", p.display_in("t")));
        }
        format!(
            "{} = {}",
            parts.join(" + "),
            self.inhomogeneous.display_in("t")
        )
    }
}

impl PRec {
    pub fn new(coeffs: Vec<Poly>) -> Self {
        PRec { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Removes the common polynomial factor except for linear factors
    /// `(n - k)` with `k` a non-negative integer (dividing those out would
    /// change the relation at `n = k`), clears content, and makes the leading
    /// coefficient of `q_0` positive.
    pub fn normalized(&self) -> PRec {
        let mut g = Poly::zero();
        for p in &self.coeffs {
            g = g.gcd(p);
        }
        let mut removable = g.clone();
        for k in g.nonneg_integer_roots() {
            removable = removable.div_rem(&Poly::from_ints(&[-k, 1])).0;
        }
        let coeffs: Vec<Poly> = if removable.degree().is_some_and(|d| d > 0) {
            self.coeffs
                .iter()
                .map(|p| p.div_rem(&removable).0)
                .collect()
        } else {
            self.coeffs.clone()
        };
        let refs: Vec<&Poly> = coeffs.iter().collect();
        let s = primitive_scale(&refs, coeffs[0].lead());
        PRec {
            coeffs: coeffs.iter().map(|p| p.scale(&s)).collect(),
        }
    }

    /// Residual of the recurrence at index `n` for a sequence.
    pub fn residual(&self, f: &[ExactRational], n: usize) -> ExactRational {
        let r = self.order();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, q)| q.eval_int(n as i64) * &f[n + r - j])
            .sum()
    }

    /// The relation satisfied by `g(m) = f(2m)`, when only even shifts occur.
    pub fn even_index(&self) -> Result<PRec, DFiniteError> {
        let r = self.order();
        if r % 2 == 1
            || self
                .coeffs
                .iter()
                .enumerate()
                .any(|(j, q)| j % 2 == 1 && !q.is_zero())
        {
            return Err(DFiniteError::OddShift);
        }
        let two = ExactRational::from(2);
        Ok(PRec {
            coeffs: self
                .coeffs
                .iter()
                .step_by(2)
                .map(|q| q.scale_var(&two))
                .collect(),
        })
    }

    pub fn display(&self) -> String {
        let r = self.order();
        let mut parts = Vec::new();
        for (j, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let shift = r - j;
            let f = if shift == 0 {
                "f(n)".to_string()
            } else {
                format!("f(n+{shift})")
            };
            parts.push(format!("({})*{f}", q.display_in("n")));
        }
        format!("{} = 0", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct LinOdeRepr {
    order: usize,
    coeffs: Vec<Poly>,
    inhomogeneous: Poly,
}

impl Serialize for LinODE {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LinOdeRepr {
            order: self.order(),
            coeffs: self.coeffs.clone(),
            inhomogeneous: self.inhomogeneous.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinODE {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = LinOdeRepr::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(serde::de::Error::custom(
                "coefficient count must be order + 1",
            ));
        }
        Ok(LinODE {
            coeffs: repr.coeffs,
            inhomogeneous: repr.inhomogeneous,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct PRecRepr {
    order: usize,
    coeffs: Vec<Poly>,
}

impl Serialize for PRec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PRecRepr {
            order: self.order(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PRec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PRecRepr::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.order + 1 || repr.order == 0 {
            return Err(serde::de::Error::custom(
                "need order >= 1 and order + 1 coefficients",
            ));
        }
        Ok(PRec {
            coeffs: repr.coeffs,
        })
    }
}

/// `P(t, Y)` as a polynomial in `Y` over `Q(t)`.
fn to_rf_poly(p: &TriPoly) -> Result<RfPoly, DFiniteError> {
    if p.depends_on_x() {
        return Err(DFiniteError::XDependent);
    }
    let mut coeffs: Vec<Vec<ExactRational>> = Vec::new();
    for (&(_, j, k), c) in p.terms() {
        let (j, k) = (j as usize, k as usize);
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Vec::new());
        }
        if coeffs[k].len() <= j {
            coeffs[k].resize(j + 1, ExactRational::zero());
        }
        coeffs[k][j] = c.clone();
    }
    Ok(rp_trim(
        coeffs
            .into_iter()
            .map(|c| RatFunc::from_poly(Poly::new(c)))
            .collect(),
    ))
}

/// The first linear relation `p_0 F^(d) + ... + p_d F = g` satisfied by a
/// root `F` of `P0(t, Y)`, before homogenization.
pub fn algebraic_relation(p0: &TriPoly) -> Result<LinODE, DFiniteError> {
    let p = to_rf_poly(p0)?;
    let deg = p.len().saturating_sub(1);
    if deg == 0 {
        return Err(DFiniteError::ConstantInY);
    }
    let py = rp_derivative_y(&p);
    let (g, s) = rp_ext_gcd(&py, &p);
    if g.len() != 1 {
        return Err(DFiniteError::NotSquarefree);
    }
    let inv_py = rp_mul(&s, &vec![g[0].inv().expect("nonzero gcd")]);
    // Y' = -P_t / P_Y mod P
    let pt = rp_derivative_t(&p);
    let neg_pt: RfPoly = pt.iter().map(RatFunc::neg).collect();
    let y_prime = rp_divrem(&rp_mul(&neg_pt, &inv_py), &p).1;
    let derive = |a: &RfPoly| -> RfPoly {
        let da = rp_add(&rp_derivative_t(a), &rp_mul(&rp_derivative_y(a), &y_prime));
        rp_divrem(&da, &p).1
    };
    let mut columns: Vec<RfPoly> =
        vec![vec![RatFunc::one()], vec![RatFunc::zero(), RatFunc::one()]];
    columns[1] = rp_divrem(&columns[1], &p).1;
    // columns: 1, Y, Y', Y'', ...; at most deg + 1 derivatives are needed.
    for _ in 0..=deg + 1 {
        let ns = rf_nullspace(&columns, deg);
        if let Some(v) = ns.into_iter().find(|v| !v.last().unwrap().is_zero()) {
            return Ok(relation_from_vector(&v));
        }
        let next = derive(columns.last().unwrap());
        columns.push(next);
    }
    Err(DFiniteError::DependenceNotFound)
}

/// `v = (c_1, c_F, c_F', ...)` with `c_1 + sum c_F^(b) F^(b) = 0`.
fn relation_from_vector(v: &[RatFunc]) -> LinODE {
    let mut den = Poly::one();
    for c in v {
        den = &den * &c.den().div_rem(&den.gcd(c.den())).0;
    }
    let clear = |c: &RatFunc| -> Poly { &c.num().clone() * &den.div_rem(c.den()).0 };
    let ops: Vec<Poly> = v[1..].iter().map(clear).collect();
    let inh = -&clear(&v[0]);
    LinODE::from_derivative_list(ops, inh).normalized()
}

/// A homogeneous linear ODE for a root of `P0(t, Y)`. If the first
/// relation `L(F) = g` is inhomogeneous, it is replaced by
/// `g L(F)' - g' L(F) = 0`.
pub fn algebraic_to_ode(p0: &TriPoly) -> Result<LinODE, DFiniteError> {
    let rel = algebraic_relation(p0)?;
    if rel.is_homogeneous() {
        return Ok(rel);
    }
    Ok(homogenize(&rel))
}

pub fn homogenize(rel: &LinODE) -> LinODE {
    let g = &rel.inhomogeneous;
    let dg = g.derivative();
    let ops = rel.by_derivative();
    let mut out = vec![Poly::zero(); ops.len() + 1];
    for (b, p) in ops.iter().enumerate() {
        // g (p F^(b))' - g' p F^(b)
        out[b] = &out[b] + &(&(g * &p.derivative()) - &(&dg * p));
        out[b + 1] = &out[b + 1] + &(g * p);
    }
    LinODE::from_derivative_list(out, Poly::zero()).normalized()
}

/// Falling factorial `(n + s)(n + s - 1)...(n + s - b + 1)` as a polynomial in `n`.
fn falling(s: i64, b: usize) -> Poly {
    let mut p = Poly::one();
    for k in 0..b as i64 {
        p = &p * &Poly::from_ints(&[s - k, 1]);
    }
    p
}

/// The recurrence on coefficients induced by a homogeneous ODE, via
/// `[t^n] t^a F^(b) = (n-a+b)(n-a+b-1)...(n-a+1) f(n-a+b)`.
pub fn ode_to_rec(ode: &LinODE) -> Result<PRec, DFiniteError> {
    if !ode.is_homogeneous() {
        return Err(DFiniteError::Inhomogeneous);
    }
    let ops = ode.by_derivative();
    // shift s = b - a  ->  Q_s(n)
    let mut by_shift: std::collections::BTreeMap<i64, Poly> = std::collections::BTreeMap::new();
    for (b, p) in ops.iter().enumerate() {
        for (a, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = b as i64 - a as i64;
            let term = falling(s, b).scale(c);
            let e = by_shift.entry(s).or_insert_with(Poly::zero);
            *e = &*e + &term;
        }
    }
    by_shift.retain(|_, q| !q.is_zero());
    let (Some(&s_min), Some(&s_max)) = (by_shift.keys().next(), by_shift.keys().last()) else {
        return Err(DFiniteError::DegenerateRecurrence);
    };
    if s_min == s_max {
        return Err(DFiniteError::DegenerateRecurrence);
    }
    // n -> n - s_min puts the lowest shift at f(n).
    let offset = ExactRational::from(-s_min);
    let coeffs = (s_min..=s_max)
        .rev()
        .map(|s| {
            by_shift
                .get(&s)
                .map(|q| q.shift_var(&offset))
                .unwrap_or_else(Poly::zero)
        })
        .collect();
    Ok(PRec::new(coeffs).normalized())
}

/// `f(0..=n)` by forward substitution from `init = f(0..r)`.
pub fn rec_unroll(
    rec: &PRec,
    init: &[ExactRational],
    n: usize,
) -> Result<Vec<ExactRational>, DFiniteError> {
    let r = rec.order();
    if init.len() != r {
        return Err(DFiniteError::InitLength {
            expected: r,
            got: init.len(),
        });
    }
    if n < r {
        return Ok(init[..=n].to_vec());
    }
    let last = n - r;
    for k in 0..=last {
        if rec.coeffs[0].eval_int(k as i64).is_zero() {
            return Err(DFiniteError::LeadingCoeffVanishes(k as i64));
        }
    }
    let mut f = init.to_vec();
    f.reserve(n + 1 - r);
    for k in 0..=last {
        let kk = ExactRational::from(k);
        let mut acc = ExactRational::zero();
        for (j, q) in rec.coeffs.iter().enumerate().skip(1) {
            let v = &f[k + r - j];
            if !v.is_zero() && !q.is_zero() {
                acc += q.eval(&kk) * v;
            }
        }
        f.push(-acc / rec.coeffs[0].eval(&kk));
    }
    Ok(f)
}

/// `g0 * prod_{k<n} (-q_1(k) / q_0(k))` for a first-order recurrence.
pub fn first_order_product(
    rec: &PRec,
    g0: &ExactRational,
    n: usize,
) -> Result<ExactRational, DFiniteError> {
    if rec.order() != 1 {
        return Err(DFiniteError::NotFirstOrder(rec.order()));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut acc = g0.clone();
    let integral = rec
        .coeffs
        .iter()
        .all(|q| q.coeffs().iter().all(ExactRational::is_integer));
    for k in 0..n as i64 {
        let q0 = rec.coeffs[0].eval_int(k);
        if q0.is_zero() {
            return Err(DFiniteError::ZeroDenominator(k));
        }
        let ratio_num = -rec.coeffs[1].eval_int(k);
        if integral {
            num *= ratio_num.numer();
            den *= q0.numer();
        } else {
            acc = acc * ratio_num / q0;
        }
    }
    if integral {
        acc *= ExactRational::new(num, den);
    }
    Ok(acc)
}

/// `f(0;n)` from `f(0;0) = 1`, `f(0;1) = 0` and
/// `f(0;n) = sum_{k=0}^{n-2} f(0;k) f(0;n-2-k)`.
pub fn convolution_f0(n: usize) -> Vec<ExactRational> {
    let mut f: Vec<BigInt> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let v = match m {
            0 => BigInt::one(),
            1 => BigInt::zero(),
            _ => (0..=m - 2).map(|k| &f[k] * &f[m - 2 - k]).sum(),
        };
        f.push(v);
    }
    f.into_iter().map(ExactRational::from).collect()
}
