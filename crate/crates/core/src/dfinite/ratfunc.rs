use std::fmt;

use super::poly::Poly;
use crate::exact_series::ExactRational;

/// Reduced rational function `num / den` with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den);
        let (mut num, _) = num.div_rem(&g);
        let (mut den, _) = den.div_rem(&g);
        let l = den.lead().unwrap().recip();
        num = num.scale(&l);
        den = den.scale(&l);
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.inv()?))
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(n, &self.den * &self.den)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num.display_in("t"))
        } else {
            write!(
                f,
                "({})/({})",
                self.num.display_in("t"),
                self.den.display_in("t")
            )
        }
    }
}

/// Polynomials in `Y` over `Q(t)`, lowest degree first, trimmed.
pub(crate) type RfPoly = Vec<RatFunc>;

pub(crate) fn rp_trim(mut a: RfPoly) -> RfPoly {
    while a.last().is_some_and(RatFunc::is_zero) {
        a.pop();
    }
    a
}

fn rp_get(a: &RfPoly, k: usize) -> RatFunc {
    a.get(k).cloned().unwrap_or_else(RatFunc::zero)
}

pub(crate) fn rp_add(a: &RfPoly, b: &RfPoly) -> RfPoly {
    let n = a.len().max(b.len());
    rp_trim((0..n).map(|k| rp_get(a, k).add(&rp_get(b, k))).collect())
}

pub(crate) fn rp_sub(a: &RfPoly, b: &RfPoly) -> RfPoly {
    let n = a.len().max(b.len());
    rp_trim((0..n).map(|k| rp_get(a, k).sub(&rp_get(b, k))).collect())
}

pub(crate) fn rp_mul(a: &RfPoly, b: &RfPoly) -> RfPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![RatFunc::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    rp_trim(out)
}

pub(crate) fn rp_divrem(a: &RfPoly, b: &RfPoly) -> (RfPoly, RfPoly) {
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("trimmed divisor");
    let mut rem = a.clone();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![RatFunc::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db].mul(&lead_inv);
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(bc));
            }
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (rp_trim(quot), rp_trim(rem))
}

/// Extended Euclid: `(g, s)` with `s a = g mod b`.
pub(crate) fn rp_ext_gcd(a: &RfPoly, b: &RfPoly) -> (RfPoly, RfPoly) {
    let (mut r0, mut r1) = (b.clone(), rp_divrem(a, b).1);
    let (mut s0, mut s1): (RfPoly, RfPoly) = (Vec::new(), vec![RatFunc::one()]);
    // invariant: s_i a = r_i mod b
    while !r1.is_empty() {
        let (q, r) = rp_divrem(&r0, &r1);
        let s = rp_sub(&s0, &rp_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    (r0, s0)
}

pub(crate) fn rp_derivative_t(a: &RfPoly) -> RfPoly {
    rp_trim(a.iter().map(RatFunc::derivative).collect())
}

pub(crate) fn rp_derivative_y(a: &RfPoly) -> RfPoly {
    rp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&RatFunc::constant(ExactRational::from(k))))
            .collect(),
    )
}

/// Nullspace over `Q(t)` of a matrix given by columns.
pub(crate) fn rf_nullspace(columns: &[RfPoly], rows: usize) -> Vec<Vec<RatFunc>> {
    let ncols = columns.len();
    let mut m: Vec<Vec<RatFunc>> = (0..rows)
        .map(|i| columns.iter().map(|c| rp_get(c, i)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for j in 0..ncols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let v = m[i][j].sub(&f.mul(&m[r][j]));
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![RatFunc::zero(); ncols];
            v[f] = RatFunc::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = m[row][f].neg();
            }
            v
        })
        .collect()
}
