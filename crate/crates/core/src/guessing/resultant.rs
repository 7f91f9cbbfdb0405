//! Resultants in `Y` over `Q[x, t]` and the sum/product closure of
//! algebraic series.

use super::tripoly::TriPoly;
use super::GuessError;

/// Determinant without division (Berkowitz). Works over any commutative
/// ring; here the entries are polynomials.
pub fn berkowitz_det(a: &[Vec<TriPoly>]) -> TriPoly {
    let n = a.len();
    if n == 0 {
        return TriPoly::one();
    }
    // p holds the characteristic polynomial of the leading r x r block,
    // highest coefficient first.
    let mut p = vec![TriPoly::one()];
    for m in 0..n {
        // Block [[A_m, C], [R, a]] with A_m the leading m x m block.
        let a_mm = &a[m][m];
        let mut seq = Vec::with_capacity(m + 2);
        seq.push(TriPoly::one());
        seq.push(-a_mm);
        let mut v: Vec<TriPoly> = (0..m).map(|i| a[i][m].clone()).collect();
        for _ in 0..m {
            let dot = (0..m).fold(TriPoly::zero(), |acc, j| &acc + &(&a[m][j] * &v[j]));
            seq.push(-&dot);
            v = (0..m)
                .map(|i| (0..m).fold(TriPoly::zero(), |acc, j| &acc + &(&a[i][j] * &v[j])))
                .collect();
        }
        let next: Vec<TriPoly> = (0..m + 2)
            .map(|i| (0..=i.min(m)).fold(TriPoly::zero(), |acc, j| &acc + &(&seq[i - j] * &p[j])))
            .collect();
        p = next;
    }
    let det = p.pop().unwrap();
    if n % 2 == 1 {
        -&det
    } else {
        det
    }
}

/// Sylvester matrix of `f` and `g` given by coefficient lists
/// (lowest degree first, leading coefficients nonzero).
fn sylvester(f: &[TriPoly], g: &[TriPoly]) -> Vec<Vec<TriPoly>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (coeffs, count) in [(f, n), (g, m)] {
        let deg = coeffs.len() - 1;
        for s in 0..count {
            let mut row = vec![TriPoly::zero(); size];
            for k in 0..=deg {
                row[s + k] = coeffs[deg - k].clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// `Res_{y}(f, g)` for polynomials given as coefficient lists in `y`.
pub fn resultant(f: &[TriPoly], g: &[TriPoly]) -> TriPoly {
    berkowitz_det(&sylvester(f, g))
}

fn trim(mut c: Vec<TriPoly>) -> Vec<TriPoly> {
    while c.last().is_some_and(TriPoly::is_zero) {
        c.pop();
    }
    c
}

/// Coefficients in the elimination variable `y1` of `p(Y - y1)`; each is a
/// polynomial in `x, t, Y`.
fn shifted_by_variable(p: &TriPoly) -> Vec<TriPoly> {
    let coeffs = p.y_coeffs();
    let d = coeffs.len().saturating_sub(1);
    let mut out = vec![TriPoly::zero(); d + 1];
    // (Y - y1)^k = sum_l C(k, l) Y^(k-l) (-y1)^l
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for l in 0..=k {
            let b = crate::exact_series::binomial(k as i64, l as i64);
            let sign = if l % 2 == 1 { -1 } else { 1 };
            let coef = crate::exact_series::ExactRational::from(b * sign);
            out[l] = &out[l] + &c.shift((0, 0, (k - l) as u32)).scale(&coef);
        }
    }
    trim(out)
}

/// Coefficients in `y1` of `y1^d p(Y / y1)`.
fn scaled_by_variable(p: &TriPoly) -> Vec<TriPoly> {
    let coeffs = p.y_coeffs();
    let d = coeffs.len().saturating_sub(1);
    let mut out = vec![TriPoly::zero(); d + 1];
    for (k, c) in coeffs.iter().enumerate() {
        out[d - k] = c.shift((0, 0, k as u32));
    }
    trim(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineMode {
    Sum,
    Product,
}

/// A polynomial in `Y` vanishing at `a + b` (or `a * b`) for every root `a`
/// of `p1` and `b` of `p2`, as polynomials in `Y` over `Q[x, t]`.
///
/// Monomial factors `x^a t^b` common to all coefficients are divided out;
/// they carry no roots.
pub fn annihilator_combine(
    p1: &TriPoly,
    p2: &TriPoly,
    mode: CombineMode,
) -> Result<TriPoly, GuessError> {
    if p1.is_zero() || p2.is_zero() {
        return Err(GuessError::ZeroInput);
    }
    let f = p1.y_coeffs();
    let g = match mode {
        CombineMode::Sum => shifted_by_variable(p2),
        CombineMode::Product => scaled_by_variable(p2),
    };
    Ok(resultant(&f, &g).without_xt_monomial_content().normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_series::int;

    fn y_minus(c: TriPoly) -> TriPoly {
        &TriPoly::y() - &c
    }

    #[test]
    fn berkowitz_small_determinants() {
        let c = |v: i64| TriPoly::constant(int(v));
        let m = vec![
            vec![c(2), c(1), c(0)],
            vec![c(1), c(3), c(1)],
            vec![c(0), c(1), c(4)],
        ];
        assert_eq!(berkowitz_det(&m), c(18));
        let m = vec![
            vec![TriPoly::x(), TriPoly::t()],
            vec![TriPoly::y(), TriPoly::one()],
        ];
        let expected = &TriPoly::x() - &(&TriPoly::t() * &TriPoly::y());
        assert_eq!(berkowitz_det(&m), expected);
    }

    #[test]
    fn linear_sum_and_product() {
        let a = TriPoly::x();
        let b = TriPoly::from_terms([((0, 1, 0), 2), ((0, 0, 0), 1)]);
        let s = annihilator_combine(&y_minus(a.clone()), &y_minus(b.clone()), CombineMode::Sum)
            .unwrap();
        assert!(s.is_proportional(&y_minus(&a + &b)));
        let p = annihilator_combine(
            &y_minus(a.clone()),
            &y_minus(b.clone()),
            CombineMode::Product,
        )
        .unwrap();
        assert!(p.is_proportional(&y_minus(&a * &b)));
    }

    #[test]
    fn sqrt2_plus_sqrt3() {
        let p2 = TriPoly::from_terms([((0, 0, 2), 1), ((0, 0, 0), -2)]);
        let p3 = TriPoly::from_terms([((0, 0, 2), 1), ((0, 0, 0), -3)]);
        let s = annihilator_combine(&p2, &p3, CombineMode::Sum).unwrap();
        let expected = TriPoly::from_terms([((0, 0, 4), 1), ((0, 0, 2), -10), ((0, 0, 0), 1)]);
        assert_eq!(s, expected);
        let p = annihilator_combine(&p2, &p3, CombineMode::Product).unwrap();
        let expected = TriPoly::from_terms([((0, 0, 4), 1), ((0, 0, 2), -12), ((0, 0, 0), 36)]);
        assert_eq!(p, expected);
    }

    #[test]
    fn zero_input_rejected() {
        let r = annihilator_combine(&TriPoly::zero(), &TriPoly::y(), CombineMode::Sum);
        assert_eq!(r, Err(GuessError::ZeroInput));
    }
}
