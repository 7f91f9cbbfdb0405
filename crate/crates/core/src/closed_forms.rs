//! Closed-form solutions of the kernel equation
//! `x(1 - t(x + x̄)) F(x;t) = x - t F(0;t)` for the simple walk `{-1, 1}`.
//!
//! Each method produces `F(x;t)` (or `F(0;t)`) to a requested order from a
//! different formula; agreement with [`crate::walk_engine`] is what the
//! tests and the self-check battery assert. All of these hard-code the
//! simple walk.

use num_bigint::BigInt;
use num_traits::One;

use crate::exact_series::{binomial, ExactRational, LaurentPoly, LaurentSeries, Series};
use crate::guessing::TriPoly;
use crate::walk_engine::{fixpoint_solve, StepSet};

/// Kernel polynomial data for the simple walk.
#[derive(Debug, Clone)]
pub struct KernelData {
    /// `x(1 - t(x + x̄))` cleared to `x - t - t x^2`.
    pub kernel: TriPoly,
    /// The small root `x0 = (1 - sqrt(1 - 4t^2)) / (2t)`, valuation 1.
    pub x0: Series,
    /// The large root `x1 = 1/x0`, valuation -1.
    pub x1: LaurentSeries,
    pub order: usize,
}

fn x_plus_xbar() -> LaurentPoly {
    LaurentPoly::from_terms([(1, ExactRational::one()), (-1, ExactRational::one())])
}

/// `1 - t(x + x̄)` at the given order.
pub fn walk_kernel_series(order: usize) -> Series {
    &Series::one(order) - &Series::monomial_t(x_plus_xbar(), 1, order)
}

/// `1 / (1 - t(x + x̄))`: all walks on the integers, no boundary.
pub fn unrestricted_series(order: usize) -> Series {
    walk_kernel_series(order)
        .inverse()
        .expect("constant term of the kernel is 1")
}

/// `(1 - sqrt(1 - 4t^2)) / (2t)` at the given order, by an exact
/// valuation shift of the numerator.
fn small_root(order: usize) -> Series {
    let n = order + 1;
    let mut disc = vec![ExactRational::from(0); n + 1];
    disc[0] = ExactRational::from(1);
    if n >= 2 {
        disc[2] = ExactRational::from(-4);
    }
    let root = Series::from_rationals(disc)
        .sqrt()
        .expect("constant term is 1");
    let numer = &Series::one(n) - &root;
    // The numerator must vanish at t^0 and have only even powers of t.
    assert!(
        numer.coeff(0).is_zero(),
        "branch error: t^0 term of 1 - sqrt survives"
    );
    for (k, c) in numer.coeffs().iter().enumerate() {
        assert!(
            k % 2 == 0 || c.is_zero(),
            "branch error: odd power t^{k} in 1 - sqrt"
        );
    }
    numer
        .div_t_pow(1)
        .expect("valuation checked above")
        .scale(&ExactRational::from_ratio(1, 2))
}

/// Roots of the kernel polynomial, both known through `t^order`.
pub fn kernel_roots(order: usize) -> KernelData {
    let order = order.max(1);
    // Two extra orders: dividing by x0's valuation costs one, and x1 starts at t^-1.
    let x0_long = small_root(order + 2);
    let x1 = LaurentSeries::from_series(&x0_long, 0)
        .inverse()
        .expect("x0 has leading coefficient 1")
        .truncate(order as i64);
    KernelData {
        kernel: TriPoly::walk_kernel(),
        x0: x0_long.truncate(order),
        x1,
        order,
    }
}

/// `t * x1` as an ordinary power series (constant term 1).
fn t_times_x1(data: &KernelData) -> Series {
    data.x1.shift(1).to_series().expect("t x1 has valuation 0")
}

/// Classical kernel method: `F(0;t) = x0/t` and
/// `F(x;t) = (1 - x̄ x0) / (1 - t(x + x̄))`.
pub fn classical_kernel(order: usize) -> (Series, Series) {
    let x0 = small_root(order + 1);
    let f0 = x0.div_t_pow(1).expect("x0 has valuation 1");
    let numer = &Series::one(order) - &x0.truncate(order).mul_laurent(&LaurentPoly::xbar());
    let f = &numer * &unrestricted_series(order);
    (f0, f)
}

/// `1 / (1 - y)` for `y` of positive valuation, as `sum_{k<=order} y^k`.
///
/// Term `k` starts at `t^k`, so the truncated geometric sum is exact; it is
/// evaluated through the series inverse, which produces the same
/// coefficients in fewer operations.
fn geometric(y: &Series) -> Series {
    debug_assert!(y.coeff(0).is_zero());
    (&Series::one(y.order()) - y)
        .inverse()
        .expect("1 - y has constant term 1")
}

/// Wiener–Hopf route: `F(x;t) = -1 / (t (x - x1)) = (1/(t x1)) sum_k (x/x1)^k`.
pub fn wiener_hopf(order: usize) -> Series {
    let data = kernel_roots(order + 1);
    let f0 = t_times_x1(&data)
        .truncate(order)
        .inverse()
        .expect("t x1 = 1 + O(t)");
    // x/x1 = t x / (t x1)
    let x_over_x1 = &f0.mul_t_pow(1) * &Series::constant(LaurentPoly::x(), order);
    &f0 * &geometric(&x_over_x1)
}

/// Orbit sum: `F(x;t) = [x^>=] (1 - x̄^2) / (1 - t(x + x̄))`.
pub fn orbit_sum(order: usize) -> Series {
    let numer = LaurentPoly::from_terms([(0, ExactRational::one()), (-2, ExactRational::from(-1))]);
    unrestricted_series(order).mul_laurent(&numer).nonneg_part()
}

/// Excursion count `f(0;n)` by Lagrange inversion:
/// `(1/(n+1)) [t^-1] (t + 1/t)^(n+1)`.
pub fn lagrange_f0(n: usize) -> ExactRational {
    let base = x_plus_xbar();
    let power = base.pow(n as u32 + 1);
    power.coeff(-1) / ExactRational::from(n + 1)
}

/// Closed form `(1/(n/2+1)) C(n, n/2)` for even `n`, zero for odd `n`.
pub fn catalan_f0(n: usize) -> ExactRational {
    if n % 2 == 1 {
        return ExactRational::from(0);
    }
    let m = n as i64 / 2;
    ExactRational::new(binomial(n as i64, m), BigInt::from(m + 1))
}

/// Residual `1 - F0 + t^2 F0^2` of the invariant identity for a given `F0`.
pub fn invariant_residual(f0: &Series) -> Series {
    let order = f0.order();
    &(&Series::one(order) - f0) + &(f0 * f0).mul_t_pow(2)
}

/// Invariant identity residual with `F0 = [x^0]` of the fixed-point solution.
pub fn invariant_identity_check(order: usize) -> Series {
    let f0 = fixpoint_solve(&StepSet::simple(), order).x_coeff(0);
    invariant_residual(&f0)
}

/// Residual of the separated form `-K/(x t) = x + x̄ - 1/t`, multiplied
/// through by `x t`: `K + t x^2 + t - x`. Zero when the kernel is right.
pub fn separated_kernel_residual() -> TriPoly {
    let k = TriPoly::walk_kernel();
    let lhs = TriPoly::from_terms([((2, 1, 0), 1), ((0, 1, 0), 1), ((1, 0, 0), -1)]);
    &lhs + &k
}

/// The combinatorial factorization `1/(1 - t(x + x̄)) = F_- F(0;t) F_+`.
#[derive(Debug, Clone)]
pub struct WhFactors {
    /// `1/(1 - x̄ x0)`, in `Q[x̄][[t]]`.
    pub minus: Series,
    /// `1/(t x1)`.
    pub f0: Series,
    /// `1/(1 - x/x1)`, in `Q[x][[t]]`.
    pub plus: Series,
}

impl WhFactors {
    pub fn product(&self) -> Series {
        &(&self.minus * &self.f0) * &self.plus
    }

    /// `F(x;t) = F(0;t) F_+(x;t)`.
    pub fn walks(&self) -> Series {
        &self.f0 * &self.plus
    }
}

pub fn wh_factorize(order: usize) -> WhFactors {
    let data = kernel_roots(order + 1);
    let x0 = data.x0.truncate(order);
    let f0 = t_times_x1(&data)
        .truncate(order)
        .inverse()
        .expect("t x1 = 1 + O(t)");
    let inv_x1 = f0.mul_t_pow(1);
    let minus = geometric(&x0.mul_laurent(&LaurentPoly::xbar()));
    let plus = geometric(&inv_x1.mul_laurent(&LaurentPoly::x()));
    WhFactors { minus, f0, plus }
}

/// A named closed-form or oracle route to `F(x;t)` for the simple walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Fixpoint,
    Classical,
    WienerHopf,
    OrbitSum,
    Factorization,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Fixpoint,
        Method::Classical,
        Method::WienerHopf,
        Method::OrbitSum,
        Method::Factorization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Fixpoint => "fixpoint",
            Method::Classical => "classical",
            Method::WienerHopf => "wiener-hopf",
            Method::OrbitSum => "orbit-sum",
            Method::Factorization => "factorization",
        }
    }

    pub fn from_name(name: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == name)
    }

    pub fn solve(self, order: usize) -> Series {
        match self {
            Method::Fixpoint => fixpoint_solve(&StepSet::simple(), order),
            Method::Classical => classical_kernel(order).1,
            Method::WienerHopf => wiener_hopf(order),
            Method::OrbitSum => orbit_sum(order),
            Method::Factorization => wh_factorize(order).walks(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_series::int;
    use crate::walk_engine::{dp_count, table_to_series};

    fn rats(s: &Series) -> Vec<ExactRational> {
        s.to_rationals().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<ExactRational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn small_root_coefficients() {
        let d = kernel_roots(6);
        assert_eq!(rats(&d.x0), ints(&[0, 1, 0, 1, 0, 2, 0]));
    }

    #[test]
    fn roots_multiply_to_one_and_sum_to_inverse_t() {
        for n in [1, 5, 20] {
            let d = kernel_roots(n);
            let x0 = LaurentSeries::from_series(&d.x0, 0);
            let prod = &x0 * &d.x1;
            assert_eq!(prod.valuation(), 0);
            assert_eq!(
                prod.to_series().unwrap(),
                Series::one(prod.order() as usize)
            );
            let sum = &x0 + &d.x1;
            assert_eq!(sum.order(), n as i64);
            let expected = LaurentSeries::monomial_t(LaurentPoly::one(), -1, n as i64);
            assert_eq!(sum, expected);
        }
    }

    #[test]
    fn roots_rebuild_kernel() {
        // -t (x - x0)(x - x1) = x - t - t x^2 through t^order
        let n = 10i64;
        let d = kernel_roots(n as usize);
        let x = LaurentSeries::monomial_t(LaurentPoly::x(), 0, n + 2);
        let a = &x - &LaurentSeries::from_series(&d.x0, 0);
        let b = &x - &d.x1;
        let prod = (&a * &b).shift(1);
        let prod = -&prod;
        let series = prod.to_series().unwrap();
        let kernel = Series::new(vec![
            LaurentPoly::x(),
            LaurentPoly::from_terms([(0, int(-1)), (2, int(-1))]),
        ]);
        let m = series.order().min(n as usize);
        assert_eq!(series.truncate(m), kernel.padded(m));
    }

    #[test]
    fn classical_excursions() {
        let (f0, f) = classical_kernel(4);
        assert_eq!(rats(&f0), ints(&[1, 0, 1, 0, 2]));
        assert_eq!(f, fixpoint_solve(&StepSet::simple(), 4));
        assert_eq!(f.nonneg_part(), f);
    }

    #[test]
    fn wiener_hopf_matches_oracle() {
        let f = wiener_hopf(20);
        assert!(f.coeff(0).is_one());
        assert_eq!(f, fixpoint_solve(&StepSet::simple(), 20));
        let d = kernel_roots(21);
        assert_eq!(f.x_coeff(0), d.x0.div_t_pow(1).unwrap().truncate(20));
    }

    #[test]
    fn orbit_sum_examples() {
        let f = orbit_sum(2);
        let expected = Series::new(vec![
            LaurentPoly::one(),
            LaurentPoly::x(),
            LaurentPoly::from_terms([(0, int(1)), (2, int(1))]),
        ]);
        assert_eq!(f, expected);
        assert_eq!(orbit_sum(50), classical_kernel(50).1);
    }

    #[test]
    fn unrestricted_central_binomials() {
        let u = unrestricted_series(16);
        for n in 0..=8i64 {
            assert_eq!(
                u.coeff(2 * n as usize).coeff(0),
                ExactRational::from(binomial(2 * n, n))
            );
        }
    }

    #[test]
    fn lagrange_values() {
        assert_eq!(lagrange_f0(0), int(1));
        assert_eq!(lagrange_f0(1), int(0));
        assert_eq!(lagrange_f0(6), int(5));
        let dp = dp_count(&StepSet::simple(), 40).position(0);
        for (n, v) in dp.iter().enumerate() {
            assert_eq!(&lagrange_f0(n), v);
            assert_eq!(&catalan_f0(n), v);
        }
    }

    #[test]
    fn invariant_identity() {
        assert!(invariant_identity_check(10).is_zero());
        assert!(invariant_identity_check(0).is_zero());
        let f0 = fixpoint_solve(&StepSet::simple(), 10).x_coeff(0);
        let perturbed = &f0 + &Series::t(10);
        assert_eq!(invariant_residual(&perturbed).valuation(), Some(1));
    }

    #[test]
    fn separated_kernel_form() {
        assert!(separated_kernel_residual().is_zero());
    }

    #[test]
    fn factorization_pieces() {
        let n = 30;
        let w = wh_factorize(n);
        assert_eq!(w.product(), unrestricted_series(n));
        assert_eq!(w.walks(), table_to_series(&dp_count(&StepSet::simple(), n)));
        for c in w.minus.coeffs() {
            assert!(c.max_deg().unwrap_or(0) <= 0);
        }
        for c in w.plus.coeffs() {
            assert!(c.min_deg().unwrap_or(0) >= 0);
        }
        assert_eq!(w.minus.x_coeff(0), Series::one(n));
        assert_eq!(w.plus.x_coeff(0), Series::one(n));
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(Method::from_name(m.name()), Some(m));
        }
        assert_eq!(Method::from_name("nope"), None);
    }
}
