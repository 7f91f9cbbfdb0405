//! Property suites shared by `properties.rs` and the acceptance runner.
//! Every runner starts from the same fixed seed.

use kernelwalk::asymptotics::{formal_residual, poincare_expansion};
use kernelwalk::guessing::{annihilator_combine, series_root, CombineMode};
use kernelwalk::{ExactRational, LaurentPoly, PRec, Poly, Series, TriPoly};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

const SEED: [u8; 32] = *b"half-line walks, fixed test seed";

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn rational() -> impl Strategy<Value = ExactRational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| ExactRational::from_ratio(n, d))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-2i64..=2, rational()), 0..4).prop_map(LaurentPoly::from_terms)
}

fn series_of_order(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(laurent(), order + 1).prop_map(Series::new)
}

fn series_triple() -> impl Strategy<Value = (Series, Series, Series)> {
    (0usize..5).prop_flat_map(|n| (series_of_order(n), series_of_order(n), series_of_order(n)))
}

/// Small polynomial in `x`, `t` with no `Y`.
fn xt_poly() -> impl Strategy<Value = TriPoly> {
    prop::collection::vec(((0u32..=2, 0u32..=2), -3i64..=3), 1..4)
        .prop_map(|terms| TriPoly::from_terms(terms.into_iter().map(|((i, j), c)| ((i, j, 0), c))))
}

fn check(name: &str, outcome: Result<(), impl std::fmt::Display>) -> Result<(), String> {
    outcome.map_err(|e| format!("{name}: {e}"))
}

pub fn ring_laws(cases: u32) -> Result<(), String> {
    let outcome = runner(cases).run(&series_triple(), |(a, b, c)| {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        Ok(())
    });
    check("ring laws", outcome)
}

pub fn inverse_and_sqrt(cases: u32) -> Result<(), String> {
    let strat = (0usize..6).prop_flat_map(|n| (series_of_order(n), rational(), -2i64..=2));
    let outcome = runner(cases).run(&strat, |(s, c, e)| {
        prop_assume!(!c.is_zero());
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = LaurentPoly::monomial(c, e);
        let a = Series::new(coeffs);
        let inv = a
            .inverse()
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&a * &inv, Series::one(a.order()));
        // x-free square root of 1 + t * (...)
        let f = Series::from_rationals(
            std::iter::once(ExactRational::from(1))
                .chain((1..=a.order()).map(|k| a.coeff(k).coeff(0))),
        );
        let root = f.sqrt().map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&root * &root, f);
        Ok(())
    });
    check("inverse and sqrt", outcome)
}

pub fn nonneg_part(cases: u32) -> Result<(), String> {
    let strat = (0usize..5).prop_flat_map(|n| {
        (
            series_of_order(n),
            series_of_order(n),
            rational(),
            rational(),
        )
    });
    let outcome = runner(cases).run(&strat, |(a, b, p, q)| {
        let combo = &a.scale(&p) + &b.scale(&q);
        prop_assert_eq!(
            combo.nonneg_part(),
            &a.nonneg_part().scale(&p) + &b.nonneg_part().scale(&q)
        );
        prop_assert_eq!(a.nonneg_part().nonneg_part(), a.nonneg_part());
        for k in 0..=a.order() {
            prop_assert!(a.nonneg_part().coeff(k).min_deg().is_none_or(|d| d >= 0));
        }
        Ok(())
    });
    check("nonneg_part", outcome)
}

/// `P = Y - 1 - t Q(x, t, Y)` always has a unique root `1 + O(t)`.
pub fn series_root_idempotent(cases: u32) -> Result<(), String> {
    let q = prop::collection::vec(((0u32..=1, 0u32..=1, 0u32..=2), -2i64..=2), 0..4);
    let outcome = runner(cases).run(&(q, 1usize..10), |(q, n)| {
        let q = TriPoly::from_terms(q.into_iter().map(|((i, j, k), c)| ((i, j + 1, k), c)));
        let p = &(&TriPoly::y() - &TriPoly::one()) - &q;
        let root =
            series_root(&p, &Series::one(0), n).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(p.eval_series(&root).is_zero());
        let again = series_root(&p, &root, n).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(again, root);
        Ok(())
    });
    check("series_root", outcome)
}

fn linear(a: i64, b: i64) -> Poly {
    Poly::from_ints(&[b, a])
}

/// Order-2 recurrences `(n+a) f(n+2) - (p+q)(n+b) f(n+1) + pq(n+c) f(n)`
/// with distinct characteristic roots `p`, `q`, and first-order ones.
pub fn asymptotic_residual(cases: u32) -> Result<(), String> {
    let strat = (
        1i64..=4,
        -4i64..=4,
        -4i64..=4,
        1i64..=5,
        1i64..=5,
        -3i64..=3,
        0usize..5,
    );
    let outcome = runner(cases).run(&strat, |(p, q, a, b, c, s, depth)| {
        prop_assume!(p != q && q != 0);
        let rec = PRec::new(vec![
            linear(1, a),
            linear(-(p + q), -(p + q) * b),
            linear(p * q, p * q * c),
        ]);
        let exps =
            poincare_expansion(&rec, depth).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(exps.len() <= rec.order());
        prop_assert_eq!(exps.len(), 2);
        for e in &exps {
            let res = formal_residual(&rec, &e.phi, &e.alpha, &e.c, depth + 1);
            prop_assert!(res.iter().all(|v| v.is_zero()), "{}", e);
        }
        let first = PRec::new(vec![linear(p, s + 3), linear(-q, b)]);
        let exps =
            poincare_expansion(&first, depth).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(exps.len(), 1);
        let e = &exps[0];
        prop_assert_eq!(&e.phi, &ExactRational::from_ratio(q, p));
        prop_assert!(formal_residual(&first, &e.phi, &e.alpha, &e.c, depth + 1)
            .iter()
            .all(|v| v.is_zero()));
        Ok(())
    });
    check("asymptotic residual", outcome)
}

fn substitute_y(p: &TriPoly, y: &TriPoly) -> TriPoly {
    let mut acc = TriPoly::zero();
    for c in p.y_coeffs().iter().rev() {
        acc = &(&acc * y) + c;
    }
    acc
}

/// For `p1 = Y - a`, `p2 = Y - b` the combined annihilators vanish at
/// `a + b` and `a b`.
pub fn linear_resultants(cases: u32) -> Result<(), String> {
    let outcome = runner(cases).run(&(xt_poly(), xt_poly()), |(a, b)| {
        let p1 = &TriPoly::y() - &a;
        let p2 = &TriPoly::y() - &b;
        let sum = annihilator_combine(&p1, &p2, CombineMode::Sum)
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(substitute_y(&sum, &(&a + &b)).is_zero(), "sum {}", sum);
        let prod = annihilator_combine(&p1, &p2, CombineMode::Product)
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(!prod.is_zero());
        prop_assert!(
            substitute_y(&prod, &(&a * &b)).is_zero(),
            "product {}",
            prod
        );
        Ok(())
    });
    check("linear resultants", outcome)
}

#[allow(dead_code)]
pub type Suite = fn(u32) -> Result<(), String>;

#[allow(dead_code)]
pub const SUITES: [(&str, Suite); 6] = [
    ("ring laws", ring_laws),
    ("inverse and sqrt", inverse_and_sqrt),
    ("nonneg_part linearity and idempotence", nonneg_part),
    ("series_root idempotence", series_root_idempotent),
    ("asymptotic formal residual", asymptotic_residual),
    ("linear resultant soundness", linear_resultants),
];
