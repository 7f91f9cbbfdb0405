//! Acceptance criteria, one line of output per criterion.

mod props;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kernelwalk::asymptotics::{estimate_constant, poincare_expansion, DEFAULT_DIGITS};
use kernelwalk::closed_forms::{
    classical_kernel, invariant_identity_check, invariant_residual, lagrange_f0, orbit_sum,
    wh_factorize, wiener_hopf,
};
use kernelwalk::combinatorial_identities::{
    bounded_dp, cf_convergent, cycle_brute, cycle_count, reflection_count,
};
use kernelwalk::dfinite::{algebraic_relation, algebraic_to_ode, ode_to_rec, rec_unroll};
use kernelwalk::guessing::{certify_kernel_solution, guess_algebraic, verify_kernel_solution};
use kernelwalk::walk_engine::{dp_count, fixpoint_solve};
use kernelwalk::{ExactRational, LaurentPoly, LinODE, PRec, Poly, Series, StepSet, TriPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn q(n: i64) -> ExactRational {
    ExactRational::from(n)
}

fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, q(c))))
}

/// Simple-walk counts on the half-line by a plain array DP.
fn oracle_counts(max_len: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for n in 1..=max_len {
        let prev = &rows[n - 1];
        let row: Vec<BigInt> = (0..=n)
            .map(|i| {
                let below = if i >= 1 {
                    prev.get(i - 1).cloned().unwrap_or_default()
                } else {
                    BigInt::zero()
                };
                let above = prev.get(i + 1).cloned().unwrap_or_default();
                below + above
            })
            .collect();
        rows.push(row);
    }
    rows
}

fn oracle_series(max_len: usize) -> Series {
    let rows = oracle_counts(max_len);
    Series::new(
        rows.iter()
            .map(|r| {
                LaurentPoly::from_terms(
                    r.iter()
                        .enumerate()
                        .map(|(i, c)| (i as i64, ExactRational::from(c.clone()))),
                )
            })
            .collect(),
    )
}

fn criterion_1() -> Outcome {
    let expected = Series::new(vec![
        lp(&[(0, 1)]),
        lp(&[(1, 1)]),
        lp(&[(0, 1), (2, 1)]),
        lp(&[(1, 2), (3, 1)]),
        lp(&[(0, 2), (2, 3), (4, 1)]),
    ]);
    let got = fixpoint_solve(&StepSet::simple(), 4);
    ensure(got == expected, format!("got {got}"))?;
    Ok(format!("F = {got}"))
}

fn criterion_2() -> Outcome {
    let n = 100;
    let oracle = oracle_series(n);
    let candidates = [
        ("classical", classical_kernel(n).1),
        ("wiener-hopf", wiener_hopf(n)),
        ("orbit-sum", orbit_sum(n)),
        ("factorization", wh_factorize(n).walks()),
        ("fixpoint", fixpoint_solve(&StepSet::simple(), n)),
    ];
    for (name, s) in &candidates {
        ensure(s.order() == n, format!("{name} has order {}", s.order()))?;
        if let Some(k) = (0..=n).find(|&k| s.coeff(k) != oracle.coeff(k)) {
            return Err(format!("{name} differs from enumeration at t^{k}"));
        }
    }
    Ok(format!(
        "{} methods equal the enumeration through t^{n}",
        candidates.len()
    ))
}

/// `1 - (1 - 2xt) Y - xt(1 - t(x + 1/x)) Y^2`, already polynomial.
fn expected_p() -> TriPoly {
    TriPoly::from_terms([
        ((0, 0, 0), 1),
        ((0, 0, 1), -1),
        ((1, 1, 1), 2),
        ((1, 1, 2), -1),
        ((2, 2, 2), 1),
        ((0, 2, 2), 1),
    ])
}

fn criterion_3() -> Outcome {
    let f = fixpoint_solve(&StepSet::simple(), 8);
    let report = guess_algebraic(&f, 2, 2, 2).map_err(|e| e.to_string())?;
    ensure(
        report.nullspace_dim == 1,
        format!("nullspace dimension {}", report.nullspace_dim),
    )?;
    let p = report.candidate.ok_or("no candidate")?;
    ensure(p == expected_p().normalized(), format!("candidate {p}"))?;
    Ok(format!("dimension 1, P = {p}"))
}

fn criterion_4() -> Outcome {
    let p = expected_p();
    ensure(
        verify_kernel_solution(&p, 16).map_err(|e| e.to_string())?,
        "certificate rejected",
    )?;
    let report = certify_kernel_solution(&p, 16).map_err(|e| e.to_string())?;
    let a = report.annihilator.ok_or("no annihilator")?;
    // Y (1 - 4t^2 - t^2 Y^2)
    let factor = TriPoly::from_terms([((0, 0, 1), 1), ((0, 2, 1), -4), ((0, 2, 3), -1)]);
    ensure(
        a.pseudo_rem_y(&factor).is_zero(),
        "annihilator not divisible by Y(1 - 4t^2 - t^2 Y^2)",
    )?;
    Ok(format!(
        "verified; A = Y^{} B, separating order {:?}",
        report.y_power,
        report.separating_order.unwrap_or_default()
    ))
}

fn tpoly(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

fn criterion_5() -> Outcome {
    let p0 = TriPoly::from_terms([((0, 0, 0), 1), ((0, 0, 1), -1), ((0, 2, 2), 1)]);
    let ode = algebraic_to_ode(&p0)
        .map_err(|e| e.to_string())?
        .normalized();
    let expected = LinODE::new(
        vec![tpoly(&[0, 1, 0, -4]), tpoly(&[3, 0, -16]), tpoly(&[0, -8])],
        Poly::zero(),
    );
    ensure(ode == expected, format!("ode {}", ode.display()))?;
    let rel = algebraic_relation(&p0)
        .map_err(|e| e.to_string())?
        .normalized();
    let expected_rel = LinODE::new(vec![tpoly(&[0, 1, 0, -4]), tpoly(&[2, 0, -4])], tpoly(&[2]));
    ensure(rel == expected_rel, format!("relation {}", rel.display()))?;
    Ok(ode.display())
}

fn criterion_6() -> Outcome {
    let p0 = TriPoly::from_terms([((0, 0, 0), 1), ((0, 0, 1), -1), ((0, 2, 2), 1)]);
    let ode = algebraic_to_ode(&p0).map_err(|e| e.to_string())?;
    let rec = ode_to_rec(&ode).map_err(|e| e.to_string())?.normalized();
    let expected = PRec::new(vec![tpoly(&[4, 1]), Poly::zero(), tpoly(&[-4, -4])]);
    ensure(rec == expected, format!("recurrence {}", rec.display()))?;
    let n = 2000;
    let values = rec_unroll(&rec, &[q(1), q(0)], n).map_err(|e| e.to_string())?;
    let truth = dp_count(&StepSet::simple(), n).position(0);
    if let Some(k) = (0..=n).find(|&k| values[k] != truth[k]) {
        return Err(format!("unrolled value differs at n = {k}"));
    }
    Ok(format!("{} matches enumeration to n = {n}", rec.display()))
}

fn g_rec() -> PRec {
    PRec::new(vec![tpoly(&[4, 2]), tpoly(&[-4, -8])])
}

fn criterion_7() -> Outcome {
    let e = poincare_expansion(&g_rec(), 4).map_err(|e| e.to_string())?;
    ensure(e.len() == 1, format!("{} expansions", e.len()))?;
    let e = &e[0];
    let fr = ExactRational::from_ratio;
    ensure(
        e.phi == q(4) && e.alpha == fr(-3, 2),
        format!("phi {} alpha {}", e.phi, e.alpha),
    )?;
    let c = vec![fr(-9, 8), fr(145, 128), fr(-1155, 1024), fr(36939, 32768)];
    ensure(e.c == c, format!("c = {:?}", e.c))?;
    Ok(e.to_string())
}

/// `arctan(1/k) * 10^scale` by the alternating series, truncated.
fn arctan_inv(k: u32, scale: u32) -> BigInt {
    let one = BigInt::from(10).pow(scale);
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power = &one / &k;
    let mut sum = BigInt::zero();
    let mut n = 0u32;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * n + 1);
        if n.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &k2;
        n += 1;
    }
    sum
}

/// `floor(10^digits / sqrt(pi))`, with pi from Machin's formula.
fn inv_sqrt_pi(digits: u32) -> BigInt {
    let guard = 20;
    let scale = 2 * digits + guard;
    let pi = BigInt::from(16) * arctan_inv(5, scale) - BigInt::from(4) * arctan_inv(239, scale);
    // 10^(2 digits) / pi = 10^(2 digits + scale) / (pi 10^scale)
    let num = BigInt::from(10).pow(2 * digits + scale);
    (num / pi).sqrt()
}

fn criterion_8() -> Outcome {
    let n = 10_000;
    let values = rec_unroll(&g_rec(), &[q(1)], n).map_err(|e| e.to_string())?;
    let e = &poincare_expansion(&g_rec(), 4).map_err(|e| e.to_string())?[0];
    let est = estimate_constant(&values, e, &[1000, 5000, 10_000], DEFAULT_DIGITS)
        .map_err(|e| e.to_string())?;
    let oracle = inv_sqrt_pi(DEFAULT_DIGITS);
    let diff = (&est.estimate.scaled - &oracle).magnitude().clone();
    let tolerance = BigInt::from(10).pow(DEFAULT_DIGITS - 6);
    ensure(
        BigInt::from(diff.clone()) < tolerance,
        format!("estimate {} off by {diff}", est.estimate),
    )?;
    ensure(
        est.spread.scaled < tolerance,
        format!("spread {}", est.spread),
    )?;
    // the oracle itself against double precision
    let f = oracle.to_string().parse::<f64>().unwrap() / 1e50;
    ensure(
        (f - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-15,
        "oracle digits",
    )?;
    Ok(format!(
        "estimate {} (spread {:.1e})",
        &est.estimate.to_string()[..20],
        est.spread.to_f64()
    ))
}

fn criterion_9() -> Outcome {
    let table = oracle_counts(25);
    for n in 0..=25i64 {
        for i in 0..=25i64 {
            let truth = table[n as usize]
                .get(i as usize)
                .cloned()
                .unwrap_or_default();
            ensure(
                reflection_count(i, n) == ExactRational::from(truth),
                format!("reflection f({i};{n})"),
            )?;
        }
    }
    let f0: Vec<ExactRational> = oracle_counts(30)
        .iter()
        .map(|r| ExactRational::from(r[0].clone()))
        .collect();
    for k in 0..=8 {
        for len in [0, 1, 7, 30] {
            let conv = cf_convergent(k, len)
                .series
                .to_rationals()
                .ok_or("convergent has x")?;
            ensure(
                conv == bounded_dp(k, len).position(0),
                format!("convergent {k} at order {len}"),
            )?;
        }
        if k <= 6 {
            let diff = &Series::from_rationals(f0.clone()) - &cf_convergent(k, 30).series;
            ensure(
                diff.valuation() == Some(2 * k + 2),
                format!("valuation for k = {k}"),
            )?;
        }
    }
    let mut pairs = 0;
    for total in 2..=12u64 {
        for r in 1..total {
            let s = total - r;
            if r.gcd(&s) == 1 {
                ensure(
                    cycle_count(r, s) == cycle_brute(r, s),
                    format!("cycle ({r}, {s})"),
                )?;
                pairs += 1;
            }
        }
    }
    for n in 0..=9u64 {
        ensure(
            cycle_count(n, n + 1).ok() == Some(lagrange_f0(2 * n as usize)),
            format!("cycle ({n}, {}) vs Lagrange", n + 1),
        )?;
    }
    Ok(format!(
        "reflection 26x26, convergents k <= 8, {pairs} cycle pairs"
    ))
}

fn criterion_10() -> Outcome {
    let n = 50;
    // 1/(1 - t(x + 1/x)) = sum_k (x + 1/x)^k t^k
    let step = lp(&[(-1, 1), (1, 1)]);
    let geometric = Series::new((0..=n as u32).map(|k| step.pow(k)).collect());
    let product = wh_factorize(n).product();
    if let Some(k) = (0..=n).find(|&k| product.coeff(k) != geometric.coeff(k)) {
        return Err(format!("factor product differs at t^{k}"));
    }
    let r1 = invariant_identity_check(100);
    ensure(
        r1.order() == 100 && r1.is_zero(),
        "invariant residual of the fixed-point F0",
    )?;
    let r2 = invariant_residual(&classical_kernel(100).0);
    ensure(
        r2.order() == 100 && r2.is_zero(),
        "invariant residual of the kernel-method F0",
    )?;
    Ok("factor product and invariant residuals vanish".into())
}

fn criterion_11() -> Outcome {
    for (name, suite) in props::SUITES {
        suite(64).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!(
        "{} property suites, 64 cases each",
        props::SUITES.len()
    ))
}

type Check = fn() -> Outcome;

const CRITERIA: [(&str, Check); 11] = [
    ("series ground truth", criterion_1),
    ("five-way method agreement at order 100", criterion_2),
    ("guessing the algebraic equation", criterion_3),
    ("certificate verification", criterion_4),
    ("ODE derivation", criterion_5),
    ("recurrence derivation and unrolling", criterion_6),
    ("asymptotic expansion", criterion_7),
    ("growth constant", criterion_8),
    ("combinatorial identities", criterion_9),
    ("factorization identities", criterion_10),
    ("property suites", criterion_11),
];

fn main() -> ExitCode {
    let mut failed = 0;
    for (k, (name, check)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed: Duration = start.elapsed();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {tag} {name} [{:.2?}]: {detail}",
            k + 1,
            elapsed
        );
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
