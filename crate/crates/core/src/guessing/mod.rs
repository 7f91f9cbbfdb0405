//! Guess-and-prove for algebraic generating functions.
//!
//! [`guess_algebraic`] finds a polynomial `P(x, t, Y)` annihilating a
//! truncated series by exact linear algebra. [`series_root`] lifts a root of
//! `P` by Newton iteration, and [`verify_kernel_solution`] proves that this
//! root solves the kernel equation: it builds an annihilator `A(Y)` of the
//! kernel-equation residual from resultants, splits `A = Y^m B`, and checks
//! that the residual vanishes while `B` does not.

mod linalg;
mod resultant;
mod tripoly;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exact_series::{ExactRational, Series};

pub use linalg::{nullspace, rank};
pub use resultant::{annihilator_combine, berkowitz_det, resultant, CombineMode};
pub use tripoly::{Exps, TriPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GuessError {
    #[error("{equations} equations for {unknowns} unknowns; raise the series order")]
    UnderdeterminedSystem { equations: usize, unknowns: usize },
    #[error("derivative of P at the seed has a non-invertible constant term")]
    SingularRoot,
    #[error("seed does not annihilate P through t^{order}")]
    SeedMismatch { order: usize },
    #[error("zero polynomial given to a resultant")]
    ZeroInput,
    #[error("order {order} is too small to separate the annihilator's factors")]
    InconclusiveOrder { order: usize },
}

/// Outcome of an ansatz solve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuessReport {
    pub candidate: Option<TriPoly>,
    pub nullspace_dim: usize,
    pub orders_used: usize,
    pub confirmed_to: usize,
}

impl GuessReport {
    /// Re-checks the candidate against a longer truncation; on success
    /// raises `confirmed_to` and returns true.
    pub fn confirm(&mut self, series: &Series) -> bool {
        let Some(p) = &self.candidate else {
            return false;
        };
        if !p.eval_series(series).is_zero() {
            return false;
        }
        self.confirmed_to = self.confirmed_to.max(series.order());
        true
    }
}

/// Exponent triples of the ansatz, in column order.
fn ansatz_monomials(dx: u32, dt: u32, dy: u32) -> Vec<Exps> {
    let mut out = Vec::new();
    for k in 0..=dy {
        for j in 0..=dt {
            for i in 0..=dx {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Solves for `P = sum p_ijk x^i t^j Y^k` (`i <= dx`, `j <= dt`, `k <= dy`)
/// with `P(x, t, A) = 0 mod t^(N+1)`.
pub fn guess_algebraic(a: &Series, dx: u32, dt: u32, dy: u32) -> Result<GuessReport, GuessError> {
    let order = a.order();
    let monomials = ansatz_monomials(dx, dt, dy);
    let mut powers = vec![Series::one(order)];
    for _ in 0..dy {
        let next = powers.last().unwrap() * a;
        powers.push(next);
    }
    // Equation (n, e): coefficient of x^e t^n.
    let mut equations: BTreeMap<(usize, i64), Vec<(usize, ExactRational)>> = BTreeMap::new();
    for (col, &(i, j, k)) in monomials.iter().enumerate() {
        let pw = &powers[k as usize];
        for n in j as usize..=order {
            for (e, c) in pw.coeff(n - j as usize).terms() {
                equations
                    .entry((n, e + i as i64))
                    .or_default()
                    .push((col, c.clone()));
            }
        }
    }
    if equations.len() < monomials.len() {
        return Err(GuessError::UnderdeterminedSystem {
            equations: equations.len(),
            unknowns: monomials.len(),
        });
    }
    let rows: Vec<Vec<ExactRational>> = equations
        .into_values()
        .map(|entries| {
            let mut row = vec![ExactRational::zero(); monomials.len()];
            for (col, c) in entries {
                row[col] += c;
            }
            row
        })
        .collect();
    let basis = nullspace(&rows, monomials.len());
    let candidate = basis
        .iter()
        .min_by_key(|v| v.iter().filter(|c| !c.is_zero()).count())
        .map(|v| {
            TriPoly::from_rational_terms(monomials.iter().copied().zip(v.iter().cloned()))
                .normalized()
        });
    Ok(GuessReport {
        candidate,
        nullspace_dim: basis.len(),
        orders_used: order,
        confirmed_to: order,
    })
}

/// The root of `P` extending `seed`, to order `n`, by Newton iteration.
pub fn series_root(p: &TriPoly, seed: &Series, n: usize) -> Result<Series, GuessError> {
    let seed_order = seed.order();
    if !p.eval_series(seed).is_zero() {
        return Err(GuessError::SeedMismatch { order: seed_order });
    }
    let dp = p.derivative_y();
    if dp.eval_series(&seed.truncate(0)).inverse().is_err() {
        return Err(GuessError::SingularRoot);
    }
    if n <= seed_order {
        return Ok(seed.truncate(n));
    }
    let mut y = seed.clone();
    let mut prec = seed_order;
    while prec < n {
        let next = (2 * prec + 1).min(n);
        let y_ext = y.padded(next);
        let residual = p.eval_series(&y_ext);
        let inv = dp
            .eval_series(&y_ext)
            .inverse()
            .map_err(|_| GuessError::SingularRoot)?;
        y = &y_ext - &(&residual * &inv);
        prec = next;
    }
    Ok(y)
}

/// `1 - (1 - 2xt) Y - xt(1 - t(x + x̄)) Y^2`, the minimal polynomial of the
/// simple-walk generating function `F(x;t)`.
pub fn walk_minimal_polynomial() -> TriPoly {
    TriPoly::from_terms([
        ((0, 0, 0), 1),
        ((0, 0, 1), -1),
        ((1, 1, 1), 2),
        ((1, 1, 2), -1),
        ((2, 2, 2), 1),
        ((0, 2, 2), 1),
    ])
}

/// `1 - Y + t^2 Y^2`, the minimal polynomial of the excursion series `F(0;t)`.
pub fn excursion_polynomial() -> TriPoly {
    TriPoly::from_terms([((0, 0, 0), 1), ((0, 0, 1), -1), ((0, 2, 2), 1)])
}

/// An expression in a root `F` of `P` whose annihilator can be assembled
/// from closure steps.
#[derive(Debug, Clone)]
pub enum CertExpr {
    /// `F(x;t)` itself.
    Root,
    /// `F(0;t)`, annihilated by `P(0, t, Y)`.
    RootAtZero,
    /// A fixed polynomial in `x, t`.
    Poly(TriPoly),
    Sum(Box<CertExpr>, Box<CertExpr>),
    Product(Box<CertExpr>, Box<CertExpr>),
}

impl CertExpr {
    pub fn sum(a: CertExpr, b: CertExpr) -> CertExpr {
        CertExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn product(a: CertExpr, b: CertExpr) -> CertExpr {
        CertExpr::Product(Box::new(a), Box::new(b))
    }

    /// `x(1 - t(x + x̄)) F - x + t F(0;t)`.
    pub fn kernel_residual() -> CertExpr {
        let kf = CertExpr::product(CertExpr::Poly(TriPoly::walk_kernel()), CertExpr::Root);
        let boundary = CertExpr::product(CertExpr::Poly(TriPoly::t()), CertExpr::RootAtZero);
        CertExpr::sum(kf, CertExpr::sum(boundary, CertExpr::Poly(-&TriPoly::x())))
    }

    /// `t^2 F^2 - F + 1`, the first-return decomposition of excursions.
    pub fn first_return_residual() -> CertExpr {
        let square = CertExpr::product(
            CertExpr::Poly(TriPoly::t().pow(2)),
            CertExpr::product(CertExpr::Root, CertExpr::Root),
        );
        let minus_f = CertExpr::product(
            CertExpr::Poly(TriPoly::constant(ExactRational::from(-1))),
            CertExpr::Root,
        );
        CertExpr::sum(
            square,
            CertExpr::sum(minus_f, CertExpr::Poly(TriPoly::one())),
        )
    }

    /// The expression's value for the root series `f`.
    pub fn eval(&self, f: &Series) -> Series {
        let order = f.order();
        match self {
            CertExpr::Root => f.clone(),
            CertExpr::RootAtZero => f.x_coeff(0),
            CertExpr::Poly(c) => c.xt_to_series(order),
            CertExpr::Sum(a, b) => &a.eval(f) + &b.eval(f),
            CertExpr::Product(a, b) => &a.eval(f) * &b.eval(f),
        }
    }

    /// A nonzero polynomial in `Y` vanishing at the expression.
    pub fn annihilator(&self, p: &TriPoly) -> Result<TriPoly, GuessError> {
        match self {
            CertExpr::Root => Ok(p.clone()),
            CertExpr::RootAtZero => {
                let q = p.at_x_zero();
                if q.is_zero() {
                    Err(GuessError::ZeroInput)
                } else {
                    Ok(q)
                }
            }
            CertExpr::Poly(c) => Ok(&TriPoly::y() - c),
            CertExpr::Sum(a, b) => {
                annihilator_combine(&a.annihilator(p)?, &b.annihilator(p)?, CombineMode::Sum)
            }
            CertExpr::Product(a, b) => {
                annihilator_combine(&a.annihilator(p)?, &b.annihilator(p)?, CombineMode::Product)
            }
        }
    }
}

/// Details of a certificate check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub verified: bool,
    pub order: usize,
    /// First `t`-order at which the residual `R` is nonzero, if any.
    pub residual_valuation: Option<usize>,
    /// `A(Y)`; absent when the check stopped before building it.
    pub annihilator: Option<TriPoly>,
    /// `m` in `A = Y^m B`.
    pub y_power: u32,
    /// First `t`-order at which `B(R)` is nonzero.
    pub separating_order: Option<usize>,
    pub failure: Option<String>,
}

impl CertificateReport {
    fn rejected(order: usize, reason: String) -> Self {
        CertificateReport {
            verified: false,
            order,
            residual_valuation: None,
            annihilator: None,
            y_power: 0,
            separating_order: None,
            failure: Some(reason),
        }
    }
}

/// Runs the certificate for `expr` over the root of `p` extending `F = 1 + O(t)`.
pub fn certify(p: &TriPoly, expr: &CertExpr, n: usize) -> Result<CertificateReport, GuessError> {
    let f = match series_root(p, &Series::one(0), n) {
        Ok(f) => f,
        Err(e @ (GuessError::SeedMismatch { .. } | GuessError::SingularRoot)) => {
            return Ok(CertificateReport::rejected(n, e.to_string()));
        }
        Err(e) => return Err(e),
    };
    let r = expr.eval(&f);
    if let Some(v) = r.valuation() {
        let mut report = CertificateReport::rejected(n, format!("residual is nonzero at t^{v}"));
        report.residual_valuation = Some(v);
        return Ok(report);
    }
    let a = expr.annihilator(p)?;
    let (m, b) = a.split_y_power();
    let sep = b.eval_series(&r).valuation();
    let Some(sep) = sep else {
        return Err(GuessError::InconclusiveOrder { order: n });
    };
    Ok(CertificateReport {
        verified: m >= 1,
        order: n,
        residual_valuation: None,
        failure: (m == 0).then(|| "annihilator has no factor Y".to_string()),
        annihilator: Some(a),
        y_power: m,
        separating_order: Some(sep),
    })
}

/// Full report for [`verify_kernel_solution`].
///
/// For `P` involving `x` the residual is the kernel equation for the simple
/// walk; for `x`-free `P` it is the first-return equation `F = 1 + t^2 F^2`.
pub fn certify_kernel_solution(p: &TriPoly, n: usize) -> Result<CertificateReport, GuessError> {
    let expr = if p.depends_on_x() {
        CertExpr::kernel_residual()
    } else {
        CertExpr::first_return_residual()
    };
    certify(p, &expr, n)
}

/// True when the root of `P` with `F = 1 + O(t)` provably solves the kernel
/// equation, using series data through `t^n`.
pub fn verify_kernel_solution(p: &TriPoly, n: usize) -> Result<bool, GuessError> {
    Ok(certify_kernel_solution(p, n)?.verified)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_series::{frac, int, LaurentPoly};
    use crate::walk_engine::{fixpoint_solve, StepSet};

    fn walks(n: usize) -> Series {
        fixpoint_solve(&StepSet::simple(), n)
    }

    #[test]
    fn guesses_walk_polynomial() {
        let report = guess_algebraic(&walks(8), 2, 2, 2).unwrap();
        assert_eq!(report.nullspace_dim, 1);
        assert_eq!(
            report.candidate,
            Some(walk_minimal_polynomial().normalized())
        );
    }

    #[test]
    fn guesses_excursion_polynomial() {
        let f0 = walks(8).x_coeff(0);
        let mut report = guess_algebraic(&f0, 0, 2, 2).unwrap();
        assert_eq!(report.nullspace_dim, 1);
        let cand = report.candidate.clone().unwrap();
        assert!(cand.is_proportional(&excursion_polynomial()));
        assert!(report.confirm(&walks(20).x_coeff(0)));
        assert_eq!(report.confirmed_to, 20);
    }

    #[test]
    fn guesses_geometric_series() {
        let g = Series::from_rationals((0..=6).map(|_| int(1)));
        let report = guess_algebraic(&g, 0, 1, 1).unwrap();
        let expected = TriPoly::from_terms([((0, 0, 0), 1), ((0, 0, 1), -1), ((0, 1, 1), 1)]);
        assert!(report.candidate.unwrap().is_proportional(&expected));
    }

    #[test]
    fn underdetermined_is_reported() {
        let g = Series::from_rationals([int(1), int(1)]);
        let err = guess_algebraic(&g, 0, 2, 2).unwrap_err();
        assert!(matches!(
            err,
            GuessError::UnderdeterminedSystem { unknowns: 9, .. }
        ));
    }

    #[test]
    fn no_candidate_for_transcendental_data() {
        // exp(t) is not algebraic of low degree
        let mut fact = int(1);
        let mut c = Vec::new();
        for n in 0..=12i64 {
            if n > 0 {
                fact = &fact * int(n);
            }
            c.push(int(1) / fact.clone());
        }
        let report = guess_algebraic(&Series::from_rationals(c), 0, 1, 1).unwrap();
        assert_eq!(report.nullspace_dim, 0);
        assert!(report.candidate.is_none());
    }

    #[test]
    fn newton_recovers_walks() {
        let seed = Series::new(vec![LaurentPoly::one(), LaurentPoly::x()]);
        let f = series_root(&walk_minimal_polynomial(), &seed, 12).unwrap();
        assert_eq!(f, walks(12));
        let again = series_root(&walk_minimal_polynomial(), &f, 12).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn newton_excursions_and_sqrt() {
        let f0 = series_root(&excursion_polynomial(), &Series::one(0), 10).unwrap();
        assert_eq!(f0, walks(10).x_coeff(0));
        let p = TriPoly::from_terms([((0, 0, 2), 1), ((0, 0, 0), -1), ((0, 2, 0), 4)]);
        let root = series_root(&p, &Series::one(0), 6).unwrap();
        let disc =
            Series::from_rationals([int(1), int(0), int(-4), int(0), int(0), int(0), int(0)]);
        assert_eq!(root, disc.sqrt().unwrap());
    }

    #[test]
    fn newton_errors() {
        let p = excursion_polynomial();
        let bad_seed = Series::constant(LaurentPoly::constant(frac(1, 2)), 0);
        assert_eq!(
            series_root(&p, &bad_seed, 5),
            Err(GuessError::SeedMismatch { order: 0 })
        );
        // (Y - 1)^2 has a double root at 1
        let double = TriPoly::from_terms([((0, 0, 2), 1), ((0, 0, 1), -2), ((0, 0, 0), 1)]);
        assert_eq!(
            series_root(&double, &Series::one(0), 5),
            Err(GuessError::SingularRoot)
        );
    }

    #[test]
    fn kernel_annihilator_contains_known_factor() {
        let a = CertExpr::kernel_residual()
            .annihilator(&walk_minimal_polynomial())
            .unwrap();
        let factor = TriPoly::from_terms([((0, 0, 1), 1), ((0, 2, 1), -4), ((0, 2, 3), -1)]);
        assert!(a.pseudo_rem_y(&factor).is_zero(), "{a}");
    }

    #[test]
    fn certificate_accepts_true_solution() {
        let report = certify_kernel_solution(&walk_minimal_polynomial(), 16).unwrap();
        assert!(report.verified, "{report:?}");
        assert!(report.y_power >= 1);
        assert!(report.separating_order.is_some());
        assert!(verify_kernel_solution(&excursion_polynomial(), 12).unwrap());
    }

    #[test]
    fn certificate_rejects_perturbations() {
        for (e, delta) in [((0, 2, 2), 1), ((1, 1, 1), 1), ((0, 0, 0), 1)] {
            let p = &walk_minimal_polynomial() + &TriPoly::from_terms([(e, delta)]);
            assert!(
                !verify_kernel_solution(&p, 16).unwrap(),
                "perturbed at {e:?}"
            );
        }
    }
}
