//! Cross-method consistency battery.

use serde::Serialize;

use crate::closed_forms::{lagrange_f0, Method};
use crate::combinatorial_identities::{bounded_dp, cf_convergent, cycle_brute, cycle_count};
use crate::dfinite::{algebraic_to_ode, ode_to_rec, rec_unroll};
use crate::exact_series::{ExactRational, Series};
use crate::guessing::excursion_polynomial;
use crate::walk_engine::{dp_count, StepSet};

pub type Solver = fn(usize) -> Series;

pub const CHECKS: [&str; 4] = ["five-way", "convergents", "cycle-sweep", "pipeline"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SelfcheckReport {
    pub checks: Vec<CheckResult>,
}

impl SelfcheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// The checks with their parameters. Solvers can be swapped out, which is
/// how the battery itself is tested.
#[derive(Debug, Clone)]
pub struct Battery {
    pub solvers: Vec<(&'static str, Solver)>,
    pub solve_order: usize,
    pub pipeline_len: usize,
}

impl Default for Battery {
    fn default() -> Self {
        Battery {
            solvers: vec![
                ("fixpoint", |n| Method::Fixpoint.solve(n)),
                ("classical", |n| Method::Classical.solve(n)),
                ("wiener-hopf", |n| Method::WienerHopf.solve(n)),
                ("orbit-sum", |n| Method::OrbitSum.solve(n)),
                ("factorization", |n| Method::Factorization.solve(n)),
            ],
            solve_order: 30,
            pipeline_len: 500,
        }
    }
}

impl Battery {
    pub fn with_solver(mut self, name: &'static str, f: Solver) -> Self {
        match self.solvers.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = f,
            None => self.solvers.push((name, f)),
        }
        self
    }

    pub fn run_all(&self) -> SelfcheckReport {
        self.run(&CHECKS)
    }

    pub fn run(&self, names: &[&str]) -> SelfcheckReport {
        let checks = names
            .iter()
            .map(|&name| {
                let outcome = match name {
                    "five-way" => self.five_way(),
                    "convergents" => convergents(),
                    "cycle-sweep" => cycle_sweep(),
                    "pipeline" => self.pipeline(),
                    _ => Err("unknown check".to_string()),
                };
                CheckResult {
                    name: name.to_string(),
                    passed: outcome.is_ok(),
                    detail: outcome.unwrap_or_else(|e| e),
                }
            })
            .collect();
        SelfcheckReport { checks }
    }

    fn five_way(&self) -> Result<String, String> {
        let n = self.solve_order;
        let results: Vec<_> = self.solvers.iter().map(|(name, f)| (*name, f(n))).collect();
        let (ref_name, reference) = &results[0];
        let bad: Vec<String> = results[1..]
            .iter()
            .filter(|(_, s)| s != reference)
            .map(|(name, s)| {
                let first = (0..=n.min(s.order())).find(|&k| s.coeff(k) != reference.coeff(k));
                match first {
                    Some(k) => format!("{name} differs from {ref_name} at t^{k}"),
                    None => format!("{name} has order {} instead of {n}", s.order()),
                }
            })
            .collect();
        if bad.is_empty() {
            Ok(format!("{} methods agree through t^{n}", results.len()))
        } else {
            Err(bad.join("; "))
        }
    }

    fn pipeline(&self) -> Result<String, String> {
        let n = self.pipeline_len;
        let ode = algebraic_to_ode(&excursion_polynomial()).map_err(|e| e.to_string())?;
        let rec = ode_to_rec(&ode).map_err(|e| e.to_string())?;
        let mut init = vec![ExactRational::from(1)];
        init.resize(rec.order(), ExactRational::from(0));
        let unrolled = rec_unroll(&rec, &init, n).map_err(|e| e.to_string())?;
        let truth = dp_count(&StepSet::simple(), n).position(0);
        match (0..=n).find(|&k| unrolled[k] != truth[k]) {
            None => Ok(format!(
                "{} reproduces excursion counts to n = {n}",
                rec.display()
            )),
            Some(k) => Err(format!("recurrence and enumeration differ at n = {k}")),
        }
    }
}

fn convergents() -> Result<String, String> {
    for k in 0..=8 {
        let conv = cf_convergent(k, 30)
            .series
            .to_rationals()
            .ok_or("convergent has x-terms")?;
        if conv != bounded_dp(k, 30).position(0) {
            return Err(format!(
                "convergent {k} disagrees with the height-{k} enumeration"
            ));
        }
    }
    Ok("convergents 0..=8 match bounded enumeration to t^30".into())
}

fn cycle_sweep() -> Result<String, String> {
    let mut pairs = 0;
    for total in 2..=12u64 {
        for r in 1..total {
            let s = total - r;
            if num_integer::gcd(r, s) != 1 {
                continue;
            }
            if cycle_count(r, s) != cycle_brute(r, s) {
                return Err(format!("cycle count differs for ({r}, {s})"));
            }
            pairs += 1;
        }
    }
    for n in 0..=9u64 {
        if cycle_count(n, n + 1).ok() != Some(lagrange_f0(2 * n as usize)) {
            return Err(format!(
                "cycle count ({n}, {}) differs from the excursion count",
                n + 1
            ));
        }
    }
    Ok(format!("{pairs} coprime pairs checked by exhaustion"))
}
