//! Argument handling and output formatting for the `kernelwalk` binary.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use kernelwalk::asymptotics::{estimate_constant, poincare_expansion, AsympError};
use kernelwalk::closed_forms::{lagrange_f0, Method};
use kernelwalk::combinatorial_identities::{
    bounded_dp, cf_convergent, cycle_brute, cycle_count, reflection_count,
};
use kernelwalk::dfinite::{algebraic_relation, algebraic_to_ode, ode_to_rec, rec_unroll};
use kernelwalk::guessing::{certify_kernel_solution, guess_algebraic};
use kernelwalk::parse::{parse_poly, parse_rec, parse_tripoly, split_top_level};
use kernelwalk::selfcheck::{Battery, CHECKS};
use kernelwalk::walk_engine::{dp_count, fixpoint_solve, table_to_series};
use kernelwalk::{CountTable, Error, ExactRational, LinODE, PRec, Series, StepSet, TriPoly};
use serde::Serialize;
use serde_json::{json, Value};

pub const ORDER_ENV: &str = "KERNELWALK_ORDER";

#[derive(Debug, Parser)]
#[command(
    name = "kernelwalk",
    version,
    about = "Exact enumeration of half-line lattice walks"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count walks by length and endpoint.
    Count {
        #[arg(
            long,
            allow_hyphen_values = true,
            value_delimiter = ',',
            default_value = "-1,1"
        )]
        steps: Vec<i64>,
        /// Also allow a zero step.
        #[arg(long)]
        stay: bool,
        #[arg(long, env = ORDER_ENV, default_value_t = 10)]
        len: usize,
    },
    /// Generating function F(x;t) of the simple walk by a named method.
    Solve {
        #[arg(long, value_parser = method_arg)]
        method: Method,
        #[arg(long, env = ORDER_ENV, default_value_t = 10)]
        order: usize,
        /// Step set, fixpoint method only.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        steps: Option<Vec<i64>>,
    },
    /// Continued-fraction convergent F_k.
    Convergent {
        #[arg(long)]
        k: usize,
        #[arg(long, env = ORDER_ENV, default_value_t = 10)]
        order: usize,
    },
    /// Counting identities.
    #[command(subcommand)]
    Identities(Identity),
    /// Guess an algebraic equation from series data.
    Guess(GuessArgs),
    /// Linear ODE of an algebraic series given by P(t, Y) = 0.
    Ode {
        #[arg(long, value_parser = tripoly_arg)]
        poly: TriPoly,
    },
    /// Recurrence for the coefficients of a D-finite series.
    Rec {
        /// Algebraic equation P(t, Y) = 0.
        #[arg(long, value_parser = tripoly_arg, conflicts_with = "ode", required_unless_present = "ode")]
        poly: Option<TriPoly>,
        /// ODE coefficients in t, highest derivative first.
        #[arg(long, value_parser = ode_arg)]
        ode: Option<LinODE>,
        /// Also give the recurrence for even-indexed terms.
        #[arg(long)]
        even: bool,
    },
    /// Unroll a recurrence from initial values.
    Unroll {
        #[arg(long, allow_hyphen_values = true, value_parser = rec_arg)]
        rec: PRec,
        #[arg(
            long,
            allow_hyphen_values = true,
            value_delimiter = ',',
            required = true
        )]
        init: Vec<ExactRational>,
        #[arg(long, env = ORDER_ENV, default_value_t = 10)]
        len: usize,
    },
    /// Formal asymptotic expansions of a recurrence.
    Asymp {
        #[arg(long, allow_hyphen_values = true, value_parser = rec_arg)]
        rec: PRec,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Estimate the constant in front of an asymptotic expansion.
    Estimate {
        #[arg(long, allow_hyphen_values = true, value_parser = rec_arg)]
        rec: PRec,
        #[arg(
            long,
            allow_hyphen_values = true,
            value_delimiter = ',',
            required = true
        )]
        init: Vec<ExactRational>,
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Growth base to use; defaults to the largest one found.
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<ExactRational>,
        #[arg(long, default_value_t = kernelwalk::asymptotics::DEFAULT_DIGITS)]
        digits: u32,
    },
    /// Run the cross-method consistency checks.
    Selfcheck {
        /// Comma-separated subset of checks; empty selects none.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Identity {
    /// Reflection-principle count f(i;n).
    Reflection {
        #[arg(long)]
        i: i64,
        #[arg(long)]
        n: i64,
    },
    /// Paths to (r,s) below the diagonal line.
    Cycle {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
        /// Also count by exhaustion.
        #[arg(long)]
        brute: bool,
    },
    /// Excursion count by Lagrange inversion.
    Lagrange {
        #[arg(long)]
        n: usize,
    },
    /// Counts of walks confined to {0..k}.
    Bounded {
        #[arg(long)]
        k: usize,
        #[arg(long, env = ORDER_ENV, default_value_t = 10)]
        len: usize,
    },
}

#[derive(Debug, Args)]
pub struct GuessArgs {
    /// walks: F(x;t); excursions: F(0;t).
    #[arg(long, default_value = "walks", value_parser = ["walks", "excursions"])]
    source: String,
    #[arg(long, default_value_t = 8)]
    order: usize,
    #[arg(long, default_value_t = 2)]
    dx: u32,
    #[arg(long, default_value_t = 2)]
    dt: u32,
    #[arg(long, default_value_t = 2)]
    dy: u32,
    /// Prove the candidate with series data to this order.
    #[arg(long)]
    certify: Option<usize>,
}

fn method_arg(s: &str) -> Result<Method, String> {
    Method::from_name(s).ok_or_else(|| {
        let names: Vec<_> = Method::ALL.iter().map(|m| m.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn tripoly_arg(s: &str) -> Result<TriPoly, String> {
    parse_tripoly(s).map_err(|e| e.to_string())
}

fn rec_arg(s: &str) -> Result<PRec, String> {
    let rec = parse_rec(s).map_err(|e| e.to_string())?;
    if rec.order() == 0 {
        return Err("need at least two coefficients".into());
    }
    if rec.coeffs[0].is_zero() {
        return Err("leading coefficient is zero".into());
    }
    Ok(rec)
}

fn ode_arg(s: &str) -> Result<LinODE, String> {
    let coeffs = split_top_level(s)
        .into_iter()
        .map(|p| parse_poly(p, "t"))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    if coeffs.iter().all(|p| p.is_zero()) {
        return Err("all coefficients are zero".into());
    }
    Ok(LinODE::new(coeffs, kernelwalk::Poly::zero()))
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage { flag: &'static str, message: String },
    Domain(Error),
}

impl<E: Into<Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.into())
    }
}

/// Structured result plus its text rendering.
struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            ok: true,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => {
            let stdout = if cli.json {
                format!(
                    "{}\n",
                    serde_json::to_string(&report.json).expect("json values serialize")
                )
            } else {
                report.text
            };
            Outcome {
                code: if report.ok { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure::Usage { flag, message }) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: invalid value for '{flag}': {message}\n"),
        },
        Err(Failure::Domain(e)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {}: {e}\n", e.kind()),
        },
    }
}

fn dispatch(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Count { steps, stay, len } => {
            let set = if *stay {
                StepSet::with_stay(steps.iter().copied())?
            } else {
                StepSet::new(steps.iter().copied())?
            };
            Ok(count_report(&set, &dp_count(&set, *len)))
        }
        Command::Solve {
            method,
            order,
            steps,
        } => {
            let series = match steps {
                Some(_) if *method != Method::Fixpoint => {
                    return Err(Failure::Usage {
                        flag: "--steps",
                        message: "only the fixpoint method takes a step set".into(),
                    });
                }
                Some(s) => fixpoint_solve(&StepSet::new(s.iter().copied())?, *order),
                None => method.solve(*order),
            };
            let json = json!({ "method": method.name(), "series": to_value(&series) });
            Ok(Report::new(json, format!("{series}\n")))
        }
        Command::Convergent { k, order } => {
            let c = cf_convergent(*k, *order);
            Ok(Report::new(to_value(&c), format!("F_{k} = {}\n", c.series)))
        }
        Command::Identities(id) => identity(id),
        Command::Guess(args) => guess(args),
        Command::Ode { poly } => {
            let relation = algebraic_relation(poly)?;
            let ode = algebraic_to_ode(poly)?;
            let json = json!({ "relation": to_value(&relation), "ode": to_value(&ode) });
            let text = format!("relation: {}\node: {}\n", relation.display(), ode.display());
            Ok(Report::new(json, text))
        }
        Command::Rec { poly, ode, even } => {
            let ode = match (poly, ode) {
                (Some(p), _) => algebraic_to_ode(p)?,
                (None, Some(o)) => o.clone(),
                (None, None) => unreachable!("clap requires one of --poly and --ode"),
            };
            let rec = ode_to_rec(&ode)?;
            let mut json = json!({ "ode": to_value(&ode), "rec": to_value(&rec) });
            let mut text = format!("ode: {}\nrec: {}\n", ode.display(), rec.display());
            if *even {
                let e = rec.even_index()?;
                json["even"] = to_value(&e);
                let _ = writeln!(text, "even: {}", e.display());
            }
            Ok(Report::new(json, text))
        }
        Command::Unroll { rec, init, len } => {
            let values = rec_unroll(rec, init, *len)?;
            let text = values
                .iter()
                .enumerate()
                .map(|(n, v)| format!("{n}: {v}\n"))
                .collect();
            Ok(Report::new(
                json!({ "rec": to_value(rec), "values": to_value(&values) }),
                text,
            ))
        }
        Command::Asymp { rec, depth } => {
            let exps = poincare_expansion(rec, *depth)?;
            let text = exps.iter().map(|e| format!("{e}\n")).collect();
            Ok(Report::new(json!({ "expansions": to_value(&exps) }), text))
        }
        Command::Estimate {
            rec,
            init,
            points,
            depth,
            phi,
            digits,
        } => {
            let exps = poincare_expansion(rec, *depth)?;
            let chosen = match phi {
                Some(p) => exps
                    .iter()
                    .find(|e| &e.phi == p)
                    .ok_or_else(|| Failure::Usage {
                        flag: "--phi",
                        message: format!("{p} is not a growth base of the recurrence"),
                    })?,
                None => exps
                    .iter()
                    .max_by(|a, b| a.phi.cmp(&b.phi))
                    .expect("at least one expansion"),
            };
            if chosen.phi <= ExactRational::from(0) {
                return Err(AsympError::NonPositivePhi.into());
            }
            let top = *points.iter().max().expect("points is required");
            let values = rec_unroll(rec, init, top)?;
            let est = estimate_constant(&values, chosen, points, *digits)?;
            let mut text = format!("expansion: {chosen}\n");
            for (n, r) in &est.ratios {
                let _ = writeln!(text, "n = {n}: {r}");
            }
            let _ = writeln!(text, "estimate: {}\nspread: {}", est.estimate, est.spread);
            let json = json!({
                "expansion": to_value(chosen),
                "estimate": to_value(&est.estimate),
                "spread": to_value(&est.spread),
                "ratios": to_value(&est.ratios),
                "digits": digits,
            });
            Ok(Report::new(json, text))
        }
        Command::Selfcheck { only } => {
            let names: Vec<&str> = match only.as_deref() {
                None => CHECKS.to_vec(),
                Some("") => Vec::new(),
                Some(list) => list.split(',').map(str::trim).collect(),
            };
            if let Some(bad) = names.iter().find(|n| !CHECKS.contains(n)) {
                return Err(Failure::Usage {
                    flag: "--only",
                    message: format!(
                        "unknown check '{bad}'; expected some of {}",
                        CHECKS.join(", ")
                    ),
                });
            }
            let report = Battery::default().run(&names);
            let text = report
                .checks
                .iter()
                .map(|c| {
                    format!(
                        "{} {}: {}\n",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name,
                        c.detail
                    )
                })
                .collect();
            let json = json!({ "checks": to_value(&report.checks), "passed": report.passed() });
            Ok(Report {
                json,
                text,
                ok: report.passed(),
            })
        }
    }
}

fn count_report(set: &StepSet, table: &CountTable) -> Report {
    let series = table_to_series(table);
    let mut text = String::new();
    for n in 0..=table.max_len() {
        let _ = writeln!(text, "n = {n}: {}", series.coeff(n));
    }
    Report::new(
        json!({ "steps": set.steps(), "table": to_value(table) }),
        text,
    )
}

fn identity(id: &Identity) -> Result<Report, Failure> {
    match id {
        Identity::Reflection { i, n } => {
            let v = reflection_count(*i, *n);
            Ok(Report::new(
                json!({ "i": i, "n": n, "count": to_value(&v) }),
                format!("{v}\n"),
            ))
        }
        Identity::Cycle { r, s, brute } => {
            let v = cycle_count(*r, *s)?;
            let mut json = json!({ "r": r, "s": s, "count": to_value(&v) });
            let mut text = format!("{v}\n");
            if *brute {
                let b = cycle_brute(*r, *s)?;
                json["brute"] = to_value(&b);
                text = format!("formula: {v}\nexhaustion: {b}\n");
            }
            Ok(Report::new(json, text))
        }
        Identity::Lagrange { n } => {
            let v = lagrange_f0(*n);
            Ok(Report::new(
                json!({ "n": n, "count": to_value(&v) }),
                format!("{v}\n"),
            ))
        }
        Identity::Bounded { k, len } => {
            let table = bounded_dp(*k, *len);
            Ok(count_report(&StepSet::simple(), &table))
        }
    }
}

fn guess(args: &GuessArgs) -> Result<Report, Failure> {
    let series = if args.source == "excursions" {
        Series::from_rationals(dp_count(&StepSet::simple(), args.order).position(0))
    } else {
        fixpoint_solve(&StepSet::simple(), args.order)
    };
    let report = guess_algebraic(&series, args.dx, args.dt, args.dy)?;
    let mut json = json!({ "guess": to_value(&report) });
    let mut text = match &report.candidate {
        Some(p) => format!("P = {p}\nnullspace dimension: {}\n", report.nullspace_dim),
        None => "no candidate\n".to_string(),
    };
    if let (Some(n), Some(p)) = (args.certify, &report.candidate) {
        let cert = certify_kernel_solution(p, n)?;
        let _ = writeln!(
            text,
            "certificate at order {n}: {}",
            if cert.verified {
                "verified"
            } else {
                "rejected"
            }
        );
        if let Some(a) = &cert.annihilator {
            let _ = writeln!(text, "A = {a}");
        }
        json["certificate"] = to_value(&cert);
    }
    Ok(Report::new(json, text))
}
