//! Ground-truth enumeration of half-line walks.
//!
//! Two independent routes produce the generating function
//! `F(x;t) = sum f(i;n) x^i t^n`: a row-by-row dynamic program over end
//! positions, and fixed-point iteration of `F = 1 + [x^>=](t S(x) F)`.
//! Everything else in the crate is checked against these.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exact_series::{ExactRational, LaurentPoly, Series};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StepSetError {
    #[error("step set is empty")]
    Empty,
    #[error("zero is not a valid step")]
    ZeroStep,
}

/// A finite set of nonzero integer steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepSet {
    steps: Vec<i64>,
}

impl StepSet {
    pub fn new(steps: impl IntoIterator<Item = i64>) -> Result<Self, StepSetError> {
        let mut steps: Vec<i64> = steps.into_iter().collect();
        steps.sort_unstable();
        steps.dedup();
        if steps.is_empty() {
            return Err(StepSetError::Empty);
        }
        if steps.contains(&0) {
            return Err(StepSetError::ZeroStep);
        }
        Ok(StepSet { steps })
    }

    /// The simple walk `{-1, 1}`.
    pub fn simple() -> Self {
        StepSet { steps: vec![-1, 1] }
    }

    /// `{-1, 0, 1}`; a zero step is allowed here since it is a distinct
    /// step of the Motzkin model rather than a degenerate input.
    pub fn motzkin() -> Self {
        StepSet {
            steps: vec![-1, 0, 1],
        }
    }

    /// Like [`StepSet::new`] but admitting a zero (stay) step.
    pub fn with_stay(steps: impl IntoIterator<Item = i64>) -> Result<Self, StepSetError> {
        let mut steps: Vec<i64> = steps.into_iter().collect();
        steps.sort_unstable();
        steps.dedup();
        if steps.is_empty() {
            return Err(StepSetError::Empty);
        }
        Ok(StepSet { steps })
    }

    pub fn steps(&self) -> &[i64] {
        &self.steps
    }

    pub fn max_step(&self) -> i64 {
        *self.steps.last().unwrap()
    }

    /// True when no step is negative, so the half-line constraint never binds.
    pub fn is_unconstrained(&self) -> bool {
        self.steps[0] >= 0
    }

    /// The step polynomial `S(x) = sum x^s`.
    pub fn step_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.steps.iter().map(|&s| (s, ExactRational::from(1))))
    }
}

impl fmt::Display for StepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Counts `f(i;n)` of walks of length `n` ending at position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    rows: Vec<BTreeMap<i64, ExactRational>>,
}

impl CountTable {
    pub fn from_rows(rows: Vec<BTreeMap<i64, ExactRational>>) -> Self {
        assert!(!rows.is_empty());
        CountTable { rows }
    }

    pub fn max_len(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[BTreeMap<i64, ExactRational>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &BTreeMap<i64, ExactRational> {
        &self.rows[n]
    }

    /// `f(i;n)`, zero when absent.
    pub fn count(&self, i: i64, n: usize) -> ExactRational {
        self.rows[n]
            .get(&i)
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    /// The column of counts at position `i`, for lengths `0..=max_len`.
    pub fn position(&self, i: i64) -> Vec<ExactRational> {
        (0..self.rows.len()).map(|n| self.count(i, n)).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct CountTableRepr {
    max_len: usize,
    rows: Vec<Vec<(i64, ExactRational)>>,
}

impl Serialize for CountTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CountTableRepr {
            max_len: self.max_len(),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|(i, c)| (*i, c.clone())).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CountTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = CountTableRepr::deserialize(deserializer)?;
        if repr.rows.len() != repr.max_len + 1 {
            return Err(serde::de::Error::custom("row count must be max_len + 1"));
        }
        Ok(CountTable {
            rows: repr
                .rows
                .into_iter()
                .map(|r| r.into_iter().collect())
                .collect(),
        })
    }
}

/// Row-by-row iterator over dense count vectors `row[i] = f(i;n)`.
///
/// Positions are optionally capped at `ceiling` (bounded-height walks).
pub struct DpRows {
    steps: Vec<i64>,
    ceiling: Option<usize>,
    current: Option<Vec<BigInt>>,
}

impl DpRows {
    pub fn new(steps: &StepSet, ceiling: Option<usize>) -> Self {
        DpRows {
            steps: steps.steps().to_vec(),
            ceiling,
            current: None,
        }
    }

    fn advance(&self, prev: &[BigInt]) -> Vec<BigInt> {
        let max_step = self.steps.iter().copied().max().unwrap_or(0).max(0) as usize;
        let mut width = prev.len() + max_step;
        if let Some(c) = self.ceiling {
            width = width.min(c + 1);
        }
        let mut next = vec![BigInt::zero(); width];
        for (j, count) in prev.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for &s in &self.steps {
                let i = j as i64 + s;
                if i < 0 || i as usize >= width {
                    continue;
                }
                next[i as usize] += count;
            }
        }
        while next.len() > 1 && next.last().is_some_and(Zero::is_zero) {
            next.pop();
        }
        next
    }
}

impl Iterator for DpRows {
    type Item = Vec<BigInt>;

    fn next(&mut self) -> Option<Vec<BigInt>> {
        let row = match &self.current {
            None => vec![BigInt::from(1)],
            Some(prev) => self.advance(prev),
        };
        self.current = Some(row.clone());
        Some(row)
    }
}

pub(crate) fn dense_to_map(row: &[BigInt]) -> BTreeMap<i64, ExactRational> {
    row.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, ExactRational::from(c.clone())))
        .collect()
}

/// `f(i;n)` for `n <= max_len` by the recurrence `f(i;n) = sum_s f(i-s;n-1)`,
/// restricted to non-negative positions.
pub fn dp_count(steps: &StepSet, max_len: usize) -> CountTable {
    let rows = DpRows::new(steps, None)
        .take(max_len + 1)
        .map(|r| dense_to_map(&r))
        .collect();
    CountTable { rows }
}

/// The generating function `[t^n] = sum_i f(i;n) x^i` of a count table.
pub fn table_to_series(table: &CountTable) -> Series {
    Series::new(
        table
            .rows
            .iter()
            .map(|r| LaurentPoly::from_terms(r.iter().map(|(i, c)| (*i, c.clone()))))
            .collect(),
    )
}

/// One application of `Φ(F) = 1 + [x^>=](t S(x) F)`.
pub fn fixpoint_step(steps: &StepSet, f: &Series) -> Series {
    let order = f.order();
    let shifted = f.mul_laurent(&steps.step_poly()).mul_t_pow(1).nonneg_part();
    &Series::one(order) + &shifted
}

/// `F(x;t)` to order `order` by iterating `Φ` from the constant series 1,
/// `order` times. After `m` iterations the coefficients through `t^m` are final.
pub fn fixpoint_solve(steps: &StepSet, order: usize) -> Series {
    let mut f = Series::one(order);
    for _ in 0..order {
        f = fixpoint_step(steps, &f);
    }
    f
}
