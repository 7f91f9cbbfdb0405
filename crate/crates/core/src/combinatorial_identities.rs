//! Combinatorial counterparts of the closed forms: continued-fraction
//! convergents, the reflection formula and the cycle lemma.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exact_series::{binomial, ExactRational, Series};
use crate::walk_engine::{dense_to_map, CountTable, DpRows, StepSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityError {
    #[error("gcd({r}, {s}) is not 1")]
    NotCoprime { r: u64, s: u64 },
    #[error("r + s = {0} exceeds the exhaustion bound {CYCLE_BRUTE_LIMIT}")]
    TooLarge(u64),
}

/// Largest `r + s` that [`cycle_brute`] will enumerate.
pub const CYCLE_BRUTE_LIMIT: u64 = 22;

/// The `k`-th convergent `F_k = 1/(1 - t^2 F_{k-1})`, `F_0 = 1`: the
/// generating function of excursions of height at most `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convergent {
    pub k: usize,
    pub series: Series,
}

pub fn cf_convergent(k: usize, order: usize) -> Convergent {
    let one = Series::one(order);
    let mut f = one.clone();
    for _ in 0..k {
        f = (&one - &f.mul_t_pow(2))
            .inverse()
            .expect("constant term is 1");
    }
    Convergent { k, series: f }
}

/// `f(i;n)` for walks confined to `{0, ..., k}`.
pub fn bounded_dp(k: usize, max_len: usize) -> CountTable {
    let rows = DpRows::new(&StepSet::simple(), Some(k))
        .take(max_len + 1)
        .map(|r| dense_to_map(&r))
        .collect();
    CountTable::from_rows(rows)
}

fn reflection_parts(i: i64, n: i64) -> Option<i64> {
    if i < 0 || n < 0 || i > n || (n - i) % 2 != 0 {
        None
    } else {
        Some((n - i) / 2)
    }
}

/// `f(i;n) = C(n, (n-i)/2) - C(n, (n-i-2)/2)`, zero off the lattice.
pub fn reflection_count(i: i64, n: i64) -> ExactRational {
    let Some(k) = reflection_parts(i, n) else {
        return ExactRational::from(0);
    };
    let diff = ExactRational::from(binomial(n, k) - binomial(n, k - 1));
    debug_assert_eq!(diff, reflection_ratio_form(i, n));
    diff
}

/// The product form `2(i+1)/(n+i+2) * C(n, (n-i)/2)` of the same count.
pub fn reflection_ratio_form(i: i64, n: i64) -> ExactRational {
    let Some(k) = reflection_parts(i, n) else {
        return ExactRational::from(0);
    };
    ExactRational::new(
        BigInt::from(2 * (i + 1)) * binomial(n, k),
        BigInt::from(n + i + 2),
    )
}

fn check_coprime(r: u64, s: u64) -> Result<(), IdentityError> {
    if r.gcd(&s) != 1 {
        return Err(IdentityError::NotCoprime { r, s });
    }
    Ok(())
}

/// Lattice paths from `(0,0)` to `(r,s)` with unit east/north steps that stay
/// weakly below the line `r y = s x`: `(1/(r+s)) C(r+s, s)`.
pub fn cycle_count(r: u64, s: u64) -> Result<ExactRational, IdentityError> {
    check_coprime(r, s)?;
    let total = (r + s) as i64;
    let value = ExactRational::new(binomial(total, s as i64), BigInt::from(total));
    debug_assert!(value.is_integer());
    Ok(value)
}

/// [`cycle_count`] by enumerating all `C(r+s, s)` step sequences.
pub fn cycle_brute(r: u64, s: u64) -> Result<ExactRational, IdentityError> {
    if r + s > CYCLE_BRUTE_LIMIT {
        return Err(IdentityError::TooLarge(r + s));
    }
    check_coprime(r, s)?;
    let len = (r + s) as u32;
    let mut count = 0u64;
    // Bit k set means step k is north. Walk the masks with exactly s bits (Gosper).
    let mut mask: u64 = (1u64 << s) - 1;
    let limit = 1u64 << len;
    while mask < limit {
        let (mut a, mut b) = (0i64, 0i64);
        let mut below = true;
        for k in 0..len {
            if mask >> k & 1 == 1 {
                b += 1;
            } else {
                a += 1;
            }
            if r as i64 * b > s as i64 * a {
                below = false;
                break;
            }
        }
        if below {
            count += 1;
        }
        if mask == 0 {
            break;
        }
        let low = mask & mask.wrapping_neg();
        let ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
    Ok(ExactRational::from(count))
}
