//! Exact nullspaces by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact_series::ExactRational;

/// Scales a rational row to integers by the lcm of its denominators.
fn integer_row(row: &[ExactRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in row {
        lcm = lcm.lcm(c.denom());
    }
    row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

/// Row-echelon form over the integers. Returns the reduced rows and the
/// pivot column of each.
pub(crate) fn bareiss_echelon(
    mut m: Vec<Vec<BigInt>>,
    ncols: usize,
) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// A basis of `{v : M v = 0}`, one vector per free column, each with a 1 in
/// its own free column and 0 in the others (the reduced-echelon basis).
pub fn nullspace(rows: &[Vec<ExactRational>], ncols: usize) -> Vec<Vec<ExactRational>> {
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .map(|r| integer_row(r))
        .collect();
    let (echelon, pivots) = bareiss_echelon(int_rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![ExactRational::zero(); ncols];
            v[f] = ExactRational::one();
            for (row, &p) in echelon.iter().zip(&pivots).rev() {
                let mut acc = ExactRational::zero();
                for j in p + 1..ncols {
                    if !row[j].is_zero() && !v[j].is_zero() {
                        acc += &v[j] * ExactRational::from(row[j].clone());
                    }
                }
                v[p] = -acc / ExactRational::from(row[p].clone());
            }
            v
        })
        .collect()
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<ExactRational>], ncols: usize) -> usize {
    ncols - nullspace(rows, ncols).len()
}
