use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntMatrix, UnimodularMatrix};

/// Smith normal form `u · a · v = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: UnimodularMatrix,
    pub d: IntMatrix,
    pub v: UnimodularMatrix,
}

impl SnfDecomposition {
    /// The diagonal of `d`, including trailing zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn snf(a: &IntMatrix) -> SnfDecomposition {
    let rows = a.rows();
    let cols = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let Some((pr, pc)) = smallest_entry(&d, t) else {
            break;
        };
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if d[(r, t)].is_zero() {
                    continue;
                }
                let q = d[(r, t)].div_floor(&d[(t, t)]);
                d.sub_row_multiple(r, t, &q);
                u.sub_row_multiple(r, t, &q);
                if !d[(r, t)].is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..cols {
                if d[(t, c)].is_zero() {
                    continue;
                }
                let q = d[(t, c)].div_floor(&d[(t, t)]);
                d.sub_col_multiple(c, t, &q);
                v.sub_col_multiple(c, t, &q);
                if !d[(t, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // Divisibility: fold any offending row into the pivot row and retry.
                let offender = (t + 1..rows).find(|&r| {
                    (t + 1..cols).any(|c| !d[(r, c)].is_multiple_of(&d[(t, t)]))
                });
                match offender {
                    None => break,
                    Some(r) => {
                        let minus_one = BigInt::from(-1);
                        d.sub_row_multiple(t, r, &minus_one);
                        u.sub_row_multiple(t, r, &minus_one);
                    }
                }
            }
            // Move the smallest entry of row/column t back onto the diagonal.
            let mut best = (t, t);
            for r in t..rows {
                if !d[(r, t)].is_zero() && d[(r, t)].abs() < d[best].abs() {
                    best = (r, t);
                }
            }
            for c in t..cols {
                if !d[(t, c)].is_zero() && d[(t, c)].abs() < d[best].abs() {
                    best = (t, c);
                }
            }
            if best.0 != t {
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
            } else if best.1 != t {
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SnfDecomposition {
        u: UnimodularMatrix::trusted(u),
        d,
        v: UnimodularMatrix::trusted(v),
    }
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..d.rows() {
        for c in t..d.cols() {
            if d[(r, c)].is_zero() {
                continue;
            }
            if best.is_none_or(|b| d[(r, c)].abs() < d[b].abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}
