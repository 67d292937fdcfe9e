use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntMatrix, UnimodularMatrix};

/// Row-style Hermite normal form `h = u · m`.
///
/// `h` is upper-triangular echelon: the nonzero rows come first, each pivot is
/// positive, and every entry above a pivot lies in `[0, pivot)`. Zero rows are
/// kept at the bottom so that `h` has the same shape as the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfDecomposition {
    pub h: IntMatrix,
    pub u: UnimodularMatrix,
    pub rank: usize,
    /// Column index of the pivot in each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

impl HnfDecomposition {
    /// The nonzero rows of `h`: a canonical basis of the row lattice.
    pub fn basis(&self) -> IntMatrix {
        self.h.select_rows(0..self.rank)
    }
}

pub fn hnf(m: &IntMatrix) -> HnfDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut pr = 0;

    for col in 0..cols {
        if pr == rows {
            break;
        }
        // Euclid on the column below the pivot row until a single nonzero remains.
        loop {
            let best = (pr..rows)
                .filter(|&r| !h[(r, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(pr, best);
            u.swap_rows(pr, best);
            let mut done = true;
            for r in pr + 1..rows {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = h[(r, col)].div_floor(&h[(pr, col)]);
                h.sub_row_multiple(r, pr, &q);
                u.sub_row_multiple(r, pr, &q);
                if !h[(r, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pr, col)].is_zero() {
            continue;
        }
        if h[(pr, col)].is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        let pivot = h[(pr, col)].clone();
        for r in 0..pr {
            let q = h[(r, col)].div_floor(&pivot);
            h.sub_row_multiple(r, pr, &q);
            u.sub_row_multiple(r, pr, &q);
        }
        pivots.push(col);
        pr += 1;
    }

    HnfDecomposition {
        h,
        u: UnimodularMatrix::trusted(u),
        rank: pr,
        pivots,
    }
}

/// Reduces `v` against an HNF basis. Returns the quotient coefficients when `v`
/// lies in the row lattice.
pub(crate) fn solve_in_lattice(
    basis: &IntMatrix,
    pivots: &[usize],
    v: &[BigInt],
) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coeffs = Vec::with_capacity(pivots.len());
    let mut checked = 0;
    for (i, &pc) in pivots.iter().enumerate() {
        if rest[checked..pc].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let (q, r) = rest[pc].div_rem(&basis[(i, pc)]);
        if !r.is_zero() {
            return None;
        }
        for (c, x) in rest.iter_mut().enumerate().skip(pc) {
            *x -= &q * &basis[(i, c)];
        }
        coeffs.push(q);
        checked = pc + 1;
    }
    if rest.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(coeffs)
}
