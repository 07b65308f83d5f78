use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntegerMatrix;

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`.
///
/// Returns only the nonzero rows. Each pivot is positive, pivots move
/// strictly right going down, and entries above a pivot lie in `[0, pivot)`.
/// Two matrices span the same row lattice iff their forms are equal.
pub fn hermite_normal_form(a: &IntegerMatrix) -> IntegerMatrix {
    let mut h = a.clone();
    let (m, n) = (h.rows(), h.cols());
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if !h[(i, c)].is_zero() && best.map_or(true, |b| h[(i, c)].abs() < h[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                done &= h[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        let p = h[(r, c)].clone();
        for i in 0..r {
            let q: BigInt = -h[(i, c)].div_floor(&p);
            h.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    h.select_rows(&(0..r).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_above_pivots() {
        let a = IntegerMatrix::from_rows(&[[2, 3, 1], [4, 1, 5]]);
        let h = hermite_normal_form(&a);
        assert_eq!(h, IntegerMatrix::from_rows(&[[2, 3, 1], [0, 5, -3]]));
    }

    #[test]
    fn same_lattice_same_form() {
        let a = IntegerMatrix::from_rows(&[[1, 2], [3, 4]]);
        let b = IntegerMatrix::from_rows(&[[4, 6], [1, 2], [2, 2]]);
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
        assert_eq!(hermite_normal_form(&a), IntegerMatrix::from_rows(&[[1, 0], [0, 2]]));
    }

    #[test]
    fn drops_dependent_rows() {
        let a = IntegerMatrix::from_rows(&[[0, -3], [0, 6], [0, 0]]);
        assert_eq!(hermite_normal_form(&a), IntegerMatrix::from_rows(&[[0, 3]]));
        assert_eq!(hermite_normal_form(&IntegerMatrix::zeros(2, 3)).rows(), 0);
    }
}
