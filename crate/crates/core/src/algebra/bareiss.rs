//! Fraction-free elimination for rational matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{common_denominator, Rationals};
use super::matrix::Matrix;

/// Rows scaled to integers; row scaling preserves rank and only rescales
/// the determinant by a known factor.
fn integer_rows(m: &Matrix<Rationals>) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = (0..m.rows())
        .map(|i| {
            let d = common_denominator(m.row(i).iter());
            scale *= &d;
            m.row(i).iter().map(|x| (x * &d).to_integer()).collect()
        })
        .collect();
    (rows, scale)
}

/// Echelon elimination; returns the rank and, for square input, the sign
/// adjusted last pivot (which equals the integer determinant).
fn eliminate(mut a: Vec<Vec<BigInt>>, cols: usize) -> (usize, BigInt, bool) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut negate = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            negate = !negate;
        }
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    (r, prev, negate)
}

pub fn rank(m: &Matrix<Rationals>) -> usize {
    let (rows, _) = integer_rows(m);
    eliminate(rows, m.cols()).0
}

pub fn det(m: &Matrix<Rationals>) -> Option<BigRational> {
    let n = m.rows();
    if n == 0 {
        return Some(BigRational::one());
    }
    let (rows, scale) = integer_rows(m);
    let (r, last, negate) = eliminate(rows, n);
    if r < n {
        return Some(BigRational::zero());
    }
    let d = BigRational::new(last, scale);
    Some(if negate { -d } else { d })
}
