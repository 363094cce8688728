//! Exact Gauss-Jordan inversion of small integer matrices.

use nalgebra::DMatrix;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};

pub(crate) struct ExactInverse {
    pub inverse: Vec<Vec<Rational64>>,
    pub determinant: Rational64,
}

/// Invert an integer matrix over the rationals.
///
/// On failure returns the columns for which no pivot could be found.
pub(crate) fn invert(m: &DMatrix<i64>) -> Result<ExactInverse, Vec<usize>> {
    let n = m.nrows();
    let mut a: Vec<Vec<Rational64>> = (0..n)
        .map(|r| {
            (0..2 * n)
                .map(|c| {
                    if c < n {
                        Rational64::from_integer(m[(r, c)])
                    } else if c - n == r {
                        Rational64::one()
                    } else {
                        Rational64::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut det = Rational64::one();
    let mut missing = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            missing.push(col);
            continue;
        };
        if p != row {
            a.swap(p, row);
            det = -det;
        }
        let pivot = a[row][col];
        det *= pivot;
        for x in a[row].iter_mut() {
            *x /= pivot;
        }
        let pivot_row = a[row].clone();
        for (r, line) in a.iter_mut().enumerate() {
            if r != row && !line[col].is_zero() {
                let f = line[col];
                for (x, &y) in line.iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        row += 1;
    }
    if !missing.is_empty() {
        return Err(missing);
    }
    Ok(ExactInverse {
        inverse: a.into_iter().map(|line| line[n..].to_vec()).collect(),
        determinant: det,
    })
}

pub(crate) fn to_f64(m: &[Vec<Rational64>]) -> DMatrix<f64> {
    let n = m.len();
    DMatrix::from_fn(n, n, |r, c| m[r][c].to_f64().expect("small rational"))
}
