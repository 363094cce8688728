//! Special additions: integer corrections that balance a residual matrix.
//!
//! A residual `T` is split as `T = Z + T'` where `Z` has entries in
//! `{-1, 0, 1}`. The columns of `Z` refer to the state the residual is
//! applied to, so `Z·S(k)` is a handful of signed state terms added after
//! the products.

use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};

const TOL: f64 = 1e-9;

/// One signed state term `±S_index(layer)` attached to an output row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpecialTerm {
    pub row: usize,
    pub index: usize,
    pub sign: i8,
}

/// The nonzero entries of a special-addition matrix `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialAdditionVector {
    pub n: usize,
    /// Pre-addition layer whose state the terms reference.
    pub layer: usize,
    pub terms: Vec<SpecialTerm>,
}

impl SpecialAdditionVector {
    fn from_matrix(z: &DMatrix<i8>, layer: usize) -> Self {
        let mut terms = Vec::new();
        for r in 0..z.nrows() {
            for c in 0..z.ncols() {
                if z[(r, c)] != 0 {
                    terms.push(SpecialTerm {
                        row: r,
                        index: c,
                        sign: z[(r, c)],
                    });
                }
            }
        }
        Self {
            n: z.nrows(),
            layer,
            terms,
        }
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        let mut z = DMatrix::zeros(self.n, self.n);
        for t in &self.terms {
            z[(t.row, t.index)] = f64::from(t.sign);
        }
        z
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term attached to output row `row`, if any.
    pub fn for_row(&self, row: usize) -> impl Iterator<Item = &SpecialTerm> {
        self.terms.iter().filter(move |t| t.row == row)
    }
}

impl fmt::Display for SpecialAdditionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            let sign = if t.sign > 0 { '+' } else { '-' };
            writeln!(f, "V{} -> {sign}S{}({})", t.row, t.index, self.layer)?;
        }
        Ok(())
    }
}

/// Split off the integer part of every entry with magnitude above one.
///
/// Entries in `(1, 2)` lose `sign(x)`; exact `±1` entries stay. Anything at
/// or beyond 2 cannot be fixed by a `{-1, 0, 1}` correction.
pub fn balance_split(
    t: &DMatrix<f64>,
    layer: usize,
) -> Result<(SpecialAdditionVector, DMatrix<f64>)> {
    let mut bad = Vec::new();
    let z = DMatrix::from_fn(t.nrows(), t.ncols(), |r, c| {
        let x = t[(r, c)];
        let m = x.abs();
        if m <= 1.0 + TOL {
            0
        } else if m < 2.0 - TOL {
            x.signum() as i8
        } else {
            bad.push((r, c, x));
            0
        }
    });
    if !bad.is_empty() {
        return Err(Error::NoValidSplit { entries: bad });
    }
    Ok(finish(t, &z, layer))
}

/// Choose `Z` so that every butterfly pair `(a, b)` of the next layer sees
/// equal magnitudes in each row of `T - Z`.
///
/// Per row and pair the cheapest correction wins: fewest nonzeros first,
/// then the smallest remaining magnitude. Pairs that are already balanced,
/// or that no integer correction can balance, are left alone.
pub fn balance_for_pairs(
    t: &DMatrix<f64>,
    pairs: &[(usize, usize)],
    layer: usize,
) -> (SpecialAdditionVector, DMatrix<f64>) {
    const CHOICES: [i8; 3] = [0, 1, -1];
    let mut z = DMatrix::<i8>::zeros(t.nrows(), t.ncols());
    for r in 0..t.nrows() {
        for &(a, b) in pairs {
            let (x, y) = (t[(r, a)], t[(r, b)]);
            let mut best: Option<((usize, f64), (i8, i8))> = None;
            for za in CHOICES {
                for zb in CHOICES {
                    let (xa, yb) = (x - f64::from(za), y - f64::from(zb));
                    if (xa.abs() - yb.abs()).abs() > TOL {
                        continue;
                    }
                    let key = (usize::from(za != 0) + usize::from(zb != 0), xa.abs());
                    if best.is_none_or(|(k, _)| key < k) {
                        best = Some((key, (za, zb)));
                    }
                }
            }
            if let Some((_, (za, zb))) = best {
                z[(r, a)] = za;
                z[(r, b)] = zb;
            }
        }
    }
    finish(t, &z, layer)
}

fn finish(
    t: &DMatrix<f64>,
    z: &DMatrix<i8>,
    layer: usize,
) -> (SpecialAdditionVector, DMatrix<f64>) {
    let rest = DMatrix::from_fn(t.nrows(), t.ncols(), |r, c| {
        t[(r, c)] - f64::from(z[(r, c)])
    });
    (SpecialAdditionVector::from_matrix(z, layer), rest)
}
