//! Entry alphabets and closed-form identification of derived constants.

use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default clustering tolerance.
pub const ALPHABET_TOL: f64 = 1e-9;

/// Distinct entry magnitudes of `m`, sorted ascending.
///
/// Magnitudes within `tol` of each other form one cluster; 0 and 1 are
/// reported exactly when a cluster lies within `tol` of them.
pub fn entry_alphabet(m: &DMatrix<f64>, tol: f64) -> Result<Vec<f64>> {
    let mut mags: Vec<f64> = m.iter().map(|x| x.abs()).collect();
    mags.sort_by(f64::total_cmp);
    let mut clusters: Vec<(f64, f64)> = Vec::new();
    for x in mags {
        match clusters.last_mut() {
            Some((lo, hi)) if x - *hi <= tol => {
                *hi = x;
                if *hi - *lo > tol {
                    return Err(Error::AmbiguousClustering {
                        a: *lo,
                        b: *hi,
                        tol,
                    });
                }
            }
            _ => clusters.push((x, x)),
        }
    }
    for w in clusters.windows(2) {
        if w[1].0 - w[0].1 < 2.0 * tol {
            return Err(Error::AmbiguousClustering {
                a: w[0].1,
                b: w[1].0,
                tol,
            });
        }
    }
    Ok(clusters
        .into_iter()
        .map(|(lo, hi)| {
            let rep = 0.5 * (lo + hi);
            if rep.abs() <= tol {
                0.0
            } else if (rep - 1.0).abs() <= tol {
                1.0
            } else {
                rep
            }
        })
        .collect())
}

/// Magnitudes other than 0 and 1.
pub fn nonunit(alphabet: &[f64]) -> Vec<f64> {
    alphabet
        .iter()
        .copied()
        .filter(|&x| x != 0.0 && x != 1.0)
        .collect()
}

/// `(a + b√2 + c√3 + d√6) / den`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Surd {
    pub rational: i64,
    pub sqrt2: i64,
    pub sqrt3: i64,
    pub sqrt6: i64,
    pub denominator: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Surd {
    pub fn value(&self) -> f64 {
        (self.rational as f64
            + self.sqrt2 as f64 * 2f64.sqrt()
            + self.sqrt3 as f64 * 3f64.sqrt()
            + self.sqrt6 as f64 * 6f64.sqrt())
            / self.denominator as f64
    }

    fn reduced(self) -> Self {
        let g = [
            self.rational,
            self.sqrt2,
            self.sqrt3,
            self.sqrt6,
            self.denominator,
        ]
        .into_iter()
        .fold(0, gcd);
        Self {
            rational: self.rational / g,
            sqrt2: self.sqrt2 / g,
            sqrt3: self.sqrt3 / g,
            sqrt6: self.sqrt6 / g,
            denominator: self.denominator / g,
        }
    }

    fn weight(&self) -> (usize, i64) {
        let c = [self.rational, self.sqrt2, self.sqrt3, self.sqrt6];
        (
            c.iter().filter(|&&x| x != 0).count(),
            c.iter().map(|x| x.abs()).sum(),
        )
    }
}

/// Closed form for `x` over `{1, √2, √3, √6}/4` with coefficients in -4..=4.
///
/// Picks the match within `1e-12` with the fewest terms.
pub fn identify_surd(x: f64) -> Option<Surd> {
    let range = -4..=4i64;
    let mut best: Option<Surd> = None;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    let s = Surd {
                        rational: a,
                        sqrt2: b,
                        sqrt3: c,
                        sqrt6: d,
                        denominator: 4,
                    };
                    if (s.value() - x).abs() > 1e-12 {
                        continue;
                    }
                    if best.is_none_or(|b| s.weight() < b.weight()) {
                        best = Some(s);
                    }
                }
            }
        }
    }
    best.map(Surd::reduced)
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, &str)> = [
            (self.sqrt2, "√2"),
            (self.sqrt3, "√3"),
            (self.sqrt6, "√6"),
            (self.rational, ""),
        ]
        .into_iter()
        .filter(|(c, _)| *c != 0)
        .collect();
        // lead with a positive term when there is one
        if let Some(pos) = terms.iter().position(|(c, _)| *c > 0) {
            terms.swap(0, pos);
            terms[1..].sort_by_key(|(_, s)| s.is_empty());
        }
        let mut body = String::new();
        for (i, (c, root)) in terms.iter().enumerate() {
            let mag = c.abs();
            let coef = if mag == 1 && !root.is_empty() {
                String::new()
            } else {
                mag.to_string()
            };
            if i == 0 {
                if *c < 0 {
                    body.push('-');
                }
            } else {
                body.push_str(if *c < 0 { " - " } else { " + " });
            }
            body.push_str(&coef);
            body.push_str(root);
        }
        if body.is_empty() {
            body.push('0');
        }
        match (self.denominator, terms.len() > 1) {
            (1, _) => write!(f, "{body}"),
            (d, true) => write!(f, "({body})/{d}"),
            (d, false) => write!(f, "{body}/{d}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::dht_matrix;

    #[test]
    fn alphabets_of_small_dht_matrices() {
        assert_eq!(
            entry_alphabet(&dht_matrix(4).unwrap(), ALPHABET_TOL).unwrap(),
            vec![1.0]
        );
        let a8 = entry_alphabet(&dht_matrix(8).unwrap(), ALPHABET_TOL).unwrap();
        assert_eq!(a8.len(), 3);
        assert_eq!(a8[0], 0.0);
        assert_eq!(a8[1], 1.0);
        assert!((a8[2] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn ambiguous_clusters_are_rejected() {
        let m = DMatrix::from_row_slice(1, 2, &[0.5, 0.5 + 1.5e-9]);
        assert!(matches!(
            entry_alphabet(&m, 1e-9),
            Err(Error::AmbiguousClustering { .. })
        ));
    }

    #[test]
    fn surds_render_in_lowest_terms() {
        let show = |x: f64| identify_surd(x).unwrap().to_string();
        assert_eq!(show((3f64.sqrt() - 1.0) / 2.0), "(√3 - 1)/2");
        assert_eq!(show(2f64.sqrt() / 2.0), "√2/2");
        assert_eq!(show(2f64.sqrt()), "√2");
        assert_eq!(show(6f64.sqrt() / 2.0), "√6/2");
        assert_eq!(show(3.0 * 2f64.sqrt() / 4.0), "3√2/4");
        assert_eq!(show(0.5), "1/2");
        assert!(identify_surd(std::f64::consts::PI).is_none());
    }
}
