//! Post-addition schedules with greedy sharing of common additions.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::scalar::{Constant, Scalar};

/// An operand of the post-addition stage.
///
/// The derived ordering fixes every tie-break, so a schedule is a pure
/// function of its input rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Term {
    /// Column `j` of the terminal state, scaled by its constant if it has one.
    Terminal(usize),
    /// A shared partial sum created by the scheduler.
    Shared(usize),
    /// A special-addition term `S_index(layer)`.
    Special { layer: usize, index: usize },
}

/// `Shared(k) = lhs + sign * rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SharedSum {
    pub lhs: Term,
    pub sign: i8,
    pub rhs: Term,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Schedule {
    pub n: usize,
    pub product_layer: usize,
    pub pre_additions: usize,
    /// Constant applied to each terminal column; `None` for unit columns.
    pub multipliers: Vec<Option<f64>>,
    pub shared: Vec<SharedSum>,
    /// Per output: terms in ascending order with integer coefficients.
    pub outputs: Vec<Vec<(Term, i32)>>,
}

impl Schedule {
    /// Build a schedule by repeatedly extracting the most frequent signed
    /// pair of unit-coefficient terms. Ties go to the smallest pair.
    pub fn greedy(
        n: usize,
        product_layer: usize,
        pre_additions: usize,
        multipliers: Vec<Option<f64>>,
        rows: Vec<BTreeMap<Term, i32>>,
    ) -> Self {
        let mut rows = rows;
        let mut shared = Vec::new();
        loop {
            let mut counts: BTreeMap<(Term, Term, i8), usize> = BTreeMap::new();
            for row in &rows {
                let units: Vec<(Term, i32)> = row
                    .iter()
                    .filter(|(_, c)| c.abs() == 1)
                    .map(|(&t, &c)| (t, c))
                    .collect();
                for (i, &(a, ca)) in units.iter().enumerate() {
                    for &(b, cb) in &units[i + 1..] {
                        *counts.entry((a, b, (ca * cb) as i8)).or_default() += 1;
                    }
                }
            }
            let Some(best) = counts.values().copied().max() else {
                break;
            };
            if best < 2 {
                break;
            }
            let (a, b, sign) = *counts
                .iter()
                .find(|(_, &c)| c == best)
                .map(|(k, _)| k)
                .expect("maximum exists");
            let t = Term::Shared(shared.len());
            shared.push(SharedSum {
                lhs: a,
                sign,
                rhs: b,
            });
            for row in &mut rows {
                let (Some(&ca), Some(&cb)) = (row.get(&a), row.get(&b)) else {
                    continue;
                };
                if ca.abs() == 1 && cb == i32::from(sign) * ca {
                    row.remove(&a);
                    row.remove(&b);
                    row.insert(t, ca);
                }
            }
        }
        Self {
            n,
            product_layer,
            pre_additions,
            multipliers,
            shared,
            outputs: rows.into_iter().map(|r| r.into_iter().collect()).collect(),
        }
    }

    pub fn post_additions(&self) -> usize {
        self.shared.len()
            + self
                .outputs
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|(_, c)| c.unsigned_abs() as usize)
                        .sum::<usize>()
                        - 1
                })
                .sum::<usize>()
    }

    pub fn additions(&self) -> usize {
        self.pre_additions + self.post_additions()
    }

    pub fn multiplications(&self) -> usize {
        self.multipliers.iter().filter(|m| m.is_some()).count()
    }

    /// Evaluate the post-addition stage given `S(0) ..= S(product_layer)`.
    pub fn evaluate<T: Scalar>(&self, states: &[Vec<T>]) -> Vec<T> {
        let constants: Vec<Constant> = self
            .multipliers
            .iter()
            .flatten()
            .map(|&c| Constant::new("derived", c))
            .collect();
        self.evaluate_with(states, &constants)
    }

    /// Like [`Schedule::evaluate`] but with the given constants, one per
    /// scaled column in column order.
    ///
    /// Panics if the count differs or a constant is more than `1e-12` away
    /// from the derived value.
    pub fn evaluate_with<T: Scalar>(&self, states: &[Vec<T>], constants: &[Constant]) -> Vec<T> {
        assert_eq!(constants.len(), self.multiplications(), "constant count");
        let mut next = constants.iter();
        let terminal: Vec<T> = states[self.product_layer]
            .iter()
            .zip(&self.multipliers)
            .map(|(&x, m)| match m {
                Some(c) => {
                    let k = *next.next().expect("counted");
                    assert!((k.value - c).abs() <= 1e-12, "{} differs from {c}", k.name);
                    x.scale(k)
                }
                None => x,
            })
            .collect();
        let mut shared: Vec<T> = Vec::with_capacity(self.shared.len());
        let fetch = |t: Term, shared: &[T]| match t {
            Term::Terminal(j) => terminal[j],
            Term::Shared(k) => shared[k],
            Term::Special { layer, index } => states[layer][index],
        };
        for s in &self.shared {
            let (a, b) = (fetch(s.lhs, &shared), fetch(s.rhs, &shared));
            shared.push(if s.sign > 0 { a + b } else { a - b });
        }
        self.outputs
            .iter()
            .map(|row| {
                let mut acc: Option<T> = None;
                for &(t, c) in row {
                    let x = fetch(t, &shared);
                    for _ in 0..c.abs() {
                        acc = Some(match (acc, c > 0) {
                            (None, true) => x,
                            (None, false) => -x,
                            (Some(a), true) => a + x,
                            (Some(a), false) => a - x,
                        });
                    }
                }
                acc.expect("every output has a term")
            })
            .collect()
    }

    fn name(&self, t: Term) -> String {
        match t {
            Term::Terminal(j) if self.multipliers[j].is_some() => format!("p{j}"),
            Term::Terminal(j) => format!("s{}[{j}]", self.product_layer),
            Term::Shared(k) => format!("t{k}"),
            Term::Special { layer, index } => format!("s{layer}[{index}]"),
        }
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "// N={}: {} pre-additions, {} post-additions, {} multiplications",
            self.n,
            self.pre_additions,
            self.post_additions(),
            self.multiplications()
        )?;
        for (j, m) in self.multipliers.iter().enumerate() {
            if let Some(c) = m {
                writeln!(f, "p{j} = s{}[{j}] * {c:?}", self.product_layer)?;
            }
        }
        for (k, s) in self.shared.iter().enumerate() {
            let op = if s.sign > 0 { '+' } else { '-' };
            writeln!(f, "t{k} = {} {op} {}", self.name(s.lhs), self.name(s.rhs))?;
        }
        for (i, row) in self.outputs.iter().enumerate() {
            let mut line = String::new();
            for &(t, c) in row {
                for _ in 0..c.abs() {
                    match (line.is_empty(), c > 0) {
                        (true, true) => {}
                        (true, false) => line.push('-'),
                        (false, true) => line.push_str(" + "),
                        (false, false) => line.push_str(" - "),
                    }
                    line.push_str(&self.name(t));
                }
            }
            writeln!(f, "out[{i}] = {line}")?;
        }
        Ok(())
    }
}
