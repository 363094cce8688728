//! From the DHT matrix to a complete kernel plan.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::Serialize;

use super::alphabet::{entry_alphabet, identify_surd, ALPHABET_TOL};
use super::balance::{balance_for_pairs, SpecialAdditionVector};
use super::schedule::{Schedule, Term};
use super::{exact, flush, layer_matrix, pre_addition_matrix, to_f64};
use crate::error::{Error, Result};
use crate::kernels::{apply_layer_slice, layers, KernelId};
use crate::reference::dht_matrix;

/// Residual after layer `order`, with its special additions taken out.
#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub order: usize,
    /// Alphabet of the residual before balancing.
    pub alphabet: Vec<f64>,
    pub special: SpecialAdditionVector,
    /// Residual after balancing.
    pub balanced: DMatrix<f64>,
}

/// A terminal column scaled by a nonunit constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantSite {
    pub column: usize,
    pub value: f64,
    pub closed_form: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivedPlan {
    pub id: KernelId,
    pub product_layer: usize,
    /// Stages `0..=product_layer`; the last one is never balanced.
    pub stages: Vec<Stage>,
    /// Integer post-addition matrix `A` with terminal residual `A·D`.
    pub post: DMatrix<i64>,
    pub constants: Vec<ConstantSite>,
    pub schedule: Schedule,
}

impl DerivedPlan {
    pub fn additions(&self) -> usize {
        self.schedule.additions()
    }

    pub fn multiplications(&self) -> usize {
        self.constants.len()
    }

    pub fn special_additions(&self) -> usize {
        self.stages.iter().map(|s| s.special.nnz()).sum()
    }

    /// Distinct nonunit constant magnitudes, ascending.
    pub fn constant_alphabet(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.constants.iter().map(|c| c.value.abs()).collect();
        v.sort_by(f64::total_cmp);
        v.dedup_by(|a, b| (*a - *b).abs() <= ALPHABET_TOL);
        v
    }

    /// Diagonal `D`: the constant per terminal column, 1 for unit columns.
    pub fn diagonal(&self) -> Vec<f64> {
        let mut d = vec![1.0; self.id.blocklength()];
        for c in &self.constants {
            d[c.column] = c.value;
        }
        d
    }
}

/// Plan for the kernel's own product layer.
pub fn derive_plan(id: KernelId) -> Result<DerivedPlan> {
    derive_plan_at(id, id.product_layer())
}

/// Plan that applies the constants after layer `product_layer`.
///
/// At every earlier layer the residual is balanced against the butterfly
/// pairs of the next layer, so each constant multiplies a single state term.
pub fn derive_plan_at(id: KernelId, product_layer: usize) -> Result<DerivedPlan> {
    pre_addition_matrix(id, product_layer)?;
    let n = id.blocklength();
    let stack = layers::layers(id);
    let mut t = dht_matrix(n)?;
    let mut stages = Vec::with_capacity(product_layer + 1);
    for (k, layer) in stack[..product_layer].iter().enumerate() {
        let alphabet = entry_alphabet(&t, ALPHABET_TOL)?;
        let (special, balanced) = balance_for_pairs(&t, &layer.pairs(), k);
        let q = exact::invert(&layer_matrix(layer)).map_err(|rows| Error::SingularLayer {
            n,
            order: k + 1,
            rows,
        })?;
        t = flush(&balanced * exact::to_f64(&q.inverse));
        stages.push(Stage {
            order: k,
            alphabet,
            special,
            balanced,
        });
    }
    stages.push(Stage {
        order: product_layer,
        alphabet: entry_alphabet(&t, ALPHABET_TOL)?,
        special: SpecialAdditionVector {
            n,
            layer: product_layer,
            terms: Vec::new(),
        },
        balanced: t.clone(),
    });

    let (post, diagonal) = factor_columns(&t)?;
    let constants: Vec<ConstantSite> = diagonal
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_some())
        .map(|(column, d)| {
            let value = d.expect("filtered");
            ConstantSite {
                column,
                value,
                closed_form: identify_surd(value).map(|s| s.to_string()),
            }
        })
        .collect();

    let mut rows: Vec<BTreeMap<Term, i32>> = vec![BTreeMap::new(); n];
    for (r, row) in rows.iter_mut().enumerate() {
        for j in 0..n {
            if post[(r, j)] != 0 {
                row.insert(Term::Terminal(j), post[(r, j)] as i32);
            }
        }
        for stage in &stages {
            for term in stage.special.for_row(r) {
                let key = Term::Special {
                    layer: stage.order,
                    index: term.index,
                };
                *row.entry(key).or_default() += i32::from(term.sign);
            }
        }
        row.retain(|_, c| *c != 0);
    }
    let pre_additions = stack[..product_layer].iter().map(|l| l.additions()).sum();
    let schedule = Schedule::greedy(n, product_layer, pre_additions, diagonal, rows);
    Ok(DerivedPlan {
        id,
        product_layer,
        stages,
        post,
        constants,
        schedule,
    })
}

/// Factor `T = A·D` with integer `A`; `D_j` is the smallest nonunit
/// magnitude in column `j`, absent when the column only holds 0 and ±1.
fn factor_columns(t: &DMatrix<f64>) -> Result<(DMatrix<i64>, Vec<Option<f64>>)> {
    let n = t.ncols();
    let mut a = DMatrix::zeros(t.nrows(), n);
    let mut diagonal = Vec::with_capacity(n);
    for j in 0..n {
        let col = t.column(j);
        let d = col
            .iter()
            .map(|x| x.abs())
            .filter(|&m| m > ALPHABET_TOL && (m - 1.0).abs() > ALPHABET_TOL)
            .min_by(f64::total_cmp);
        let scale = d.unwrap_or(1.0);
        for r in 0..t.nrows() {
            let q = t[(r, j)] / scale;
            let k = q.round();
            if (q - k).abs() > 1e-9 {
                return Err(Error::MixedColumn { column: j });
            }
            a[(r, j)] = k as i64;
        }
        diagonal.push(d);
    }
    Ok((a, diagonal))
}

/// Outcome of reassembling the transform from a derived plan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub product_layer: usize,
    /// `max |H - (A·D·P_L + Σ Z_k·P_k)|`.
    pub matrix_error: f64,
    /// `max |H - schedule(basis)|` over all basis vectors.
    pub schedule_error: f64,
    pub additions: usize,
    pub multiplications: usize,
    pub special_additions: usize,
    pub constant_alphabet: Vec<f64>,
    pub constants: Vec<ConstantSite>,
    pub stage_alphabets: Vec<Vec<f64>>,
    pub passed: bool,
}

pub const DECOMPOSITION_TOL: f64 = 1e-10;

/// Reassemble `H` from the plan of kernel `id` and compare.
pub fn verify_decomposition(id: KernelId) -> Result<(bool, DecompositionReport)> {
    let plan = derive_plan(id)?;
    let n = id.blocklength();
    let h = dht_matrix(n)?;

    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(plan.diagonal()));
    let p_last = to_f64(&pre_addition_matrix(id, plan.product_layer)?.entries);
    let mut rebuilt = to_f64(&plan.post) * d * p_last;
    for stage in &plan.stages {
        let p = to_f64(&pre_addition_matrix(id, stage.order)?.entries);
        rebuilt += stage.special.to_matrix() * p;
    }
    let matrix_error = (&rebuilt - &h).amax();

    let stack = layers::layers(id);
    let mut schedule_error = 0.0f64;
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        let mut states = vec![e];
        for layer in &stack[..plan.product_layer] {
            let next = apply_layer_slice(layer, states.last().expect("nonempty"));
            states.push(next);
        }
        let out = plan.schedule.evaluate(&states);
        for (k, y) in out.iter().enumerate() {
            schedule_error = schedule_error.max((y - h[(k, i)]).abs());
        }
    }

    let report = DecompositionReport {
        n,
        product_layer: plan.product_layer,
        matrix_error,
        schedule_error,
        additions: plan.additions(),
        multiplications: plan.multiplications(),
        special_additions: plan.special_additions(),
        constant_alphabet: plan.constant_alphabet(),
        constants: plan.constants.clone(),
        stage_alphabets: plan.stages.iter().map(|s| s.alphabet.clone()).collect(),
        passed: matrix_error <= DECOMPOSITION_TOL && schedule_error <= DECOMPOSITION_TOL,
    };
    Ok((report.passed, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derive::SpecialTerm;

    #[test]
    fn derived_costs() {
        let cost = |id, l| {
            let p = derive_plan_at(id, l).unwrap();
            (p.additions(), p.multiplications())
        };
        assert_eq!(cost(KernelId::N4, 0), (8, 0));
        assert_eq!(cost(KernelId::N8, 1), (22, 2));
        assert_eq!(cost(KernelId::N8, 2), (26, 2));
        assert_eq!(cost(KernelId::N12, 3), (52, 4));
        assert_eq!(cost(KernelId::N24, 4), (138, 12));
    }

    #[test]
    fn n12_special_additions() {
        let plan = derive_plan(KernelId::N12).unwrap();
        let terms: Vec<(usize, usize, i8)> = plan
            .stages
            .iter()
            .flat_map(|s| s.special.terms.iter())
            .map(|t| (t.row, t.index, t.sign))
            .collect();
        assert_eq!(
            terms,
            vec![
                (1, 6, 1),
                (2, 5, 1),
                (4, 8, -1),
                (5, 11, -1),
                (7, 7, -1),
                (8, 4, -1),
                (10, 9, -1),
                (11, 10, -1)
            ]
        );
        assert!(plan
            .stages
            .iter()
            .all(|s| s.special.is_empty() || s.order == 2));
    }

    #[test]
    fn n12_rules_agree() {
        let plan = derive_plan(KernelId::N12).unwrap();
        let raw = crate::derive::residual_matrix(KernelId::N12, 2).unwrap();
        let (z, _) = crate::derive::balance_split(&raw.entries, 2).unwrap();
        assert_eq!(z, plan.stages[2].special);
    }

    #[test]
    fn n24_special_additions_split_by_parity() {
        let plan = derive_plan(KernelId::N24).unwrap();
        let by_layer = |k: usize| -> Vec<SpecialTerm> { plan.stages[k].special.terms.clone() };
        assert!(by_layer(0).is_empty() && by_layer(1).is_empty() && by_layer(4).is_empty());
        assert_eq!(by_layer(2).len(), 8);
        assert_eq!(by_layer(3).len(), 8);
        assert!(by_layer(2).iter().all(|t| t.row % 2 == 1));
        assert!(by_layer(3).iter().all(|t| t.row % 2 == 0));
    }

    #[test]
    fn constants_have_closed_forms() {
        let forms = |id, l| -> Vec<String> {
            derive_plan_at(id, l)
                .unwrap()
                .constants
                .into_iter()
                .map(|c| c.closed_form.unwrap())
                .collect()
        };
        assert_eq!(forms(KernelId::N8, 1), ["√2", "√2"]);
        assert_eq!(forms(KernelId::N8, 2), ["√2/2", "√2/2"]);
        assert_eq!(forms(KernelId::N12, 3), vec!["(√3 - 1)/2"; 4]);
        let n24 = forms(KernelId::N24, 4);
        let count = |s: &str| n24.iter().filter(|f| *f == s).count();
        assert_eq!(count("(√3 - 1)/2"), 6);
        assert_eq!(count("√6/2"), 2);
        assert_eq!(count("√2/4"), 2);
        assert_eq!(count("3√2/4"), 2);
    }

    #[test]
    fn balancing_is_exact() {
        for id in KernelId::ALL {
            let n = id.blocklength();
            let stack = layers::layers(id);
            let mut t = dht_matrix(n).unwrap();
            for (k, layer) in stack[..id.product_layer()].iter().enumerate() {
                let (z, rest) = balance_for_pairs(&t, &layer.pairs(), k);
                assert_eq!(z.to_matrix() + &rest, t, "{id} stage {k}");
                let q = exact::invert(&layer_matrix(layer)).ok().unwrap();
                t = flush(&rest * exact::to_f64(&q.inverse));
            }
        }
    }

    #[test]
    fn every_kernel_decomposes() {
        for id in KernelId::ALL {
            let (ok, report) = verify_decomposition(id).unwrap();
            assert!(ok, "{id}: {report:?}");
        }
    }

    #[test]
    fn mixed_columns_are_rejected() {
        let t = DMatrix::from_row_slice(2, 1, &[0.5, 0.7]);
        assert_eq!(factor_columns(&t), Err(Error::MixedColumn { column: 0 }));
    }
}
