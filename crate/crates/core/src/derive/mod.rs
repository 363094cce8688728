//! Derivation of the fast kernels from the DHT matrix.
//!
//! The pre-addition layers of a kernel compose to a matrix `P_k`. The
//! residual `T(k) = H·P_k⁻¹` is what still has to be applied after layer
//! `k`; special additions strip integer parts off the residual so that it
//! factors into a few constant multiplications followed by additions.

mod alphabet;
mod balance;
mod exact;
mod plan;
mod schedule;

use nalgebra::DMatrix;
use num_traits::ToPrimitive;

pub use alphabet::{entry_alphabet, identify_surd, nonunit, Surd, ALPHABET_TOL};
pub use balance::{balance_for_pairs, balance_split, SpecialAdditionVector, SpecialTerm};
pub use plan::{
    derive_plan, derive_plan_at, verify_decomposition, ConstantSite, DecompositionReport,
    DerivedPlan, Stage, DECOMPOSITION_TOL,
};
pub use schedule::{Schedule, SharedSum, Term};

use crate::error::{Error, Result};
use crate::kernels::{layers, KernelId, Layer, Node};
use crate::reference::dht_matrix;

/// Entries below this magnitude are flushed to zero after a matrix product.
pub(crate) const ZERO_TOL: f64 = 1e-12;

/// The integer matrix of a single layer: `S(k) = Q_k·S(k-1)`.
pub fn layer_matrix(layer: &Layer) -> DMatrix<i64> {
    let n = layer.len();
    let mut q = DMatrix::zeros(n, n);
    for (j, node) in layer.nodes.iter().enumerate() {
        match *node {
            Node::Copy(a) => q[(j, a)] = 1,
            Node::Sum(a, b) => {
                q[(j, a)] += 1;
                q[(j, b)] += 1;
            }
            Node::Diff(a, b) => {
                q[(j, a)] += 1;
                q[(j, b)] -= 1;
            }
        }
    }
    q
}

/// Cumulative pre-addition matrix `P_k` with `S(k) = P_k·v`.
#[derive(Debug, Clone, PartialEq)]
pub struct PreAdditionMatrix {
    pub id: KernelId,
    pub order: usize,
    pub entries: DMatrix<i64>,
}

impl PreAdditionMatrix {
    /// Exact determinant.
    pub fn determinant(&self) -> Result<i64> {
        let inv = self.exact_inverse()?;
        Ok(inv.determinant.to_integer())
    }

    pub fn inverse(&self) -> Result<DMatrix<f64>> {
        Ok(exact::to_f64(&self.exact_inverse()?.inverse))
    }

    fn exact_inverse(&self) -> Result<exact::ExactInverse> {
        exact::invert(&self.entries).map_err(|rows| Error::SingularLayer {
            n: self.id.blocklength(),
            order: self.order,
            rows,
        })
    }
}

fn check_order(id: KernelId, order: usize) -> Result<()> {
    if order > id.max_layer() {
        return Err(Error::InvalidOrder {
            n: id.blocklength(),
            order,
            max: id.max_layer(),
        });
    }
    Ok(())
}

/// Compose the first `order` layers of kernel `id`.
pub fn pre_addition_matrix(id: KernelId, order: usize) -> Result<PreAdditionMatrix> {
    check_order(id, order)?;
    let n = id.blocklength();
    let entries = layers::layers(id)[..order]
        .iter()
        .fold(DMatrix::identity(n, n), |p, layer| layer_matrix(layer) * p);
    Ok(PreAdditionMatrix { id, order, entries })
}

/// `T(k) = H·P_k⁻¹`, the part of the transform left after layer `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualMatrix {
    pub id: KernelId,
    pub order: usize,
    pub entries: DMatrix<f64>,
}

impl ResidualMatrix {
    pub fn alphabet(&self, tol: f64) -> Result<Vec<f64>> {
        entry_alphabet(&self.entries, tol)
    }
}

/// Residual before any special additions are taken out.
pub fn residual_matrix(id: KernelId, order: usize) -> Result<ResidualMatrix> {
    let p = pre_addition_matrix(id, order)?;
    let h = dht_matrix(id.blocklength())?;
    let entries = flush(h * p.inverse()?);
    Ok(ResidualMatrix { id, order, entries })
}

pub(crate) fn flush(mut m: DMatrix<f64>) -> DMatrix<f64> {
    m.iter_mut()
        .filter(|x| x.abs() < ZERO_TOL)
        .for_each(|x| *x = 0.0);
    m
}

pub(crate) fn to_f64(m: &DMatrix<i64>) -> DMatrix<f64> {
    m.map(|x| x.to_f64().expect("small integer"))
}
