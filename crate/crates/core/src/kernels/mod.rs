//! Fixed-size fast DHT kernels for N = 4, 8, 12 and 24.
//!
//! Each kernel is straight-line code over a generic [`Scalar`]: butterfly
//! pre-addition layers, a minimal set of constant multiplications, and
//! post-additions that include the special-addition corrections. Running a
//! kernel on [`crate::audit::CountingScalar`] reports its exact cost.

pub mod constants;
mod dht12;
mod dht24;
mod dht4;
mod dht8;
pub mod layers;

use serde::Serialize;

pub use dht12::dht12;
pub use dht24::dht24;
pub use dht4::dht4;
pub use dht8::dht8;
pub use layers::{Layer, Node};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::signal::{HartleySpectrum, RealSignal};

/// One of the four supported blocklengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum KernelId {
    N4,
    N8,
    N12,
    N24,
}

impl KernelId {
    pub const ALL: [KernelId; 4] = [KernelId::N4, KernelId::N8, KernelId::N12, KernelId::N24];

    pub fn blocklength(self) -> usize {
        match self {
            KernelId::N4 => 4,
            KernelId::N8 => 8,
            KernelId::N12 => 12,
            KernelId::N24 => 24,
        }
    }

    pub fn from_len(n: usize) -> Result<Self> {
        match n {
            4 => Ok(KernelId::N4),
            8 => Ok(KernelId::N8),
            12 => Ok(KernelId::N12),
            24 => Ok(KernelId::N24),
            len => Err(Error::UnsupportedLength { len }),
        }
    }

    /// Highest transcribed pre-addition layer.
    pub fn max_layer(self) -> usize {
        layers::layers(self).len()
    }

    /// Layer whose state feeds the constant multiplications.
    ///
    /// For N = 8 this is layer 1: multiplying layer-2 terms by √2/2 costs
    /// four extra additions.
    pub fn product_layer(self) -> usize {
        match self {
            KernelId::N8 => 1,
            other => other.max_layer(),
        }
    }
}

impl std::fmt::Display for KernelId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "N={}", self.blocklength())
    }
}

impl TryFrom<usize> for KernelId {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        Self::from_len(n)
    }
}

/// Evaluate one pre-addition layer.
#[inline(always)]
pub fn apply_layer<T: Scalar, const N: usize>(layer: &Layer, input: &[T; N]) -> [T; N] {
    debug_assert_eq!(layer.len(), N);
    std::array::from_fn(|j| match layer.nodes[j] {
        Node::Copy(a) => input[a],
        Node::Sum(a, b) => input[a] + input[b],
        Node::Diff(a, b) => input[a] - input[b],
    })
}

/// Pre-addition state `S(order)` for a kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerState {
    pub order: usize,
    pub values: Vec<f64>,
}

/// Compute `S(order)`; order 0 is the input itself.
pub fn pre_addition_state(v: &RealSignal, id: KernelId, order: usize) -> Result<LayerState> {
    check_len(v, id)?;
    let stack = layers::layers(id);
    if order > stack.len() {
        return Err(Error::InvalidOrder {
            n: id.blocklength(),
            order,
            max: stack.len(),
        });
    }
    let values = stack[..order]
        .iter()
        .fold(v.samples().to_vec(), |state, layer| {
            apply_layer_slice(layer, &state)
        });
    Ok(LayerState { order, values })
}

pub(crate) fn apply_layer_slice<T: Scalar>(layer: &Layer, input: &[T]) -> Vec<T> {
    layer
        .nodes
        .iter()
        .map(|node| match *node {
            Node::Copy(a) => input[a],
            Node::Sum(a, b) => input[a] + input[b],
            Node::Diff(a, b) => input[a] - input[b],
        })
        .collect()
}

fn check_len(v: &RealSignal, id: KernelId) -> Result<()> {
    if v.len() != id.blocklength() {
        KernelId::from_len(v.len())?;
        return Err(Error::LengthMismatch {
            expected: id.blocklength(),
            actual: v.len(),
        });
    }
    Ok(())
}

/// Run the kernel for `id` on an arbitrary scalar type.
///
/// Panics if `v.len()` differs from the blocklength.
pub fn run_kernel<T: Scalar>(id: KernelId, v: &[T]) -> Vec<T> {
    match id {
        KernelId::N4 => dht4(v.try_into().expect("length 4")).to_vec(),
        KernelId::N8 => dht8(v.try_into().expect("length 8")).to_vec(),
        KernelId::N12 => dht12(v.try_into().expect("length 12")).to_vec(),
        KernelId::N24 => dht24(v.try_into().expect("length 24")).to_vec(),
    }
}

/// Fast DHT through the fixed-size kernel for `id`.
pub fn fast_dht(v: &RealSignal, id: KernelId) -> Result<HartleySpectrum> {
    check_len(v, id)?;
    HartleySpectrum::new(run_kernel(id, v.samples()))
}

/// Fast DHT picking the kernel from the signal length.
pub fn fast_dht_auto(v: &RealSignal) -> Result<HartleySpectrum> {
    fast_dht(v, KernelId::from_len(v.len())?)
}

pub fn fast_dht4(v: &RealSignal) -> Result<HartleySpectrum> {
    fast_dht(v, KernelId::N4)
}

pub fn fast_dht8(v: &RealSignal) -> Result<HartleySpectrum> {
    fast_dht(v, KernelId::N8)
}

pub fn fast_dht12(v: &RealSignal) -> Result<HartleySpectrum> {
    fast_dht(v, KernelId::N12)
}

pub fn fast_dht24(v: &RealSignal) -> Result<HartleySpectrum> {
    fast_dht(v, KernelId::N24)
}
