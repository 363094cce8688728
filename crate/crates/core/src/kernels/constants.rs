//! Multipliers used by the fast kernels.
//!
//! Every value below is the f64 nearest to its closed form and is checked
//! against the derived residual matrices in the derivation tests.

use crate::scalar::Constant;

/// √2, applied to `S_5(1)` and `S_7(1)` of the 8-point kernel.
pub const SQRT_2: Constant = Constant::new("√2", std::f64::consts::SQRT_2);

/// (√3 − 1)/2 ≈ 0.366.
pub const SQRT3_MINUS_ONE_HALF: Constant = Constant::new("(√3 - 1)/2", 0.36602540378443865);

/// √6/2 ≈ 1.2247.
pub const SQRT6_HALF: Constant = Constant::new("√6/2", 1.224744871391589);

/// √2/4 ≈ 0.3536.
pub const SQRT2_QUARTER: Constant = Constant::new("√2/4", 0.3535533905932738);

/// 3√2/4 ≈ 1.0607.
pub const THREE_SQRT2_QUARTER: Constant = Constant::new("3√2/4", 1.0606601717798212);

/// Constants of each kernel, in the order they are applied.
pub fn kernel_constants(id: super::KernelId) -> &'static [Constant] {
    use super::KernelId::*;
    match id {
        N4 => &[],
        N8 => &[SQRT_2, SQRT_2],
        N12 => &[SQRT3_MINUS_ONE_HALF; 4],
        N24 => &super::dht24::CONSTANTS,
    }
}
