use std::ops::{Add, Neg, Sub};

/// A named multiplier used inside a kernel.
///
/// Whether a multiplication counts toward the kernel cost is decided by the
/// constant's identity, never by the runtime value of the operand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant {
    pub name: &'static str,
    pub value: f64,
}

impl Constant {
    pub const fn new(name: &'static str, value: f64) -> Self {
        Self { name, value }
    }

    /// Multiplication by -1, 0 or 1 is free.
    pub fn is_trivial(&self) -> bool {
        self.value == 0.0 || self.value == 1.0 || self.value == -1.0
    }
}

/// Arithmetic the fast kernels are written against.
///
/// Kernels only ever add, subtract, negate and multiply by a [`Constant`], so
/// the same code path runs on plain `f64` and on the counting scalar.
pub trait Scalar: Copy + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> {
    fn scale(self, c: Constant) -> Self;
}

impl Scalar for f64 {
    #[inline(always)]
    fn scale(self, c: Constant) -> Self {
        self * c.value
    }
}
