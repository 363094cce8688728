//! Operation counting.
//!
//! [`CountingScalar`] behaves exactly like `f64` while recording every real
//! addition/subtraction and every multiplication by a non-trivial constant
//! into a [`Tally`] owned by the caller. There are no global counters, so
//! audits of different kernels can run concurrently.

use std::cell::Cell;
use std::ops::{Add, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::{run_kernel, KernelId};
use crate::scalar::{Constant, Scalar};

/// Additions (including subtractions) and constant multiplications.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct OpCount {
    pub additions: usize,
    pub multiplications: usize,
}

impl OpCount {
    pub const fn new(additions: usize, multiplications: usize) -> Self {
        Self {
            additions,
            multiplications,
        }
    }
}

/// Per-invocation accumulator shared by all scalars of one kernel run.
#[derive(Debug, Default)]
pub struct Tally {
    additions: Cell<usize>,
    multiplications: Cell<usize>,
}

impl Tally {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> OpCount {
        OpCount::new(self.additions.get(), self.multiplications.get())
    }

    pub fn wrap<'a>(&'a self, values: &[f64]) -> Vec<CountingScalar<'a>> {
        values
            .iter()
            .map(|&value| CountingScalar { value, tally: self })
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CountingScalar<'a> {
    pub value: f64,
    tally: &'a Tally,
}

impl<'a> CountingScalar<'a> {
    pub fn new(value: f64, tally: &'a Tally) -> Self {
        Self { value, tally }
    }

    #[inline]
    fn bump_add(&self) {
        self.tally.additions.set(self.tally.additions.get() + 1);
    }
}

impl Add for CountingScalar<'_> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.bump_add();
        Self {
            value: self.value + rhs.value,
            tally: self.tally,
        }
    }
}

impl Sub for CountingScalar<'_> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self.bump_add();
        Self {
            value: self.value - rhs.value,
            tally: self.tally,
        }
    }
}

impl Neg for CountingScalar<'_> {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            value: -self.value,
            tally: self.tally,
        }
    }
}

impl Scalar for CountingScalar<'_> {
    fn scale(self, c: Constant) -> Self {
        if !c.is_trivial() {
            let m = &self.tally.multiplications;
            m.set(m.get() + 1);
        }
        Self {
            value: self.value * c.value,
            tally: self.tally,
        }
    }
}

/// Minimal multiplicative complexity `μ(N)` of the length-N DFT.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComplexityBound {
    pub blocklength: usize,
    pub mu: usize,
}

pub const COMPLEXITY_BOUNDS: [ComplexityBound; 4] = [
    ComplexityBound {
        blocklength: 4,
        mu: 0,
    },
    ComplexityBound {
        blocklength: 8,
        mu: 2,
    },
    ComplexityBound {
        blocklength: 12,
        mu: 4,
    },
    ComplexityBound {
        blocklength: 24,
        mu: 12,
    },
];

/// Published cost of each kernel.
pub fn declared_cost(id: KernelId) -> OpCount {
    match id {
        KernelId::N4 => OpCount::new(8, 0),
        KernelId::N8 => OpCount::new(22, 2),
        KernelId::N12 => OpCount::new(52, 4),
        KernelId::N24 => OpCount::new(138, 12),
    }
}

pub fn mu_lower_bound(n: usize) -> Result<usize> {
    COMPLEXITY_BOUNDS
        .iter()
        .find(|b| b.blocklength == n)
        .map(|b| b.mu)
        .ok_or(Error::UnsupportedLength { len: n })
}

/// Run the kernel on counting scalars holding `input` and return the tally.
pub fn count_ops_on(id: KernelId, input: &[f64]) -> OpCount {
    let tally = Tally::new();
    let v = tally.wrap(input);
    run_kernel(id, &v);
    tally.count()
}

/// Seed of the random input used by [`count_ops`].
pub const COUNT_SEED: u64 = 0x00C0_FFEE;

pub fn count_ops(id: KernelId) -> OpCount {
    let mut rng = ChaCha8Rng::seed_from_u64(COUNT_SEED);
    let input: Vec<f64> = (0..id.blocklength())
        .map(|_| rng.random_range(-1.0..=1.0))
        .collect();
    count_ops_on(id, &input)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditRow {
    pub n: usize,
    pub additions: usize,
    pub multiplications: usize,
    pub mu: usize,
    pub declared_additions: usize,
    pub meets_bound: bool,
}

impl AuditRow {
    pub fn additions_match(&self) -> bool {
        self.additions == self.declared_additions
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    /// True when every kernel meets `μ(N)` and its declared addition count.
    pub fn all_pass(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.meets_bound && r.additions_match())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:>4} {:>10} {:>16} {:>6} {:>12}\n",
            "N", "additions", "multiplications", "mu(N)", "meets_bound"
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{:>4} {:>10} {:>16} {:>6} {:>12}\n",
                r.n, r.additions, r.multiplications, r.mu, r.meets_bound
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Audit every kernel with a custom counter (used to inject faulty kernels in tests).
pub fn audit_report_with(counter: impl Fn(KernelId) -> OpCount) -> AuditReport {
    let rows = KernelId::ALL
        .iter()
        .map(|&id| {
            let measured = counter(id);
            let mu = mu_lower_bound(id.blocklength()).expect("supported length");
            AuditRow {
                n: id.blocklength(),
                additions: measured.additions,
                multiplications: measured.multiplications,
                mu,
                declared_additions: declared_cost(id).additions,
                meets_bound: measured.multiplications == mu,
            }
        })
        .collect();
    AuditReport { rows }
}

pub fn audit_report() -> AuditReport {
    audit_report_with(count_ops)
}
