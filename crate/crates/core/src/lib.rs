//! Fast discrete Hartley transforms for N = 4, 8, 12 and 24.

pub mod audit;
pub mod batch;
pub mod cli;
pub mod derive;
pub mod error;
pub mod kernels;
pub mod reference;
pub mod scalar;
pub mod signal;

pub use error::{Error, Result};
pub use kernels::{
    fast_dht, fast_dht12, fast_dht24, fast_dht4, fast_dht8, fast_dht_auto, KernelId,
};
pub use reference::{naive_dft, naive_dht, naive_idht};
pub use signal::{ComplexSpectrum, HartleySpectrum, RealSignal};
