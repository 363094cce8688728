//! Many transforms at once.
//!
//! With the `parallel` feature (on by default) rows are spread over the
//! rayon pool; without it the same functions run sequentially. The
//! `_sequential` variants always run on the calling thread, which is what
//! the benchmarks compare against.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernels::{run_kernel, KernelId};

fn check_rows(data: &[f64], id: KernelId) -> Result<()> {
    let n = id.blocklength();
    if !data.len().is_multiple_of(n) {
        return Err(Error::LengthMismatch {
            expected: data.len().div_ceil(n) * n,
            actual: data.len(),
        });
    }
    if let Some((index, &value)) = data.iter().enumerate().find(|(_, x)| !x.is_finite()) {
        return Err(Error::NonFinite { index, value });
    }
    Ok(())
}

/// Transform consecutive rows of length `N` packed into one buffer.
pub fn fast_dht_rows(data: &[f64], id: KernelId) -> Result<Vec<f64>> {
    check_rows(data, id)?;
    let mut out = vec![0.0; data.len()];
    #[cfg(feature = "parallel")]
    out.par_chunks_exact_mut(id.blocklength())
        .zip(data.par_chunks_exact(id.blocklength()))
        .for_each(|(dst, src)| dst.copy_from_slice(&run_kernel(id, src)));
    #[cfg(not(feature = "parallel"))]
    fill_rows(&mut out, data, id);
    Ok(out)
}

/// [`fast_dht_rows`] on the calling thread only.
pub fn fast_dht_rows_sequential(data: &[f64], id: KernelId) -> Result<Vec<f64>> {
    check_rows(data, id)?;
    let mut out = vec![0.0; data.len()];
    fill_rows(&mut out, data, id);
    Ok(out)
}

fn fill_rows(out: &mut [f64], data: &[f64], id: KernelId) {
    let n = id.blocklength();
    for (dst, src) in out.chunks_exact_mut(n).zip(data.chunks_exact(n)) {
        dst.copy_from_slice(&run_kernel(id, src));
    }
}

/// Run `f(0) .. f(trials - 1)` and collect the results in trial order.
///
/// Each trial must derive everything it needs from its index, so the
/// result does not depend on scheduling.
pub fn map_trials<R, F>(trials: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    return (0..trials).into_par_iter().map(f).collect();
    #[cfg(not(feature = "parallel"))]
    (0..trials).map(f).collect()
}
