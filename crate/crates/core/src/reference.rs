//! Ground-truth transforms: direct-summation DHT and DFT, the Hartley/Fourier
//! bridge, and the unnormalized Walsh-Hadamard transform.
//!
//! Kernel angles are reduced as `2π·((i·k) mod N)/N` before evaluating the
//! trigonometric functions, which keeps every argument in `[0, 2π)`.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::{ComplexSpectrum, HartleySpectrum, RealSignal};

/// The Hartley kernel `cos(x) + sin(x)`.
pub fn cas(x: f64) -> f64 {
    let (s, c) = x.sin_cos();
    c + s
}

/// The complementary kernel `cos(x) - sin(x)`.
pub fn cas_prime(x: f64) -> f64 {
    let (s, c) = x.sin_cos();
    c - s
}

/// Angle `2π·((i·k) mod n)/n`.
#[inline]
pub(crate) fn kernel_angle(i: usize, k: usize, n: usize) -> f64 {
    TAU * ((i * k) % n) as f64 / n as f64
}

/// The `n × n` DHT matrix, entry `(k, i) = cas(2π·i·k/n)` with 0-based indices.
pub fn dht_matrix(n: usize) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    Ok(DMatrix::from_fn(n, n, |k, i| cas(kernel_angle(i, k, n))))
}

/// Direct O(N²) evaluation of `V_k = Σ v_i·cas(2πik/N)`.
pub fn naive_dht(v: &RealSignal) -> HartleySpectrum {
    let n = v.len();
    let x = v.samples();
    let out = (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(i, &vi)| vi * cas(kernel_angle(i, k, n)))
                .sum()
        })
        .collect();
    HartleySpectrum::new(out).expect("finite input gives finite output")
}

/// Inverse DHT: the forward transform scaled by `1/N`.
pub fn naive_idht(spectrum: &HartleySpectrum) -> RealSignal {
    let n = spectrum.len() as f64;
    let forward = naive_dht(&spectrum.to_signal());
    RealSignal::new(forward.coefficients().iter().map(|x| x / n).collect())
        .expect("finite input gives finite output")
}

/// Direct O(N²) evaluation of `U_k = Σ v_i·exp(-j2πik/N)`.
pub fn naive_dft(v: &RealSignal) -> ComplexSpectrum {
    let n = v.len();
    let x = v.samples();
    let out = (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(i, &vi)| {
                    let (s, c) = kernel_angle(i, k, n).sin_cos();
                    Complex64::new(vi * c, -vi * s)
                })
                .sum()
        })
        .collect();
    ComplexSpectrum::new(out).expect("finite input gives finite output")
}

/// `U_k = (V_k + V_{N-k})/2 - j·(V_k - V_{N-k})/2`, with `V_N ≡ V_0`.
pub fn dht_to_dft(spectrum: &HartleySpectrum) -> ComplexSpectrum {
    let v = spectrum.coefficients();
    let n = v.len();
    let out = (0..n)
        .map(|k| {
            let a = v[k];
            let b = v[(n - k) % n];
            Complex64::new((a + b) / 2.0, -(a - b) / 2.0)
        })
        .collect();
    ComplexSpectrum::new(out).expect("finite input gives finite output")
}

/// `V_k = Re{U_k} - Im{U_k}`.
pub fn dft_to_dht(spectrum: &ComplexSpectrum) -> HartleySpectrum {
    HartleySpectrum::new(
        spectrum
            .coefficients()
            .iter()
            .map(|u| u.re - u.im)
            .collect(),
    )
    .expect("finite input gives finite output")
}

/// Size of a Sylvester-Hadamard transform; always a power of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HadamardOrder(usize);

impl HadamardOrder {
    pub fn new(n: usize) -> Result<Self> {
        if n.is_power_of_two() {
            Ok(Self(n))
        } else {
            Err(Error::NotPowerOfTwo(n))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// Row `k` of the 4-point DHT equals row `HADAMARD_TO_HARTLEY_4[k]` of the
/// Sylvester-ordered 4-point Hadamard matrix.
pub const HADAMARD_TO_HARTLEY_4: [usize; 4] = [0, 2, 1, 3];

/// Unnormalized Walsh-Hadamard transform in Sylvester order, built from
/// 2-point butterflies `[a, b] -> [a + b, a - b]`.
pub fn walsh_hadamard(v: &RealSignal, order: HadamardOrder) -> Result<RealSignal> {
    if v.len() != order.get() {
        return Err(Error::LengthMismatch {
            expected: order.get(),
            actual: v.len(),
        });
    }
    let mut x = v.samples().to_vec();
    let mut half = 1;
    while half < x.len() {
        for block in x.chunks_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*a + *b, *a - *b);
                *a = s;
                *b = d;
            }
        }
        half *= 2;
    }
    RealSignal::new(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    fn sig(x: &[f64]) -> RealSignal {
        RealSignal::new(x.to_vec()).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn cas_values() {
        assert_eq!(cas(0.0), 1.0);
        assert!((cas(FRAC_PI_4) - SQRT_2).abs() < 1e-15);
        assert!(cas(3.0 * FRAC_PI_4).abs() < 1e-15);
        assert_eq!(cas_prime(0.0), 1.0);
        assert!(cas_prime(FRAC_PI_4).abs() < 1e-15);
        assert!((cas_prime(FRAC_PI_2) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn dht_matrix_small_sizes() {
        assert_eq!(dht_matrix(0), Err(Error::ZeroSize));
        assert_eq!(dht_matrix(1).unwrap(), DMatrix::from_element(1, 1, 1.0));
        let h4 = dht_matrix(4).unwrap();
        let expected = [
            [1.0, 1.0, 1.0, 1.0],
            [1.0, 1.0, -1.0, -1.0],
            [1.0, -1.0, 1.0, -1.0],
            [1.0, -1.0, -1.0, 1.0],
        ];
        for k in 0..4 {
            for i in 0..4 {
                assert!((h4[(k, i)] - expected[k][i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn dht8_entries_are_zero_one_or_root_two() {
        let h8 = dht_matrix(8).unwrap();
        for x in h8.iter() {
            let m = x.abs();
            assert!(
                m < 1e-15 || (m - 1.0).abs() < 1e-15 || (m - SQRT_2).abs() < 1e-15,
                "{x}"
            );
        }
    }

    #[test]
    fn naive_dht_examples() {
        for n in [1, 3, 7, 24] {
            let out = naive_dht(&RealSignal::impulse(n).unwrap());
            assert!(out.coefficients().iter().all(|&x| x == 1.0));
        }
        let out = naive_dht(&sig(&[1.0; 4]));
        assert!(close(out.coefficients(), &[4.0, 0.0, 0.0, 0.0], 1e-14));
        let out = naive_dht(&sig(&[1.0, 2.0, 3.0, 4.0]));
        assert!(close(out.coefficients(), &[10.0, -4.0, -2.0, 0.0], 1e-14));
    }

    #[test]
    fn naive_idht_inverts() {
        let back = naive_idht(&HartleySpectrum::new(vec![4.0, 0.0, 0.0, 0.0]).unwrap());
        assert!(close(back.samples(), &[1.0; 4], 1e-15));
        let back = naive_idht(&HartleySpectrum::new(vec![10.0, -4.0, -2.0, 0.0]).unwrap());
        assert!(close(back.samples(), &[1.0, 2.0, 3.0, 4.0], 1e-14));
        let v = sig(&[1.0, 2.0, 3.0, 4.0]);
        assert!(close(
            naive_idht(&naive_dht(&v)).samples(),
            v.samples(),
            1e-12
        ));
    }

    #[test]
    fn dft_examples_and_bridge() {
        let u = naive_dft(&sig(&[1.0, 2.0, 3.0, 4.0]));
        let expected = [
            Complex64::new(10.0, 0.0),
            Complex64::new(-2.0, 2.0),
            Complex64::new(-2.0, 0.0),
            Complex64::new(-2.0, -2.0),
        ];
        for (a, b) in u.coefficients().iter().zip(expected) {
            assert!((a - b).norm() < 1e-13);
        }
        assert!(u.is_conjugate_symmetric(1e-13));

        let bridged = dht_to_dft(&HartleySpectrum::new(vec![10.0, -4.0, -2.0, 0.0]).unwrap());
        for (a, b) in bridged.coefficients().iter().zip(expected) {
            assert!((a - b).norm() < 1e-15);
        }
        let back = dft_to_dht(&ComplexSpectrum::new(expected.to_vec()).unwrap());
        assert_eq!(back.coefficients(), &[10.0, -4.0, -2.0, 0.0]);

        let flat = dht_to_dft(&HartleySpectrum::new(vec![1.0; 4]).unwrap());
        assert!(flat
            .coefficients()
            .iter()
            .all(|u| *u == Complex64::new(1.0, 0.0)));
        let dc = dht_to_dft(&HartleySpectrum::new(vec![4.0, 0.0, 0.0, 0.0]).unwrap());
        assert_eq!(dc.coefficients()[0], Complex64::new(4.0, 0.0));
        assert!(dc.coefficients()[1..].iter().all(|u| u.norm() == 0.0));
    }

    #[test]
    fn walsh_hadamard_examples() {
        let two = walsh_hadamard(&sig(&[3.0, 5.0]), HadamardOrder::new(2).unwrap()).unwrap();
        assert_eq!(two.samples(), &[8.0, -2.0]);
        let four = HadamardOrder::new(4).unwrap();
        let w = walsh_hadamard(&sig(&[1.0, 0.0, 0.0, 0.0]), four).unwrap();
        assert_eq!(w.samples(), &[1.0; 4]);
        let w = walsh_hadamard(&sig(&[1.0, 2.0, 3.0, 4.0]), four).unwrap();
        assert_eq!(w.samples(), &[10.0, -2.0, -4.0, 0.0]);
        assert_eq!(
            walsh_hadamard(&sig(&[1.0; 3]), four),
            Err(Error::LengthMismatch {
                expected: 4,
                actual: 3
            })
        );
        assert_eq!(HadamardOrder::new(6), Err(Error::NotPowerOfTwo(6)));
    }

    #[test]
    fn angle_reduction_matches_unreduced_for_small_products() {
        let n = 24;
        for i in 0..n {
            for k in 0..n {
                let direct = cas(2.0 * PI * (i * k) as f64 / n as f64);
                assert!((direct - cas(kernel_angle(i, k, n))).abs() < 1e-12);
            }
        }
    }
}
