use crate::scalar::Scalar;

/// 4-point DHT as two stages of 2-point Walsh-Hadamard butterflies.
///
/// 8 additions, no multiplications.
pub fn dht4<T: Scalar>(v: &[T; 4]) -> [T; 4] {
    let a0 = v[0] + v[2];
    let a1 = v[0] - v[2];
    let b0 = v[1] + v[3];
    let b1 = v[1] - v[3];
    [a0 + b0, a1 + b1, a0 - b0, a1 - b1]
}
