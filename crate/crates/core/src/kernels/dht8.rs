use super::constants::SQRT_2;
use super::layers::layers;
use super::{apply_layer, KernelId};
use crate::scalar::Scalar;

/// 8-point DHT: 22 additions, 2 multiplications.
///
/// After the first butterfly layer the even outputs are a 4-point DHT of the
/// sums, and the odd outputs need `√2·(v1 − v5)` and `√2·(v3 − v7)` only.
/// The first two post-additions on the sum branch are `S_4(2)` and `S_5(2)`.
pub fn dht8<T: Scalar>(v: &[T; 8]) -> [T; 8] {
    let s = apply_layer(&layers(KernelId::N8)[0], v);

    let e0 = s[0] + s[2];
    let e1 = s[0] - s[2];
    let f0 = s[4] + s[6];
    let f1 = s[4] - s[6];

    let o0 = s[1] + s[3];
    let o1 = s[1] - s[3];
    let p = s[5].scale(SQRT_2);
    let q = s[7].scale(SQRT_2);

    [
        e0 + f0,
        o0 + p,
        e1 + f1,
        o1 + q,
        e0 - f0,
        o0 - p,
        e1 - f1,
        o1 - q,
    ]
}
