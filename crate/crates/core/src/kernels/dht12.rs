use super::constants::SQRT3_MINUS_ONE_HALF as C;
use super::layers::layers;
use super::{apply_layer, KernelId};
use crate::scalar::Scalar;

/// 12-point DHT: 52 additions, 4 multiplications by (√3 − 1)/2.
///
/// Three butterfly layers, products on `S_5(3)`, `S_6(3)`, `S_9(3)` and
/// `S_10(3)`, then the special additions of signed `S_j(2)` terms.
pub fn dht12<T: Scalar>(v: &[T; 12]) -> [T; 12] {
    let [l1, l2, l3] = layers(KernelId::N12) else {
        unreachable!()
    };
    let s1 = apply_layer(l1, v);
    let s2 = apply_layer(l2, &s1);
    let s3 = apply_layer(l3, &s2);

    let m5 = s3[5].scale(C);
    let m6 = s3[6].scale(C);
    let m9 = s3[9].scale(C);
    let m10 = s3[10].scale(C);

    let e_sum = s3[0] + s3[2];
    let e_diff = s3[0] - s3[2];
    let o_sum = s3[1] + s3[3];
    let o_diff = s3[1] - s3[3];

    [
        e_sum + s3[4],
        o_sum + m10 + s2[6],
        e_diff + m6 + s2[5],
        o_diff + s3[8],
        e_sum + m5 - s2[8],
        o_sum - m10 - s2[11],
        e_diff - s3[7],
        o_diff - m9 - s2[7],
        e_sum - m5 - s2[4],
        o_sum - s3[11],
        e_diff - m6 - s2[9],
        o_diff + m9 - s2[10],
    ]
}
