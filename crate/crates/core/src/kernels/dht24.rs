use super::constants::{
    SQRT2_QUARTER as Q, SQRT3_MINUS_ONE_HALF as C, SQRT6_HALF as R, THREE_SQRT2_QUARTER as W,
};
use super::layers::layers;
use super::{apply_layer, KernelId};
use crate::scalar::{Constant, Scalar};

/// Multipliers in the order they are applied (columns 9, 11, 13, 15..=23).
pub(crate) const CONSTANTS: [Constant; 12] = [C, C, C, C, Q, W, W, Q, C, C, R, R];

/// 24-point DHT: 138 additions, 12 multiplications.
///
/// Four butterfly layers and twelve products on `S(4)`. The post-additions
/// share 20 partial sums and pull in eight `S(2)` and eight `S(3)` terms.
/// `√2/4` products enter some outputs twice, which is how `√2/2` appears
/// without a multiplier of its own.
pub fn dht24<T: Scalar>(v: &[T; 24]) -> [T; 24] {
    let [l1, l2, l3, l4] = layers(KernelId::N24) else {
        unreachable!()
    };
    let s1 = apply_layer(l1, v);
    let s2 = apply_layer(l2, &s1);
    let s3 = apply_layer(l3, &s2);
    let s4 = apply_layer(l4, &s3);

    let p9 = s4[9].scale(C);
    let p11 = s4[11].scale(C);
    let p13 = s4[13].scale(C);
    let p15 = s4[15].scale(C);
    let p16 = s4[16].scale(Q);
    let p17 = s4[17].scale(W);
    let p18 = s4[18].scale(W);
    let p19 = s4[19].scale(Q);
    let p20 = s4[20].scale(C);
    let p21 = s4[21].scale(C);
    let p22 = s4[22].scale(R);
    let p23 = s4[23].scale(R);

    let t0 = s4[0] - s4[2];
    let t1 = s4[0] + s4[2];
    let t2 = s4[1] - s4[3];
    let t3 = s4[1] + s4[3];
    let t4 = s4[4] - t1;
    let t5 = s4[4] + t1;
    let t6 = s4[5] - t0;
    let t7 = s4[5] + t0;
    let t8 = s4[6] - t3;
    let t9 = s4[7] + t2;
    let t10 = p16 - p17;
    let t11 = p18 - p19;
    let t12 = p20 - p22;
    let t13 = p20 + p22;
    let t14 = p21 - p23;
    let t15 = p21 + p23;
    let t16 = t2 - s2[11];
    let t17 = t2 - s2[18];
    let t18 = t3 + s2[10];
    let t19 = t3 - s2[19];

    [
        s4[8] + t5,
        p16 + p16 + t13 + t18,
        p9 + t7 + s3[8],
        t9 + t11,
        p13 - t4 + s3[7],
        -p16 - p16 - t12 + t19,
        s4[12] - t6,
        -p19 - p19 - t14 + t16,
        p11 + t5 - s3[10],
        -t8 - t10,
        -p9 + t7 - s3[13],
        p19 + p19 + t15 + t17,
        -s4[14] - t4,
        -p16 - p16 + t12 + t18,
        -p15 - t6 - s3[9],
        t9 - t11,
        -p11 + t5 - s3[6],
        p16 + p16 - t13 + t19,
        -s4[10] + t7,
        p19 + p19 - t15 + t16,
        -p13 - t4 - s3[11],
        -t8 + t10,
        p15 - t6 - s3[12],
        -p19 - p19 + t14 + t17,
    ]
}
