//! Modified Bessel functions of the second kind, orders 0 and 1.
//!
//! Double-precision rational fits in the Numerical Recipes style: for x ≤ 1 a
//! pair of polynomial quotients splits off the logarithmic part analytically,
//! for x > 1 a degree-7/7 quotient multiplies the controlled decay
//! `exp(-x)/sqrt(x)`.  Relative error is a few parts in 10¹⁶ on both sides of
//! the split.

fn poly(cof: &[f64], x: f64) -> f64 {
    let mut acc = *cof.last().unwrap();
    for c in cof.iter().rev().skip(1) {
        acc = acc * x + c;
    }
    acc
}

static K0PI: [f64; 5] = [
    1.0,
    2.346487949187396e-1,
    1.187082088663404e-2,
    2.150707366040937e-4,
    1.425433617130587e-6,
];
static K0QI: [f64; 3] = [
    9.847324170755358e-1,
    1.518396076767770e-2,
    8.362215678646257e-5,
];
static K0P: [f64; 5] = [
    1.159315156584126e-1,
    2.770731240515333e-1,
    2.066458134619875e-2,
    4.574734709978264e-4,
    3.454715527986737e-6,
];
static K0Q: [f64; 3] = [
    9.836249671709183e-1,
    1.627693622304549e-2,
    9.809660603621949e-5,
];
static K0PP: [f64; 8] = [
    1.253314137315499,
    1.475731032429900e1,
    6.123767403223466e1,
    1.121012633939949e2,
    9.285288485892228e1,
    3.198289277679660e1,
    3.595376024148513,
    6.160228690102976e-2,
];
static K0QQ: [f64; 8] = [
    1.0,
    1.189963006673403e1,
    5.027773590829784e1,
    9.496513373427093e1,
    8.318077493230258e1,
    3.181399777449301e1,
    4.443672926432041,
    1.408295601966600e-1,
];
static K1PI: [f64; 5] = [
    0.5,
    5.598072040178741e-2,
    1.818666382168295e-3,
    2.397509908859959e-5,
    1.239567816344855e-7,
];
static K1QI: [f64; 3] = [
    9.870202601341150e-1,
    1.292092053534579e-2,
    5.881933053917096e-5,
];
static K1P: [f64; 5] = [
    -3.079657578292062e-1,
    -8.109417631822442e-2,
    -3.477550948593604e-3,
    -5.385594871975406e-5,
    -3.110372465429008e-7,
];
static K1Q: [f64; 3] = [
    9.861813171751389e-1,
    1.375094061153160e-2,
    6.774221332947002e-5,
];
static K1PP: [f64; 8] = [
    1.253314137315502,
    1.457171340220454e1,
    6.063161173098803e1,
    1.147386690867892e2,
    1.040442011439181e2,
    4.356596656837691e1,
    7.265230396353690,
    3.144418558991021e-1,
];
static K1QQ: [f64; 8] = [
    1.0,
    1.125154514806458e1,
    4.427488496597630e1,
    7.616113213117645e1,
    5.863377227890893e1,
    1.850303673841586e1,
    1.857244676566022,
    2.538540887654872e-2,
];

/// K0(x) for x > 0; +inf at 0, NaN for negative arguments.
pub fn k0(x: f64) -> f64 {
    if x < 0.0 {
        return f64::NAN;
    }
    if x == 0.0 {
        return f64::INFINITY;
    }
    if x <= 1.0 {
        let z = x * x;
        let term = poly(&K0PI, z) * x.ln() / poly(&K0QI, 1.0 - z);
        return poly(&K0P, z) / poly(&K0Q, 1.0 - z) - term;
    }
    let z = 1.0 / x;
    (-x).exp() * poly(&K0PP, z) / (poly(&K0QQ, z) * x.sqrt())
}

/// K1(x) for x > 0; +inf at 0, NaN for negative arguments.
pub fn k1(x: f64) -> f64 {
    if x < 0.0 {
        return f64::NAN;
    }
    if x == 0.0 {
        return f64::INFINITY;
    }
    if x <= 1.0 {
        let z = x * x;
        let term = poly(&K1PI, z) * x.ln() / poly(&K1QI, 1.0 - z);
        return x * (poly(&K1P, z) / poly(&K1Q, 1.0 - z) + term) + 1.0 / x;
    }
    let z = 1.0 / x;
    (-x).exp() * poly(&K1PP, z) / (poly(&K1QQ, z) * x.sqrt())
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    #[test]
    fn reference_values() {
        // mpmath, 50 digits.
        assert_relative_eq!(k0(0.5), 0.9244190712276656, max_relative = 1e-14);
        assert_relative_eq!(k0(1.0), 0.42102443824070834, max_relative = 1e-14);
        assert_relative_eq!(k0(2.0), 0.11389387274953344, max_relative = 1e-14);
        assert_relative_eq!(k0(10.0), 1.7780062316167652e-5, max_relative = 1e-14);
        assert_relative_eq!(k1(0.5), 1.6564411200033008, max_relative = 1e-14);
        assert_relative_eq!(k1(1.0), 0.6019072301972346, max_relative = 1e-14);
        assert_relative_eq!(k1(2.0), 0.13986588181652243, max_relative = 1e-14);
        assert_relative_eq!(k1(10.0), 1.8648773453825585e-5, max_relative = 1e-14);
    }

    #[test]
    fn domains() {
        assert!(k0(-1.0).is_nan());
        assert!(k1(-1.0).is_nan());
        assert_eq!(k0(0.0), f64::INFINITY);
        assert_eq!(k1(0.0), f64::INFINITY);
    }
}
