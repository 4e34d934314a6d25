//! Clebsch–Gordan and Wigner 6-j coefficients by exact rational arithmetic.
//!
//! The Racah closed forms are alternating sums of ratios of factorials; in
//! floating point they lose digits quickly, so both sums are assembled in
//! `BigRational` and converted to `f64` only at the very end.  The result is
//! `sign · S · sqrt(P)` with `S` and `P` exact rationals, so the final value
//! is accurate to a couple of ulp for any angular momenta this crate ever
//! uses.
//!
//! Conventions: Condon–Shortley phases throughout;
//! `clebsch_gordan(j1, m1, j2, m2, j, m)` is `⟨j1 m1 j2 m2 | j m⟩`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::halfint::Half;

fn factorial(n: i32) -> BigInt {
    debug_assert!(n >= 0);
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Integer value of a sum of half-integers known to be integral.
fn int_of(h: Half) -> Option<i32> {
    if h.is_integer() {
        Some(h.twice() / 2)
    } else {
        None
    }
}

fn triangle_ok(a: Half, b: Half, c: Half) -> bool {
    (a + b + c).is_integer() && c.twice() <= (a + b).twice() && c.twice() >= (a - b).abs().twice()
}

/// Δ²(a b c) = (a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!, exact.
fn delta_sq(a: Half, b: Half, c: Half) -> BigRational {
    let p1 = int_of(a + b - c).unwrap();
    let p2 = int_of(a - b + c).unwrap();
    let p3 = int_of(c + b - a).unwrap();
    let q = int_of(a + b + c).unwrap() + 1;
    BigRational::new(factorial(p1) * factorial(p2) * factorial(p3), factorial(q))
}

fn to_f64(r: &BigRational) -> f64 {
    // Factorials up to the j-range of interest stay far below f64 overflow.
    r.to_f64().expect("rational out of f64 range")
}

/// Wigner 3-j symbol.  Zero on any violated selection rule; NaN on negative
/// angular momenta or projections of the wrong parity class.
pub fn wigner_3j(j1: Half, j2: Half, j3: Half, m1: Half, m2: Half, m3: Half) -> f64 {
    for (j, m) in [(j1, m1), (j2, m2), (j3, m3)] {
        if j.twice() < 0 {
            return f64::NAN;
        }
        // m must run over j, j-1, ..., -j: same parity class as j.
        if !(j + m).is_integer() {
            return f64::NAN;
        }
        if m.abs().twice() > j.twice() {
            return 0.0;
        }
    }
    if (m1 + m2 + m3) != Half::ZERO || !triangle_ok(j1, j2, j3) {
        return 0.0;
    }

    // P = Δ²(j1 j2 j3) Π_i (j_i + m_i)! (j_i - m_i)!
    let mut p = delta_sq(j1, j2, j3);
    for (j, m) in [(j1, m1), (j2, m2), (j3, m3)] {
        p *= BigRational::from_integer(
            factorial(int_of(j + m).unwrap()) * factorial(int_of(j - m).unwrap()),
        );
    }

    // Racah sum over k with all seven factorial arguments non-negative.
    let a1 = int_of(j1 + j2 - j3).unwrap();
    let a2 = int_of(j1 - m1).unwrap();
    let a3 = int_of(j2 + m2).unwrap();
    let b1 = int_of(j3 - j2 + m1).unwrap();
    let b2 = int_of(j3 - j1 - m2).unwrap();
    let k_min = 0.max(-b1).max(-b2);
    let k_max = a1.min(a2).min(a3);
    let mut s = BigRational::zero();
    for k in k_min..=k_max {
        let den = factorial(k)
            * factorial(a1 - k)
            * factorial(a2 - k)
            * factorial(a3 - k)
            * factorial(b1 + k)
            * factorial(b2 + k);
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }

    let phase = int_of(j1 - j2 - m3).unwrap();
    let sign = if phase % 2 == 0 { 1.0 } else { -1.0 };
    sign * to_f64(&s) * to_f64(&p).sqrt()
}

/// Clebsch–Gordan coefficient ⟨j1 m1 j2 m2 | j m⟩.
pub fn clebsch_gordan(j1: Half, m1: Half, j2: Half, m2: Half, j: Half, m: Half) -> f64 {
    if m1 + m2 != m {
        // Catch NaN-worthy inputs first so the zero shortcut cannot mask them.
        for (jj, mm) in [(j1, m1), (j2, m2), (j, m)] {
            if jj.twice() < 0 || !(jj + mm).is_integer() {
                return f64::NAN;
            }
        }
        return 0.0;
    }
    let three_j = wigner_3j(j1, j2, j, m1, m2, -m);
    let phase = int_of(j1 - j2 + m);
    let sign = match phase {
        Some(p) if p % 2 != 0 => -1.0,
        Some(_) => 1.0,
        None => return f64::NAN,
    };
    sign * (f64::from(j.multiplicity())).sqrt() * three_j
}

/// Wigner 6-j symbol {a b c; d e f}.  Zero when any of the four triads
/// violates the triangle rules, NaN on negative angular momenta.
pub fn wigner_6j(a: Half, b: Half, c: Half, d: Half, e: Half, f: Half) -> f64 {
    for j in [a, b, c, d, e, f] {
        if j.twice() < 0 {
            return f64::NAN;
        }
    }
    let triads = [(a, b, c), (a, e, f), (d, b, f), (d, e, c)];
    if triads.iter().any(|&(x, y, z)| !triangle_ok(x, y, z)) {
        return 0.0;
    }

    let mut p = BigRational::one();
    for (x, y, z) in triads {
        p *= delta_sq(x, y, z);
    }

    let t1 = int_of(a + b + c).unwrap();
    let t2 = int_of(a + e + f).unwrap();
    let t3 = int_of(d + b + f).unwrap();
    let t4 = int_of(d + e + c).unwrap();
    let q1 = int_of(a + b + d + e).unwrap();
    let q2 = int_of(a + c + d + f).unwrap();
    let q3 = int_of(b + c + e + f).unwrap();
    let k_min = t1.max(t2).max(t3).max(t4);
    let k_max = q1.min(q2).min(q3);
    let mut s = BigRational::zero();
    for k in k_min..=k_max {
        let den = factorial(k - t1)
            * factorial(k - t2)
            * factorial(k - t3)
            * factorial(k - t4)
            * factorial(q1 - k)
            * factorial(q2 - k)
            * factorial(q3 - k);
        let term = BigRational::new(factorial(k + 1), den);
        if k % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }

    to_f64(&s) * to_f64(&p).sqrt()
}

#[cfg(test)]
mod tests {
    use approx::{assert_relative_eq, assert_ulps_eq};

    use super::*;

    fn h(s: &str) -> Half {
        Half::parse(s).unwrap()
    }

    #[test]
    fn frozen_reference_values() {
        // {1/2 1/2 1; 1/2 1/2 1} = 1/6
        assert_ulps_eq!(
            wigner_6j(h("1/2"), h("1/2"), h("1"), h("1/2"), h("1/2"), h("1")),
            1.0 / 6.0,
            max_ulps = 4
        );
        // {1 1 1; 1 1 1} = 1/6
        assert_ulps_eq!(
            wigner_6j(h("1"), h("1"), h("1"), h("1"), h("1"), h("1")),
            1.0 / 6.0,
            max_ulps = 4
        );
        // ⟨1/2 1/2, 1/2 -1/2 | 1 0⟩ = 1/√2
        assert_ulps_eq!(
            clebsch_gordan(h("1/2"), h("1/2"), h("1/2"), h("-1/2"), h("1"), h("0")),
            0.5f64.sqrt(),
            max_ulps = 4
        );
        // ⟨1 1, 1 -1 | 0 0⟩ = 1/√3
        assert_ulps_eq!(
            clebsch_gordan(h("1"), h("1"), h("1"), h("-1"), h("0"), h("0")),
            (1.0f64 / 3.0).sqrt(),
            max_ulps = 4
        );
    }

    #[test]
    fn selection_rules_give_zero() {
        // M mismatch.
        assert_eq!(
            clebsch_gordan(h("1/2"), h("1/2"), h("1/2"), h("1/2"), h("1"), h("0")),
            0.0
        );
        // Triangle violation.
        assert_eq!(
            clebsch_gordan(h("1/2"), h("1/2"), h("1/2"), h("-1/2"), h("5"), h("0")),
            0.0
        );
        assert_eq!(
            wigner_6j(h("1/2"), h("1/2"), h("3"), h("1/2"), h("1/2"), h("1")),
            0.0
        );
    }

    #[test]
    fn nonphysical_inputs_are_nan() {
        assert!(wigner_6j(h("-1/2"), h("1/2"), h("1"), h("1/2"), h("1/2"), h("1")).is_nan());
        // m of the wrong parity class for its j.
        assert!(clebsch_gordan(h("1/2"), h("0"), h("1/2"), h("1/2"), h("1"), h("1/2")).is_nan());
    }

    #[test]
    fn special_6j_with_a_zero_argument() {
        // {0 b b; d e e} = (-1)^(b+d+e) / sqrt((2b+1)(2e+1)).
        for (b, d, e) in [
            (h("1/2"), h("1"), h("3/2")),
            (h("1"), h("1"), h("1")),
            (h("3/2"), h("1/2"), h("1")),
            (h("2"), h("1"), h("2")),
        ] {
            let expect_mag = 1.0 / ((f64::from(b.multiplicity()) * f64::from(e.multiplicity())).sqrt());
            let phase = (b + d + e).twice() / 2;
            let expect = if phase % 2 == 0 { expect_mag } else { -expect_mag };
            assert_relative_eq!(
                wigner_6j(Half::ZERO, b, b, d, e, e),
                expect,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn cg_orthonormality_rows() {
        // Σ_{m1 m2} ⟨j1 m1 j2 m2 | j m⟩ ⟨j1 m1 j2 m2 | j' m'⟩ = δ_{jj'} δ_{mm'}.
        let j1 = h("3/2");
        let j2 = h("1");
        let couples = [h("1/2"), h("3/2"), h("5/2")];
        for &ja in &couples {
            for &jb in &couples {
                for ma in ja.projections() {
                    for mb in jb.projections() {
                        let mut acc = 0.0;
                        for m1 in j1.projections() {
                            for m2 in j2.projections() {
                                acc += clebsch_gordan(j1, m1, j2, m2, ja, ma)
                                    * clebsch_gordan(j1, m1, j2, m2, jb, mb);
                            }
                        }
                        let expect = if ja == jb && ma == mb { 1.0 } else { 0.0 };
                        assert_relative_eq!(acc, expect, epsilon = 1e-14);
                    }
                }
            }
        }
    }
}
