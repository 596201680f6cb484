//! Modified Bessel functions of the second kind, integer and half-integer order.

use std::f64::consts::PI;

use super::SpecialValue;
use crate::error::{domain, Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest supported `2 * order`.
pub const MAX_ORDER2: i32 = 2000;

/// Power series for `K0`, `K1` (unscaled), used for `z <= 2`.
fn k01_series(z: f64) -> (f64, f64) {
    let t = 0.25 * z * z;
    let lz = (0.5 * z).ln();
    // term0 = t^k / (k!)^2, term1 = t^k / (k! (k+1)!)
    let mut term0 = 1.0;
    let mut term1 = 1.0;
    let mut harmonic = 0.0;
    let mut i0 = 1.0;
    let mut i1 = 1.0;
    let mut s0 = 0.0;
    let mut s1 = 1.0 - 2.0 * EULER_GAMMA;
    for k in 1..60 {
        let kf = k as f64;
        term0 *= t / (kf * kf);
        term1 *= t / (kf * (kf + 1.0));
        harmonic += 1.0 / kf;
        i0 += term0;
        i1 += term1;
        s0 += harmonic * term0;
        s1 += (2.0 * harmonic + 1.0 / (kf + 1.0) - 2.0 * EULER_GAMMA) * term1;
        if term0 < 1e-18 * i0 {
            break;
        }
    }
    let k0 = -(lz + EULER_GAMMA) * i0 + s0;
    let k1 = 1.0 / z + lz * 0.5 * z * i1 - 0.25 * z * s1;
    (k0, k1)
}

/// Steed's continued fraction (Temme's CF2) for `e^z K0`, `e^z K1`, `z > 2`.
fn k01_cf2_scaled(z: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * z)).sqrt() / s;
    let k1 = k0 * (z + 0.5 - h) / z;
    (k0, k1)
}

/// `(e^z K0(z), e^z K1(z))` for `z > 0`.
pub(crate) fn k01_scaled(z: f64) -> (f64, f64) {
    if z <= 2.0 {
        let (k0, k1) = k01_series(z);
        let e = z.exp();
        (k0 * e, k1 * e)
    } else {
        k01_cf2_scaled(z)
    }
}

/// Starting pair `(e^z K_nu, e^z K_{nu+1})` with `nu` = 0 or 1/2.
fn start_pair(half: bool, z: f64) -> (f64, f64) {
    if half {
        let a = (PI / (2.0 * z)).sqrt();
        (a, a * (1.0 + 1.0 / z))
    } else {
        k01_scaled(z)
    }
}

/// `e^z K_{nu2/2}(z)` for `nu2 >= 0`, with the number of recursion steps.
fn k_scaled(nu2: i32, z: f64) -> Result<(f64, u32)> {
    let half = nu2 % 2 == 1;
    let (mut km, mut k) = start_pair(half, z);
    if nu2 <= 1 {
        return Ok((km, 0));
    }
    let target = nu2 / 2;
    let mut nu = if half { 1.5 } else { 1.0 };
    let mut steps = 1;
    for _ in 1..target {
        let kp = 2.0 * nu / z * k + km;
        km = k;
        k = kp;
        nu += 1.0;
        steps += 1;
        if !k.is_finite() || k > 1e300 {
            return Err(Error::Overflow(format!(
                "K of order {} overflows at z = {z}",
                nu2 as f64 / 2.0
            )));
        }
    }
    Ok((k, steps))
}

fn check_args(order2: i32, z: f64) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return domain(format!("bessel_k requires finite z > 0, got {z}"));
    }
    if !(-2..=MAX_ORDER2).contains(&order2) {
        return domain(format!(
            "bessel_k order {} outside [-1, {}]",
            order2 as f64 / 2.0,
            MAX_ORDER2 / 2
        ));
    }
    Ok(())
}

/// Modified Bessel function `K_nu(z)` with `nu = order2 / 2`.
///
/// Supported orders are integers and half-integers `nu >= -1`; negative orders
/// use `K_{-nu} = K_nu`. Beyond the exponent range the value underflows to zero
/// and [`SpecialValue::underflow`] is set.
pub fn bessel_k(order2: i32, z: f64) -> Result<SpecialValue> {
    check_args(order2, z)?;
    let (scaled, steps) = k_scaled(order2.abs(), z)?;
    let value = if z < 700.0 {
        scaled * (-z).exp()
    } else {
        (scaled.ln() - z).exp()
    };
    let underflow = value < f64::MIN_POSITIVE;
    let rel = f64::EPSILON * (4.0 + 2.0 * steps as f64);
    Ok(SpecialValue {
        value: if underflow { 0.0 } else { value },
        abs_error_estimate: if underflow { f64::MIN_POSITIVE } else { value * rel },
        underflow,
    })
}

/// `ln K_nu(z)` with `nu = order2 / 2`; stays finite where `K` itself would
/// overflow or underflow.
pub fn ln_bessel_k(order2: i32, z: f64) -> Result<f64> {
    check_args(order2, z)?;
    let nu2 = order2.abs();
    let half = nu2 % 2 == 1;
    let (mut km, mut k) = start_pair(half, z);
    if nu2 <= 1 {
        return Ok(km.ln() - z);
    }
    let mut log_scale = 0.0;
    let mut nu = if half { 1.5 } else { 1.0 };
    for _ in 1..nu2 / 2 {
        let kp = 2.0 * nu / z * k + km;
        km = k;
        k = kp;
        nu += 1.0;
        if k > 1e250 {
            km /= 1e250;
            k /= 1e250;
            log_scale += 250.0 * std::f64::consts::LN_10;
        }
    }
    Ok(k.ln() + log_scale - z)
}

/// Plain `K0(z)`, `K1(z)` for internal use by closed forms (`z > 0`).
pub(crate) fn k0_k1(z: f64) -> (f64, f64) {
    let (a, b) = k01_scaled(z);
    let e = (-z).exp();
    (a * e, b * e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn half_order_closed_form() {
        let v = bessel_k(1, 2.0).unwrap().value;
        let expected = (PI / 4.0).sqrt() * (-2.0f64).exp();
        assert!(rel(v, expected) < 1e-15);
        assert!((v - 0.119_937_7).abs() < 1e-7);
    }

    #[test]
    fn k0_at_one_matches_integral_oracle() {
        let v = bessel_k(0, 1.0).unwrap().value;
        assert!(rel(v, oracle::bessel_k_integral(0.0, 1.0)) < 1e-13);
        assert!((v - 0.421_024_438_2).abs() < 1e-10);
    }

    #[test]
    fn order_two_from_recursion_oracle() {
        let v = bessel_k(4, 1.0).unwrap().value;
        let expected = oracle::bessel_k_integral(0.0, 1.0) + 2.0 * oracle::bessel_k_integral(1.0, 1.0);
        assert!(rel(v, expected) < 1e-13);
    }

    #[test]
    fn agrees_with_integral_representation_across_range() {
        for &z in &[1e-6, 1e-3, 0.1, 0.9, 1.99, 2.01, 3.0, 7.5, 8.5, 20.0, 60.0, 300.0, 699.0] {
            for order2 in [-2, -1, 0, 1, 2, 3, 4, 5, 6, 9, 12] {
                let v = bessel_k(order2, z).unwrap().value;
                let o = oracle::bessel_k_integral((order2 as f64 / 2.0).abs(), z);
                assert!(rel(v, o) < 1e-13, "order2={order2} z={z} {v} {o}");
            }
        }
    }

    #[test]
    fn ln_k_matches_direct_and_extends_range() {
        for &(o2, z) in &[(0, 1.0), (6, 0.5), (11, 3.0), (40, 30.0)] {
            let d = bessel_k(o2, z).unwrap().value;
            assert!((ln_bessel_k(o2, z).unwrap() - d.ln()).abs() < 1e-13);
        }
        assert!(ln_bessel_k(400, 0.01).unwrap().is_finite());
        assert!(bessel_k(400, 0.01).is_err());
    }

    #[test]
    fn underflow_is_flagged() {
        let v = bessel_k(0, 800.0).unwrap();
        assert!(v.underflow);
        assert_eq!(v.value, 0.0);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(bessel_k(0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_k(0, -1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_k(-3, 1.0), Err(Error::Domain(_))));
    }
}
