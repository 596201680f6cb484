//! Special functions required by the closed forms: `K_nu` of integer and
//! half-integer order, `L_nu` for `nu` in `-3..=1`, the Bickley function
//! `Ki1`, and Gamma at positive integers and half-integers.
//!
//! Products `K * L` appear in every potential and field. `L` grows like `I`
//! while `K` decays, so for `z > COMBO_SWITCH` the products are assembled
//! from `M = L - I` and the Wronskian `K0 I1 + K1 I0 = 1/z` instead.

mod bessel;
mod struve;

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{domain, Error, Result};

pub use bessel::{bessel_k, ln_bessel_k, MAX_ORDER2};
pub use struve::struve_l;

pub(crate) use bessel::k0_k1;

/// A special-function value with an error bound in the same units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialValue {
    pub value: f64,
    pub abs_error_estimate: f64,
    /// The true value lies below the smallest normal double.
    pub underflow: bool,
}

impl SpecialValue {
    fn exact(value: f64) -> Self {
        SpecialValue { value, abs_error_estimate: value.abs() * f64::EPSILON, underflow: false }
    }
}

/// Argument above which `K * L` combinations switch to the `L - I` form.
pub const COMBO_SWITCH: f64 = 8.0;

/// `Gamma(m / 2)` for any integer `m` that is not zero or a negative even number.
pub(crate) fn gamma_half_integer(m: i32) -> f64 {
    let sqrt_pi = PI.sqrt();
    let (mut x, mut g) = if m % 2 == 0 { (1.0, 1.0) } else { (0.5, sqrt_pi) };
    let target = m as f64 / 2.0;
    while x < target {
        g *= x;
        x += 1.0;
    }
    while x > target {
        x -= 1.0;
        g /= x;
    }
    g
}

/// `ln Gamma(m / 2)` for positive `m`.
pub(crate) fn ln_gamma_half_integer(m: u32) -> f64 {
    let (mut x, mut lg) = if m.is_multiple_of(2) { (1.0, 0.0) } else { (0.5, 0.5 * PI.ln()) };
    let target = m as f64 / 2.0;
    while x < target {
        lg += x.ln();
        x += 1.0;
    }
    lg
}

/// Gamma function at a positive integer or half-integer `x`.
pub fn gamma_fn(x: f64) -> Result<SpecialValue> {
    let twice = 2.0 * x;
    if !(x > 0.0) || twice.fract() != 0.0 || twice > 400.0 {
        return domain(format!("gamma_fn needs a positive (half-)integer, got {x}"));
    }
    let v = gamma_half_integer(twice as i32);
    if !v.is_finite() {
        return Err(Error::Overflow(format!("Gamma({x}) exceeds f64 range")));
    }
    let steps = x.ceil();
    Ok(SpecialValue { value: v, abs_error_estimate: v * f64::EPSILON * (1.0 + steps), underflow: false })
}

fn nonneg(z: f64, name: &str) -> Result<()> {
    if !(z >= 0.0) || !z.is_finite() {
        return domain(format!("{name} requires finite z >= 0, got {z}"));
    }
    Ok(())
}

fn positive(z: f64, name: &str) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return domain(format!("{name} requires finite z > 0, got {z}"));
    }
    Ok(())
}

/// `K0(z) L_{-1}(z) + K1(z) L0(z)`, the hole-potential combination.
pub fn potential_combo(z: f64) -> Result<f64> {
    positive(z, "potential_combo")?;
    let (k0, k1) = k0_k1(z);
    if z <= COMBO_SWITCH {
        let lm1 = struve_l(-1, z)?.value;
        let l0 = struve_l(0, z)?.value;
        Ok(k0 * lm1 + k1 * l0)
    } else {
        let (mm1, m0) = struve::m_minus1_m0(z);
        Ok(1.0 / z + k0 * mm1 + k1 * m0)
    }
}

/// `K0(z) L1(z) + K1(z) L0(z)`, the hole-field combination.
pub fn field_combo(z: f64) -> Result<f64> {
    positive(z, "field_combo")?;
    let (k0, k1) = k0_k1(z);
    if z <= COMBO_SWITCH {
        let l1 = struve_l(1, z)?.value;
        let l0 = struve_l(0, z)?.value;
        Ok(k0 * l1 + k1 * l0)
    } else {
        let (mm1, m0) = struve::m_minus1_m0(z);
        Ok(1.0 / z + k0 * (mm1 - FRAC_2_PI) + k1 * m0)
    }
}

/// `1 - z [K0(z) L_{-1}(z) + K1(z) L0(z)]`, i.e. `(2/pi) Ki1(z)`, with full
/// relative precision at large `z`.
pub fn one_minus_z_potential_combo(z: f64) -> Result<f64> {
    nonneg(z, "one_minus_z_potential_combo")?;
    if z == 0.0 {
        return Ok(1.0);
    }
    if z <= COMBO_SWITCH {
        Ok(1.0 - z * potential_combo(z)?)
    } else {
        let (k0, k1) = k0_k1(z);
        let (mm1, m0) = struve::m_minus1_m0(z);
        Ok(-z * (k0 * mm1 + k1 * m0))
    }
}

/// Bickley function `Ki1(z) = int_z^inf K0(y) dy`, evaluated as
/// `pi/2 {1 - z [K0 L_{-1} + K1 L0]}`.
pub fn ki1(z: f64) -> Result<SpecialValue> {
    nonneg(z, "ki1")?;
    if z == 0.0 {
        return Ok(SpecialValue::exact(FRAC_PI_2));
    }
    let v = FRAC_PI_2 * one_minus_z_potential_combo(z)?;
    let (k0, _) = k0_k1(z);
    // Direct path loses absolute digits to the cancellation in 1 - z(...);
    // the L - I path is relatively accurate.
    let err = if z <= COMBO_SWITCH {
        8.0 * f64::EPSILON * (1.0 + z * k0.abs() * 2.0)
    } else {
        8.0 * f64::EPSILON * v.abs()
    };
    let underflow = v != 0.0 && v.abs() < f64::MIN_POSITIVE;
    Ok(SpecialValue { value: v, abs_error_estimate: err, underflow })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn gamma_values() {
        assert!((gamma_fn(0.5).unwrap().value - PI.sqrt()).abs() < 1e-15);
        assert_eq!(gamma_fn(3.0).unwrap().value, 2.0);
        assert!((gamma_fn(2.5).unwrap().value - 0.75 * PI.sqrt()).abs() < 1e-15);
        assert!((gamma_fn(2.5).unwrap().value - 1.329_340_4).abs() < 1e-7);
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(1.25).is_err());
        assert!(gamma_fn(-0.5).is_err());
    }

    #[test]
    fn negative_half_integer_gamma() {
        assert!((gamma_half_integer(-1) + 2.0 * PI.sqrt()).abs() < 1e-15);
        assert!((gamma_half_integer(-3) - 4.0 / 3.0 * PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ln_gamma_consistent() {
        for m in 1..60u32 {
            let g = gamma_half_integer(m as i32);
            assert!((ln_gamma_half_integer(m) - g.ln()).abs() < 1e-13 * g.ln().abs().max(1.0));
        }
    }

    #[test]
    fn ki1_at_zero_and_one() {
        assert!((ki1(0.0).unwrap().value - FRAC_PI_2).abs() < 1e-16);
        let v = ki1(1.0).unwrap().value;
        let q = oracle::ki1_quadrature(1.0);
        assert!((v - q).abs() < 1e-10, "{v} {q}");
    }

    #[test]
    fn ki1_relative_accuracy_across_switch() {
        for &z in &[1e-4, 0.3, 2.0, 7.9, 8.1, 16.0, 30.0, 60.0] {
            let v = ki1(z).unwrap().value;
            let q = oracle::ki1_quadrature(z);
            assert!((v - q).abs() < 1e-10, "abs z={z}");
            if z >= 1.0 {
                assert!(((v - q) / q).abs() < 1e-9, "rel z={z} {v} {q}");
            }
        }
    }

    #[test]
    fn ki1_monotone_decreasing() {
        let mut prev = ki1(0.0).unwrap().value;
        for i in 1..200 {
            let z = 0.25 * i as f64;
            let v = ki1(z).unwrap().value;
            assert!(v < prev && v > 0.0, "z={z}");
            prev = v;
        }
    }

    #[test]
    fn combos_continuous_at_switch() {
        let lo = COMBO_SWITCH * (1.0 - 1e-12);
        let hi = COMBO_SWITCH * (1.0 + 1e-12);
        for f in [potential_combo, field_combo] {
            let a = f(lo).unwrap();
            let b = f(hi).unwrap();
            assert!(((a - b) / a).abs() < 1e-11);
        }
    }

    #[test]
    fn potential_combo_coulomb_tail() {
        let z = 50.0;
        assert!((z * potential_combo(z).unwrap() - 1.0).abs() < 1e-6);
    }
}
