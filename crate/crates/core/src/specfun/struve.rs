//! Modified Struve functions `L_nu` for `nu` in `-3..=1`, and the differences
//! `M_nu = L_nu - I_nu` that keep `K * L` products accurate at large argument.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2};

use super::{gamma_half_integer, SpecialValue};
use crate::error::{domain, Result};
use crate::quadrature;

/// Power series `L_nu(z) = sum_k (z/2)^(2k+nu+1) / (Gamma(k+3/2) Gamma(k+nu+3/2))`.
///
/// Returns `(sum, abs_error)`; `z > 0` unless `nu >= -1`.
fn series(nu: i32, z: f64) -> (f64, f64) {
    let half = 0.5 * z;
    let nuf = nu as f64;
    let g0 = gamma_half_integer(3) * gamma_half_integer(2 * nu + 3);
    if z == 0.0 {
        // only nu = -1 has a nonzero value at the origin
        return if nu == -1 { (1.0 / g0, 0.0) } else { (0.0, 0.0) };
    }
    let mut term = half.powi(nu + 1) / g0;
    let mut sum = term;
    let mut abs_sum = term.abs();
    let q = half * half;
    for k in 0..5000 {
        let kf = k as f64;
        term *= q / ((kf + 1.5) * (kf + nuf + 1.5));
        sum += term;
        abs_sum += term.abs();
        if kf > half && term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    (sum, 4.0 * f64::EPSILON * abs_sum)
}

/// Modified Struve function `L_order(z)` for `order` in `-3..=1`.
///
/// Orders 1, 0 and -1 are summed from their power series. Orders -2 and -3 are
/// summed directly for `z < 1` and obtained from the recursion
/// `L_{nu-1} - L_{nu+1} = (2 nu / z) L_nu + (z/2)^nu / (sqrt(pi) Gamma(nu + 3/2))`
/// otherwise. Orders -2 and -3 are singular at `z = 0`.
pub fn struve_l(order: i32, z: f64) -> Result<SpecialValue> {
    if !(z >= 0.0) || !z.is_finite() {
        return domain(format!("struve_l requires finite z >= 0, got {z}"));
    }
    if !(-3..=1).contains(&order) {
        return domain(format!("struve_l order {order} outside -3..=1"));
    }
    if order <= -2 && z == 0.0 {
        return domain(format!("struve_l order {order} is singular at z = 0"));
    }
    if order >= -1 || z < 1.0 {
        let (value, err) = series(order, z);
        return Ok(SpecialValue { value, abs_error_estimate: err, underflow: false });
    }
    let (lm1, em1) = series(-1, z);
    let (l0, e0) = series(0, z);
    let lm2 = -2.0 / z * lm1 + l0 + FRAC_2_PI / z;
    let em2 = 2.0 / z * em1 + e0 + 4.0 * f64::EPSILON * (lm2.abs() + 2.0 / z * lm1.abs() + l0.abs());
    if order == -2 {
        return Ok(SpecialValue { value: lm2, abs_error_estimate: em2, underflow: false });
    }
    let lm3 = -4.0 / z * lm2 + lm1 - FRAC_2_PI / (z * z);
    let em3 = 4.0 / z * em2 + em1 + 4.0 * f64::EPSILON * (lm3.abs() + 4.0 / z * lm2.abs() + lm1.abs());
    Ok(SpecialValue { value: lm3, abs_error_estimate: em3, underflow: false })
}

/// `(M_{-1}(z), M_0(z))` with `M_nu = L_nu - I_nu`, from
/// `M_0 = -(2/pi) int_0^{pi/2} e^{-z sin t} dt` and
/// `M_{-1} = (2/pi) int_0^{pi/2} e^{-z sin t} sin t dt`.
///
/// Both integrands are smooth and positive, so the differences carry full
/// relative precision where `L` and `I` themselves agree to many digits.
pub(crate) fn m_minus1_m0(z: f64) -> (f64, f64) {
    let knee = (30.0 / z).min(FRAC_PI_2);
    let mut breaks = vec![0.0, knee];
    if knee < FRAC_PI_2 {
        breaks.push(FRAC_PI_2);
    }
    let f0 = |t: f64| (-z * t.sin()).exp();
    let fm1 = |t: f64| (-z * t.sin()).exp() * t.sin();
    // Deterministic smooth integrals; convergence to 1e-15 never stalls here.
    let (i0, _) = quadrature::integrate_breaks(&f0, &breaks, 0.0, 1e-15, 200)
        .unwrap_or_else(|_| (quadrature::gk21(&f0, 0.0, FRAC_PI_2).0, 0.0));
    let (im1, _) = quadrature::integrate_breaks(&fm1, &breaks, 0.0, 1e-15, 200)
        .unwrap_or_else(|_| (quadrature::gk21(&fm1, 0.0, FRAC_PI_2).0, 0.0));
    (FRAC_2_PI * im1, -FRAC_2_PI * i0)
}
