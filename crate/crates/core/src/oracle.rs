//! Independent reference evaluations used by tests and check suites.
//!
//! Nothing here shares an algorithm with the production code paths: Bessel
//! and Bickley functions come from their integral representations summed by
//! the trapezoid rule (exponentially convergent for these integrands), Struve
//! functions from their Poisson-type integrals, and `Si` from its series and
//! continued fraction.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::quadrature::gl16;

/// Trapezoid sum of `f` on `[0, inf)` with step `h`, stopping once the terms
/// are negligible and `done(t)` reports the integrand is past its maximum.
fn trapezoid_half_line(f: impl Fn(f64) -> f64, done: impl Fn(f64) -> bool, h: f64) -> f64 {
    let mut sum = 0.5 * f(0.0);
    for k in 1..200_000 {
        let t = k as f64 * h;
        let v = f(t);
        sum += v;
        if done(t) && v.abs() <= 1e-19 * sum.abs() {
            break;
        }
    }
    sum * h
}

/// `K_nu(z) = int_0^inf e^{-z cosh t} cosh(nu t) dt`.
pub fn bessel_k_integral(nu: f64, z: f64) -> f64 {
    trapezoid_half_line(
        |t| (-z * t.cosh() + ln_cosh(nu * t)).exp(),
        |t| z * t.sinh() > nu + 1.0,
        // the peak at t = 0 narrows like z^{-1/2}
        0.05f64.min(0.5 / z.sqrt()),
    )
}

fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (0.5 * (1.0 + (-2.0 * a).exp())).ln()
}

/// `I_n(z) = sum_k (z/2)^{2k+n} / (k! (k+n)!)` for moderate `z`.
pub fn bessel_i_series(n: u32, z: f64) -> f64 {
    let half = 0.5 * z;
    let mut term = half.powi(n as i32);
    for j in 1..=n {
        term /= j as f64;
    }
    let mut sum = term;
    for k in 1..2000 {
        let kf = k as f64;
        term *= half * half / (kf * (kf + n as f64));
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// Composite 16-point Gauss-Legendre over `[a, b]` with `n` equal panels.
fn composite(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    (0..n).map(|i| gl16(&f, a + i as f64 * h, a + (i + 1) as f64 * h)).sum()
}

/// `L_0(z) = (2/pi) int_0^{pi/2} sinh(z cos t) dt` and
/// `L_1(z) = (2z/pi) int_0^{pi/2} sinh(z cos t) sin^2 t dt`.
pub fn struve_l_integral(order: i32, z: f64) -> f64 {
    let panels = 16 + (4.0 * z) as usize;
    match order {
        0 => 2.0 / PI * composite(|t| (z * t.cos()).sinh(), 0.0, FRAC_PI_2, panels),
        1 => 2.0 * z / PI * composite(|t| (z * t.cos()).sinh() * t.sin().powi(2), 0.0, FRAC_PI_2, panels),
        _ => panic!("struve_l_integral supports orders 0 and 1"),
    }
}

/// `Ki1(z) = int_z^inf K0(y) dy`; inserting the integral representation of
/// `K0` and integrating over `y` first gives `int_0^inf e^{-z cosh u} / cosh u du`.
pub fn ki1_quadrature(z: f64) -> f64 {
    if z == 0.0 {
        return FRAC_PI_2;
    }
    trapezoid_half_line(|u| (-z * u.cosh()).exp() / u.cosh(), |_| true, 0.05f64.min(0.5 / z.sqrt()))
}

/// Sine integral `Si(x)`.
pub fn sine_integral(x: f64) -> f64 {
    if x < 0.0 {
        return -sine_integral(-x);
    }
    if x <= 4.0 {
        let mut term = x;
        let mut sum = x;
        let mut k = 0.0;
        loop {
            k += 1.0;
            term *= -x * x / ((2.0 * k) * (2.0 * k + 1.0));
            let add = term / (2.0 * k + 1.0);
            sum += add;
            if add.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        return sum;
    }
    // E1(ix) by Lentz's continued fraction; E1(ix) = -Ci(x) + i (Si(x) - pi/2).
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = Complex64::new(1.0, 0.0) / b;
    let mut h = d;
    for i in 1..10_000 {
        let a = -((i * i) as f64);
        b += 2.0;
        d = Complex64::new(1.0, 0.0) / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h *= Complex64::new(x.cos(), -x.sin());
    // h = E1(ix) e^{ix} e^{-ix}
    FRAC_PI_2 + h.im
}

/// Fermi-sea density-matrix charge inside `p_F R = zr`: `-(2/pi) [Si(Z) - sin Z]`.
pub fn fermi_partial_sum(zr: f64) -> f64 {
    -2.0 / PI * (sine_integral(zr) - zr.sin())
}

/// Uehling vacuum-polarization density
/// `-(2 alpha / 3 pi^2) r^-1 int_1^inf e^{-2rt} (1 + 1/(2t^2)) sqrt(t^2 - 1) dt`,
/// integrated in `t = cosh u`.
pub fn uehling_density(r: f64, alpha: f64) -> f64 {
    let z = 2.0 * r;
    let integral = trapezoid_half_line(
        |u| {
            let c = u.cosh();
            let s = u.sinh();
            (-z * c).exp() * (1.0 + 0.5 / (c * c)) * s * s
        },
        |u| z * u.sinh() > 2.0,
        0.02f64.min(0.5 / z.sqrt()),
    );
    -2.0 * alpha / (3.0 * PI * PI) / r * integral
}

/// Closed-form transform of `1/E`: `K1(r) / (2 pi^2 r)`.
pub fn ft_inv_energy(r: f64) -> f64 {
    bessel_k_integral(1.0, r) / (2.0 * PI * PI * r)
}

/// Closed-form transform of `1/E^2`: `e^{-r} / (4 pi r)`.
pub fn ft_inv_energy_sq(r: f64) -> f64 {
    (-r).exp() / (4.0 * PI * r)
}

/// Radial gradient transform of `1/E`: `K2(r) / (2 pi^2 r)`.
pub fn ft_gradient_inv_energy(r: f64) -> f64 {
    bessel_k_integral(2.0, r) / (2.0 * PI * PI * r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_half_order_closed_form() {
        let z = 2.0;
        let exact = (PI / (2.0 * z)).sqrt() * (-z).exp();
        assert!(((bessel_k_integral(0.5, z) - exact) / exact).abs() < 1e-14);
        let z = 1e-4;
        let exact = (PI / (2.0 * z)).sqrt() * (-z).exp() * (1.0 + 1.0 / z);
        assert!(((bessel_k_integral(1.5, z) - exact) / exact).abs() < 1e-13);
    }

    #[test]
    fn sine_integral_known_values() {
        assert!((sine_integral(1.0) - 0.946_083_070_367_183).abs() < 1e-15);
        assert!((sine_integral(10.0) - 1.658_347_594_218_874).abs() < 1e-14);
        // both branches agree at the switch
        let a = sine_integral(4.0);
        let b = sine_integral(4.0 + 1e-13);
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn ki1_at_zero_limit() {
        assert!((ki1_quadrature(1e-12) - FRAC_PI_2).abs() < 1e-9);
    }
}
