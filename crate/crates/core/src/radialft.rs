//! Radially symmetric inverse Fourier transforms
//! `(2 pi)^-3 int f(|p|) e^{i p.r} d^3p = (2 pi^2 r)^-1 int_0^inf q f(q) sin(qr) dq`
//! and their radial gradients, by zero-splitting quadrature.
//!
//! The half-line is cut at a zero `Q0` of the kernel near `tail_cut`. Below
//! `Q0` each lobe is integrated adaptively. Above it the leading algebraic
//! term `c q^a` of the integrand is removed and integrated in closed form
//! (Abel sense), and the lobes of the remainder are summed with the Wynn
//! epsilon algorithm until successive estimates agree.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quadrature;

/// Large-momentum behaviour of a profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DecayClass {
    /// `f(q) ~ c q^-k`.
    Algebraic(f64),
    /// Faster than any power.
    Exponential,
    /// `f(q) = 0` for `q > q_max`.
    Compact(f64),
}

/// A radial momentum-space function `q -> f(q)` with its decay class.
#[derive(Clone)]
pub struct MomentumProfile {
    evaluator: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    decay: DecayClass,
}

impl fmt::Debug for MomentumProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MomentumProfile").field("decay", &self.decay).finish_non_exhaustive()
    }
}

impl MomentumProfile {
    pub fn new(evaluator: impl Fn(f64) -> f64 + Send + Sync + 'static, decay: DecayClass) -> Self {
        MomentumProfile { evaluator: Arc::new(evaluator), decay }
    }

    /// `E(q)^-k` with `E = sqrt(1 + q^2)`.
    pub fn inverse_energy_power(k: u32) -> Self {
        Self::new(move |q| (1.0 + q * q).powf(-0.5 * k as f64), DecayClass::Algebraic(k as f64))
    }

    /// `1 / (1 + E(q))`.
    pub fn inverse_one_plus_energy() -> Self {
        Self::new(|q| 1.0 / (1.0 + (1.0 + q * q).sqrt()), DecayClass::Algebraic(1.0))
    }

    pub fn eval(&self, q: f64) -> f64 {
        (self.evaluator)(q)
    }

    pub fn decay(&self) -> DecayClass {
        self.decay
    }

    /// `a f + b g`; the decay class is the slower of the two.
    pub fn linear_combination(a: f64, f: &MomentumProfile, b: f64, g: &MomentumProfile) -> Self {
        let decay = match (f.decay, g.decay) {
            (DecayClass::Algebraic(x), DecayClass::Algebraic(y)) => DecayClass::Algebraic(x.min(y)),
            (DecayClass::Algebraic(x), _) | (_, DecayClass::Algebraic(x)) => DecayClass::Algebraic(x),
            (DecayClass::Compact(x), DecayClass::Compact(y)) => DecayClass::Compact(x.max(y)),
            _ => DecayClass::Exponential,
        };
        let (f, g) = (f.clone(), g.clone());
        Self::new(move |q| a * f.eval(q) + b * g.eval(q), decay)
    }

    fn validate(&self) -> Result<()> {
        let check = |q: f64| {
            let v = self.eval(q);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonConvergence(format!("profile is not finite at q = {q}")))
            }
        };
        let f2 = check(1e2)?;
        let f3 = check(1e3)?;
        match self.decay {
            DecayClass::Algebraic(k) => {
                if !(k > 0.0) {
                    return Err(Error::NonConvergence(format!(
                        "profile with decay exponent {k} has no ordinary transform (distributional)"
                    )));
                }
                let s2 = f2.abs() * 1e2f64.powf(k);
                let s3 = f3.abs() * 1e3f64.powf(k);
                if s3 > 10.0 * s2 + f64::MIN_POSITIVE {
                    return Err(Error::NonConvergence(format!(
                        "profile grows faster than declared q^-{k}"
                    )));
                }
            }
            DecayClass::Exponential => {
                if f3.abs() > 1e-3 * f2.abs() + f64::MIN_POSITIVE {
                    return Err(Error::NonConvergence(
                        "profile declared exponential does not decay".into(),
                    ));
                }
            }
            DecayClass::Compact(qmax) => {
                if !(qmax > 0.0) || !qmax.is_finite() {
                    return domain(format!("compact support bound {qmax} must be positive"));
                }
            }
        }
        Ok(())
    }
}

/// Tolerances and limits for the oscillatory quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of lobes (or adaptive panels) per integral.
    pub max_panels: usize,
    /// Depth of the epsilon table: `2 * accel_terms + 1` partial sums.
    pub accel_terms: usize,
    /// Momentum beyond which the leading asymptotic term is split off.
    pub tail_cut: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { rel_tol: 1e-7, abs_tol: 1e-12, max_panels: 2000, accel_terms: 10, tail_cut: 40.0 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return domain("rel_tol and abs_tol must be positive");
        }
        if self.max_panels < 8 {
            return domain("max_panels must be at least 8");
        }
        if self.accel_terms < 4 {
            return domain("accel_terms must be at least 4");
        }
        if !(self.tail_cut > 0.0) || !self.tail_cut.is_finite() {
            return domain("tail_cut must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kernel {
    Sin,
    Cos,
}

/// `int_Q^inf q^a e^{iqr} dq` in the Abel sense, for integer `a >= 0`.
fn power_exp_tail(a: u32, q0: f64, r: f64) -> Complex64 {
    let phase = Complex64::from_polar(1.0, q0 * r);
    let i_over_r = Complex64::new(0.0, 1.0 / r);
    let mut acc = i_over_r * phase;
    for j in 1..=a {
        acc = i_over_r * (phase * q0.powi(j as i32) + j as f64 * acc);
    }
    acc
}

/// `int_0^inf q^m f(q) kernel(qr) dq`.
fn oscillatory(f: &MomentumProfile, m: i32, kernel: Kernel, r: f64, spec: &QuadratureSpec, abs_tol: f64) -> Result<f64> {
    let trig = move |q: f64| match kernel {
        Kernel::Sin => (q * r).sin(),
        Kernel::Cos => (q * r).cos(),
    };
    let g = |q: f64| {
        let v = f.eval(q);
        if v == 0.0 {
            0.0
        } else {
            q.powi(m) * v * trig(q)
        }
    };
    let period = PI / r;
    let offset = if kernel == Kernel::Sin { 0.0 } else { 0.5 * period };
    let lobe_tol_rel = 0.01 * spec.rel_tol;

    if let DecayClass::Compact(qmax) = f.decay {
        let mut breaks = vec![0.0];
        let mut q = offset;
        while q < qmax && breaks.len() < spec.max_panels {
            if q > 0.0 {
                breaks.push(q);
            }
            q += period;
        }
        breaks.push(qmax);
        let (v, _) = quadrature::integrate_breaks(&g, &breaks, abs_tol, lobe_tol_rel, spec.max_panels)?;
        return Ok(v);
    }

    // body: lobes up to Q0
    let max_body = (spec.max_panels / 2).max(1);
    let n_body = (((spec.tail_cut - offset) / period).ceil().max(1.0) as usize).min(max_body);
    let q0 = offset + n_body as f64 * period;
    let mut breaks = Vec::with_capacity(n_body + 2);
    breaks.push(0.0);
    if offset > 0.0 {
        breaks.push(offset);
    }
    for j in 1..=n_body {
        breaks.push(offset + j as f64 * period);
    }
    let (body, _) = quadrature::integrate_breaks(&g, &breaks, abs_tol, lobe_tol_rel, spec.max_panels)?;

    // leading asymptotic term c q^a, removed when it does not decay
    let (c, a) = match f.decay {
        DecayClass::Algebraic(k) => {
            let a = m as f64 - k;
            if a >= 0.0 {
                if (a - a.round()).abs() > 1e-12 {
                    return Err(Error::NonConvergence(format!(
                        "non-integer growth exponent {a} in oscillatory tail"
                    )));
                }
                let qc = 1e6f64.max(1e3 * q0);
                (f.eval(qc) * qc.powf(k), Some(a.round() as u32))
            } else {
                (0.0, None)
            }
        }
        _ => (0.0, None),
    };
    let closed = match a {
        Some(a) => {
            let t = c * power_exp_tail(a, q0, r);
            match kernel {
                Kernel::Sin => t.im,
                Kernel::Cos => t.re,
            }
        }
        None => 0.0,
    };
    let rem = |q: f64| {
        let lead = match a {
            Some(a) => c * q.powi(a as i32) * trig(q),
            None => 0.0,
        };
        g(q) - lead
    };

    // tail lobes only need to be accurate on the scale of the whole integral
    let lobe_abs = (0.01 * abs_tol).max(1e-3 * spec.rel_tol * (body.abs() + closed.abs()));
    let window = 2 * spec.accel_terms + 1;
    let max_lobes = spec.max_panels.saturating_sub(n_body).max(window + 2);
    let mut partial = Vec::with_capacity(max_lobes);
    let mut s = 0.0;
    let mut prev: Option<f64> = None;
    for j in 0..max_lobes {
        let lo = q0 + j as f64 * period;
        let (lobe, _) = quadrature::integrate(&rem, lo, lo + period, lobe_abs, lobe_tol_rel, 64)?;
        s += lobe;
        partial.push(s);
        if partial.len() >= window && partial.len() % 2 == 1 {
            let (est, _) = quadrature::wynn_epsilon(&partial[partial.len() - window..]);
            let total = body + closed + est;
            if let Some(p) = prev {
                if (est - p).abs() <= abs_tol.max(0.1 * spec.rel_tol * total.abs()) {
                    return Ok(total);
                }
            }
            prev = Some(est);
        }
    }
    Err(Error::NonConvergence(format!(
        "oscillatory tail at r = {r} failed the Cauchy criterion within {} lobes",
        n_body + max_lobes
    )))
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return domain(format!("radial transform needs finite r > 0, got {r}"));
    }
    Ok(())
}

/// `(2 pi^2 r)^-1 int_0^inf q f(q) sin(qr) dq`.
pub fn inverse_ft_radial(f: &MomentumProfile, r: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_r(r)?;
    spec.validate()?;
    f.validate()?;
    let pref = 2.0 * PI * PI * r;
    Ok(oscillatory(f, 1, Kernel::Sin, r, spec, spec.abs_tol * pref)? / pref)
}

/// Radial component of the transform of `p f(|p|)`, equal to `-d/dr` of
/// [`inverse_ft_radial`]:
/// `T(r)/r - (2 pi^2 r)^-1 int_0^inf q^2 f(q) cos(qr) dq`.
pub fn inverse_ft_gradient_radial(f: &MomentumProfile, r: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_r(r)?;
    spec.validate()?;
    f.validate()?;
    let pref = 2.0 * PI * PI * r;
    let sin_part = oscillatory(f, 1, Kernel::Sin, r, spec, spec.abs_tol * pref * r)?;
    let cos_part = oscillatory(f, 2, Kernel::Cos, r, spec, spec.abs_tol * pref)?;
    Ok(sin_part / (pref * r) - cos_part / pref)
}
