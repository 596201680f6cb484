//! Electrostatic potentials and radial fields of the exchange hole, the
//! exchange electron, the reference electron and the vacuum-polarization
//! cloud; Gauss-law and Poisson oracles; force-density profiles.
//!
//! Densities count electrons, so the charge density is `rho = -n` in units of
//! `e`, and `laplacian(Phi) = -4 pi rho`.

use std::f64::consts::{FRAC_2_PI, PI};

use serde::Serialize;

use crate::densities::{check_radius, density_with, shell_charge_beyond, Constants, DensityKind};
use crate::error::{domain, Result};
use crate::quadrature::integrate_breaks_fallible;
use crate::radialft::QuadratureSpec;
use crate::specfun::{field_combo, k0_k1, one_minus_z_potential_combo, potential_combo};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Source {
    Hole,
    Electron,
    /// Point charge `-e` at the origin.
    Reference,
    VacuumPolarization,
}

impl Source {
    pub fn density_kind(&self) -> Option<DensityKind> {
        match self {
            Source::Hole => Some(DensityKind::Hole),
            Source::Electron => Some(DensityKind::Electron),
            Source::VacuumPolarization => Some(DensityKind::VacuumPolarization),
            Source::Reference => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSample {
    pub r: f64,
    pub potential: f64,
    pub field_radial: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForceDensitySample {
    pub r: f64,
    /// `4 pi r^2 rho(r) E(r)`.
    pub value: f64,
    pub rho_source: Source,
    pub field_source: Source,
}

/// Potential of the hole (`K0 L_{-1} + K1 L0`) or the electron
/// (`-(1 - e^-r)/r`), in units of `e / lambda_C`.
pub fn potential(source: Source, r: f64) -> Result<f64> {
    check_radius(r)?;
    match source {
        Source::Hole => potential_combo(r),
        Source::Electron => Ok((-r).exp_m1() / r),
        Source::Reference => Ok(-1.0 / r),
        Source::VacuumPolarization => domain("the vacuum-polarization potential has no closed form"),
    }
}

/// `1 - (1 + r) e^-r`, accurate at small `r`.
fn electron_enclosed(r: f64) -> f64 {
    if r < 0.1 {
        // sum_{k>=2} (-1)^k (k - 1) r^k / k!
        let mut term = r * r / 2.0;
        let mut sum = 0.0;
        for k in 2..20 {
            sum += (k - 1) as f64 * term;
            term *= -r / (k + 1) as f64;
        }
        return sum;
    }
    -(-r).exp_m1() - r * (-r).exp()
}

/// `E^VP` as it follows from the Struve-form line of the printed field,
/// rewritten with `Ki1`: `(2 alpha / 9) {-z (2/pi) Ki1 - (2/pi)(1 - 6/z^2) K0 + (2/pi)(z + 1/z) K1}`, `z = 2r`.
pub fn vacuum_polarization_field_printed_sign(r: f64, c: &Constants) -> Result<f64> {
    check_radius(r)?;
    c.validate()?;
    let z = 2.0 * r;
    let (k0, k1) = k0_k1(z);
    let om = one_minus_z_potential_combo(z)?;
    let brace = -z * om - FRAC_2_PI * (1.0 - 6.0 / (z * z)) * k0 + FRAC_2_PI * (z + 1.0 / z) * k1;
    Ok(2.0 * c.alpha / 9.0 * brace)
}

/// Radial field in units of `e / lambda_C^2`.
pub fn field(source: Source, r: f64, c: &Constants) -> Result<f64> {
    check_radius(r)?;
    match source {
        Source::Reference => Ok(-1.0 / (r * r)),
        Source::Electron => Ok(-electron_enclosed(r) / (r * r)),
        Source::Hole => Ok(field_combo(r)? / r),
        // the printed sign points the field of a net positive shell inward
        Source::VacuumPolarization => Ok(-vacuum_polarization_field_printed_sign(r, c)?),
    }
}

pub fn field_sample(source: Source, r: f64, c: &Constants) -> Result<FieldSample> {
    Ok(FieldSample { r, potential: potential(source, r)?, field_radial: field(source, r, c)? })
}

/// Log-spaced breakpoints on `(0, r]` for shells that are finite at the origin.
fn breaks_to(r: f64) -> Vec<f64> {
    let mut b: Vec<f64> = (0..=12).rev().map(|k| r / 2f64.powi(k)).collect();
    b.insert(0, 0.0);
    b
}

/// Charge inside radius `r`, `q(r) = -int_0^r shell`, in units of `e`.
/// The vacuum-polarization cloud is neutral together with its compensating
/// point charge, so there `q(r) = +int_r^inf shell`.
pub fn gauss_enclosed_charge(kind: DensityKind, r: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_radius(r)?;
    let c = Constants::default();
    if kind == DensityKind::VacuumPolarization {
        return shell_charge_beyond(kind, r, &c, spec);
    }
    let f = |s: f64| Ok(density_with(kind, s, &c, spec)?.shell);
    let (v, _) = integrate_breaks_fallible(&f, &breaks_to(r), 1e-300, 1e-13, spec.max_panels)?;
    Ok(-v)
}

/// `r Phi(r)` minus its large-`r` constant. The constant is the harmonic
/// `Q/r` part of `Phi` and drops out of the Laplacian; removing it keeps the
/// difference stencil at full relative precision where `Phi - Q/r` is tiny.
fn r_potential_shifted(source: Source, r: f64) -> Result<f64> {
    match source {
        Source::Hole => Ok(-one_minus_z_potential_combo(r)?),
        Source::Electron => Ok((-r).exp()),
        _ => domain(format!("no closed-form potential for {source:?}")),
    }
}

/// `r^-1 [r Phi]'' + 4 pi rho` by 5-point centered differences, `h = 1e-3 r`.
pub fn poisson_residual(source: Source, r: f64) -> Result<f64> {
    if !(0.05..=20.0).contains(&r) {
        return domain(format!("poisson_residual is stenciled on [0.05, 20], got {r}"));
    }
    let kind = match source {
        Source::Hole | Source::Electron => source.density_kind().unwrap(),
        _ => return domain(format!("poisson_residual needs hole or electron, got {source:?}")),
    };
    let h = 1e-3 * r;
    let u = |x: f64| r_potential_shifted(source, x);
    let d2 = (-u(r + 2.0 * h)? + 16.0 * u(r + h)? - 30.0 * u(r)? + 16.0 * u(r - h)? - u(r - 2.0 * h)?) / (12.0 * h * h);
    let rho = -density_with(kind, r, &Constants::default(), &QuadratureSpec::default())?.density;
    Ok(d2 / r + 4.0 * PI * rho)
}

/// `|residual| / max(|4 pi rho|, 1e-12)`.
pub fn poisson_relative_residual(source: Source, r: f64) -> Result<f64> {
    let kind = source.density_kind().filter(|_| matches!(source, Source::Hole | Source::Electron));
    let Some(kind) = kind else {
        return domain(format!("poisson_residual needs hole or electron, got {source:?}"));
    };
    let res = poisson_residual(source, r)?;
    let scale = (4.0 * PI * density_with(kind, r, &Constants::default(), &QuadratureSpec::default())?.density).abs();
    Ok(res.abs() / scale.max(1e-12))
}

/// `-(Phi(r + h) - Phi(r - h)) / 2h` with `h = 1e-5 r`.
pub fn field_finite_difference(source: Source, r: f64) -> Result<f64> {
    check_radius(r)?;
    let h = 1e-5 * r;
    Ok(-(potential(source, r + h)? - potential(source, r - h)?) / (2.0 * h))
}

/// `4 pi r^2 rho(r) E(r)` with `rho = -n` of `rho_source`.
pub fn force_density(rho_source: Source, field_source: Source, r: f64, c: &Constants) -> Result<ForceDensitySample> {
    check_radius(r)?;
    let Some(kind) = rho_source.density_kind() else {
        return domain("the reference electron has no extended charge density");
    };
    let rho_shell = -density_with(kind, r, c, &QuadratureSpec::default())?.shell;
    Ok(ForceDensitySample { r, value: rho_shell * field(field_source, r, c)?, rho_source, field_source })
}

/// `I(r) = int n^h(r') / |r - r'| d^3 r'` by the shell theorem,
/// `(1/r) int_0^r shell + int_r^inf shell / r'`.
pub fn exchange_energy_density_integral(r: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_radius(r)?;
    let c = Constants::default();
    let kind = DensityKind::Hole;
    let inner = -gauss_enclosed_charge(kind, r, spec)?;
    let f = |s: f64| Ok(density_with(kind, s, &c, spec)?.shell / s);
    let mut breaks = vec![r];
    let mut x = r;
    while x < 80.0 {
        x = (2.0 * x).max(x + 1.0);
        breaks.push(x.min(80.0));
    }
    let (outer, _) = integrate_breaks_fallible(&f, &breaks, 1e-300, 1e-13, spec.max_panels)?;
    Ok(inner / r + outer)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> Constants {
        Constants::default()
    }

    #[test]
    fn electron_potential_limits() {
        assert!((potential(Source::Electron, 1e-6).unwrap() + 1.0).abs() < 1e-6);
        assert!((potential(Source::Electron, 50.0).unwrap() + 1.0 / 50.0).abs() < 1e-15);
    }

    #[test]
    fn electron_field_at_one() {
        let e = field(Source::Electron, 1.0, &c()).unwrap();
        assert!((e + (1.0 - 2.0 / 1f64.exp())).abs() < 1e-15);
        let small = field(Source::Electron, 1e-4, &c()).unwrap();
        // -1/2 + r/3 - r^2/8 at small r
        assert!((small + 0.5 - 1e-4 / 3.0 + 1e-8 / 8.0).abs() < 1e-13);
    }

    #[test]
    fn hole_far_field() {
        let r = 50.0;
        assert!((potential(Source::Hole, r).unwrap() * r - 1.0).abs() < 1e-6);
        assert!((field(Source::Hole, r, &c()).unwrap() * r * r - 1.0).abs() < 1e-6);
    }

    #[test]
    fn hole_field_is_minus_gradient() {
        for r in [0.5, 1.0, 2.0, 9.0] {
            let e = field(Source::Hole, r, &c()).unwrap();
            let fd = field_finite_difference(Source::Hole, r).unwrap();
            assert!(((e - fd) / e).abs() < 1e-6, "{r}");
        }
    }

    #[test]
    fn gauss_law_hole_electron() {
        let spec = QuadratureSpec::default();
        for r in [0.1, 1.0, 5.0, 20.0] {
            for (s, k) in [(Source::Hole, DensityKind::Hole), (Source::Electron, DensityKind::Electron)] {
                let e = field(s, r, &c()).unwrap();
                let q = gauss_enclosed_charge(k, r, &spec).unwrap();
                assert!((e - q / (r * r)).abs() <= 1e-9 * e.abs(), "{s:?} {r}: {e} {}", q / (r * r));
            }
        }
    }

    #[test]
    fn gauss_law_vacuum_polarization() {
        let spec = QuadratureSpec::default();
        for r in [0.5, 1.0, 2.5, 5.0] {
            let e = field(Source::VacuumPolarization, r, &c()).unwrap();
            let q = gauss_enclosed_charge(DensityKind::VacuumPolarization, r, &spec).unwrap();
            assert!(((e - q / (r * r)) / e).abs() < 1e-8, "{r}: {e} {}", q / (r * r));
            let printed = vacuum_polarization_field_printed_sign(r, &c()).unwrap();
            assert!(((printed + q / (r * r)) / e).abs() < 1e-8);
        }
    }

    #[test]
    fn poisson_residuals_small() {
        for s in [Source::Hole, Source::Electron] {
            for r in [0.05, 0.3, 1.0, 2.0, 7.0, 20.0] {
                let rel = poisson_relative_residual(s, r).unwrap();
                assert!(rel < 1e-4, "{s:?} {r}: {rel}");
            }
        }
        assert!(poisson_residual(Source::Hole, 0.01).is_err());
        assert!(poisson_residual(Source::Reference, 1.0).is_err());
    }

    #[test]
    fn force_density_signs() {
        let a = force_density(Source::Hole, Source::Electron, 1.0, &c()).unwrap();
        assert!(a.value < 0.0);
        let b = force_density(Source::Electron, Source::Reference, 1.0, &c()).unwrap();
        assert!(b.value > 0.0);
        let s = force_density(Source::Hole, Source::Hole, 1.0, &c()).unwrap();
        let rho = -density_with(DensityKind::Hole, 1.0, &c(), &QuadratureSpec::default()).unwrap().density;
        assert!((s.value - 4.0 * PI * rho * field(Source::Hole, 1.0, &c()).unwrap()).abs() < 1e-16);
        assert!(force_density(Source::Reference, Source::Hole, 1.0, &c()).is_err());
    }

    #[test]
    fn energy_integral_matches_potential() {
        let spec = QuadratureSpec::default();
        for r in [0.2, 1.0, 50.0] {
            let i = exchange_energy_density_integral(r, &spec).unwrap();
            let phi = potential(Source::Hole, r).unwrap();
            assert!((i + phi).abs() < 1e-9, "{r}: {i} {phi}");
        }
        assert!((exchange_energy_density_integral(50.0, &spec).unwrap() + 0.02).abs() < 1e-6);
    }
}
