//! Radial densities of the exchange hole and exchange electron, their
//! iterated hierarchy, the Fermi-sea density matrix and exchange hole, and
//! the vacuum-polarization cloud; sum rules, moments, three-fermion terms
//! and the exciton geometry.
//!
//! Radii are in `lambda_C` for every kind. Fermi-sea kinds are evaluated at
//! `z = p_F r` and carry the `p_F^3` factor, so their shell integrals do not
//! depend on `p_F`.

use std::f64::consts::{FRAC_2_PI, PI};

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_breaks_fallible, integrate_to_infinity};
use crate::radialft::{inverse_ft_gradient_radial, inverse_ft_radial, DecayClass, MomentumProfile, QuadratureSpec};
use crate::specfun::{bessel_k, k0_k1, ln_bessel_k, ln_gamma_half_integer, one_minus_z_potential_combo};

/// CODATA 2018 fine-structure constant.
pub const ALPHA_CODATA: f64 = 7.297_352_569_3e-3;

/// Positronium comparison row: e-e+ bond and e-e- distance in Bohr radii,
/// and the apex angle at the positron in degrees.
pub const POSITRONIUM_BOND_SHORT_A0: f64 = 5.5;
pub const POSITRONIUM_BOND_LONG_A0: f64 = 9.0;
pub const POSITRONIUM_APEX_DEG: f64 = 110.0;
/// Rounded reference-electron to hole bond used in the ratio, in `lambda_C`.
pub const ROUNDED_HOLE_BOND: f64 = 1.3;

/// Smooth sum-rule and moment integrals are resolved to this relative accuracy.
const SMOOTH_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub alpha: f64,
    /// Fermi momentum in units of `m_e`.
    pub p_fermi: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants { alpha: ALPHA_CODATA, p_fermi: 1.0 }
    }
}

impl Constants {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return domain(format!("alpha must lie in (0, 1), got {}", self.alpha));
        }
        if !(self.p_fermi > 0.0) || !self.p_fermi.is_finite() {
            return domain(format!("p_fermi must be positive, got {}", self.p_fermi));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DensityKind {
    Hole,
    Electron,
    HoleN(u32),
    ElectronN(u32),
    InfiniteSumApprox,
    InfiniteSumNumeric,
    FermiDensityMatrix,
    FermiHole,
    VacuumPolarization,
}

impl DensityKind {
    fn validate(&self) -> Result<()> {
        match *self {
            DensityKind::HoleN(n) | DensityKind::ElectronN(n) if n < 1 => {
                domain(format!("iterated order must be >= 1, got {n}"))
            }
            DensityKind::HoleN(n) | DensityKind::ElectronN(n) if n > 1000 => {
                domain(format!("iterated order {n} exceeds the supported 1000"))
            }
            _ => Ok(()),
        }
    }

    pub fn is_fermi(&self) -> bool {
        matches!(self, DensityKind::FermiDensityMatrix | DensityKind::FermiHole)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialSample {
    pub r: f64,
    pub density: f64,
    /// `4 pi r^2 density`.
    pub shell: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleGeometry {
    pub bond_short: f64,
    pub bond_long: f64,
    pub apex_angle_deg: f64,
    pub positronium_ratio: f64,
}

pub(crate) fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return domain(format!("radius must be finite and > 0, got {r}"));
    }
    Ok(())
}

/// `f(z) = 3 z^-3 (sin z - z cos z)`, with `f(0) = 1`.
pub fn fermi_f(z: f64) -> f64 {
    let a = z.abs();
    if a < 0.5 {
        // 3 sum_{k>=1} (-1)^{k+1} 2k z^{2k-2} / (2k+1)!
        let z2 = z * z;
        let mut sum = 0.0;
        let mut pow = 1.0;
        let mut fact = 6.0; // (2k+1)! at k = 1
        for k in 1..12 {
            let kf = k as f64;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sum += sign * 2.0 * kf * pow / fact;
            pow *= z2;
            fact *= (2.0 * kf + 2.0) * (2.0 * kf + 3.0);
        }
        return 3.0 * sum;
    }
    3.0 * (z.sin() - z * z.cos()) / (z * z * z)
}

/// `K1(r) / (2 pi^2 r)`: transform of `1/E`, the magnitude of the hole density.
pub fn hole_amplitude(r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(bessel_k(2, r)?.value / (2.0 * PI * PI * r))
}

/// `K2(r) / (2 pi^2 r)`: magnitude of the radial gradient of [`hole_amplitude`].
pub fn hole_gradient_amplitude(r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(bessel_k(4, r)?.value / (2.0 * PI * PI * r))
}

/// Shell of the n-th iterated hole, `-r^n K_{n-2}(r) / [2^{n-2} Gamma(1/2) Gamma(n - 1/2)]`.
fn hole_n_shell(n: u32, r: f64) -> Result<f64> {
    let nf = n as f64;
    let order2 = (2 * n as i32 - 4).abs();
    let ln = nf * r.ln() + ln_bessel_k(order2, r)? - (nf - 2.0) * 2f64.ln() - 0.5 * PI.ln() - ln_gamma_half_integer(2 * n - 1);
    Ok(-ln.exp())
}

/// Shell of the n-th iterated electron, `r^{n+1/2} K_{n-3/2}(r) / [2^{n-3/2} Gamma(1/2) Gamma(n)]`.
fn electron_n_shell(n: u32, r: f64) -> Result<f64> {
    let nf = n as f64;
    let order2 = (2 * n as i32 - 3).abs();
    let ln = (nf + 0.5) * r.ln() + ln_bessel_k(order2, r)? - (nf - 1.5) * 2f64.ln() - 0.5 * PI.ln() - ln_gamma_half_integer(2 * n);
    Ok(ln.exp())
}

/// Momentum profile `-1/(1 + E)` whose transform is the infinite hole/electron sum.
pub fn infinite_sum_profile() -> MomentumProfile {
    MomentumProfile::new(|q| -1.0 / (1.0 + (1.0 + q * q).sqrt()), DecayClass::Algebraic(1.0))
}

/// Vacuum-polarization density
/// `-(alpha / 3 pi) {(2/pi) Ki1(z) + (2/pi) [K0(z)/z - K1(z)(1 - 2/z^2)]}` at `z = 2r`.
fn vacuum_polarization_density(r: f64, alpha: f64) -> Result<f64> {
    let z = 2.0 * r;
    let (k0, k1) = k0_k1(z);
    let om = one_minus_z_potential_combo(z)?;
    let bracket = om + FRAC_2_PI * (k0 / z - k1 * (1.0 - 2.0 / (z * z)));
    Ok(-alpha / (3.0 * PI) * bracket)
}

/// Density of `kind` at radius `r`; the numeric infinite sum uses `spec`.
pub fn density_with(kind: DensityKind, r: f64, c: &Constants, spec: &QuadratureSpec) -> Result<RadialSample> {
    check_radius(r)?;
    kind.validate()?;
    let four_pi_r2 = 4.0 * PI * r * r;
    let from_shell = |s: f64| s / four_pi_r2;
    let density = match kind {
        DensityKind::Hole => -hole_amplitude(r)?,
        DensityKind::Electron => (-r).exp() / (4.0 * PI * r),
        DensityKind::HoleN(n) => from_shell(hole_n_shell(n, r)?),
        DensityKind::ElectronN(n) => from_shell(electron_n_shell(n, r)?),
        DensityKind::InfiniteSumApprox => from_shell(-FRAC_2_PI * (-4.0 / PI * r).exp()),
        DensityKind::InfiniteSumNumeric => inverse_ft_radial(&infinite_sum_profile(), r, spec)?,
        DensityKind::FermiDensityMatrix => {
            c.validate()?;
            -fermi_f(c.p_fermi * r) * c.p_fermi.powi(3) / (6.0 * PI * PI)
        }
        DensityKind::FermiHole => {
            c.validate()?;
            -fermi_f(c.p_fermi * r).powi(2) * c.p_fermi.powi(3) / (6.0 * PI * PI)
        }
        DensityKind::VacuumPolarization => {
            c.validate()?;
            vacuum_polarization_density(r, c.alpha)?
        }
    };
    Ok(RadialSample { r, density, shell: four_pi_r2 * density })
}

/// [`density_with`] at the default quadrature settings.
pub fn density(kind: DensityKind, r: f64, c: &Constants) -> Result<RadialSample> {
    density_with(kind, r, c, &QuadratureSpec::default())
}

fn shell_integral(kind: DensityKind, weight_power: i32, upper: f64, c: &Constants, spec: &QuadratureSpec) -> Result<f64> {
    let mut breaks = vec![0.0];
    let scale = match kind {
        DensityKind::HoleN(n) | DensityKind::ElectronN(n) => 2.0 * n as f64,
        _ => 1.0,
    };
    for b in [0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0] {
        let x = b * scale;
        if x < upper {
            breaks.push(x);
        }
    }
    breaks.push(upper);
    let f = |r: f64| Ok(density_with(kind, r, c, spec)?.shell * r.powi(weight_power));
    let (v, _) = integrate_breaks_fallible(&f, &breaks, 1e-15, SMOOTH_REL_TOL, spec.max_panels)?;
    Ok(v)
}

/// Upper radius beyond which an exponentially decaying shell is negligible.
fn exponential_cutoff(kind: DensityKind) -> f64 {
    match kind {
        DensityKind::HoleN(n) | DensityKind::ElectronN(n) => 2.0 * n as f64 + 60.0 + 12.0 * (n as f64).sqrt(),
        _ => 60.0,
    }
}

/// `int_0^Z z^2 f(z)^2 dz` with `Z = k pi`, lobe by lobe.
fn fermi_hole_body(lobes: usize, spec: &QuadratureSpec) -> Result<f64> {
    let breaks: Vec<f64> = (0..=lobes).map(|k| k as f64 * PI).collect();
    let f = |z: f64| Ok((z * fermi_f(z)).powi(2));
    Ok(integrate_breaks_fallible(&f, &breaks, 1e-15, SMOOTH_REL_TOL, spec.max_panels)?.0)
}

/// `int_Z^inf z^2 f(z)^2 dz` for `Z` a multiple of `pi`:
/// `9 [1/(2Z) - 1/(12 Z^3)] + O(Z^-5)`.
fn fermi_hole_tail(z: f64) -> f64 {
    9.0 * (0.5 / z - 1.0 / (12.0 * z.powi(3)))
}

const FERMI_LOBES: usize = 64;

/// `int_0^inf shell(r) dr`.
pub fn sum_rule(kind: DensityKind, c: &Constants, spec: &QuadratureSpec) -> Result<f64> {
    kind.validate()?;
    spec.validate()?;
    match kind {
        DensityKind::FermiDensityMatrix => Err(Error::OscillatoryIntegral(
            "the density-matrix shell oscillates without decay; use fermi_partial_sum".into(),
        )),
        // integral of shell = transform at the origin of momentum space
        DensityKind::InfiniteSumNumeric => Ok(infinite_sum_profile().eval(0.0)),
        DensityKind::FermiHole => {
            c.validate()?;
            let zc = FERMI_LOBES as f64 * PI;
            let body = fermi_hole_body(FERMI_LOBES, spec)?;
            Ok(-2.0 / (3.0 * PI) * (body + fermi_hole_tail(zc)))
        }
        DensityKind::VacuumPolarization => Err(Error::NonConvergence(
            "the vacuum-polarization shell diverges like 1/r at the origin; integrate a finite range".into(),
        )),
        _ => shell_integral(kind, 0, exponential_cutoff(kind), c, spec),
    }
}

/// `int_a^b shell(r) dr` for any kind.
pub fn shell_charge_between(kind: DensityKind, a: f64, b: f64, c: &Constants, spec: &QuadratureSpec) -> Result<f64> {
    check_radius(a)?;
    if !(b > a) {
        return domain(format!("need b > a, got [{a}, {b}]"));
    }
    let mut breaks = vec![a];
    let mut x = a;
    // log-spaced panels resolve both the small-r singularities and the decay
    while x * 2.0 < b {
        x *= 2.0;
        breaks.push(x);
    }
    breaks.push(b);
    let f = |r: f64| Ok(density_with(kind, r, c, spec)?.shell);
    Ok(integrate_breaks_fallible(&f, &breaks, 1e-15, SMOOTH_REL_TOL, spec.max_panels)?.0)
}

/// `int_r^inf shell(s) ds` for exponentially decaying kinds.
pub fn shell_charge_beyond(kind: DensityKind, r: f64, c: &Constants, spec: &QuadratureSpec) -> Result<f64> {
    check_radius(r)?;
    let f = |s: f64| density_with(kind, s, c, spec).map(|d| d.shell).unwrap_or(f64::NAN);
    // every node is > r, so density errors only arise from non-convergence
    let (v, _) = integrate_to_infinity(&f, r, 1e-15, SMOOTH_REL_TOL, spec.max_panels)?;
    if v.is_nan() {
        return Err(Error::NonConvergence(format!("shell of {kind:?} failed beyond r = {r}")));
    }
    Ok(v)
}

/// Average distance `int r shell dr / int shell dr`.
pub fn mean_radius(kind: DensityKind, spec: &QuadratureSpec) -> Result<f64> {
    if !matches!(kind, DensityKind::Hole | DensityKind::Electron) {
        return domain(format!("mean_radius is defined for hole and electron, got {kind:?}"));
    }
    let c = Constants::default();
    let upper = exponential_cutoff(kind);
    let first = shell_integral(kind, 1, upper, &c, spec)?;
    let zeroth = shell_integral(kind, 0, upper, &c, spec)?;
    Ok(first / zeroth)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartialSum {
    pub hole_part: f64,
    pub electron_part: f64,
    pub total_shell: f64,
    /// Terms whose shell underflowed to zero at this radius.
    pub dropped_terms: u32,
}

/// Shells summed over orders `1..=N` of the hole and electron hierarchies.
/// The sum ends on an electron term, so its integral vanishes.
pub fn partial_sum_series(max_order: u32, r: f64) -> Result<PartialSum> {
    check_radius(r)?;
    if !(1..=1000).contains(&max_order) {
        return domain(format!("max_order must be in 1..=1000, got {max_order}"));
    }
    let mut out = PartialSum { hole_part: 0.0, electron_part: 0.0, total_shell: 0.0, dropped_terms: 0 };
    for n in 1..=max_order {
        let h = hole_n_shell(n, r)?;
        let e = electron_n_shell(n, r)?;
        out.dropped_terms += (h == 0.0) as u32 + (e == 0.0) as u32;
        out.hole_part += h;
        out.electron_part += e;
    }
    out.total_shell = out.hole_part + out.electron_part;
    Ok(out)
}

/// `int_0^R shell(fermi_density_matrix) dr`, by quadrature in `z = p_F r`.
pub fn fermi_partial_sum(radius: f64, c: &Constants, spec: &QuadratureSpec) -> Result<f64> {
    check_radius(radius)?;
    c.validate()?;
    let zmax = c.p_fermi * radius;
    let mut breaks: Vec<f64> = vec![0.0];
    let mut k = 1.0;
    while k * PI < zmax {
        breaks.push(k * PI);
        k += 1.0;
    }
    breaks.push(zmax);
    let f = |z: f64| Ok(z * z * fermi_f(z));
    let (v, _) = integrate_breaks_fallible(&f, &breaks, 1e-15, SMOOTH_REL_TOL, spec.max_panels)?;
    Ok(-2.0 / (3.0 * PI) * v)
}

/// Bisection for `g(z) = 0` on `[a, b]`.
pub fn bisect(g: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> Result<f64> {
    let (mut ga, gb) = (g(a), g(b));
    if ga == 0.0 {
        return Ok(a);
    }
    if gb == 0.0 {
        return Ok(b);
    }
    if ga.signum() == gb.signum() {
        return Err(Error::RootNotBracketed(format!("no sign change on [{a}, {b}]")));
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let gm = g(m);
        if gm == 0.0 {
            return Ok(m);
        }
        if gm.signum() == ga.signum() {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Half-height radius of a Fermi-sea profile, in units of `1/p_F`.
pub fn half_height_radius(kind: DensityKind, _c: &Constants) -> Result<f64> {
    let power = match kind {
        DensityKind::FermiHole => 2,
        DensityKind::FermiDensityMatrix => 1,
        _ => return domain(format!("half_height_radius needs a Fermi kind, got {kind:?}")),
    };
    bisect(|z| fermi_f(z).powi(power) - 0.5, 1e-9, PI)
}

/// Single-exchange three-fermion terms
/// `(-4 [K1/(2 pi^2 r)]^2, -4 [K2/(2 pi^2 r)]^2)`.
pub fn three_fermion_single_exchange(r: f64) -> Result<(f64, f64)> {
    let h = hole_amplitude(r)?;
    let g = hole_gradient_amplitude(r)?;
    Ok((-4.0 * h * h, -4.0 * g * g))
}

/// The same terms from the double momentum integral of the two-momentum
/// integrand. Writing `d = r e_z`, the integrand splits into
/// `-4 cos(p.d) cos(p'.d) / (E E') - 4 sin(p.d) sin(p'.d) (1 + p.p'/(E E'))`,
/// whose integrals factor into squares of the radial transforms of `1/E`.
pub fn three_fermion_single_exchange_quadrature(r: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let f = MomentumProfile::inverse_energy_power(1);
    let t = inverse_ft_radial(&f, r, spec)?;
    let g = inverse_ft_gradient_radial(&f, r, spec)?;
    Ok((-4.0 * t * t, -4.0 * g * g))
}

/// Double-exchange term `(1/3) [h(r1) h(r2) + g(r1) g(r2)]`.
pub fn three_fermion_double_exchange(r1: f64, r2: f64) -> Result<f64> {
    let (h1, h2) = (hole_amplitude(r1)?, hole_amplitude(r2)?);
    let (g1, g2) = (hole_gradient_amplitude(r1)?, hole_gradient_amplitude(r2)?);
    Ok((h1 * h2 + g1 * g2) / 3.0)
}

/// Bracket terms `(A, B, C)` of the Fermi-sea three-fermion correlation at
/// `p_F`-scaled pair separations.
pub fn fermi_three_correlation(z: f64, z1: f64, z2: f64) -> Result<(f64, f64, f64)> {
    for x in [z, z1, z2] {
        if !(x >= 0.0) || !x.is_finite() {
            return domain(format!("separations must be finite and >= 0, got {x}"));
        }
    }
    let (f0, f1, f2) = (fermi_f(z), fermi_f(z1), fermi_f(z2));
    Ok((1.0, -(f0 * f0 + f1 * f1 + f2 * f2), f0 * f1 * f2))
}

/// Apex angle in degrees of an isosceles triangle with two sides `short`
/// and base `long`.
pub fn apex_angle_deg(short: f64, long: f64) -> Result<f64> {
    if !(short > 0.0 && long > 0.0 && long < 2.0 * short) {
        return domain(format!("sides ({short}, {short}, {long}) do not form a triangle"));
    }
    Ok(2.0 * (long / (2.0 * short)).asin().to_degrees())
}

/// Exchange exciton: reference electron and exchange electron both at the
/// hole's mean distance `4/pi`, electron-electron distance 2.
pub fn exciton_geometry(c: &Constants) -> Result<TriangleGeometry> {
    c.validate()?;
    let bond_short = 4.0 / PI;
    let bond_long = 2.0;
    Ok(TriangleGeometry {
        bond_short,
        bond_long,
        apex_angle_deg: apex_angle_deg(bond_short, bond_long)?,
        positronium_ratio: (POSITRONIUM_BOND_SHORT_A0 / c.alpha) / ROUNDED_HOLE_BOND,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn c() -> Constants {
        Constants::default()
    }

    #[test]
    fn hole_small_r_limit() {
        let s = density(DensityKind::Hole, 1e-3, &c()).unwrap().shell;
        assert!((s + FRAC_2_PI).abs() < 1e-5, "{s}");
    }

    #[test]
    fn electron_shell_is_r_exp() {
        let s = density(DensityKind::Electron, 1.0, &c()).unwrap();
        assert!((s.shell - (-1f64).exp()).abs() < 1e-16);
        assert_eq!(s.shell, 4.0 * PI * s.r * s.r * s.density);
    }

    #[test]
    fn first_iterates_reduce_to_base_kinds() {
        for &r in &[0.01, 0.3, 2.0, 9.0, 40.0] {
            let h1 = density(DensityKind::HoleN(1), r, &c()).unwrap().density;
            let h = density(DensityKind::Hole, r, &c()).unwrap().density;
            assert!(((h1 - h) / h).abs() < 1e-12, "{r}");
            let e1 = density(DensityKind::ElectronN(1), r, &c()).unwrap().density;
            let e = density(DensityKind::Electron, r, &c()).unwrap().density;
            assert!(((e1 - e) / e).abs() < 1e-12, "{r}");
        }
    }

    #[test]
    fn iterated_hole_against_integral_oracle() {
        // n = 3: -r^3 K1(r) / (2 sqrt(pi) Gamma(5/2)) = -r^3 K1 / (1.5 pi)
        let r = 2.5;
        let v = density(DensityKind::HoleN(3), r, &c()).unwrap().shell;
        let o = -r.powi(3) * oracle::bessel_k_integral(1.0, r) / (1.5 * PI);
        assert!(((v - o) / o).abs() < 1e-13);
    }

    #[test]
    fn fermi_contact_value() {
        let d = density(DensityKind::FermiDensityMatrix, 1e-6, &c()).unwrap().density;
        assert!((d + 1.0 / (6.0 * PI * PI)).abs() < 1e-14);
        let h = density(DensityKind::FermiHole, 1e-6, &c()).unwrap().density;
        assert!((h - d).abs() < 1e-14);
    }

    #[test]
    fn fermi_f_series_matches_closed_form() {
        for z in [0.49f64, 0.5, 0.51] {
            let closed = 3.0 * (z.sin() - z * z.cos()) / (z * z * z);
            assert!((fermi_f(z) - closed).abs() < 1e-13, "{z}");
        }
        assert_eq!(fermi_f(0.0), 1.0);
    }

    #[test]
    fn vp_density_matches_uehling_integral() {
        for &r in &[0.01, 0.2, 1.0, 3.0, 6.0, 20.0] {
            let v = density(DensityKind::VacuumPolarization, r, &c()).unwrap().density;
            let o = oracle::uehling_density(r, c().alpha);
            assert!(((v - o) / o).abs() < 1e-9, "r {r}: {v} {o}");
        }
    }

    #[test]
    fn base_sum_rules() {
        let spec = QuadratureSpec::default();
        assert!((sum_rule(DensityKind::Hole, &c(), &spec).unwrap() + 1.0).abs() < 1e-10);
        assert!((sum_rule(DensityKind::Electron, &c(), &spec).unwrap() - 1.0).abs() < 1e-12);
        assert!((sum_rule(DensityKind::HoleN(5), &c(), &spec).unwrap() + 1.0).abs() < 1e-10);
        assert!((sum_rule(DensityKind::ElectronN(5), &c(), &spec).unwrap() - 1.0).abs() < 1e-10);
        assert!((sum_rule(DensityKind::InfiniteSumApprox, &c(), &spec).unwrap() + 0.5).abs() < 1e-12);
        assert_eq!(sum_rule(DensityKind::InfiniteSumNumeric, &c(), &spec).unwrap(), -0.5);
        assert!(matches!(
            sum_rule(DensityKind::FermiDensityMatrix, &c(), &spec),
            Err(Error::OscillatoryIntegral(_))
        ));
    }

    #[test]
    fn fermi_hole_sum_rule_independent_of_pf() {
        let spec = QuadratureSpec::default();
        for pf in [0.3, 1.0, 4.0] {
            let v = sum_rule(DensityKind::FermiHole, &Constants { p_fermi: pf, ..c() }, &spec).unwrap();
            assert!((v + 1.0).abs() < 1e-6, "{pf}: {v}");
        }
    }

    #[test]
    fn mean_radii() {
        let spec = QuadratureSpec::default();
        assert!((mean_radius(DensityKind::Hole, &spec).unwrap() - 4.0 / PI).abs() < 1e-10);
        assert!((mean_radius(DensityKind::Electron, &spec).unwrap() - 2.0).abs() < 1e-10);
        assert!(mean_radius(DensityKind::FermiHole, &spec).is_err());
    }

    #[test]
    fn fermi_partial_sum_against_si() {
        let spec = QuadratureSpec::default();
        for zr in [0.01, 3.0, 10.0, 20.5, 101.0] {
            let v = fermi_partial_sum(zr, &c(), &spec).unwrap();
            let o = oracle::fermi_partial_sum(zr);
            assert!((v - o).abs() < 1e-10, "{zr}");
        }
        assert!(fermi_partial_sum(0.01, &c(), &spec).unwrap().abs() < 1e-6);
    }

    #[test]
    fn half_heights() {
        let h = half_height_radius(DensityKind::FermiHole, &c()).unwrap();
        let d = half_height_radius(DensityKind::FermiDensityMatrix, &c()).unwrap();
        assert!((h - 1.81).abs() < 0.01, "{h}");
        assert!((d - 2.50).abs() < 0.01, "{d}");
        assert!((fermi_f(1.81).powi(2) - 0.5).abs() < 0.01);
        assert!(half_height_radius(DensityKind::Hole, &c()).is_err());
    }

    #[test]
    fn partial_sums() {
        let p = partial_sum_series(1, 1.0).unwrap();
        let h = density(DensityKind::Hole, 1.0, &c()).unwrap().shell;
        assert!((p.hole_part - h).abs() < 1e-15);
        assert!((p.electron_part - (-1f64).exp()).abs() < 1e-15);
        assert!(partial_sum_series(0, 1.0).is_err());
        let big = partial_sum_series(3, 800.0).unwrap();
        assert!(big.dropped_terms > 0);
        assert!(big.total_shell.is_finite());
    }

    #[test]
    fn partial_sum_tends_to_numeric_infinite_sum() {
        let spec = QuadratureSpec { rel_tol: 1e-10, ..Default::default() };
        let r = 1.0;
        let target = density_with(DensityKind::InfiniteSumNumeric, r, &c(), &spec).unwrap().shell;
        let err = |n: u32| (partial_sum_series(n, r).unwrap().total_shell - target).abs();
        let (e1, e2) = (err(50), err(200));
        assert!(e2 < e1 && e2 < 5e-3, "{e1} {e2}");
    }

    #[test]
    fn single_exchange_terms() {
        let (h, g) = three_fermion_single_exchange(1.0).unwrap();
        let k1 = oracle::bessel_k_integral(1.0, 1.0) / (2.0 * PI * PI);
        let k2 = oracle::bessel_k_integral(2.0, 1.0) / (2.0 * PI * PI);
        assert!((h + 4.0 * k1 * k1).abs() < 1e-15);
        assert!((g + 4.0 * k2 * k2).abs() < 1e-15);
        assert!(three_fermion_single_exchange(0.0).is_err());
    }

    #[test]
    fn double_exchange_symmetric_positive() {
        let a = three_fermion_double_exchange(0.7, 2.0).unwrap();
        let b = three_fermion_double_exchange(2.0, 0.7).unwrap();
        assert_eq!(a, b);
        assert!(a > 0.0);
    }

    #[test]
    fn fermi_three_correlation_at_origin() {
        assert_eq!(fermi_three_correlation(0.0, 0.0, 0.0).unwrap(), (1.0, -3.0, 1.0));
        assert!(fermi_three_correlation(-1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn geometry() {
        let g = exciton_geometry(&c()).unwrap();
        assert!((g.apex_angle_deg - 103.49).abs() < 0.05);
        assert!((g.positronium_ratio / 580.0 - 1.0).abs() < 0.03);
        assert!((apex_angle_deg(1.0, 1.0).unwrap() - 60.0).abs() < 1e-12);
        assert!(apex_angle_deg(1.0, 2.5).is_err());
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(density(DensityKind::Hole, 0.0, &c()).is_err());
        assert!(density(DensityKind::HoleN(0), 1.0, &c()).is_err());
        assert!(density(DensityKind::Hole, -1.0, &c()).is_err());
    }
}
