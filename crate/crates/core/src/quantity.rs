//! Tabulatable quantities addressed by string keys.
//!
//! Keys:
//!
//! ```text
//! density_K | shell_K       K = hole, electron, hole_n, electron_n, infinite_approx,
//!                           infinite_numeric, fermi_dm, fermi_hole, vp   (hole_n/electron_n need n)
//! shell_sum                 hole + electron shells
//! potential_S               S = hole, electron, reference
//! field_S                   S = hole, electron, reference, vp
//! force:R:S                 R = hole, electron, vp; S as for field_S
//! partial_hole | partial_electron | partial_total     (need n = max order)
//! single_exchange_hole | single_exchange_gradient
//! ```

use crate::densities::{density_with, partial_sum_series, three_fermion_single_exchange, Constants, DensityKind};
use crate::error::{domain, Result};
use crate::fields::{field, force_density, potential, Source};
use crate::radialft::QuadratureSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartialPart {
    Hole,
    Electron,
    Total,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Density(DensityKind),
    Shell(DensityKind),
    ShellSum,
    Potential(Source),
    Field(Source),
    Force(Source, Source),
    Partial(PartialPart, u32),
    SingleExchangeHole,
    SingleExchangeGradient,
}

fn need_n(key: &str, n: Option<u32>) -> Result<u32> {
    match n {
        Some(n) if n >= 1 => Ok(n),
        Some(n) => domain(format!("'{key}' needs n >= 1, got {n}")),
        None => domain(format!("'{key}' needs --n")),
    }
}

fn density_kind(token: &str, key: &str, n: Option<u32>) -> Result<DensityKind> {
    Ok(match token {
        "hole" => DensityKind::Hole,
        "electron" => DensityKind::Electron,
        "hole_n" => DensityKind::HoleN(need_n(key, n)?),
        "electron_n" => DensityKind::ElectronN(need_n(key, n)?),
        "infinite_approx" => DensityKind::InfiniteSumApprox,
        "infinite_numeric" => DensityKind::InfiniteSumNumeric,
        "fermi_dm" => DensityKind::FermiDensityMatrix,
        "fermi_hole" => DensityKind::FermiHole,
        "vp" => DensityKind::VacuumPolarization,
        _ => return domain(format!("unknown density kind '{token}' in '{key}'")),
    })
}

pub fn source_token(token: &str) -> Result<Source> {
    Ok(match token {
        "hole" => Source::Hole,
        "electron" => Source::Electron,
        "reference" => Source::Reference,
        "vp" => Source::VacuumPolarization,
        _ => return domain(format!("unknown source '{token}'")),
    })
}

pub fn source_name(s: Source) -> &'static str {
    match s {
        Source::Hole => "hole",
        Source::Electron => "electron",
        Source::Reference => "reference",
        Source::VacuumPolarization => "vp",
    }
}

impl Quantity {
    /// Parses a key; `n` supplies the order for iterated kinds and partial sums.
    pub fn parse(key: &str, n: Option<u32>) -> Result<Quantity> {
        if let Some(rest) = key.strip_prefix("force:") {
            let mut it = rest.split(':');
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return domain(format!("force key must be force:RHO:FIELD, got '{key}'"));
            };
            let rho = source_token(a)?;
            if rho == Source::Reference {
                return domain("the reference electron has no extended charge density");
            }
            return Ok(Quantity::Force(rho, source_token(b)?));
        }
        if let Some(t) = key.strip_prefix("density_") {
            return Ok(Quantity::Density(density_kind(t, key, n)?));
        }
        if key == "shell_sum" {
            return Ok(Quantity::ShellSum);
        }
        if let Some(t) = key.strip_prefix("shell_") {
            return Ok(Quantity::Shell(density_kind(t, key, n)?));
        }
        if let Some(t) = key.strip_prefix("potential_") {
            let s = source_token(t)?;
            if s == Source::VacuumPolarization {
                return domain("the vacuum-polarization potential has no closed form");
            }
            return Ok(Quantity::Potential(s));
        }
        if let Some(t) = key.strip_prefix("field_") {
            return Ok(Quantity::Field(source_token(t)?));
        }
        match key {
            "partial_hole" => Ok(Quantity::Partial(PartialPart::Hole, need_n(key, n)?)),
            "partial_electron" => Ok(Quantity::Partial(PartialPart::Electron, need_n(key, n)?)),
            "partial_total" => Ok(Quantity::Partial(PartialPart::Total, need_n(key, n)?)),
            "single_exchange_hole" => Ok(Quantity::SingleExchangeHole),
            "single_exchange_gradient" => Ok(Quantity::SingleExchangeGradient),
            _ => domain(format!("unknown quantity '{key}'")),
        }
    }

    pub fn eval(&self, r: f64, c: &Constants, spec: &QuadratureSpec) -> Result<f64> {
        match *self {
            Quantity::Density(k) => Ok(density_with(k, r, c, spec)?.density),
            Quantity::Shell(k) => Ok(density_with(k, r, c, spec)?.shell),
            Quantity::ShellSum => {
                Ok(density_with(DensityKind::Hole, r, c, spec)?.shell + density_with(DensityKind::Electron, r, c, spec)?.shell)
            }
            Quantity::Potential(s) => potential(s, r),
            Quantity::Field(s) => field(s, r, c),
            Quantity::Force(a, b) => Ok(force_density(a, b, r, c)?.value),
            Quantity::Partial(part, n) => {
                let p = partial_sum_series(n, r)?;
                Ok(match part {
                    PartialPart::Hole => p.hole_part,
                    PartialPart::Electron => p.electron_part,
                    PartialPart::Total => p.total_shell,
                })
            }
            Quantity::SingleExchangeHole => Ok(three_fermion_single_exchange(r)?.0),
            Quantity::SingleExchangeGradient => Ok(three_fermion_single_exchange(r)?.1),
        }
    }
}
