//! Curve data for the radial-density and force-density figures, and the CSV
//! text they are written as.
//!
//! Figures 2, 3, 6 and 7 use a 400-point log grid on `[0.01, 10] lambda_C`.
//! Figure 5 uses `x = r / lambda_F` on `[0.01, 3]` with `lambda_F = 2 pi / p_F`,
//! and reports shells per unit `x` (`lambda_F * 4 pi r^2 n`), so both curves
//! integrate to their electron counts over `x`.

use std::f64::consts::PI;

use crate::densities::{density_with, partial_sum_series, Constants, DensityKind};
use crate::error::{domain, Result};
use crate::fields::{force_density, Source};
use crate::grid::{radial_grid, Spacing};
use crate::parallel::map_grid;
use crate::quantity::source_name;
use crate::radialft::QuadratureSpec;

pub const FIGURE_IDS: [u32; 5] = [2, 3, 5, 6, 7];
pub const FIGURE_POINTS: usize = 400;
pub const DEFAULT_MAX_ORDER: u32 = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub file_name: String,
    pub column: String,
    pub r: Vec<f64>,
    pub values: Vec<f64>,
}

/// Shortest decimal that round-trips `v` after rounding to `precision`
/// significant digits (`17` keeps every bit).
pub fn format_float(v: f64, precision: usize) -> String {
    let v = if precision >= 17 || !v.is_finite() {
        v
    } else {
        format!("{:.*e}", precision.max(1) - 1, v).parse().unwrap_or(v)
    };
    let a = v.abs();
    if v == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

impl Curve {
    /// `r,<column>` header and one LF-terminated row per point.
    pub fn to_csv(&self, precision: usize) -> String {
        let mut s = format!("r,{}\n", self.column);
        for (r, v) in self.r.iter().zip(&self.values) {
            s.push_str(&format_float(*r, precision));
            s.push(',');
            s.push_str(&format_float(*v, precision));
            s.push('\n');
        }
        s
    }
}

fn curve(file_name: String, column: &str, grid: &[f64], f: impl Fn(f64) -> Result<f64> + Sync + Send) -> Result<Curve> {
    Ok(Curve { file_name, column: column.to_string(), r: grid.to_vec(), values: map_grid(grid, f)? })
}

fn dirac_grid() -> Result<Vec<f64>> {
    radial_grid(0.01, 10.0, FIGURE_POINTS, Spacing::Log)
}

fn figure2(c: &Constants, spec: &QuadratureSpec) -> Result<Vec<Curve>> {
    let g = dirac_grid()?;
    let shell = |k: DensityKind| move |r: f64| Ok(density_with(k, r, c, spec)?.shell);
    Ok(vec![
        curve("fig2_hole.csv".into(), "shell_hole", &g, shell(DensityKind::Hole))?,
        curve("fig2_electron.csv".into(), "shell_electron", &g, shell(DensityKind::Electron))?,
        curve("fig2_sum.csv".into(), "shell_sum", &g, |r| {
            Ok(density_with(DensityKind::Hole, r, c, spec)?.shell + density_with(DensityKind::Electron, r, c, spec)?.shell)
        })?,
    ])
}

fn figure3(max_order: u32) -> Result<Vec<Curve>> {
    if !(1..=1000).contains(&max_order) {
        return domain(format!("max_order must be in 1..=1000, got {max_order}"));
    }
    let g = dirac_grid()?;
    let mut out = Vec::new();
    for n in 1..=max_order {
        let sums = map_grid(&g, |r| partial_sum_series(n, r))?;
        for (part, pick) in [("hole", 0usize), ("electron", 1)] {
            let values = sums.iter().map(|p| if pick == 0 { p.hole_part } else { p.electron_part }).collect();
            out.push(Curve {
                file_name: format!("fig3_N{n}_{part}.csv"),
                column: format!("partial_{part}"),
                r: g.clone(),
                values,
            });
        }
    }
    Ok(out)
}

fn figure5(c: &Constants, spec: &QuadratureSpec) -> Result<Vec<Curve>> {
    c.validate()?;
    let x = radial_grid(0.01, 3.0, FIGURE_POINTS, Spacing::Log)?;
    let lambda_f = 2.0 * PI / c.p_fermi;
    let per_x = |k: DensityKind| move |x: f64| Ok(lambda_f * density_with(k, x * lambda_f, c, spec)?.shell);
    Ok(vec![
        curve("fig5_gF.csv".into(), "shell_fermi_hole", &x, per_x(DensityKind::FermiHole))?,
        curve("fig5_nxF.csv".into(), "shell_fermi_dm", &x, per_x(DensityKind::FermiDensityMatrix))?,
    ])
}

fn force_curves(prefix: &str, pairs: &[(Source, Source)], c: &Constants) -> Result<Vec<Curve>> {
    let g = dirac_grid()?;
    pairs
        .iter()
        .map(|&(rho, fld)| {
            let (a, b) = (source_name(rho), source_name(fld));
            curve(format!("{prefix}_{a}_{b}.csv"), &format!("force:{a}:{b}"), &g, |r| {
                Ok(force_density(rho, fld, r, c)?.value)
            })
        })
        .collect()
}

/// Pairs plotted in the figure of exchange-exciton force densities.
pub const FIG6_PAIRS: [(Source, Source); 4] = [
    (Source::Hole, Source::Electron),
    (Source::Electron, Source::Hole),
    (Source::Hole, Source::Hole),
    (Source::Electron, Source::Electron),
];

/// Pairs involving the reference-electron and vacuum-polarization fields.
pub const FIG7_PAIRS: [(Source, Source); 5] = [
    (Source::Hole, Source::Reference),
    (Source::Electron, Source::Reference),
    (Source::VacuumPolarization, Source::Reference),
    (Source::Hole, Source::VacuumPolarization),
    (Source::Electron, Source::VacuumPolarization),
];

/// All curves of figure `id`.
pub fn figure(id: u32, max_order: u32, c: &Constants, spec: &QuadratureSpec) -> Result<Vec<Curve>> {
    match id {
        2 => figure2(c, spec),
        3 => figure3(max_order),
        5 => figure5(c, spec),
        6 => force_curves("fig6", &FIG6_PAIRS, c),
        7 => force_curves("fig7", &FIG7_PAIRS, c),
        _ => domain(format!("figure id must be one of {FIGURE_IDS:?}, got {id}")),
    }
}

/// Trapezoid integral of a log-grid curve in `ln r`, plus the exact pieces
/// on `(0, r_0]` and `[r_N, inf)` supplied by the caller.
pub fn log_trapezoid(r: &[f64], values: &[f64]) -> f64 {
    r.windows(2)
        .zip(values.windows(2))
        .map(|(rw, vw)| 0.5 * (rw[1] / rw[0]).ln() * (rw[0] * vw[0] + rw[1] * vw[1]))
        .sum()
}
