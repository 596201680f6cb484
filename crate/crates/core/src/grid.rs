//! Radial sampling grids.

use serde::Serialize;

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Spacing {
    Log,
    Lin,
}

impl std::str::FromStr for Spacing {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log" => Ok(Spacing::Log),
            "lin" => Ok(Spacing::Lin),
            _ => domain(format!("spacing must be 'log' or 'lin', got '{s}'")),
        }
    }
}

/// `points` radii from `rmin` to `rmax` inclusive. Endpoints are exact.
pub fn radial_grid(rmin: f64, rmax: f64, points: usize, spacing: Spacing) -> Result<Vec<f64>> {
    if !(rmin > 0.0) || !rmin.is_finite() || !rmax.is_finite() || !(rmax > rmin) {
        return domain(format!("need 0 < rmin < rmax, got rmin = {rmin}, rmax = {rmax}"));
    }
    if points < 2 {
        return domain(format!("need at least 2 points, got {points}"));
    }
    let last = (points - 1) as f64;
    let mut g: Vec<f64> = match spacing {
        Spacing::Lin => (0..points).map(|i| rmin + (rmax - rmin) * i as f64 / last).collect(),
        Spacing::Log => {
            let (a, b) = (rmin.ln(), rmax.ln());
            (0..points).map(|i| (a + (b - a) * i as f64 / last).exp()).collect()
        }
    };
    g[0] = rmin;
    g[points - 1] = rmax;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_monotone() {
        for s in [Spacing::Log, Spacing::Lin] {
            let g = radial_grid(0.01, 10.0, 400, s).unwrap();
            assert_eq!(g.len(), 400);
            assert_eq!((g[0], g[399]), (0.01, 10.0));
            assert!(g.windows(2).all(|w| w[1] > w[0]));
        }
    }

    #[test]
    fn log_ratio_constant() {
        let g = radial_grid(1.0, 1000.0, 4, Spacing::Log).unwrap();
        assert!((g[1] - 10.0).abs() < 1e-12 && (g[2] - 100.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(radial_grid(0.0, 1.0, 10, Spacing::Log).is_err());
        assert!(radial_grid(2.0, 1.0, 10, Spacing::Lin).is_err());
        assert!(radial_grid(1.0, 2.0, 1, Spacing::Lin).is_err());
        assert!("cubic".parse::<Spacing>().is_err());
    }
}
