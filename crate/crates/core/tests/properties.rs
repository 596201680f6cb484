use std::f64::consts::{FRAC_2_PI, PI};

use dxl_core::densities::{density, fermi_f, Constants, DensityKind};
use dxl_core::fields::{field, gauss_enclosed_charge, Source};
use dxl_core::figures::format_float;
use dxl_core::grid::{radial_grid, Spacing};
use dxl_core::radialft::{inverse_ft_radial, MomentumProfile, QuadratureSpec};
use dxl_core::specfun::{bessel_k, struve_l};
use dxl_core::spinor::{battery_at, exchange_integrand_two_momenta, exchange_integrand_two_momenta_spinor, Momentum3};
use proptest::prelude::*;

fn momentum() -> impl Strategy<Value = Momentum3> {
    (-8.0..8.0f64, -8.0..8.0f64, -8.0..8.0f64).prop_map(|(x, y, z)| Momentum3::new(x, y, z))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bessel_k_recurrence(z in 0.05..40.0f64, n in 1i32..6) {
        let k = |m: i32| bessel_k(2 * m, z).unwrap().value;
        let lhs = k(n + 1);
        let rhs = k(n - 1) + 2.0 * n as f64 / z * k(n);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs);
    }

    #[test]
    fn bessel_k_decreasing(z in 0.05..40.0f64, order2 in 0i32..8) {
        let a = bessel_k(order2, z).unwrap().value;
        let b = bessel_k(order2, z * 1.01).unwrap().value;
        prop_assert!(a > b && b > 0.0);
    }

    #[test]
    fn struve_l_difference_identity(z in 0.05..15.0f64) {
        let l1 = struve_l(1, z).unwrap().value;
        let d = struve_l(-1, z).unwrap().value - l1;
        prop_assert!((d - FRAC_2_PI).abs() <= 1e-12 * l1.max(1.0));
    }

    #[test]
    fn spinor_identities_hold_everywhere(p in momentum()) {
        let b = battery_at(&p);
        prop_assert!(b.max() <= 1e-12, "{:?}", b);
    }

    #[test]
    fn two_momentum_forms_agree(p in momentum(), q in momentum(), r in 0.01..20.0f64) {
        let a = exchange_integrand_two_momenta(&p, &q, r).unwrap();
        let b = exchange_integrand_two_momenta_spinor(&p, &q, r).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
    }

    #[test]
    fn radial_transform_is_linear(a in -3.0..3.0f64, b in -3.0..3.0f64, r in 0.1..8.0f64) {
        let spec = QuadratureSpec { rel_tol: 1e-10, ..QuadratureSpec::default() };
        let f = MomentumProfile::inverse_energy_power(1);
        let g = MomentumProfile::inverse_energy_power(3);
        let lhs = inverse_ft_radial(&MomentumProfile::linear_combination(a, &f, b, &g), r, &spec).unwrap();
        let fa = inverse_ft_radial(&f, r, &spec).unwrap();
        let gb = inverse_ft_radial(&g, r, &spec).unwrap();
        let rhs = a * fa + b * gb;
        prop_assert!((lhs - rhs).abs() <= 1e-8 * (a.abs() * fa.abs() + b.abs() * gb.abs()) + 1e-300);
    }

    #[test]
    fn hole_negative_electron_positive(r in 1e-3..60.0f64, n in 1u32..12) {
        let c = Constants::default();
        let h = density(DensityKind::HoleN(n), r, &c).unwrap();
        let e = density(DensityKind::ElectronN(n), r, &c).unwrap();
        prop_assert!(h.density < 0.0 && e.density > 0.0);
        prop_assert_eq!(h.shell, 4.0 * PI * r * r * h.density);
    }

    #[test]
    fn fields_obey_gauss(r in 0.01..30.0f64) {
        let c = Constants::default();
        let spec = QuadratureSpec::default();
        for (s, k) in [(Source::Hole, DensityKind::Hole), (Source::Electron, DensityKind::Electron)] {
            let e = field(s, r, &c).unwrap();
            let q = gauss_enclosed_charge(k, r, &spec).unwrap();
            prop_assert!((e * r * r - q).abs() <= 1e-9 * q.abs());
        }
    }

    #[test]
    fn fermi_f_bounded(z in 0.0..200.0f64) {
        prop_assert!(fermi_f(z).abs() <= 1.0);
    }

    #[test]
    fn float_format_round_trips(bits in any::<u64>()) {
        let v = f64::from_bits(bits);
        prop_assume!(v.is_finite());
        prop_assert_eq!(format_float(v, 17).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn float_format_respects_precision(v in -1e12..1e12f64, p in 6usize..17) {
        let s = format_float(v, p);
        let want: f64 = format!("{:.*e}", p - 1, v).parse().unwrap();
        prop_assert_eq!(s.parse::<f64>().unwrap(), want);
    }

    #[test]
    fn grids_are_increasing_with_exact_ends(a in 1e-4..1.0f64, span in 1.001..1e3f64, n in 2usize..300, log in any::<bool>()) {
        let spacing = if log { Spacing::Log } else { Spacing::Lin };
        let g = radial_grid(a, a * span, n, spacing).unwrap();
        prop_assert_eq!(g.len(), n);
        prop_assert_eq!(g[0], a);
        prop_assert_eq!(g[n - 1], a * span);
        prop_assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
}
