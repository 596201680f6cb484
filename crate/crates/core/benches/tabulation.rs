use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dxl_core::densities::Constants;
use dxl_core::grid::{radial_grid, Spacing};
use dxl_core::parallel::{map_grid, map_grid_sequential};
use dxl_core::quantity::Quantity;
use dxl_core::radialft::QuadratureSpec;

fn tabulation(c: &mut Criterion) {
    let consts = Constants::default();
    let spec = QuadratureSpec::default();
    let grid = radial_grid(0.01, 10.0, 400, Spacing::Log).unwrap();
    // closed form (cheap per point) and oscillatory quadrature (expensive per point)
    for key in ["shell_hole", "shell_infinite_numeric"] {
        let q = Quantity::parse(key, None).unwrap();
        let mut g = c.benchmark_group(key);
        g.sample_size(10);
        g.bench_function("sequential", |b| {
            b.iter(|| map_grid_sequential(black_box(&grid), |r| q.eval(r, &consts, &spec)).unwrap())
        });
        g.bench_function("parallel", |b| b.iter(|| map_grid(black_box(&grid), |r| q.eval(r, &consts, &spec)).unwrap()));
        g.finish();
    }
}

criterion_group!(benches, tabulation);
criterion_main!(benches);
