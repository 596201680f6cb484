//! Non-oscillatory quadrature building blocks: adaptive Gauss-Kronrod
//! (10-point Gauss / 21-point Kronrod), fixed Gauss-Legendre of order 16 and
//! the Wynn epsilon algorithm.

use std::sync::OnceLock;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// One 21-point Gauss-Kronrod panel. Returns `(kronrod, |kronrod - gauss|)`.
pub fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let (v, e, _) = gk21_abs(f, a, b);
    (v, e)
}

/// As [`gk21`], additionally returning the Kronrod estimate of `int |f|`.
fn gk21_abs<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[10];
    let mut resabs = fc.abs() * WGK[10];
    let mut gauss = 0.0;
    for j in 0..10 {
        let dx = h * XGK[j];
        let (f1, f2) = (f(c - dx), f(c + dx));
        kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs(), resabs * h.abs())
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    resabs: f64,
}

/// Globally adaptive Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// Bisects the panel with the largest error estimate until the summed error
/// is below `max(abs_tol, rel_tol * |I|)`. Returns `(value, error_estimate)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<(f64, f64)> {
    if a == b {
        return Ok((0.0, 0.0));
    }
    let (v, e, ra) = gk21_abs(f, a, b);
    let mut panels = vec![Panel { a, b, value: v, err: e, resabs: ra }];
    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.err).sum();
        if !total.is_finite() {
            return Err(Error::NonConvergence(format!(
                "integrand not finite on [{a}, {b}]"
            )));
        }
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok((total, err));
        }
        if panels.len() >= max_panels {
            // Round-off floor: the error estimate stopped improving but is tiny
            // relative to the integral of |f|.
            if err <= 1e3 * f64::EPSILON * panels.iter().map(|p| p.resabs).sum::<f64>() {
                return Ok((total, err));
            }
            return Err(Error::NonConvergence(format!(
                "adaptive quadrature on [{a}, {b}] stalled at error {err:e} after {max_panels} panels"
            )));
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let p = panels.swap_remove(worst);
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            // Panel cannot be split further in floating point.
            panels.push(Panel { err: 0.0, ..p });
            continue;
        }
        let (v1, e1, r1) = gk21_abs(f, p.a, m);
        let (v2, e2, r2) = gk21_abs(f, m, p.b);
        panels.push(Panel { a: p.a, b: m, value: v1, err: e1, resabs: r1 });
        panels.push(Panel { a: m, b: p.b, value: v2, err: e2, resabs: r2 });
    }
}

/// Integrates over consecutive breakpoints, summing the pieces.
pub fn integrate_breaks<F: Fn(f64) -> f64>(
    f: &F,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<(f64, f64)> {
    let pieces = breaks.len().saturating_sub(1).max(1);
    let mut total = 0.0;
    let mut err = 0.0;
    for w in breaks.windows(2) {
        let (v, e) = integrate(f, w[0], w[1], abs_tol / pieces as f64, rel_tol, max_panels)?;
        total += v;
        err += e;
    }
    Ok((total, err))
}

/// [`integrate_breaks`] for an integrand that can fail; the first error
/// raised at any node is returned instead of the integral.
pub fn integrate_breaks_fallible<F: Fn(f64) -> Result<f64>>(
    f: &F,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<(f64, f64)> {
    let first_err: std::cell::RefCell<Option<Error>> = std::cell::RefCell::new(None);
    let g = |x: f64| match f(x) {
        Ok(v) => v,
        Err(e) => {
            first_err.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let out = integrate_breaks(&g, breaks, abs_tol, rel_tol, max_panels);
    if let Some(e) = first_err.into_inner() {
        return Err(e);
    }
    out
}

/// Integral of `f` over `[a, inf)` via the map `x = a + t / (1 - t)`.
/// The integrand must decay faster than `1/x`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<(f64, f64)> {
    let g = |t: f64| {
        let s = 1.0 - t;
        let x = a + t / s;
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            v / (s * s)
        }
    };
    integrate(&g, 0.0, 1.0, abs_tol, rel_tol, max_panels)
}

/// Nodes and weights of the 16-point Gauss-Legendre rule on `[-1, 1]`.
fn gl16_table() -> &'static ([f64; 16], [f64; 16]) {
    static TABLE: OnceLock<([f64; 16], [f64; 16])> = OnceLock::new();
    TABLE.get_or_init(|| {
        const N: usize = 16;
        let mut x = [0.0; N];
        let mut w = [0.0; N];
        for i in 0..N / 2 {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let mut p0 = 1.0;
                let mut p1 = 0.0;
                for j in 0..N {
                    let p2 = p1;
                    p1 = p0;
                    p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
                }
                dp = N as f64 * (z * p0 - p1) / (z * z - 1.0);
                let dz = p0 / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            x[i] = -z;
            x[N - 1 - i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
            w[N - 1 - i] = w[i];
        }
        (x, w)
    })
}

/// Fixed 16-point Gauss-Legendre rule on `[a, b]`.
pub fn gl16<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (x, w) = gl16_table();
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = 0.0;
    for i in 0..16 {
        s += w[i] * f(c + h * x[i]);
    }
    s * h
}

/// Wynn epsilon extrapolation of a sequence of partial sums.
///
/// Returns the best estimate and the difference between the last two
/// even-column estimates as an error proxy.
pub fn wynn_epsilon(partial: &[f64]) -> (f64, f64) {
    let n = partial.len();
    if n == 0 {
        return (0.0, f64::INFINITY);
    }
    if n < 3 {
        let last = partial[n - 1];
        let err = if n == 2 { (last - partial[0]).abs() } else { f64::INFINITY };
        return (last, err);
    }
    // e[k] holds column k of the epsilon table for the current diagonal.
    let mut prev: Vec<f64> = partial.to_vec();
    let mut prev_prev: Vec<f64> = vec![0.0; n + 1];
    let mut best = partial[n - 1];
    let mut best_err = (partial[n - 1] - partial[n - 2]).abs();
    let mut col = 0usize;
    while prev.len() > 1 {
        let mut next = Vec::with_capacity(prev.len() - 1);
        for i in 0..prev.len() - 1 {
            let d = prev[i + 1] - prev[i];
            let base = if col == 0 { 0.0 } else { prev_prev[i + 1] };
            if d == 0.0 {
                next.push(f64::INFINITY);
            } else {
                next.push(base + 1.0 / d);
            }
        }
        col += 1;
        if col.is_multiple_of(2) {
            let m = next.len();
            if m >= 2 && next[m - 1].is_finite() && next[m - 2].is_finite() {
                let err = (next[m - 1] - next[m - 2]).abs();
                if err < best_err {
                    best = next[m - 1];
                    best_err = err;
                }
            } else if m >= 1 && !next[m - 1].is_finite() {
                break;
            }
        }
        if next.iter().any(|v| !v.is_finite()) {
            break;
        }
        prev_prev = prev;
        prev = next;
    }
    (best, best_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl16_is_exact_for_degree_31() {
        let f = |x: f64| x.powi(31) + 3.0 * x.powi(30) - x;
        let exact = 3.0 * 2.0 / 31.0;
        assert!((gl16(&f, -1.0, 1.0) - exact).abs() < 1e-14);
    }

    #[test]
    fn gl16_weights_sum_to_two() {
        let (_, w) = gl16_table();
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_log_endpoint() {
        let f = |x: f64| x.ln();
        let (v, _) = integrate(&f, 0.0, 1.0, 1e-13, 1e-13, 500).unwrap();
        assert!((v + 1.0).abs() < 1e-11);
    }

    #[test]
    fn semi_infinite_exponential() {
        let f = |x: f64| x * (-x).exp();
        let (v, _) = integrate_to_infinity(&f, 0.0, 1e-14, 1e-13, 500).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wynn_accelerates_alternating_harmonic() {
        let mut s = 0.0;
        let partial: Vec<f64> = (1..=20)
            .map(|k| {
                s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
                s
            })
            .collect();
        let (v, _) = wynn_epsilon(&partial);
        assert!((v - std::f64::consts::LN_2).abs() < 1e-12, "{v}");
    }
}
