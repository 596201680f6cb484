//! Dirac-representation gamma matrices, plane-wave spinors and the bilinear
//! identities they satisfy, plus the biquadratic exchange integrands.
//!
//! Metric `(+ - - -)`, `m_e = 1`. Spinors carry the relativistic factor
//! `sqrt((E + 1) / 2E)` and no plane-wave normalization.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{domain, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Seed of the documented random-momentum batteries.
pub const BATTERY_SEED: u64 = 0x00D1_5EA5_EED5;

/// Four complex components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor4(pub [Complex64; 4]);

/// 4x4 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4(pub [[Complex64; 4]; 4]);

impl Spinor4 {
    pub fn from_real(v: [f64; 4]) -> Self {
        Spinor4(v.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn conj(&self) -> Self {
        Spinor4(self.0.map(|c| c.conj()))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Spinor4(self.0.map(|c| c * s))
    }

    /// `psi^dagger phi`.
    pub fn inner(&self, other: &Spinor4) -> Complex64 {
        (0..4).map(|i| self.0[i].conj() * other.0[i]).sum()
    }

    /// Dirac adjoint contraction `psi_bar M phi = psi^dagger gamma^0 M phi`.
    pub fn bar_sandwich(&self, m: &Matrix4, other: &Spinor4) -> Complex64 {
        let g0 = gamma(0);
        self.inner(&(g0 * *m).apply(other))
    }

    pub fn max_abs_diff(&self, other: &Spinor4) -> f64 {
        (0..4).map(|i| (self.0[i] - other.0[i]).norm()).fold(0.0, f64::max)
    }

    /// `psi psi_bar` as a matrix.
    pub fn outer_bar(&self) -> Matrix4 {
        let g0 = gamma(0);
        let mut m = Matrix4::zero();
        for a in 0..4 {
            for b in 0..4 {
                // (psi^dagger gamma^0)_b = sum_c conj(psi_c) g0_{cb}
                let bar_b: Complex64 = (0..4).map(|c| self.0[c].conj() * g0.0[c][b]).sum();
                m.0[a][b] = self.0[a] * bar_b;
            }
        }
        m
    }
}

impl Matrix4 {
    pub fn zero() -> Self {
        Matrix4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Matrix4(self.0.map(|row| row.map(|c| c * s)))
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn apply(&self, v: &Spinor4) -> Spinor4 {
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.0[i][j] * v.0[j]).sum();
        }
        Spinor4(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl Add for Matrix4 {
    type Output = Matrix4;
    fn add(self, o: Matrix4) -> Matrix4 {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] += o.0[i][j];
            }
        }
        m
    }
}

impl Sub for Matrix4 {
    type Output = Matrix4;
    fn sub(self, o: Matrix4) -> Matrix4 {
        self + o.scale(-ONE)
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;
    fn mul(self, o: Matrix4) -> Matrix4 {
        let mut m = Matrix4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = (0..4).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        m
    }
}

/// Metric `g^{mu nu}` with signature `(+ - - -)`.
pub fn metric(mu: usize, nu: usize) -> f64 {
    match (mu == nu, mu) {
        (false, _) => 0.0,
        (true, 0) => 1.0,
        (true, _) => -1.0,
    }
}

/// Pauli matrix `sigma_k`, `k` in 1..=3.
fn pauli(k: usize) -> [[Complex64; 2]; 2] {
    match k {
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("pauli index {k} out of range"),
    }
}

/// Dirac-representation `gamma^mu`: `gamma^0 = diag(1, 1, -1, -1)`,
/// `gamma^k = [[0, sigma_k], [-sigma_k, 0]]`.
pub fn gamma(mu: usize) -> Matrix4 {
    let mut m = Matrix4::zero();
    if mu == 0 {
        m.0[0][0] = ONE;
        m.0[1][1] = ONE;
        m.0[2][2] = -ONE;
        m.0[3][3] = -ONE;
        return m;
    }
    let s = pauli(mu);
    for (i, row) in s.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            m.0[i][j + 2] = x;
            m.0[i + 2][j] = -x;
        }
    }
    m
}

/// `sigma^{mu nu} = (i/2) [gamma^mu, gamma^nu]`.
pub fn sigma(mu: usize, nu: usize) -> Matrix4 {
    let (a, b) = (gamma(mu), gamma(nu));
    (a * b - b * a).scale(I * 0.5)
}

/// Three-momentum in units of `m_e`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Momentum3 {
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

impl Momentum3 {
    pub const ZERO: Momentum3 = Momentum3 { px: 0.0, py: 0.0, pz: 0.0 };

    pub fn new(px: f64, py: f64, pz: f64) -> Self {
        Momentum3 { px, py, pz }
    }

    /// `E = sqrt(1 + |p|^2)`.
    pub fn energy(&self) -> f64 {
        (1.0 + self.dot(self)).sqrt()
    }

    pub fn dot(&self, o: &Momentum3) -> f64 {
        self.px * o.px + self.py * o.py + self.pz * o.pz
    }

    pub fn neg(&self) -> Self {
        Momentum3::new(-self.px, -self.py, -self.pz)
    }

    pub fn component(&self, k: usize) -> f64 {
        match k {
            1 => self.px,
            2 => self.py,
            3 => self.pz,
            _ => panic!("spatial index {k} out of range"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    U,
    UHat,
    V,
    VHat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Spin {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SpinorKind {
    pub family: Family,
    pub spin: Spin,
}

impl SpinorKind {
    pub const fn new(family: Family, spin: Spin) -> Self {
        SpinorKind { family, spin }
    }

    /// `s_e`: +1 for electron spinors (`u`, `u_hat`), -1 for positron spinors.
    pub fn charge_sign(&self) -> i32 {
        match self.family {
            Family::U | Family::UHat => 1,
            Family::V | Family::VHat => -1,
        }
    }

    pub fn all() -> [SpinorKind; 8] {
        let mut out = [SpinorKind::new(Family::U, Spin::Up); 8];
        let mut i = 0;
        for f in Family::ALL {
            for s in [Spin::Up, Spin::Down] {
                out[i] = SpinorKind::new(f, s);
                i += 1;
            }
        }
        out
    }
}

impl Family {
    pub const ALL: [Family; 4] = [Family::U, Family::UHat, Family::V, Family::VHat];

    fn is_hat(&self) -> bool {
        matches!(self, Family::UHat | Family::VHat)
    }
}

/// Plane-wave spinor with components as laid out in the Dirac representation:
///
/// ```text
/// u(p,up)     = N {1, 0, pz/a, (px+i py)/a}      u(p,down)     = N {0, 1, (px-i py)/a, -pz/a}
/// u^(p,up)    = N {-pz/a, -(px+i py)/a, 1, 0}    u^(p,down)    = N {-(px-i py)/a, pz/a, 0, 1}
/// v(p,up)     = N {(px-i py)/a, -pz/a, 0, 1}     v(p,down)     = N {pz/a, (px+i py)/a, 1, 0}
/// v^(p,up)    = N {0, 1, -(px-i py)/a, pz/a}     v^(p,down)    = N {1, 0, -pz/a, -(px+i py)/a}
/// ```
///
/// with `a = E + 1` and `N = sqrt((E + 1) / 2E)`.
pub fn make_spinor(kind: SpinorKind, p: &Momentum3) -> Spinor4 {
    let e = p.energy();
    let a = e + 1.0;
    let n = (a / (2.0 * e)).sqrt();
    let pz = Complex64::new(p.pz / a, 0.0);
    let plus = Complex64::new(p.px / a, p.py / a);
    let minus = Complex64::new(p.px / a, -p.py / a);
    let c = match (kind.family, kind.spin) {
        (Family::U, Spin::Up) => [ONE, ZERO, pz, plus],
        (Family::U, Spin::Down) => [ZERO, ONE, minus, -pz],
        (Family::UHat, Spin::Up) => [-pz, -plus, ONE, ZERO],
        (Family::UHat, Spin::Down) => [-minus, pz, ZERO, ONE],
        (Family::V, Spin::Up) => [minus, -pz, ZERO, ONE],
        (Family::V, Spin::Down) => [pz, plus, ONE, ZERO],
        (Family::VHat, Spin::Up) => [ZERO, ONE, -minus, pz],
        (Family::VHat, Spin::Down) => [ONE, ZERO, -pz, -plus],
    };
    Spinor4(c).scale(Complex64::new(n, 0.0))
}

/// `gamma^mu p_mu = E gamma^0 - p . gamma` for a four-momentum `(p0, p)`.
pub fn slash(p0: f64, p: &Momentum3) -> Matrix4 {
    let mut m = gamma(0).scale(Complex64::new(p0, 0.0));
    for k in 1..=3 {
        m = m - gamma(k).scale(Complex64::new(p.component(k), 0.0));
    }
    m
}

/// Four-momentum entering the Dirac equation for each family:
/// `(E, p)` for `u`, `v` and `(E, -p)` for the hatted spinors.
fn dirac_four_momentum(family: Family, p: &Momentum3) -> (f64, Momentum3) {
    if family.is_hat() {
        (p.energy(), p.neg())
    } else {
        (p.energy(), *p)
    }
}

/// Sign `s` in `(s gamma^mu p_mu - m) psi = 0`: `+` for `u`, `v_hat`; `-` for `u_hat`, `v`.
fn dirac_sign(family: Family) -> f64 {
    match family {
        Family::U | Family::VHat => 1.0,
        Family::UHat | Family::V => -1.0,
    }
}

/// Max-abs component of `(s gamma^mu p_mu - 1) psi`.
pub fn dirac_residual(kind: SpinorKind, p: &Momentum3) -> f64 {
    let (p0, pv) = dirac_four_momentum(kind.family, p);
    let op = slash(p0, &pv).scale(Complex64::new(dirac_sign(kind.family), 0.0)) - Matrix4::identity();
    op.apply(&make_spinor(kind, p)).0.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Max over the charge-conjugation relations
/// `i gamma^2 u(p,up)* = +u^(-p,down) = +v(p,up)`,
/// `i gamma^2 u(p,down)* = -u^(-p,up) = -v(p,down)`,
/// `i gamma^2 u^(p,up)* = -u(-p,down) = -v^(p,up)`,
/// `i gamma^2 u^(p,down)* = +u(-p,up) = +v^(p,down)`.
pub fn charge_conjugation_residual(p: &Momentum3) -> f64 {
    use Family::*;
    use Spin::*;
    let c = gamma(2).scale(I);
    let np = p.neg();
    let rows: [(SpinorKind, f64, SpinorKind, SpinorKind); 4] = [
        (SpinorKind::new(U, Up), 1.0, SpinorKind::new(UHat, Down), SpinorKind::new(V, Up)),
        (SpinorKind::new(U, Down), -1.0, SpinorKind::new(UHat, Up), SpinorKind::new(V, Down)),
        (SpinorKind::new(UHat, Up), -1.0, SpinorKind::new(U, Down), SpinorKind::new(VHat, Up)),
        (SpinorKind::new(UHat, Down), 1.0, SpinorKind::new(U, Up), SpinorKind::new(VHat, Down)),
    ];
    let mut worst: f64 = 0.0;
    for (lhs_kind, sign, at_minus_p, at_p) in rows {
        let lhs = c.apply(&make_spinor(lhs_kind, p).conj());
        let s = Complex64::new(sign, 0.0);
        let r1 = make_spinor(at_minus_p, &np).scale(s);
        let r2 = make_spinor(at_p, p).scale(s);
        worst = worst.max(lhs.max_abs_diff(&r1)).max(lhs.max_abs_diff(&r2));
    }
    worst
}

/// Expected `sum_s psi psi_bar`: `+(pslash + 1)/2E` for `u`, `+(pslash - 1)/2E`
/// for `v`, and the negatives for the hatted families with `p^mu = (-E, p)`.
pub fn completeness_expected(family: Family, p: &Momentum3) -> Matrix4 {
    let e = p.energy();
    let (p0, sign, mass) = match family {
        Family::U => (e, 1.0, 1.0),
        Family::V => (e, 1.0, -1.0),
        Family::UHat => (-e, -1.0, 1.0),
        Family::VHat => (-e, -1.0, -1.0),
    };
    let m = slash(p0, p) + Matrix4::identity().scale(Complex64::new(mass, 0.0));
    m.scale(Complex64::new(sign / (2.0 * e), 0.0))
}

/// Max-abs entry of `sum_s psi(p,s) psi_bar(p,s)` minus its expected form.
pub fn completeness_residual(family: Family, p: &Momentum3) -> f64 {
    let sum = make_spinor(SpinorKind::new(family, Spin::Up), p).outer_bar()
        + make_spinor(SpinorKind::new(family, Spin::Down), p).outer_bar();
    (sum - completeness_expected(family, p)).max_abs()
}

/// Gamma structure between two spinors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaString {
    Scalar,
    Vector(usize),
    Tensor(usize, usize),
}

impl GammaString {
    pub fn matrix(&self) -> Matrix4 {
        match *self {
            GammaString::Scalar => Matrix4::identity(),
            GammaString::Vector(mu) => gamma(mu),
            GammaString::Tensor(mu, nu) => sigma(mu, nu),
        }
    }
}

/// `psi_bar_bra Gamma psi_ket`.
pub fn bilinear(bra: (SpinorKind, &Momentum3), gs: GammaString, ket: (SpinorKind, &Momentum3)) -> Complex64 {
    let a = make_spinor(bra.0, bra.1);
    let b = make_spinor(ket.0, ket.1);
    a.bar_sandwich(&gs.matrix(), &b)
}

/// Exchange channel of the one-momentum integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExchangeChannel {
    Vector(usize, usize),
    Scalar,
    Tensor(usize, usize, usize, usize),
}

/// `sum_s [psi_bar(p,s) A psi0] [psi0_bar B psi(p,s)]` with `psi0 = u^(0, up)`.
fn sea_term(family: Family, a: &Matrix4, b: &Matrix4, p: &Momentum3) -> Complex64 {
    let psi0 = make_spinor(SpinorKind::new(Family::UHat, Spin::Up), &Momentum3::ZERO);
    [Spin::Up, Spin::Down]
        .iter()
        .map(|&s| {
            let psi = make_spinor(SpinorKind::new(family, s), p);
            psi.bar_sandwich(a, &psi0) * psi0.bar_sandwich(b, &psi)
        })
        .sum()
}

fn exchange_pair(a: &Matrix4, b: &Matrix4, p: &Momentum3) -> f64 {
    -(sea_term(Family::UHat, a, b, p) - sea_term(Family::VHat, a, b, p)).re
}

/// Spinor part of the one-momentum exchange integrand at momentum `p`: the
/// electron-sea minus positron-sea bracket, `-Re[T_u^ - T_v^]`, averaged over
/// the two orderings of the vertex structures. Exact values are
/// `-g^{mu nu}/E` (vector), `-1/E` (scalar) and
/// `-(g^{mu rho} g^{nu sigma} - g^{mu sigma} g^{nu rho})/E` (tensor).
pub fn exchange_integrand_one_momentum(channel: ExchangeChannel, p: &Momentum3) -> Complex64 {
    let v = match channel {
        ExchangeChannel::Scalar => exchange_pair(&Matrix4::identity(), &Matrix4::identity(), p),
        ExchangeChannel::Vector(mu, nu) => {
            let (a, b) = (gamma(mu), gamma(nu));
            0.5 * (exchange_pair(&a, &b, p) + exchange_pair(&b, &a, p))
        }
        ExchangeChannel::Tensor(mu, nu, rho, sg) => {
            let (a, b) = (sigma(mu, nu), sigma(rho, sg));
            0.5 * (exchange_pair(&a, &b, p) + exchange_pair(&b, &a, p))
        }
    };
    Complex64::new(v, 0.0)
}

/// Exact one-momentum value for `channel`.
pub fn exchange_one_momentum_expected(channel: ExchangeChannel, p: &Momentum3) -> f64 {
    let e = p.energy();
    match channel {
        ExchangeChannel::Scalar => -1.0 / e,
        ExchangeChannel::Vector(mu, nu) => -metric(mu, nu) / e,
        ExchangeChannel::Tensor(mu, nu, rho, sg) => {
            -(metric(mu, rho) * metric(nu, sg) - metric(mu, sg) * metric(nu, rho)) / e
        }
    }
}

/// Full tensor-channel integrand `[mu][nu][rho][sigma]` at momentum `p`.
pub fn exchange_tensor_full(p: &Momentum3) -> [[[[f64; 4]; 4]; 4]; 4] {
    let mut t = [[[[0.0; 4]; 4]; 4]; 4];
    for (mu, t1) in t.iter_mut().enumerate() {
        for (nu, t2) in t1.iter_mut().enumerate() {
            for (rho, t3) in t2.iter_mut().enumerate() {
                for (sg, v) in t3.iter_mut().enumerate() {
                    *v = exchange_integrand_one_momentum(ExchangeChannel::Tensor(mu, nu, rho, sg), p).re;
                }
            }
        }
    }
    t
}

fn check_separation(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return domain(format!("separation must be finite and > 0, got {r}"));
    }
    Ok(())
}

/// Two-momentum `mu = nu = 0` exchange integrand with the separation along z:
/// `-2[1/(EE') + 1 + p.p'/(EE')] cos((p-p').d) - 2[1/(EE') - 1 - p.p'/(EE')] cos((p+p').d)`.
pub fn exchange_integrand_two_momenta(p: &Momentum3, p2: &Momentum3, separation_r: f64) -> Result<f64> {
    check_separation(separation_r)?;
    let ee = p.energy() * p2.energy();
    let pp = p.dot(p2) / ee;
    let minus = ((p.pz - p2.pz) * separation_r).cos();
    let plus = ((p.pz + p2.pz) * separation_r).cos();
    Ok(-2.0 * (1.0 / ee + 1.0 + pp) * minus - 2.0 * (1.0 / ee - 1.0 - pp) * plus)
}

/// `sum_{s,s'} |psi_a(p,s)^dagger psi_b(p',s')|^2`, i.e. the spin-summed product
/// `[psi_bar_a gamma^0 psi_b][psi_bar_b gamma^0 psi_a]`.
fn pair_overlap(a: Family, p: &Momentum3, b: Family, p2: &Momentum3) -> f64 {
    let mut s = 0.0;
    for sa in [Spin::Up, Spin::Down] {
        for sb in [Spin::Up, Spin::Down] {
            let x = make_spinor(SpinorKind::new(a, sa), p);
            let y = make_spinor(SpinorKind::new(b, sb), p2);
            let g0 = gamma(0);
            s += (x.bar_sandwich(&g0, &y) * y.bar_sandwich(&g0, &x)).re;
        }
    }
    s
}

/// The same integrand assembled directly from the four spin-summed spinor
/// products (u^u^, v^v^, u^v^, v^u^) with their plane-wave phases, each
/// counted together with its complex conjugate.
pub fn exchange_integrand_two_momenta_spinor(p: &Momentum3, p2: &Momentum3, separation_r: f64) -> Result<f64> {
    check_separation(separation_r)?;
    let minus = ((p.pz - p2.pz) * separation_r).cos();
    let plus = ((p.pz + p2.pz) * separation_r).cos();
    let same = pair_overlap(Family::UHat, p, Family::UHat, p2) + pair_overlap(Family::VHat, p, Family::VHat, p2);
    let cross = pair_overlap(Family::UHat, p, Family::VHat, p2) + pair_overlap(Family::VHat, p, Family::UHat, p2);
    // -1/2 [2 same cos(-) - 2 cross cos(+)]
    Ok(-(same * minus - cross * plus))
}

/// Maximum residuals of the identity battery over a set of momenta.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct SpinorBattery {
    pub samples: usize,
    pub dirac: f64,
    pub charge_conjugation: f64,
    pub completeness: f64,
    pub scalar_density: f64,
    pub particle_density: f64,
    pub orthogonality: f64,
    pub current_density: f64,
    pub exchange_vector: f64,
    pub exchange_vector_offdiagonal: f64,
    pub exchange_scalar: f64,
    pub exchange_tensor_printed: f64,
    pub exchange_tensor_full: f64,
    pub clifford: f64,
}

impl SpinorBattery {
    pub fn max(&self) -> f64 {
        [
            self.dirac,
            self.charge_conjugation,
            self.completeness,
            self.scalar_density,
            self.particle_density,
            self.orthogonality,
            self.current_density,
            self.exchange_vector,
            self.exchange_vector_offdiagonal,
            self.exchange_scalar,
            self.exchange_tensor_printed,
            self.exchange_tensor_full,
            self.clifford,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    fn merge(mut self, o: &SpinorBattery) -> SpinorBattery {
        self.samples += o.samples;
        self.dirac = self.dirac.max(o.dirac);
        self.charge_conjugation = self.charge_conjugation.max(o.charge_conjugation);
        self.completeness = self.completeness.max(o.completeness);
        self.scalar_density = self.scalar_density.max(o.scalar_density);
        self.particle_density = self.particle_density.max(o.particle_density);
        self.orthogonality = self.orthogonality.max(o.orthogonality);
        self.current_density = self.current_density.max(o.current_density);
        self.exchange_vector = self.exchange_vector.max(o.exchange_vector);
        self.exchange_vector_offdiagonal = self.exchange_vector_offdiagonal.max(o.exchange_vector_offdiagonal);
        self.exchange_scalar = self.exchange_scalar.max(o.exchange_scalar);
        self.exchange_tensor_printed = self.exchange_tensor_printed.max(o.exchange_tensor_printed);
        self.exchange_tensor_full = self.exchange_tensor_full.max(o.exchange_tensor_full);
        self.clifford = self.clifford.max(o.clifford);
        self
    }
}

/// `count` momenta with components uniform in `[-3, 3]`, from a fixed seed.
pub fn random_momenta(seed: u64, count: usize) -> Vec<Momentum3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Momentum3::new(rng.random_range(-3.0..=3.0), rng.random_range(-3.0..=3.0), rng.random_range(-3.0..=3.0)))
        .collect()
}

/// Residual of `{gamma^mu, gamma^nu} = 2 g^{mu nu}`.
pub fn clifford_residual() -> f64 {
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let (a, b) = (gamma(mu), gamma(nu));
            let anti = a * b + b * a;
            let expected = Matrix4::identity().scale(Complex64::new(2.0 * metric(mu, nu), 0.0));
            worst = worst.max((anti - expected).max_abs());
        }
    }
    worst
}

/// All identities at a single momentum.
pub fn battery_at(p: &Momentum3) -> SpinorBattery {
    let e = p.energy();
    let mut b = SpinorBattery { samples: 1, ..Default::default() };
    for kind in SpinorKind::all() {
        b.dirac = b.dirac.max(dirac_residual(kind, p));
    }
    b.charge_conjugation = charge_conjugation_residual(p);
    for f in Family::ALL {
        b.completeness = b.completeness.max(completeness_residual(f, p));
        let scalar_sign = match f {
            Family::U | Family::VHat => 1.0,
            Family::UHat | Family::V => -1.0,
        };
        let current_sign = if f.is_hat() { -1.0 } else { 1.0 };
        for s in [Spin::Up, Spin::Down] {
            for s2 in [Spin::Up, Spin::Down] {
                let (k1, k2) = (SpinorKind::new(f, s), SpinorKind::new(f, s2));
                let delta = if s == s2 { 1.0 } else { 0.0 };
                let sc = bilinear((k1, p), GammaString::Scalar, (k2, p));
                b.scalar_density = b.scalar_density.max((sc - scalar_sign * delta / e).norm());
                let n = bilinear((k1, p), GammaString::Vector(0), (k2, p));
                b.particle_density = b.particle_density.max((n - delta).norm());
                for k in 1..=3 {
                    let j = bilinear((k1, p), GammaString::Vector(k), (k2, p));
                    let expected = current_sign * p.component(k) / e * delta;
                    b.current_density = b.current_density.max((j - expected).norm());
                }
            }
        }
    }
    for s in [Spin::Up, Spin::Down] {
        for s2 in [Spin::Up, Spin::Down] {
            let pairs = [(Family::U, Family::UHat), (Family::V, Family::VHat)];
            for (a, c) in pairs {
                let v = bilinear((SpinorKind::new(a, s), p), GammaString::Vector(0), (SpinorKind::new(c, s2), p));
                b.orthogonality = b.orthogonality.max(v.norm());
            }
        }
    }
    for mu in 0..4 {
        for nu in 0..4 {
            let ch = ExchangeChannel::Vector(mu, nu);
            let d = (exchange_integrand_one_momentum(ch, p).re - exchange_one_momentum_expected(ch, p)).abs();
            if mu == nu {
                b.exchange_vector = b.exchange_vector.max(d);
            } else {
                b.exchange_vector_offdiagonal = b.exchange_vector_offdiagonal.max(d);
            }
        }
    }
    b.exchange_scalar = (exchange_integrand_one_momentum(ExchangeChannel::Scalar, p).re + 1.0 / e).abs();
    let full = exchange_tensor_full(p);
    for (mu, t1) in full.iter().enumerate() {
        for (nu, t2) in t1.iter().enumerate() {
            for (rho, t3) in t2.iter().enumerate() {
                for (sg, &v) in t3.iter().enumerate() {
                    let ch = ExchangeChannel::Tensor(mu, nu, rho, sg);
                    b.exchange_tensor_full = b.exchange_tensor_full.max((v - exchange_one_momentum_expected(ch, p)).abs());
                }
            }
        }
    }
    // printed form -g^{mu rho} g^{nu sigma}/E on the rest-frame surviving pairs
    for (mu, nu) in [(1, 2), (2, 1)] {
        let v = full[mu][nu][mu][nu];
        b.exchange_tensor_printed = b.exchange_tensor_printed.max((v + metric(mu, mu) * metric(nu, nu) / e).abs());
    }
    b.clifford = clifford_residual();
    b
}

/// Identity battery over `count` seeded random momenta.
pub fn battery(seed: u64, count: usize) -> SpinorBattery {
    let momenta = random_momenta(seed, count);
    let results = crate::parallel::map_slice(&momenta, battery_at);
    results.iter().fold(SpinorBattery::default(), |acc, b| acc.merge(b))
}
