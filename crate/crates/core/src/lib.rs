//! Numerical laboratory for the exchange hole and exchange electron of the
//! Dirac sea.
//!
//! All quantities are in natural units `hbar = c = m_e = 1`: radii are in
//! reduced Compton wavelengths, momenta in units of `m_e`, densities in
//! `lambda_C^-3` and charges in units of the elementary charge `e`.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`] : modified Bessel `K`, modified Struve `L`, Bickley `Ki1`, Gamma.
//! * [`spinor`] : Dirac-representation gamma matrices, plane-wave spinors,
//!   bilinear identities and the biquadratic exchange integrands.
//! * [`radialft`] : zero-splitting oscillatory quadrature for radially
//!   symmetric inverse Fourier transforms and their gradients.
//! * [`densities`] : closed-form radial densities, sum rules, moments,
//!   Fermi-sea quantities, three-fermion terms and the exciton geometry.
//! * [`fields`] : potentials, fields, Gauss/Poisson oracles and force densities.
//! * [`checks`] : named verification suites producing [`checks::CheckReport`]s.

// `!(x > 0.0)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod densities;
pub mod error;
pub mod fields;
pub mod figures;
pub mod grid;
pub mod oracle;
pub mod parallel;
pub mod quadrature;
pub mod quantity;
pub mod radialft;
pub mod specfun;
pub mod spinor;

pub use error::{Error, Result};
