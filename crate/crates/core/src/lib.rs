//! Numerical harmonic analysis on `SL(2,C)`, its maximal compact subgroup
//! `SU(2)`, and the Poincaré group `R⁴ ⋊ SL(2,C)`.
//!
//! The crate is `no_std` (it needs `alloc`) and purely computational: every
//! identity it implements is exposed as a residual that can be evaluated by
//! quadrature. File formats, reports and the command-line front-end live in
//! the companion `harmonics` crate.
//!
//! Module map:
//!
//! - [`lie`]: group elements, Iwasawa factors, Haar-measure conventions.
//! - [`su2`]: Wigner D-matrices, Peter–Weyl transform, Casimir and Sobolev
//!   operators on `K = SU(2)`.
//! - [`abelian`]: midpoint-rule Fourier transforms on `R`, `R²`, `R⁴`.
//! - [`slc`]: the combined transform on `SL(2,C)`, convolutions and the
//!   Plancherel / inversion harness.
//! - [`minkowski`]: signature forms, Lorentz classification, spinor action.
//! - [`poincare`]: the Poincaré group, its lifts, convolutions and transform.
#![no_std]

extern crate alloc;

pub mod abelian;
mod error;
pub mod lie;
pub mod matrix;
pub mod minkowski;
pub mod poincare;
pub mod quadrature;
pub mod slc;
pub mod su2;

pub use error::Error;
pub use num_complex::Complex64;

/// `(2π)^{-dim}`, the Plancherel constant for a `dim`-dimensional abelian factor.
pub fn plancherel_constant(dim: u32) -> f64 {
    (2.0 * core::f64::consts::PI).powi(-(dim as i32))
}
