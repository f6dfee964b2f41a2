//! Fractional integrals of modular-form Fourier series and numerical
//! estimation of their pointwise, restricted and local Hölder exponents.
//!
//! The crate is organised bottom-up:
//!
//! - [`numtheory`]: prime sieve, elliptic-curve point counts, divisor sums,
//!   two-square lattice sums.
//! - [`modcoeffs`]: the built-in coefficient sequences with their modular
//!   metadata and the on-disk coefficient cache.
//! - [`series`]: evaluation of `f_α` (complex, cosine and sine flavors), its
//!   extension to the upper half-plane, the Poisson kernel and the closed-form
//!   test fixtures.
//! - [`regularity`]: the analytic wavelet transform, scale scans, slope
//!   regression and the exponent prediction engine.
//! - [`report`]: figure presets, CSV/SVG/JSON emitters and the verification
//!   suites driven by the `fracmod` binary.

pub mod error;
pub mod modcoeffs;
pub mod numtheory;
pub mod quadrature;
pub mod regularity;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use num_rational::Rational64;
