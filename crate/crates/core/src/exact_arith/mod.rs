//! Exact Gaussian-rational arithmetic, sparse multivariate and dense
//! univariate polynomials, resultants, and MPFR-backed complex numbers.

mod bigcomplex;
mod gauss;
pub mod modular;
mod multipoly;
pub mod resultant;
mod ring;
pub mod text;
mod unipoly;

pub use bigcomplex::{fmt_float, BigComplex, ToComplex};
pub use gauss::{GaussInt, GaussRational};
pub use multipoly::{Monomial, MultiPoly};
pub use ring::{Field, Ring};
pub use rug::{Float, Integer, Rational};
pub use unipoly::{horner, UniPoly};

/// Working precision in bits when none is requested.
pub const DEFAULT_PRECISION: u32 = 256;

/// Floor applied to every requested precision.
pub const MIN_PRECISION: u32 = 64;

/// Exact polynomial in Green's-function variables.
pub type GPoly = MultiPoly<GaussRational>;

/// Exact univariate polynomial.
pub type XPoly = UniPoly<GaussRational>;
