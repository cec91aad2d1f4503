//! Dyson-Schwinger towers for zero-dimensional field theories with monomial
//! actions: exact generation, truncation to univariate polynomials, root
//! constellations, asymptotic closures and high-precision reference values.

pub mod asymptotics;
pub mod ds_generator;
pub mod elimination;
pub mod error;
pub mod exact_arith;
pub mod oracle;
pub mod pcf_demo;
pub mod quadrature;
pub mod rootfinder;

pub use error::{Error, Result};
