//! Large-order growth of the Green's functions: the factorial laws, their
//! radius constants, and Richardson extrapolation.

mod airy;
mod fit;
mod model;
mod radius;
mod richardson;

pub use airy::{airy_ai, airy_origin, airy_zero};
pub use fit::{fit_asymptotic_model, Fit};
pub use model::{asymptotic_value, AsymptoticModel, GrowthLaw, Provenance};
pub use radius::{quartic_kernel, radius_cubic, radius_quartic, Radius};
pub use richardson::{richardson, richardson_real, Extrapolation};

use crate::ds_generator::Theory;
use crate::error::{Error, Result};

/// The model used for asymptotic closure: ODE radii for the quartic and
/// cubic theories, a fit to the exact table for −φ⁴.
pub fn default_model(theory: Theory, prec: u32) -> Result<AsymptoticModel> {
    match theory {
        Theory::Quartic => Ok(AsymptoticModel::new(
            theory,
            GrowthLaw::AlternatingEven,
            radius_quartic(prec)?.r,
            Provenance::OdeExact,
        )),
        Theory::Cubic => Ok(AsymptoticModel::new(
            theory,
            GrowthLaw::PhaseRotating,
            radius_cubic(prec).r,
            Provenance::OdeExact,
        )),
        Theory::NegQuartic => {
            let table = crate::oracle::exact_green_table(&theory.spec(), 40, prec.max(512))?;
            Ok(fit_asymptotic_model(theory, &table, GrowthLaw::PhaseRotating, 8)?.model)
        }
        Theory::Quintic | Theory::Sextic => Err(Error::InvalidArgument(format!(
            "no growth law is available for {theory}"
        ))),
    }
}
