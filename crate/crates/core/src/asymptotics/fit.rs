use rug::ops::Pow;
use std::collections::BTreeMap;

use rug::Float;
use serde::Serialize;

use super::model::{AsymptoticModel, GrowthLaw, Provenance};
use super::richardson::{richardson, Extrapolation};
use crate::ds_generator::Theory;
use crate::error::{Error, Result};
use crate::exact_arith::BigComplex;

/// Fitted model with the extrapolation diagnostics behind it.
#[derive(Clone, Debug, Serialize)]
pub struct Fit {
    #[serde(skip)]
    pub model: AsymptoticModel,
    pub radius: Extrapolation,
    pub prefactor: Extrapolation,
}

/// `G_k` divided by the law's template without `r` and prefactor, so that
/// the result behaves like `P·r^n` (quartic: `P·r^{2n}`).
fn reduced(law: GrowthLaw, n: usize, g: &BigComplex, prec: u32) -> BigComplex {
    match law {
        GrowthLaw::AlternatingEven => {
            let f = Float::with_val(prec, Float::factorial(2 * n as u32 - 1)) * 2u32;
            let v = g.scale(&(Float::with_val(prec, 1) / &f));
            if n % 2 == 0 {
                -v
            } else {
                v
            }
        }
        GrowthLaw::PhaseRotating => {
            let f = Float::with_val(prec, Float::factorial(n as u32 - 1));
            // divide by −(−i)^n = −i^{3n}, i.e. multiply by −i^{n}
            -g.scale(&(Float::with_val(prec, 1) / &f)).mul_i_pow((n % 4) as i32)
        }
    }
}

/// Extract `r` and the prefactor from a table of exact values by Richardson
/// extrapolation of the ratio sequence `a_{n+1}/a_n` implied by the law.
pub fn fit_asymptotic_model(
    theory: Theory,
    table: &BTreeMap<usize, BigComplex>,
    law: GrowthLaw,
    max_order: usize,
) -> Result<Fit> {
    let prec = table.values().map(BigComplex::prec).max().unwrap_or(128);
    let reduced_seq: Vec<(usize, BigComplex)> = table
        .iter()
        .filter_map(|(k, g)| law.law_index(*k).map(|n| (n, reduced(law, n, g, prec))))
        .collect();
    if reduced_seq.len() < 8 {
        return Err(Error::SequenceTooShort {
            needed: 8,
            have: reduced_seq.len(),
        });
    }
    let ratios: Vec<(usize, BigComplex)> = reduced_seq
        .windows(2)
        .filter(|w| w[1].0 == w[0].0 + 1 && !w[0].1.is_zero())
        .map(|w| (w[0].0, &w[1].1 / &w[0].1))
        .collect();
    let order = max_order.min(ratios.len().saturating_sub(2));
    let step = richardson(&ratios, order)?;
    let r = match law {
        GrowthLaw::AlternatingEven => Float::with_val(prec, step.value.re.sqrt_ref()),
        GrowthLaw::PhaseRotating => step.value.re.clone(),
    };
    if !(r > 0 && r < 1) {
        return Err(Error::NonConvergence(format!("fitted radius {} outside (0, 1)", r.to_f64())));
    }
    let power = |n: usize| match law {
        GrowthLaw::AlternatingEven => Float::with_val(prec, Pow::pow(&r, 2 * n as u32)),
        GrowthLaw::PhaseRotating => Float::with_val(prec, Pow::pow(&r, n as u32)),
    };
    let prefactors: Vec<(usize, BigComplex)> = reduced_seq
        .iter()
        .map(|(n, a)| (*n, a.scale(&(Float::with_val(prec, 1) / &power(*n)))))
        .collect();
    let order = max_order.min(prefactors.len().saturating_sub(2));
    let mut pf = richardson(&prefactors, order)?;
    // the template is ρ^n with ρ the extrapolated ratio, so an error δρ
    // moves the last prefactor by a relative n·δρ/ρ
    let (last, _) = reduced_seq[reduced_seq.len() - 1];
    pf.spread += pf.value.abs_f64() * last as f64 * step.spread / step.value.abs_f64();
    let mut model = AsymptoticModel::new(theory, law, Float::with_val(prec, &r), Provenance::NumericalFit);
    model.prefactor = pf.value.re.clone();
    Ok(Fit {
        model,
        radius: Extrapolation {
            value: BigComplex::from_real(r),
            ..step
        },
        prefactor: pf,
    })
}
