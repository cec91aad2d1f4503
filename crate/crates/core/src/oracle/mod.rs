//! Reference values independent of the truncated towers: Gamma-function
//! moments, contour quadrature, and the moment → cumulant transform.

mod contour;
mod cumulants;

pub use contour::{contour_moment, contour_pairs, moment_closed_form, sector_of};
pub use cumulants::{cumulants_from_moments, moments_from_cumulants};

use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::Float;

use crate::ds_generator::{Contour, Theory, TheorySpec};
use crate::error::Result;
use crate::exact_arith::BigComplex;

/// How moments are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentMethod {
    ClosedForm,
    Quadrature,
}

#[derive(Clone, Debug)]
pub struct MomentTable {
    pub theory: Theory,
    pub contour: Contour,
    /// `γ_0 … γ_N`.
    pub moments: Vec<BigComplex>,
}

impl MomentTable {
    pub fn compute(spec: &TheorySpec, contour: &Contour, order: usize, method: MomentMethod, prec: u32) -> Result<Self> {
        let moments = (0..=order)
            .map(|k| match method {
                MomentMethod::ClosedForm => moment_closed_form(spec, contour, k, prec),
                MomentMethod::Quadrature => contour_moment(spec, contour, k, prec),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MomentTable {
            theory: spec.theory,
            contour: *contour,
            moments,
        })
    }

    pub fn cumulants(&self, order: usize) -> Result<BTreeMap<usize, BigComplex>> {
        cumulants_from_moments(&self.moments, order)
    }
}

/// Connected Green's functions `G_1..=G_max` on `contour` from closed-form
/// moments. Parity-symmetric theories report zeros at odd indices.
pub fn green_functions(spec: &TheorySpec, contour: &Contour, max_index: usize, prec: u32) -> Result<BTreeMap<usize, BigComplex>> {
    // The log transform loses about log2(max!) bits to cancellation.
    let guard = (1..=max_index.max(1)).map(|k| (k as f64).log2()).sum::<f64>() as u32 + 32;
    let wp = prec + guard;
    let table = MomentTable::compute(spec, contour, max_index, MomentMethod::ClosedForm, wp)?;
    Ok(table
        .cumulants(max_index)?
        .into_iter()
        .map(|(k, g)| (k, g.with_prec(prec)))
        .collect())
}

/// `G_1..=G_max` on the theory's default contour.
pub fn exact_green_table(spec: &TheorySpec, max_index: usize, prec: u32) -> Result<BTreeMap<usize, BigComplex>> {
    green_functions(spec, &spec.default_contour, max_index, prec)
}

/// Closed-form values of the base unknowns (the seeds of the tower) on the
/// default contour.
pub fn exact_lowest(spec: &TheorySpec, prec: u32) -> Result<BTreeMap<usize, BigComplex>> {
    exact_lowest_on(spec, &spec.default_contour, prec)
}

pub fn exact_lowest_on(spec: &TheorySpec, contour: &Contour, prec: u32) -> Result<BTreeMap<usize, BigComplex>> {
    let base = spec.base_unknowns();
    let top = *base.iter().max().expect("nonempty");
    let all = green_functions(spec, contour, top, prec)?;
    Ok(all.into_iter().filter(|(k, _)| base.contains(k)).collect())
}

/// Leading-truncation masses of the two one-dimensional quartic examples:
/// `M³ = 3/2` (Hermitian, g = 1) and `M³ = 3` (PT-symmetric).
pub fn d1_leading_masses(prec: u32) -> (BigComplex, BigComplex) {
    let third = Float::with_val(prec, 1) / 3u32;
    let herm = Float::with_val(prec, 1.5).pow(&third);
    let pt = Float::with_val(prec, 3).pow(&third);
    (BigComplex::from_real(herm), BigComplex::from_real(pt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ds_generator::PiFraction;

    #[test]
    fn quartic_g2_closed_form() {
        let g = exact_lowest(&Theory::Quartic.spec(), 128).unwrap();
        let q = Float::with_val(128, 0.25).gamma();
        let tq = Float::with_val(128, 0.75).gamma();
        let want = Float::with_val(128, tq * 2u32 / q);
        assert!(Float::with_val(128, &g[&2].re - &want).abs() < 1e-35);
        assert!(g[&2].im.is_zero() || g[&2].im_f64().abs() < 1e-35);
    }

    #[test]
    fn quadrature_agrees_with_gamma() {
        let spec = Theory::Cubic.spec();
        for k in 0..5 {
            let a = moment_closed_form(&spec, &spec.default_contour, k, 128).unwrap();
            let b = contour_moment(&spec, &spec.default_contour, k, 128).unwrap();
            assert!(a.dist(&b).to_f64() < 1e-30, "k={k}");
        }
    }

    #[test]
    fn ray_outside_sector_is_rejected() {
        let spec = Theory::Quartic.spec();
        let bad = Contour::new(PiFraction::new(1, 4), PiFraction::new(0, 1));
        assert!(contour_moment(&spec, &bad, 0, 64).is_err());
        assert!(moment_closed_form(&spec, &bad, 0, 64).is_err());
    }

    #[test]
    fn ten_quintic_pairs() {
        assert_eq!(contour_pairs(&Theory::Quintic.spec()).len(), 10);
        assert_eq!(contour_pairs(&Theory::Sextic.spec()).len(), 15);
    }

    #[test]
    fn masses() {
        let (h, p) = d1_leading_masses(128);
        assert!((h.re_f64() - 1.144_714_242_553_332).abs() < 1e-14);
        assert!((p.re_f64() - 1.442_249_570_307_408).abs() < 1e-14);
    }
}
