use std::fmt;

use rug::Float;

use super::RootSet;
use crate::error::{Error, Result};
use crate::exact_arith::BigComplex;

#[derive(Clone, Debug)]
pub enum SelectionPolicy {
    /// The largest root on the positive real axis.
    LargestPositiveReal,
    /// The lower-half-plane root of largest modulus; when it is off the
    /// imaginary axis, the reflection-symmetric pair `(z, −z̄)`.
    PtNegativeImaginary,
    NearestTo(BigComplex),
}

impl fmt::Display for SelectionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionPolicy::LargestPositiveReal => f.write_str("largest-positive-real"),
            SelectionPolicy::PtNegativeImaginary => f.write_str("pt-negative-imaginary"),
            SelectionPolicy::NearestTo(z) => write!(f, "nearest-to({z:.10})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSelector {
    pub policy: SelectionPolicy,
    /// Keep only roots whose implied `G_2 = −G_1²` has positive real part.
    pub spectral_positivity: bool,
}

impl RootSelector {
    pub fn new(policy: SelectionPolicy) -> Self {
        RootSelector {
            policy,
            spectral_positivity: false,
        }
    }

    pub fn with_spectral_positivity(mut self) -> Self {
        self.spectral_positivity = true;
        self
    }
}

#[derive(Clone, Debug)]
pub enum Selected {
    Single(BigComplex),
    SymmetricPair(BigComplex, BigComplex),
}

impl Selected {
    /// The single root, or the pair member with positive real part.
    pub fn representative(&self) -> &BigComplex {
        match self {
            Selected::Single(z) => z,
            Selected::SymmetricPair(a, b) => {
                if a.re >= b.re {
                    a
                } else {
                    b
                }
            }
        }
    }

    pub fn roots(&self) -> Vec<&BigComplex> {
        match self {
            Selected::Single(z) => vec![z],
            Selected::SymmetricPair(a, b) => vec![a, b],
        }
    }
}

/// Relative tolerance for deciding that a computed root lies on an axis.
fn axis_tolerance(prec: u32) -> f64 {
    2f64.powf(-(prec as f64) / 4.0).max(1e-60)
}

fn on_real_axis(z: &BigComplex, tol: f64) -> bool {
    z.im.to_f64().abs() <= tol * z.abs_f64().max(1.0)
}

fn on_imaginary_axis(z: &BigComplex, tol: f64) -> bool {
    z.re.to_f64().abs() <= tol * z.abs_f64().max(1.0)
}

fn spectrally_positive(z: &BigComplex) -> bool {
    // Re(−z²) = Im² − Re²
    let p = z.prec();
    let im2 = Float::with_val(p, z.im.square_ref());
    let re2 = Float::with_val(p, z.re.square_ref());
    im2 > re2
}

pub fn select_physical(rs: &RootSet, sel: &RootSelector) -> Result<Selected> {
    if rs.is_empty() {
        return Err(Error::NoRootSelected(format!("{} (empty root set)", sel.policy)));
    }
    let tol = axis_tolerance(rs.precision_bits);
    let pool: Vec<&BigComplex> = rs
        .roots
        .iter()
        .filter(|z| !sel.spectral_positivity || spectrally_positive(z))
        .collect();
    let none = || Error::NoRootSelected(sel.policy.to_string());
    match &sel.policy {
        SelectionPolicy::LargestPositiveReal => pool
            .iter()
            .filter(|z| on_real_axis(z, tol) && z.re > 0)
            .max_by(|a, b| a.re.partial_cmp(&b.re).expect("finite"))
            .map(|z| Selected::Single(BigComplex::from_real(z.re.clone())))
            .ok_or_else(none),
        SelectionPolicy::NearestTo(reference) => pool
            .iter()
            .min_by(|a, b| {
                a.dist(reference)
                    .partial_cmp(&b.dist(reference))
                    .expect("finite")
            })
            .map(|z| Selected::Single((*z).clone()))
            .ok_or_else(none),
        SelectionPolicy::PtNegativeImaginary => {
            // The leading lower-half-plane root: on the axis it stands alone,
            // off the axis it comes with its mirror image −z̄.
            let lower: Vec<&&BigComplex> = pool.iter().filter(|z| z.im < 0).collect();
            let lead = lower
                .iter()
                .max_by(|a, b| a.abs().partial_cmp(&b.abs()).expect("finite"))
                .ok_or_else(none)?;
            if on_imaginary_axis(lead, tol) {
                let im = lead.im.clone();
                return Ok(Selected::Single(BigComplex::from_floats(Float::new(im.prec()), im)));
            }
            let mirror = -lead.conj();
            let partner = lower
                .iter()
                .min_by(|a, b| a.dist(&mirror).partial_cmp(&b.dist(&mirror)).expect("finite"))
                .expect("nonempty");
            let (a, b) = if lead.re >= partner.re {
                ((**lead).clone(), (**partner).clone())
            } else {
                ((**partner).clone(), (**lead).clone())
            };
            Ok(Selected::SymmetricPair(a, b))
        }
    }
}

/// Order-stability selection: among the roots admitted by the selector's
/// filters, the one closest to some admitted root of the neighbouring
/// truncation. Returns the root and that distance.
pub fn select_stable(current: &RootSet, neighbour: &RootSet, sel: &RootSelector) -> Result<(BigComplex, Float)> {
    let admit = |rs: &RootSet| -> Vec<BigComplex> {
        let tol = axis_tolerance(rs.precision_bits);
        rs.roots
            .iter()
            .filter(|z| !sel.spectral_positivity || spectrally_positive(z))
            .filter(|z| match sel.policy {
                SelectionPolicy::LargestPositiveReal => on_real_axis(z, tol) && z.re > 0,
                SelectionPolicy::PtNegativeImaginary => z.im < 0,
                SelectionPolicy::NearestTo(_) => true,
            })
            .cloned()
            .collect()
    };
    let here = admit(current);
    let there = admit(neighbour);
    let none = || Error::NoRootSelected(format!("stable {}", sel.policy));
    here.into_iter()
        .filter_map(|z| {
            let d = there
                .iter()
                .map(|w| z.dist(w))
                .min_by(|a, b| a.partial_cmp(b).expect("finite"))?;
            Some((z, d))
        })
        .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
        .ok_or_else(none)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(pts: &[(f64, f64)]) -> RootSet {
        RootSet {
            poly_id: String::new(),
            roots: pts.iter().map(|&(a, b)| BigComplex::from_f64(128, a, b)).collect(),
            residuals: vec![Float::new(128); pts.len()],
            precision_bits: 128,
        }
    }

    #[test]
    fn largest_positive_real() {
        let rs = set(&[(-0.6, 0.0), (0.3, 0.0), (0.57, 0.0), (0.9, 0.2)]);
        let s = select_physical(&rs, &RootSelector::new(SelectionPolicy::LargestPositiveReal)).unwrap();
        assert_eq!(s.representative().re_f64(), 0.57);
    }

    #[test]
    fn pt_pair_when_axis_empty() {
        let rs = set(&[(0.016, -0.717), (-0.016, -0.717), (0.0, -0.458), (0.5, 0.3)]);
        let s = select_physical(&rs, &RootSelector::new(SelectionPolicy::PtNegativeImaginary)).unwrap();
        match s {
            Selected::SymmetricPair(a, b) => {
                assert!(a.re_f64() > 0.0 && b.re_f64() < 0.0);
            }
            _ => panic!("expected a pair"),
        }
    }

    #[test]
    fn spectral_positivity_filters() {
        let rs = set(&[(0.9, -0.1), (0.0, -0.7)]);
        let sel = RootSelector::new(SelectionPolicy::NearestTo(BigComplex::from_f64(128, 1.0, 0.0)))
            .with_spectral_positivity();
        let s = select_physical(&rs, &sel).unwrap();
        assert!(s.representative().re_f64().abs() < 1e-12);
    }

    #[test]
    fn empty_policy_match_is_error() {
        let rs = set(&[(-1.0, 0.0)]);
        assert!(select_physical(&rs, &RootSelector::new(SelectionPolicy::LargestPositiveReal)).is_err());
    }

    #[test]
    fn stable_root_wins_over_larger_ones() {
        let a = set(&[(0.0, -0.729011), (0.0, -0.7359), (0.006, -0.7337), (0.2, 0.1)]);
        let b = set(&[(0.0, -0.729012), (0.003, -0.7353), (0.0, -0.70)]);
        let sel = RootSelector::new(SelectionPolicy::PtNegativeImaginary).with_spectral_positivity();
        let (z, d) = select_stable(&a, &b, &sel).unwrap();
        assert!((z.im_f64() + 0.729011).abs() < 1e-12);
        assert!(d.to_f64() < 2e-6);
    }
}
