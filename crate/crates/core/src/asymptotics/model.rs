use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use crate::ds_generator::Theory;
use crate::exact_arith::BigComplex;

/// Leading factorial growth law of the Green's functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GrowthLaw {
    /// `G_{2n} ~ 2·r^{2n}·(−1)^{n+1}·(2n−1)!`, indexed by `n`.
    AlternatingEven,
    /// `G_n ~ −(n−1)!·r^n·(−i)^n`, indexed by `n`.
    PhaseRotating,
}

impl GrowthLaw {
    pub fn for_theory(theory: Theory) -> Option<GrowthLaw> {
        match theory {
            Theory::Quartic => Some(GrowthLaw::AlternatingEven),
            Theory::Cubic | Theory::NegQuartic => Some(GrowthLaw::PhaseRotating),
            Theory::Quintic | Theory::Sextic => None,
        }
    }

    /// Law index for Green's-function index `k`, if the law covers it.
    pub fn law_index(self, k: usize) -> Option<usize> {
        match self {
            GrowthLaw::AlternatingEven => (k % 2 == 0 && k >= 2).then_some(k / 2),
            GrowthLaw::PhaseRotating => (k >= 1).then_some(k),
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            GrowthLaw::AlternatingEven => "G_{2n} ~ 2 r^{2n} (-1)^{n+1} (2n-1)!",
            GrowthLaw::PhaseRotating => "G_n ~ -(n-1)! r^n (-i)^n",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    OdeExact,
    NumericalFit,
}

/// Growth law with its radius constant `r` and an overall prefactor
/// (1 for the laws as stated).
#[derive(Clone, Debug)]
pub struct AsymptoticModel {
    pub theory: Theory,
    pub law: GrowthLaw,
    pub r: Float,
    pub prefactor: Float,
    pub provenance: Provenance,
}

impl AsymptoticModel {
    pub fn new(theory: Theory, law: GrowthLaw, r: Float, provenance: Provenance) -> Self {
        let prefactor = Float::with_val(r.prec(), 1);
        AsymptoticModel {
            theory,
            law,
            r,
            prefactor,
            provenance,
        }
    }

    /// Law value at law index `n`.
    pub fn value(&self, n: usize, prec: u32) -> BigComplex {
        let r = Float::with_val(prec, &self.r);
        match self.law {
            GrowthLaw::AlternatingEven => {
                let fact = Float::with_val(prec, Float::factorial(2 * n as u32 - 1));
                let rp = r.pow(2 * n as u32);
                let mut v = fact * rp * 2u32 * &self.prefactor;
                if n % 2 == 0 {
                    v = -v;
                }
                BigComplex::from_real(v)
            }
            GrowthLaw::PhaseRotating => {
                let fact = Float::with_val(prec, Float::factorial(n as u32 - 1));
                let mag = -(fact * r.pow(n as u32) * &self.prefactor);
                // (−i)^n = i^{3n}
                BigComplex::from_real(mag).mul_i_pow((3 * n % 4) as i32)
            }
        }
    }

    /// Law value for `G_k`, if the law covers index `k`.
    pub fn value_for_index(&self, k: usize, prec: u32) -> Option<BigComplex> {
        self.law.law_index(k).map(|n| self.value(n, prec))
    }
}

/// `A(n)` for closure of the truncated tower.
pub fn asymptotic_value(model: &AsymptoticModel, n: usize, prec: u32) -> BigComplex {
    model.value(n, prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_law_at_one_is_two_r_squared() {
        let r = Float::with_val(128, 0.4);
        let m = AsymptoticModel::new(Theory::Quartic, GrowthLaw::AlternatingEven, r, Provenance::OdeExact);
        let v = asymptotic_value(&m, 1, 128);
        assert!((v.re_f64() - 0.32).abs() < 1e-15);
        assert!(m.value(2, 128).re_f64() < 0.0);
    }

    #[test]
    fn phase_rotating_signs() {
        let r = Float::with_val(128, 0.5);
        let m = AsymptoticModel::new(Theory::NegQuartic, GrowthLaw::PhaseRotating, r, Provenance::NumericalFit);
        // n = 10: positive real; n = 9: positive imaginary
        assert!(m.value(10, 128).re_f64() > 0.0);
        assert!(m.value(9, 128).im_f64() > 0.0);
        assert!(m.value(15, 128).im_f64() < 0.0);
    }
}
