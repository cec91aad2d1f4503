use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use super::airy::airy_zero;
use crate::error::{Error, Result};
use crate::exact_arith::BigComplex;
use crate::quadrature::tanh_sinh;

/// A radius constant `r = 1/x*` with the zero `x*` it comes from.
#[derive(Clone, Debug)]
pub struct Radius {
    pub zero: Float,
    pub r: Float,
}

impl Serialize for Radius {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Radius", 2)?;
        st.serialize_field("zero", &crate::exact_arith::fmt_float(&self.zero, 20))?;
        st.serialize_field("r", &crate::exact_arith::fmt_float(&self.r, 20))?;
        st.end()
    }
}

/// `y(x) = (2√2/Γ(1/4)) ∫_0^∞ cos(xt) e^{−t⁴/4} dt`, normalised so `y(0) = 1`.
pub fn quartic_kernel(x: &Float, prec: u32) -> Result<Float> {
    let wp = prec + 16;
    // e^{−T⁴/4} < 2^{−wp}
    let cutoff = (4.0 * (wp as f64 + 8.0) * std::f64::consts::LN_2).powf(0.25);
    let a = Float::new(wp);
    let b = Float::with_val(wp, cutoff);
    let x = Float::with_val(wp, x);
    let v = tanh_sinh(
        |t| {
            let t4 = Float::with_val(wp, Pow::pow(t, 4u32)) / 4u32;
            let g = Float::with_val(wp, (-t4).exp_ref());
            let c = Float::with_val(wp, Float::with_val(wp, &x * t).cos_ref());
            BigComplex::from_real(g * c)
        },
        &a,
        &b,
        wp,
    )?;
    let quarter = Float::with_val(wp, 0.25);
    let norm = Float::with_val(wp, 8u32).sqrt() / quarter.gamma();
    Ok(Float::with_val(prec, v.re * norm))
}

/// Smallest positive zero of [`quartic_kernel`] and `r = 1/x*`.
pub fn radius_quartic(prec: u32) -> Result<Radius> {
    let step = Float::with_val(prec, 0.25);
    let mut lo = Float::with_val(prec, 0);
    let mut ylo = quartic_kernel(&lo, prec)?;
    let mut hi = Float::with_val(prec, &lo + &step);
    let mut yhi = quartic_kernel(&hi, prec)?;
    while ylo.is_sign_negative() == yhi.is_sign_negative() {
        if hi > 10 {
            return Err(Error::Bracketing("no sign change of the quartic kernel below 10".into()));
        }
        lo = hi.clone();
        ylo = yhi;
        hi += &step;
        yhi = quartic_kernel(&hi, prec)?;
    }
    // Illinois-modified regula falsi keeps the bracket.
    let tol = Float::with_val(prec, Float::i_exp(1, 12 - prec as i32));
    let mut side = 0i8;
    for _ in 0..400 {
        let num = Float::with_val(prec, &yhi * Float::with_val(prec, &hi - &lo));
        let den = Float::with_val(prec, &yhi - &ylo);
        let mid = Float::with_val(prec, &hi - num / den);
        let ymid = quartic_kernel(&mid, prec)?;
        if ymid.is_zero() {
            lo = mid.clone();
            hi = mid;
            break;
        }
        if ymid.is_sign_negative() == yhi.is_sign_negative() {
            hi = mid;
            yhi = ymid;
            if side == 1 {
                ylo /= 2u32;
            }
            side = 1;
        } else {
            lo = mid;
            ylo = ymid;
            if side == -1 {
                yhi /= 2u32;
            }
            side = -1;
        }
        if Float::with_val(prec, &hi - &lo).abs() < tol {
            break;
        }
    }
    let zero = Float::with_val(prec, &lo + &hi) / 2u32;
    let r = Float::with_val(prec, 1) / &zero;
    Ok(Radius { zero, r })
}

/// `r = 1/a`, with `a` the first zero of `Ai(−x)`.
pub fn radius_cubic(prec: u32) -> Radius {
    let zero = airy_zero(1, prec);
    let r = Float::with_val(prec, 1) / &zero;
    Radius { zero, r }
}

/// Series form of the quartic kernel, used as an independent check:
/// `Σ_k (−1)^k x^{2k}/(2k)! · 4^{(2k−3)/4} Γ((2k+1)/4)` times the norm.
#[cfg(test)]
fn quartic_kernel_series(x: f64) -> f64 {
    let mut s = 0.0;
    let mut xp = 1.0;
    let mut fact = 1.0;
    for k in 0..80 {
        let kf = k as f64;
        let m = 4f64.powf((2.0 * kf - 3.0) / 4.0) * gamma_f64((2.0 * kf + 1.0) / 4.0);
        s += if k % 2 == 0 { 1.0 } else { -1.0 } * xp / fact * m;
        xp *= x * x;
        fact *= (2.0 * kf + 1.0) * (2.0 * kf + 2.0);
    }
    s * 8f64.sqrt() / gamma_f64(0.25)
}

#[cfg(test)]
fn gamma_f64(x: f64) -> f64 {
    Float::with_val(64, x).gamma().to_f64()
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_normalised_at_origin() {
        let y0 = quartic_kernel(&Float::with_val(128, 0), 128).unwrap();
        assert!((y0.to_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn kernel_matches_series() {
        for x in [0.5, 1.7, 2.4, 3.1] {
            let q = quartic_kernel(&Float::with_val(128, x), 128).unwrap().to_f64();
            assert!((q - quartic_kernel_series(x)).abs() < 1e-10, "{x}");
        }
    }

    #[test]
    fn quartic_radius() {
        let r = radius_quartic(128).unwrap();
        assert!((r.zero.to_f64() - 2.441_967_903_749_557_9).abs() < 1e-14);
        assert!((r.r.to_f64() - 0.409_505_791_810_176_7).abs() < 1e-14);
    }

    #[test]
    fn cubic_radius() {
        let r = radius_cubic(128);
        assert!((r.r.to_f64() - 0.427_696_347_707).abs() < 1e-12);
    }
}
