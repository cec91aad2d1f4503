use rug::ops::Pow;
use rug::Float;

use crate::ds_generator::{Contour, PiFraction, TheorySpec};
use crate::error::{Error, Result};
use crate::exact_arith::BigComplex;
use crate::quadrature::tanh_sinh;

/// `v·e^{imθ}`: the coefficient of `t^m/m` in the action along the ray `φ = t·e^{iθ}`.
fn ray_coefficient(spec: &TheorySpec, theta: &Float, prec: u32) -> BigComplex {
    let v = BigComplex::from_gauss(prec, &spec.vertex);
    let phase = BigComplex::cis(&Float::with_val(prec, theta * spec.exponent));
    &v * &phase
}

/// Index of the convergence sector strictly containing the ray.
pub fn sector_of(spec: &TheorySpec, theta: PiFraction) -> Option<usize> {
    let half = std::f64::consts::PI / (2.0 * spec.exponent as f64);
    spec.sector_centres().iter().position(|c| {
        let d = (theta.to_f64() - c.to_f64()).rem_euclid(2.0 * std::f64::consts::PI);
        let d = d.min(2.0 * std::f64::consts::PI - d);
        d < half - 1e-12
    })
}

fn checked_centre(spec: &TheorySpec, theta: PiFraction) -> Result<PiFraction> {
    sector_of(spec, theta)
        .map(|j| spec.sector_centres()[j])
        .ok_or(Error::OutsideSector {
            angle: theta.degrees(),
        })
}

/// `∫_0^∞ t^k e^{−t^m/m} dt = m^{(k+1)/m − 1} Γ((k+1)/m)`.
fn radial_gamma(m: u32, k: usize, prec: u32) -> Float {
    let s = Float::with_val(prec, k as u32 + 1) / m;
    let g = Float::with_val(prec, s.gamma_ref());
    let e = Float::with_val(prec, &s - 1u32);
    let mm = Float::with_val(prec, m);
    g * mm.pow(e)
}

/// `γ_k` in closed form. By Cauchy's theorem only the sectors of the
/// two rays matter, so each ray is rotated onto its sector centre, where the
/// action is real and the radial integral is a Gamma function.
pub fn moment_closed_form(spec: &TheorySpec, contour: &Contour, k: usize, prec: u32) -> Result<BigComplex> {
    let cin = checked_centre(spec, contour.incoming)?;
    let cout = checked_centre(spec, contour.outgoing)?;
    let phase = |p: PiFraction| -> BigComplex {
        // multiples of π/2 exactly, so that parity cancellations are exact
        let num = p.num * (k as i64 + 1);
        if (2 * num) % p.den == 0 {
            let quarter = (2 * num / p.den).rem_euclid(4) as i32;
            return BigComplex::one(prec).mul_i_pow(quarter);
        }
        BigComplex::cis(&Float::with_val(prec, p.radians(prec) * (k as u32 + 1)))
    };
    let radial = radial_gamma(spec.exponent, k, prec);
    Ok((&phase(cout) - &phase(cin)).scale(&radial))
}

/// `∫_0^∞ t^k e^{−c·t^m/m} dt` by tanh-sinh on `[0, R]`, with `R` chosen so
/// that the integrand has dropped below `2^{−prec}` of its peak.
fn radial_quadrature(c: &BigComplex, m: u32, k: usize, prec: u32) -> Result<BigComplex> {
    let wp = prec + 32;
    let re = c.re.to_f64();
    if re <= 0.0 {
        return Err(Error::InvalidArgument("ray outside convergence sector".into()));
    }
    // Peak of t^k e^{-re t^m/m} is at t^m = k/re.
    let mut radius = ((k as f64 + 1.0) / re).powf(1.0 / m as f64).max(1.0);
    let target = (wp as f64 + 16.0) * std::f64::consts::LN_2;
    let log_peak = if k == 0 {
        0.0
    } else {
        let tp = (k as f64 / re).powf(1.0 / m as f64);
        k as f64 * tp.ln() - re * tp.powi(m as i32) / m as f64
    };
    while re * radius.powi(m as i32) / m as f64 - k as f64 * radius.ln() + log_peak < target {
        radius *= 1.25;
    }
    let c = c.with_prec(wp);
    let zero = Float::new(wp);
    let r = Float::with_val(wp, radius);
    let v = tanh_sinh(
        |t| {
            let tm = Float::with_val(wp, Pow::pow(t, m)) / m;
            let expo = -c.scale(&tm);
            let mut z = expo.exp();
            if k > 0 {
                z = z.scale(&Float::with_val(wp, Pow::pow(t, k as u32)));
            }
            z
        },
        &zero,
        &r,
        wp,
    )?;
    Ok(v.with_prec(prec))
}

/// `γ_k = ∫_C φ^k e^{−S(φ)} dφ` along the two rays of `contour`, by
/// quadrature in the ray parameter.
pub fn contour_moment(spec: &TheorySpec, contour: &Contour, k: usize, prec: u32) -> Result<BigComplex> {
    let mut total = BigComplex::zero(prec);
    for (theta, sign) in [(contour.outgoing, 1.0), (contour.incoming, -1.0)] {
        let ang = theta.radians(prec + 32);
        let c = ray_coefficient(spec, &ang, prec + 32);
        if c.re <= 0 {
            return Err(Error::OutsideSector {
                angle: theta.degrees(),
            });
        }
        let radial = radial_quadrature(&c, spec.exponent, k, prec)?;
        let phase = BigComplex::cis(&Float::with_val(prec, &ang * (k as u32 + 1)));
        total += &(&phase * &radial).scale_f64(sign);
    }
    Ok(total)
}

/// Every contour joining two distinct sectors, `C(m, 2)` of them, with rays
/// on the sector centres (ordered by sector index).
pub fn contour_pairs(spec: &TheorySpec) -> Vec<Contour> {
    let centres = spec.sector_centres();
    let mut out = Vec::new();
    for i in 0..centres.len() {
        for j in i + 1..centres.len() {
            out.push(Contour::new(centres[i], centres[j]));
        }
    }
    out
}

