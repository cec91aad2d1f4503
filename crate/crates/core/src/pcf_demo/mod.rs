//! Polynomial approximations to the zeros of the parabolic cylinder function
//! `D_{3.5}`: truncated Taylor series, truncated asymptotic series, and the
//! exact zeros from the ODE `f'' = (x²/4 − 4) f`.

mod ode;

pub use ode::{pcf_exact_zeros, pcf_value, pcf_zero_count, CountContour};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_arith::BigComplex;
use crate::rootfinder::{all_roots_numeric, RootSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    Taylor,
    Asymptotic,
}

/// Polynomial from a truncated series; coefficients ascending in `x`.
#[derive(Clone, Debug)]
pub struct PcfSeries {
    pub kind: SeriesKind,
    pub coefficients: Vec<BigComplex>,
}

impl PcfSeries {
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }
}

/// `D_{3.5}(0) = √π·2^{7/4}/Γ(−5/4)` and `D'_{3.5}(0) = −√π·2^{9/4}/Γ(−7/4)`.
pub fn initial_values(prec: u32) -> (Float, Float) {
    let sqrt_pi = Float::with_val(prec, Constant::Pi).sqrt();
    let two = Float::with_val(prec, 2);
    let p1 = Float::with_val(prec, Pow::pow(&two, &Float::with_val(prec, 1.75)));
    let p2 = Float::with_val(prec, Pow::pow(&two, &Float::with_val(prec, 2.25)));
    let f0 = Float::with_val(prec, &sqrt_pi * &p1) / Float::with_val(prec, -1.25).gamma();
    let d0 = -(Float::with_val(prec, &sqrt_pi * &p2) / Float::with_val(prec, -1.75).gamma());
    (f0, d0)
}

/// Even and odd Taylor weights: `f(x) = f(0) Σ a_n x^{2n}/(2n)! + f'(0) Σ b_n x^{2n+1}/(2n+1)!`.
fn taylor_weights(count: usize, odd: bool, prec: u32) -> Vec<Float> {
    let mut w: Vec<Float> = Vec::with_capacity(count);
    for n in 0..count {
        let v = match n {
            0 => Float::with_val(prec, 1),
            1 => Float::with_val(prec, -4),
            _ => {
                let k = (n - 1) as u32;
                let m = if odd { 2 * n as u32 - 1 } else { 2 * n as u32 - 3 };
                Float::with_val(prec, &w[n - 1] * -4i32) + Float::with_val(prec, &w[n - 2] * (k * m)) / 2u32
            }
        };
        w.push(v);
    }
    w
}

/// Taylor polynomial of `D_{3.5}` of the given degree.
pub fn taylor_series(degree: usize, prec: u32) -> Result<PcfSeries> {
    if degree < 2 {
        return Err(Error::InvalidArgument("Taylor degree must be at least 2".into()));
    }
    let (f0, d0) = initial_values(prec);
    let even = taylor_weights(degree / 2 + 1, false, prec);
    let odd = taylor_weights(degree.div_ceil(2), true, prec);
    let mut coefficients = Vec::with_capacity(degree + 1);
    let mut fact = Float::with_val(prec, 1);
    for k in 0..=degree {
        if k > 0 {
            fact *= k as u32;
        }
        let w = if k % 2 == 0 { &even[k / 2] } else { &odd[k / 2] };
        let base = if k % 2 == 0 { &f0 } else { &d0 };
        let c = Float::with_val(prec, w * base) / &fact;
        coefficients.push(BigComplex::from_real(c));
    }
    Ok(PcfSeries {
        kind: SeriesKind::Taylor,
        coefficients,
    })
}

/// `c_n/(2^n n!)` with `c_n = (−1)^n Γ(9/2) Γ(2n − 7/2)/π`, i.e. the falling
/// factorial `ν(ν−1)…(ν−2n+1)` of `ν = 7/2` with sign `(−1)^n`, over `2^n n!`.
fn asymptotic_weight(n: usize, prec: u32) -> Float {
    let mut v = Float::with_val(prec, 1);
    let nu = Float::with_val(prec, 3.5);
    for j in 0..2 * n {
        v *= Float::with_val(prec, &nu - j as u32);
    }
    for j in 1..=n {
        v /= 2 * j as u32;
    }
    if n % 2 == 1 {
        -v
    } else {
        v
    }
}

/// The first `terms` terms of the asymptotic series with `e^{−x²/4} x^{7/2}`
/// factored off, multiplied by `x^{2(terms−1)}` to clear negative powers.
pub fn asymptotic_series(terms: usize, prec: u32) -> Result<PcfSeries> {
    if terms < 2 {
        return Err(Error::InvalidArgument("need at least two asymptotic terms".into()));
    }
    let deg = 2 * (terms - 1);
    let mut coefficients = vec![BigComplex::zero(prec); deg + 1];
    for n in 0..terms {
        coefficients[deg - 2 * n] = BigComplex::from_real(asymptotic_weight(n, prec));
    }
    Ok(PcfSeries {
        kind: SeriesKind::Asymptotic,
        coefficients,
    })
}

pub fn pcf_taylor_roots(degree: usize, prec: u32) -> Result<RootSet> {
    let s = taylor_series(degree, prec)?;
    Ok(all_roots_numeric(&s.coefficients, prec)?.with_id(format!("pcf-taylor-{degree}")))
}

/// Roots of the asymptotic polynomial, each flagged by whether it lies in
/// the sector `|arg x| < 3π/4` where the series is valid.
#[derive(Clone, Debug)]
pub struct AsymptoticRoots {
    pub roots: RootSet,
    pub in_sector: Vec<bool>,
}

pub fn pcf_asymptotic_roots(terms: usize, prec: u32) -> Result<AsymptoticRoots> {
    let s = asymptotic_series(terms, prec)?;
    let roots = all_roots_numeric(&s.coefficients, prec)?.with_id(format!("pcf-asymptotic-{terms}"));
    let edge = 0.75 * std::f64::consts::PI;
    let in_sector = roots.roots.iter().map(|z| z.arg().to_f64().abs() < edge).collect();
    Ok(AsymptoticRoots { roots, in_sector })
}

/// Real and positive roots of a root set, ascending.
pub fn positive_real_roots(rs: &RootSet) -> Vec<f64> {
    let tol = 2f64.powf(-(rs.precision_bits as f64) / 4.0);
    let mut v: Vec<f64> = rs
        .roots
        .iter()
        .filter(|z| z.im_f64().abs() <= tol * z.abs_f64().max(1.0) && z.re_f64() > 0.0)
        .map(BigComplex::re_f64)
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Real roots of a root set, ascending.
pub fn real_roots(rs: &RootSet) -> Vec<f64> {
    let tol = 2f64.powf(-(rs.precision_bits as f64) / 4.0);
    let mut v: Vec<f64> = rs
        .roots
        .iter()
        .filter(|z| z.im_f64().abs() <= tol * z.abs_f64().max(1.0))
        .map(BigComplex::re_f64)
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub terms: usize,
    /// Real root nearest `x = 2`, if any.
    pub root: Option<f64>,
    /// Signed relative error `(root − exact)/exact`.
    pub error: Option<f64>,
}

/// For each term count from 2 to `max_terms`, the real root nearest 2 and
/// its error against the exact zero.
pub fn pcf_optimal_scan(max_terms: usize, prec: u32) -> Result<Vec<ScanRow>> {
    if max_terms < 6 {
        return Err(Error::InvalidArgument("scan needs at least six terms".into()));
    }
    let exact = pcf_exact_zeros(4.0, prec)?
        .into_iter()
        .map(|z| z.to_f64())
        .min_by(|a, b| (a - 2.0).abs().total_cmp(&(b - 2.0).abs()))
        .ok_or_else(|| Error::NonConvergence("no exact zero near 2".into()))?;
    (2..=max_terms)
        .map(|terms| {
            let rs = pcf_asymptotic_roots(terms, prec)?.roots;
            let root = positive_real_roots(&rs)
                .into_iter()
                .min_by(|a, b| (a - 2.0).abs().total_cmp(&(b - 2.0).abs()));
            Ok(ScanRow {
                terms,
                root,
                error: root.map(|r| (r - exact) / exact),
            })
        })
        .collect()
}

/// Term count with the smallest absolute error.
pub fn optimal_terms(rows: &[ScanRow]) -> Option<usize> {
    rows.iter()
        .filter_map(|r| r.error.map(|e| (r.terms, e.abs())))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(t, _)| t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_values_signs() {
        let (f0, d0) = initial_values(128);
        assert!((f0.to_f64() - 1.520_350_267_821_900_4).abs() < 1e-15);
        assert!((d0.to_f64() + 3.052_183_664_350_372_5).abs() < 1e-15);
    }

    #[test]
    fn quadratic_taylor() {
        // f(0) + f'(0) x − 2 f(0) x²
        let s = taylor_series(2, 128).unwrap();
        let (f0, _) = initial_values(128);
        assert!((s.coefficients[2].re_f64() + 2.0 * f0.to_f64()).abs() < 1e-14);
    }

    #[test]
    fn asymptotic_polynomial_shape() {
        let s = asymptotic_series(3, 128).unwrap();
        assert_eq!(s.degree(), 4);
        // ν(ν−1)/2 with a minus sign: −35/8
        assert!((s.coefficients[2].re_f64() + 35.0 / 8.0).abs() < 1e-15);
    }
}
