use std::collections::BTreeMap;

use rug::Float;

use crate::error::{Error, Result};
use crate::exact_arith::BigComplex;

/// `n!` as a float.
fn factorial(n: usize, prec: u32) -> Float {
    Float::with_val(prec, Float::factorial(n as u32))
}

/// Formal logarithm of `Σ c_n x^n` with `c_0 = 1`, from `(log f)' = f'/f`.
pub(crate) fn series_log(c: &[BigComplex], prec: u32) -> Vec<BigComplex> {
    let mut l = vec![BigComplex::zero(prec); c.len()];
    for n in 1..c.len() {
        let mut acc = BigComplex::zero(prec);
        for k in 1..n {
            acc += &(&l[k] * &c[n - k]).scale_f64(k as f64);
        }
        l[n] = &c[n] - &acc.scale(&(Float::with_val(prec, 1) / n as u32));
    }
    l
}

/// Formal exponential of `Σ l_n x^n` with `l_0 = 0`.
pub(crate) fn series_exp(l: &[BigComplex], prec: u32) -> Vec<BigComplex> {
    let mut e = vec![BigComplex::zero(prec); l.len()];
    if e.is_empty() {
        return e;
    }
    e[0] = BigComplex::one(prec);
    for n in 1..l.len() {
        let mut acc = BigComplex::zero(prec);
        for k in 1..=n {
            acc += &(&l[k] * &e[n - k]).scale_f64(k as f64);
        }
        e[n] = acc.scale(&(Float::with_val(prec, 1) / n as u32));
    }
    e
}

/// `G_n = n!·[x^n] log(Σ γ_k/γ_0 · x^k/k!)` for `n = 1..=order`.
pub fn cumulants_from_moments(moments: &[BigComplex], order: usize) -> Result<BTreeMap<usize, BigComplex>> {
    if moments.len() <= order {
        return Err(Error::SequenceTooShort {
            needed: order + 1,
            have: moments.len(),
        });
    }
    if moments[0].is_zero() {
        return Err(Error::InvalidArgument("zeroth moment vanishes".into()));
    }
    let prec = moments[0].prec();
    let inv0 = moments[0].recip();
    let c: Vec<BigComplex> = (0..=order)
        .map(|k| (&moments[k] * &inv0).scale(&(Float::with_val(prec, 1) / factorial(k, prec))))
        .collect();
    let l = series_log(&c, prec);
    Ok((1..=order).map(|n| (n, l[n].scale(&factorial(n, prec)))).collect())
}

/// Normalised moments `γ_k/γ_0`, `k = 0..=order`, from cumulants `G_1..`.
pub fn moments_from_cumulants(cumulants: &BTreeMap<usize, BigComplex>, order: usize, prec: u32) -> Vec<BigComplex> {
    let mut l = vec![BigComplex::zero(prec); order + 1];
    for (n, g) in cumulants.range(1..=order) {
        l[*n] = g.scale(&(Float::with_val(prec, 1) / factorial(*n, prec)));
    }
    series_exp(&l, prec)
        .into_iter()
        .enumerate()
        .map(|(k, e)| e.scale(&factorial(k, prec)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_moment_has_no_cumulants() {
        let mut m = vec![BigComplex::zero(128); 6];
        m[0] = BigComplex::from_f64(128, 2.0, 0.0);
        let g = cumulants_from_moments(&m, 5).unwrap();
        assert!(g.values().all(BigComplex::is_zero));
    }

    #[test]
    fn gaussian_moments() {
        // Unit Gaussian: γ = 1, 0, 1, 0, 3, 0, 15 → G_2 = 1, rest 0
        let m: Vec<BigComplex> = [1.0, 0.0, 1.0, 0.0, 3.0, 0.0, 15.0]
            .iter()
            .map(|&v| BigComplex::from_f64(128, v, 0.0))
            .collect();
        let g = cumulants_from_moments(&m, 6).unwrap();
        assert!((g[&2].re_f64() - 1.0).abs() < 1e-30);
        assert!(g[&4].abs_f64() < 1e-30 && g[&6].abs_f64() < 1e-30);
    }

    #[test]
    fn too_few_moments() {
        let m = vec![BigComplex::one(64); 3];
        assert!(cumulants_from_moments(&m, 4).is_err());
    }
}
