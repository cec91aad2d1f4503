//! All-roots solver for the truncation polynomials and the policies that
//! pick the physical root out of a constellation.

mod aberth;
mod clusters;
mod select;
mod sweep;

pub use clusters::{clusters, Cluster};
pub use select::{select_physical, select_stable, RootSelector, SelectionPolicy, Selected};
pub use sweep::{truncation_sweep, write_sweep_csv, SweepRow};

use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_arith::{horner, BigComplex, ToComplex, XPoly};

/// Roots of one polynomial with per-root relative residuals
/// `|p(z)| / Σ|a_k||z|^k`.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub poly_id: String,
    pub roots: Vec<BigComplex>,
    pub residuals: Vec<Float>,
    pub precision_bits: u32,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Largest residual, as log10 (−inf when all are exact).
    pub fn max_residual_log10(&self) -> f64 {
        self.residuals
            .iter()
            .map(log10)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// The certified bound `2^{−precision/2}` compared against relative residuals.
    pub fn certified_bound_log10(&self) -> f64 {
        -(self.precision_bits as f64) / 2.0 * std::f64::consts::LOG10_2
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.poly_id = id.into();
        self
    }

    /// Multiply every root by `k` (e.g. to map a scaled variable back).
    pub fn scaled(&self, k: &BigComplex) -> RootSet {
        RootSet {
            poly_id: self.poly_id.clone(),
            roots: self.roots.iter().map(|z| z * k).collect(),
            residuals: self.residuals.clone(),
            precision_bits: self.precision_bits,
        }
    }
}

pub(crate) fn log10(x: &Float) -> f64 {
    if x.is_zero() {
        f64::NEG_INFINITY
    } else {
        Float::with_val(x.prec(), x.log10_ref()).to_f64()
    }
}

/// Relative residual `|p(z)| / Σ|a_k||z|^k`.
pub fn relative_residual(coeffs: &[BigComplex], z: &BigComplex) -> Float {
    let prec = z.prec();
    let v = horner(coeffs, z).abs();
    let abs: Vec<BigComplex> = coeffs.iter().map(|c| BigComplex::from_real(c.abs())).collect();
    let scale = horner(&abs, &BigComplex::from_real(z.abs())).abs();
    if scale.is_zero() {
        return Float::new(prec);
    }
    Float::with_val(prec, v / scale)
}

/// All roots of an exact polynomial.
pub fn all_roots(p: &XPoly, precision_bits: u32) -> Result<RootSet> {
    all_roots_numeric(&p.to_complex(precision_bits), precision_bits)
}

/// All roots of a polynomial with floating-point coefficients (ascending).
pub fn all_roots_numeric(coeffs: &[BigComplex], precision_bits: u32) -> Result<RootSet> {
    let mut cs: Vec<BigComplex> = coeffs.iter().map(|c| c.with_prec(precision_bits)).collect();
    while cs.last().is_some_and(BigComplex::is_zero) {
        cs.pop();
    }
    if cs.len() < 2 {
        return Err(Error::InvalidArgument("polynomial must have degree at least 1".into()));
    }
    let zeros = cs.iter().take_while(|c| c.is_zero()).count();
    let reduced: Vec<BigComplex> = cs[zeros..].to_vec();
    let grading = grading_of(&reduced);
    let mut roots: Vec<BigComplex> = vec![BigComplex::zero(precision_bits); zeros];
    let mut used_prec = precision_bits;
    if reduced.len() > 1 {
        let deflated: Vec<BigComplex> = reduced.iter().step_by(grading).cloned().collect();
        let raw = aberth::aberth_roots(&deflated, precision_bits)?;
        used_prec = raw.prec;
        for w in raw.roots {
            if grading == 1 {
                roots.push(w);
            } else {
                roots.extend(w.nth_roots(grading as u32));
            }
        }
    }
    // Polish against the undeflated polynomial and certify.
    let work: Vec<BigComplex> = cs.iter().map(|c| c.with_prec(used_prec)).collect();
    let deriv: Vec<BigComplex> = work
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale_f64(k as f64))
        .collect();
    let bound_log2 = -(precision_bits as f64) / 2.0;
    let mut residuals = Vec::with_capacity(roots.len());
    for z in roots.iter_mut() {
        if z.is_zero() {
            residuals.push(Float::new(used_prec));
            continue;
        }
        *z = z.with_prec(used_prec);
        let mut r = relative_residual(&work, z);
        let mut tries = 0;
        while log2(&r) > bound_log2 && tries < 8 {
            let d = horner(&deriv, z);
            if d.is_zero() {
                break;
            }
            let step = &horner(&work, z) / &d;
            *z = &*z - &step;
            r = relative_residual(&work, z);
            tries += 1;
        }
        if log2(&r) > bound_log2 {
            return Err(Error::NonConvergence(format!(
                "root {z:.12} has relative residual 2^{:.1}, above 2^{bound_log2}",
                log2(&r)
            )));
        }
        residuals.push(r);
    }
    let mut paired: Vec<(BigComplex, Float)> = roots.into_iter().zip(residuals).collect();
    let mut just_roots: Vec<BigComplex> = paired.iter().map(|(z, _)| z.clone()).collect();
    aberth::order_roots(&mut just_roots);
    let mut residuals_sorted = Vec::with_capacity(just_roots.len());
    for z in &just_roots {
        let pos = paired.iter().position(|(w, _)| w == z).expect("same roots");
        residuals_sorted.push(paired.swap_remove(pos).1);
    }
    Ok(RootSet {
        poly_id: String::new(),
        roots: just_roots,
        residuals: residuals_sorted,
        precision_bits: used_prec,
    })
}

fn log2(x: &Float) -> f64 {
    if x.is_zero() {
        f64::NEG_INFINITY
    } else {
        Float::with_val(x.prec(), x.log2_ref()).to_f64()
    }
}

fn grading_of(cs: &[BigComplex]) -> usize {
    let mut g = 0usize;
    for (k, c) in cs.iter().enumerate() {
        if !c.is_zero() {
            g = gcd(g, k);
        }
    }
    g.max(1)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Evaluate an exact polynomial's floating-point image.
pub fn eval_poly<C: ToComplex>(coeffs: &[C], z: &BigComplex) -> BigComplex {
    let cs: Vec<BigComplex> = coeffs.iter().map(|c| c.to_complex(z.prec())).collect();
    horner(&cs, z)
}

#[derive(Serialize)]
pub struct RootRecord {
    pub re: String,
    pub im: String,
    pub residual_log10: f64,
}

impl RootSet {
    /// Records with `digits` significant digits.
    pub fn records(&self, digits: usize) -> Vec<RootRecord> {
        self.roots
            .iter()
            .zip(&self.residuals)
            .map(|(z, r)| RootRecord {
                re: crate::exact_arith::fmt_float(&z.re, digits),
                im: crate::exact_arith::fmt_float(&z.im, digits),
                residual_log10: log10(r),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{GaussRational, Ring, UniPoly};

    fn xpoly(cs: &[(i64, i64)]) -> XPoly {
        UniPoly::new(cs.iter().map(|&(p, q)| GaussRational::from_ratio(p, q)).collect())
    }

    #[test]
    fn quadratic_roots() {
        let rs = all_roots(&xpoly(&[(-1, 3), (0, 1), (1, 1)]), 256).unwrap();
        assert_eq!(rs.len(), 2);
        let pos = rs.roots.iter().find(|z| z.re_f64() > 0.0).unwrap();
        assert!((pos.re_f64() - 0.5773502691896258).abs() < 1e-15);
    }

    #[test]
    fn cube_roots_of_unity() {
        let rs = all_roots(&xpoly(&[(-1, 1), (0, 1), (0, 1), (1, 1)]), 128).unwrap();
        for z in &rs.roots {
            assert!((z.abs_f64() - 1.0).abs() < 1e-30);
            assert!(z.powi(3).dist(&BigComplex::one(128)).to_f64() < 1e-30);
        }
        // ordered by argument
        let args: Vec<f64> = rs.roots.iter().map(|z| z.arg().to_f64()).collect();
        assert!(args.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn zero_roots_and_complex_coefficients() {
        // x^2 (x - i)(x + 2)
        let i = GaussRational::i();
        let p = UniPoly::new(vec![
            GaussRational::zero(),
            GaussRational::zero(),
            i.scale(&rug::Rational::from(-2)),
            GaussRational::new(2, -1),
            GaussRational::one(),
        ]);
        let rs = all_roots(&p, 128).unwrap();
        assert_eq!(rs.roots.iter().filter(|z| z.is_zero()).count(), 2);
        assert!(rs.roots.iter().any(|z| z.dist(&BigComplex::i(128)).to_f64() < 1e-30));
    }

    #[test]
    fn high_degree_wilkinson_like() {
        // Π_{k=1}^{20} (x − k)
        let mut p = xpoly(&[(1, 1)]);
        for k in 1..=20 {
            p = p.mul(&xpoly(&[(-k, 1), (1, 1)]));
        }
        let rs = all_roots(&p, 256).unwrap();
        for z in &rs.roots {
            let k = z.re_f64().round();
            assert!((z.re_f64() - k).abs() < 1e-20 && z.im_f64().abs() < 1e-20);
        }
    }
}
