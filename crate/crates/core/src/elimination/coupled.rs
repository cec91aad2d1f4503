use rug::{Float, Integer, Rational};
use serde::Serialize;

use super::primitive;
use crate::error::{Error, Result};
use crate::exact_arith::modular::certainly_coprime;
use crate::exact_arith::resultant::resultant;
use crate::exact_arith::{BigComplex, GPoly, GaussRational, Ring, UniPoly, XPoly};
use crate::rootfinder::{all_roots, all_roots_numeric};

/// One elimination step: `polys` still contain `var` and every lower unknown.
#[derive(Clone, Debug)]
pub(crate) struct Stage {
    pub var: usize,
    pub polys: Vec<GPoly>,
}

#[derive(Clone, Debug)]
pub(crate) struct Eliminated {
    pub eliminant: XPoly,
    pub stages: Vec<Stage>,
}

/// A candidate solution of the full truncated system.
#[derive(Clone, Debug, Serialize)]
pub struct SystemRoot {
    /// `(G-index, value)` for every base unknown, lowest index first.
    #[serde(serialize_with = "ser_values")]
    pub values: Vec<(usize, BigComplex)>,
    /// Largest relative residual over the closure equations, log10.
    pub residual_log10: f64,
}

fn ser_values<S: serde::Serializer>(v: &[(usize, BigComplex)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (k, z) in v {
        seq.serialize_element(&(
            k,
            crate::exact_arith::fmt_float(&z.re, 30),
            crate::exact_arith::fmt_float(&z.im, 30),
        ))?;
    }
    seq.end()
}

impl SystemRoot {
    pub fn value(&self, index: usize) -> Option<&BigComplex> {
        self.values.iter().find(|(k, _)| *k == index).map(|(_, z)| z)
    }
}

/// Candidate roots of the eliminant, split by back-substitution residual.
#[derive(Clone, Debug, Serialize)]
pub struct RootSplit {
    pub tolerance_log10: f64,
    pub accepted: Vec<SystemRoot>,
    pub spurious: Vec<SystemRoot>,
}

impl RootSplit {
    /// Orders of magnitude between the worst accepted and the best spurious residual.
    pub fn separation_log10(&self) -> Option<f64> {
        let worst = self
            .accepted
            .iter()
            .map(|r| r.residual_log10)
            .fold(f64::NEG_INFINITY, f64::max);
        let best = self
            .spurious
            .iter()
            .map(|r| r.residual_log10)
            .fold(f64::INFINITY, f64::min);
        (!self.accepted.is_empty() && !self.spurious.is_empty()).then(|| best - worst)
    }
}

/// Residual tolerance: 1e−30 at 512 bits, linear in precision.
pub fn tolerance_log10(prec: u32) -> f64 {
    -30.0 * prec as f64 / 512.0
}

/// Eliminate every base unknown except the lowest, highest index first.
pub(crate) fn eliminate(system: &[GPoly], base: &[usize]) -> Result<Eliminated> {
    let mut current: Vec<GPoly> = system.iter().map(primitive).collect();
    let mut stages = Vec::new();
    for &var in base.iter().skip(1).rev() {
        stages.push(Stage {
            var,
            polys: current.clone(),
        });
        let with: Vec<&GPoly> = current.iter().filter(|p| p.contains(var)).collect();
        let without: Vec<GPoly> = current.iter().filter(|p| !p.contains(var)).cloned().collect();
        let Some(pivot) = with.iter().min_by_key(|p| (p.degree_in(var), p.num_terms())).copied() else {
            return Err(Error::DegenerateSystem);
        };
        let mut next = without;
        for p in with.iter().filter(|p| !std::ptr::eq(**p, pivot)) {
            let r = resultant(pivot, p, var)?;
            if r.is_zero() {
                return Err(Error::DegenerateSystem);
            }
            next.push(primitive(&r));
        }
        if next.is_empty() {
            return Err(Error::DegenerateSystem);
        }
        current = next;
    }
    let x = base[0];
    let mut eliminant: Option<XPoly> = None;
    for p in &current {
        let u = p.to_unipoly(x)?;
        eliminant = Some(match eliminant {
            None => u,
            Some(e) => e.gcd(&u),
        });
    }
    let eliminant = eliminant.ok_or(Error::DegenerateSystem)?;
    if eliminant.degree() == 0 {
        return Err(Error::DegenerateSystem);
    }
    Ok(Eliminated { eliminant, stages })
}

/// Divide out the common factor of the eliminant with the leading
/// coefficients of the last stage, where solutions escape to infinity.
pub(crate) fn remove_leading_coefficient_factor(p: &XPoly, elim: &Eliminated) -> (XPoly, Option<XPoly>) {
    let Some(stage) = elim.stages.last() else {
        return (p.clone(), None);
    };
    let mut removed = XPoly::constant(GaussRational::one());
    let mut rest = p.clone();
    for q in &stage.polys {
        let lc = q.coeffs_in(stage.var).pop().unwrap_or_else(GPoly::zero);
        let Some(x) = lc.top_var() else { continue };
        let Ok(u) = lc.to_unipoly(x) else { continue };
        if certainly_coprime(&rest, &u) {
            continue;
        }
        let g = rest.gcd(&u);
        if g.degree() > 0 {
            rest = rest.div_rem(&g).expect("nonzero").0;
            removed = removed.mul(&g);
        }
    }
    if removed.degree() == 0 {
        (rest, None)
    } else {
        (rest, Some(removed))
    }
}

/// Maximal relative residual of `polys` at the point.
fn residual(polys: &[GPoly], vars: &[usize], point: &[BigComplex], prec: u32) -> Result<Float> {
    let mut worst = Float::new(prec);
    for p in polys {
        let v = p.eval(vars, point, prec)?.abs();
        let s = p.eval_abs(vars, point, prec)?.abs();
        let r = if s.is_zero() { v } else { Float::with_val(prec, v / s) };
        if r > worst {
            worst = r;
        }
    }
    Ok(worst)
}

/// Recover the remaining unknowns for one eliminant root.
fn back_substitute(x0: &BigComplex, base: &[usize], elim: &Eliminated, prec: u32) -> Result<Vec<BigComplex>> {
    // known[j] is the value of base[j]
    let mut known = vec![x0.clone()];
    for stage in elim.stages.iter().rev() {
        let vars = &base[..known.len()];
        let with: Vec<&GPoly> = stage.polys.iter().filter(|p| p.contains(stage.var)).collect();
        let pivot = with
            .iter()
            .min_by_key(|p| (p.degree_in(stage.var), p.num_terms()))
            .ok_or(Error::DegenerateSystem)?;
        let coeffs = pivot
            .coeffs_in(stage.var)
            .iter()
            .map(|c| c.eval(vars, &known, prec))
            .collect::<Result<Vec<_>>>()?;
        let cands = match all_roots_numeric(&coeffs, prec) {
            Ok(rs) => rs.roots,
            Err(Error::InvalidArgument(_)) => vec![BigComplex::zero(prec)],
            Err(e) => return Err(e),
        };
        let mut stage_vars = vars.to_vec();
        stage_vars.push(stage.var);
        let polys: Vec<GPoly> = stage.polys.clone();
        let mut best: Option<(Float, BigComplex)> = None;
        for c in cands {
            let mut pt = known.clone();
            pt.push(c.clone());
            let r = residual(&polys, &stage_vars, &pt, prec)?;
            if best.as_ref().is_none_or(|(b, _)| r < *b) {
                best = Some((r, c));
            }
        }
        known.push(best.expect("pivot has roots").1);
    }
    Ok(known)
}

pub(crate) fn classify(poly: &XPoly, system: &[GPoly], base: &[usize], elim: &Eliminated, prec: u32) -> Result<RootSplit> {
    let tol = tolerance_log10(prec);
    let mut split = RootSplit {
        tolerance_log10: tol,
        accepted: Vec::new(),
        spurious: Vec::new(),
    };
    if poly.degree() == 0 {
        return Ok(split);
    }
    let rs = all_roots(poly, prec)?;
    // Order the unknowns as in the stages: base[0], then increasing index.
    let mut order = vec![base[0]];
    order.extend(elim.stages.iter().rev().map(|s| s.var));
    for z in &rs.roots {
        let point = back_substitute(z, &order, elim, prec)?;
        let r = crate::rootfinder::log10(&residual(system, &order, &point, prec)?);
        let mut values: Vec<(usize, BigComplex)> = order.iter().copied().zip(point).collect();
        values.sort_by_key(|(k, _)| *k);
        let root = SystemRoot {
            values,
            residual_log10: r,
        };
        if r < tol {
            split.accepted.push(root);
        } else {
            split.spurious.push(root);
        }
    }
    Ok(split)
}

/// Exact monic factor whose roots are `roots`, if its coefficients are
/// recognisable rationals and it divides `p`.
pub(crate) fn exact_factor(p: &XPoly, roots: &[&BigComplex], prec: u32) -> Option<XPoly> {
    let mut acc = vec![BigComplex::one(prec)];
    for z in roots {
        let mut next = vec![BigComplex::zero(prec); acc.len() + 1];
        for (j, c) in acc.iter().enumerate() {
            next[j + 1] += c;
            let t = c * *z;
            next[j] = &next[j] - &t;
        }
        acc = next;
    }
    let coeffs = acc
        .iter()
        .map(|c| Some(GaussRational::new(recognise(&c.re, prec)?, recognise(&c.im, prec)?)))
        .collect::<Option<Vec<_>>>()?;
    let f = UniPoly::new(coeffs);
    let (_, r) = p.div_rem(&f)?;
    r.is_zero().then_some(f)
}

/// Continued-fraction recognition of a rational with denominator below
/// `2^{prec/3}` that matches `x` to `2^{−3prec/4}` (relative).
fn recognise(x: &Float, prec: u32) -> Option<Rational> {
    if x.is_zero() {
        return Some(Rational::new());
    }
    let exact = x.to_rational()?;
    let tol = Float::with_val(prec, x.abs_ref()) * Float::with_val(prec, Float::i_exp(1, -(3 * prec as i32) / 4));
    let tol = tol.max(&Float::with_val(prec, Float::i_exp(1, -(3 * prec as i32) / 4)));
    let den_cap = Integer::from(1) << (prec / 3);
    let (mut h0, mut h1) = (Integer::from(0), Integer::from(1));
    let (mut k0, mut k1) = (Integer::from(1), Integer::from(0));
    let mut rem = exact.clone();
    for _ in 0..4 * prec {
        let (frac, a) = rem.fract_floor(Integer::new());
        let h2 = Integer::from(&a * &h1) + &h0;
        let k2 = Integer::from(&a * &k1) + &k0;
        if k2 > den_cap {
            return None;
        }
        let cand = Rational::from((h2.clone(), k2.clone()));
        let err = Float::with_val(prec, Rational::from(&cand - &exact)).abs();
        if err <= tol {
            return Some(cand);
        }
        if frac.cmp0().is_eq() {
            return None;
        }
        rem = frac.recip();
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognises_small_rationals() {
        let x = Float::with_val(256, Rational::from((-8, 15)));
        assert_eq!(recognise(&x, 256), Some(Rational::from((-8, 15))));
        let pi = Float::with_val(256, rug::float::Constant::Pi);
        assert_eq!(recognise(&pi, 256), None);
    }

    #[test]
    fn tolerance_scales_with_precision() {
        assert_eq!(tolerance_log10(512), -30.0);
        assert_eq!(tolerance_log10(256), -15.0);
    }
}
