//! Simultaneous Aberth–Ehrlich iteration in MPFR arithmetic.
//!
//! Starting points follow Bini's rule: one circle per edge of the upper
//! convex hull of `(k, log|a_k|)`. Each root stops moving once `|p(z)|`
//! falls below the running rounding-error bound of Horner's rule.
//! Stagnation triggers a restart at doubled precision.

use std::cmp::Ordering;

use rug::float::Constant;
use rug::{Assign, Float};

use crate::error::{Error, Result};
use crate::exact_arith::BigComplex;

/// Iteration budget per precision level.
const MAX_SWEEPS: usize = 600;
/// Number of precision doublings before giving up.
const MAX_RESTARTS: u32 = 3;

/// Horner scratch space, reused across evaluations to avoid allocation.
struct Horner {
    pr: Float,
    pi: Float,
    dr: Float,
    di: Float,
    t1: Float,
    t2: Float,
    abs_acc: Float,
    zabs: Float,
}

impl Horner {
    fn new(prec: u32) -> Self {
        let f = || Float::new(prec);
        Horner {
            pr: f(),
            pi: f(),
            dr: f(),
            di: f(),
            t1: f(),
            t2: f(),
            abs_acc: f(),
            zabs: f(),
        }
    }

    /// Evaluates `p(z)`, `p'(z)` and `Σ|a_k||z|^k`.
    fn eval(&mut self, re: &[Float], im: &[Float], abs: &[Float], zr: &Float, zi: &Float) {
        let n = re.len();
        self.pr.assign(&re[n - 1]);
        self.pi.assign(&im[n - 1]);
        self.dr.assign(0);
        self.di.assign(0);
        self.abs_acc.assign(&abs[n - 1]);
        self.zabs.assign(zr.hypot_ref(zi));
        for k in (0..n - 1).rev() {
            // d = d·z + p
            self.t1.assign(&self.dr * zr);
            self.t2.assign(&self.di * zi);
            self.t1 -= &self.t2;
            self.t2.assign(&self.dr * zi);
            self.di *= zr;
            self.di += &self.t2;
            self.dr.assign(&self.t1);
            self.dr += &self.pr;
            self.di += &self.pi;
            // p = p·z + a_k
            self.t1.assign(&self.pr * zr);
            self.t2.assign(&self.pi * zi);
            self.t1 -= &self.t2;
            self.t2.assign(&self.pr * zi);
            self.pi *= zr;
            self.pi += &self.t2;
            self.pr.assign(&self.t1);
            self.pr += &re[k];
            self.pi += &im[k];
            self.abs_acc *= &self.zabs;
            self.abs_acc += &abs[k];
        }
    }
}

/// Outcome of a root computation before certification.
pub(crate) struct RawRoots {
    pub roots: Vec<BigComplex>,
    pub prec: u32,
}

/// All roots of `Σ a_k x^k` (`a_n ≠ 0`, `a_0 ≠ 0`, degree ≥ 1).
pub(crate) fn aberth_roots(coeffs: &[BigComplex], prec: u32) -> Result<RawRoots> {
    let degree = coeffs.len() - 1;
    assert!(degree >= 1);
    if degree == 1 {
        let r = -(&coeffs[0] / &coeffs[1]);
        return Ok(RawRoots {
            roots: vec![r.with_prec(prec)],
            prec,
        });
    }
    let mut p = prec;
    let mut start = initial_points(coeffs, p);
    for _ in 0..=MAX_RESTARTS {
        match iterate(coeffs, start, p) {
            Ok(roots) => return Ok(RawRoots { roots, prec: p }),
            Err(partial) => {
                p *= 2;
                start = partial.into_iter().map(|z| z.with_prec(p)).collect();
            }
        }
    }
    Err(Error::NonConvergence(format!(
        "Aberth iteration for degree {degree} stalled up to {p} bits"
    )))
}

fn iterate(coeffs: &[BigComplex], mut z: Vec<BigComplex>, prec: u32) -> std::result::Result<Vec<BigComplex>, Vec<BigComplex>> {
    let n = z.len();
    let re: Vec<Float> = coeffs.iter().map(|c| Float::with_val(prec, &c.re)).collect();
    let im: Vec<Float> = coeffs.iter().map(|c| Float::with_val(prec, &c.im)).collect();
    let abs: Vec<Float> = coeffs.iter().map(|c| c.with_prec(prec).abs()).collect();
    // Horner error bound factor: (2n+1)·2^{1−prec}.
    let eps = Float::with_val(prec, Float::i_exp(1, 1 - prec as i32)) * (2 * n as u32 + 1) * 4u32;
    let mut h = Horner::new(prec);
    let mut done = vec![false; n];
    let mut sr = Float::new(prec);
    let mut si = Float::new(prec);
    let mut dre = Float::new(prec);
    let mut dim = Float::new(prec);
    let mut den = Float::new(prec);
    let mut tmp = Float::new(prec);
    for _sweep in 0..MAX_SWEEPS {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            h.eval(&re, &im, &abs, &z[i].re, &z[i].im);
            // Stop if |p| is at the rounding-noise level.
            tmp.assign(h.pr.hypot_ref(&h.pi));
            let bound = Float::with_val(prec, &h.abs_acc * &eps);
            if tmp <= bound {
                done[i] = true;
                continue;
            }
            all_done = false;
            // N = p / p'
            den.assign(h.dr.square_ref());
            tmp.assign(h.di.square_ref());
            den += &tmp;
            if den.is_zero() {
                // Nudge off a critical point.
                z[i].re += Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 4));
                continue;
            }
            let nr = Float::with_val(prec, &h.pr * &h.dr) + Float::with_val(prec, &h.pi * &h.di);
            let ni = Float::with_val(prec, &h.pi * &h.dr) - Float::with_val(prec, &h.pr * &h.di);
            let nr = nr / &den;
            let ni = ni / &den;
            // S = Σ_{j≠i} 1/(z_i − z_j)
            sr.assign(0);
            si.assign(0);
            for j in 0..n {
                if j == i {
                    continue;
                }
                dre.assign(&z[i].re - &z[j].re);
                dim.assign(&z[i].im - &z[j].im);
                den.assign(dre.square_ref());
                tmp.assign(dim.square_ref());
                den += &tmp;
                if den.is_zero() {
                    continue;
                }
                dre /= &den;
                dim /= &den;
                sr += &dre;
                si -= &dim;
            }
            // w = N / (1 − N·S)
            let qr = Float::with_val(prec, 1) - (Float::with_val(prec, &nr * &sr) - Float::with_val(prec, &ni * &si));
            let qi = -(Float::with_val(prec, &nr * &si) + Float::with_val(prec, &ni * &sr));
            let qd = Float::with_val(prec, qr.square_ref()) + Float::with_val(prec, qi.square_ref());
            let (wr, wi) = if qd.is_zero() {
                (nr, ni)
            } else {
                let wr = (Float::with_val(prec, &nr * &qr) + Float::with_val(prec, &ni * &qi)) / &qd;
                let wi = (Float::with_val(prec, &ni * &qr) - Float::with_val(prec, &nr * &qi)) / &qd;
                (wr, wi)
            };
            z[i].re -= &wr;
            z[i].im -= &wi;
            if !z[i].is_finite() {
                return Err(initial_points(coeffs, prec));
            }
        }
        if all_done {
            return Ok(z);
        }
    }
    Err(z)
}

/// Bini's starting points from the Newton polygon of the moduli.
pub(crate) fn initial_points(coeffs: &[BigComplex], prec: u32) -> Vec<BigComplex> {
    let n = coeffs.len() - 1;
    let logs: Vec<f64> = coeffs
        .iter()
        .map(|c| {
            let a = c.abs();
            if a.is_zero() {
                f64::NEG_INFINITY
            } else {
                a.ln().to_f64()
            }
        })
        .collect();
    let hull = upper_hull(&logs);
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let mut out = Vec::with_capacity(n);
    let sigma = 0.7f64;
    for w in hull.windows(2) {
        let (i, j) = (w[0], w[1]);
        let count = j - i;
        let log_r = (logs[i] - logs[j]) / count as f64;
        let r = Float::with_val(prec, log_r).exp();
        for k in 0..count {
            let frac = (k as f64 + sigma * (i as f64 + 1.0) / (n as f64 + 1.0)) / count as f64;
            let theta = Float::with_val(prec, &two_pi * frac) + sigma / (count as f64);
            out.push(BigComplex::cis(&theta).scale(&r));
        }
    }
    out
}

fn upper_hull(y: &[f64]) -> Vec<usize> {
    let pts: Vec<usize> = (0..y.len()).filter(|&i| y[i].is_finite()).collect();
    let mut hull: Vec<usize> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // Remove b if it lies on or below the segment a–p.
            let cross = (b as f64 - a as f64) * (y[p] - y[a]) - (y[b] - y[a]) * (p as f64 - a as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Sort key: argument quantized to 1e-12 rad, then modulus.
pub(crate) fn order_roots(roots: &mut [BigComplex]) {
    let key = |z: &BigComplex| {
        let a = z.arg().to_f64();
        let q = (a * 1e12).round();
        (q, z.abs_f64())
    };
    roots.sort_by(|a, b| {
        let (qa, ma) = key(a);
        let (qb, mb) = key(b);
        qa.partial_cmp(&qb)
            .unwrap_or(Ordering::Equal)
            .then(ma.partial_cmp(&mb).unwrap_or(Ordering::Equal))
    });
}
