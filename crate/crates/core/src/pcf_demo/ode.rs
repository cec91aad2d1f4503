use rug::float::Constant;
use rug::Float;

use super::initial_values;
use crate::error::{Error, Result};
use crate::exact_arith::BigComplex;

/// Taylor coefficients of `f(x0 + t)` for `f'' = (x²/4 − 4) f`, given `f(x0)`, `f'(x0)`.
fn local_series(x0: &BigComplex, f0: &BigComplex, d0: &BigComplex, terms: usize) -> Vec<BigComplex> {
    let prec = x0.prec();
    // (x0 + t)²/4 − 4 = q0 + q1 t + t²/4
    let q0 = &(x0 * x0).scale_f64(0.25) - &BigComplex::from_f64(prec, 4.0, 0.0);
    let q1 = x0.scale_f64(0.5);
    let mut c = vec![f0.clone(), d0.clone()];
    for k in 0..terms.saturating_sub(2) {
        let mut rhs = &q0 * &c[k];
        if k >= 1 {
            rhs += &(&q1 * &c[k - 1]);
        }
        if k >= 2 {
            rhs += &c[k - 2].scale_f64(0.25);
        }
        let den = Float::with_val(prec, ((k + 2) * (k + 1)) as u32);
        c.push(rhs.scale(&(Float::with_val(prec, 1) / den)));
    }
    c
}

fn eval_series(c: &[BigComplex], t: &BigComplex) -> (BigComplex, BigComplex) {
    let prec = t.prec();
    let mut v = BigComplex::zero(prec);
    let mut d = BigComplex::zero(prec);
    for (k, ck) in c.iter().enumerate().rev() {
        v = &(&v * t) + ck;
        if k >= 1 {
            d = &(&d * t) + &ck.scale_f64(k as f64);
        }
    }
    (v, d)
}

/// `D_{3.5}` and its derivative at complex `z`, from the Maclaurin series.
pub fn pcf_value(z: &BigComplex, prec: u32) -> (BigComplex, BigComplex) {
    let (f0, d0) = initial_values(prec + 64);
    let zero = BigComplex::zero(prec + 64);
    let terms = 60 + (3.0 * z.abs_f64() * z.abs_f64()) as usize;
    let c = local_series(&zero, &BigComplex::from_real(f0), &BigComplex::from_real(d0), terms);
    let (v, d) = eval_series(&c, &z.with_prec(prec + 64));
    (v.with_prec(prec), d.with_prec(prec))
}

/// Step the ODE along the real axis from 0 to `end` with local Taylor
/// series; returns the nodes with `(f, f')` and the series about each.
fn integrate(end: f64, h: f64, prec: u32) -> Vec<(f64, Vec<BigComplex>)> {
    let (f0, d0) = initial_values(prec);
    let mut x = 0.0f64;
    let mut f = BigComplex::from_real(f0);
    let mut d = BigComplex::from_real(d0);
    let steps = (end.abs() / h).ceil() as usize;
    let dir = end.signum();
    let hstep = BigComplex::from_f64(prec, dir * h, 0.0);
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let c = local_series(&BigComplex::from_f64(prec, x, 0.0), &f, &d, 48);
        let (nf, nd) = eval_series(&c, &hstep);
        out.push((x, c));
        f = nf;
        d = nd;
        x += dir * h;
    }
    out
}

/// The real zeros of `D_{3.5}` in `[−lim, lim]`: sign changes on the
/// integration grid, refined by Newton on the local series.
pub fn pcf_exact_zeros(lim: f64, prec: u32) -> Result<Vec<Float>> {
    let h = 0.125;
    let mut zeros = Vec::new();
    for end in [-lim, lim] {
        let nodes = integrate(end, h, prec);
        let dir = end.signum();
        for (x, c) in &nodes {
            let a = eval_series(c, &BigComplex::zero(prec)).0;
            let b = eval_series(c, &BigComplex::from_f64(prec, dir * h, 0.0)).0;
            if a.re.is_sign_negative() == b.re.is_sign_negative() {
                continue;
            }
            let mut t = BigComplex::from_f64(prec, dir * h / 2.0, 0.0);
            for _ in 0..100 {
                let (v, dv) = eval_series(c, &t);
                let step = &v / &dv;
                t = &t - &step;
                if step.abs_f64() < 2f64.powi(-(prec as i32) + 8) {
                    break;
                }
            }
            if t.abs_f64() > h * 1.01 {
                return Err(Error::NonConvergence(format!("zero refinement left the step at x = {x}")));
            }
            zeros.push(Float::with_val(prec, &t.re + *x));
        }
    }
    zeros.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    Ok(zeros)
}

/// Closed curve for the argument-principle count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CountContour {
    Circle { radius: f64 },
    /// Axis-aligned square centred at the origin.
    Square { half_width: f64 },
}

impl CountContour {
    fn extent(self) -> f64 {
        match self {
            CountContour::Circle { radius } => radius,
            CountContour::Square { half_width } => half_width * std::f64::consts::SQRT_2,
        }
    }

    /// Point at parameter `s ∈ [0, 1)`.
    fn point(self, s: &Float, prec: u32) -> BigComplex {
        match self {
            CountContour::Circle { radius } => {
                let th = Float::with_val(prec, Constant::Pi) * 2u32 * s;
                BigComplex::cis(&th).scale_f64(radius)
            }
            CountContour::Square { half_width: h } => {
                let u = Float::with_val(prec, s * 4u32);
                let side = u.to_f64().floor().min(3.0) as u32;
                let t = Float::with_val(prec, &u - side) * 2u32 - 1u32;
                let t = Float::with_val(prec, t * h);
                let h = Float::with_val(prec, h);
                let (re, im) = match side {
                    0 => (h.clone(), t),
                    1 => (-t, h.clone()),
                    2 => (-h.clone(), -t),
                    _ => (t, -h),
                };
                BigComplex::from_floats(re, im)
            }
        }
    }
}

/// Zeros of `D_{3.5}` inside the contour by the argument principle: the
/// winding number of `f` along the sampled curve.
pub fn pcf_zero_count(contour: CountContour, prec: u32) -> Result<i64> {
    let ext = contour.extent();
    let samples = 400 + (ext * ext * 40.0) as usize;
    let point = |k: usize| contour.point(&(Float::with_val(prec, k as u32) / samples as u32), prec);
    let mut total = 0.0f64;
    let mut prev = pcf_value(&point(0), prec).0;
    for k in 1..=samples {
        let v = pcf_value(&point(k % samples), prec).0;
        let step = (&v / &prev).arg().to_f64();
        if step.abs() > 1.0 {
            return Err(Error::NonConvergence(format!(
                "argument jumps by {step:.2} rad; refine the sampling"
            )));
        }
        total += step;
        prev = v;
    }
    Ok((total / std::f64::consts::TAU).round() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stepping_matches_series() {
        let nodes = integrate(-3.0, 0.125, 128);
        let (x, c) = nodes.last().unwrap();
        let end = eval_series(c, &BigComplex::from_f64(128, -0.125, 0.0)).0;
        let direct = pcf_value(&BigComplex::from_f64(128, x - 0.125, 0.0), 128).0;
        assert!(end.dist(&direct).to_f64() < 1e-25 * direct.abs_f64());
    }
}
