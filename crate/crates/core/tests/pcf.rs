//! PCF zeros against the integral representation of `D_ν`, computed in f64.

use ds_zero::exact_arith::BigComplex;
use ds_zero::pcf_demo::{self, pcf_exact_zeros, pcf_value};

const NU: f64 = 3.5;

/// `D_ν(x) = √(2/π) e^{x²/4} ∫_0^∞ t^ν e^{−t²/2} cos(xt − νπ/2) dt`.
fn pcf_integral(x: f64) -> f64 {
    let (upper, steps) = (14.0, 28_000);
    let h = upper / steps as f64;
    let f = |t: f64| t.powf(NU) * (-t * t / 2.0).exp() * (x * t - NU * std::f64::consts::FRAC_PI_2).cos();
    let mut acc = f(0.0) + f(upper);
    for j in 1..steps {
        let w = if j % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(j as f64 * h);
    }
    (2.0 / std::f64::consts::PI).sqrt() * (x * x / 4.0).exp() * acc * h / 3.0
}

fn bisect(mut a: f64, mut b: f64) -> f64 {
    let fa = pcf_integral(a);
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if (pcf_integral(m) > 0.0) == (fa > 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn integral_zeros(lim: f64) -> Vec<f64> {
    let grid: Vec<f64> = (0..=(2.0 * lim / 0.05) as usize).map(|j| -lim + j as f64 * 0.05).collect();
    grid.windows(2)
        .filter(|w| pcf_integral(w[0]).signum() != pcf_integral(w[1]).signum())
        .map(|w| bisect(w[0], w[1]))
        .collect()
}

#[test]
fn values_agree_with_integral() {
    for x in [-3.0, -1.2, 0.0, 0.7, 2.5] {
        let ours = pcf_value(&BigComplex::from_f64(128, x, 0.0), 128).0;
        let oracle = pcf_integral(x);
        let err = (ours.re_f64() - oracle).abs() / oracle.abs().max(1.0);
        assert!(err < 1e-9, "x = {x}: {} vs {oracle}", ours.re_f64());
    }
}

#[test]
fn exact_zeros_agree_with_integral() {
    let ours: Vec<f64> = pcf_exact_zeros(5.0, 128).unwrap().iter().map(|z| z.to_f64()).collect();
    let oracle = integral_zeros(5.0);
    assert_eq!(ours.len(), oracle.len(), "{ours:?} vs {oracle:?}");
    for (a, b) in ours.iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }
}

#[test]
fn four_real_zeros() {
    assert_eq!(integral_zeros(5.0).len(), 4);
}

#[test]
fn high_degree_taylor_roots_approach_exact_zeros() {
    let exact: Vec<f64> = pcf_exact_zeros(5.0, 256).unwrap().iter().map(|z| z.to_f64()).collect();
    let rs = pcf_demo::pcf_taylor_roots(61, 256).unwrap();
    let real = pcf_demo::real_roots(&rs);
    for z in &exact {
        let near = real.iter().map(|r| (r - z).abs()).fold(f64::INFINITY, f64::min);
        assert!(near < 1e-6, "zero {z}: nearest Taylor root off by {near}");
    }
}

#[test]
fn quadratic_truncation_has_closed_form_roots() {
    // f(0) + f'(0) x − 2 f(0) x², since f''(0) = −4 f(0)
    let (f0, d0) = pcf_demo::initial_values(128);
    let (a, b, c) = (-2.0 * f0.to_f64(), d0.to_f64(), f0.to_f64());
    let disc = (b * b - 4.0 * a * c).sqrt();
    let mut expected = [(-b + disc) / (2.0 * a), (-b - disc) / (2.0 * a)];
    expected.sort_by(f64::total_cmp);
    let rs = pcf_demo::pcf_taylor_roots(2, 128).unwrap();
    let mut real = pcf_demo::real_roots(&rs);
    real.sort_by(f64::total_cmp);
    assert_eq!(real.len(), 2);
    for (x, e) in real.iter().zip(expected) {
        assert!((x - e).abs() < 1e-12, "{real:?} vs {expected:?}");
    }
}
