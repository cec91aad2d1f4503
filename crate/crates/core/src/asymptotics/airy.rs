use rug::ops::Pow;
use rug::Float;

/// `Ai(0)` and `Bi(0)`.
pub fn airy_origin(prec: u32) -> (Float, Float) {
    let three = Float::with_val(prec, 3);
    let g23 = Float::with_val(prec, Float::with_val(prec, 2) / 3u32).gamma();
    let ai0 = Float::with_val(prec, 1) / (Float::with_val(prec, Pow::pow(&three, &Float::with_val(prec, Float::with_val(prec, 2) / 3u32))) * &g23);
    let bi0 = Float::with_val(prec, 1) / (Float::with_val(prec, Pow::pow(&three, &Float::with_val(prec, Float::with_val(prec, 1) / 6u32))) * &g23);
    (ai0, bi0)
}

/// `Ai'(0)`.
fn airy_prime_origin(prec: u32) -> Float {
    let three = Float::with_val(prec, 3);
    let g13 = Float::with_val(prec, Float::with_val(prec, 1) / 3u32).gamma();
    -(Float::with_val(prec, 1) / (Float::with_val(prec, Pow::pow(&three, &Float::with_val(prec, Float::with_val(prec, 1) / 3u32))) * g13))
}

/// `(Ai(z), Ai'(z))` for real `z` from the Maclaurin series of `y'' = z·y`.
/// Intended for moderate `|z|`; the working precision is raised to absorb
/// cancellation.
pub fn airy_ai(z: &Float, prec: u32) -> (Float, Float) {
    let mag = z.to_f64().abs();
    let guard = (2.0 * mag.powf(1.5) / 3.0 * std::f64::consts::LOG2_E) as u32 + 32;
    let wp = prec + guard;
    let z = Float::with_val(wp, z);
    // a[n] multiplies z^n: a_{n+3} = a_n / ((n+3)(n+2))
    let mut a = [
        Float::with_val(wp, airy_origin(wp).0),
        airy_prime_origin(wp),
        Float::new(wp),
    ];
    let mut value = Float::new(wp);
    let mut deriv = Float::new(wp);
    let mut zpow = Float::with_val(wp, 1);
    let eps = Float::with_val(wp, Float::i_exp(1, -(wp as i32)));
    let mut n: u32 = 0;
    let mut small = 0;
    loop {
        let k = (n % 3) as usize;
        let term = Float::with_val(wp, &a[k] * &zpow);
        value += &term;
        if n >= 1 {
            // d/dz a_n z^n = n a_n z^{n-1}
            let zm1 = if z.is_zero() {
                Float::with_val(wp, u32::from(n == 1))
            } else {
                Float::with_val(wp, &zpow / &z)
            };
            deriv += Float::with_val(wp, &a[k] * n) * zm1;
        }
        if Float::with_val(wp, term.abs_ref()) < eps && !a[k].is_zero() {
            small += 1;
            if small > 3 {
                break;
            }
        } else if !a[k].is_zero() {
            small = 0;
        }
        a[k] /= Float::with_val(wp, (n + 3) * (n + 2));
        zpow *= &z;
        n += 1;
        if n > 100_000 {
            break;
        }
    }
    (Float::with_val(prec, value), Float::with_val(prec, deriv))
}

/// The `k`-th zero of `Ai(−x)` (k ≥ 1), positive.
/// The large-argument expansion `T(t) = t^{2/3}(1 + 5/48·t^{−2} − …)` with
/// `t = 3π(4k−1)/8` supplies the starting point; Newton with the series
/// refines it.
pub fn airy_zero(k: u32, prec: u32) -> Float {
    let t = 3.0 * std::f64::consts::PI * (4.0 * k as f64 - 1.0) / 8.0;
    let guess = t.powf(2.0 / 3.0) * (1.0 + 5.0 / 48.0 / (t * t) - 5.0 / 36.0 / t.powi(4));
    let mut x = Float::with_val(prec, guess);
    let tol = Float::with_val(prec, Float::i_exp(1, 8 - prec as i32));
    for _ in 0..200 {
        let (ai, aip) = airy_ai(&Float::with_val(prec, -&x), prec);
        // d/dx Ai(−x) = −Ai'(−x)
        let step = Float::with_val(prec, &ai / &aip);
        x += &step;
        if Float::with_val(prec, step.abs_ref()) < tol {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_ratio_is_inverse_sqrt_three() {
        let (ai, bi) = airy_origin(128);
        let ratio = Float::with_val(128, &ai / &bi);
        assert!((ratio.to_f64() - 3f64.powf(-0.5)).abs() < 1e-15);
        assert!((ai.to_f64() - 0.355_028_053_887_817_2).abs() < 1e-15);
    }

    #[test]
    fn first_zero() {
        let z = airy_zero(1, 128);
        assert!((z.to_f64() - 2.338_107_410_459_767).abs() < 1e-14);
        let z2 = airy_zero(2, 128);
        assert!((z2.to_f64() - 4.087_949_444_130_97).abs() < 1e-13);
    }

    #[test]
    fn wronskian_style_value() {
        // Ai(1) and Ai'(1) reference values
        let (v, d) = airy_ai(&Float::with_val(128, 1), 128);
        assert!((v.to_f64() - 0.135_292_416_312_881_4).abs() < 1e-15);
        assert!((d.to_f64() + 0.159_147_441_296_793_2).abs() < 1e-15);
    }
}
