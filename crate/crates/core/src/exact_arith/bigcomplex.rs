use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use super::gauss::{GaussInt, GaussRational};
use super::MIN_PRECISION;

/// Complex number with MPFR real and imaginary parts at a fixed working precision.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: Float,
    pub im: Float,
}

impl BigComplex {
    pub fn zero(prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        BigComplex::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        BigComplex::from_f64(prec, 0.0, 1.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_floats(re: Float, im: Float) -> Self {
        BigComplex { re, im }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        BigComplex { re, im }
    }

    pub fn from_rational(prec: u32, re: &Rational) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex::from_real(Float::with_val(prec, re))
    }

    pub fn from_integer(prec: u32, re: &Integer) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex::from_real(Float::with_val(prec, re))
    }

    pub fn from_gauss(prec: u32, z: &GaussRational) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex {
            re: Float::with_val(prec, &z.re),
            im: Float::with_val(prec, &z.im),
        }
    }

    /// Parses decimal strings for each part, e.g. `("0.675978", "0")`.
    pub fn parse(prec: u32, re: &str, im: &str) -> Option<Self> {
        let prec = prec.max(MIN_PRECISION);
        let re = Float::parse(re).ok()?;
        let im = Float::parse(im).ok()?;
        Some(BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        })
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn re_f64(&self) -> f64 {
        self.re.to_f64()
    }

    pub fn im_f64(&self) -> f64 {
        self.im.to_f64()
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re * k),
            im: Float::with_val(p, &self.im * k),
        }
    }

    pub fn scale_f64(&self, k: f64) -> Self {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re * k),
            im: Float::with_val(p, &self.im * k),
        }
    }

    /// Multiply by `i^k`.
    pub fn mul_i_pow(&self, k: i32) -> Self {
        let p = self.prec();
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => BigComplex {
                re: Float::with_val(p, -&self.im),
                im: self.re.clone(),
            },
            2 => -self,
            _ => BigComplex {
                re: self.im.clone(),
                im: Float::with_val(p, -&self.re),
            },
        }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re / &n),
            im: Float::with_val(p, -Float::with_val(p, &self.im / &n)),
        }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return BigComplex::zero(p);
        }
        let r = self.abs();
        if self.re >= 0 {
            let t = Float::with_val(p, Float::with_val(p, &r + &self.re) / 2u32).sqrt();
            let im = Float::with_val(p, &self.im / Float::with_val(p, &t * 2u32));
            BigComplex { re: t, im }
        } else {
            let t = Float::with_val(p, Float::with_val(p, &r - &self.re) / 2u32).sqrt();
            let re = Float::with_val(p, self.im.abs_ref()) / Float::with_val(p, &t * 2u32);
            let im = if self.im < 0 { -t } else { t };
            BigComplex { re, im }
        }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        BigComplex {
            re: Float::with_val(p, &m * &c),
            im: Float::with_val(p, &m * &s),
        }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        BigComplex {
            re: self.abs().ln(),
            im: self.arg().with_prec_owned(p),
        }
    }

    /// `e^{iθ}`.
    pub fn cis(theta: &Float) -> Self {
        let p = theta.prec();
        let (s, c) = theta.clone().sin_cos(Float::new(p));
        BigComplex { re: c, im: s }
    }

    pub fn powi(&self, e: i64) -> Self {
        let p = self.prec();
        let mut base = if e < 0 { self.recip() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = BigComplex::one(p);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Principal power `self^e` for real `e`.
    pub fn powf(&self, e: &Float) -> Self {
        if self.is_zero() {
            return BigComplex::zero(self.prec());
        }
        self.ln().scale(e).exp()
    }

    /// The `k` roots of `w^k = self`, starting from the principal one.
    pub fn nth_roots(&self, k: u32) -> Vec<BigComplex> {
        let p = self.prec();
        if k == 1 {
            return vec![self.clone()];
        }
        let mag = Float::with_val(p, self.abs().ln() / k).exp();
        let arg0 = Float::with_val(p, self.arg() / k);
        let two_pi = Float::with_val(p, Constant::Pi) * 2u32;
        (0..k)
            .map(|j| {
                let theta = Float::with_val(p, &arg0 + Float::with_val(p, &two_pi * j) / k);
                BigComplex::cis(&theta).scale(&mag)
            })
            .collect()
    }

    pub fn dist(&self, other: &BigComplex) -> Float {
        (self - other).abs()
    }

    /// Plain decimal rendering with `digits` significant digits per part.
    pub fn to_string_digits(&self, digits: usize) -> String {
        let re = fmt_float(&self.re, digits);
        let im = fmt_float(&Float::with_val(self.im.prec(), self.im.abs_ref()), digits);
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        format!("{re}{sign}{im}i")
    }
}

trait WithPrecOwned {
    fn with_prec_owned(self, p: u32) -> Float;
}

impl WithPrecOwned for Float {
    fn with_prec_owned(mut self, p: u32) -> Float {
        self.set_prec(p);
        self
    }
}

/// Decimal rendering of a Float with `digits` significant digits; positional
/// notation for moderate exponents, scientific otherwise.
pub fn fmt_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let d = digits.max(1);
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, Some(d));
    // value = 0.mantissa × 10^exp
    let exp = exp.unwrap_or(0);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    if (-6..=21).contains(&exp) {
        if exp <= 0 {
            s.push_str("0.");
            s.extend(std::iter::repeat('0').take((-exp) as usize));
            s.push_str(&mantissa);
        } else if exp as usize >= mantissa.len() {
            s.push_str(&mantissa);
            s.extend(std::iter::repeat('0').take(exp as usize - mantissa.len()));
        } else {
            let (a, b) = mantissa.split_at(exp as usize);
            s.push_str(a);
            s.push('.');
            s.push_str(b);
        }
    } else {
        let (head, tail) = mantissa.split_at(1);
        s.push_str(head);
        s.push('.');
        s.push_str(tail);
        s.push_str(&format!("e{}", exp - 1));
    }
    s
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(f, "{}", self.to_string_digits(digits))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: &BigComplex) -> BigComplex {
                let f: fn(&BigComplex, &BigComplex) -> BigComplex = $body;
                f(self, rhs)
            }
        }
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: &BigComplex) -> BigComplex {
                (&self).$m(rhs)
            }
        }
        impl $tr<BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    let p = a.prec().max(b.prec());
    BigComplex {
        re: Float::with_val(p, &a.re + &b.re),
        im: Float::with_val(p, &a.im + &b.im),
    }
});

binop!(Sub, sub, |a, b| {
    let p = a.prec().max(b.prec());
    BigComplex {
        re: Float::with_val(p, &a.re - &b.re),
        im: Float::with_val(p, &a.im - &b.im),
    }
});

binop!(Mul, mul, |a, b| {
    let p = a.prec().max(b.prec());
    let im_zero_a = a.im.is_zero();
    let im_zero_b = b.im.is_zero();
    if im_zero_a && im_zero_b {
        return BigComplex {
            re: Float::with_val(p, &a.re * &b.re),
            im: Float::new(p),
        };
    }
    let re = Float::with_val(p, &a.re * &b.re) - Float::with_val(p, &a.im * &b.im);
    let im = Float::with_val(p, &a.re * &b.im) + Float::with_val(p, &a.im * &b.re);
    BigComplex { re, im }
});

binop!(Div, div, |a, b| {
    let p = a.prec().max(b.prec());
    let n = b.norm_sqr();
    let re = Float::with_val(p, &a.re * &b.re) + Float::with_val(p, &a.im * &b.im);
    let im = Float::with_val(p, &a.im * &b.re) - Float::with_val(p, &a.re * &b.im);
    BigComplex {
        re: re / &n,
        im: im / &n,
    }
});

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl AddAssign<&BigComplex> for BigComplex {
    fn add_assign(&mut self, rhs: &BigComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&BigComplex> for BigComplex {
    fn sub_assign(&mut self, rhs: &BigComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&BigComplex> for BigComplex {
    fn mul_assign(&mut self, rhs: &BigComplex) {
        *self = &*self * rhs;
    }
}

/// Coefficient types that can be lifted into `BigComplex`.
pub trait ToComplex {
    fn to_complex(&self, prec: u32) -> BigComplex;
}

impl ToComplex for GaussRational {
    fn to_complex(&self, prec: u32) -> BigComplex {
        BigComplex::from_gauss(prec, self)
    }
}

impl ToComplex for GaussInt {
    fn to_complex(&self, prec: u32) -> BigComplex {
        let prec = prec.max(MIN_PRECISION);
        BigComplex {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }
}

impl ToComplex for BigComplex {
    fn to_complex(&self, prec: u32) -> BigComplex {
        self.with_prec(prec)
    }
}
