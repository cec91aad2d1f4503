use std::cmp::Ordering;
use std::fmt;

use rug::{Integer, Rational};

use super::ring::{Field, Ring};

fn int_is_zero(x: &Integer) -> bool {
    x.cmp0() == Ordering::Equal
}

fn rat_is_zero(x: &Rational) -> bool {
    x.cmp0() == Ordering::Equal
}

/// Gaussian integer `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussInt {
    pub re: Integer,
    pub im: Integer,
}

impl GaussInt {
    pub fn new(re: impl Into<Integer>, im: impl Into<Integer>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussInt {
            re: self.re.clone(),
            im: Integer::from(-&self.im),
        }
    }

    /// `|z|²`.
    pub fn norm(&self) -> Integer {
        Integer::from(self.re.square_ref()) + Integer::from(self.im.square_ref())
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &GaussInt) -> Option<GaussInt> {
        if d.is_zero() {
            return None;
        }
        if int_is_zero(&d.im) {
            if self.re.is_divisible(&d.re) && self.im.is_divisible(&d.re) {
                return Some(GaussInt {
                    re: Integer::from(self.re.div_exact_ref(&d.re)),
                    im: Integer::from(self.im.div_exact_ref(&d.re)),
                });
            }
            return None;
        }
        let n = d.norm();
        let num = self.mul_ref(&d.conj());
        if num.re.is_divisible(&n) && num.im.is_divisible(&n) {
            Some(GaussInt {
                re: Integer::from(num.re.div_exact_ref(&n)),
                im: Integer::from(num.im.div_exact_ref(&n)),
            })
        } else {
            None
        }
    }

    /// Multiply by `i^k`.
    pub fn mul_i_pow(&self, k: u32) -> GaussInt {
        match k % 4 {
            0 => self.clone(),
            1 => GaussInt {
                re: Integer::from(-&self.im),
                im: self.re.clone(),
            },
            2 => self.neg_ref(),
            _ => GaussInt {
                re: self.im.clone(),
                im: Integer::from(-&self.re),
            },
        }
    }

    pub fn scale(&self, k: &Integer) -> GaussInt {
        GaussInt {
            re: Integer::from(&self.re * k),
            im: Integer::from(&self.im * k),
        }
    }
}

impl Ring for GaussInt {
    fn zero() -> Self {
        GaussInt::default()
    }
    fn one() -> Self {
        GaussInt::new(1, 0)
    }
    fn from_i64(n: i64) -> Self {
        GaussInt::new(n, 0)
    }
    fn is_zero(&self) -> bool {
        int_is_zero(&self.re) && int_is_zero(&self.im)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = GaussInt::zero();
        out.add_mul(self, rhs);
        out
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        // Coefficients in the towers are mostly purely real or purely imaginary.
        let (ar, ai) = (!int_is_zero(&a.re), !int_is_zero(&a.im));
        let (br, bi) = (!int_is_zero(&b.re), !int_is_zero(&b.im));
        if ar && br {
            self.re += &a.re * &b.re;
        }
        if ai && bi {
            self.re -= &a.im * &b.im;
        }
        if ar && bi {
            self.im += &a.re * &b.im;
        }
        if ai && br {
            self.im += &a.im * &b.re;
        }
    }
    fn neg_ref(&self) -> Self {
        GaussInt {
            re: Integer::from(-&self.re),
            im: Integer::from(-&self.im),
        }
    }
}

/// Gaussian rational `re + im·i`, both parts canonical `rug::Rational`s.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: impl Into<Rational>, im: impl Into<Rational>) -> Self {
        GaussRational {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn real(re: impl Into<Rational>) -> Self {
        GaussRational::new(re, 0)
    }

    pub fn i() -> Self {
        GaussRational::new(0, 1)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussRational::real(Rational::from((num, den)))
    }

    pub fn conj(&self) -> Self {
        GaussRational {
            re: self.re.clone(),
            im: Rational::from(-&self.im),
        }
    }

    pub fn norm(&self) -> Rational {
        Rational::from(self.re.square_ref()) + Rational::from(self.im.square_ref())
    }

    pub fn is_real(&self) -> bool {
        rat_is_zero(&self.im)
    }

    pub fn is_imaginary(&self) -> bool {
        rat_is_zero(&self.re)
    }

    /// Least common multiple of the two denominators.
    pub fn denom_lcm(&self) -> Integer {
        Integer::from(self.re.denom().lcm_ref(self.im.denom()))
    }

    /// `self * k` as a Gaussian integer; `k` must clear both denominators.
    pub fn scaled_to_int(&self, k: &Integer) -> GaussInt {
        let re = Rational::from(&self.re * k);
        let im = Rational::from(&self.im * k);
        debug_assert!(*re.denom() == 1 && *im.denom() == 1);
        GaussInt {
            re: re.into_numer_denom().0,
            im: im.into_numer_denom().0,
        }
    }

    pub fn mul_i_pow(&self, k: u32) -> GaussRational {
        match k % 4 {
            0 => self.clone(),
            1 => GaussRational {
                re: Rational::from(-&self.im),
                im: self.re.clone(),
            },
            2 => self.neg_ref(),
            _ => GaussRational {
                re: self.im.clone(),
                im: Rational::from(-&self.re),
            },
        }
    }

    pub fn scale(&self, k: &Rational) -> GaussRational {
        GaussRational {
            re: Rational::from(&self.re * k),
            im: Rational::from(&self.im * k),
        }
    }

    /// Canonical `re_p/re_q,im_p/im_q` form used by golden files.
    pub fn canonical(&self) -> String {
        format!(
            "{}/{},{}/{}",
            self.re.numer(),
            self.re.denom(),
            self.im.numer(),
            self.im.denom()
        )
    }

    pub fn parse_canonical(s: &str) -> Option<GaussRational> {
        let (re, im) = s.split_once(',')?;
        Some(GaussRational {
            re: re.trim().parse().ok()?,
            im: im.trim().parse().ok()?,
        })
    }

    /// Parses `p/q` or `p` (real) or the canonical pair form.
    pub fn parse_loose(s: &str) -> Option<GaussRational> {
        if s.contains(',') {
            return GaussRational::parse_canonical(s);
        }
        Some(GaussRational::real(s.trim().parse::<Rational>().ok()?))
    }
}

impl From<GaussInt> for GaussRational {
    fn from(z: GaussInt) -> Self {
        GaussRational {
            re: Rational::from(z.re),
            im: Rational::from(z.im),
        }
    }
}

impl From<&GaussInt> for GaussRational {
    fn from(z: &GaussInt) -> Self {
        GaussRational {
            re: Rational::from(&z.re),
            im: Rational::from(&z.im),
        }
    }
}

impl Ring for GaussRational {
    fn zero() -> Self {
        GaussRational::default()
    }
    fn one() -> Self {
        GaussRational::new(1, 0)
    }
    fn from_i64(n: i64) -> Self {
        GaussRational::new(n, 0)
    }
    fn is_zero(&self) -> bool {
        rat_is_zero(&self.re) && rat_is_zero(&self.im)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = GaussRational::zero();
        out.add_mul(self, rhs);
        out
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let (ar, ai) = (!rat_is_zero(&a.re), !rat_is_zero(&a.im));
        let (br, bi) = (!rat_is_zero(&b.re), !rat_is_zero(&b.im));
        if ar && br {
            self.re += Rational::from(&a.re * &b.re);
        }
        if ai && bi {
            self.re -= Rational::from(&a.im * &b.im);
        }
        if ar && bi {
            self.im += Rational::from(&a.re * &b.im);
        }
        if ai && br {
            self.im += Rational::from(&a.im * &b.re);
        }
    }
    fn neg_ref(&self) -> Self {
        GaussRational {
            re: Rational::from(-&self.re),
            im: Rational::from(-&self.im),
        }
    }
}

impl Field for GaussRational {
    fn inv_ref(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_real() {
            return Some(GaussRational::real(Rational::from(self.re.recip_ref())));
        }
        let n = self.norm();
        let c = self.conj();
        Some(GaussRational {
            re: c.re / &n,
            im: c.im / &n,
        })
    }
}

fn fmt_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Human-readable form: `3`, `-1/2`, `2i`, `-i`, `(1/2+3i)`.
impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (rat_is_zero(&self.re), rat_is_zero(&self.im)) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                if self.im == 1 {
                    write!(f, "i")
                } else if self.im == -1 {
                    write!(f, "-i")
                } else {
                    write!(f, "{}i", fmt_rational(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.cmp0() == Ordering::Less { '-' } else { '+' };
                let abs_im = Rational::from(self.im.abs_ref());
                if abs_im == 1 {
                    write!(f, "({}{}i)", fmt_rational(&self.re), sign)
                } else {
                    write!(f, "({}{}{}i)", fmt_rational(&self.re), sign, fmt_rational(&abs_im))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_int_exact_division() {
        let a = GaussInt::new(3, 4);
        let b = GaussInt::new(1, 2);
        let p = a.mul_ref(&b);
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!(GaussInt::new(1, 0).div_exact(&GaussInt::new(1, 1)), None);
        assert_eq!(a.div_exact(&GaussInt::zero()), None);
    }

    #[test]
    fn gauss_rational_inverse_and_conjugation() {
        let z = GaussRational::new(Rational::from((1, 2)), 3);
        let w = z.inv_ref().unwrap();
        assert!(z.mul_ref(&w).is_one());
        assert_eq!(z.conj().conj(), z);
        assert!(GaussRational::zero().inv_ref().is_none());
    }

    #[test]
    fn display_and_canonical_forms() {
        assert_eq!(GaussRational::from_ratio(-1, 3).to_string(), "-1/3");
        assert_eq!(GaussRational::i().neg_ref().to_string(), "-i");
        assert_eq!(GaussRational::new(2, -3).to_string(), "(2-3i)");
        let z = GaussRational::new(Rational::from((-8, 15)), Rational::from((1, 21)));
        assert_eq!(z.canonical(), "-8/15,1/21");
        assert_eq!(GaussRational::parse_canonical(&z.canonical()), Some(z));
    }

    #[test]
    fn i_powers_cycle() {
        let one = GaussInt::one();
        assert_eq!(one.mul_i_pow(1), GaussInt::i());
        assert_eq!(one.mul_i_pow(2), GaussInt::from_i64(-1));
        assert_eq!(one.mul_i_pow(4), one);
    }
}
