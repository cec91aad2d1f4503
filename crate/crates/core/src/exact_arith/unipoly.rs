use super::bigcomplex::{BigComplex, ToComplex};
use super::ring::{Field, Ring};

/// Dense univariate polynomial; `coeffs[j]` multiplies `x^j`.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<C: Ring> {
    coeffs: Vec<C>,
}

impl<C: Ring> UniPoly<C> {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial `x^k`.
    pub fn x_pow(k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = C::one();
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, j: usize) -> C {
        self.coeffs.get(j).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let mut c = self.coeff(j);
            c.add_assign_ref(&other.coeff(j));
            out.push(c);
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(Ring::neg_ref).collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| c.mul_ref(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j].add_mul(a, b);
            }
        }
        UniPoly::new(out)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.mul_ref(&C::from_i64(j as i64)))
                .collect(),
        )
    }

    /// Multiplicity of the root `x = 0`.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divide out `x^k` for the maximal `k`; returns the quotient and `k`.
    pub fn strip_zero_roots(&self) -> (Self, usize) {
        if self.is_zero() {
            return (UniPoly::zero(), 0);
        }
        let k = self.zero_root_multiplicity();
        (
            UniPoly {
                coeffs: self.coeffs[k..].to_vec(),
            },
            k,
        )
    }

    /// Largest `g` such that only powers `x^{gj}` occur.
    pub fn grading(&self) -> usize {
        let mut g = 0usize;
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = gcd_usize(g, j);
            }
        }
        g.max(1)
    }

    /// Rewrite a `g`-graded polynomial in `z = x^g`.
    pub fn deflate(&self, g: usize) -> Self {
        assert!(g >= 1);
        UniPoly::new(self.coeffs.iter().step_by(g).cloned().collect())
    }

    /// Substitute `x → x^g`.
    pub fn inflate(&self, g: usize) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![C::zero(); self.degree() * g + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[j * g] = c.clone();
        }
        UniPoly::new(out)
    }

    /// Substitute `x → k·x`.
    pub fn scale_var(&self, k: &C) -> Self {
        let mut pw = C::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.mul_ref(&pw));
            pw = pw.mul_ref(k);
        }
        UniPoly::new(out)
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> UniPoly<D> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Field> UniPoly<C> {
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let inv = self.leading().inv_ref().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Euclidean division `self = q·d + r`; `None` if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        if d.is_zero() {
            return None;
        }
        let lead_inv = d.leading().inv_ref()?;
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return Some((UniPoly::zero(), self.clone()));
        }
        let mut q = vec![C::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul_ref(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = c.mul_ref(dc);
                r[k + j].sub_assign_ref(&t);
            }
            q[k] = c;
        }
        r.truncate(dd);
        Some((UniPoly::new(q), UniPoly::new(r)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.monic();
        }
        self.div_rem(&g).expect("nonzero gcd").0.monic()
    }
}

impl<C: Ring + ToComplex> UniPoly<C> {
    pub fn to_complex(&self, prec: u32) -> Vec<BigComplex> {
        self.coeffs.iter().map(|c| c.to_complex(prec)).collect()
    }

    pub fn eval(&self, x: &BigComplex, prec: u32) -> BigComplex {
        horner(&self.to_complex(prec), &x.with_prec(prec))
    }
}

/// Horner evaluation of a coefficient list (ascending powers).
pub fn horner(coeffs: &[BigComplex], x: &BigComplex) -> BigComplex {
    let prec = x.prec();
    let mut acc = BigComplex::zero(prec);
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::GaussRational;
    use rug::Rational;

    type P = UniPoly<GaussRational>;

    fn poly(cs: &[(i64, i64)]) -> P {
        P::new(cs.iter().map(|&(p, q)| GaussRational::from_ratio(p, q)).collect())
    }

    #[test]
    fn eval_constant_term() {
        let p = poly(&[(-1, 3), (0, 1), (1, 1)]);
        let v = p.eval(&BigComplex::zero(128), 128);
        let want = BigComplex::from_rational(128, &Rational::from((-1, 3)));
        assert!(v.dist(&want).to_f64() < 1e-35);
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = poly(&[(-2, 1), (1, 1), (1, 1)]);
        let b = poly(&[(3, 1), (-4, 1), (1, 1)]);
        let g = a.gcd(&b);
        assert_eq!(g, poly(&[(-1, 1), (1, 1)]));
        let (q, r) = a.div_rem(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, poly(&[(2, 1), (1, 1)]));
    }

    #[test]
    fn grading_and_zero_roots() {
        let p = poly(&[(0, 1), (0, 1), (0, 1), (1, 20), (0, 1), (0, 1), (1, 2), (0, 1), (0, 1), (1, 1)]);
        let (q, k) = p.strip_zero_roots();
        assert_eq!(k, 3);
        assert_eq!(q.grading(), 3);
        assert_eq!(q.deflate(3).inflate(3), q);
    }

    #[test]
    fn squarefree_removes_repeats() {
        // (x-1)^2 (x+1)
        let p = poly(&[(1, 1), (-1, 1), (-1, 1), (1, 1)]);
        assert_eq!(p.squarefree_part(), poly(&[(-1, 1), (0, 1), (1, 1)]));
    }
}
