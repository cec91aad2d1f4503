use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::bigcomplex::{BigComplex, ToComplex};
use super::ring::Ring;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Exponent vector aligned with a polynomial's variable list.
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared from the highest-indexed variable down.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in Green's-function variables `G_k`.
///
/// `vars` holds the G-indices in increasing order; every exponent vector has
/// the same length. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiPoly<C: Ring> {
    vars: Vec<usize>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> MultiPoly<C> {
    pub fn zero() -> Self {
        MultiPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(0), c);
        }
        p
    }

    pub fn one() -> Self {
        MultiPoly::constant(C::one())
    }

    /// The single variable `G_index`.
    pub fn var(index: usize) -> Self {
        MultiPoly::monomial(C::one(), &[(index, 1)])
    }

    /// `c · Π G_k^e` from a list of `(k, e)` pairs.
    pub fn monomial(c: C, powers: &[(usize, u32)]) -> Self {
        let mut vars: Vec<usize> = powers.iter().filter(|(_, e)| *e > 0).map(|(k, _)| *k).collect();
        vars.sort_unstable();
        vars.dedup();
        let mut exps = vec![0u32; vars.len()];
        for (k, e) in powers {
            if *e > 0 {
                let pos = vars.binary_search(k).expect("variable present");
                exps[pos] += e;
            }
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exps), c);
        }
        MultiPoly { vars, terms }
    }

    /// Build from `(powers, coefficient)` pairs; duplicates are summed.
    pub fn from_terms(items: impl IntoIterator<Item = (Vec<(usize, u32)>, C)>) -> Self {
        let mut acc = MultiPoly::zero();
        for (powers, c) in items {
            acc = acc.add(&MultiPoly::monomial(c, &powers));
        }
        acc
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    /// Terms as `(G-index, exponent)` lists, highest monomial first.
    pub fn sparse_terms(&self) -> Vec<(Vec<(usize, u32)>, C)> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| (self.sparse_monomial(m), c.clone()))
            .collect()
    }

    pub fn sparse_monomial(&self, m: &Monomial) -> Vec<(usize, u32)> {
        self.vars
            .iter()
            .zip(&m.0)
            .filter(|(_, e)| **e > 0)
            .map(|(k, e)| (*k, *e))
            .collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> C {
        self.terms
            .get(&Monomial::one(self.vars.len()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn contains(&self, index: usize) -> bool {
        self.degree_in(index) > 0
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        match self.vars.binary_search(&index) {
            Ok(pos) => self.terms.keys().map(|m| m.0[pos]).max().unwrap_or(0),
            Err(_) => 0,
        }
    }

    /// Largest G-index with a nonzero exponent.
    pub fn top_var(&self) -> Option<usize> {
        self.vars.iter().rev().copied().find(|&k| self.contains(k))
    }

    /// G-indices that actually occur.
    pub fn support(&self) -> Vec<usize> {
        self.vars.iter().copied().filter(|&k| self.contains(k)).collect()
    }

    /// Coefficient of the exact monomial given by sparse powers.
    pub fn coeff(&self, powers: &[(usize, u32)]) -> C {
        let mut exps = vec![0u32; self.vars.len()];
        for (k, e) in powers {
            if *e == 0 {
                continue;
            }
            match self.vars.binary_search(k) {
                Ok(pos) => exps[pos] += e,
                Err(_) => return C::zero(),
            }
        }
        self.terms.get(&Monomial(exps)).cloned().unwrap_or_else(C::zero)
    }

    fn aligned_to(&self, vars: &[usize]) -> BTreeMap<Monomial, C> {
        if self.vars == vars {
            return self.terms.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|k| vars.binary_search(k).expect("superset of variables"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; vars.len()];
                for (i, x) in m.0.iter().enumerate() {
                    e[map[i]] = *x;
                }
                (Monomial(e), c.clone())
            })
            .collect()
    }

    fn union_vars(a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Drops variables that no longer occur.
    pub fn trimmed(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        let keep: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if keep.len() == self.vars.len() {
            return self;
        }
        let vars = keep.iter().map(|&i| self.vars[i]).collect();
        let terms = self
            .terms
            .into_iter()
            .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c))
            .collect();
        MultiPoly { vars, terms }
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let vars = Self::union_vars(&self.vars, &other.vars);
        let mut terms = self.aligned_to(&vars);
        let rhs = if other.vars == vars {
            None
        } else {
            Some(other.aligned_to(&vars))
        };
        let rhs_ref = rhs.as_ref().unwrap_or(&other.terms);
        for (m, c) in rhs_ref {
            match terms.get_mut(m) {
                Some(t) => {
                    if negate {
                        t.sub_assign_ref(c);
                    } else {
                        t.add_assign_ref(c);
                    }
                    if t.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), if negate { c.neg_ref() } else { c.clone() });
                }
            }
        }
        MultiPoly { vars, terms }.trimmed()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.mul_ref(k)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        let vars = Self::union_vars(&self.vars, &other.vars);
        let a = self.aligned_to(&vars);
        let b = other.aligned_to(&vars);
        let mut terms: BTreeMap<Monomial, C> = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let m = ma.mul(mb);
                terms.entry(m).or_insert_with(C::zero).add_mul(ca, cb);
            }
        }
        MultiPoly { vars, terms }.trimmed()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to `G_index`.
    pub fn partial(&self, index: usize) -> Self {
        let Ok(pos) = self.vars.binary_search(&index) else {
            return MultiPoly::zero();
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[pos];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[pos] -= 1;
            let coeff = c.mul_ref(&C::from_i64(e as i64));
            if !coeff.is_zero() {
                terms.insert(m2, coeff);
            }
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
        .trimmed()
    }

    /// The derivation with `D(G_k) = G_{k+1}`, extended by the product rule.
    pub fn derive(&self) -> Self {
        let mut acc = MultiPoly::zero();
        for &k in &self.vars {
            let d = self.partial(k);
            if !d.is_zero() {
                acc = acc.add(&d.mul(&MultiPoly::var(k + 1)));
            }
        }
        acc
    }

    /// Replace `G_index` by `replacement`.
    pub fn substitute(&self, index: usize, replacement: &Self) -> Result<Self> {
        if replacement.contains(index) {
            return Err(Error::CyclicSubstitution { var: index });
        }
        if !self.contains(index) {
            return Ok(self.clone());
        }
        // Group by the exponent of the substituted variable, then apply Horner.
        let slices = self.coeffs_in(index);
        let mut acc = MultiPoly::zero();
        for c in slices.iter().rev() {
            acc = acc.mul(replacement).add(c);
        }
        Ok(acc)
    }

    /// Replace several variables at once, in the order given.
    pub fn substitute_all(&self, subs: &[(usize, Self)]) -> Result<Self> {
        let mut p = self.clone();
        for (k, r) in subs {
            p = p.substitute(*k, r)?;
        }
        Ok(p)
    }

    /// Coefficients of `self` viewed as a polynomial in `G_index`: entry `j`
    /// multiplies `G_index^j`.
    pub fn coeffs_in(&self, index: usize) -> Vec<Self> {
        let Ok(pos) = self.vars.binary_search(&index) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(index) as usize;
        let mut buckets: Vec<BTreeMap<Monomial, C>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[pos] as usize;
            let mut m2 = m.clone();
            m2.0[pos] = 0;
            buckets[e].insert(m2, c.clone());
        }
        buckets
            .into_iter()
            .map(|terms| {
                MultiPoly {
                    vars: self.vars.clone(),
                    terms,
                }
                .trimmed()
            })
            .collect()
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(index: usize, coeffs: &[Self]) -> Self {
        let x = MultiPoly::var(index);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(&x).add(c);
        }
        acc
    }

    /// Evaluate a single variable at an exact constant.
    pub fn eval_var(&self, index: usize, value: &C) -> Self {
        let slices = self.coeffs_in(index);
        let mut acc = MultiPoly::zero();
        for c in slices.iter().rev() {
            acc = acc.scale(value).add(c);
        }
        acc
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
        .trimmed()
    }

    pub fn coeff_values(&self) -> impl Iterator<Item = &C> {
        self.terms.values()
    }

    /// View as a univariate polynomial in `index`; fails if other variables occur.
    pub fn to_unipoly(&self, index: usize) -> Result<UniPoly<C>> {
        let supp = self.support();
        if supp.iter().any(|&k| k != index) {
            return Err(Error::NotUnivariate {
                var: index,
                found: supp,
            });
        }
        let coeffs = self.coeffs_in(index).into_iter().map(|c| c.constant_term()).collect();
        Ok(UniPoly::new(coeffs))
    }

    pub fn from_unipoly(index: usize, p: &UniPoly<C>) -> Self {
        let items = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| (vec![(index, j as u32)], c.clone()));
        MultiPoly::from_terms(items)
    }
}

impl<C: Ring + ToComplex> MultiPoly<C> {
    /// Evaluate with `point[j]` bound to the `j`-th entry of `vars`.
    pub fn eval(&self, vars: &[usize], point: &[BigComplex], prec: u32) -> Result<BigComplex> {
        if vars.len() != point.len() {
            return Err(Error::DimensionMismatch {
                expected: vars.len(),
                found: point.len(),
            });
        }
        let mut slot = Vec::with_capacity(self.vars.len());
        for k in &self.vars {
            match vars.iter().position(|v| v == k) {
                Some(j) => slot.push(j),
                None => return Err(Error::MissingValue { var: *k }),
            }
        }
        // Cache powers per variable to avoid recomputation across terms.
        let mut powers: Vec<Vec<BigComplex>> = Vec::with_capacity(self.vars.len());
        for (i, _) in self.vars.iter().enumerate() {
            let maxe = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0) as usize;
            let x = point[slot[i]].with_prec(prec);
            let mut pw = vec![BigComplex::one(prec)];
            for e in 1..=maxe {
                let next = &pw[e - 1] * &x;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut acc = BigComplex::zero(prec);
        for (m, c) in &self.terms {
            let mut t = c.to_complex(prec);
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    t = &t * &powers[i][*e as usize];
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Sum of `|c|·Π|x|^e` over terms; the natural scale for relative residuals.
    pub fn eval_abs(&self, vars: &[usize], point: &[BigComplex], prec: u32) -> Result<BigComplex> {
        let abs_point: Vec<BigComplex> = point
            .iter()
            .map(|z| BigComplex::from_real(z.with_prec(prec).abs()))
            .collect();
        let abs_poly = self.map_coeffs(|c| BigComplex::from_real(c.to_complex(prec).abs()));
        abs_poly.eval(vars, &abs_point, prec)
    }
}

impl<C: Ring + ToComplex> MultiPoly<C> {
    /// Lift coefficients to floating point.
    pub fn to_complex_coeffs(&self, prec: u32) -> MultiPoly<BigComplex> {
        self.map_coeffs(|c| c.to_complex(prec))
    }
}

impl Ring for BigComplex {
    fn zero() -> Self {
        BigComplex::zero(super::DEFAULT_PRECISION)
    }
    fn one() -> Self {
        BigComplex::one(super::DEFAULT_PRECISION)
    }
    fn from_i64(n: i64) -> Self {
        BigComplex::from_f64(super::DEFAULT_PRECISION, n as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        BigComplex::is_zero(self)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::GaussRational;

    type P = MultiPoly<GaussRational>;

    fn q(n: i64) -> GaussRational {
        GaussRational::from_i64(n)
    }

    #[test]
    fn substitution_example() {
        // G_4 = 1 - 3 G_2^2 into -12 G_2 G_4 - 6 G_2^3
        let g4 = P::from_terms([(vec![], q(1)), (vec![(2, 2)], q(-3))]);
        let p = P::from_terms([(vec![(2, 1), (4, 1)], q(-12)), (vec![(2, 3)], q(-6))]);
        let r = p.substitute(4, &g4).unwrap();
        let want = P::from_terms([(vec![(2, 3)], q(30)), (vec![(2, 1)], q(-12))]);
        assert_eq!(r, want);
        assert!(!r.contains(4));
        let at1 = r.eval(&[2], &[BigComplex::one(128)], 128).unwrap();
        assert_eq!(at1.re_f64(), 18.0);
    }

    #[test]
    fn substitution_leaves_unrelated_polys() {
        let p = P::from_terms([(vec![(1, 2)], q(5)), (vec![], q(1))]);
        assert_eq!(p.substitute(3, &P::var(2)).unwrap(), p);
    }

    #[test]
    fn cyclic_substitution_rejected() {
        let p = P::var(2);
        let r = P::var(2).add(&P::one());
        assert!(matches!(p.substitute(2, &r), Err(Error::CyclicSubstitution { var: 2 })));
    }

    #[test]
    fn derivation_follows_product_rule() {
        // D(G1^2) = 2 G1 G2 ; D(G1 G2) = G2^2 + G1 G3
        let g1 = P::var(1);
        assert_eq!(
            g1.pow(2).derive(),
            P::from_terms([(vec![(1, 1), (2, 1)], q(2))])
        );
        let p = P::var(1).mul(&P::var(2));
        assert_eq!(
            p.derive(),
            P::from_terms([(vec![(2, 2)], q(1)), (vec![(1, 1), (3, 1)], q(1))])
        );
    }

    #[test]
    fn coeff_slices_roundtrip() {
        let p = P::from_terms([
            (vec![(1, 2), (2, 1)], q(3)),
            (vec![(2, 2)], q(-1)),
            (vec![(1, 1)], q(7)),
        ]);
        let cs = p.coeffs_in(1);
        assert_eq!(cs.len(), 3);
        assert_eq!(P::from_coeffs_in(1, &cs), p);
    }

    #[test]
    fn eval_dimension_mismatch() {
        let p = P::var(2);
        assert!(matches!(
            p.eval(&[2], &[], 64),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![0, 1]);
        let c = Monomial(vec![1, 1]);
        assert!(b < a);
        assert!(a < c);
    }
}
