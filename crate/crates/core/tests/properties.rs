//! Algebraic invariants over generated inputs.

use std::collections::BTreeMap;

use ds_zero::ds_generator::{standard_tower, Theory};
use ds_zero::elimination::{ClosureScheme, Eliminator};
use ds_zero::exact_arith::resultant::resultant;
use ds_zero::exact_arith::{BigComplex, Field, GPoly, GaussRational, Rational, Ring, XPoly};
use ds_zero::oracle::{cumulants_from_moments, exact_green_table, moments_from_cumulants};
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = GaussRational> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9)
        .prop_map(|(a, b, c, d)| GaussRational::new(Rational::from((a, b)), Rational::from((c, d))))
}

/// Polynomial in `G_1`, `G_2`, `G_3` with at most six terms of degree ≤ 2 per variable.
fn gpoly() -> impl Strategy<Value = GPoly> {
    prop::collection::vec((0u32..=2, 0u32..=2, 0u32..=2, gauss()), 1..=6).prop_map(|terms| {
        let mut p = GPoly::zero();
        for (e1, e2, e3, c) in terms {
            p = p.add(&GPoly::monomial(c, &[(1, e1), (2, e2), (3, e3)]));
        }
        p
    })
}

fn xpoly() -> impl Strategy<Value = XPoly> {
    prop::collection::vec(gauss(), 1..=6).prop_map(XPoly::new)
}

fn point(v: &[(i64, i64)]) -> Vec<BigComplex> {
    v.iter().map(|(a, b)| BigComplex::from_f64(256, *a as f64 / 7.0, *b as f64 / 5.0)).collect()
}

/// `y³ + Σ c x^i y^j` with `j ≤ 2`, shifted so that it vanishes at `(x0, y0)`.
fn through(terms: &[(u32, u32, GaussRational)], x0: &GaussRational, y0: &GaussRational) -> GPoly {
    let mut p = GPoly::monomial(GaussRational::one(), &[(2, 3)]);
    for (i, j, c) in terms {
        p = p.add(&GPoly::monomial(c.clone(), &[(1, *i), (2, *j)]));
    }
    let at = p.eval_var(1, x0).eval_var(2, y0).constant_term();
    p.sub(&GPoly::constant(at))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_rationals_form_a_field(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        let mut bc = b.clone();
        bc.add_assign_ref(&c);
        let mut ab_ac = a.mul_ref(&b);
        ab_ac.add_assign_ref(&a.mul_ref(&c));
        prop_assert_eq!(a.mul_ref(&bc), ab_ac);
        if !a.is_zero() {
            prop_assert!(a.mul_ref(&a.inv_ref().unwrap()).is_one());
        }
    }

    #[test]
    fn polynomial_products_are_ring_operations(p in gpoly(), q in gpoly(), r in gpoly()) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn division_with_remainder_reconstructs(p in xpoly(), d in xpoly()) {
        prop_assume!(!d.is_zero());
        let (quot, rem) = p.div_rem(&d).unwrap();
        prop_assert_eq!(quot.mul(&d).add(&rem), p);
        prop_assert!(rem.is_zero() || rem.degree() < d.degree());
    }

    #[test]
    fn gcd_divides_both(p in xpoly(), q in xpoly(), f in xpoly()) {
        let (a, b) = (p.mul(&f), q.mul(&f));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = a.gcd(&b);
        prop_assert!(a.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(b.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(g.degree() >= f.degree());
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        p in gpoly(),
        r in prop::collection::vec((0u32..=2, 0u32..=2, gauss()), 1..=3),
        v in prop::collection::vec((-9i64..=9, -9i64..=9), 2),
    ) {
        let mut rep = GPoly::zero();
        for (e1, e2, c) in r {
            rep = rep.add(&GPoly::monomial(c, &[(1, e1), (2, e2)]));
        }
        let pt = point(&v);
        let vars = [1usize, 2];
        let direct = {
            let g3 = rep.eval(&vars, &pt, 256).unwrap();
            let mut full = pt.clone();
            full.push(g3);
            p.eval(&[1, 2, 3], &full, 256).unwrap()
        };
        let substituted = p.substitute(3, &rep).unwrap();
        let via = substituted.eval(&vars, &pt, 256).unwrap();
        let scale = p.eval_abs(&[1, 2, 3], &{
            let mut full = pt.clone();
            full.push(rep.eval(&vars, &pt, 256).unwrap());
            full
        }, 256).unwrap().abs_f64().max(1.0);
        prop_assert!(direct.dist(&via).to_f64() / scale < 1e-60);
    }

    #[test]
    fn derivation_obeys_leibniz(p in gpoly(), q in gpoly()) {
        let lhs = p.mul(&q).derive();
        let rhs = p.derive().mul(&q).add(&p.mul(&q.derive()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_vanishes_at_common_roots(
        pt in prop::collection::vec((0u32..=2, 0u32..=2, gauss()), 1..=4),
        qt in prop::collection::vec((0u32..=2, 0u32..=2, gauss()), 1..=4),
        x0 in gauss(),
        y0 in gauss(),
    ) {
        let p = through(&pt, &x0, &y0);
        let q = through(&qt, &x0, &y0);
        let r = resultant(&p, &q, 2).unwrap();
        prop_assert!(!r.contains(2));
        prop_assert!(r.eval_var(1, &x0).is_zero());
    }

    #[test]
    fn moments_and_cumulants_round_trip(v in prop::collection::vec((-30i64..=30, -30i64..=30), 10)) {
        let mut moments = vec![BigComplex::from_f64(256, 1.0, 0.0)];
        moments.extend(point(&v));
        let c = cumulants_from_moments(&moments, 10).unwrap();
        let back = moments_from_cumulants(&c, 10, 256);
        for (m, b) in moments.iter().zip(&back) {
            prop_assert!(m.dist(b).to_f64() < 1e-60 * m.abs_f64().max(1.0));
        }
        let again: BTreeMap<usize, BigComplex> = cumulants_from_moments(&back, 10).unwrap();
        for k in 1..=10 {
            prop_assert!(again[&k].dist(&c[&k]).to_f64() < 1e-50 * c[&k].abs_f64().max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn quartic_zeros_interlace(n in 2usize..=16) {
        let el = Eliminator::new(&Theory::Quartic.spec(), n + 1).unwrap();
        let real = |m: usize| -> Vec<f64> {
            let e = el.eliminate(m, &ClosureScheme::unbiased(), 256).unwrap();
            let mut v: Vec<f64> = e.base_roots(256).unwrap().roots.iter().map(|z| z.re_f64()).collect();
            v.extend(std::iter::repeat(0.0).take(e.trivial_roots));
            v.sort_by(f64::total_cmp);
            v
        };
        let (a, b) = (real(n), real(n + 1));
        prop_assert_eq!(a.len() + 1, b.len());
        for (j, x) in a.iter().enumerate() {
            prop_assert!(b[j] < *x && *x < b[j + 1], "n = {}: {:?} vs {:?}", n, a, b);
        }
    }
}

#[test]
fn cubic_coefficient_sums_are_powers_of_two() {
    let tower = standard_tower(&Theory::Cubic.spec(), 20).unwrap();
    for eq in &tower.equations {
        let p = eq.solved();
        let sum: Rational = p
            .terms()
            .filter(|(m, _)| m.degree() > 0)
            .map(|(_, c)| Rational::from(c.re.abs_ref()) + Rational::from(c.im.abs_ref()))
            .sum();
        assert_eq!(sum, Rational::from(1u64 << (eq.top - 2)), "G_{}", eq.top);
    }
}

#[test]
fn quartic_exact_values_alternate_in_sign() {
    let table = exact_green_table(&Theory::Quartic.spec(), 40, 256).unwrap();
    for n in 1..=20 {
        let g = table[&(2 * n)].re_f64();
        assert_eq!(g > 0.0, n % 2 == 1, "G_{}", 2 * n);
    }
}
