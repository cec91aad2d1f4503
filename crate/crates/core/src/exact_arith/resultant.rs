//! Sylvester resultants over the Gaussian rationals.
//!
//! The determinant of the Sylvester matrix is computed by evaluating the
//! remaining variables at small integers, taking fraction-free (Bareiss)
//! determinants of the resulting Gaussian-integer matrices, and recovering
//! the polynomial by Newton interpolation.

use rug::Integer;

use super::gauss::{GaussInt, GaussRational};
use super::multipoly::MultiPoly;
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

type Poly = MultiPoly<GaussRational>;

/// Sylvester matrix of `p` and `q` with respect to `G_index`.
pub fn sylvester(p: &Poly, q: &Poly, index: usize) -> Vec<Vec<Poly>> {
    let pc = p.coeffs_in(index);
    let qc = q.coeffs_in(index);
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![Poly::zero(); size];
        for (j, c) in pc.iter().rev().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![Poly::zero(); size];
        for (j, c) in qc.iter().rev().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `Res_{G_index}(p, q)`.
pub fn resultant(p: &Poly, q: &Poly, index: usize) -> Result<Poly> {
    if !p.contains(index) || !q.contains(index) {
        return Err(Error::VariableAbsent { var: index });
    }
    let m = sylvester(p, q, index);
    Ok(determinant(&m))
}

/// Determinant of a square matrix with polynomial entries.
pub fn determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    if m.iter().any(|row| row.iter().all(Poly::is_zero)) {
        return Poly::zero();
    }
    if (0..n).any(|j| m.iter().all(|row| row[j].is_zero())) {
        return Poly::zero();
    }
    let mut var = None;
    for row in m {
        for e in row {
            if let Some(t) = e.top_var() {
                var = Some(var.map_or(t, |v: usize| v.max(t)));
            }
        }
    }
    let Some(y) = var else {
        let consts: Vec<Vec<GaussRational>> = m
            .iter()
            .map(|row| row.iter().map(Poly::constant_term).collect())
            .collect();
        return Poly::constant(det_constant(&consts));
    };
    let bound = degree_bound(m, y);
    let points: Vec<i64> = (0..=bound as i64)
        .map(|j| if j % 2 == 1 { (j + 1) / 2 } else { -(j / 2) })
        .collect();
    let mut values = Vec::with_capacity(points.len());
    for &x in &points {
        let xv = GaussRational::from_i64(x);
        let sub: Vec<Vec<Poly>> = m
            .iter()
            .map(|row| row.iter().map(|e| e.eval_var(y, &xv)).collect())
            .collect();
        values.push(determinant(&sub));
    }
    newton_interpolate(y, &points, values)
}

fn degree_bound(m: &[Vec<Poly>], y: usize) -> usize {
    let n = m.len();
    let row_sum: usize = m
        .iter()
        .map(|row| row.iter().map(|e| e.degree_in(y) as usize).max().unwrap_or(0))
        .sum();
    let col_sum: usize = (0..n)
        .map(|j| m.iter().map(|row| row[j].degree_in(y) as usize).max().unwrap_or(0))
        .sum();
    row_sum.min(col_sum)
}

fn newton_interpolate(y: usize, points: &[i64], mut values: Vec<Poly>) -> Poly {
    let n = points.len();
    // In-place divided differences.
    for k in 1..n {
        for i in (k..n).rev() {
            let denom = GaussRational::from_i64(points[i] - points[i - k]);
            let inv = denom.inv_ref().expect("distinct points");
            let diff = values[i].sub(&values[i - 1]);
            values[i] = diff.scale(&inv);
        }
    }
    let mut acc = Poly::zero();
    let yv = Poly::var(y);
    for k in (0..n).rev() {
        let factor = yv.sub(&Poly::constant(GaussRational::from_i64(points[k])));
        acc = acc.mul(&factor).add(&values[k]);
    }
    acc
}

/// Determinant of a Gaussian-rational matrix: rows are scaled to Gaussian
/// integers, then Bareiss elimination is applied.
pub fn det_constant(m: &[Vec<GaussRational>]) -> GaussRational {
    let mut scale = Integer::from(1);
    let mut rows = Vec::with_capacity(m.len());
    for row in m {
        let mut l = Integer::from(1);
        for e in row {
            l.lcm_mut(&e.denom_lcm());
        }
        rows.push(row.iter().map(|e| e.scaled_to_int(&l)).collect::<Vec<_>>());
        scale *= l;
    }
    let d = bareiss(rows);
    let d: GaussRational = d.into();
    d.scale(&rug::Rational::from((Integer::from(1), scale)))
}

/// Fraction-free determinant over the Gaussian integers.
pub fn bareiss(mut a: Vec<Vec<GaussInt>>) -> GaussInt {
    let n = a.len();
    if n == 0 {
        return GaussInt::one();
    }
    let mut sign_neg = false;
    let mut prev = GaussInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign_neg = !sign_neg;
                }
                None => return GaussInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let mut t = a[i][j].mul_ref(&a[k][k]);
                let u = a[i][k].mul_ref(&a[k][j]);
                t.sub_assign_ref(&u);
                a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = GaussInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_neg {
        d.neg_ref()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussRational {
        GaussRational::from_i64(n)
    }

    #[test]
    fn linear_resultant_is_difference() {
        // Res_x(x - a, x - b) with a = G_2, b = G_3
        let x = Poly::var(1);
        let p = x.sub(&Poly::var(2));
        let r = x.sub(&Poly::var(3));
        let res = resultant(&p, &r, 1).unwrap();
        assert_eq!(res, Poly::var(2).sub(&Poly::var(3)));
    }

    #[test]
    fn quadratic_against_linear() {
        // Res_x(x^2 - y, x - 2) = 4 - y with x = G_1, y = G_2
        let p = Poly::var(1).pow(2).sub(&Poly::var(2));
        let r = Poly::var(1).sub(&Poly::constant(q(2)));
        let res = resultant(&p, &r, 1).unwrap();
        assert_eq!(res, Poly::constant(q(4)).sub(&Poly::var(2)));
    }

    #[test]
    fn absent_variable_is_an_error() {
        let p = Poly::var(1);
        let r = Poly::var(2);
        assert!(matches!(resultant(&p, &r, 1), Err(Error::VariableAbsent { var: 1 })));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = vec![
            vec![GaussInt::new(2, 1), GaussInt::new(0, 3), GaussInt::new(1, 0)],
            vec![GaussInt::new(-1, 0), GaussInt::new(4, -2), GaussInt::new(0, 0)],
            vec![GaussInt::new(0, 0), GaussInt::new(5, 0), GaussInt::new(-3, 1)],
        ];
        let cof = |a: &GaussInt, b: &GaussInt, c: &GaussInt, d: &GaussInt| {
            let mut t = a.mul_ref(d);
            t.sub_assign_ref(&b.mul_ref(c));
            t
        };
        let mut want = m[0][0].mul_ref(&cof(&m[1][1], &m[1][2], &m[2][1], &m[2][2]));
        want.sub_assign_ref(&m[0][1].mul_ref(&cof(&m[1][0], &m[1][2], &m[2][0], &m[2][2])));
        want.add_assign_ref(&m[0][2].mul_ref(&cof(&m[1][0], &m[1][1], &m[2][0], &m[2][1])));
        assert_eq!(bareiss(m), want);
    }

    #[test]
    fn bivariate_determinant_interpolates() {
        // Res_{G_1}(G_1^2 + G_2 G_1 + G_3, G_1 - G_2) = 2 G_2^2 + G_3
        let p = Poly::var(1)
            .pow(2)
            .add(&Poly::var(2).mul(&Poly::var(1)))
            .add(&Poly::var(3));
        let r = Poly::var(1).sub(&Poly::var(2));
        let res = resultant(&p, &r, 1).unwrap();
        let want = Poly::var(2).pow(2).scale(&q(2)).add(&Poly::var(3));
        assert_eq!(res, want);
    }
}
