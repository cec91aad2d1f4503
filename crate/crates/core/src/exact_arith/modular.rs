//! Coprimality certificates by reduction modulo a prime `p ≡ 1 (mod 4)`,
//! where `i` maps to a square root of −1 in `F_p`.

use rug::Integer;

use super::gauss::GaussRational;
use super::unipoly::UniPoly;

/// `(p, √−1 mod p)`.
const PRIMES: [(u64, u64); 2] = [
    (4_611_686_018_427_387_817, 120_863_620_846_201_794),
    (4_611_686_018_427_387_761, 1_130_501_565_556_633_554),
];

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn int_mod(x: &Integer, p: &Integer) -> u64 {
    let r = Integer::from(x % p);
    let r = if r < 0 { r + p } else { r };
    r.to_u64().expect("reduced below p")
}

fn reduce(c: &GaussRational, p: u64, root: u64) -> Option<u64> {
    let pi = Integer::from(p);
    let part = |q: &rug::Rational| -> Option<u64> {
        let d = int_mod(q.denom(), &pi);
        (d != 0).then(|| mul(int_mod(q.numer(), &pi), inv(d, p), p))
    };
    let re = part(&c.re)?;
    let im = part(&c.im)?;
    Some((re + mul(im, root, p)) % p)
}

fn reduce_poly(f: &UniPoly<GaussRational>, p: u64, root: u64) -> Option<Vec<u64>> {
    let v = f
        .coeffs()
        .iter()
        .map(|c| reduce(c, p, root))
        .collect::<Option<Vec<_>>>()?;
    // The degree must survive reduction.
    (v.last().is_some_and(|&c| c != 0)).then_some(v)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lead = inv(*b.last().expect("nonempty"), p);
        while a.len() >= b.len() {
            let c = mul(*a.last().expect("nonempty"), lead, p);
            let shift = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                let t = mul(c, *bj, p);
                a[shift + j] = (a[shift + j] + p - t) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// `true` only when `f` and `g` are certainly coprime over the Gaussian
/// rationals; `false` means undecided.
pub fn certainly_coprime(f: &UniPoly<GaussRational>, g: &UniPoly<GaussRational>) -> bool {
    if f.degree() == 0 || g.degree() == 0 {
        return !f.is_zero() && !g.is_zero();
    }
    PRIMES.iter().any(|&(p, root)| match (reduce_poly(f, p, root), reduce_poly(g, p, root)) {
        (Some(a), Some(b)) => gcd_degree(a, b, p) == 0,
        _ => false,
    })
}

/// Squarefree part, skipping the exact gcd when `f` is certainly squarefree.
pub fn squarefree_part_fast(f: &UniPoly<GaussRational>) -> UniPoly<GaussRational> {
    if certainly_coprime(f, &f.derivative()) {
        f.monic()
    } else {
        f.squarefree_part()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::Ring;

    fn poly(cs: &[(i64, i64)]) -> UniPoly<GaussRational> {
        UniPoly::new(cs.iter().map(|&(a, b)| GaussRational::from_ratio(a, b)).collect())
    }

    #[test]
    fn root_of_minus_one() {
        for (p, r) in PRIMES {
            assert_eq!(mul(r, r, p), p - 1);
        }
    }

    #[test]
    fn detects_coprime_and_shared_factor() {
        // (x − 1/3)(x + 2) against (x − 1/3)(x − 5) and x − 7
        let a = poly(&[(-2, 3), (5, 3), (1, 1)]);
        let b = poly(&[(5, 3), (-16, 3), (1, 1)]);
        let c = poly(&[(-7, 1), (1, 1)]);
        assert!(!certainly_coprime(&a, &b));
        assert!(certainly_coprime(&a, &c));
    }

    #[test]
    fn gaussian_coefficients() {
        // x² + 1 = (x − i)(x + i) shares x − i with x − i
        let a = poly(&[(1, 1), (0, 1), (1, 1)]);
        let b = UniPoly::new(vec![GaussRational::new(0, -1), GaussRational::from_i64(1)]);
        assert!(!certainly_coprime(&a, &b));
        assert_eq!(squarefree_part_fast(&a), a);
    }
}
