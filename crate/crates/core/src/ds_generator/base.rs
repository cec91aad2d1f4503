//! Green's functions as exact polynomials in the base unknowns, computed from
//! the moment recursion instead of repeated substitution.
//!
//! Integrating `d/dφ (φ^k e^{−vφ^m/m})` over a convergent contour gives
//! `v·μ_{k+m−1} = k·μ_{k−1}`, so every normalized moment is a Gaussian-integer
//! combination of `μ_1 … μ_{m−2}`, which are Bell polynomials of the base
//! unknowns. Cumulants then follow from
//! `G_n = μ_n − Σ_{k<n} C(n−1, k−1) G_k μ_{n−k}`.

use rug::Integer;

use super::bell::{bell_table, to_rational};
use super::theory::TheorySpec;
use crate::exact_arith::{GPoly, GaussInt, MultiPoly, Ring};

type IPoly = MultiPoly<GaussInt>;

/// `G_0 … G_max` (index 0 unused) as polynomials in the base unknowns.
#[derive(Clone, Debug)]
pub struct BaseExpansion {
    pub theory: TheorySpec,
    cumulants: Vec<IPoly>,
}

impl BaseExpansion {
    pub fn new(theory: &TheorySpec, max_index: usize) -> Self {
        let m = theory.exponent as usize;
        let base = theory.base_unknowns();
        let v_inv = unit_inverse(&theory.vertex);
        let bell = bell_table(m - 2);
        let mut moments: Vec<IPoly> = Vec::with_capacity(max_index + 1);
        moments.push(IPoly::one());
        for b in bell.iter().take(m - 1).skip(1) {
            let mut p = b.clone();
            for k in p.support() {
                if !base.contains(&k) {
                    p = p.eval_var(k, &GaussInt::zero());
                }
            }
            moments.push(p);
        }
        while moments.len() <= max_index {
            // μ_{k+m−1} = (k/v) μ_{k−1}
            let idx = moments.len();
            let k = idx + 1 - m;
            let factor = v_inv.scale(&Integer::from(k));
            let next = if k == 0 {
                IPoly::zero()
            } else {
                moments[k - 1].scale(&factor)
            };
            moments.push(next);
        }
        let mut cumulants: Vec<IPoly> = vec![IPoly::zero(); max_index + 1];
        let mut binom_row: Vec<Integer> = vec![Integer::from(1)];
        for n in 1..=max_index {
            // binom_row holds C(n−1, ·)
            let mut g = moments[n].clone();
            for k in 1..n {
                if cumulants[k].is_zero() || moments[n - k].is_zero() {
                    continue;
                }
                let c = GaussInt::new(binom_row[k - 1].clone(), 0);
                let t = cumulants[k].mul(&moments[n - k]).scale(&c);
                g = g.sub(&t);
            }
            cumulants[n] = g;
            let mut next = vec![Integer::from(1); n + 1];
            for j in 1..n {
                next[j] = Integer::from(&binom_row[j - 1] + &binom_row[j]);
            }
            binom_row = next;
        }
        BaseExpansion {
            theory: theory.clone(),
            cumulants,
        }
    }

    pub fn max_index(&self) -> usize {
        self.cumulants.len() - 1
    }

    /// `G_k` over the Gaussian integers.
    pub fn integral(&self, k: usize) -> &MultiPoly<GaussInt> {
        &self.cumulants[k]
    }

    /// `G_k` over the Gaussian rationals.
    pub fn get(&self, k: usize) -> GPoly {
        to_rational(&self.cumulants[k])
    }
}

/// Inverse of a unit Gaussian integer given as a Gaussian rational.
fn unit_inverse(v: &crate::exact_arith::GaussRational) -> GaussInt {
    let re = v.re.numer().clone();
    let im = v.im.numer().clone();
    // 1/(a+bi) = (a−bi) for a² + b² = 1
    GaussInt::new(re, Integer::from(-im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ds_generator::tower::standard_tower;
    use crate::ds_generator::Theory;

    #[test]
    fn moment_route_matches_tower_substitution() {
        for th in Theory::ALL {
            let spec = th.spec();
            let top = spec.top_index(0) + 9;
            let tower = standard_tower(&spec, top).unwrap();
            let reduced = tower.reduce_to_base().unwrap();
            let fast = BaseExpansion::new(&spec, top);
            for (k, p) in &reduced {
                assert_eq!(&fast.get(*k), p, "{th} G_{k}");
            }
        }
    }

    #[test]
    fn base_unknowns_map_to_themselves() {
        let spec = Theory::Quintic.spec();
        let fast = BaseExpansion::new(&spec, 6);
        for k in 1..=3 {
            assert_eq!(fast.get(k), GPoly::var(k));
        }
    }
}
