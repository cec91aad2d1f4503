use std::collections::BTreeMap;

use super::bell::{bell_table, to_rational};
use super::theory::TheorySpec;
use crate::error::{Error, Result};
use crate::exact_arith::{GPoly, GaussRational, Field, Ring};

/// One equation of the tower, solved for its top Green's function:
/// `G_top = rhs + inhomogeneous`.
#[derive(Clone, Debug, PartialEq)]
pub struct DSEquation {
    /// Number of source derivatives applied to the field equation.
    pub level: usize,
    pub top: usize,
    pub rhs: GPoly,
    pub inhomogeneous: GaussRational,
}

impl DSEquation {
    /// `rhs + inhomogeneous` as a single polynomial.
    pub fn solved(&self) -> GPoly {
        self.rhs.add(&GPoly::constant(self.inhomogeneous.clone()))
    }

    /// `G_top − rhs − inhomogeneous`, which vanishes on solutions.
    pub fn residual_poly(&self) -> GPoly {
        GPoly::var(self.top).sub(&self.solved())
    }
}

#[derive(Clone, Debug)]
pub struct DSTower {
    pub theory: TheorySpec,
    pub equations: Vec<DSEquation>,
    /// Levels removed because they became `0 = 0`.
    pub dropped_levels: Vec<usize>,
    pub parity_reduced: bool,
}

/// Apply `D^n` to `v·B_{m−1} = J` for `n = 0 … levels−1` and solve each
/// equation for its new top Green's function.
pub fn ds_tower(theory: &TheorySpec, levels: usize) -> Result<DSTower> {
    if levels < 1 {
        return Err(Error::InvalidArgument("tower needs at least one level".into()));
    }
    let m = theory.exponent as usize;
    let base = bell_table(m - 1).pop().expect("nonempty");
    let v_inv = theory.vertex.inv_ref().expect("unit vertex");
    let mut current = base;
    let mut equations = Vec::with_capacity(levels);
    for level in 0..levels {
        let top = theory.top_index(level);
        let p = to_rational(&current);
        debug_assert!(p.coeff(&[(top, 1)]).is_one());
        let rest = p.sub(&GPoly::var(top));
        let inhomogeneous = if level == 1 { v_inv.clone() } else { GaussRational::zero() };
        equations.push(DSEquation {
            level,
            top,
            rhs: rest.neg(),
            inhomogeneous,
        });
        if level + 1 < levels {
            current = current.derive();
        }
    }
    Ok(DSTower {
        theory: theory.clone(),
        equations,
        dropped_levels: Vec::new(),
        parity_reduced: false,
    })
}

/// Tower whose last equation determines `G_top_index` (or the first index above it).
pub fn ds_tower_to_index(theory: &TheorySpec, top_index: usize) -> Result<DSTower> {
    let first = theory.top_index(0);
    let levels = top_index.saturating_sub(first) + 1;
    ds_tower(theory, levels)
}

/// Set all odd Green's functions to zero and drop the resulting `0 = 0` levels.
pub fn parity_reduce(tower: &DSTower) -> Result<DSTower> {
    if !tower.theory.parity_symmetric {
        return Err(Error::NotParitySymmetric {
            theory: tower.theory.name().to_string(),
        });
    }
    let mut equations = Vec::new();
    let mut dropped = tower.dropped_levels.clone();
    for eq in &tower.equations {
        let mut rhs = eq.rhs.clone();
        for k in rhs.support() {
            if k % 2 == 1 {
                rhs = rhs.eval_var(k, &GaussRational::zero());
            }
        }
        if eq.top % 2 == 1 {
            if !rhs.is_zero() || !eq.inhomogeneous.is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "odd equation for G_{} survives parity reduction",
                    eq.top
                )));
            }
            dropped.push(eq.level);
            continue;
        }
        equations.push(DSEquation {
            level: eq.level,
            top: eq.top,
            rhs,
            inhomogeneous: eq.inhomogeneous.clone(),
        });
    }
    Ok(DSTower {
        theory: tower.theory.clone(),
        equations,
        dropped_levels: dropped,
        parity_reduced: true,
    })
}

/// The tower in the form used for a theory: parity-reduced when symmetric.
pub fn standard_tower(theory: &TheorySpec, top_index: usize) -> Result<DSTower> {
    let t = ds_tower_to_index(theory, top_index)?;
    if theory.parity_symmetric {
        parity_reduce(&t)
    } else {
        Ok(t)
    }
}

impl DSTower {
    pub fn equation_for(&self, top: usize) -> Option<&DSEquation> {
        self.equations.iter().find(|e| e.top == top)
    }

    pub fn max_index(&self) -> usize {
        self.equations.last().map_or(0, |e| e.top)
    }

    /// Every determined `G_k` as a polynomial in the base unknowns, by
    /// successive substitution down the tower.
    pub fn reduce_to_base(&self) -> Result<BTreeMap<usize, GPoly>> {
        let mut solved: BTreeMap<usize, GPoly> = BTreeMap::new();
        for eq in &self.equations {
            let mut p = eq.solved();
            for k in p.support().into_iter().rev() {
                if let Some(r) = solved.get(&k) {
                    p = p.substitute(k, r)?;
                }
            }
            solved.insert(eq.top, p);
        }
        Ok(solved)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ds_generator::Theory;
    use crate::exact_arith::text::parse_human;

    #[test]
    fn quartic_first_equation() {
        let t = standard_tower(&Theory::Quartic.spec(), 4).unwrap();
        assert_eq!(t.equations[0].top, 4);
        assert_eq!(t.equations[0].solved(), parse_human("-3G_2^2 + 1").unwrap());
        assert_eq!(t.dropped_levels, vec![0]);
    }

    #[test]
    fn cubic_second_equation() {
        let t = ds_tower(&Theory::Cubic.spec(), 2).unwrap();
        assert_eq!(t.equations[0].solved(), parse_human("-G_1^2").unwrap());
        assert_eq!(t.equations[1].solved(), parse_human("-2G_1G_2 - i").unwrap());
    }

    #[test]
    fn quintic_inhomogeneous_term() {
        let t = ds_tower(&Theory::Quintic.spec(), 2).unwrap();
        assert_eq!(t.equations[1].inhomogeneous, GaussRational::i());
    }

    #[test]
    fn sextic_parity_tower() {
        let t = standard_tower(&Theory::Sextic.spec(), 8).unwrap();
        assert_eq!(
            t.equation_for(6).unwrap().solved(),
            parse_human("-15G_2^3-15G_2G_4+1").unwrap()
        );
        assert_eq!(
            t.equation_for(8).unwrap().solved(),
            parse_human("-60G_2^4-165G_2^2G_4-35G_4^2-25G_2G_6").unwrap()
        );
    }

    #[test]
    fn parity_reduce_rejects_cubic() {
        let t = ds_tower(&Theory::Cubic.spec(), 3).unwrap();
        assert!(matches!(parity_reduce(&t), Err(Error::NotParitySymmetric { .. })));
    }

    #[test]
    fn towers_are_triangular() {
        for th in crate::ds_generator::Theory::ALL {
            let t = ds_tower(&th.spec(), 6).unwrap();
            for eq in &t.equations {
                assert!(eq.rhs.support().iter().all(|&k| k < eq.top));
            }
        }
    }
}
