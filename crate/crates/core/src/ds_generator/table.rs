use std::collections::BTreeMap;

use super::tower::DSTower;
use crate::error::{Error, Result};
use crate::exact_arith::BigComplex;

/// Numeric `G_1 … G_max` by forward substitution down the tower.
///
/// `seeds` must supply every base unknown; indices not determined by the
/// tower or the seeds (odd ones after parity reduction) are zero.
pub fn exact_table(
    tower: &DSTower,
    seeds: &BTreeMap<usize, BigComplex>,
    max_index: usize,
    prec: u32,
) -> Result<BTreeMap<usize, BigComplex>> {
    for k in tower.theory.base_unknowns() {
        if !seeds.contains_key(&k) {
            return Err(Error::MissingSeed { var: k });
        }
    }
    if max_index > tower.max_index() {
        return Err(Error::InvalidArgument(format!(
            "tower reaches G_{}, table requested to G_{max_index}",
            tower.max_index()
        )));
    }
    let mut values: BTreeMap<usize, BigComplex> = BTreeMap::new();
    for k in 1..=max_index {
        values.insert(k, BigComplex::zero(prec));
    }
    for (k, v) in seeds {
        values.insert(*k, v.with_prec(prec));
    }
    for eq in &tower.equations {
        if eq.top > max_index {
            break;
        }
        let p = eq.solved();
        let vars: Vec<usize> = p.vars().to_vec();
        let point: Vec<BigComplex> = vars.iter().map(|k| values[k].clone()).collect();
        let v = p.eval(&vars, &point, prec)?;
        values.insert(eq.top, v);
    }
    Ok(values)
}
