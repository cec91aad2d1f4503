//! Reduction of a truncated tower to one univariate polynomial in a base
//! unknown, with the data needed to recover the remaining unknowns.

mod closure;
mod coupled;

pub use closure::{closure_indices, min_order, ClosureKind, ClosureScheme};
pub use coupled::{tolerance_log10, RootSplit, SystemRoot};

use rug::{Integer, Rational};

use crate::ds_generator::{BaseExpansion, Theory, TheorySpec};
use crate::error::{Error, Result};
use crate::exact_arith::{BigComplex, Field, GPoly, GaussRational, Ring, XPoly};
use crate::exact_arith::modular::squarefree_part_fast;
use crate::rootfinder::{all_roots, RootSet};

/// Outcome of eliminating all but one unknown from a truncated tower.
#[derive(Clone, Debug)]
pub struct EliminationResult {
    pub theory: Theory,
    pub order: usize,
    pub scheme: ClosureKind,
    /// Green's-function indices that were closed.
    pub closure: Vec<usize>,
    pub base_unknown: usize,
    /// The polynomial variable `x` relates to the base unknown by
    /// `G_base = variable_scale · x`.
    pub variable_scale: GaussRational,
    /// Monic, exact.
    pub final_poly: XPoly,
    /// Multiplicity of the removed root `x = 0`.
    pub trivial_roots: usize,
    /// Closure equations `G_c − A_c = 0` as polynomials in the base unknowns.
    pub system: Vec<GPoly>,
    /// `G_k` in the base unknowns for every index up to the top closure index.
    pub back_substitution: Vec<(usize, GPoly)>,
    /// Exact factors divided out of the eliminant, besides `x^trivial_roots`.
    pub spurious_factors: Vec<XPoly>,
    /// For coupled systems: numeric roots split by back-substitution residual.
    pub root_split: Option<RootSplit>,
}

impl EliminationResult {
    /// Roots of `final_poly`, expressed as values of the base unknown.
    pub fn base_roots(&self, prec: u32) -> Result<RootSet> {
        let rs = all_roots(&self.final_poly, prec)?;
        let scale = BigComplex::from_gauss(rs.precision_bits, &self.variable_scale);
        Ok(rs
            .scaled(&scale)
            .with_id(format!("{}-n{}-{:?}", self.theory, self.order, self.scheme).to_lowercase()))
    }

    /// `final_poly · x^trivial_roots`.
    pub fn with_trivial_roots(&self) -> XPoly {
        self.final_poly.mul(&XPoly::x_pow(self.trivial_roots))
    }

    /// The final polynomial in the base unknown itself (`x → G/scale`), monic.
    pub fn poly_in_base(&self) -> XPoly {
        let inv = self.variable_scale.inv_ref().expect("nonzero scale");
        self.final_poly.scale_var(&inv).monic()
    }
}

/// Caches the base expansion so that sweeps over many orders share it.
pub struct Eliminator {
    spec: TheorySpec,
    expansion: BaseExpansion,
}

impl Eliminator {
    /// Prepare for truncation orders up to `max_order`.
    pub fn new(spec: &TheorySpec, max_order: usize) -> Result<Self> {
        let top = closure_indices(spec.theory, max_order.max(min_order(spec.theory)))?
            .into_iter()
            .max()
            .expect("nonempty");
        Ok(Eliminator {
            spec: spec.clone(),
            expansion: BaseExpansion::new(spec, top),
        })
    }

    pub fn spec(&self) -> &TheorySpec {
        &self.spec
    }

    pub fn expansion(&self) -> &BaseExpansion {
        &self.expansion
    }

    fn ensure_range(&self, top: usize) -> Result<()> {
        if top > self.expansion.max_index() {
            return Err(Error::InvalidArgument(format!(
                "order needs G_{top}; eliminator prepared to G_{}",
                self.expansion.max_index()
            )));
        }
        Ok(())
    }

    fn closure_system(&self, n: usize, scheme: &ClosureScheme, prec: u32) -> Result<(Vec<usize>, Vec<GPoly>)> {
        scheme.check(self.spec.theory)?;
        let closure = closure_indices(self.spec.theory, n)?;
        let top = *closure.iter().max().expect("nonempty");
        self.ensure_range(top)?;
        let mut system = Vec::with_capacity(closure.len());
        for &c in &closure {
            let a = scheme.closure_value(c, prec)?;
            system.push(self.expansion.get(c).sub(&GPoly::constant(a)));
        }
        Ok((closure, system))
    }

    fn back_substitution(&self, top: usize) -> Vec<(usize, GPoly)> {
        let base = self.spec.base_unknowns();
        (1..=top)
            .filter(|k| !base.contains(k))
            .map(|k| (k, self.expansion.get(k)))
            .filter(|(_, p)| !p.is_zero() || !self.spec.parity_symmetric)
            .collect()
    }

    /// Single-unknown theories: the closure equation is already univariate.
    pub fn triangular(&self, n: usize, scheme: &ClosureScheme, prec: u32) -> Result<EliminationResult> {
        let base = self.spec.base_unknowns();
        if base.len() != 1 {
            return Err(Error::WrongEliminator {
                theory: self.spec.name().to_string(),
                unknowns: base.len(),
                suggested: "coupled_eliminate",
            });
        }
        let b = base[0];
        let (closure, system) = self.closure_system(n, scheme, prec)?;
        let scale = variable_scale(self.spec.theory);
        let u = system[0].to_unipoly(b)?.scale_var(&scale);
        let (stripped, trivial) = u.strip_zero_roots();
        Ok(EliminationResult {
            theory: self.spec.theory,
            order: n,
            scheme: scheme.kind,
            back_substitution: self.back_substitution(closure[0]),
            closure,
            base_unknown: b,
            variable_scale: scale,
            final_poly: stripped.monic(),
            trivial_roots: trivial,
            system,
            spurious_factors: Vec::new(),
            root_split: None,
        })
    }

    /// Two- and three-unknown theories: iterated resultants, then residual
    /// classification of the eliminant's roots.
    pub fn coupled(&self, n: usize, scheme: &ClosureScheme, prec: u32) -> Result<EliminationResult> {
        let base = self.spec.base_unknowns();
        if base.len() == 1 {
            return self.triangular(n, scheme, prec);
        }
        let (closure, system) = self.closure_system(n, scheme, prec)?;
        let top = *closure.iter().max().expect("nonempty");
        let elim = coupled::eliminate(&system, &base)?;
        let (stripped, trivial) = elim.eliminant.strip_zero_roots();
        let mut spurious = Vec::new();
        let squarefree = squarefree_part_fast(&stripped);
        let repeated = stripped.monic().div_rem(&squarefree).expect("nonzero").0;
        if repeated.degree() > 0 {
            spurious.push(repeated);
        }
        let (candidate, lc_factor) = coupled::remove_leading_coefficient_factor(&squarefree, &elim);
        if let Some(f) = lc_factor {
            spurious.push(f);
        }
        let candidate = candidate.monic();
        let mut split = coupled::classify(&candidate, &system, &base, &elim, prec)?;
        for f in &spurious {
            let extra = coupled::classify(&squarefree_part_fast(f), &system, &base, &elim, prec)?;
            split.spurious.extend(extra.accepted);
            split.spurious.extend(extra.spurious);
        }
        let final_poly = match split_exactly(&candidate, &split, base[0], prec) {
            Some((accepted, rejected)) => {
                spurious.push(rejected);
                accepted
            }
            None => candidate,
        };
        Ok(EliminationResult {
            theory: self.spec.theory,
            order: n,
            scheme: scheme.kind,
            back_substitution: self.back_substitution(top),
            closure,
            base_unknown: base[0],
            variable_scale: GaussRational::one(),
            final_poly,
            trivial_roots: trivial,
            system,
            spurious_factors: spurious,
            root_split: Some(split),
        })
    }

    pub fn eliminate(&self, n: usize, scheme: &ClosureScheme, prec: u32) -> Result<EliminationResult> {
        if self.spec.base_unknowns().len() == 1 {
            self.triangular(n, scheme, prec)
        } else {
            self.coupled(n, scheme, prec)
        }
    }
}

/// Exact `(accepted, spurious)` factorisation of `p` matching the numeric split.
fn split_exactly(p: &XPoly, split: &RootSplit, x: usize, prec: u32) -> Option<(XPoly, XPoly)> {
    if split.accepted.is_empty() || split.spurious.is_empty() {
        return None;
    }
    let acc: Vec<&BigComplex> = split.accepted.iter().filter_map(|r| r.value(x)).collect();
    let rej: Vec<&BigComplex> = split.spurious.iter().filter_map(|r| r.value(x)).collect();
    let (a, r) = if acc.len() <= rej.len() {
        let a = coupled::exact_factor(p, &acc, prec)?;
        let r = p.div_rem(&a)?.0;
        (a, r)
    } else {
        let r = coupled::exact_factor(p, &rej, prec)?;
        let a = p.div_rem(&r)?.0;
        (a, r)
    };
    Some((a.monic(), r.monic()))
}

/// Cubic polynomials are written in `x = G_1 / i`, which makes them real.
fn variable_scale(theory: Theory) -> GaussRational {
    match theory {
        Theory::Cubic => GaussRational::i(),
        _ => GaussRational::one(),
    }
}

pub fn triangular_eliminate(spec: &TheorySpec, n: usize, scheme: &ClosureScheme, prec: u32) -> Result<EliminationResult> {
    Eliminator::new(spec, n)?.triangular(n, scheme, prec)
}

pub fn coupled_eliminate(spec: &TheorySpec, n: usize, scheme: &ClosureScheme, prec: u32) -> Result<EliminationResult> {
    Eliminator::new(spec, n)?.coupled(n, scheme, prec)
}

/// Scale a polynomial by the inverse of its rational content so that its
/// coefficients are coprime Gaussian integers.
pub(crate) fn primitive(p: &GPoly) -> GPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut den = Integer::from(1);
    let mut num = Integer::new();
    for c in p.coeff_values() {
        den.lcm_mut(&c.denom_lcm());
        num.gcd_mut(c.re.numer());
        num.gcd_mut(c.im.numer());
    }
    let k = GaussRational::real(Rational::from((den, num)));
    p.scale(&k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::text::unipoly_human;

    #[test]
    fn quartic_four_unbiased() {
        let r = triangular_eliminate(&Theory::Quartic.spec(), 4, &ClosureScheme::unbiased(), 256).unwrap();
        assert_eq!(unipoly_human(&r.final_poly, "x"), "x^4 - (8/15)x^2 + 1/21");
        assert_eq!(r.trivial_roots, 0);
    }

    #[test]
    fn cubic_six_unbiased() {
        let r = triangular_eliminate(&Theory::Cubic.spec(), 6, &ClosureScheme::unbiased(), 256).unwrap();
        assert_eq!(unipoly_human(&r.final_poly, "x"), "x^6 + (1/2)x^3 + 1/20");
    }

    #[test]
    fn triangular_rejects_coupled_theories() {
        let e = triangular_eliminate(&Theory::NegQuartic.spec(), 4, &ClosureScheme::unbiased(), 256);
        assert!(matches!(e, Err(Error::WrongEliminator { .. })));
    }
}
