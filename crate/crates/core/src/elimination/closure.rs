use crate::asymptotics::AsymptoticModel;
use crate::ds_generator::Theory;
use crate::error::{Error, Result};
use crate::exact_arith::{BigComplex, GaussRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureKind {
    Unbiased,
    Asymptotic,
}

/// How the highest Green's functions of a truncated tower are closed.
#[derive(Clone, Debug)]
pub struct ClosureScheme {
    pub kind: ClosureKind,
    pub model: Option<AsymptoticModel>,
}

impl ClosureScheme {
    pub fn unbiased() -> Self {
        ClosureScheme {
            kind: ClosureKind::Unbiased,
            model: None,
        }
    }

    pub fn asymptotic(model: AsymptoticModel) -> Self {
        ClosureScheme {
            kind: ClosureKind::Asymptotic,
            model: Some(model),
        }
    }

    pub(crate) fn check(&self, theory: Theory) -> Result<()> {
        match (&self.kind, &self.model) {
            (ClosureKind::Unbiased, _) => Ok(()),
            (ClosureKind::Asymptotic, None) => Err(Error::InvalidArgument(
                "asymptotic closure needs a growth model".into(),
            )),
            (ClosureKind::Asymptotic, Some(m)) if m.theory != theory => Err(Error::InvalidArgument(
                format!("growth model is for {}, not {theory}", m.theory),
            )),
            _ => Ok(()),
        }
    }

    /// Value assigned to `G_k` at closure, as an exact dyadic rational
    /// equal to the working-precision float.
    pub(crate) fn closure_value(&self, k: usize, prec: u32) -> Result<GaussRational> {
        match (&self.kind, &self.model) {
            (ClosureKind::Unbiased, _) => Ok(GaussRational::default()),
            (ClosureKind::Asymptotic, Some(m)) => {
                let v = m.value_for_index(k, prec).ok_or_else(|| {
                    Error::InvalidArgument(format!("growth law does not cover G_{k}"))
                })?;
                Ok(dyadic(&v))
            }
            (ClosureKind::Asymptotic, None) => unreachable!("checked"),
        }
    }
}

pub(crate) fn dyadic(v: &BigComplex) -> GaussRational {
    let re = v.re.to_rational().unwrap_or_default();
    let im = v.im.to_rational().unwrap_or_default();
    GaussRational::new(re, im)
}

/// Green's-function indices set to their closure values at truncation order `n`.
///
/// * quartic: `G_{2n}`; cubic: `G_n`
/// * −φ⁴: `G_{n−1}, G_n` (n ≥ 4)
/// * quintic: `G_{n−2}, G_{n−1}, G_n` (n ≥ 6)
/// * sextic: `G_{2n+4}, G_{2n+6}` (n ≥ 1)
pub fn closure_indices(theory: Theory, n: usize) -> Result<Vec<usize>> {
    let bad = |min: usize| {
        Err(Error::InvalidArgument(format!(
            "truncation order for {theory} must be at least {min}, got {n}"
        )))
    };
    match theory {
        Theory::Quartic if n >= 2 => Ok(vec![2 * n]),
        Theory::Quartic => bad(2),
        Theory::Cubic if n >= 3 => Ok(vec![n]),
        Theory::Cubic => bad(3),
        Theory::NegQuartic if n >= 4 => Ok(vec![n - 1, n]),
        Theory::NegQuartic => bad(4),
        Theory::Quintic if n >= 6 => Ok(vec![n - 2, n - 1, n]),
        Theory::Quintic => bad(6),
        Theory::Sextic if n >= 1 => Ok(vec![2 * n + 4, 2 * n + 6]),
        Theory::Sextic => bad(1),
    }
}

/// Smallest admissible truncation order.
pub fn min_order(theory: Theory) -> usize {
    match theory {
        Theory::Quartic => 2,
        Theory::Cubic => 3,
        Theory::NegQuartic => 4,
        Theory::Quintic => 6,
        Theory::Sextic => 1,
    }
}
