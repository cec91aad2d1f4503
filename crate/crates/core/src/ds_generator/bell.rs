//! Complete Bell polynomials: the raw moment `⟨φ^k⟩` in terms of the
//! cumulants `G_1, …, G_k`.

use crate::error::{Error, Result};
use crate::exact_arith::{GPoly, GaussInt, GaussRational, MultiPoly};

/// `B_0, …, B_kmax` over the Gaussian integers, via `B_{k+1} = (G_1 + D) B_k`.
pub fn bell_table(kmax: usize) -> Vec<MultiPoly<GaussInt>> {
    let mut out = vec![MultiPoly::one()];
    let g1 = MultiPoly::var(1);
    for k in 0..kmax {
        let next = g1.mul(&out[k]).add(&out[k].derive());
        out.push(next);
    }
    out
}

/// `B_k(G_1, …, G_k)`.
pub fn moment_in_cumulants(k: usize) -> Result<GPoly> {
    if k < 1 {
        return Err(Error::InvalidArgument("moment order must be at least 1".into()));
    }
    Ok(to_rational(&bell_table(k)[k]))
}

pub(crate) fn to_rational(p: &MultiPoly<GaussInt>) -> GPoly {
    p.map_coeffs(|c| GaussRational::from(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::text::parse_human;
    use rug::Integer;

    #[test]
    fn low_orders() {
        assert_eq!(moment_in_cumulants(1).unwrap(), parse_human("G_1").unwrap());
        assert_eq!(
            moment_in_cumulants(3).unwrap(),
            parse_human("G_3 + 3G_1G_2 + G_1^3").unwrap()
        );
        assert_eq!(
            moment_in_cumulants(5).unwrap(),
            parse_human("G_5+5G_1G_4+10G_2G_3+10G_1^2G_3+15G_1G_2^2+10G_1^3G_2+G_1^5").unwrap()
        );
        assert!(moment_in_cumulants(0).is_err());
    }

    #[test]
    fn coefficient_sums_are_bell_numbers() {
        let bell = [1u64, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
        let table = bell_table(10);
        for (k, b) in table.iter().enumerate() {
            let mut s = Integer::new();
            for c in b.coeff_values() {
                s += &c.re;
            }
            assert_eq!(s, bell[k], "k = {k}");
        }
    }
}
