use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_arith::BigComplex;

/// Extrapolated limit with the order chosen on the stability plateau.
#[derive(Clone, Debug)]
pub struct Extrapolation {
    pub value: BigComplex,
    /// Number of `1/n` correction terms eliminated.
    pub order: usize,
    /// `|E_order − E_{order−1}|`, the stability diagnostic; for order 0 the
    /// last step of the sequence.
    pub spread: f64,
    /// Estimates for orders `0..=maxOrder`.
    pub table: Vec<BigComplex>,
}

impl Serialize for Extrapolation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Extrapolation", 4)?;
        st.serialize_field("re", &crate::exact_arith::fmt_float(&self.value.re, 20))?;
        st.serialize_field("im", &crate::exact_arith::fmt_float(&self.value.im, 20))?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("spread", &self.spread)?;
        st.end()
    }
}

/// Neville extrapolation to `1/n → 0` of the last `k + 1` points.
fn neville_at_zero(points: &[(usize, BigComplex)], prec: u32) -> BigComplex {
    let xs: Vec<Float> = points
        .iter()
        .map(|(n, _)| Float::with_val(prec, 1) / Float::with_val(prec, *n))
        .collect();
    let mut p: Vec<BigComplex> = points.iter().map(|(_, v)| v.with_prec(prec)).collect();
    let m = p.len();
    for k in 1..m {
        for i in 0..m - k {
            // P_{i..i+k}(0) = (x_{i+k} P_{i..i+k−1} − x_i P_{i+1..i+k}) / (x_{i+k} − x_i)
            let a = p[i].scale(&xs[i + k]);
            let b = p[i + 1].scale(&xs[i]);
            let den = Float::with_val(prec, &xs[i + k] - &xs[i]);
            let inv = Float::with_val(prec, 1) / den;
            p[i] = (&a - &b).scale(&inv);
        }
    }
    p.swap_remove(0)
}

/// Iterated polynomial extrapolation in `1/n` of `(n, a_n)` pairs, assuming
/// corrections in integer powers of `1/n`.
pub fn richardson(seq: &[(usize, BigComplex)], max_order: usize) -> Result<Extrapolation> {
    if seq.len() < max_order + 2 {
        return Err(Error::SequenceTooShort {
            needed: max_order + 2,
            have: seq.len(),
        });
    }
    let prec = seq.iter().map(|(_, v)| v.prec()).max().unwrap_or(64) + 64;
    let table: Vec<BigComplex> = (0..=max_order)
        .map(|k| neville_at_zero(&seq[seq.len() - k - 1..], prec))
        .collect();
    // order 0 is judged by the last step of the raw sequence
    let last_step = seq[seq.len() - 1].1.dist(&seq[seq.len() - 2].1).to_f64();
    let mut order = 0;
    let mut spread = last_step;
    for k in 1..table.len() {
        let d = table[k].dist(&table[k - 1]).to_f64();
        if d < spread {
            spread = d;
            order = k;
        }
    }
    if !spread.is_finite() {
        return Err(Error::NonConvergence("extrapolants are not finite".into()));
    }
    Ok(Extrapolation {
        value: table[order].clone(),
        order,
        spread,
        table,
    })
}

/// Convenience form for real sequences indexed from `first`.
pub fn richardson_real(values: &[f64], first: usize, max_order: usize, prec: u32) -> Result<Extrapolation> {
    let seq: Vec<(usize, BigComplex)> = values
        .iter()
        .enumerate()
        .map(|(j, v)| (first + j, BigComplex::from_f64(prec, *v, 0.0)))
        .collect();
    richardson(&seq, max_order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequence() {
        let e = richardson_real(&[2.5; 8], 1, 4, 128).unwrap();
        assert!((e.value.re_f64() - 2.5).abs() < 1e-30);
    }

    #[test]
    fn first_order_correction_removed() {
        let v: Vec<f64> = (1..=10).map(|n| 1.0 + 3.0 / n as f64).collect();
        let e = richardson_real(&v, 1, 3, 128).unwrap();
        assert!((e.value.re_f64() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn too_short() {
        assert!(matches!(
            richardson_real(&[1.0, 2.0], 1, 3, 64),
            Err(Error::SequenceTooShort { needed: 5, have: 2 })
        ));
    }
}
