//! Text forms for exact polynomials.
//!
//! * Canonical: `{re_p/re_q,im_p/im_q}*G2^2*G4 + {1/1,0/1}`, terms in
//!   descending graded-lex order. Bit-exact and used by golden files.
//! * Human: `-3G_2^2 + 1`, `-2G_1G_2 - i`. The parser accepts the same
//!   grammar, with optional braces around indices (`G_{10}`).

use std::cmp::Ordering;

use rug::Rational;

use super::gauss::GaussRational;
use super::multipoly::MultiPoly;
use super::ring::Ring;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

type Poly = MultiPoly<GaussRational>;

fn monomial_canonical(powers: &[(usize, u32)]) -> String {
    powers
        .iter()
        .map(|(k, e)| if *e == 1 { format!("G{k}") } else { format!("G{k}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn to_canonical(p: &Poly) -> String {
    if p.is_zero() {
        return "{0/1,0/1}".to_string();
    }
    p.sparse_terms()
        .iter()
        .map(|(m, c)| {
            let mono = monomial_canonical(m);
            if mono.is_empty() {
                format!("{{{}}}", c.canonical())
            } else {
                format!("{{{}}}*{}", c.canonical(), mono)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn parse_canonical(s: &str) -> Result<Poly> {
    let bad = || Error::Parse(format!("malformed canonical polynomial: {s}"));
    let mut acc = Poly::zero();
    for term in s.split(" + ") {
        let term = term.trim();
        let close = term.find('}').ok_or_else(bad)?;
        if !term.starts_with('{') {
            return Err(bad());
        }
        let c = GaussRational::parse_canonical(&term[1..close]).ok_or_else(bad)?;
        let rest = &term[close + 1..];
        let mut powers = Vec::new();
        for factor in rest.split('*').filter(|f| !f.is_empty()) {
            let f = factor.strip_prefix('G').ok_or_else(bad)?;
            let (k, e) = match f.split_once('^') {
                Some((k, e)) => (k, e.parse::<u32>().map_err(|_| bad())?),
                None => (f, 1),
            };
            powers.push((k.parse::<usize>().map_err(|_| bad())?, e));
        }
        acc = acc.add(&Poly::monomial(c, &powers));
    }
    Ok(acc)
}

fn monomial_human(powers: &[(usize, u32)]) -> String {
    powers
        .iter()
        .map(|(k, e)| {
            let idx = if *k >= 10 { format!("{{{k}}}") } else { k.to_string() };
            if *e == 1 {
                format!("G_{idx}")
            } else {
                format!("G_{idx}^{e}")
            }
        })
        .collect()
}

fn is_negative(c: &GaussRational) -> bool {
    if c.is_real() {
        c.re.cmp0() == Ordering::Less
    } else if c.is_imaginary() {
        c.im.cmp0() == Ordering::Less
    } else {
        false
    }
}

/// Human-readable form, highest graded-lex term first.
pub fn to_human(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.sparse_terms().iter().enumerate() {
        let neg = is_negative(c);
        let mag = if neg { c.neg_ref() } else { c.clone() };
        let mono = monomial_human(m);
        let coef = if !mono.is_empty() && mag.is_one() {
            String::new()
        } else if !mono.is_empty() && mag.is_real() && *mag.re.denom() != 1 {
            format!("({mag})")
        } else {
            mag.to_string()
        };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&coef);
        out.push_str(&mono);
    }
    out
}

/// Univariate human form in `x`, descending powers.
pub fn unipoly_human(p: &UniPoly<GaussRational>, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for (j, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = is_negative(c);
        let mag = if neg { c.neg_ref() } else { c.clone() };
        let mono = match j {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{j}"),
        };
        let coef = if !mono.is_empty() && mag.is_one() {
            String::new()
        } else if !mono.is_empty() && mag.is_real() && *mag.re.denom() != 1 {
            format!("({mag})")
        } else {
            mag.to_string()
        };
        match (first, neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        first = false;
        out.push_str(&coef);
        out.push_str(&mono);
    }
    out
}

/// Parses the human grammar: signed terms, each an optional coefficient
/// (`3`, `1/21`, `2i`, `i`, `(1/2+3i)`) followed by factors `G_k` or `G_k^e`.
pub fn parse_human(s: &str) -> Result<Poly> {
    let cleaned: String = s
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '{' && *c != '}')
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect();
    let bad = |why: &str| Error::Parse(format!("{why} in polynomial: {s}"));
    if cleaned.is_empty() {
        return Err(bad("empty input"));
    }
    let chars: Vec<char> = cleaned.chars().collect();
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > start => {
                terms.push(chars[start..i].iter().collect::<String>());
                start = i;
            }
            _ => {}
        }
    }
    terms.push(chars[start..].iter().collect::<String>());
    let mut acc = Poly::zero();
    for t in terms {
        let (neg, body) = match t.chars().next() {
            Some('-') => (true, &t[1..]),
            Some('+') => (false, &t[1..]),
            _ => (false, &t[..]),
        };
        let (coef, rest) = split_coefficient(body).ok_or_else(|| bad("bad coefficient"))?;
        let mut powers = Vec::new();
        for factor in rest.split("G_").filter(|f| !f.is_empty()) {
            let (k, e) = match factor.split_once('^') {
                Some((k, e)) => (k, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                None => (factor, 1),
            };
            powers.push((k.parse::<usize>().map_err(|_| bad("bad index"))?, e));
        }
        if !rest.is_empty() && !rest.starts_with("G_") {
            return Err(bad("unexpected token"));
        }
        let c = if neg { coef.neg_ref() } else { coef };
        acc = acc.add(&Poly::monomial(c, &powers));
    }
    Ok(acc)
}

fn split_coefficient(body: &str) -> Option<(GaussRational, &str)> {
    if let Some(inner) = body.strip_prefix('(') {
        let close = inner.find(')')?;
        let c = parse_complex_literal(&inner[..close])?;
        return Some((c, &inner[close + 1..]));
    }
    let end = body.find("G_").unwrap_or(body.len());
    let lit = &body[..end];
    if lit.is_empty() {
        return Some((GaussRational::one(), &body[end..]));
    }
    Some((parse_complex_literal(lit)?, &body[end..]))
}

/// `a`, `a/b`, `ai`, `i`, `a+bi`, `a-bi`.
fn parse_complex_literal(s: &str) -> Option<GaussRational> {
    let s = s.trim();
    if let Some(pos) = s[1..].find(['+', '-']).map(|p| p + 1) {
        if s.ends_with('i') {
            let re = parse_complex_literal(&s[..pos])?;
            let im = parse_complex_literal(&s[pos..])?;
            let mut out = re;
            out.add_assign_ref(&im);
            return Some(out);
        }
    }
    let (neg, s) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let v = if let Some(num) = s.strip_suffix('i') {
        let mag = if num.is_empty() {
            Rational::from(1)
        } else {
            num.parse::<Rational>().ok()?
        };
        GaussRational::new(0, mag)
    } else {
        GaussRational::real(s.parse::<Rational>().ok()?)
    };
    Some(if neg { v.neg_ref() } else { v })
}

/// Exact univariate coefficients as `p/q` strings (or `re,im` pairs when
/// complex), ascending powers.
pub fn unipoly_to_strings(p: &UniPoly<GaussRational>) -> Vec<String> {
    p.coeffs()
        .iter()
        .map(|c| {
            if c.is_real() {
                c.re.to_string()
            } else {
                format!("{},{}", c.re, c.im)
            }
        })
        .collect()
}

pub fn unipoly_from_strings(items: &[String]) -> Result<UniPoly<GaussRational>> {
    let coeffs = items
        .iter()
        .map(|s| {
            GaussRational::parse_loose(s).ok_or_else(|| Error::Parse(format!("bad coefficient {s}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn human_roundtrip() {
        for s in ["-3G_2^2 + 1", "-2G_1G_2 - i", "-12G_2G_4 - 6G_2^3", "(1/21)G_{12} + 2iG_3"] {
            let p = parse_human(s).unwrap();
            assert_eq!(parse_human(&to_human(&p)).unwrap(), p, "{s}");
        }
    }

    #[test]
    fn parses_listing_style() {
        let p = parse_human("-30G_2G_{10}-360G_4G_8-216G_2^2G_8").unwrap();
        assert_eq!(p.coeff(&[(2, 2), (8, 1)]), GaussRational::from_i64(-216));
        assert_eq!(p.num_terms(), 3);
        let q = parse_human("-G_1^4 -6G_2G_1^2 + i").unwrap();
        assert_eq!(q.constant_term(), GaussRational::i());
    }

    #[test]
    fn canonical_roundtrip() {
        let p = parse_human("(-8/15)G_2^2 + (1/21) - 3iG_4").unwrap();
        let c = to_canonical(&p);
        assert_eq!(parse_canonical(&c).unwrap(), p);
        assert!(c.starts_with("{-8/15,0/1}*G2^2 + {0/1,-3/1}*G4"));
    }

    #[test]
    fn unipoly_strings_roundtrip() {
        let p = UniPoly::new(vec![
            GaussRational::from_ratio(1, 21),
            GaussRational::zero(),
            GaussRational::from_ratio(-8, 15),
            GaussRational::zero(),
            GaussRational::one(),
        ]);
        let s = unipoly_to_strings(&p);
        assert_eq!(s[2], "-8/15");
        assert_eq!(unipoly_from_strings(&s).unwrap(), p);
        assert_eq!(unipoly_human(&p, "x"), "x^4 - (8/15)x^2 + 1/21");
    }
}
