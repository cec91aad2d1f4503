//! Data behind each figure and table.

use ds_zero::ds_generator::Theory;
use ds_zero::elimination::{min_order, ClosureScheme};
use ds_zero::exact_arith::{fmt_float, BigComplex};
use ds_zero::oracle::{exact_green_table, MomentMethod, MomentTable};
use ds_zero::pcf_demo;
use ds_zero::rootfinder::{truncation_sweep, RootSelector};
use serde_json::json;

use crate::commands::{default_policy, root_rows, value_rows, Ctx};
use crate::output::Sink;
use crate::CliError;

pub fn table(sink: &mut Sink, ctx: &Ctx, number: u8) -> Result<(), CliError> {
    let (theory, max_index) = match number {
        1 => (Theory::Quartic, 22),
        2 => (Theory::Cubic, 15),
        3 => (Theory::NegQuartic, 22),
        _ => return Err(CliError::Config(format!("no table {number}; tables are 1, 2, 3"))),
    };
    let spec = theory.spec();
    let values = exact_green_table(&spec, max_index, ctx.prec)?;
    let values = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    let mut extra = json!({ "table": number, "theory": theory.name() });
    if number == 1 {
        let m = MomentTable::compute(&spec, &spec.default_contour, 20, MomentMethod::ClosedForm, ctx.prec)?;
        let moments: Vec<_> = m
            .moments
            .iter()
            .enumerate()
            .filter(|(k, _)| k % 2 == 0)
            .map(|(k, g)| json!({ "index": k, "re": fmt_float(&g.re, ctx.digits) }))
            .collect();
        extra["moments"] = json!(moments);
    }
    Ok(sink.table("green_functions", &["index", "re", "im"], &value_rows(ctx, &values), extra)?)
}

/// `(x, D_{3.5}(x))` on `[−4, 4]`.
pub fn pcf_curve(prec: u32) -> Vec<Vec<String>> {
    (-80..=80)
        .map(|j| {
            let x = j as f64 / 20.0;
            let f = pcf_demo::pcf_value(&BigComplex::from_f64(prec, x, 0.0), prec).0;
            vec![format!("{x:.2}"), fmt_float(&f.re, 15)]
        })
        .collect()
}

struct SweepFigure {
    theory: Theory,
    asymptotic: bool,
    from: usize,
    to: usize,
}

fn sweep_rows(ctx: &Ctx, f: &SweepFigure, series: &str) -> Result<Vec<Vec<String>>, CliError> {
    let scheme = if f.asymptotic {
        crate::commands::scheme_for(f.theory, crate::SchemeArg::Asymptotic, ctx.prec)?
    } else {
        ClosureScheme::unbiased()
    };
    let from = f.from.max(min_order(f.theory));
    let sel = RootSelector::new(default_policy(f.theory));
    let rows = truncation_sweep(&f.theory.spec(), &scheme, from..=f.to, &sel, ctx.prec)?;
    let mut out = Vec::new();
    for r in &rows {
        for (k, z) in r.roots.roots.iter().enumerate() {
            let (re, im) = ctx.num(z);
            out.push(vec![series.to_string(), r.order.to_string(), re, im, u8::from(r.is_selected(k)).to_string()]);
        }
    }
    Ok(out)
}

pub fn figure(sink: &mut Sink, ctx: &Ctx, number: u8, from: Option<usize>, to: Option<usize>) -> Result<(), CliError> {
    let p = ctx.prec;
    let sweep = |theory, asymptotic, lo: usize, hi: usize| SweepFigure {
        theory,
        asymptotic,
        from: from.unwrap_or(lo),
        to: to.unwrap_or(hi),
    };
    let sweep_header = ["series", "n", "re", "im", "selected"];
    let extra = json!({ "figure": number });
    match number {
        1 => Ok(sink.table("curve", &["x", "f"], &pcf_curve(p), extra)?),
        2..=5 => {
            let degree = [9, 17, 25, 33][number as usize - 2];
            let rs = pcf_demo::pcf_taylor_roots(degree, p)?;
            Ok(sink.table("roots", &["re", "im"], &root_rows(ctx, &rs.roots, None), extra)?)
        }
        6..=8 => {
            let terms = [5, 10, 15][number as usize - 6];
            let a = pcf_demo::pcf_asymptotic_roots(terms, p)?;
            let rows = root_rows(ctx, &a.roots.roots, Some(&a.in_sector));
            Ok(sink.table("roots", &["re", "im", "in_sector"], &rows, extra)?)
        }
        9 => {
            let scan = pcf_demo::pcf_optimal_scan(to.unwrap_or(16), p)?;
            let rows: Vec<Vec<String>> = scan
                .iter()
                .map(|r| {
                    vec![
                        r.terms.to_string(),
                        r.root.map_or(String::new(), |x| format!("{x:.12}")),
                        r.error.map_or(String::new(), |e| format!("{e:.6e}")),
                    ]
                })
                .collect();
            Ok(sink.table("scan", &["terms", "root", "relative_error"], &rows, extra)?)
        }
        10 | 11 | 12 | 15 | 16 | 17 | 18 | 19 => {
            let f = match number {
                10 => sweep(Theory::Quartic, false, 1, 20),
                11 => sweep(Theory::Quartic, true, 1, 30),
                12 => sweep(Theory::Cubic, false, 3, 40),
                15 => sweep(Theory::Cubic, true, 1, 60),
                16 => sweep(Theory::NegQuartic, false, 1, 40),
                17 => sweep(Theory::Quintic, false, 1, 11),
                18 | 19 => sweep(Theory::Sextic, false, 1, 30),
                _ => unreachable!(),
            };
            let mut rows = sweep_rows(ctx, &f, if f.asymptotic { "asymptotic" } else { "unbiased" })?;
            match number {
                10 | 11 | 19 => rows.retain(|r| is_positive_real(r, ctx.digits)),
                15 => rows.retain(|r| is_negative_imaginary(r, ctx.digits)),
                _ => {}
            }
            Ok(sink.table("roots", &sweep_header, &rows, extra)?)
        }
        13 | 14 => {
            let n = to.unwrap_or(200);
            let mut rows = sweep_rows(ctx, &sweep(Theory::Cubic, false, n, n), "unbiased")?;
            if number == 14 {
                rows.extend(sweep_rows(ctx, &sweep(Theory::Cubic, true, n, n), "asymptotic")?);
            }
            rows.retain(|r| is_negative_imaginary(r, ctx.digits) || near_negative_axis(r));
            Ok(sink.table("roots", &sweep_header, &rows, extra)?)
        }
        _ => Err(CliError::Config(format!("no figure {number}; figures are 1 to 19"))),
    }
}

fn parts(r: &[String]) -> (f64, f64) {
    (r[2].parse().unwrap_or(f64::NAN), r[3].parse().unwrap_or(f64::NAN))
}

fn axis_tol(digits: usize) -> f64 {
    10f64.powi(-(digits as i32 / 2).max(6))
}

fn is_positive_real(r: &[String], digits: usize) -> bool {
    let (re, im) = parts(r);
    re > 0.0 && im.abs() <= axis_tol(digits) * re.abs().max(1.0)
}

fn is_negative_imaginary(r: &[String], digits: usize) -> bool {
    let (re, im) = parts(r);
    im < 0.0 && re.abs() <= axis_tol(digits) * im.abs().max(1.0)
}

/// Within 30° of the negative imaginary axis.
fn near_negative_axis(r: &[String]) -> bool {
    let (re, im) = parts(r);
    im < 0.0 && re.abs() <= 0.577 * im.abs()
}
