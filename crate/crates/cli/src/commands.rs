use std::collections::BTreeMap;

use ds_zero::asymptotics::{default_model, fit_asymptotic_model, radius_cubic, radius_quartic, richardson, GrowthLaw};
use ds_zero::ds_generator::{ds_tower, parity_reduce, Contour, PiFraction, Theory, TheorySpec};
use ds_zero::elimination::{ClosureScheme, Eliminator};
use ds_zero::exact_arith::text::{to_canonical, to_human, unipoly_human, unipoly_to_strings};
use ds_zero::exact_arith::{fmt_float, BigComplex, MIN_PRECISION};
use ds_zero::oracle::{contour_pairs, exact_green_table, green_functions};
use ds_zero::pcf_demo::{self, CountContour};
use ds_zero::rootfinder::{truncation_sweep, RootSelector, SelectionPolicy, Selected, SweepRow};
use serde_json::{json, Value};

use crate::output::{Format, Sink};
use crate::{report, Cli, CliError, Command, Common, PcfMode, PolicyArg, SchemeArg, Selection};

/// Digits backed by the root finder's certified bound `2^{−prec/2}`.
pub fn certified_digits(prec: u32) -> usize {
    ((prec as f64 / 2.0) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
}

pub struct Ctx {
    pub prec: u32,
    pub digits: usize,
}

impl Ctx {
    fn new(c: &Common) -> Result<Ctx, CliError> {
        if c.precision < MIN_PRECISION {
            return Err(CliError::Config(format!("precision must be at least {MIN_PRECISION} bits")));
        }
        Ok(Ctx {
            prec: c.precision,
            digits: c.digits.unwrap_or_else(|| certified_digits(c.precision)),
        })
    }

    pub fn num(&self, z: &BigComplex) -> (String, String) {
        (fmt_float(&z.re, self.digits), fmt_float(&z.im, self.digits))
    }
}

pub fn scheme_for(theory: Theory, s: SchemeArg, prec: u32) -> Result<ClosureScheme, CliError> {
    Ok(match s {
        SchemeArg::Unbiased => ClosureScheme::unbiased(),
        SchemeArg::Asymptotic => ClosureScheme::asymptotic(
            default_model(theory, prec).map_err(|e| CliError::Config(format!("asymptotic scheme: {e}")))?,
        ),
    })
}

pub fn selector_for(theory: Theory, s: &Selection) -> RootSelector {
    let policy = match s.policy {
        Some(PolicyArg::LargestPositiveReal) => SelectionPolicy::LargestPositiveReal,
        Some(PolicyArg::PtNegativeImaginary) => SelectionPolicy::PtNegativeImaginary,
        None => default_policy(theory),
    };
    let sel = RootSelector::new(policy);
    if s.spectral_positivity {
        sel.with_spectral_positivity()
    } else {
        sel
    }
}

pub fn default_policy(theory: Theory) -> SelectionPolicy {
    match theory {
        Theory::Quartic | Theory::Sextic => SelectionPolicy::LargestPositiveReal,
        Theory::Cubic | Theory::NegQuartic | Theory::Quintic => SelectionPolicy::PtNegativeImaginary,
    }
}

/// Manifest: the subcommand and every setting that shaped the output.
fn manifest(cli: &Cli) -> String {
    let c = &cli.common;
    let cmd = format!("{:?}", cli.command);
    format!(
        "ds-zero {} precision={} digits={} format={:?}",
        cmd.replace('\n', " "),
        c.precision,
        c.digits.map_or_else(|| "certified".to_string(), |d| d.to_string()),
        c.format
    )
}

pub fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let ctx = Ctx::new(&cli.common)?;
    let mut sink = Sink::open(cli.common.format, cli.common.out.as_ref(), manifest(cli))?;
    match &cli.command {
        Command::Generate {
            theory,
            levels,
            parity_reduce: reduce,
            canonical,
        } => generate(&mut sink, theory.theory, *levels, *reduce, *canonical),
        Command::Eliminate { theory, order, scheme } => eliminate(&mut sink, &ctx, theory.theory, *order, *scheme),
        Command::Roots {
            theory,
            order,
            scheme,
            selection,
        } => roots(&mut sink, &ctx, theory.theory, *order, *scheme, selection),
        Command::Sweep {
            theory,
            from,
            to,
            scheme,
            selection,
        } => sweep(&mut sink, &ctx, theory.theory, *from, *to, *scheme, selection),
        Command::Exact {
            theory,
            max_index,
            incoming,
            outgoing,
            all_contours,
        } => exact(&mut sink, &ctx, theory.theory, *max_index, incoming.zip(*outgoing), *all_contours),
        Command::Asymptotic {
            theory,
            fit,
            table_size,
            max_order,
        } => asymptotic(&mut sink, &ctx, theory.theory, *fit, *table_size, *max_order),
        Command::Richardson {
            theory,
            from,
            to,
            scheme,
            selection,
            max_order,
        } => extrapolate(&mut sink, &ctx, theory.theory, (*from, *to), *scheme, selection, *max_order),
        Command::Pcf {
            mode,
            degree,
            terms,
            max_terms,
            radius,
        } => pcf(&mut sink, &ctx, *mode, *degree, *terms, *max_terms, *radius),
        Command::Report {
            paper_table,
            figure,
            from,
            to,
        } => match (paper_table, figure) {
            (Some(t), None) => report::table(&mut sink, &ctx, *t),
            (None, Some(f)) => report::figure(&mut sink, &ctx, *f, *from, *to),
            _ => Err(CliError::Config("report needs exactly one of --paper-table, --figure".into())),
        },
    }
}

fn generate(sink: &mut Sink, theory: Theory, levels: usize, reduce: bool, canonical: bool) -> Result<(), CliError> {
    let spec = theory.spec();
    let mut tower = ds_tower(&spec, levels)?;
    if reduce {
        tower = parity_reduce(&tower)?;
    }
    let render = |p: &ds_zero::exact_arith::GPoly| if canonical { to_canonical(p) } else { to_human(p) };
    let rows: Vec<Vec<String>> = tower
        .equations
        .iter()
        .map(|e| vec![e.level.to_string(), e.top.to_string(), render(&e.solved())])
        .collect();
    let extra = json!({ "theory": theory.name(), "dropped_levels": tower.dropped_levels });
    if sink.format == Format::Text {
        let body: String = tower
            .equations
            .iter()
            .map(|e| format!("G_{} = {}\n", e.top, render(&e.solved())))
            .collect();
        return Ok(sink.text(&body)?);
    }
    Ok(sink.table("equations", &["level", "top", "rhs"], &rows, extra)?)
}

fn eliminate(sink: &mut Sink, ctx: &Ctx, theory: Theory, order: usize, scheme: SchemeArg) -> Result<(), CliError> {
    let spec = theory.spec();
    let scheme = scheme_for(theory, scheme, ctx.prec)?;
    let el = Eliminator::new(&spec, order)?.eliminate(order, &scheme, ctx.prec)?;
    let var = format!("G_{}", el.base_unknown);
    let poly = unipoly_human(&el.final_poly, "x");
    match sink.format {
        Format::Text => {
            let mut s = format!("x = {var}/({})\n", el.variable_scale);
            s.push_str(&format!("closure: {:?}\n", el.closure));
            s.push_str(&format!("trivial roots: {}\n", el.trivial_roots));
            s.push_str(&format!("P(x) = {poly}\n"));
            for f in &el.spurious_factors {
                s.push_str(&format!("spurious factor: {}\n", unipoly_human(f, "x")));
            }
            if let Some(split) = &el.root_split {
                s.push_str(&format!(
                    "accepted {} spurious {} separation {}\n",
                    split.accepted.len(),
                    split.spurious.len(),
                    split.separation_log10().map_or("n/a".into(), |d| format!("{d:.1}"))
                ));
            }
            Ok(sink.text(&s)?)
        }
        Format::Json => Ok(sink.json(json!({
            "theory": theory.name(),
            "order": order,
            "scheme": el.scheme,
            "closure": el.closure,
            "base_unknown": el.base_unknown,
            "variable_scale": el.variable_scale.to_string(),
            "polynomial": poly,
            "coefficients": unipoly_to_strings(&el.final_poly),
            "trivial_roots": el.trivial_roots,
            "spurious_factors": el.spurious_factors.iter().map(|f| unipoly_human(f, "x")).collect::<Vec<_>>(),
            "root_split": el.root_split,
        }))?),
        Format::Csv => {
            let rows: Vec<Vec<String>> = unipoly_to_strings(&el.final_poly)
                .into_iter()
                .enumerate()
                .map(|(j, c)| vec![j.to_string(), c])
                .collect();
            Ok(sink.csv(&["power", "coefficient"], &rows)?)
        }
    }
}

fn selected_json(ctx: &Ctx, s: &Option<Selected>) -> Value {
    match s {
        None => Value::Null,
        Some(s) => Value::Array(
            s.roots()
                .iter()
                .map(|z| {
                    let (re, im) = ctx.num(z);
                    json!({ "re": re, "im": im })
                })
                .collect(),
        ),
    }
}

fn roots(sink: &mut Sink, ctx: &Ctx, theory: Theory, order: usize, scheme: SchemeArg, sel: &Selection) -> Result<(), CliError> {
    let spec = theory.spec();
    let scheme = scheme_for(theory, scheme, ctx.prec)?;
    let rows = truncation_sweep(&spec, &scheme, order..=order, &selector_for(theory, sel), ctx.prec)?;
    let row = rows.into_iter().next().ok_or_else(|| CliError::Config("empty order".into()))?;
    emit_rows(sink, ctx, &[row])
}

fn sweep(
    sink: &mut Sink,
    ctx: &Ctx,
    theory: Theory,
    from: usize,
    to: usize,
    scheme: SchemeArg,
    sel: &Selection,
) -> Result<(), CliError> {
    let spec = theory.spec();
    let scheme = scheme_for(theory, scheme, ctx.prec)?;
    let from = from.max(ds_zero::elimination::min_order(theory));
    let rows = truncation_sweep(&spec, &scheme, from..=to, &selector_for(theory, sel), ctx.prec)?;
    emit_rows(sink, ctx, &rows)
}

fn emit_rows(sink: &mut Sink, ctx: &Ctx, rows: &[SweepRow]) -> Result<(), CliError> {
    if sink.format == Format::Json {
        let items: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "order": r.order,
                    "polynomial": unipoly_human(&r.elimination.final_poly, "x"),
                    "roots": r.roots.records(ctx.digits),
                    "trivial_roots": r.elimination.trivial_roots,
                    "selected": selected_json(ctx, &r.selected),
                })
            })
            .collect();
        return Ok(sink.json(json!({ "rows": items }))?);
    }
    let mut buf = Vec::new();
    ds_zero::rootfinder::write_sweep_csv(rows, ctx.digits, &mut buf)?;
    let text = String::from_utf8(buf).expect("ascii");
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
    let table: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    Ok(sink.table("roots", &header, &table, json!({}))?)
}

fn contour_from_degrees(spec: &TheorySpec, pair: Option<(i64, i64)>) -> Contour {
    match pair {
        Some((a, b)) => Contour::new(PiFraction::from_degrees(a), PiFraction::from_degrees(b)),
        None => spec.default_contour,
    }
}

fn exact(
    sink: &mut Sink,
    ctx: &Ctx,
    theory: Theory,
    max_index: usize,
    contour: Option<(i64, i64)>,
    all: bool,
) -> Result<(), CliError> {
    let spec = theory.spec();
    let contours: Vec<Contour> = if all {
        contour_pairs(&spec)
    } else {
        vec![contour_from_degrees(&spec, contour)]
    };
    let mut rows = Vec::new();
    for c in &contours {
        let values = if c == &spec.default_contour {
            exact_green_table(&spec, max_index, ctx.prec)?
        } else {
            green_functions(&spec, c, max_index, ctx.prec)?
        };
        for (k, v) in &values {
            let (re, im) = ctx.num(v);
            rows.push(vec![
                format!("{:.0}", c.incoming.degrees()),
                format!("{:.0}", c.outgoing.degrees()),
                k.to_string(),
                re,
                im,
            ]);
        }
    }
    Ok(sink.table(
        "values",
        &["incoming_deg", "outgoing_deg", "index", "re", "im"],
        &rows,
        json!({ "theory": theory.name() }),
    )?)
}

fn asymptotic(
    sink: &mut Sink,
    ctx: &Ctx,
    theory: Theory,
    fit: bool,
    table_size: usize,
    max_order: usize,
) -> Result<(), CliError> {
    let mut body = serde_json::Map::new();
    body.insert("theory".into(), json!(theory.name()));
    let model = if fit {
        let law = GrowthLaw::for_theory(theory)
            .ok_or_else(|| CliError::Config(format!("no growth law for {theory}")))?;
        let table = exact_green_table(&theory.spec(), table_size, ctx.prec.max(512))?;
        let f = fit_asymptotic_model(theory, &table, law, max_order)?;
        body.insert("radius_fit".into(), serde_json::to_value(&f.radius).expect("serialisable"));
        body.insert("prefactor_fit".into(), serde_json::to_value(&f.prefactor).expect("serialisable"));
        f.model
    } else {
        match theory {
            Theory::Quartic => {
                body.insert("radius".into(), serde_json::to_value(radius_quartic(ctx.prec)?).expect("serialisable"));
            }
            Theory::Cubic => {
                body.insert("radius".into(), serde_json::to_value(radius_cubic(ctx.prec)).expect("serialisable"));
            }
            _ => {}
        }
        default_model(theory, ctx.prec).map_err(|e| CliError::Config(e.to_string()))?
    };
    body.insert("law".into(), json!(model.law));
    body.insert("r".into(), json!(fmt_float(&model.r, ctx.digits)));
    body.insert("prefactor".into(), json!(fmt_float(&model.prefactor, ctx.digits)));
    body.insert("provenance".into(), json!(model.provenance));
    match sink.format {
        Format::Json => Ok(sink.json(Value::Object(body))?),
        _ => {
            let rows: Vec<Vec<String>> = body
                .iter()
                .map(|(k, v)| vec![k.clone(), v.to_string().trim_matches('"').to_string()])
                .collect();
            Ok(sink.table("model", &["key", "value"], &rows, json!({}))?)
        }
    }
}

fn extrapolate(
    sink: &mut Sink,
    ctx: &Ctx,
    theory: Theory,
    (from, to): (usize, usize),
    scheme: SchemeArg,
    sel: &Selection,
    max_order: usize,
) -> Result<(), CliError> {
    let spec = theory.spec();
    let scheme = scheme_for(theory, scheme, ctx.prec)?;
    let from = from.max(ds_zero::elimination::min_order(theory));
    let rows = truncation_sweep(&spec, &scheme, from..=to, &selector_for(theory, sel), ctx.prec)?;
    let seq: Vec<(usize, BigComplex)> = rows
        .iter()
        .filter_map(|r| r.selected.as_ref().map(|s| (r.order, s.representative().clone())))
        .collect();
    let e = richardson(&seq, max_order)?;
    let (re, im) = ctx.num(&e.value);
    let body = json!({
        "theory": theory.name(),
        "orders": [from, to],
        "points": seq.len(),
        "limit": { "re": re, "im": im },
        "order": e.order,
        "spread": e.spread,
    });
    match sink.format {
        Format::Json => Ok(sink.json(body)?),
        _ => Ok(sink.table(
            "limit",
            &["re", "im", "order", "spread", "points"],
            &[vec![re, im, e.order.to_string(), format!("{:.3e}", e.spread), seq.len().to_string()]],
            json!({}),
        )?),
    }
}

#[allow(clippy::too_many_arguments)]
fn pcf(
    sink: &mut Sink,
    ctx: &Ctx,
    mode: PcfMode,
    degree: usize,
    terms: usize,
    max_terms: usize,
    radius: f64,
) -> Result<(), CliError> {
    let p = ctx.prec;
    let (key, header, rows): (&str, Vec<&str>, Vec<Vec<String>>) = match mode {
        PcfMode::Taylor => {
            let rs = pcf_demo::pcf_taylor_roots(degree, p)?;
            ("roots", vec!["re", "im"], root_rows(ctx, &rs.roots, None))
        }
        PcfMode::Asymptotic => {
            let a = pcf_demo::pcf_asymptotic_roots(terms, p)?;
            ("roots", vec!["re", "im", "in_sector"], root_rows(ctx, &a.roots.roots, Some(&a.in_sector)))
        }
        PcfMode::Scan => {
            let scan = pcf_demo::pcf_optimal_scan(max_terms, p)?;
            let rows = scan
                .iter()
                .map(|r| {
                    vec![
                        r.terms.to_string(),
                        r.root.map_or(String::new(), |x| format!("{x:.12}")),
                        r.error.map_or(String::new(), |e| format!("{e:.6e}")),
                    ]
                })
                .collect();
            ("scan", vec!["terms", "root", "relative_error"], rows)
        }
        PcfMode::Exact => {
            let z = pcf_demo::pcf_exact_zeros(radius.max(4.0), p)?;
            let rows = z.iter().map(|x| vec![fmt_float(x, ctx.digits)]).collect();
            ("zeros", vec!["x"], rows)
        }
        PcfMode::Count => {
            let n = pcf_demo::pcf_zero_count(CountContour::Circle { radius }, p.min(256))?;
            ("count", vec!["radius", "zeros"], vec![vec![format!("{radius}"), n.to_string()]])
        }
        PcfMode::Curve => ("curve", vec!["x", "f"], report::pcf_curve(p)),
    };
    Ok(sink.table(key, &header, &rows, json!({}))?)
}

pub fn root_rows(ctx: &Ctx, roots: &[BigComplex], flags: Option<&Vec<bool>>) -> Vec<Vec<String>> {
    roots
        .iter()
        .enumerate()
        .map(|(k, z)| {
            let (re, im) = ctx.num(z);
            let mut r = vec![re, im];
            if let Some(f) = flags {
                r.push(u8::from(f[k]).to_string());
            }
            r
        })
        .collect()
}

/// Ordered `(index, value)` rows for a table of Green's functions.
pub fn value_rows(ctx: &Ctx, values: &BTreeMap<usize, BigComplex>) -> Vec<Vec<String>> {
    values
        .iter()
        .map(|(k, v)| {
            let (re, im) = ctx.num(v);
            vec![k.to_string(), re, im]
        })
        .collect()
}
