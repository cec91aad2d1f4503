use std::io::Write;
use std::ops::RangeInclusive;
use std::sync::Mutex;

use super::{log10, select_physical, RootSelector, RootSet, Selected};
use crate::ds_generator::TheorySpec;
use crate::elimination::{ClosureScheme, EliminationResult, Eliminator};
use crate::error::{Error, Result};
use crate::exact_arith::fmt_float;

/// One truncation order of a sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub order: usize,
    pub elimination: EliminationResult,
    pub roots: RootSet,
    /// `None` when the selector found no admissible root at this order.
    pub selected: Option<Selected>,
}

impl SweepRow {
    /// Whether root `k` belongs to the selected physical root.
    pub fn is_selected(&self, k: usize) -> bool {
        let Some(sel) = &self.selected else { return false };
        let z = &self.roots.roots[k];
        sel.roots().iter().any(|s| s.dist(z).to_f64() <= 1e-20 * s.abs_f64().max(1.0))
    }
}

/// Eliminate and solve every order in `orders`, in parallel across orders.
/// Rows come back in increasing order.
pub fn truncation_sweep(
    spec: &TheorySpec,
    scheme: &ClosureScheme,
    orders: RangeInclusive<usize>,
    selector: &RootSelector,
    prec: u32,
) -> Result<Vec<SweepRow>> {
    if orders.is_empty() {
        return Ok(Vec::new());
    }
    let eliminator = Eliminator::new(spec, *orders.end())?;
    let todo: Vec<usize> = orders.collect();
    let next = Mutex::new(0usize);
    let results: Mutex<Vec<(usize, Result<SweepRow>)>> = Mutex::new(Vec::new());
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(todo.len());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let j = {
                    let mut g = next.lock().expect("poisoned");
                    let j = *g;
                    *g += 1;
                    j
                };
                let Some(&n) = todo.get(j) else { break };
                let row = solve_order(&eliminator, n, scheme, selector, prec);
                results.lock().expect("poisoned").push((n, row));
            });
        }
    });
    let mut rows = results.into_inner().expect("poisoned");
    rows.sort_by_key(|(n, _)| *n);
    rows.into_iter().map(|(_, r)| r).collect()
}

fn solve_order(e: &Eliminator, n: usize, scheme: &ClosureScheme, selector: &RootSelector, prec: u32) -> Result<SweepRow> {
    let elimination = e.eliminate(n, scheme, prec)?;
    let roots = elimination.base_roots(prec)?;
    let selected = match select_physical(&roots, selector) {
        Ok(s) => Some(s),
        Err(Error::NoRootSelected(_)) => None,
        Err(err) => return Err(err),
    };
    Ok(SweepRow {
        order: n,
        elimination,
        roots,
        selected,
    })
}

/// CSV with columns `n,re,im,residual,selected`, one line per root.
pub fn write_sweep_csv(rows: &[SweepRow], digits: usize, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "n,re,im,residual,selected")?;
    for row in rows {
        for (k, (z, r)) in row.roots.roots.iter().zip(&row.roots.residuals).enumerate() {
            writeln!(
                out,
                "{},{},{},{:.2},{}",
                row.order,
                fmt_float(&z.re, digits),
                fmt_float(&z.im, digits),
                log10(r).max(-9999.0),
                u8::from(row.is_selected(k))
            )?;
        }
    }
    Ok(())
}
