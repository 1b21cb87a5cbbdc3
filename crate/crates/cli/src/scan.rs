//! Grid sweeps emitted as CSV, one row per grid point in grid order.

use std::io::Write;

use convex_order::ordering::decide;
use convex_order::rational::format_rational;
use convex_order::{Rational, Witness};
use rayon::prelude::*;

use crate::error::Result;
use crate::family::ScanSpec;

/// Order-preserving parallel map that stops at the first error.
pub fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> Result<U> + Sync + Send) -> Result<Vec<U>> {
    items.par_iter().map(f).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub value: Rational,
    pub outcome: &'static str,
    pub holds: bool,
    pub case: Option<String>,
    pub witness_s: Option<Rational>,
    pub gap: Option<Rational>,
}

pub fn scan(spec: &ScanSpec) -> Result<Vec<ScanRow>> {
    par_map(&spec.grid(), |x| {
        let inst = spec.instance_at(x)?;
        let verdict = decide(&inst.lhs, &inst.rhs, false)?.verdict;
        let case = inst.theorem.as_ref().and_then(|p| p.check().case).map(|c| c.label().to_string());
        let (witness_s, gap) = match verdict.witness() {
            Some(Witness::Hinge { s, gap }) => (Some(s.clone()), Some(gap.clone())),
            _ => (None, None),
        };
        Ok(ScanRow { value: x.clone(), outcome: verdict.outcome(), holds: verdict.holds(), case, witness_s, gap })
    })
}

pub fn write_csv(spec: &ScanSpec, rows: &[ScanRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![spec.param.clone()];
    header.extend(spec.fixed.keys().cloned());
    header.extend(["outcome", "holds", "case", "witness_s", "gap"].map(String::from));
    w.write_record(&header)?;
    let fixed: Vec<String> = spec.fixed.values().map(format_rational).collect();
    let opt = |x: &Option<Rational>| x.as_ref().map(format_rational).unwrap_or_default();
    for row in rows {
        let mut rec = vec![format_rational(&row.value)];
        rec.extend(fixed.iter().cloned());
        rec.push(row.outcome.to_string());
        rec.push(row.holds.to_string());
        rec.push(row.case.clone().unwrap_or_default());
        rec.push(opt(&row.witness_s));
        rec.push(opt(&row.gap));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
