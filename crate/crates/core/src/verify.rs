//! Closed forms against the brute-force partition, for every `m <= max_m`.

use std::fmt;

use crate::cf::{build_table, ConvergentTable, PartialQuotientSource, TableSettings};
use crate::error::{Error, Result};
use crate::exact::{Interval, Real, DEFAULT_MAX_PRECISION, DEFAULT_START_PRECISION};
use crate::oracle::{OracleAlpha, PartitionSweep};
use crate::threegap::{extremes, gap_structure, ratio, GapStructure};

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub max_m: u64,
    /// Starting precision of the numeric oracle; doubled on demand.
    pub start_precision: u32,
    pub max_precision: u32,
    pub table: TableSettings,
}

impl VerifyOptions {
    pub fn new(max_m: u64) -> Self {
        VerifyOptions {
            max_m,
            start_precision: DEFAULT_START_PRECISION,
            max_precision: DEFAULT_MAX_PRECISION,
            table: TableSettings::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub m: u64,
    pub what: String,
}

impl fmt::Display for Disagreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m = {}: {}", self.m, self.what)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub checked: u64,
    pub exact: bool,
    /// Oracle precision that finally separated every point (numeric mode).
    pub oracle_precision: Option<u32>,
    pub disagreements: u64,
    pub first_disagreement: Option<Disagreement>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn agreed(&self) -> bool {
        self.disagreements == 0
    }
}

/// Compare gap structure, extremes and ratio with the oracle for
/// `m = 1..=max_m`. Precision exhaustion is an error, not a disagreement.
pub fn verify(source: &PartialQuotientSource, opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.max_m < 1 {
        return Err(Error::InvalidInput("max m must be at least 1".into()));
    }
    let table = build_table(source.clone(), 2, opts.table)?.grown_for(opts.max_m)?;
    let alpha =
        OracleAlpha::from_source(source).with_precision(opts.start_precision, opts.max_precision);

    let mut precision = opts.start_precision;
    let mut notes = Vec::new();
    loop {
        match sweep_all(&alpha, &table, opts.max_m, precision) {
            Ok((disagreements, first)) => {
                let exact = alpha.is_exact();
                if !exact {
                    notes.push(format!(
                        "interval mode: oracle separated all points at {precision} bits; \
                         eta table at {} bits, relative width <= {:e}",
                        table.precision().unwrap_or(0),
                        opts.table.eta_tolerance
                    ));
                }
                return Ok(VerifyReport {
                    checked: opts.max_m,
                    exact,
                    oracle_precision: (!exact).then_some(precision),
                    disagreements,
                    first_disagreement: first,
                    notes,
                });
            }
            Err(Error::PrecisionExhausted { bits, what })
                if !alpha.is_exact() && bits.saturating_mul(2) <= opts.max_precision =>
            {
                notes.push(format!("{what} at {bits} bits; retrying at {}", bits * 2));
                precision = bits * 2;
            }
            Err(e) => return Err(e),
        }
    }
}

fn sweep_all(
    alpha: &OracleAlpha,
    table: &ConvergentTable,
    max_m: u64,
    precision: u32,
) -> Result<(u64, Option<Disagreement>)> {
    let mut sweep = PartitionSweep::new(alpha, precision)?;
    let mut count = 0;
    let mut first = None;
    for m in 1..=max_m {
        sweep.advance()?;
        if let Some(what) = compare(&sweep, table, m, precision)? {
            count += 1;
            first.get_or_insert(Disagreement { m, what });
        }
    }
    Ok((count, first))
}

fn compare(
    sweep: &PartitionSweep,
    table: &ConvergentTable,
    m: u64,
    precision: u32,
) -> Result<Option<String>> {
    let gs = gap_structure(m, table)?;
    let (d_max, d_min) = extremes(m, table)?;
    let rp = ratio(m, table)?;

    if let Some(msg) = compare_multiset(sweep, &gs, precision)? {
        return Ok(Some(msg));
    }
    let (o_max, o_min) = sweep.extremes();
    if !d_max.agrees_with(&o_max) {
        return Ok(Some(format!("d_max {d_max} vs oracle {o_max}")));
    }
    if !d_min.agrees_with(&o_min) {
        return Ok(Some(format!("d_min {d_min} vs oracle {o_min}")));
    }
    let o_ratio = o_max.div(&o_min);
    if !rp.ratio.agrees_with(&o_ratio) {
        return Ok(Some(format!("ratio {} vs oracle {o_ratio}", rp.ratio)));
    }
    Ok(None)
}

fn compare_multiset(
    sweep: &PartitionSweep,
    gs: &GapStructure,
    precision: u32,
) -> Result<Option<String>> {
    let occupied: Vec<_> = gs.occupied().collect();
    if let Some(oracle) = sweep.exact_multiset() {
        if oracle.len() != occupied.len() {
            return Ok(Some(format!(
                "{} distinct oracle gaps vs {} closed-form gaps",
                oracle.len(),
                occupied.len()
            )));
        }
        for e in &occupied {
            let length = e
                .length
                .as_exact()
                .expect("exact table for an exact oracle");
            match oracle.iter().find(|(v, _)| v == length) {
                Some((_, c)) if *c == e.count => {}
                Some((_, c)) => {
                    return Ok(Some(format!("{} count {} vs oracle {c}", e.kind, e.count)))
                }
                None => {
                    return Ok(Some(format!(
                        "{} length {length} absent from oracle",
                        e.kind
                    )))
                }
            }
        }
        return Ok(None);
    }

    let gaps = sweep.interval_gaps().expect("numeric sweep");
    let classes: Vec<Interval> = occupied
        .iter()
        .map(|e| match &e.length {
            Real::Approx(iv) => iv.clone(),
            Real::Exact(x) => x.to_interval(precision),
        })
        .collect();
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            if a.overlaps(b) {
                return Err(Error::PrecisionExhausted {
                    bits: precision,
                    what: "closed-form gap lengths are not separated".into(),
                });
            }
        }
    }
    let mut counts = vec![0u64; classes.len()];
    for g in gaps {
        let hits: Vec<usize> = (0..classes.len())
            .filter(|&i| classes[i].overlaps(g))
            .collect();
        match hits.as_slice() {
            [i] => counts[*i] += 1,
            [] => {
                return Ok(Some(format!(
                    "oracle gap {g} matches no closed-form length"
                )))
            }
            _ => {
                return Err(Error::PrecisionExhausted {
                    bits: precision,
                    what: format!("oracle gap {g} matches several closed-form lengths"),
                })
            }
        }
    }
    for (e, c) in occupied.iter().zip(&counts) {
        if e.count != *c {
            return Ok(Some(format!("{} count {} vs oracle {c}", e.kind, e.count)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::QuadraticSurd;

    #[test]
    fn exact_agreement_small() {
        let src = PartialQuotientSource::surd(QuadraticSurd::new(0, 1, 7, 1).unwrap());
        let report = verify(&src, &VerifyOptions::new(300)).unwrap();
        assert!(report.agreed(), "{:?}", report.first_disagreement);
        assert!(report.exact);
    }

    #[test]
    fn interval_agreement_small() {
        let src = PartialQuotientSource::rule("natural").unwrap();
        let report = verify(&src, &VerifyOptions::new(150)).unwrap();
        assert!(report.agreed(), "{:?}", report.first_disagreement);
        assert_eq!(report.oracle_precision, Some(128));
    }

    #[test]
    fn zero_max_m() {
        let src = PartialQuotientSource::rule("natural").unwrap();
        assert!(verify(&src, &VerifyOptions::new(0)).is_err());
    }
}
