//! Closed forms for the three-gap partition: the `(k, r, s)` decomposition
//! of `m`, the three gap lengths with their multiplicities, the extremal
//! gaps `d_max`/`d_min` and the ratio `d_max / d_min`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::cf::ConvergentTable;
use crate::error::{Error, Result};
use crate::exact::Real;

/// `m = r q_k + q_{k-1} + s` with `1 <= r <= a_{k+1}` and `0 <= s < q_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GapDecomposition {
    pub m: u64,
    pub k: usize,
    pub r: u64,
    pub s: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GapKind {
    /// `η_k`
    Short,
    /// `η_{k-1} - r η_k`
    Mid,
    /// `η_{k-1} - (r-1) η_k`
    Long,
}

impl fmt::Display for GapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GapKind::Short => "SHORT",
            GapKind::Mid => "MID",
            GapKind::Long => "LONG",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapEntry {
    pub kind: GapKind,
    pub length: Real,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapStructure {
    pub decomposition: GapDecomposition,
    /// Always SHORT, MID, LONG in that order.
    pub entries: [GapEntry; 3],
}

impl GapStructure {
    /// The LONG slot is empty exactly when `q_k = s + 1`; its length is
    /// still filled in.
    pub fn long_is_degenerate(&self) -> bool {
        self.entries[2].count == 0
    }

    pub fn total_count(&self) -> u64 {
        self.entries.iter().map(|e| e.count).sum()
    }

    /// `Σ length · count`, which is 1 for a partition of `[0, 1]`.
    pub fn measure(&self) -> Real {
        let mut acc = Real::integer(0, &self.entries[0].length);
        for e in &self.entries {
            acc = acc.add(&e.length.mul_int(&BigInt::from(e.count)));
        }
        acc
    }

    pub fn occupied(&self) -> impl Iterator<Item = &GapEntry> {
        self.entries.iter().filter(|e| e.count > 0)
    }
}

/// Which case of the closed form applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `r = a_{k+1}`
    RAtMax,
    /// `r < a_{k+1}`
    RBelowMax,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::RAtMax => "r=a",
            Branch::RBelowMax => "r<a",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioPoint {
    pub decomposition: GapDecomposition,
    pub d_max: Real,
    pub d_min: Real,
    pub ratio: Real,
    /// 1 when `q_k > s + 1`, 0 when `q_k = s + 1`.
    pub epsilon: u8,
    pub branch: Branch,
}

impl RatioPoint {
    pub fn m(&self) -> u64 {
        self.decomposition.m
    }
}

#[derive(Clone, Debug)]
pub struct RatioScan {
    pub points: Vec<RatioPoint>,
    /// Index into `points` of the first maximal ratio.
    pub argmax: usize,
}

impl RatioScan {
    pub fn sup(&self) -> &Real {
        &self.points[self.argmax].ratio
    }

    pub fn argmax_m(&self) -> u64 {
        self.points[self.argmax].m()
    }
}

fn q_u64(table: &ConvergentTable, n: isize) -> u64 {
    table
        .q(n)
        .to_u64()
        .expect("q_n <= m fits in u64 by construction")
}

fn require_depth(table: &ConvergentTable, m: u64) -> Result<()> {
    let needed = table.depth_needed_for(m);
    if table.depth() < needed {
        return Err(Error::InsufficientDepth(format!(
            "m = {m} needs a convergent table of depth {needed}, have {}",
            table.depth()
        )));
    }
    Ok(())
}

/// The unique `(k, r, s)` with `m = r q_k + q_{k-1} + s`.
///
/// `k` is the largest index with `q_k + q_{k-1} <= m`; then
/// `r = floor((m - q_{k-1}) / q_k)` and `s` is what is left over.
pub fn decompose(m: u64, table: &ConvergentTable) -> Result<GapDecomposition> {
    if m < 1 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    require_depth(table, m)?;
    let mb = BigInt::from(m);
    let mut k = 0usize;
    while table.q(k as isize + 1) + table.q(k as isize) <= mb {
        k += 1;
    }
    let qk = q_u64(table, k as isize);
    let qk1 = q_u64(table, k as isize - 1);
    let r = (m - qk1) / qk;
    let s = m - r * qk - qk1;

    let a_next = table.a(k + 1);
    assert!(
        r >= 1 && BigInt::from(r) <= *a_next,
        "r = {r} out of range at m = {m}"
    );
    assert!(s < qk, "s = {s} >= q_k = {qk} at m = {m}");
    assert_eq!(r * qk + qk1 + s, m);
    Ok(GapDecomposition { m, k, r, s })
}

/// Gap lengths and counts of the partition by `{α}, …, {mα}`.
pub fn gap_structure(m: u64, table: &ConvergentTable) -> Result<GapStructure> {
    let dec = decompose(m, table)?;
    Ok(structure_for(&dec, table))
}

fn structure_for(dec: &GapDecomposition, table: &ConvergentTable) -> GapStructure {
    let GapDecomposition { k, r, s, .. } = *dec;
    let k = k as isize;
    let qk = q_u64(table, k);
    let qk1 = q_u64(table, k - 1);
    let a_next = table.a(k as usize + 1);

    let short = table.eta(k).clone();
    // η_{k-1} - r η_k rewritten as η_{k+1} + (a_{k+1} - r) η_k
    let spare = a_next - BigInt::from(r);
    let mid = table.eta(k + 1).add(&table.eta(k).mul_int(&spare));
    let long = short.add(&mid);

    GapStructure {
        decomposition: *dec,
        entries: [
            GapEntry {
                kind: GapKind::Short,
                length: short,
                count: (r - 1) * qk + qk1 + s + 1,
            },
            GapEntry {
                kind: GapKind::Mid,
                length: mid,
                count: s + 1,
            },
            GapEntry {
                kind: GapKind::Long,
                length: long,
                count: qk - (s + 1),
            },
        ],
    }
}

fn branch_of(dec: &GapDecomposition, table: &ConvergentTable) -> Branch {
    if BigInt::from(dec.r) == *table.a(dec.k + 1) {
        Branch::RAtMax
    } else {
        Branch::RBelowMax
    }
}

fn epsilon_of(dec: &GapDecomposition, table: &ConvergentTable) -> u8 {
    if q_u64(table, dec.k as isize) > dec.s + 1 {
        1
    } else {
        0
    }
}

/// `(d_max, d_min)` by the case table on `q_k` vs `s + 1` and `r` vs `a_{k+1}`.
pub fn extremes(m: u64, table: &ConvergentTable) -> Result<(Real, Real)> {
    let dec = decompose(m, table)?;
    let (d_max, d_min) = extremes_for(&dec, table);
    check_extremes(&structure_for(&dec, table), &d_max, &d_min);
    Ok((d_max, d_min))
}

fn extremes_for(dec: &GapDecomposition, table: &ConvergentTable) -> (Real, Real) {
    let k = dec.k as isize;
    let eta_k = table.eta(k);
    let eta_k1 = table.eta(k + 1);
    let spare = table.a(dec.k + 1) - BigInt::from(dec.r);
    let branch = branch_of(dec, table);
    let d_max = match (epsilon_of(dec, table), branch) {
        (1, Branch::RAtMax) => eta_k1.add(eta_k),
        (1, Branch::RBelowMax) => eta_k1.add(&eta_k.mul_int(&(spare + 1))),
        (_, Branch::RAtMax) => eta_k.clone(),
        (_, Branch::RBelowMax) => eta_k1.add(&eta_k.mul_int(&spare)),
    };
    let d_min = match branch {
        Branch::RAtMax => eta_k1.clone(),
        Branch::RBelowMax => eta_k.clone(),
    };
    (d_max, d_min)
}

/// The case-table extremes must be the largest and smallest occupied gaps.
fn check_extremes(gs: &GapStructure, d_max: &Real, d_min: &Real) {
    let occupied: Vec<&Real> = gs.occupied().map(|e| &e.length).collect();
    let top = occupied
        .iter()
        .copied()
        .reduce(|a, b| {
            if b.rank_cmp(a) == Ordering::Greater {
                b
            } else {
                a
            }
        })
        .expect("at least one occupied gap");
    let bottom = occupied
        .iter()
        .copied()
        .reduce(|a, b| {
            if b.rank_cmp(a) == Ordering::Less {
                b
            } else {
                a
            }
        })
        .expect("at least one occupied gap");
    assert!(
        d_max.agrees_with(top) && d_min.agrees_with(bottom),
        "closed-form extremes disagree with the gap structure at m = {}",
        gs.decomposition.m
    );
}

/// The ratio `d_max / d_min` by the two-branch closed form
/// `ε + η_{k+2}/η_{k+1} + a_{k+2}` (r = a_{k+1}) or
/// `ε + η_{k+1}/η_k + (a_{k+1} - r)` (r < a_{k+1}).
pub fn ratio(m: u64, table: &ConvergentTable) -> Result<RatioPoint> {
    let dec = decompose(m, table)?;
    Ok(ratio_for(&dec, table))
}

fn ratio_for(dec: &GapDecomposition, table: &ConvergentTable) -> RatioPoint {
    let k = dec.k as isize;
    let epsilon = epsilon_of(dec, table);
    let branch = branch_of(dec, table);
    let (d_max, d_min) = extremes_for(dec, table);
    let eps = Real::integer(epsilon, table.eta(k));
    let ratio = match branch {
        Branch::RAtMax => {
            let whole = Real::integer(table.a(dec.k + 2).clone(), table.eta(k));
            eps.add(&table.eta(k + 2).div(table.eta(k + 1))).add(&whole)
        }
        Branch::RBelowMax => {
            let spare = table.a(dec.k + 1) - BigInt::from(dec.r);
            let whole = Real::integer(spare, table.eta(k));
            eps.add(&table.eta(k + 1).div(table.eta(k))).add(&whole)
        }
    };
    assert!(
        ratio.agrees_with(&d_max.div(&d_min)),
        "closed-form ratio disagrees with d_max / d_min at m = {}",
        dec.m
    );
    RatioPoint {
        decomposition: *dec,
        d_max,
        d_min,
        ratio,
        epsilon,
        branch,
    }
}

/// Ratio points for every `m` in `1..=m_max`, with the running supremum.
///
/// Points are computed in parallel and returned in ascending `m`.
pub fn ratio_scan(table: &ConvergentTable, m_max: u64) -> Result<RatioScan> {
    if m_max < 1 {
        return Err(Error::InvalidInput("m_max must be at least 1".into()));
    }
    require_depth(table, m_max)?;
    let points = (1..=m_max)
        .into_par_iter()
        .map(|m| ratio(m, table))
        .collect::<Result<Vec<_>>>()?;
    Ok(with_argmax(points))
}

fn with_argmax(points: Vec<RatioPoint>) -> RatioScan {
    let mut argmax = 0;
    for (i, pt) in points.iter().enumerate().skip(1) {
        if pt.ratio.rank_cmp(&points[argmax].ratio) == Ordering::Greater {
            argmax = i;
        }
    }
    RatioScan { points, argmax }
}

/// Ratio points at the witnesses `m = q_{k+1}` (where `r = a_{k+1}`,
/// `s = 0`) for `k = 0..=max_k`.
pub fn convergent_scan(table: &ConvergentTable, max_k: usize) -> Result<RatioScan> {
    let mut points = Vec::with_capacity(max_k + 1);
    for k in 0..=max_k {
        let m = table
            .q(k as isize + 1)
            .to_u64()
            .ok_or_else(|| Error::InvalidInput(format!("q_{} exceeds 64 bits", k + 1)))?;
        let pt = ratio(m, table)?;
        debug_assert_eq!(pt.branch, Branch::RAtMax);
        points.push(pt);
    }
    Ok(with_argmax(points))
}

/// Largest `k` with `q_{k+1} <= m_max`, if any.
pub fn max_witness_index(table: &ConvergentTable, m_max: u64) -> Option<usize> {
    let bound = BigInt::from(m_max);
    (0..table.depth())
        .take_while(|&k| *table.q(k as isize + 1) <= bound)
        .last()
}
