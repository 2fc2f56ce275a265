//! Brute-force ground truth: place `{α}, {2α}, …, {mα}` in `[0, 1]`, sort
//! them and measure the gaps directly. Nothing here uses continued
//! fractions beyond obtaining an enclosure of α itself.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::cf::PartialQuotientSource;
use crate::error::{Error, Result};
use crate::exact::{
    enclose_tail, Dyadic, Interval, QuadraticNumber, QuadraticSurd, Real, DEFAULT_MAX_PRECISION,
    DEFAULT_START_PRECISION,
};

/// α as the oracle sees it.
#[derive(Clone, Debug)]
pub enum OracleAlpha {
    Exact(QuadraticSurd),
    /// α known through its partial quotients; enclosures are refined by
    /// doubling the precision up to `max_precision`.
    Numeric {
        source: PartialQuotientSource,
        start_precision: u32,
        max_precision: u32,
    },
}

impl OracleAlpha {
    pub fn from_source(source: &PartialQuotientSource) -> Self {
        match source.alpha_surd() {
            Some(s) => OracleAlpha::Exact(s.clone()),
            None => OracleAlpha::Numeric {
                source: source.clone(),
                start_precision: DEFAULT_START_PRECISION,
                max_precision: DEFAULT_MAX_PRECISION,
            },
        }
    }

    pub fn with_precision(self, start: u32, max: u32) -> Self {
        match self {
            OracleAlpha::Numeric { source, .. } => OracleAlpha::Numeric {
                source,
                start_precision: start,
                max_precision: max,
            },
            exact => exact,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, OracleAlpha::Exact(_))
    }

    fn precision_bounds(&self) -> (u32, u32) {
        match self {
            OracleAlpha::Exact(_) => (0, 0),
            OracleAlpha::Numeric {
                start_precision,
                max_precision,
                ..
            } => (*start_precision, *max_precision),
        }
    }

    /// Enclosure of α with absolute width about `2^-precision`.
    pub fn enclosure(&self, precision: u32) -> Result<Interval> {
        match self {
            OracleAlpha::Exact(s) => Ok(s.value().to_interval(precision)),
            OracleAlpha::Numeric { source, .. } => {
                let tol = Dyadic::new(BigInt::from(1), -(precision as i64 - 4));
                let t0 = enclose_tail(
                    |n| source.quotient(n),
                    0,
                    &tol,
                    precision,
                    2 * precision as usize + 64,
                )?;
                Ok(t0.add(&Interval::point(source.quotient(0), precision)))
            }
        }
    }
}

/// The sorted points of `P_α(m)` and the `m + 1` gaps between
/// `0 = d_0 < d_1 < … < d_m < d_{m+1} = 1`.
#[derive(Clone, Debug)]
pub struct PartitionSample {
    pub m: u64,
    pub points: Vec<Real>,
    pub gaps: Vec<Real>,
    /// Working precision for interval samples.
    pub precision: Option<u32>,
}

impl PartitionSample {
    /// Distinct gap lengths with multiplicities, exact samples only.
    pub fn exact_multiset(&self) -> Option<Vec<(QuadraticNumber, u64)>> {
        let mut counts: BTreeMap<Key, u64> = BTreeMap::new();
        for g in &self.gaps {
            *counts.entry(Key(g.as_exact()?.clone())).or_default() += 1;
        }
        Some(counts.into_iter().map(|(k, c)| (k.0, c)).collect())
    }
}

/// Exact brute-force partition for `m >= 1`.
pub fn brute_force_gaps(alpha: &OracleAlpha, m: u64) -> Result<PartitionSample> {
    if m < 1 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    match alpha {
        OracleAlpha::Exact(s) => Ok(exact_sample(s.value(), m)),
        OracleAlpha::Numeric { .. } => {
            let (mut precision, max) = alpha.precision_bounds();
            loop {
                match interval_sample(alpha, m, precision) {
                    Ok(sample) => return Ok(sample),
                    Err(Error::PrecisionExhausted { .. }) if precision.saturating_mul(2) <= max => {
                        precision *= 2
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
}

fn frac_exact(alpha: &QuadraticNumber, k: u64) -> QuadraticNumber {
    let x = alpha.mul_int(&BigInt::from(k));
    &x - &QuadraticNumber::integer(x.floor(), alpha.d())
}

fn exact_sample(alpha: &QuadraticNumber, m: u64) -> PartitionSample {
    let d = alpha.d();
    let mut points: Vec<QuadraticNumber> = (1..=m).map(|k| frac_exact(alpha, k)).collect();
    points.sort_by(|x, y| x.try_cmp(y).expect("points share one radical"));
    let mut gaps = Vec::with_capacity(points.len() + 1);
    let mut prev = QuadraticNumber::zero(d);
    for x in &points {
        let g = x - &prev;
        assert!(g.signum() > 0, "coincident points for an irrational alpha");
        gaps.push(g);
        prev = x.clone();
    }
    gaps.push(&QuadraticNumber::integer(1, d) - &prev);
    PartitionSample {
        m,
        points: points.into_iter().map(Real::Exact).collect(),
        gaps: gaps.into_iter().map(Real::Exact).collect(),
        precision: None,
    }
}

fn exhausted(precision: u32, what: String) -> Error {
    Error::PrecisionExhausted {
        bits: precision,
        what,
    }
}

/// `{kα}` as an interval strictly inside `(0, 1)`.
fn frac_interval(alpha: &Interval, k: u64, precision: u32) -> Result<Interval> {
    let x = alpha.mul_int(&BigInt::from(k));
    let fl = x
        .certified_floor()
        .ok_or_else(|| exhausted(precision, format!("floor of {k}·alpha is ambiguous")))?;
    let f = x.sub(&Interval::point(fl, precision));
    let one = Dyadic::from_int(1);
    if f.lo().signum() != num_bigint::Sign::Plus || f.hi() >= &one {
        return Err(exhausted(
            precision,
            format!("{{{k}·alpha}} touches an integer"),
        ));
    }
    Ok(f)
}

fn interval_sample(alpha: &OracleAlpha, m: u64, precision: u32) -> Result<PartitionSample> {
    let a = alpha.enclosure(precision)?;
    let mut points = (1..=m)
        .map(|k| frac_interval(&a, k, precision))
        .collect::<Result<Vec<_>>>()?;
    points.sort_by_key(Interval::midpoint);
    for w in points.windows(2) {
        if w[0].certified_cmp(&w[1]) != Some(Ordering::Less) {
            return Err(exhausted(
                precision,
                "two points cannot be separated".into(),
            ));
        }
    }
    let mut gaps = Vec::with_capacity(points.len() + 1);
    let mut prev = Interval::point(0, precision);
    for x in &points {
        gaps.push(x.sub(&prev));
        prev = x.clone();
    }
    gaps.push(Interval::point(1, precision).sub(&prev));
    Ok(PartitionSample {
        m,
        points: points.into_iter().map(Real::Approx).collect(),
        gaps: gaps.into_iter().map(Real::Approx).collect(),
        precision: Some(precision),
    })
}

/// Largest and smallest gap of a sample.
pub fn oracle_extremes(sample: &PartitionSample) -> (Real, Real) {
    let first = sample.gaps[0].clone();
    match first {
        Real::Exact(_) => {
            let pick = |want: Ordering| {
                sample
                    .gaps
                    .iter()
                    .map(|g| g.as_exact().expect("uniform sample"))
                    .reduce(|a, b| if b.try_cmp(a).unwrap() == want { b } else { a })
                    .unwrap()
                    .clone()
            };
            (
                Real::Exact(pick(Ordering::Greater)),
                Real::Exact(pick(Ordering::Less)),
            )
        }
        Real::Approx(_) => {
            let ivs = sample.gaps.iter().map(|g| match g {
                Real::Approx(iv) => iv.clone(),
                Real::Exact(_) => unreachable!("uniform sample"),
            });
            let (hi, lo) = ivs
                .fold(None, |acc: Option<(Interval, Interval)>, g| match acc {
                    None => Some((g.clone(), g)),
                    Some((hi, lo)) => Some((hi.max(&g), lo.min(&g))),
                })
                .unwrap();
            (Real::Approx(hi), Real::Approx(lo))
        }
    }
}

/// Orders values from one quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Key(QuadraticNumber);

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.try_cmp(&other.0).expect("keys share one radical")
    }
}

#[derive(Clone, Debug)]
enum SweepState {
    Exact {
        alpha: QuadraticNumber,
        points: BTreeSet<Key>,
        gaps: BTreeMap<Key, u64>,
    },
    Numeric {
        alpha: Interval,
        precision: u32,
        points: Vec<Interval>,
        gaps: Vec<Interval>,
    },
}

/// `P_α(m)` built up one point at a time: adding `{(m+1)α}` splits exactly
/// one gap in two. Equivalent to [`brute_force_gaps`] at every step.
#[derive(Clone, Debug)]
pub struct PartitionSweep {
    m: u64,
    state: SweepState,
}

impl PartitionSweep {
    /// Start from `m = 0` (the single gap `[0, 1]`). Numeric alphas use
    /// `precision` bits throughout; on failure the caller restarts higher.
    pub fn new(alpha: &OracleAlpha, precision: u32) -> Result<Self> {
        let state = match alpha {
            OracleAlpha::Exact(s) => {
                let d = s.d();
                let mut gaps = BTreeMap::new();
                gaps.insert(Key(QuadraticNumber::integer(1, d)), 1);
                SweepState::Exact {
                    alpha: s.value().clone(),
                    points: BTreeSet::new(),
                    gaps,
                }
            }
            OracleAlpha::Numeric { .. } => SweepState::Numeric {
                alpha: alpha.enclosure(precision)?,
                precision,
                points: Vec::new(),
                gaps: vec![Interval::point(1, precision)],
            },
        };
        Ok(PartitionSweep { m: 0, state })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Insert the next point `{(m+1)α}`.
    pub fn advance(&mut self) -> Result<()> {
        let k = self.m + 1;
        match &mut self.state {
            SweepState::Exact {
                alpha,
                points,
                gaps,
            } => {
                let d = alpha.d();
                let x = Key(frac_exact(alpha, k));
                let pred = points
                    .range(..&x)
                    .next_back()
                    .cloned()
                    .unwrap_or_else(|| Key(QuadraticNumber::zero(d)));
                let succ = points
                    .range(&x..)
                    .next()
                    .cloned()
                    .unwrap_or_else(|| Key(QuadraticNumber::integer(1, d)));
                assert!(succ != x, "coincident points for an irrational alpha");
                let old = Key(&succ.0 - &pred.0);
                let slot = gaps.get_mut(&old).expect("split gap is present");
                *slot -= 1;
                if *slot == 0 {
                    gaps.remove(&old);
                }
                *gaps.entry(Key(&x.0 - &pred.0)).or_default() += 1;
                *gaps.entry(Key(&succ.0 - &x.0)).or_default() += 1;
                points.insert(x);
            }
            SweepState::Numeric {
                alpha,
                precision,
                points,
                gaps,
            } => {
                let x = frac_interval(alpha, k, *precision)?;
                let mut err = None;
                let idx = points.partition_point(|p| match p.certified_cmp(&x) {
                    Some(o) => o == Ordering::Less,
                    None => {
                        err = Some(());
                        false
                    }
                });
                if err.is_some() {
                    return Err(exhausted(
                        *precision,
                        format!("{{{k}·alpha}} cannot be separated from its neighbours"),
                    ));
                }
                let prec = *precision;
                let pred = if idx == 0 {
                    Interval::point(0, prec)
                } else {
                    points[idx - 1].clone()
                };
                let succ = points
                    .get(idx)
                    .cloned()
                    .unwrap_or_else(|| Interval::point(1, prec));
                if idx < points.len() && points[idx].certified_cmp(&x) != Some(Ordering::Greater) {
                    return Err(exhausted(prec, format!("{{{k}·alpha}} is not separated")));
                }
                gaps[idx] = x.sub(&pred);
                gaps.insert(idx + 1, succ.sub(&x));
                points.insert(idx, x);
            }
        }
        self.m = k;
        Ok(())
    }

    /// Distinct gap lengths with multiplicities (exact sweeps).
    pub fn exact_multiset(&self) -> Option<Vec<(QuadraticNumber, u64)>> {
        match &self.state {
            SweepState::Exact { gaps, .. } => {
                Some(gaps.iter().map(|(k, &c)| (k.0.clone(), c)).collect())
            }
            SweepState::Numeric { .. } => None,
        }
    }

    /// All `m + 1` gaps in position order (numeric sweeps).
    pub fn interval_gaps(&self) -> Option<&[Interval]> {
        match &self.state {
            SweepState::Numeric { gaps, .. } => Some(gaps),
            SweepState::Exact { .. } => None,
        }
    }

    /// `(max gap, min gap)`.
    pub fn extremes(&self) -> (Real, Real) {
        match &self.state {
            SweepState::Exact { gaps, .. } => (
                Real::Exact(gaps.keys().next_back().unwrap().0.clone()),
                Real::Exact(gaps.keys().next().unwrap().0.clone()),
            ),
            SweepState::Numeric { gaps, .. } => {
                let hi = gaps.iter().skip(1).fold(gaps[0].clone(), |a, g| a.max(g));
                let lo = gaps.iter().skip(1).fold(gaps[0].clone(), |a, g| a.min(g));
                (Real::Approx(hi), Real::Approx(lo))
            }
        }
    }
}
