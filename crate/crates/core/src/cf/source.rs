use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::QuadraticSurd;

/// An eventually periodic list of partial quotients `a_0, a_1, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicExpansion {
    preperiod: Vec<BigInt>,
    period: Vec<BigInt>,
}

impl PeriodicExpansion {
    /// `preperiod` starts at `a_0`; every term at index >= 1 must be >= 1.
    pub fn new(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::RationalValue(
                "finite continued fraction (empty period)".into(),
            ));
        }
        let exp = PeriodicExpansion { preperiod, period };
        let span = exp.preperiod.len() + exp.period.len();
        for n in 1..=span {
            let a = exp.term(n);
            if !a.is_positive() {
                return Err(Error::InvalidInput(format!(
                    "partial quotient a_{n} = {a} must be >= 1"
                )));
            }
        }
        Ok(exp)
    }

    pub fn preperiod(&self) -> &[BigInt] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    pub fn term(&self, n: usize) -> BigInt {
        if n < self.preperiod.len() {
            self.preperiod[n].clone()
        } else {
            self.period[(n - self.preperiod.len()) % self.period.len()].clone()
        }
    }

    /// Smallest horizon after which every distinct position has been seen.
    pub fn span(&self) -> usize {
        self.preperiod.len() + self.period.len()
    }
}

/// A named generator of partial quotients for non-periodic expansions.
pub trait QuotientRule: fmt::Debug + Send + Sync {
    fn name(&self) -> &str;
    fn term(&self, n: usize) -> BigInt;
}

/// `a_0 = 0`, `a_n = n`: the unbounded exemplar `[0; 1, 2, 3, …]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct NaturalRule;

impl QuotientRule for NaturalRule {
    fn name(&self) -> &str {
        "natural"
    }

    fn term(&self, n: usize) -> BigInt {
        BigInt::from(n)
    }
}

pub fn rule_by_name(name: &str) -> Option<Arc<dyn QuotientRule>> {
    match name {
        "natural" => Some(Arc::new(NaturalRule)),
        _ => None,
    }
}

/// Where the partial quotients of α come from.
#[derive(Clone, Debug)]
pub enum PartialQuotientSource {
    /// A quadratic irrational; the expansion is computed once, exactly.
    Surd {
        alpha: QuadraticSurd,
        expansion: PeriodicExpansion,
    },
    Explicit(PeriodicExpansion),
    Rule(Arc<dyn QuotientRule>),
}

impl PartialQuotientSource {
    pub fn surd(alpha: QuadraticSurd) -> Self {
        let expansion = surd_expansion(&alpha);
        PartialQuotientSource::Surd { alpha, expansion }
    }

    pub fn explicit(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        Ok(PartialQuotientSource::Explicit(PeriodicExpansion::new(
            preperiod, period,
        )?))
    }

    pub fn rule(name: &str) -> Result<Self> {
        rule_by_name(name)
            .map(PartialQuotientSource::Rule)
            .ok_or_else(|| Error::InvalidInput(format!("unknown rule `{name}`")))
    }

    pub fn quotient(&self, n: usize) -> BigInt {
        match self {
            PartialQuotientSource::Surd { expansion, .. } => expansion.term(n),
            PartialQuotientSource::Explicit(e) => e.term(n),
            PartialQuotientSource::Rule(rule) => rule.term(n),
        }
    }

    pub fn quotients(&self, count: usize) -> Vec<BigInt> {
        (0..count).map(|n| self.quotient(n)).collect()
    }

    pub fn periodic(&self) -> Option<&PeriodicExpansion> {
        match self {
            PartialQuotientSource::Surd { expansion, .. } => Some(expansion),
            PartialQuotientSource::Explicit(e) => Some(e),
            PartialQuotientSource::Rule(_) => None,
        }
    }

    pub fn alpha_surd(&self) -> Option<&QuadraticSurd> {
        match self {
            PartialQuotientSource::Surd { alpha, .. } => Some(alpha),
            _ => None,
        }
    }
}

/// First `count + 1` partial quotients `a_0..=a_count` of a quadratic surd.
pub fn surd_partial_quotients(x: &QuadraticSurd, count: usize) -> Vec<BigInt> {
    let exp = surd_expansion(x);
    (0..=count).map(|n| exp.term(n)).collect()
}

/// Complete expansion of a quadratic irrational with its period detected by
/// repetition of the integer state `(P, Q)` of `(P + sqrt(D)) / Q`.
pub fn surd_expansion(x: &QuadraticSurd) -> PeriodicExpansion {
    let d = BigInt::from(x.d());
    let q2d = x.q() * x.q() * &d;
    let (mut p, mut q, mut disc) = if x.q().is_positive() {
        (x.p().clone(), x.r().clone(), q2d)
    } else {
        (-x.p(), -x.r(), q2d)
    };
    if !(&disc - &p * &p).is_multiple_of(&q) {
        let qa = q.abs();
        p *= &qa;
        disc *= &q * &q;
        q *= qa;
    }
    let root = disc.sqrt();

    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut terms = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = terms.split_off(start);
            return PeriodicExpansion {
                preperiod: terms,
                period,
            };
        }
        seen.insert((p.clone(), q.clone()), terms.len());
        // floor((P + sqrt D) / Q), sqrt D strictly between root and root + 1
        let a = if q.is_positive() {
            (&p + &root).div_floor(&q)
        } else {
            (&p + &root + BigInt::one()).div_floor(&q)
        };
        let p_next = &a * &q - &p;
        let q_next = (&disc - &p_next * &p_next) / &q;
        debug_assert!(!q_next.is_zero());
        terms.push(a);
        p = p_next;
        q = q_next;
    }
}
