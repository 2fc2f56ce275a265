//! Partial-quotient sources and convergent tables.

mod source;
mod table;

pub use source::{
    rule_by_name, surd_expansion, surd_partial_quotients, NaturalRule, PartialQuotientSource,
    PeriodicExpansion, QuotientRule,
};
pub use table::{build_table, ConvergentTable, TableSettings};

use num_bigint::BigInt;

/// `max(a_1, …, a_horizon)`, and whether that value is the true supremum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantTypeBound {
    pub bound: BigInt,
    pub certified: bool,
}

/// Horizon-bounded view of `B(α) = sup_{n >= 1} a_n`.
///
/// Periodic sources are certified once the horizon covers the preperiod and
/// one full period; rule sources never are.
pub fn constant_type_bound(src: &PartialQuotientSource, horizon: usize) -> ConstantTypeBound {
    let horizon = horizon.max(1);
    let bound = (1..=horizon)
        .map(|n| src.quotient(n))
        .max()
        .expect("horizon >= 1");
    let certified = src.periodic().is_some_and(|e| horizon + 1 >= e.span());
    ConstantTypeBound { bound, certified }
}
