//! Exact three-gap structure of the partition of `[0, 1]` cut by
//! `{α}, {2α}, …, {mα}`, the extremal gap lengths, and the ratio
//! `d_max / d_min` whose boundedness over `m` characterises irrationals of
//! constant type (bounded partial quotients).
//!
//! Quadratic irrationals are handled in exact arithmetic over `Q(√d)`;
//! other continued fractions (explicit periodic lists, rule-defined
//! sequences) go through certified interval arithmetic.

pub mod alpha;
pub mod cf;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod threegap;
pub mod verify;

pub use alpha::AlphaSpec;
pub use cf::{
    build_table, constant_type_bound, surd_partial_quotients, ConstantTypeBound, ConvergentTable,
    PartialQuotientSource, TableSettings,
};
pub use error::{Error, Result};
pub use exact::{Interval, QuadraticNumber, QuadraticSurd, Real};
pub use oracle::{brute_force_gaps, oracle_extremes, OracleAlpha, PartitionSample, PartitionSweep};
pub use threegap::{
    convergent_scan, decompose, extremes, gap_structure, ratio, ratio_scan, Branch,
    GapDecomposition, GapEntry, GapKind, GapStructure, RatioPoint, RatioScan,
};
pub use verify::{verify, VerifyOptions, VerifyReport};
