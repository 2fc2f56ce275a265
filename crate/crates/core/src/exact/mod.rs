//! Exact quadratic-surd arithmetic and certified interval arithmetic.

pub mod decimal;
pub mod interval;
pub mod real;
pub mod surd;
pub mod tail;

pub use interval::{Dyadic, Interval, DEFAULT_MAX_PRECISION, DEFAULT_START_PRECISION};
pub use real::Real;
pub use surd::{QuadraticNumber, QuadraticSurd};
pub use tail::{enclose_tail, interval_eval_cf_tail};
