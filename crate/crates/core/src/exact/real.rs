use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use super::decimal;
use super::interval::Interval;
use super::surd::QuadraticNumber;

/// A real value that is either known exactly (quadratic field element) or
/// enclosed by a certified interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Real {
    Exact(QuadraticNumber),
    Approx(Interval),
}

impl Real {
    pub fn integer(n: impl Into<BigInt>, like: &Real) -> Real {
        match like {
            Real::Exact(x) => Real::Exact(QuadraticNumber::integer(n, x.d())),
            Real::Approx(iv) => Real::Approx(Interval::point(n, iv.precision())),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&QuadraticNumber> {
        match self {
            Real::Exact(x) => Some(x),
            Real::Approx(_) => None,
        }
    }

    pub fn enclosure(&self, precision: u32) -> Interval {
        match self {
            Real::Exact(x) => x.to_interval(precision),
            Real::Approx(iv) => iv.clone(),
        }
    }

    fn pair(&self, other: &Real) -> (Interval, Interval) {
        let p = match (self, other) {
            (Real::Approx(a), _) => a.precision(),
            (_, Real::Approx(b)) => b.precision(),
            _ => unreachable!("pair() is only used when one side is approximate"),
        };
        (self.enclosure(p + 16), other.enclosure(p + 16))
    }

    pub fn add(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a + b),
            _ => {
                let (a, b) = self.pair(other);
                Real::Approx(a.add(&b))
            }
        }
    }

    pub fn sub(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a - b),
            _ => {
                let (a, b) = self.pair(other);
                Real::Approx(a.sub(&b))
            }
        }
    }

    pub fn mul(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a * b),
            _ => {
                let (a, b) = self.pair(other);
                Real::Approx(a.mul(&b))
            }
        }
    }

    /// Panics if the divisor is (or may be) zero.
    pub fn div(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a / b),
            _ => {
                let (a, b) = self.pair(other);
                Real::Approx(a.div(&b).expect("divisor interval contains zero"))
            }
        }
    }

    pub fn mul_int(&self, n: &BigInt) -> Real {
        match self {
            Real::Exact(a) => Real::Exact(a.mul_int(n)),
            Real::Approx(a) => Real::Approx(a.mul_int(n)),
        }
    }

    /// Certified comparison: exact for two exact values, otherwise `None`
    /// while the enclosures overlap.
    pub fn certified_cmp(&self, other: &Real) -> Option<Ordering> {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => a.try_cmp(b).ok(),
            _ => {
                let (a, b) = self.pair(other);
                a.certified_cmp(&b)
            }
        }
    }

    /// Exact equality for exact values, overlap of enclosures otherwise.
    pub fn agrees_with(&self, other: &Real) -> bool {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => a == b,
            _ => {
                let (a, b) = self.pair(other);
                a.overlaps(&b)
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Real::Exact(a) => a.signum() > 0,
            Real::Approx(a) => a.is_positive(),
        }
    }

    /// Ordering for choosing a running maximum: exact when possible,
    /// otherwise by midpoint.
    pub fn rank_cmp(&self, other: &Real) -> Ordering {
        self.certified_cmp(other).unwrap_or_else(|| {
            let (a, b) = self.pair(other);
            a.midpoint().cmp(&b.midpoint())
        })
    }

    /// Decimal rendering with `digits` significant digits plus the certified
    /// absolute error (`"0"` for exact values).
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        match self {
            Real::Exact(x) => {
                let bits = (digits as f64 * 3.33) as u32 + 64;
                let iv = x.to_interval(bits);
                (
                    decimal::format_dyadic(&iv.midpoint(), digits),
                    "0".to_string(),
                )
            }
            Real::Approx(iv) => (
                decimal::format_dyadic(&iv.midpoint(), digits),
                decimal::format_dyadic_up(&iv.radius(), 3),
            ),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(x) => x.to_f64(),
            Real::Approx(iv) => iv.midpoint().to_f64(),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(x) => x.fmt(f),
            Real::Approx(iv) => iv.fmt(f),
        }
    }
}

impl From<QuadraticNumber> for Real {
    fn from(x: QuadraticNumber) -> Self {
        Real::Exact(x)
    }
}

impl From<Interval> for Real {
    fn from(x: Interval) -> Self {
        Real::Approx(x)
    }
}
