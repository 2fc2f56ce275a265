//! Exact arithmetic in a real quadratic field `Q(sqrt(d))`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::{Dyadic, Interval};
use crate::error::{Error, Result};

/// `(p + q*sqrt(d)) / r` with `d > 1` squarefree and `r > 0`.
///
/// Unlike [`QuadraticSurd`] this may be rational (`q == 0`), which is what
/// differences and measure sums of surds regularly produce. The radical `d`
/// names the field; a rational embeds into every field, so `d` is ignored
/// for equality and ordering when `q == 0`.
#[derive(Clone, Debug)]
pub struct QuadraticNumber {
    p: BigInt,
    q: BigInt,
    d: u64,
    r: BigInt,
}

impl QuadraticNumber {
    /// Build and canonicalise. `d` must already be squarefree and > 1.
    pub(crate) fn from_parts(p: BigInt, q: BigInt, d: u64, r: BigInt) -> Self {
        assert!(!r.is_zero(), "zero denominator");
        let (mut p, mut q, mut r) = if r.is_negative() {
            (-p, -q, -r)
        } else {
            (p, q, r)
        };
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        QuadraticNumber { p, q, d, r }
    }

    pub fn integer(n: impl Into<BigInt>, d: u64) -> Self {
        QuadraticNumber {
            p: n.into(),
            q: BigInt::zero(),
            d,
            r: BigInt::one(),
        }
    }

    pub fn zero(d: u64) -> Self {
        Self::integer(0, d)
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    fn field_with(&self, other: &Self) -> Result<u64> {
        if self.q.is_zero() {
            Ok(other.d)
        } else if other.q.is_zero() || self.d == other.d {
            Ok(self.d)
        } else {
            Err(Error::UnsupportedComparison(self.d, other.d))
        }
    }

    fn shared_field(&self, other: &Self) -> u64 {
        self.field_with(other)
            .expect("arithmetic across distinct quadratic fields")
    }

    /// Sign of the value: -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        sign_of(&self.p, &self.q, self.d)
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact floor via integer square roots.
    pub fn floor(&self) -> BigInt {
        if self.q.is_zero() {
            return self.p.div_floor(&self.r);
        }
        // q*sqrt(d) = sign(q) * sqrt(q^2 d); the root is never an integer.
        let s = (&self.q * &self.q * BigInt::from(self.d)).sqrt();
        if self.q.is_positive() {
            (&self.p + s).div_floor(&self.r)
        } else {
            (&self.p - s - BigInt::one()).div_floor(&self.r)
        }
    }

    /// Exact ordering; fails only for two irrationals from different fields.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        let d = self.field_with(other)?;
        // sign of (p1 r2 - p2 r1) + (q1 r2 - q2 r1) sqrt(d)
        let a = &self.p * &other.r - &other.p * &self.r;
        let b = &self.q * &other.r - &other.q * &self.r;
        Ok(sign_of(&a, &b, d).cmp(&0))
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        // r / (p + q sqrt d) = r (p - q sqrt d) / (p^2 - q^2 d)
        let d = BigInt::from(self.d);
        let norm = &self.p * &self.p - &self.q * &self.q * d;
        Self::from_parts(&self.r * &self.p, -(&self.r * &self.q), self.d, norm)
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        Self::from_parts(&self.p * n, &self.q * n, self.d, self.r.clone())
    }

    /// Outward-rounded enclosure at `precision` bits.
    pub fn to_interval(&self, precision: u32) -> Interval {
        let r = Dyadic::from_int(self.r.clone());
        let r = Interval::new(r.clone(), r, precision);
        if self.q.is_zero() {
            return Interval::from_ratio(&self.p, &self.r, precision);
        }
        let root = Interval::sqrt_int(&(&self.q * &self.q * BigInt::from(self.d)), precision + 8);
        let root = if self.q.is_negative() {
            root.neg()
        } else {
            root
        };
        let num = root.add(&Interval::point(self.p.clone(), precision + 8));
        num.div(&r)
            .expect("positive denominator")
            .with_precision(precision)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_interval(80).midpoint().to_f64()
    }
}

/// Sign of `a + b sqrt(d)` for non-square `d`.
fn sign_of(a: &BigInt, b: &BigInt, d: u64) -> i8 {
    let sa = signum(a);
    let sb = signum(b);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // Opposite signs: the larger magnitude wins. a^2 == b^2 d is impossible.
    let a2 = a * a;
    let b2d = b * b * BigInt::from(d);
    if a2 > b2d {
        sa
    } else {
        sb
    }
}

fn signum(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.q == other.q
            && self.r == other.r
            && (self.q.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadraticNumber {}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return if self.r.is_one() {
                write!(f, "{}", self.p)
            } else {
                write!(f, "{}/{}", self.p, self.r)
            };
        }
        let op = if self.q.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{}{}*sqrt({}))/{}",
            self.p,
            op,
            self.q.abs(),
            self.d,
            self.r
        )
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber {
            p: -&self.p,
            q: -&self.q,
            d: self.d,
            r: self.r.clone(),
        }
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, other: &QuadraticNumber) -> QuadraticNumber {
        let d = self.shared_field(other);
        if self.r == other.r {
            return QuadraticNumber::from_parts(
                &self.p + &other.p,
                &self.q + &other.q,
                d,
                self.r.clone(),
            );
        }
        QuadraticNumber::from_parts(
            &self.p * &other.r + &other.p * &self.r,
            &self.q * &other.r + &other.q * &self.r,
            d,
            &self.r * &other.r,
        )
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, other: &QuadraticNumber) -> QuadraticNumber {
        self + &(-other)
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, other: &QuadraticNumber) -> QuadraticNumber {
        let d = self.shared_field(other);
        let dd = BigInt::from(d);
        QuadraticNumber::from_parts(
            &self.p * &other.p + &self.q * &other.q * dd,
            &self.p * &other.q + &self.q * &other.p,
            d,
            &self.r * &other.r,
        )
    }
}

// division is multiplication by the reciprocal
#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn div(self, other: &QuadraticNumber) -> QuadraticNumber {
        let _ = self.shared_field(other);
        self * &other.recip()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, other: QuadraticNumber) -> QuadraticNumber {
                (&self).$m(&other)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

/// A quadratic irrational `(p + q*sqrt(d)) / r` in canonical form.
///
/// Canonical means: `d` squarefree and > 1, `q != 0`, `r > 0` and
/// `gcd(p, q, r) = 1`. Canonical forms are unique, so derived equality is
/// value equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd(QuadraticNumber);

impl QuadraticSurd {
    /// Normalise `(p + q*sqrt(d)) / r`.
    ///
    /// Square factors of `d` move into `q`; a value that turns out to be
    /// rational is reported as [`Error::RationalValue`].
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        d: impl Into<BigInt>,
        r: impl Into<BigInt>,
    ) -> Result<Self> {
        let (p, q, d, r) = (p.into(), q.into(), d.into(), r.into());
        if r.is_zero() {
            return Err(Error::InvalidInput("denominator r is zero".into()));
        }
        if d.is_negative() {
            return Err(Error::InvalidInput(format!("radicand {d} is negative")));
        }
        let d = d
            .to_u64()
            .ok_or_else(|| Error::InvalidInput(format!("radicand {d} exceeds 64 bits")))?;
        if q.is_zero() {
            return Err(Error::RationalValue(format!("({p}+0*sqrt({d}))/{r}")));
        }
        let (outside, core) = split_square(d);
        if core <= 1 {
            return Err(Error::RationalValue(format!("sqrt({d}) is an integer")));
        }
        Ok(QuadraticSurd(QuadraticNumber::from_parts(
            p,
            q * BigInt::from(outside),
            core,
            r,
        )))
    }

    pub fn value(&self) -> &QuadraticNumber {
        &self.0
    }

    pub fn into_value(self) -> QuadraticNumber {
        self.0
    }

    pub fn p(&self) -> &BigInt {
        &self.0.p
    }

    pub fn q(&self) -> &BigInt {
        &self.0.q
    }

    pub fn d(&self) -> u64 {
        self.0.d
    }

    pub fn r(&self) -> &BigInt {
        &self.0.r
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor()
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        self.0.try_cmp(&other.0)
    }

    /// Algebraic conjugate `(p - q*sqrt(d)) / r`.
    pub fn conjugate(&self) -> Self {
        let mut v = self.0.clone();
        v.q = -v.q;
        QuadraticSurd(v)
    }

    /// The field radical as a plain integer.
    pub fn radicand(&self) -> BigInt {
        BigInt::from(self.0.d)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `d = outside^2 * core` with `core` squarefree.
fn split_square(mut d: u64) -> (u64, u64) {
    if d == 0 {
        return (0, 0);
    }
    let mut outside = 1u64;
    let mut f = 2u64;
    while f.saturating_mul(f) <= d {
        let sq = f * f;
        while d.is_multiple_of(sq) {
            d /= sq;
            outside *= f;
        }
        f += if f == 2 { 1 } else { 2 };
    }
    (outside, d)
}
