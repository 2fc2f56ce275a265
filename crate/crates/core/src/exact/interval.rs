//! Outward-rounded interval arithmetic over dyadic rationals.
//!
//! Every endpoint is `mantissa * 2^exp` with the mantissa rounded to the
//! working precision (significant bits). Lower endpoints round toward
//! negative infinity, upper endpoints toward positive infinity, so each
//! operation returns an enclosure of the exact result.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub const DEFAULT_START_PRECISION: u32 = 128;
pub const DEFAULT_MAX_PRECISION: u32 = 8192;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Round {
    Down,
    Up,
}

/// `mant * 2^exp`. Zero is always stored as `(0, 0)`.
#[derive(Clone, Debug)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::new(n.into(), 0)
    }

    /// Exact conversion; every finite `f64` is a dyadic rational.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Self::zero());
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & 0x000f_ffff_ffff_ffff;
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), raw_exp - 1075)
        };
        Some(Self::new(BigInt::from(mant) * sign, exp))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> Sign {
        self.mant.sign()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Exact value as `(numerator, denominator)` with a power-of-two denominator.
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        if self.exp >= 0 {
            (&self.mant << self.exp as usize, BigInt::one())
        } else {
            (self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = &self.mant >> shift as usize;
        let top: i64 = top.try_into().expect("60-bit mantissa");
        scale2(top as f64, self.exp + shift)
    }

    /// Bit position of the leading digit: `2^(msb) <= |x| < 2^(msb+1)`.
    fn msb(&self) -> i64 {
        self.mant.bits() as i64 - 1 + self.exp
    }

    fn round(self, precision: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= precision as u64 {
            return self;
        }
        let shift = (bits - precision as u64) as usize;
        // `>>` on BigInt floors toward negative infinity.
        let mant = match dir {
            Round::Down => &self.mant >> shift,
            Round::Up => -((-&self.mant) >> shift),
        };
        Self::new(mant, self.exp + shift as i64)
    }

    fn add_exact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        Self::new(a + b, e)
    }

    fn mul_exact(&self, other: &Self) -> Self {
        Self::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    fn neg(&self) -> Self {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    /// `num / den` rounded in direction `dir` to `precision` bits.
    fn div_round(num: &Self, den: &Self, precision: u32, dir: Round) -> Self {
        assert!(!den.is_zero(), "division by zero");
        if num.is_zero() {
            return Self::zero();
        }
        let extra = precision as i64 + den.mant.bits() as i64 - num.mant.bits() as i64 + 2;
        let extra = extra.max(0);
        let scaled = &num.mant << extra as usize;
        let q = match dir {
            Round::Down => scaled.div_floor(&den.mant),
            Round::Up => -((-scaled).div_floor(&den.mant)),
        };
        Self::new(q, num.exp - den.exp - extra).round(precision, dir)
    }

    /// Integer floor.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            &self.mant >> (-self.exp) as usize
        }
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.mant == other.mant && self.exp == other.exp
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.signum(), other.signum()) {
            (a, b) if a != b => return sign_rank(a).cmp(&sign_rank(b)),
            (Sign::NoSign, _) => return Ordering::Equal,
            _ => {}
        }
        let diff = self.add_exact(&other.neg());
        sign_rank(diff.signum()).cmp(&0)
    }
}

fn scale2(mut x: f64, mut e: i64) -> f64 {
    while e > 512 {
        x *= 2f64.powi(512);
        e -= 512;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -512 {
        x *= 2f64.powi(-512);
        e += 512;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

fn sign_rank(s: Sign) -> i8 {
    match s {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    precision: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, precision: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval {
            lo: lo.round(precision, Round::Down),
            hi: hi.round(precision, Round::Up),
            precision,
        }
    }

    pub fn point(n: impl Into<BigInt>, precision: u32) -> Self {
        let d = Dyadic::from_int(n);
        Self::new(d.clone(), d, precision)
    }

    /// Enclosure of `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, precision: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let n = Dyadic::from_int(num.clone());
        let d = Dyadic::from_int(den.clone());
        Interval {
            lo: Dyadic::div_round(&n, &d, precision, Round::Down),
            hi: Dyadic::div_round(&n, &d, precision, Round::Up),
            precision,
        }
    }

    /// Smallest enclosure of two rationals at the given precision.
    pub fn hull_of_ratios(a: (&BigInt, &BigInt), b: (&BigInt, &BigInt), precision: u32) -> Self {
        let x = Self::from_ratio(a.0, a.1, precision);
        let y = Self::from_ratio(b.0, b.1, precision);
        x.hull(&y)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        Self::new(self.lo.clone(), self.hi.clone(), precision)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.add_exact(&self.lo.neg())
    }

    pub fn midpoint(&self) -> Dyadic {
        let s = self.lo.add_exact(&self.hi);
        Dyadic::new(s.mant, s.exp - 1)
    }

    /// Half the width: a certified bound on `|x - midpoint|`.
    pub fn radius(&self) -> Dyadic {
        let w = self.width();
        Dyadic::new(w.mant, w.exp - 1)
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Whether the rational `num/den` lies in the interval (exact test).
    pub fn contains_ratio(&self, num: &BigInt, den: &BigInt) -> bool {
        let (den, num) = if den.is_negative() {
            (-den, -num)
        } else {
            (den.clone(), num.clone())
        };
        let (ln, ld) = self.lo.to_ratio();
        let (hn, hd) = self.hi.to_ratio();
        &ln * &den <= &num * &ld && &num * &hd <= &hn * &den
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            precision: self.precision.max(other.precision),
        }
    }

    /// `Some(ordering)` when the intervals are disjoint, `None` otherwise.
    pub fn certified_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if other.hi < self.lo {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() == Sign::Plus
    }

    pub fn excludes_zero(&self) -> bool {
        self.lo.signum() == Sign::Plus || self.hi.signum() == Sign::Minus
    }

    /// The integer floor, if it is the same for every point in the interval.
    pub fn certified_floor(&self) -> Option<BigInt> {
        let a = self.lo.floor();
        (a == self.hi.floor()).then_some(a)
    }

    /// Whether `width <= tol * min|x|` over the interval.
    pub fn relative_width_at_most(&self, tol: &Dyadic) -> bool {
        if !self.excludes_zero() {
            return false;
        }
        let mag = if self.is_positive() {
            self.lo.clone()
        } else {
            self.hi.abs()
        };
        self.width() <= tol.mul_exact(&mag)
    }

    /// `log2` of the width, rounded up; `None` for a point interval.
    pub fn width_log2(&self) -> Option<i64> {
        let w = self.width();
        (!w.is_zero()).then(|| w.msb() + 1)
    }

    pub fn max(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            precision: self.precision.max(other.precision),
        }
    }

    pub fn min(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
            precision: self.precision.max(other.precision),
        }
    }

    fn prec(&self, other: &Self) -> u32 {
        self.precision.max(other.precision)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.prec(other);
        Interval {
            lo: self.lo.add_exact(&other.lo).round(p, Round::Down),
            hi: self.hi.add_exact(&other.hi).round(p, Round::Up),
            precision: p,
        }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            precision: self.precision,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.prec(other);
        let products = [
            self.lo.mul_exact(&other.lo),
            self.lo.mul_exact(&other.hi),
            self.hi.mul_exact(&other.lo),
            self.hi.mul_exact(&other.hi),
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval {
            lo: lo.round(p, Round::Down),
            hi: hi.round(p, Round::Up),
            precision: p,
        }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        self.mul(&Interval::point(n.clone(), self.precision))
    }

    /// `None` when the divisor contains zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if !other.excludes_zero() {
            return None;
        }
        let p = self.prec(other);
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(a, b)| Dyadic::div_round(a, b, p, Round::Down))
            .min()
            .unwrap();
        let hi = pairs
            .iter()
            .map(|(a, b)| Dyadic::div_round(a, b, p, Round::Up))
            .max()
            .unwrap();
        Some(Interval {
            lo,
            hi,
            precision: p,
        })
    }

    /// Enclosure of `sqrt(n)` for a nonnegative integer `n`.
    pub fn sqrt_int(n: &BigInt, precision: u32) -> Self {
        assert!(!n.is_negative(), "sqrt of a negative integer");
        let shift = precision as usize + 2;
        let s = num_integer::Roots::sqrt(&(n << (2 * shift)));
        let exact = &s * &s == n << (2 * shift);
        let hi = if exact { s.clone() } else { &s + 1 };
        Self::new(
            Dyadic::new(s, -(shift as i64)),
            Dyadic::new(hi, -(shift as i64)),
            precision,
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}
