//! `%g`-style decimal rendering of exact dyadic values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Signed, Zero};

use super::interval::Dyadic;

#[derive(Clone, Copy)]
enum Mode {
    Nearest,
    Up,
}

/// Round to `digits` significant digits, ties away from zero.
pub fn format_dyadic(x: &Dyadic, digits: usize) -> String {
    let (n, d) = x.to_ratio();
    format_ratio(&n, &d, digits, Mode::Nearest)
}

/// Round the magnitude up, for rendering error bounds.
pub fn format_dyadic_up(x: &Dyadic, digits: usize) -> String {
    let (n, d) = x.to_ratio();
    format_ratio(&n, &d, digits, Mode::Up)
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

/// Whether `n/d >= 10^e` for positive `n`, `d`.
fn at_least_pow10(n: &BigInt, d: &BigInt, e: i64) -> bool {
    if e >= 0 {
        n >= &(d * pow10(e as u32))
    } else {
        n * pow10((-e) as u32) >= *d
    }
}

fn format_ratio(n: &BigInt, d: &BigInt, digits: usize, mode: Mode) -> String {
    assert!(digits >= 1 && d.is_positive());
    if n.is_zero() {
        return "0".to_string();
    }
    let neg = n.is_negative();
    let n = n.abs();

    let mut e = ((n.bits() as f64 - d.bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    while !at_least_pow10(&n, d, e) {
        e -= 1;
    }
    while at_least_pow10(&n, d, e + 1) {
        e += 1;
    }

    let k = digits as i64 - 1 - e;
    let (num, den) = if k >= 0 {
        (&n * pow10(k as u32), d.clone())
    } else {
        (n.clone(), d * pow10((-k) as u32))
    };
    let mut scaled = match mode {
        Mode::Nearest => (num * BigInt::from(2) + &den).div_floor(&(den * BigInt::from(2))),
        Mode::Up => num.div_ceil(&den),
    };
    if scaled == pow10(digits as u32) {
        scaled /= 10;
        e += 1;
    }
    let s = scaled.to_string();
    debug_assert_eq!(s.len(), digits);

    let body = if (-5..digits as i64).contains(&e) {
        let (int, frac) = if e >= 0 {
            let split = e as usize + 1;
            (s[..split].to_string(), s[split..].to_string())
        } else {
            ("0".to_string(), "0".repeat((-e - 1) as usize) + &s)
        };
        join(&int, frac.trim_end_matches('0'))
    } else {
        format!("{}e{}", join(&s[..1], s[1..].trim_end_matches('0')), e)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn join(int: &str, frac: &str) -> String {
    if frac.is_empty() {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fmt(n: i64, d: i64, digits: usize) -> String {
        format_ratio(&BigInt::from(n), &BigInt::from(d), digits, Mode::Nearest)
    }

    #[test]
    fn general_format() {
        assert_eq!(fmt(1, 3, 5), "0.33333");
        assert_eq!(fmt(2, 3, 5), "0.66667");
        assert_eq!(fmt(-2, 3, 3), "-0.667");
        assert_eq!(fmt(5, 2, 12), "2.5");
        assert_eq!(fmt(123456, 1, 3), "1.23e5");
        assert_eq!(fmt(1, 1_000_000, 4), "1e-6");
        assert_eq!(fmt(1, 100_000, 4), "0.00001");
        assert_eq!(fmt(999_999, 1_000_000, 3), "1");
        assert_eq!(fmt(0, 7, 3), "0");
        assert_eq!(fmt(3, 1, 1), "3");
    }

    #[test]
    fn upward_rounding() {
        let s = format_ratio(&BigInt::from(1001), &BigInt::from(1_000_000), 2, Mode::Up);
        assert_eq!(s, "0.0011");
    }

    #[test]
    fn dyadic_input() {
        let x = Dyadic::from_f64(0.375).unwrap();
        assert_eq!(format_dyadic(&x, 12), "0.375");
    }
}
