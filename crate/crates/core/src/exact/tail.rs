//! Certified enclosures of continued-fraction tails `[0; b1, b2, ...]`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::{Dyadic, Interval};
use crate::error::{Error, Result};

/// Enclosure of the infinite tail `t_n = [0; a_{n+1}, a_{n+2}, ...]` from the
/// `depth` terms `a[start+1..=start+depth]`.
///
/// The unknown remainder after the last used term is a number in `(0, 1]`,
/// so the value lies between `[0; b1, ..., bT]` and `[0; b1, ..., bT + 1]`.
/// The bracket width is `1 / (Q_T (Q_T + Q_{T-1}))` with `Q` the tail's own
/// continuant denominators.
pub fn interval_eval_cf_tail(
    a: &[BigInt],
    start: usize,
    depth: usize,
    precision: u32,
) -> Result<Interval> {
    if depth == 0 {
        return Err(Error::InsufficientDepth(
            "tail depth must be at least 1".into(),
        ));
    }
    let end = start + depth;
    if a.len() <= end {
        return Err(Error::InsufficientDepth(format!(
            "tail needs a_{} but only {} partial quotients are available",
            end,
            a.len()
        )));
    }
    eval_terms(&a[start + 1..=end], precision)
}

fn eval_terms(terms: &[BigInt], precision: u32) -> Result<Interval> {
    // [0; b1..bT] = P_T / Q_T, P_{-1} = 1, Q_{-1} = 0, P_0 = 0, Q_0 = 1
    let (mut p_prev, mut p) = (BigInt::one(), BigInt::zero());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    for b in terms {
        if !b.is_positive() {
            return Err(Error::InvalidInput(format!(
                "partial quotient {b} in a tail must be >= 1"
            )));
        }
        let p_next = b * &p + &p_prev;
        let q_next = b * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    let p_alt = &p + &p_prev;
    let q_alt = &q + &q_prev;
    Ok(Interval::hull_of_ratios(
        (&p, &q),
        (&p_alt, &q_alt),
        precision,
    ))
}

/// Enclose `[0; a(n+1), a(n+2), ...]` to relative width at most `rel_tol`,
/// pulling terms from `quotient` as needed (up to `max_terms`).
pub fn enclose_tail<F>(
    quotient: F,
    n: usize,
    rel_tol: &Dyadic,
    precision: u32,
    max_terms: usize,
) -> Result<Interval>
where
    F: Fn(usize) -> BigInt,
{
    let mut terms: Vec<BigInt> = Vec::new();
    let mut want = 8usize;
    loop {
        while terms.len() < want.min(max_terms) {
            terms.push(quotient(n + 1 + terms.len()));
        }
        let iv = eval_terms(&terms, precision)?;
        if iv.relative_width_at_most(rel_tol) {
            return Ok(iv);
        }
        if terms.len() >= max_terms {
            return Err(Error::InsufficientDepth(format!(
                "tail t_{n} not within relative width {:e} after {max_terms} terms at {precision} bits",
                rel_tol.to_f64()
            )));
        }
        want *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(n: usize) -> Vec<BigInt> {
        vec![BigInt::one(); n]
    }

    #[test]
    fn single_term_bracket() {
        let a = vec![BigInt::zero(), BigInt::from(5)];
        let iv = interval_eval_cf_tail(&a, 0, 1, 128).unwrap();
        assert_eq!(
            iv.lo(),
            Interval::from_ratio(&1.into(), &6.into(), 128).lo()
        );
        assert_eq!(
            iv.hi(),
            Interval::from_ratio(&1.into(), &5.into(), 128).hi()
        );
    }

    #[test]
    fn golden_tail() {
        let a = ones(41);
        let iv = interval_eval_cf_tail(&a, 0, 40, 128).unwrap();
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        assert!((iv.midpoint().to_f64() - inv_phi).abs() < 1e-15);
        assert!(iv.width().to_f64() < 1e-15);
        // 1/phi is the positive root of t^2 + t - 1
        let t = iv.clone();
        let poly = t.mul(&t).add(&t).sub(&Interval::point(1, 128));
        assert!(poly.contains(&Dyadic::zero()));
    }

    #[test]
    fn silver_tail() {
        let mut a = vec![BigInt::from(2); 31];
        a[0] = BigInt::one();
        let iv = interval_eval_cf_tail(&a, 0, 30, 128).unwrap();
        assert!((iv.midpoint().to_f64() - (2f64.sqrt() - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn missing_terms() {
        let a = ones(3);
        assert!(matches!(
            interval_eval_cf_tail(&a, 1, 2, 128),
            Err(Error::InsufficientDepth(_))
        ));
        assert!(matches!(
            interval_eval_cf_tail(&a, 0, 0, 128),
            Err(Error::InsufficientDepth(_))
        ));
    }

    #[test]
    fn nonpositive_term_rejected() {
        let a = vec![BigInt::one(), BigInt::zero()];
        assert!(matches!(
            interval_eval_cf_tail(&a, 0, 1, 128),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn adaptive_reaches_tolerance() {
        let tol = Dyadic::from_f64(1e-30).unwrap();
        let iv = enclose_tail(|_| BigInt::one(), 0, &tol, 128, 1024).unwrap();
        assert!(iv.relative_width_at_most(&tol));
        let err = enclose_tail(|_| BigInt::one(), 0, &tol, 128, 16).unwrap_err();
        assert!(matches!(err, Error::InsufficientDepth(_)));
    }
}
