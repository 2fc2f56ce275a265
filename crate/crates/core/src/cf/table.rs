use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::source::PartialQuotientSource;
use crate::error::{Error, Result};
use crate::exact::{
    enclose_tail, Dyadic, Interval, QuadraticNumber, Real, DEFAULT_MAX_PRECISION,
    DEFAULT_START_PRECISION,
};

/// Numeric policy for tables whose η values are intervals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TableSettings {
    /// Required relative width of every interval η_n.
    pub eta_tolerance: f64,
    pub start_precision: u32,
    pub max_precision: u32,
}

impl Default for TableSettings {
    fn default() -> Self {
        TableSettings {
            eta_tolerance: 1e-30,
            start_precision: DEFAULT_START_PRECISION,
            max_precision: DEFAULT_MAX_PRECISION,
        }
    }
}

/// Partial quotients, convergents `p_n / q_n` and approximation errors
/// `η_n = |q_n α - p_n|` for `n = -1..=depth` (quotients from `n = 0`).
///
/// For surd sources η is exact, with an interval shadow for rendering; for
/// every other source η is an interval of certified relative width.
#[derive(Clone, Debug)]
pub struct ConvergentTable {
    source: PartialQuotientSource,
    settings: TableSettings,
    depth: usize,
    a: Vec<BigInt>,
    // index i holds the value for n = i - 1
    p: Vec<BigInt>,
    q: Vec<BigInt>,
    eta: Vec<Real>,
    shadow: Vec<Interval>,
    signed_error: Option<Vec<QuadraticNumber>>,
    precision: Option<u32>,
}

impl ConvergentTable {
    pub fn source(&self) -> &PartialQuotientSource {
        &self.source
    }

    pub fn settings(&self) -> &TableSettings {
        &self.settings
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn is_exact(&self) -> bool {
        self.signed_error.is_some()
    }

    /// Working precision of the η intervals (`None` for exact tables).
    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    pub fn a(&self, n: usize) -> &BigInt {
        &self.a[n]
    }

    pub fn p(&self, n: isize) -> &BigInt {
        &self.p[(n + 1) as usize]
    }

    pub fn q(&self, n: isize) -> &BigInt {
        &self.q[(n + 1) as usize]
    }

    pub fn eta(&self, n: isize) -> &Real {
        &self.eta[(n + 1) as usize]
    }

    /// Interval copy of η_n (equal to `eta` for interval tables).
    pub fn eta_shadow(&self, n: isize) -> &Interval {
        &self.shadow[(n + 1) as usize]
    }

    /// The signed error `q_n α - p_n`, exact tables only.
    pub fn signed_error(&self, n: isize) -> Option<&QuadraticNumber> {
        self.signed_error.as_ref().map(|v| &v[(n + 1) as usize])
    }

    /// A table covering at least `depth`, rebuilt if this one is shallower.
    pub fn extended(&self, depth: usize) -> Result<ConvergentTable> {
        if depth <= self.depth {
            return Ok(self.clone());
        }
        build_table(self.source.clone(), depth, self.settings)
    }

    /// Smallest depth `D >= 2` with `q_{D-1} + q_{D-2} > m`: enough to
    /// decompose `m` and evaluate its ratio, which reaches index `k + 2`.
    pub fn depth_needed_for(&self, m: u64) -> usize {
        let m = BigInt::from(m);
        let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
        let mut n = 0usize;
        // invariant: q = q_n, q_prev = q_{n-1}
        while &q + &q_prev <= m {
            n += 1;
            let next = self.source.quotient(n) * &q + &q_prev;
            q_prev = std::mem::replace(&mut q, next);
        }
        // q_n + q_{n-1} > m, so k + 1 <= n and k + 2 <= n + 1
        (n + 1).max(2)
    }

    /// A table deep enough for every `m' <= m`.
    pub fn grown_for(&self, m: u64) -> Result<ConvergentTable> {
        self.extended(self.depth_needed_for(m))
    }
}

/// Build the convergent table of `source` through index `depth`.
pub fn build_table(
    source: PartialQuotientSource,
    depth: usize,
    settings: TableSettings,
) -> Result<ConvergentTable> {
    let a: Vec<BigInt> = source.quotients(depth + 1);
    let mut p = vec![BigInt::one(), a[0].clone()];
    let mut q = vec![BigInt::zero(), BigInt::one()];
    for n in 1..=depth {
        p.push(&a[n] * &p[n] + &p[n - 1]);
        q.push(&a[n] * &q[n] + &q[n - 1]);
    }

    if let Some(alpha) = source.alpha_surd() {
        let alpha = alpha.value().clone();
        let signed: Vec<QuadraticNumber> = p
            .iter()
            .zip(&q)
            .map(|(pn, qn)| &alpha.mul_int(qn) - &QuadraticNumber::integer(pn.clone(), alpha.d()))
            .collect();
        let eta: Vec<QuadraticNumber> = signed.iter().map(QuadraticNumber::abs).collect();
        let shadow = eta
            .iter()
            .map(|e| e.to_interval(settings.start_precision))
            .collect();
        return Ok(ConvergentTable {
            source,
            settings,
            depth,
            a,
            p,
            q,
            eta: eta.into_iter().map(Real::Exact).collect(),
            shadow,
            signed_error: Some(signed),
            precision: None,
        });
    }

    let mut precision = settings.start_precision;
    loop {
        match interval_etas(&source, depth, &settings, precision) {
            Ok(eta) => {
                return Ok(ConvergentTable {
                    source,
                    settings,
                    depth,
                    a,
                    p,
                    q,
                    eta: eta.iter().cloned().map(Real::Approx).collect(),
                    shadow: eta,
                    signed_error: None,
                    precision: Some(precision),
                })
            }
            Err(_) if precision.saturating_mul(2) <= settings.max_precision => precision *= 2,
            Err(e) => {
                return Err(Error::PrecisionExhausted {
                    bits: precision,
                    what: format!("eta table to depth {depth}: {e}"),
                })
            }
        }
    }
}

/// η_{-1} = 1, η_n = η_{n-1} t_n with t_n = [0; a_{n+1}, a_{n+2}, …].
fn interval_etas(
    source: &PartialQuotientSource,
    depth: usize,
    settings: &TableSettings,
    precision: u32,
) -> Result<Vec<Interval>> {
    let tol = Dyadic::from_f64(settings.eta_tolerance)
        .filter(|t| t.signum() == num_bigint::Sign::Plus)
        .ok_or_else(|| Error::InvalidInput("eta tolerance must be positive".into()))?;
    // relative widths add up along the product, with room for rounding
    let per_step = Dyadic::from_f64(settings.eta_tolerance / (4.0 * (depth as f64 + 2.0)))
        .expect("finite tolerance");
    let max_terms = 2 * precision as usize + 64;

    let mut eta = Vec::with_capacity(depth + 2);
    eta.push(Interval::point(1, precision));
    for n in 0..=depth {
        let t = enclose_tail(|i| source.quotient(i), n, &per_step, precision, max_terms)?;
        let next = eta[n].mul(&t);
        if !next.relative_width_at_most(&tol) {
            return Err(Error::InsufficientDepth(format!(
                "eta_{n} wider than the tolerance at {precision} bits"
            )));
        }
        eta.push(next);
    }
    Ok(eta)
}
