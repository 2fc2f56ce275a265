//! Textual α specifications:
//!
//! * `surd:(p+q*sqrt(d))/r` with integer literals (`-` may replace `+`),
//! * `cf:[a0;a1,a2,...,(b1,...,bj)]` with the parenthesised block repeating,
//! * `rule:natural` for `[0; 1, 2, 3, …]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::cf::{rule_by_name, PartialQuotientSource};
use crate::error::{Error, Result};
use crate::exact::QuadraticSurd;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaSpec {
    /// Components as written; normalisation happens in [`AlphaSpec::to_source`].
    Surd {
        p: BigInt,
        q: BigInt,
        d: BigInt,
        r: BigInt,
    },
    Cf {
        preperiod: Vec<BigInt>,
        period: Vec<BigInt>,
    },
    Rule(String),
}

fn parse_err(token: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        token: token.to_string(),
        message: message.into(),
    }
}

fn int(token: &str) -> Result<BigInt> {
    let t = token.trim();
    if t.is_empty() {
        return Err(parse_err(token, "expected an integer"));
    }
    t.parse::<BigInt>()
        .map_err(|_| parse_err(t, "expected an integer"))
}

fn strip<'a>(s: &'a str, prefix: &str, whole: &str) -> Result<&'a str> {
    s.trim_start()
        .strip_prefix(prefix)
        .ok_or_else(|| parse_err(whole, format!("expected `{prefix}`")))
}

impl AlphaSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (kind, body) = text
            .split_once(':')
            .ok_or_else(|| parse_err(text, "expected `surd:`, `cf:` or `rule:` prefix"))?;
        match kind.trim() {
            "surd" => parse_surd(body),
            "cf" => parse_cf(body),
            "rule" => {
                let name = body.trim();
                if rule_by_name(name).is_none() {
                    return Err(parse_err(name, "unknown rule (known: natural)"));
                }
                Ok(AlphaSpec::Rule(name.to_string()))
            }
            other => Err(parse_err(other, "unknown alpha kind")),
        }
    }

    pub fn to_source(&self) -> Result<PartialQuotientSource> {
        match self {
            AlphaSpec::Surd { p, q, d, r } => Ok(PartialQuotientSource::surd(QuadraticSurd::new(
                p.clone(),
                q.clone(),
                d.clone(),
                r.clone(),
            )?)),
            AlphaSpec::Cf { preperiod, period } => {
                PartialQuotientSource::explicit(preperiod.clone(), period.clone())
            }
            AlphaSpec::Rule(name) => PartialQuotientSource::rule(name),
        }
    }
}

fn parse_surd(body: &str) -> Result<AlphaSpec> {
    let whole = body.trim();
    let rest = strip(whole, "(", whole)?;
    let (inside, tail) = rest
        .split_once(')')
        .ok_or_else(|| parse_err(whole, "missing `)`"))?;
    // inside: p (+|-) q*sqrt(d   ... the `)` of sqrt was consumed by split_once
    let (p_part, rest) =
        split_sign(inside).ok_or_else(|| parse_err(inside, "expected `p+q*sqrt(d)`"))?;
    let (q_part, d_part) = rest
        .1
        .split_once('*')
        .ok_or_else(|| parse_err(rest.1, "expected `q*sqrt(d)`"))?;
    let d_part = strip(d_part, "sqrt(", d_part)?;
    let tail = strip(tail, ")", tail)?;
    let r_part = strip(tail, "/", tail)?;

    let p = int(p_part)?;
    let mut q = int(q_part)?;
    if rest.0 == '-' {
        q = -q;
    }
    Ok(AlphaSpec::Surd {
        p,
        q,
        d: int(d_part)?,
        r: int(r_part)?,
    })
}

/// Split `p±rest` at the first sign that is not a leading sign of `p`.
fn split_sign(s: &str) -> Option<(&str, (char, &str))> {
    let t = s.trim_start();
    let offset = s.len() - t.len();
    let start = usize::from(t.starts_with(['+', '-']));
    let pos = t[start..].find(['+', '-'])? + start;
    let op = t[pos..].chars().next()?;
    Some((&s[..offset + pos], (op, &t[pos + 1..])))
}

fn parse_cf(body: &str) -> Result<AlphaSpec> {
    let whole = body.trim();
    let inner = whole
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| parse_err(whole, "expected `[a0;...]`"))?;
    let (a0, rest) = inner
        .split_once(';')
        .ok_or_else(|| parse_err(inner, "expected `;` after a0"))?;
    let mut preperiod = vec![int(a0)?];
    let rest = rest.trim();
    let (pre_text, period_text) = match rest.find('(') {
        Some(open) => {
            let tail = &rest[open..];
            let close = tail
                .find(')')
                .ok_or_else(|| parse_err(tail, "missing `)` in period"))?;
            if !tail[close + 1..].trim().is_empty() {
                return Err(parse_err(&tail[close + 1..], "trailing text after period"));
            }
            (&rest[..open], Some(&tail[1..close]))
        }
        None => (rest, None),
    };
    let pre_text = pre_text.trim();
    if !pre_text.is_empty() {
        let pre_text = match (period_text.is_some(), pre_text.strip_suffix(',')) {
            (true, Some(s)) => s,
            (true, None) => return Err(parse_err(pre_text, "expected `,` before period")),
            (false, _) => pre_text,
        };
        for tok in pre_text.split(',') {
            preperiod.push(int(tok)?);
        }
    }
    let period = match period_text {
        Some(p) => p.split(',').map(int).collect::<Result<Vec<_>>>()?,
        None => {
            return Err(Error::RationalValue(format!(
                "[{inner}] is a finite continued fraction"
            )))
        }
    };
    Ok(AlphaSpec::Cf { preperiod, period })
}

impl FromStr for AlphaSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        AlphaSpec::parse(s)
    }
}

fn join(v: &[BigInt]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for AlphaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaSpec::Surd { p, q, d, r } => {
                let op = if q.sign() == num_bigint::Sign::Minus {
                    '-'
                } else {
                    '+'
                };
                write!(f, "surd:({p}{op}{}*sqrt({d}))/{r}", q.magnitude())
            }
            AlphaSpec::Cf { preperiod, period } => {
                write!(f, "cf:[{};", preperiod[0])?;
                if preperiod.len() > 1 {
                    write!(f, "{},", join(&preperiod[1..]))?;
                }
                write!(f, "({})]", join(period))
            }
            AlphaSpec::Rule(name) => write!(f, "rule:{name}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn parse_surds() {
        assert_eq!(
            AlphaSpec::parse("surd:(1+1*sqrt(5))/2").unwrap(),
            AlphaSpec::Surd {
                p: 1.into(),
                q: 1.into(),
                d: 5.into(),
                r: 2.into()
            }
        );
        assert_eq!(
            AlphaSpec::parse(" surd: ( -3 - 2 * sqrt( 8 ) ) / -4 ").unwrap(),
            AlphaSpec::Surd {
                p: (-3).into(),
                q: (-2).into(),
                d: 8.into(),
                r: (-4).into()
            }
        );
    }

    #[test]
    fn parse_cfs() {
        assert_eq!(
            AlphaSpec::parse("cf:[0;(1,2)]").unwrap(),
            AlphaSpec::Cf {
                preperiod: ints(&[0]),
                period: ints(&[1, 2])
            }
        );
        assert_eq!(
            AlphaSpec::parse("cf:[-2; 3, 4, (5)]").unwrap(),
            AlphaSpec::Cf {
                preperiod: ints(&[-2, 3, 4]),
                period: ints(&[5])
            }
        );
        assert!(matches!(
            AlphaSpec::parse("cf:[1;2,3]"),
            Err(Error::RationalValue(_))
        ));
    }

    #[test]
    fn parse_errors_name_the_token() {
        let err = AlphaSpec::parse("surd:(1+x*sqrt(5))/2").unwrap_err();
        assert!(
            matches!(err, Error::Parse { ref token, .. } if token == "x"),
            "{err}"
        );
        let err = AlphaSpec::parse("cf:[0;1,(2,y)]").unwrap_err();
        assert!(
            matches!(err, Error::Parse { ref token, .. } if token == "y"),
            "{err}"
        );
        let err = AlphaSpec::parse("rule:primes").unwrap_err();
        assert!(matches!(err, Error::Parse { ref token, .. } if token == "primes"));
        assert!(matches!(AlphaSpec::parse("phi"), Err(Error::Parse { .. })));
        assert!(matches!(
            AlphaSpec::parse("real:1.5"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            AlphaSpec::parse("cf:[0;1(2)]"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn rational_surd_surfaces_on_source() {
        let spec = AlphaSpec::parse("surd:(0+1*sqrt(4))/1").unwrap();
        assert!(matches!(spec.to_source(), Err(Error::RationalValue(_))));
    }

    #[test]
    fn render_examples() {
        for s in [
            "surd:(1-1*sqrt(5))/2",
            "cf:[0;(1,2)]",
            "cf:[3;1,1,(4,7)]",
            "rule:natural",
        ] {
            assert_eq!(AlphaSpec::parse(s).unwrap().to_string(), s);
        }
    }
}
