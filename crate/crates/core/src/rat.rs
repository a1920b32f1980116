//! Exact rational scalars. Everything in this crate computes over `Rat`;
//! floating point never enters the engine.

use num::bigint::BigInt;
use num::BigRational;
use once_cell::sync::Lazy;
use std::str::FromStr;
use thiserror::Error;

pub type Rat = BigRational;

pub static ZERO: Lazy<Rat> = Lazy::new(|| rat(0));
pub static ONE: Lazy<Rat> = Lazy::new(|| rat(1));
pub static NEG_ONE: Lazy<Rat> = Lazy::new(|| rat(-1));
pub static TWO: Lazy<Rat> = Lazy::new(|| rat(2));

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q` as a rational. Panics if `q == 0`.
pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error(
        "invalid rational literal {0:?} (expected integer or p/q; floating point is rejected)"
    )]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parse `"p"` or `"p/q"`. Anything else — notably floating-point
/// literals like `0.5` or `1e-3` — is an error.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRatError::Empty);
    }
    let mut parts = s.splitn(2, '/');
    let num_part = parts.next().unwrap();
    let numer =
        BigInt::from_str(num_part.trim()).map_err(|_| ParseRatError::Invalid(s.to_string()))?;
    match parts.next() {
        None => Ok(Rat::from_integer(numer)),
        Some(den_part) => {
            let denom = BigInt::from_str(den_part.trim())
                .map_err(|_| ParseRatError::Invalid(s.to_string()))?;
            if denom == BigInt::from(0) {
                return Err(ParseRatError::ZeroDenominator(s.to_string()));
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

/// Comma-separated rationals, e.g. `-1,0,1/2`.
pub fn parse_rat_list(s: &str) -> Result<Vec<Rat>, ParseRatError> {
    s.split(',').map(parse_rat).collect()
}

/// Number of integers `k >= min_k` with `k < bound`.
pub fn count_ints_below(bound: &Rat, min_k: i64) -> u64 {
    let lo = rat(min_k);
    if *bound <= lo {
        return 0;
    }
    // Largest valid k is ceil(bound) - 1 whether or not bound is integral.
    let top = bound.ceil() - &*ONE;
    let span = top.to_integer() - BigInt::from(min_k) + BigInt::from(1);
    let (_, digits) = span.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => u64::MAX,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rat("3").unwrap(), rat(3));
        assert_eq!(parse_rat("-1/2").unwrap(), frac(-1, 2));
        assert_eq!(parse_rat(" 4/6 ").unwrap(), frac(2, 3));
    }

    #[test]
    fn rejects_floats_and_garbage() {
        assert!(parse_rat("0.5").is_err());
        assert!(parse_rat("1e-3").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn count_ints_below_handles_integer_and_fractional_bounds() {
        assert_eq!(count_ints_below(&rat(2), 0), 2); // k in {0,1}
        assert_eq!(count_ints_below(&frac(5, 2), 0), 3); // k in {0,1,2}
        assert_eq!(count_ints_below(&rat(0), 0), 0);
        assert_eq!(count_ints_below(&rat(-3), 0), 0);
        assert_eq!(count_ints_below(&rat(2), 1), 1); // k in {1}
    }
}
