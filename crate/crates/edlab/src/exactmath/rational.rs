//! Thin helpers around `num_rational::BigRational`.
//!
//! `BigRational` already guarantees the invariants the rest of the crate
//! relies on: values are stored in lowest terms with a positive denominator,
//! and all arithmetic is exact. Rationals cross serialization boundaries as
//! `"p/q"` strings (or `"p"` when the denominator is one).

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::str::FromStr;

pub use num_rational::BigRational;

use super::ExactError;

/// Rational from an integer pair. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(num))
}

/// Renders as `"p/q"`, or just `"p"` for integers.
pub fn format_rat(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or `"p"` with optional sign and surrounding whitespace.
pub fn parse_rat(s: &str) -> Result<BigRational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::BadRational(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p = BigInt::from_str(s).map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// Lossy conversion for reporting and for the numeric code paths.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of approximations for extreme magnitudes.
        let n = r.numer().to_f64().unwrap_or(if r.numer().is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-7/5", "0", "12", "-9"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
    }

    #[test]
    fn parse_normalizes_to_lowest_terms() {
        assert_eq!(format_rat(&parse_rat("6/8").unwrap()), "3/4");
        assert_eq!(format_rat(&parse_rat("3/-4").unwrap()), "-3/4");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1.5").is_err());
    }
}
