//! Exact rationals and the `"p/q"` text encoding used in every file format.

use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational {0:?}")]
pub struct ParseRationalError(pub String);

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.95"`.
pub fn parse(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| err())?
        };
        let frac_num: BigInt = frac.parse().map_err(|_| err())?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(whole * &denom + frac_num, denom);
        return Ok(if negative { -value } else { value });
    }
    let p: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(p))
}

/// Canonical `"p/q"` text; integers print without a denominator.
pub fn format(r: &Rational) -> String {
    Display(r).to_string()
}

struct Display<'a>(&'a Rational);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Lossy decimal view, only for human-facing output.
pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Smallest integer `m` with `m >= theta * n`.
///
/// A matching number clears a threshold `theta * |F|` exactly when it is at
/// least this value, whether or not `theta * |F|` is integral.
pub fn threshold(theta: &Rational, n: usize) -> usize {
    let scaled = theta * Rational::from_integer(BigInt::from(n));
    if scaled.is_negative() {
        return 0;
    }
    let ceil = scaled.numer().div_ceil(scaled.denom());
    ceil.to_usize().unwrap_or(usize::MAX)
}

/// `count / total` as an exact rational; `total` must be positive.
pub fn fraction(count: usize, total: usize) -> Rational {
    Rational::new(BigInt::from(count), BigInt::from(total))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_three_spellings() {
        assert_eq!(parse("9/10").unwrap(), ratio(9, 10));
        assert_eq!(parse("-3").unwrap(), int(-3));
        assert_eq!(parse("0.95").unwrap(), ratio(19, 20));
        assert_eq!(parse("-.5").unwrap(), ratio(-1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1.").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format(&ratio(6, 8)), "3/4");
        assert_eq!(format(&int(2)), "2");
        assert_eq!(format(&ratio(-1, 3)), "-1/3");
    }

    #[test]
    fn threshold_rounds_up_only_when_fractional() {
        assert_eq!(threshold(&ratio(9, 10), 10), 9);
        assert_eq!(threshold(&ratio(9, 10), 17), 16);
        assert_eq!(threshold(&int(1), 5), 5);
        assert_eq!(threshold(&int(0), 5), 0);
    }
}
