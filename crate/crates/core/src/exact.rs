//! Exact rational helpers. Probabilities stay rational until they are reported in bits.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn q_int(n: usize) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(token: &str) -> Option<Q> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (token.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub fn format_rational(value: &Q) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Base-2 logarithm of a big unsigned integer, accurate for values far beyond `f64` range.
pub fn log2_biguint(value: &BigUint) -> f64 {
    if value.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = value.bits();
    if bits <= 1000 {
        return value.to_f64().map(f64::log2).unwrap_or(f64::INFINITY);
    }
    let shift = bits - 64;
    let top = (value >> shift).to_f64().unwrap_or(f64::MAX);
    top.log2() + shift as f64
}

/// Base-2 logarithm of a non-negative rational.
pub fn log2_rational(value: &Q) -> f64 {
    match value.numer().sign() {
        Sign::Minus => f64::NAN,
        Sign::NoSign => f64::NEG_INFINITY,
        Sign::Plus => {
            log2_biguint(value.numer().magnitude()) - log2_biguint(value.denom().magnitude())
        }
    }
}

pub(crate) fn check_unit_interval(value: &Q, what: impl Fn() -> String) -> Result<()> {
    if value < &Q::zero() || value > &Q::one() {
        return Err(Error::NotStochastic(format!("{} = {} outside [0, 1]", what(), format_rational(value))));
    }
    Ok(())
}

pub(crate) fn check_sums_to_one<'a>(
    values: impl IntoIterator<Item = &'a Q>,
    what: impl Fn() -> String,
) -> Result<()> {
    let mut total = Q::zero();
    for v in values {
        if v < &Q::zero() {
            return Err(Error::NotStochastic(format!("{} has a negative entry", what())));
        }
        total += v;
    }
    if !total.is_one() {
        return Err(Error::NotStochastic(format!(
            "{} sums to {}, not 1",
            what(),
            format_rational(&total)
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/6"), Some(q(1, 2)));
        assert_eq!(parse_rational("1"), Some(q(1, 1)));
        assert_eq!(parse_rational("0"), Some(q(0, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn log2_handles_huge_values() {
        let big = BigUint::one() << 5000u32;
        assert_eq!(log2_biguint(&big), 5000.0);
        assert!((log2_rational(&q(1, 8)) + 3.0).abs() < 1e-12);
        assert_eq!(log2_rational(&q(0, 1)), f64::NEG_INFINITY);
    }
}
