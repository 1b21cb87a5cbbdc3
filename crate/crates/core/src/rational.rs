//! Text forms of exact rationals.
//!
//! Accepted inputs: `"p/q"`, integers (`"3"`, `"-2"`) and finite decimals
//! (`"0.9"`, `"-1.25"`). Output is always `"p/q"` in lowest terms, or a bare
//! integer when the denominator is one.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Rational};

pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let digits_ok = |d: &str| d.chars().all(|c| c.is_ascii_digit());
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !digits_ok(int_digits) || !digits_ok(frac_part) || (int_digits.is_empty() && frac_part.is_empty()) {
            return Err(bad());
        }
        let mantissa: BigInt = format!("{int_digits}{frac_part}").parse().unwrap_or_else(|_| BigInt::zero());
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let value = Rational::new(mantissa, scale);
        return Ok(if negative { -value } else { value });
    }
    let int: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(int))
}

pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Shorthand used heavily in tests and presets.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}
