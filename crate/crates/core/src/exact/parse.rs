//! Number literals: `7`, `-3/4`, `a+b*t`, `a-b*t` (with `t` = τ), where `a`
//! and `b` are themselves integer or rational literals.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactNumber;
use crate::ParseError;

impl FromStr for ExactNumber {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_number_at(s, 0)
    }
}

/// Parses a number literal occupying all of `s`; `offset` shifts reported positions.
pub fn parse_number_at(s: &str, offset: usize) -> Result<ExactNumber, ParseError> {
    let trimmed = s.trim_end();
    let lead = trimmed.len() - trimmed.trim_start().len();
    let body = trimmed.trim_start();
    let offset = offset + lead;
    if body.is_empty() {
        return Err(ParseError::new(offset, "expected a number"));
    }
    if let Some(stem) = body.strip_suffix('t') {
        return parse_quadratic(stem, offset);
    }
    Ok(ExactNumber::Rational(parse_rational(body, offset)?))
}

fn parse_quadratic(stem: &str, offset: usize) -> Result<ExactNumber, ParseError> {
    // stem is everything before the trailing `t`: "", "-", "b*", "a+b*", "a-", ...
    let coeff_end = stem.strip_suffix('*').unwrap_or(stem);
    // Split point: the last '+' or '-' that is not the leading sign.
    let split = coeff_end
        .char_indices()
        .rev()
        .find(|&(i, c)| (c == '+' || c == '-') && i > 0)
        .map(|(i, _)| i);
    let (a, b) = match split {
        Some(i) => {
            let a = parse_rational(&coeff_end[..i], offset)?;
            let sign = &coeff_end[i..=i];
            let mag = &coeff_end[i + 1..];
            let b = if mag.is_empty() {
                BigRational::one()
            } else {
                if mag.starts_with(['+', '-']) {
                    return Err(ParseError::new(offset + i + 1, "unexpected sign"));
                }
                parse_rational(mag, offset + i + 1)?
            };
            (a, if sign == "-" { -b } else { b })
        }
        None => {
            let b = match coeff_end {
                "" | "+" => BigRational::one(),
                "-" => -BigRational::one(),
                other => parse_rational(other, offset)?,
            };
            (BigRational::zero(), b)
        }
    };
    Ok(ExactNumber::quadratic(a, b))
}

fn parse_rational(s: &str, offset: usize) -> Result<BigRational, ParseError> {
    match s.find('/') {
        Some(i) => {
            let num = parse_int(&s[..i], offset)?;
            let den_str = &s[i + 1..];
            if den_str.starts_with(['+', '-']) {
                return Err(ParseError::new(offset + i + 1, "denominator must be unsigned"));
            }
            let den = parse_int(den_str, offset + i + 1)?;
            if den.is_zero() {
                return Err(ParseError::new(offset + i + 1, "zero denominator"));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s, offset)?)),
    }
}

fn parse_int(s: &str, offset: usize) -> Result<BigInt, ParseError> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() {
        return Err(ParseError::new(offset + s.len(), "expected digits"));
    }
    if let Some((i, c)) = digits.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
        let at = offset + (s.len() - digits.len()) + i;
        return Err(ParseError::new(at, format!("unexpected character '{c}'")));
    }
    Ok(s.trim_start_matches('+').parse::<BigInt>().expect("validated digits"))
}
