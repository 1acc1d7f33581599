//! Parsing of user-supplied numbers into exact rationals.
//!
//! Exact mode accepts fractions (`2/5`) and decimal literals (`0.4`), both
//! carried without rounding: `0.4` becomes `4/10`, not the nearest binary
//! float.

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn parse_rational(raw: &str) -> Result<BigRational, String> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Err("empty number".to_string());
    }
    if let Some((numer, denom)) = trimmed.split_once('/') {
        let numer: BigInt = numer
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in '{trimmed}'"))?;
        let denom: BigInt = denom
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in '{trimmed}'"))?;
        if denom == BigInt::from(0) {
            return Err(format!("zero denominator in '{trimmed}'"));
        }
        return Ok(BigRational::new(numer, denom));
    }
    let (sign, digits) = match trimmed.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, trimmed.strip_prefix('+').unwrap_or(trimmed)),
    };
    let (integer_part, fraction_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if integer_part.is_empty() && fraction_part.is_empty() {
        return Err(format!("'{trimmed}' is not a number"));
    }
    if !integer_part.bytes().all(|b| b.is_ascii_digit())
        || !fraction_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(format!("'{trimmed}' is not a decimal or fraction"));
    }
    let mantissa: BigInt = format!("{integer_part}{fraction_part}")
        .parse()
        .map_err(|_| format!("'{trimmed}' is not a number"))?;
    let scale = BigInt::from(10u32).pow(fraction_part.len() as u32);
    Ok(BigRational::new(BigInt::from(sign) * mantissa, scale))
}

pub fn parse_f64(raw: &str) -> Result<f64, String> {
    let value: f64 = raw
        .trim()
        .parse()
        .map_err(|_| format!("'{raw}' is not a number"))?;
    if !value.is_finite() {
        return Err(format!("'{raw}' is not finite"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("2/5").unwrap(), ratio(2, 5));
        assert_eq!(parse_rational("0.4").unwrap(), ratio(2, 5));
        assert_eq!(parse_rational(".25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("1").unwrap(), ratio(1, 1));
        assert_eq!(parse_rational("-0.1").unwrap(), ratio(-1, 10));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.4.1").is_err());
        assert!(parse_rational("yes").is_err());
        assert!(parse_f64("inf").is_err());
        assert!(parse_f64("abc").is_err());
    }
}
