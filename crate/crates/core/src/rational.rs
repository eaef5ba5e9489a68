//! Helpers around [`BigRational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `x^e` for a non-negative integer exponent.
pub fn pow(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

/// Always `num/den`, even for integers. Used wherever a value leaves the
/// process (JSON, sidecars), so that it parses back unambiguously.
pub fn to_fraction_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// `num/den`, or just `num` when the denominator is one.
pub fn to_compact_string(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        to_fraction_string(x)
    }
}

/// Parses an optionally signed integer or `num/den`.
pub fn parse_rational(token: &str) -> std::result::Result<Rational, String> {
    let token = token.trim();
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational literal `{token}`"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational literal `{token}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{token}`"));
    }
    Ok(Rational::new(num, den))
}

/// Like [`parse_rational`] but reports a library error without line context.
pub fn parse_rational_arg(token: &str) -> Result<Rational> {
    parse_rational(token).map_err(Error::InvalidArgument)
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (positive multiple). The zero vector maps to zeros.
pub fn primitive_integer_vector(values: &[Rational]) -> Vec<BigInt> {
    let lcm = denominator_lcm(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    make_primitive(ints)
}

pub fn make_primitive(mut ints: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
        if g.is_one() {
            return ints;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for v in ints.iter_mut() {
            *v /= &g;
        }
    }
    ints
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Smallest integer `n` with `n^e >= value`, for `value >= 0`.
pub fn ceil_root(value: &BigInt, e: u32) -> BigInt {
    assert!(!value.is_negative(), "root of a negative integer");
    let floor = value.nth_root(e);
    if num_traits::pow(floor.clone(), e as usize) == *value {
        floor
    } else {
        floor + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signed_and_fractional_literals() {
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("+4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational("5/-7").unwrap(), ratio(-5, 7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn fraction_strings() {
        assert_eq!(to_fraction_string(&int(2)), "2/1");
        assert_eq!(to_compact_string(&int(2)), "2");
        assert_eq!(to_compact_string(&ratio(-1, 2)), "-1/2");
    }

    #[test]
    fn ceil_root_is_tight() {
        assert_eq!(ceil_root(&BigInt::from(16), 2), BigInt::from(4));
        assert_eq!(ceil_root(&BigInt::from(17), 2), BigInt::from(5));
        assert_eq!(ceil_root(&BigInt::from(0), 3), BigInt::from(0));
        assert_eq!(ceil_root(&BigInt::from(28), 3), BigInt::from(4));
    }

    #[test]
    fn primitive_vectors_keep_direction() {
        let v = primitive_integer_vector(&[ratio(1, 2), ratio(-3, 4), int(0)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }
}
