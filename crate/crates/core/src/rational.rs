//! Exact rationals: the scalar type used everywhere, plus the `p/q` text
//! format shared by every input and output surface.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// Exact rational scalar.
pub type Q = BigRational;

/// `n` as a rational.
pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `p/q` as a rational. Panics on a zero denominator.
pub fn frac(p: i64, q: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(q))
}

/// Parse a rational in the grammar `-?[0-9]+(/[1-9][0-9]*)?`.
///
/// The grammar is checked literally: no whitespace, no leading `+`,
/// and a denominator may not start with `0`.
pub fn parse_rational(text: &str) -> Result<Q, ParseError> {
    let bad = || ParseError::Rational(text.to_string());
    let (num_part, den_part) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num_part.strip_prefix('-').unwrap_or(num_part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = num_part.parse().map_err(|_| bad())?;
    let denom = match den_part {
        None => BigInt::one(),
        Some(d) => {
            let first_ok = d.bytes().next().is_some_and(|b| (b'1'..=b'9').contains(&b));
            if !first_ok || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
    };
    Ok(Q::new(numer, denom))
}

/// Render in lowest terms as `p/q` (or `p` when the denominator is one).
pub fn format_rational(value: &Q) -> String {
    // BigRational keeps itself reduced with a positive denominator.
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal rendering with `digits` fractional digits, rounded half away
/// from zero. Used only as a companion to the exact value.
pub fn format_decimal(value: &Q, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = value.abs() * Q::from_integer(scale.clone());
    let (whole, rem) = scaled.numer().div_rem(scaled.denom());
    let twice_rem: BigInt = rem * 2;
    let rounded = if &twice_rem >= scaled.denom() { whole + 1 } else { whole };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !rounded_is_zero(&int_part, &frac_part) {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

fn rounded_is_zero(a: &BigInt, b: &BigInt) -> bool {
    a.is_zero() && b.is_zero()
}

/// Nearest `f64`, for diagnostics only.
pub fn to_f64(value: &Q) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root of a rational, if it is the square of a rational.
pub fn rational_sqrt(value: &Q) -> Option<Q> {
    if value.is_negative() {
        return None;
    }
    let n = value.numer().sqrt();
    let d = value.denom().sqrt();
    if &(&n * &n) == value.numer() && &(&d * &d) == value.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Minimum of a non-empty list of rationals.
pub fn min_of<'a>(values: impl IntoIterator<Item = &'a Q>) -> Option<Q> {
    values.into_iter().min().cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_accepts_and_rejects() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-4/6").unwrap(), frac(-2, 3));
        assert_eq!(parse_rational("0").unwrap(), int(0));
        for bad in ["", "-", "+1", "1/0", "1/05", "1.5", " 1", "1/", "/2", "1/-2", "a"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn lowest_terms_rendering() {
        assert_eq!(format_rational(&frac(8, 9)), "8/9");
        assert_eq!(format_rational(&frac(4, 4)), "1");
        assert_eq!(format_rational(&frac(3, -6)), "-1/2");
    }

    #[test]
    fn decimal_rendering_rounds() {
        assert_eq!(format_decimal(&frac(8, 9), 4), "0.8889");
        assert_eq!(format_decimal(&frac(-1, 3), 2), "-0.33");
        assert_eq!(format_decimal(&frac(5, 2), 0), "3");
        assert_eq!(format_decimal(&frac(-1, 1000), 2), "0.00");
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(rational_sqrt(&frac(2, 1)), None);
        assert_eq!(rational_sqrt(&frac(-1, 1)), None);
    }

    proptest::proptest! {
        #[test]
        fn text_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
            let v = frac(p, q);
            proptest::prop_assert_eq!(parse_rational(&format_rational(&v)).unwrap(), v);
        }
    }
}
