//! Exact rational scalars and their `"p/q"` text form.
//!
//! Every model, oracle and report in this crate works over [`Rational`], an
//! arbitrary-precision fraction that is always kept in lowest terms with a
//! positive denominator. The canonical text form is `"p/q"`, or just `"p"`
//! when the denominator is one.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

/// Parse `"p"`, `"-p"`, `"p/q"`. Surrounding whitespace is ignored; a zero
/// denominator and anything else (decimals, exponents) is rejected.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    let err = || ParseRationalError(text.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let valid = |part: &str| {
        let digits = part.strip_prefix('-').unwrap_or(part);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) {
        return Err(err());
    }
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"p/q"` / `"p"` rendering. Inverse of [`parse_rational`].
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn from_usize(value: usize) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `value` as a `usize` if it is a non-negative integer that fits.
pub fn to_usize(value: &Rational) -> Option<usize> {
    if !value.is_integer() || value.is_negative() {
        return None;
    }
    usize::try_from(value.to_integer()).ok()
}

pub fn ceil_to_bigint(value: &Rational) -> BigInt {
    value.ceil().to_integer()
}

/// Least common multiple of two positive grid sizes.
pub fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}

pub fn is_binary(value: &Rational) -> bool {
    value.is_zero() || value.is_one()
}

/// Serde adapter: a single rational as a JSON string.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = RationalText::deserialize(d)?;
        text.into_rational().map_err(serde::de::Error::custom)
    }

    /// Accept `"p/q"` strings and bare JSON integers; never floats.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalText {
        Text(String),
        Int(i64),
    }

    impl RationalText {
        pub(crate) fn into_rational(self) -> Result<Rational, ParseRationalError> {
            match self {
                RationalText::Text(s) => parse_rational(&s),
                RationalText::Int(i) => Ok(int(i)),
            }
        }
    }
}

/// Serde adapter: a vector of rationals as a JSON array of strings.
pub mod serde_rational_vec {
    use super::serde_rational::RationalText;
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<RationalText>::deserialize(d)?
            .into_iter()
            .map(|t| t.into_rational().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter: a rational matrix as nested JSON arrays of strings.
pub mod serde_rational_matrix {
    use super::serde_rational::RationalText;
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for row in rows {
            let texts: Vec<String> = row.iter().map(format_rational).collect();
            seq.serialize_element(&texts)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<RationalText>>::deserialize(d)?
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|t| t.into_rational().map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-5/7").unwrap(), rat(-5, 7));
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational(" 1/-2 ").unwrap(), rat(-1, 2));
    }

    #[test]
    fn rejects_floats_and_zero_denominators() {
        for bad in ["0.5", "1e3", "1/0", "", "/", "a/b", "--1", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_integers_without_denominator() {
        assert_eq!(format_rational(&int(-4)), "-4");
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(0, 9)), "0");
    }

    proptest! {
        #[test]
        fn text_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let q = rat(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
    }
}
