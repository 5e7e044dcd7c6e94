//! Exact rational arithmetic helpers.
//!
//! Everything fractional in this crate (density, fractional cover values,
//! fairness thresholds) is a [`Rational`]. Reports serialize rationals as
//! `"p/q"` strings, never as floating point.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

pub type Rational = num::BigRational;

/// `p/q` as an exact rational. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_usize(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// ⌊alpha · k⌋ for a nonnegative rational `alpha`.
pub fn floor_times(alpha: &Rational, k: usize) -> i64 {
    let scaled = alpha * from_usize(k);
    let floored = scaled.floor();
    big_to_i64(floored.numer())
}

/// ⌊r⌋ as an integer; the caller guarantees desk-scale magnitudes.
pub fn floor_to_i64(r: &Rational) -> i64 {
    big_to_i64(r.floor().numer())
}

/// ⌈r⌉ as an integer.
pub fn ceil_to_i64(r: &Rational) -> i64 {
    big_to_i64(r.ceil().numer())
}

fn big_to_i64(b: &BigInt) -> i64 {
    i64::try_from(b.clone()).expect("rational magnitude exceeds i64 at desk scale")
}

/// Canonical `"p/q"` form, always with an explicit denominator.
pub fn format_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_pq(s: &str) -> crate::Result<Rational> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| crate::Error::InvalidSpec(format!("bad rational {s:?}: {e}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(crate::Error::InvalidSpec(format!(
                    "bad rational {s:?}: zero denominator"
                )));
            }
            Ok(Rational::new(parse_int(p)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Human-friendly form: integers without the `/1`.
pub fn display(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format_pq(r)
    }
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

/// Serde adapter for `"p/q"` fields: `#[serde(with = "crate::rat::pq")]`.
pub mod pq {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_pq(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_pq(&s).map_err(serde::de::Error::custom)
    }
}
