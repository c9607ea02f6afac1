//! Rationals: naive height, height-ordered enumeration, exact roots and the
//! `"num/den"` string form used in every config and report.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rat;

/// Builds `num/den` from machine integers. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Naive multiplicative height `max(|num|, den)` of the reduced fraction.
pub fn rat_height(q: &Rat) -> BigInt {
    let n = q.numer().abs();
    let d = q.denom().abs();
    n.max(d)
}

/// All reduced fractions of height at most `max_height`, each once, ordered by
/// height and then by value.
pub fn enumerate_rationals(max_height: u64) -> Vec<Rat> {
    let h = max_height as i64;
    let mut out = Vec::new();
    for den in 1..=h {
        for num in -h..=h {
            if num.gcd(&den) == 1 {
                out.push(rat(num, den));
            }
        }
    }
    out.sort_by(cmp_height_value);
    out
}

/// Ordering used for every enumeration and report: height first, then value.
pub fn cmp_height_value(a: &Rat, b: &Rat) -> Ordering {
    rat_height(a).cmp(&rat_height(b)).then_with(|| a.cmp(b))
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn exact_cbrt(n: &BigInt) -> Option<BigInt> {
    let r = n.cbrt();
    (&r * &r * &r == *n).then_some(r)
}

/// Nonnegative rational square root of `q`, if `q` is a square in Q.
pub fn is_rational_square(q: &Rat) -> Option<Rat> {
    let n = exact_sqrt(q.numer())?;
    let d = exact_sqrt(q.denom())?;
    Some(Rat::new(n, d))
}

/// Rational cube root of `q`, if `q` is a cube in Q.
pub fn is_rational_cube(q: &Rat) -> Option<Rat> {
    let n = exact_cbrt(q.numer())?;
    let d = exact_cbrt(q.denom())?;
    Some(Rat::new(n, d))
}

pub fn is_integral(q: &Rat) -> bool {
    q.denom().is_one()
}

/// `"num/den"`, or `"num"` when the denominator is 1.
pub fn format_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// Serde adapter for a single rational in string form.
pub mod serde_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rat;

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rat(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a sequence of rationals in string form.
pub mod serde_str_vec {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rat;

    pub fn serialize<S: Serializer>(qs: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(qs.len()))?;
        for q in qs {
            seq.serialize_element(&super::format_rat(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| super::parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
