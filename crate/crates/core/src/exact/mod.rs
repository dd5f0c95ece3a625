//! Exact arithmetic kernel.
//!
//! Integers and rationals are arbitrary precision ([`Int`], [`Rat`]). Irrational
//! quantities (π, square roots, Γ at half-integers, ζ(n), logarithms, γ) are
//! described symbolically by [`Real`] and evaluated to [`RealEnclosure`]s, closed
//! intervals with rational endpoints that can be refined on demand. Strict
//! inequalities are decided by [`certified_compare`], which never trusts a
//! floating-point value.

mod compare;
mod constants;
mod interval;
mod power;
mod real;

pub use compare::{certified_compare, certified_compare_with, CompareBudget, Verdict};
pub use constants::{enclose_pi, enclose_sqrt, EULER_GAMMA_DIGITS};
pub use interval::RealEnclosure;
pub use power::PowerProduct;
pub use real::Real;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Int = BigInt;
/// Arbitrary-precision rational in canonical form (denominator > 0, reduced).
pub type Rat = num_rational::BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

pub fn rat_from_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

/// 10^-k as a rational.
pub fn ten_pow_neg(k: u32) -> Rat {
    Rat::new(Int::one(), num_traits::pow(Int::from(10), k as usize))
}

pub fn floor(x: &Rat) -> Int {
    x.floor().to_integer()
}

pub fn ceil(x: &Rat) -> Int {
    x.ceil().to_integer()
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &Int) -> Int {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// Smallest integer whose square is ≥ n.
pub fn isqrt_ceil(n: &Int) -> Int {
    let s = n.sqrt();
    if &s * &s == *n {
        s
    } else {
        s + 1
    }
}

pub fn isqrt_u64(n: u64) -> u64 {
    n.sqrt()
}

/// Exact rational square root, when one exists.
pub fn exact_sqrt(x: &Rat) -> Option<Rat> {
    exact_root(x, 2)
}

/// Exact rational k-th root, when one exists (negative inputs only for odd k).
pub fn exact_root(x: &Rat, k: u32) -> Option<Rat> {
    if k == 0 {
        return None;
    }
    if x.is_negative() {
        if k.is_multiple_of(2) {
            return None;
        }
        return exact_root(&-x, k).map(|r| -r);
    }
    let n = x.numer().nth_root(k);
    let d = x.denom().nth_root(k);
    if num_traits::pow(n.clone(), k as usize) == *x.numer()
        && num_traits::pow(d.clone(), k as usize) == *x.denom()
    {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Integer power with a possibly negative exponent.
pub fn rat_powi(x: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Canonical "num/den" string (denominator always printed).
pub fn fmt_rat(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Short form: integers print without a denominator.
pub fn fmt_rat_short(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        fmt_rat(x)
    }
}

/// Parses "a", "a/b", "-a/b", or a finite decimal "1.25" / "1e6" into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: Int = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: Int = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: Int = format!("{ip}{fp}0").parse::<Int>().map_err(|_| bad())? / 10;
    let scale = exp - fp.len() as i64;
    let mut v = rat_from_int(&digits) * rat_powi(&rat_int(10), scale);
    if neg {
        v = -v;
    }
    Ok(v)
}

/// Parses a comma-separated list of rationals.
pub fn parse_rat_list(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(parse_rat).collect()
}

/// Parses an integer that may be written in scientific notation ("1e6").
pub fn parse_int_loose(s: &str) -> Result<Int> {
    let r = parse_rat(s)?;
    if !r.is_integer() {
        return Err(Error::Parse(format!("expected an integer, got {s:?}")));
    }
    Ok(r.to_integer())
}

pub fn to_i64(x: &Int) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::budget(format!("integer {x} exceeds 64-bit range")))
}

pub fn sign(x: &Rat) -> i32 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn factorial(n: u64) -> Int {
    (1..=n).fold(Int::one(), |acc, k| acc * k)
}

/// Rational approximation of an `f64`, used only for report formatting and test
/// fixtures, never for decisions.
pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapters: rationals travel as "num/den" strings.
pub mod serde_rat {
    use super::{fmt_rat, parse_rat, Rat};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => parse_rat(&s).map_err(D::Error::custom),
            serde_json::Value::Number(n) => parse_rat(&n.to_string()).map_err(D::Error::custom),
            other => Err(D::Error::custom(format!("expected rational, got {other}"))),
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(x) => s.serialize_some(&fmt_rat(x)),
                None => s.serialize_none(),
            }
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(xs: &[Rat], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&fmt_rat(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
            let v: Vec<serde_json::Value> = Vec::deserialize(d)?;
            v.into_iter()
                .map(|e| match e {
                    serde_json::Value::String(s) => parse_rat(&s).map_err(D::Error::custom),
                    serde_json::Value::Number(n) => {
                        parse_rat(&n.to_string()).map_err(D::Error::custom)
                    }
                    other => Err(D::Error::custom(format!("expected rational, got {other}"))),
                })
                .collect()
        }
    }

    pub mod matrix {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(m: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(m.len()))?;
            for row in m {
                let row: Vec<String> = row.iter().map(fmt_rat).collect();
                seq.serialize_element(&row)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rat>>, D::Error> {
            let v: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
            v.into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|e| match e {
                            serde_json::Value::String(s) => parse_rat(&s).map_err(D::Error::custom),
                            serde_json::Value::Number(n) => {
                                parse_rat(&n.to_string()).map_err(D::Error::custom)
                            }
                            other => {
                                Err(D::Error::custom(format!("expected rational, got {other}")))
                            }
                        })
                        .collect()
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-2").unwrap(), rat_int(-2));
        assert_eq!(parse_rat("1.25").unwrap(), rat(5, 4));
        assert_eq!(parse_rat("1e6").unwrap(), rat_int(1_000_000));
        assert_eq!(parse_rat("2.5e-1").unwrap(), rat(1, 4));
        assert_eq!(parse_rat(".5").unwrap(), rat(1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
        assert!(parse_int_loose("1.5").is_err());
    }

    #[test]
    fn canonical_string() {
        assert_eq!(fmt_rat(&rat(4, -6)), "-2/3");
        assert_eq!(fmt_rat(&rat_int(5)), "5/1");
        assert_eq!(fmt_rat_short(&rat_int(5)), "5");
    }

    #[test]
    fn roots() {
        assert_eq!(exact_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(exact_sqrt(&rat_int(2)), None);
        assert_eq!(exact_root(&rat(-8, 27), 3), Some(rat(-2, 3)));
        assert_eq!(isqrt_ceil(&int(10)), int(4));
        assert_eq!(isqrt_ceil(&int(9)), int(3));
    }
}
