//! Exact rational scalars, a rounded high-precision carrier for irrational
//! quantities, and the combinatorial primitives used by every formula in the
//! crate.
//!
//! Rationals are `num_rational::BigRational`, which keeps its value in lowest
//! terms with a positive denominator after every operation.

use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Environment variable that overrides [`Precision::bits`].
pub const PRECISION_ENV: &str = "MATURITY_PRECISION_BITS";

pub const DEFAULT_PRECISION_BITS: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericError {
    #[error("cannot parse {0:?} as a rational (expected \"num/den\", an integer, or a decimal)")]
    Parse(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("precision must be at least 32 bits, got {0}")]
    PrecisionTooLow(u32),
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(String),
}

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn from_biguint(value: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"num/den"`, a bare integer, or a plain/scientific decimal such as
/// `"0.25"` or `"1e-30"`. Decimals are converted exactly.
pub fn parse_rational(text: &str) -> Result<Rational, NumericError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(NumericError::Parse(text.to_string()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| NumericError::Parse(text.to_string()))?;
        let den = BigInt::from_str(den.trim()).map_err(|_| NumericError::Parse(text.to_string()))?;
        if den.is_zero() {
            return Err(NumericError::ZeroDenominator(text.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    if let Ok(value) = BigInt::from_str(s) {
        return Ok(Rational::from_integer(value));
    }
    parse_decimal(s).ok_or_else(|| NumericError::Parse(text.to_string()))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(idx) => (&s[..idx], s[idx + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: String = format!("{whole}{frac}");
    let mut value = Rational::from_integer(BigInt::from_str(&digits).ok()?);
    let shift = exponent - frac.len() as i32;
    let ten = BigInt::from(10u32);
    if shift >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Some(if negative { -value } else { value })
}

/// C(n, k), zero outside `0 <= k <= n`.
pub fn binomial_coefficient(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// a·(a−1)·…·(a−j+1); the empty product for `j = 0`, zero when `j > a`.
pub fn falling_factorial(a: u64, j: u64) -> BigUint {
    if j > a {
        return BigUint::zero();
    }
    (0..j).fold(BigUint::one(), |acc, step| acc * (a - step))
}

/// x·(x+1)·…·(x+j−1).
pub fn rising_factorial(x: &Rational, j: u64) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..j {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

pub fn pow(base: &Rational, exp: u64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Working precision and comparison tolerance for priors whose probabilities
/// are irrational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Precision {
    pub bits: u32,
    /// Relative band: two values closer than `tolerance · max(|a|, |b|)` are
    /// not ordered.
    pub tolerance: Rational,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            bits: DEFAULT_PRECISION_BITS,
            tolerance: Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10u32), 30)),
        }
    }
}

impl Precision {
    pub fn new(bits: u32, tolerance: Rational) -> Result<Self, NumericError> {
        if bits < 32 {
            return Err(NumericError::PrecisionTooLow(bits));
        }
        if !tolerance.is_positive() {
            return Err(NumericError::NonPositiveTolerance(tolerance.to_string()));
        }
        Ok(Precision { bits, tolerance })
    }

    /// Default precision, with `bits` taken from `MATURITY_PRECISION_BITS`
    /// when that variable holds a valid value.
    pub fn from_env() -> Self {
        let mut precision = Precision::default();
        if let Some(bits) = std::env::var(PRECISION_ENV).ok().and_then(|v| v.trim().parse::<u32>().ok()) {
            if bits >= 32 {
                precision.bits = bits;
            }
        }
        precision
    }
}

/// A rational approximation of a real number, together with the precision it
/// was computed at and the tolerance that must be applied when comparing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxReal {
    pub value: Rational,
    pub precision_bits: u32,
    pub tolerance: Rational,
}

impl ApproxReal {
    pub fn compare(&self, other: &ApproxReal) -> Comparison {
        let tolerance = self.tolerance.clone().max(other.tolerance.clone());
        compare_within(&self.value, &other.value, &tolerance)
    }
}

/// `base^exponent` for a positive integer base and rational exponent.
///
/// The result is exact (`Ok`) when the exponent is an integer. Otherwise it
/// is the floor of the true value at `precision.bits` fractional bits, which
/// has relative error below `2^-bits` since `base >= 1`.
#[allow(clippy::result_large_err)] // the approximation is the payload, not an error
pub fn rational_power(base: &BigUint, exponent: &Rational, precision: &Precision) -> Result<Rational, ApproxReal> {
    assert!(!base.is_zero(), "rational_power needs a positive base");
    let base_q = from_biguint(base.clone());
    let magnitude = exponent.abs();
    let numer = magnitude.numer().to_u64().expect("exponent numerator fits in u64");
    let denom = magnitude.denom().to_u32().expect("exponent denominator fits in u32");
    if denom == 1 {
        let value = pow(&base_q, numer);
        return Ok(if exponent.is_negative() { value.recip() } else { value });
    }
    let bits = precision.bits as usize;
    let radicand = num_traits::pow(base.clone(), numer as usize) << (bits * denom as usize);
    let root = radicand.nth_root(denom);
    let scale = BigUint::one() << bits;
    let mut value = Rational::new(BigInt::from(root), BigInt::from(scale));
    if exponent.is_negative() {
        value = value.recip();
    }
    Err(ApproxReal { value, precision_bits: precision.bits, tolerance: precision.tolerance.clone() })
}

/// Outcome of comparing two quantities that may carry approximation error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    /// Distinct values that lie within the tolerance band of each other.
    Indeterminate,
}

impl Comparison {
    pub fn exact(a: &Rational, b: &Rational) -> Self {
        match a.cmp(b) {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }

    /// True for `Equal`, and for `Indeterminate` since the band straddles
    /// equality.
    pub fn is_equal_within_tolerance(self) -> bool {
        matches!(self, Comparison::Equal | Comparison::Indeterminate)
    }
}

pub fn compare_within(a: &Rational, b: &Rational, tolerance: &Rational) -> Comparison {
    let exact = Comparison::exact(a, b);
    if exact == Comparison::Equal {
        return exact;
    }
    let scale = a.abs().max(b.abs());
    if (a - b).abs() <= tolerance * scale {
        Comparison::Indeterminate
    } else {
        exact
    }
}

/// Compares exactly when `tolerance` is `None`, otherwise with the relative
/// tolerance band.
pub fn compare(a: &Rational, b: &Rational, tolerance: Option<&Rational>) -> Comparison {
    match tolerance {
        None => Comparison::exact(a, b),
        Some(tol) => compare_within(a, b, tol),
    }
}

/// Renders `value` in positional decimal notation rounded (half away from
/// zero) to `significant` significant digits.
pub fn to_decimal(value: &Rational, significant: u32) -> String {
    assert!(significant > 0);
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let magnitude = value.abs();
    let ten = Rational::from_integer(BigInt::from(10u32));

    // Exponent e with 10^e <= |value| < 10^(e+1).
    let mut exponent: i64 = 0;
    let mut probe = Rational::one();
    if magnitude >= probe {
        while magnitude >= &probe * &ten {
            probe *= &ten;
            exponent += 1;
        }
    } else {
        while magnitude < probe {
            probe /= &ten;
            exponent -= 1;
        }
    }

    let shift = significant as i64 - 1 - exponent;
    let scaled = if shift >= 0 {
        &magnitude * pow(&ten, shift as u64)
    } else {
        &magnitude / pow(&ten, (-shift) as u64)
    };
    let two = BigInt::from(2u32);
    let (quot, rem) = scaled.numer().div_rem(scaled.denom());
    let mut digits_int = quot;
    if rem * &two >= *scaled.denom() {
        digits_int += 1u32;
    }
    let mut shift = shift;
    if digits_int.to_string().len() as u32 > significant {
        digits_int /= 10u32;
        shift -= 1;
    }
    let digits = digits_int.to_string();
    let body = if shift <= 0 {
        format!("{digits}{}", "0".repeat((-shift) as usize))
    } else {
        let shift = shift as usize;
        if digits.len() > shift {
            let (whole, frac) = digits.split_at(digits.len() - shift);
            format!("{whole}.{frac}")
        } else {
            format!("0.{}{digits}", "0".repeat(shift - digits.len()))
        }
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Serde adapters writing rationals as `"num/den"` strings.
pub mod serde_rational {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::super::{parse_rational, Rational};
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(values: &[Rational], serializer: S) -> Result<S::Ok, S::Error> {
            let mut seq = serializer.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&v.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<String>::deserialize(deserializer)?;
            raw.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
        }
    }

    pub mod option {
        use super::super::Rational;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(value: &Option<Rational>, serializer: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => serializer.serialize_some(&v.to_string()),
                None => serializer.serialize_none(),
            }
        }
    }
}
