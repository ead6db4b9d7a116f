//! Elements of the Lawvere quantale `[0, ∞]` with `min` as addition and `+`
//! as multiplication.
//!
//! Values are exact nonnegative rationals whenever possible. A double
//! precision variant exists for values produced by `-log`, and anything
//! touching a float stays a float.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::SeriesError;

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// Tolerance used when comparing values that went through floating point.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// A point of `[0, ∞]`.
#[derive(Clone, Debug)]
pub enum TropValue {
    /// Exact nonnegative rational.
    Rat(Rational),
    /// Finite nonnegative double.
    Real(f64),
    /// The point at infinity: the tropical zero.
    Inf,
}

impl TropValue {
    /// The tropical unit (real number 0).
    pub fn zero() -> Self {
        TropValue::Rat(Rational::zero())
    }

    pub fn inf() -> Self {
        TropValue::Inf
    }

    pub fn int(n: u64) -> Self {
        TropValue::Rat(Rational::from_integer(BigInt::from(n)))
    }

    /// `num / den`. Panics on a zero denominator or a negative quotient.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
            .expect("ratio must be nonnegative")
    }

    pub fn from_rational(r: Rational) -> Result<Self, SeriesError> {
        if r.is_negative() {
            return Err(SeriesError::OutOfDomain(r.to_string()));
        }
        Ok(TropValue::Rat(r))
    }

    pub fn from_f64(x: f64) -> Result<Self, SeriesError> {
        if x.is_nan() || x < 0.0 {
            return Err(SeriesError::OutOfDomain(x.to_string()));
        }
        if x.is_infinite() {
            return Ok(TropValue::Inf);
        }
        // normalizes -0.0
        Ok(TropValue::Real(x + 0.0))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, TropValue::Inf)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_inf()
    }

    pub fn is_float(&self) -> bool {
        matches!(self, TropValue::Real(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            TropValue::Rat(r) => r.is_zero(),
            TropValue::Real(x) => *x == 0.0,
            TropValue::Inf => false,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            TropValue::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            TropValue::Rat(r) => r.to_f64().unwrap_or(f64::INFINITY),
            TropValue::Real(x) => *x,
            TropValue::Inf => f64::INFINITY,
        }
    }

    /// Tropical sum: `min`.
    pub fn min_with(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical product: real addition with `∞` absorbing.
    pub fn plus(&self, other: &Self) -> Self {
        match (self, other) {
            (TropValue::Inf, _) | (_, TropValue::Inf) => TropValue::Inf,
            (TropValue::Rat(a), TropValue::Rat(b)) => TropValue::Rat(a + b),
            (a, b) => TropValue::Real(a.to_f64() + b.to_f64()),
        }
    }

    /// `n · self` with the conventions `0 · ∞ = 0` and `n · ∞ = ∞` for `n > 0`.
    pub fn times_nat(&self, n: u64) -> Self {
        if n == 0 {
            return TropValue::zero();
        }
        match self {
            TropValue::Inf => TropValue::Inf,
            TropValue::Rat(r) => TropValue::Rat(r * Rational::from_integer(BigInt::from(n))),
            TropValue::Real(x) => TropValue::Real(x * n as f64),
        }
    }

    /// `|self - other|`, with `|∞ - ∞| = 0` and `|∞ - a| = ∞` for finite `a`.
    pub fn dist(&self, other: &Self) -> Self {
        match (self, other) {
            (TropValue::Inf, TropValue::Inf) => TropValue::zero(),
            (TropValue::Inf, _) | (_, TropValue::Inf) => TropValue::Inf,
            (TropValue::Rat(a), TropValue::Rat(b)) => TropValue::Rat((a - b).abs()),
            (a, b) => TropValue::Real((a.to_f64() - b.to_f64()).abs()),
        }
    }

    /// Truncated subtraction `max(self - other, 0)`; `∞ - a = ∞` for finite `a`.
    pub fn monus(&self, other: &Self) -> Self {
        match (self, other) {
            (TropValue::Inf, TropValue::Inf) => TropValue::zero(),
            (TropValue::Inf, _) => TropValue::Inf,
            (_, TropValue::Inf) => TropValue::zero(),
            (TropValue::Rat(a), TropValue::Rat(b)) => {
                let d = a - b;
                TropValue::Rat(if d.is_negative() { Rational::zero() } else { d })
            }
            (a, b) => TropValue::Real((a.to_f64() - b.to_f64()).max(0.0)),
        }
    }

    /// Division by a finite positive scalar.
    pub fn div(&self, by: &Self) -> Result<Self, SeriesError> {
        if by.is_zero() || by.is_inf() {
            return Err(SeriesError::BadEpsilon(by.to_string()));
        }
        Ok(match (self, by) {
            (TropValue::Inf, _) => TropValue::Inf,
            (TropValue::Rat(a), TropValue::Rat(b)) => TropValue::Rat(a / b),
            (a, b) => TropValue::Real(a.to_f64() / b.to_f64()),
        })
    }

    /// Equality up to [`FLOAT_TOLERANCE`] when either side is a float,
    /// exact otherwise.
    pub fn approx_eq(&self, other: &Self) -> bool {
        match (self, other) {
            (TropValue::Inf, TropValue::Inf) => true,
            (TropValue::Inf, _) | (_, TropValue::Inf) => false,
            (TropValue::Rat(a), TropValue::Rat(b)) => a == b,
            (a, b) => (a.to_f64() - b.to_f64()).abs() <= FLOAT_TOLERANCE,
        }
    }

    fn numeric_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TropValue::Inf, TropValue::Inf) => Ordering::Equal,
            (TropValue::Inf, _) => Ordering::Greater,
            (_, TropValue::Inf) => Ordering::Less,
            (TropValue::Rat(a), TropValue::Rat(b)) => a.cmp(b),
            (TropValue::Real(a), TropValue::Real(b)) => a.total_cmp(b),
            (TropValue::Rat(a), TropValue::Real(b)) => a.cmp(&exact(*b)),
            (TropValue::Real(a), TropValue::Rat(b)) => exact(*a).cmp(b),
        }
    }

    fn tag(&self) -> u8 {
        match self {
            TropValue::Rat(_) => 0,
            TropValue::Real(_) => 1,
            TropValue::Inf => 2,
        }
    }
}

fn exact(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

/// `min(a, b)`.
pub fn trop_add(a: &TropValue, b: &TropValue) -> TropValue {
    a.min_with(b)
}

/// `a + b` with `∞` absorbing.
pub fn trop_mul(a: &TropValue, b: &TropValue) -> TropValue {
    a.plus(b)
}

/// `|a - b|` with `|∞ - ∞| = 0`.
pub fn trop_dist(a: &TropValue, b: &TropValue) -> TropValue {
    a.dist(b)
}

// Ordering is numeric; a rational and a float denoting the same number are
// ordered by representation so that `Ord` stays consistent with `Eq`.
impl Ord for TropValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.numeric_cmp(other).then(self.tag().cmp(&other.tag()))
    }
}

impl PartialOrd for TropValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for TropValue {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (TropValue::Rat(a), TropValue::Rat(b)) => a == b,
            (TropValue::Real(a), TropValue::Real(b)) => a.to_bits() == b.to_bits(),
            (TropValue::Inf, TropValue::Inf) => true,
            _ => false,
        }
    }
}

impl Eq for TropValue {}

impl Hash for TropValue {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.tag().hash(state);
        match self {
            TropValue::Rat(r) => r.hash(state),
            TropValue::Real(x) => x.to_bits().hash(state),
            TropValue::Inf => {}
        }
    }
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropValue::Rat(r) => write!(f, "{r}"),
            TropValue::Real(x) => write!(f, "{x:?}"),
            TropValue::Inf => write!(f, "inf"),
        }
    }
}

/// Parses `inf`, integers, `p/q`, and decimals. Decimal literals are read
/// exactly (`0.25` is `1/4`); a trailing `f` (`0.69f`) forces a float.
impl FromStr for TropValue {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || SeriesError::Parse(format!("bad scalar `{s}`"));
        if s == "inf" || s == "∞" {
            return Ok(TropValue::Inf);
        }
        if let Some(body) = s.strip_suffix('f') {
            let x: f64 = body.parse().map_err(|_| bad())?;
            return TropValue::from_f64(x);
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return TropValue::from_rational(Rational::new(n, d));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let int: BigInt = if int.is_empty() { BigInt::zero() } else { int.parse().map_err(|_| bad())? };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let frac: BigInt = frac.parse().map_err(|_| bad())?;
            return TropValue::from_rational(Rational::new(int * &scale + frac, scale));
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        TropValue::from_rational(Rational::from_integer(n))
    }
}

impl From<u64> for TropValue {
    fn from(n: u64) -> Self {
        TropValue::int(n)
    }
}

impl serde::Serialize for TropValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            TropValue::Real(x) => s.serialize_f64(*x),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> serde::Deserialize<'de> for TropValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
            serde_json::Value::Number(n) => {
                TropValue::from_f64(n.as_f64().unwrap_or(f64::NAN)).map_err(D::Error::custom)
            }
            other => Err(D::Error::custom(format!("not a scalar: {other}"))),
        }
    }
}
