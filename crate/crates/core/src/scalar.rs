//! Real scalars that remember an exact rational value when the input had one.
//!
//! Integer, `p/q` and decimal literals keep their exact value. Scalars built
//! from a bare `f64` convert to the exact binary value of that float when an
//! exact value is requested.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{0}` as a real number")]
pub struct ParseScalarError(pub String);

#[derive(Debug, Clone)]
pub struct Scalar {
    value: f64,
    exact: Option<BigRational>,
}

impl Scalar {
    pub fn from_f64(value: f64) -> Self {
        Scalar { value, exact: None }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar {
            value: rational_to_f64(&r),
            exact: Some(r),
        }
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// The retained rational, if the scalar was built from an exact literal.
    pub fn retained(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Exact value: the retained rational, or the binary value of the float.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.exact {
            Some(r) => Some(r.clone()),
            None => BigRational::from_float(self.value),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.exact {
            Some(r) => r.is_zero(),
            None => self.value == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.exact {
            Some(r) => r.is_one(),
            None => self.value == 1.0,
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            value: -self.value,
            exact: self.exact.as_ref().map(|r| -r),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Scalar::from_rational(a + b),
            _ => Scalar::from_f64(self.value + other.value),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Scalar::from_rational(a * b),
            _ => Scalar::from_f64(self.value * other.value),
        }
    }

    /// Nonnegative integer value, if the scalar is one.
    pub fn to_usize(&self) -> Option<usize> {
        let r = self.to_rational()?;
        if r.is_integer() && !r.is_negative() {
            r.to_integer().to_usize()
        } else {
            None
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators and denominators overflow the direct conversion.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => self.value == other.value,
        }
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(v.into()))
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Scalar::from(i64::from(v))
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::from_f64(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) => write!(f, "{}", format_rational(r)),
            None => write!(f, "{}", self.value),
        }
    }
}

/// `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseScalarError(s.to_string());
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            return Ok(Scalar::from_rational(BigRational::new(p, q)));
        }
        parse_decimal(t).map(Scalar::from_rational).ok_or_else(err)
    }
}

/// Parses `[+-]digits[.digits][(e|E)[+-]digits]` exactly.
fn parse_decimal(t: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = all_digits.parse().ok()?;
    if negative {
        numer = -numer;
    }
    let scale = i64::from(exponent) - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let power = num_traits::pow(ten, scale.unsigned_abs() as usize);
    Some(if scale >= 0 {
        BigRational::from_integer(numer * power)
    } else {
        BigRational::new(numer, power)
    })
}
