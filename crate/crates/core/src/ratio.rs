use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// A reduced rational with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactRatio {
        ExactRatio(BigRational::new(num.into(), den.into()))
    }

    pub fn from_counts(num: &BigUint, den: &BigUint) -> ExactRatio {
        ExactRatio::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
    }

    pub fn zero() -> ExactRatio {
        ExactRatio(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.0)
    }

    /// Decimal expansion truncated toward zero after `digits` places.
    pub fn to_decimal(&self, digits: u32) -> String {
        rational_to_decimal(&self.0, digits)
    }
}

impl From<BigRational> for ExactRatio {
    fn from(r: BigRational) -> Self {
        ExactRatio(r)
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for ExactRatio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExactRatio", 2)?;
        st.serialize_field("num", &json_int(self.numer()))?;
        st.serialize_field("den", &json_int(self.denom()))?;
        st.end()
    }
}

/// JSON number when it fits in 64 bits, decimal string otherwise.
pub fn json_int(x: &BigInt) -> serde_json::Value {
    if let Some(v) = x.to_i64() {
        serde_json::Value::from(v)
    } else if let Some(v) = x.to_u64() {
        serde_json::Value::from(v)
    } else {
        serde_json::Value::from(x.to_string())
    }
}

pub fn json_uint(x: &BigUint) -> serde_json::Value {
    match x.to_u64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    // scale so that the quotient carries 64+ significant bits
    let num = r.numer();
    let den = r.denom();
    if num.is_zero() {
        return 0.0;
    }
    let shift = 70i64 - (num.bits() as i64 - den.bits() as i64);
    let q = if shift >= 0 { (num << shift as usize) / den } else { num / (den << (-shift) as usize) };
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32)
}

pub fn rational_to_decimal(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (r.numer().abs() * &scale) / r.denom();
    let int = &scaled / &scale;
    let frac = &scaled % &scale;
    let sign = if r.is_negative() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_displayed() {
        let r = ExactRatio::new(12, 10);
        assert_eq!(r.to_string(), "6/5");
        assert_eq!(r.numer(), &BigInt::from(6));
        assert_eq!(ExactRatio::new(4, 2).to_string(), "2");
        assert_eq!(ExactRatio::new(1, -2).to_string(), "-1/2");
    }

    #[test]
    fn float_and_decimal() {
        assert_eq!(ExactRatio::new(8, 7).to_decimal(4), "1.1428");
        assert_eq!(ExactRatio::new(-1, 8).to_decimal(3), "-0.125");
        assert!((ExactRatio::new(8, 7).to_f64() - 8.0 / 7.0).abs() < 1e-16);
        let big = ExactRatio::new(BigInt::from(10).pow(40) + 1, BigInt::from(10).pow(39));
        assert!((big.to_f64() - 10.0).abs() < 1e-14);
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(ExactRatio::new(6, 5)).unwrap();
        assert_eq!(v, serde_json::json!({"num": 6, "den": 5}));
        let huge = ExactRatio::new(BigInt::from(10).pow(30), 7);
        let v = serde_json::to_value(huge).unwrap();
        assert_eq!(v["num"], serde_json::json!("1000000000000000000000000000000"));
    }
}
