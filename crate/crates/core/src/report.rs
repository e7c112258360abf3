//! Inequality reports shared by the exact and floating-point checkers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A number in a report: exact rational, float, or the positive real
/// `radicand^(1/index)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
    Radical { radicand: Rational, index: u64 },
}

impl Value {
    /// `radicand^(1/index)`, collapsed to [`Value::Exact`] when the root is rational.
    pub fn root(radicand: Rational, index: u64) -> Value {
        if index == 1 {
            return Value::Exact(radicand);
        }
        if !radicand.is_negative() {
            if let Ok(k) = u32::try_from(index) {
                let n = radicand.numer().nth_root(k);
                let d = radicand.denom().nth_root(k);
                if n.pow(k) == *radicand.numer() && d.pow(k) == *radicand.denom() {
                    return Value::Exact(Rational::new(n, d));
                }
            }
        }
        Value::Radical { radicand, index }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => rational::to_f64(r),
            Value::Float(x) => *x,
            Value::Radical { radicand, index } => {
                if radicand.is_zero() {
                    0.0
                } else {
                    (rational::log_abs(radicand) / *index as f64).exp()
                }
            }
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Value::Float(_))
    }

    /// Exactly one (exact variants only).
    pub fn is_exactly_one(&self) -> bool {
        match self {
            Value::Exact(r) => r.is_one(),
            Value::Radical { radicand, .. } => radicand.is_one(),
            Value::Float(_) => false,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => f.write_str(&rational::format_rational(r)),
            Value::Float(x) if *x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e15) => write!(f, "{x:e}"),
            Value::Float(x) => write!(f, "{x}"),
            Value::Radical { radicand, index } => {
                write!(f, "({})^(1/{index})", rational::format_rational(radicand))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ValueJson {
    Float(f64),
    Text(String),
    Radical {
        radicand: String,
        index: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        approx: Option<f64>,
    },
}

impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Exact(r) => ValueJson::Text(rational::format_rational(r)),
            Value::Float(x) => ValueJson::Float(*x),
            Value::Radical { radicand, index } => ValueJson::Radical {
                radicand: rational::format_rational(radicand),
                index: *index,
                approx: Some(self.to_f64()),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        Ok(match ValueJson::deserialize(d)? {
            ValueJson::Float(x) => Value::Float(x),
            ValueJson::Text(t) => Value::Exact(rational::parse_rational(&t).map_err(D::Error::custom)?),
            ValueJson::Radical { radicand, index, .. } => Value::Radical {
                radicand: rational::parse_rational(&radicand).map_err(D::Error::custom)?,
                index,
            },
        })
    }
}

/// Which side of the inequality the factor product rebuilds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lhs,
    Rhs,
}

/// One measured quantity entering a product side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    /// A coordinate set like `"1,3"` or a vector index.
    pub label: String,
    pub volume: Value,
    pub exponent: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub lhs: Value,
    pub rhs: Value,
    /// `lhs / rhs`; absent when `rhs` is zero.
    pub slack: Option<Value>,
    pub pass: bool,
    pub exact: bool,
    /// The product side equals `constant * prod(volume^exponent)`.
    pub constant: Value,
    pub product_side: Side,
    pub factors: Vec<Factor>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extras: BTreeMap<String, serde_json::Value>,
}

impl InequalityReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Slack is exactly 1.
    pub fn is_equality(&self) -> bool {
        self.slack.as_ref().is_some_and(Value::is_exactly_one)
    }

    pub fn slack_f64(&self) -> Option<f64> {
        self.slack.as_ref().map(Value::to_f64)
    }

    /// `constant * prod(volume^exponent)` when every entry is exact and
    /// every exponent an integer.
    pub fn recompose_exact(&self) -> Option<Rational> {
        let mut acc = self.constant.as_exact()?.clone();
        for f in &self.factors {
            let e = f.exponent.as_exact()?;
            if !e.is_integer() {
                return None;
            }
            let e = i64::try_from(e.to_integer()).ok()?;
            acc *= rational::pow_int(f.volume.as_exact()?, e);
        }
        Some(acc)
    }

    /// Same product in floats.
    pub fn recompose_f64(&self) -> f64 {
        self.factors.iter().fold(self.constant.to_f64(), |acc, f| {
            acc * f.volume.to_f64().powf(f.exponent.to_f64())
        })
    }

    pub fn product_value(&self) -> &Value {
        match self.product_side {
            Side::Lhs => &self.lhs,
            Side::Rhs => &self.rhs,
        }
    }
}

pub(crate) fn to_i64(v: &BigInt) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::InvalidInput(format!("exponent {v} too large")))
}
