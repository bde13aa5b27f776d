//! Extended real parameters and the parameter map of the Hesse form.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::algebra::rational::{parse_rational, rational_to_f64};
use crate::error::Result;

/// A Hesse-form parameter: a real number, exact when rational, or infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtendedParam {
    Rational(BigRational),
    Real(f64),
    Infinity,
}

impl ExtendedParam {
    pub fn from_int(n: i64) -> Self {
        ExtendedParam::Rational(BigRational::from_integer(n.into()))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedParam::Infinity)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtendedParam::Rational(q) => rational_to_f64(q),
            ExtendedParam::Real(x) => *x,
            ExtendedParam::Infinity => f64::INFINITY,
        }
    }

    /// Accepts `inf`, `infinity`, `∞`, integers, fractions and decimals
    /// (decimals are read exactly).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(ExtendedParam::Infinity),
            _ => parse_rational(t).map(ExtendedParam::Rational),
        }
    }

    /// Exact equality for two rationals, otherwise `|a - b| <= tol`.
    pub fn close_to(&self, other: &ExtendedParam, tol: f64) -> bool {
        use ExtendedParam::*;
        match (self, other) {
            (Infinity, Infinity) => true,
            (Infinity, _) | (_, Infinity) => false,
            (Rational(a), Rational(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= tol,
        }
    }
}

impl fmt::Display for ExtendedParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedParam::Rational(q) => write!(f, "{q}"),
            ExtendedParam::Real(x) => write!(f, "{x}"),
            ExtendedParam::Infinity => write!(f, "∞"),
        }
    }
}

impl Serialize for ExtendedParam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedParam::Real(x) => s.serialize_f64(*x),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

/// `c -> -(108 + c^3) / (3 c^2)`, with `0 -> ∞` and `∞ -> ∞`.
pub fn step(c: &ExtendedParam) -> ExtendedParam {
    match c {
        ExtendedParam::Infinity => ExtendedParam::Infinity,
        ExtendedParam::Rational(c) if c.is_zero() => ExtendedParam::Infinity,
        ExtendedParam::Rational(c) => {
            let c2 = c * c;
            let num = BigRational::from_integer(108.into()) + &c2 * c;
            ExtendedParam::Rational(-num / (BigRational::from_integer(3.into()) * c2))
        }
        ExtendedParam::Real(x) if *x == 0.0 => ExtendedParam::Infinity,
        ExtendedParam::Real(x) => ExtendedParam::Real(-(108.0 + x * x * x) / (3.0 * x * x)),
    }
}

/// `step` on plain floats; the pole maps to infinity.
pub fn step_f64(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        f64::INFINITY
    } else {
        -(108.0 + x * x * x) / (3.0 * x * x)
    }
}
