//! Exact arithmetic in `Q(sqrt 3)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::rational::rational_to_f64;
use crate::algebra::{parse_rational, Scalar};
use crate::error::{Error, Result};

/// `p + q sqrt3` with rational `p`, `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt3 {
    pub p: BigRational,
    pub q: BigRational,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl QSqrt3 {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        QSqrt3 { p, q }
    }

    pub fn from_ints(p: i64, q: i64) -> Self {
        QSqrt3::new(int(p), int(q))
    }

    pub fn rational(p: BigRational) -> Self {
        QSqrt3::new(p, BigRational::zero())
    }

    pub fn sqrt3() -> Self {
        QSqrt3::from_ints(0, 1)
    }

    /// `p - q sqrt3`.
    pub fn conjugate(&self) -> Self {
        QSqrt3::new(self.p.clone(), -self.q.clone())
    }

    /// `p^2 - 3 q^2`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - int(3) * &self.q * &self.q
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::SingularParameter("division by zero in Q(sqrt3)".into()));
        }
        let c = self.conjugate();
        Ok(QSqrt3::new(c.p / &n, c.q / n))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(QSqrt3::one(), |acc, _| acc * self.clone())
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.p) + rational_to_f64(&self.q) * 3f64.sqrt()
    }

    /// Sign of the real number, decided exactly.
    pub fn signum(&self) -> i8 {
        let sp = sign(&self.p);
        let sq = sign(&self.q);
        if sp == sq || sq == 0 {
            return sp;
        }
        if sp == 0 {
            return sq;
        }
        // opposite signs: compare p^2 with 3 q^2
        let n = self.norm();
        if n.is_positive() {
            sp
        } else {
            sq
        }
    }
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl Add for QSqrt3 {
    type Output = QSqrt3;
    fn add(self, o: QSqrt3) -> QSqrt3 {
        QSqrt3::new(self.p + o.p, self.q + o.q)
    }
}

impl Sub for QSqrt3 {
    type Output = QSqrt3;
    fn sub(self, o: QSqrt3) -> QSqrt3 {
        QSqrt3::new(self.p - o.p, self.q - o.q)
    }
}

impl Mul for QSqrt3 {
    type Output = QSqrt3;
    fn mul(self, o: QSqrt3) -> QSqrt3 {
        let p = &self.p * &o.p + int(3) * &self.q * &o.q;
        let q = &self.p * &o.q + &self.q * &o.p;
        QSqrt3::new(p, q)
    }
}

/// Panics on division by zero, like the rationals.
impl Div for QSqrt3 {
    type Output = QSqrt3;
    fn div(self, o: QSqrt3) -> QSqrt3 {
        self.checked_div(&o).expect("division by zero in Q(sqrt3)")
    }
}

impl Neg for QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        QSqrt3::new(-self.p, -self.q)
    }
}

impl Zero for QSqrt3 {
    fn zero() -> Self {
        QSqrt3::from_ints(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl One for QSqrt3 {
    fn one() -> Self {
        QSqrt3::from_ints(1, 0)
    }
}

impl Scalar for QSqrt3 {
    fn from_i64(n: i64) -> Self {
        QSqrt3::from_ints(n, 0)
    }
}

impl fmt::Display for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => write!(f, "{}", self.p),
            (true, false) => write!(f, "{}*sqrt3", self.q),
            (false, false) if self.q.is_negative() => write!(f, "{}-{}*sqrt3", self.p, -self.q.clone()),
            (false, false) => write!(f, "{}+{}*sqrt3", self.p, self.q),
        }
    }
}

impl Serialize for QSqrt3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses sums of terms `r` and `r*sqrt3` with rational `r`, e.g.
/// `3+2*sqrt3`, `-1/2-1/2*sqrt3`, `sqrt3`, `-sqrt(3)`.
impl FromStr for QSqrt3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace("sqrt(3)", "sqrt3").replace('√', "sqrt");
        if t.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in t.char_indices() {
            if i > 0 && (ch == '+' || ch == '-') {
                terms.push(&t[start..i]);
                start = i;
            }
        }
        terms.push(&t[start..]);
        let mut out = QSqrt3::zero();
        for term in terms {
            let body = term.strip_prefix('+').unwrap_or(term);
            if let Some(coef) = body.strip_suffix("sqrt3") {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let q = match coef {
                    "" => int(1),
                    "-" => int(-1),
                    c => parse_rational(c)?,
                };
                out.q += q;
            } else {
                if body.contains("sqrt") {
                    return Err(Error::Parse(format!("only sqrt3 is supported: {s:?}")));
                }
                out.p += parse_rational(body)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let x: QSqrt3 = "3+2*sqrt3".parse().unwrap();
        assert_eq!(x, QSqrt3::from_ints(3, 2));
        assert_eq!(x.to_string(), "3+2*sqrt3");
        let y: QSqrt3 = "-1/2 - 1/2*sqrt3".parse().unwrap();
        assert_eq!(y.to_string(), "-1/2-1/2*sqrt3");
        assert_eq!("sqrt3".parse::<QSqrt3>().unwrap(), QSqrt3::sqrt3());
        assert_eq!("-sqrt(3)".parse::<QSqrt3>().unwrap(), -QSqrt3::sqrt3());
        assert_eq!("-7".parse::<QSqrt3>().unwrap(), QSqrt3::from_ints(-7, 0));
        assert!("1+sqrt2".parse::<QSqrt3>().is_err());
        assert!("".parse::<QSqrt3>().is_err());
    }

    #[test]
    fn field_operations() {
        let a = QSqrt3::from_ints(3, 2);
        let b = QSqrt3::from_ints(3, -2);
        assert_eq!(a.clone() * b.clone(), QSqrt3::from_ints(-3, 0));
        assert_eq!(a.clone() * a.inv().unwrap(), QSqrt3::one());
        assert_eq!(QSqrt3::sqrt3().pow(3), QSqrt3::from_ints(0, 3));
        assert!(QSqrt3::zero().inv().is_err());
        assert!((a.to_f64() - (3.0 + 2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert_eq!(b.signum(), -1);
        assert_eq!(QSqrt3::from_ints(-1, 1).signum(), 1);
        assert_eq!(QSqrt3::from_ints(2, -1).signum(), 1);
    }
}
