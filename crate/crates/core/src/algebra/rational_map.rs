//! Univariate rational functions with exact coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use super::poly::UniPoly;
use crate::error::{Error, Result};

/// `num / den` in lowest terms. Coefficients are kept as jointly primitive
/// integers with a positive leading denominator coefficient, so equal maps
/// compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap1 {
    num: IntPoly,
    den: IntPoly,
}

fn lcm_denominators(p: &UniPoly) -> BigInt {
    p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
}

fn to_ints(p: &UniPoly, scale: &BigInt) -> IntPoly {
    IntPoly::new(p.coeffs().iter().map(|c| (c * BigRational::from_integer(scale.clone())).to_integer()).collect())
}

impl RationalMap1 {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let l = lcm_denominators(&num).lcm(&lcm_denominators(&den));
        Ok(Self::from_int_parts(to_ints(&num, &l), to_ints(&den, &l)))
    }

    /// Builds from integer parts, cancelling any common factor.
    pub fn from_int_parts(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "denominator must be nonzero");
        let (mut num, mut den) = if num.is_zero() {
            (num, IntPoly::from_i64s(&[1]))
        } else {
            let g = num.gcd(&den);
            if g.degree().unwrap_or(0) > 0 {
                let g = g.to_unipoly();
                let nq = num.to_unipoly().div_exact(&g).expect("gcd divides numerator");
                let dq = den.to_unipoly().div_exact(&g).expect("gcd divides denominator");
                let l = lcm_denominators(&nq).lcm(&lcm_denominators(&dq));
                (to_ints(&nq, &l), to_ints(&dq, &l))
            } else {
                (num, den)
            }
        };
        let c = num.content().gcd(&den.content());
        if !c.is_zero() && !c.is_one() {
            num = IntPoly::new(num.coeffs().iter().map(|x| x / &c).collect());
            den = IntPoly::new(den.coeffs().iter().map(|x| x / &c).collect());
        }
        if den.leading().is_some_and(|l| l.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        RationalMap1 { num, den }
    }

    pub fn identity() -> Self {
        RationalMap1 { num: IntPoly::from_i64s(&[0, 1]), den: IntPoly::from_i64s(&[1]) }
    }

    /// `h(x) = (a + x^3) / (b x^2)`.
    pub fn h_map(a: &BigRational, b: &BigRational) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::InvalidInput("b must be nonzero".into()));
        }
        let num = UniPoly::new(vec![a.clone(), BigRational::zero(), BigRational::zero(), BigRational::one()]);
        let den = UniPoly::monomial(b.clone(), 2);
        Self::new(num, den)
    }

    /// `h` with a = 108, b = -3, whose fixed point is -3 and critical point 6.
    pub fn paper_h() -> Self {
        Self::h_map(&BigRational::from_integer(108.into()), &BigRational::from_integer((-3).into())).unwrap()
    }

    pub fn num(&self) -> UniPoly {
        self.num.to_unipoly()
    }

    pub fn den(&self) -> UniPoly {
        self.den.to_unipoly()
    }

    pub fn int_num(&self) -> &IntPoly {
        &self.num
    }

    pub fn int_den(&self) -> &IntPoly {
        &self.den
    }

    /// `self(g(x))`, reduced.
    pub fn compose(&self, g: &RationalMap1) -> RationalMap1 {
        let m = self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0));
        // powers A^k B^(m-k)
        let mut apow = vec![IntPoly::from_i64s(&[1])];
        let mut bpow = vec![IntPoly::from_i64s(&[1])];
        for k in 1..=m {
            apow.push(apow[k - 1].mul(&g.num));
            bpow.push(bpow[k - 1].mul(&g.den));
        }
        let homog = |p: &IntPoly| -> IntPoly {
            let mut acc = IntPoly::default();
            for (k, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&apow[k].mul(&bpow[m - k]).scale(c));
                }
            }
            acc
        };
        Self::from_int_parts(homog(&self.num), homog(&self.den))
    }

    /// The n-fold iterate; `iterate(0)` is the identity.
    pub fn iterate(&self, n: u32) -> RationalMap1 {
        (0..n).fold(Self::identity(), |acc, _| self.compose(&acc))
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den().eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num().eval(x) / d)
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// Numerator of `self(x) - x`.
    pub fn fixed_point_numerator(&self) -> UniPoly {
        self.num.sub(&self.den.mul(&IntPoly::from_i64s(&[0, 1]))).to_unipoly()
    }

    /// Numerator of the derivative, `num' den - num den'`, before cancellation.
    pub fn derivative_numerator(&self) -> UniPoly {
        self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative())).to_unipoly()
    }
}

impl fmt::Display for RationalMap1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num(), self.den())
    }
}
