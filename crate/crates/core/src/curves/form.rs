//! Exact and floating-point ternary cubic forms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::rational::{parse_rational, rational_to_f64};
use crate::algebra::ternary::{self, Cubic, MONOMIALS, MONOMIAL_KEYS};
use crate::algebra::{LinearForm3, LinearMatrix3};
use crate::dynamics::ExtendedParam;
use crate::error::{Error, Result};

/// A nonzero homogeneous cubic in `x, y, z` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicForm {
    coeffs: [BigRational; 10],
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl CubicForm {
    pub fn new(coeffs: [BigRational; 10]) -> Result<Self> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroCubic);
        }
        Ok(CubicForm { coeffs })
    }

    pub fn from_ints(c: [i64; 10]) -> Self {
        Self::new(c.map(q)).expect("nonzero integer cubic")
    }

    pub fn coeffs(&self) -> &[BigRational; 10] {
        &self.coeffs
    }

    /// Coefficient of `x^i y^j z^k`.
    pub fn coeff(&self, e: [u8; 3]) -> &BigRational {
        &self.coeffs[ternary::monomial_index(e)]
    }

    /// `x^3 + y^3 + z^3 + c xyz`.
    pub fn hesse_form(c: &BigRational) -> Self {
        let mut k: [BigRational; 10] = std::array::from_fn(|_| BigRational::zero());
        k[0] = q(1);
        k[6] = q(1);
        k[9] = q(1);
        k[4] = c.clone();
        CubicForm { coeffs: k }
    }

    /// `xyz`, the limiting Hesse form.
    pub fn hesse_infinity() -> Self {
        Self::from_ints([0, 0, 0, 0, 1, 0, 0, 0, 0, 0])
    }

    /// `a x^3 + 3 x y^2 + 3 b x^2 z - b^2 z^3`.
    pub fn gamma_ab(a: &BigRational, b: &BigRational) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::InvalidInput("b must be nonzero".into()));
        }
        let mut k: [BigRational; 10] = std::array::from_fn(|_| BigRational::zero());
        k[0] = a.clone();
        k[3] = q(3);
        k[2] = q(3) * b;
        k[9] = -(b * b);
        Ok(CubicForm { coeffs: k })
    }

    /// `y^2 z - x^3 - a x^2 z - b x z^2`, normalized.
    pub fn e_ab(a: &BigRational, b: &BigRational) -> Self {
        let mut k: [BigRational; 10] = std::array::from_fn(|_| BigRational::zero());
        k[7] = q(1);
        k[0] = q(-1);
        k[2] = -a.clone();
        k[5] = -b.clone();
        CubicForm { coeffs: k }.normalized()
    }

    /// Content stripped, first nonzero coefficient positive.
    pub fn normalized(&self) -> Self {
        let l = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let first_neg = ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        let g = if first_neg { -g } else { g };
        CubicForm { coeffs: std::array::from_fn(|k| BigRational::from_integer(&ints[k] / &g)) }
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalized()
    }

    pub fn hesse_matrix(&self) -> LinearMatrix3 {
        let h = ternary::hessian(&self.coeffs);
        std::array::from_fn(|i| std::array::from_fn(|j| LinearForm3::from_array(h[i][j].clone())))
    }

    /// Raw Hessian determinant, or `None` when it vanishes identically.
    pub fn hessian_determinant(&self) -> Option<CubicForm> {
        CubicForm::new(ternary::hessian_determinant(&self.coeffs)).ok()
    }

    /// The normalized Hessian determinant.
    pub fn hesse_derivative(&self) -> Result<CubicForm> {
        self.hessian_determinant().map(|d| d.normalized()).ok_or(Error::IdenticallyZeroHessian)
    }

    /// The Hesse-form parameter, if the curve is `x^3+y^3+z^3+c xyz` or `xyz`
    /// up to a scalar.
    pub fn hesse_parameter(&self) -> Option<ExtendedParam> {
        let k = &self.coeffs;
        let others_zero = [1, 2, 3, 5, 7, 8].iter().all(|&i| k[i].is_zero());
        if !others_zero {
            return None;
        }
        if k[0].is_zero() && k[6].is_zero() && k[9].is_zero() && !k[4].is_zero() {
            return Some(ExtendedParam::Infinity);
        }
        if !k[0].is_zero() && k[0] == k[6] && k[0] == k[9] {
            return Some(ExtendedParam::Rational(&k[4] / &k[0]));
        }
        None
    }

    pub fn eval(&self, p: &[BigRational; 3]) -> BigRational {
        ternary::eval(&self.coeffs, p)
    }

    pub fn to_real(&self) -> RealCubic {
        RealCubic { coeffs: self.coeffs.clone().map(|c| rational_to_f64(&c)) }
    }
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in MONOMIALS.iter().zip(self.coeffs.iter()) {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mut parts = Vec::new();
            if !mag.is_one() {
                parts.push(if mag.is_integer() { mag.to_string() } else { format!("({mag})") });
            }
            for (v, &e) in ["x", "y", "z"].iter().zip(m.iter()) {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for CubicForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Monomials<'a>(&'a [BigRational; 10]);
        impl Serialize for Monomials<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = s.serialize_map(Some(10))?;
                for (k, c) in MONOMIAL_KEYS.iter().zip(self.0.iter()) {
                    m.serialize_entry(k, &c.to_string())?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("monomials", &Monomials(&self.coeffs))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for CubicForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            monomials: BTreeMap<String, serde_json::Value>,
        }
        let raw = Raw::deserialize(d)?;
        let mut k: [BigRational; 10] = std::array::from_fn(|_| BigRational::zero());
        for (key, v) in raw.monomials {
            let idx = MONOMIAL_KEYS
                .iter()
                .position(|m| *m == key)
                .ok_or_else(|| D::Error::custom(format!("unknown monomial {key:?}")))?;
            let text = match v {
                serde_json::Value::String(s) => s,
                serde_json::Value::Number(n) => n.to_string(),
                other => return Err(D::Error::custom(format!("bad coefficient {other}"))),
            };
            k[idx] = parse_rational(&text).map_err(D::Error::custom)?;
        }
        CubicForm::new(k).map_err(D::Error::custom)
    }
}

/// A cubic form with floating-point coefficients, for curves whose
/// coefficients are irrational.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealCubic {
    pub coeffs: [f64; 10],
}

impl RealCubic {
    pub fn new(coeffs: [f64; 10]) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite cubic coefficient".into()));
        }
        if coeffs.iter().all(|&c| c == 0.0) {
            return Err(Error::ZeroCubic);
        }
        Ok(RealCubic { coeffs })
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, p: [f64; 3]) -> f64 {
        ternary::eval(&self.coeffs, &p)
    }

    pub fn gradient(&self, p: [f64; 3]) -> [f64; 3] {
        ternary::gradient(&self.coeffs, &p)
    }

    pub fn hessian_at(&self, p: [f64; 3]) -> [[f64; 3]; 3] {
        ternary::hessian_at(&self.coeffs, &p)
    }

    /// Scaled to unit max-norm with the first significant coefficient positive.
    pub fn normalized(&self) -> RealCubic {
        let m = self.max_abs();
        let first = self.coeffs.iter().find(|c| c.abs() > 1e-12 * m).copied().unwrap_or(1.0);
        let s = first.signum() / m;
        RealCubic { coeffs: self.coeffs.map(|c| c * s) }
    }

    pub fn hesse_derivative(&self) -> Result<RealCubic> {
        let d: Cubic<f64> = ternary::hessian_determinant(&self.coeffs);
        let scale = self.max_abs().powi(3);
        if d.iter().all(|c| c.abs() <= 1e-14 * scale) {
            return Err(Error::IdenticallyZeroHessian);
        }
        Ok(RealCubic { coeffs: d }.normalized())
    }

    /// Largest coefficient difference after scaling both to unit max-norm
    /// and choosing the better overall sign.
    pub fn projective_distance(&self, other: &RealCubic) -> f64 {
        let a = self.coeffs.map(|c| c / self.max_abs());
        let b = other.coeffs.map(|c| c / other.max_abs());
        let d = |s: f64| a.iter().zip(b.iter()).fold(0.0f64, |m, (x, y)| m.max((x - s * y).abs()));
        d(1.0).min(d(-1.0))
    }
}

impl From<&CubicForm> for RealCubic {
    fn from(c: &CubicForm) -> Self {
        c.to_real()
    }
}

impl fmt::Display for RealCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = MONOMIAL_KEYS
            .iter()
            .zip(self.coeffs.iter())
            .filter(|(_, c)| **c != 0.0)
            .map(|(k, c)| format!("{c}*{k}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::det3_linear;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn fermat_hesse_matrix_is_diagonal() {
        let f = CubicForm::from_ints([1, 0, 0, 0, 0, 0, 1, 0, 0, 1]);
        let h = f.hesse_matrix();
        assert_eq!(h[0][0], LinearForm3::from_ints(6, 0, 0));
        assert_eq!(h[1][1], LinearForm3::from_ints(0, 6, 0));
        assert_eq!(h[2][2], LinearForm3::from_ints(0, 0, 6));
        assert!(h[0][1].is_zero() && h[0][2].is_zero() && h[1][2].is_zero());
    }

    #[test]
    fn hesse_form_matrix_pattern() {
        let c = r(5, 2);
        let h = CubicForm::hesse_form(&c).hesse_matrix();
        assert_eq!(h[0][0], LinearForm3::from_ints(6, 0, 0));
        assert_eq!(h[0][1], LinearForm3::new(q(0), q(0), c.clone()));
        assert_eq!(h[0][2], LinearForm3::new(q(0), c.clone(), q(0)));
        assert_eq!(h[1][2], LinearForm3::new(c.clone(), q(0), q(0)));
    }

    #[test]
    fn gamma_ab_matrix_matches_closed_form() {
        let (a, b) = (r(2, 3), r(-5, 1));
        let h = CubicForm::gamma_ab(&a, &b).unwrap().hesse_matrix();
        assert_eq!(h[0][0], LinearForm3::new(q(6) * &a, q(0), q(6) * &b));
        assert_eq!(h[0][1], LinearForm3::from_ints(0, 6, 0));
        assert_eq!(h[0][2], LinearForm3::new(q(6) * &b, q(0), q(0)));
        assert_eq!(h[1][1], LinearForm3::from_ints(6, 0, 0));
        assert!(h[1][2].is_zero());
        assert_eq!(h[2][2], LinearForm3::new(q(0), q(0), -q(6) * &b * &b));
    }

    #[test]
    fn hesse_form_determinant() {
        for c in [q(1), q(-7), r(3, 4)] {
            let d = det3_linear(&CubicForm::hesse_form(&c).hesse_matrix()).unwrap();
            let six_c2 = q(-6) * &c * &c;
            let mixed = q(2) * (q(108) + &c * &c * &c);
            let expect = CubicForm::new(std::array::from_fn(|k| match k {
                0 | 6 | 9 => six_c2.clone(),
                4 => mixed.clone(),
                _ => q(0),
            }))
            .unwrap();
            assert_eq!(d, expect);
        }
    }

    #[test]
    fn gamma_11_determinant_by_row_expansion_oracle() {
        // cofactor expansion along the second row, independent of the Leibniz order
        let h = CubicForm::gamma_ab(&q(1), &q(1)).unwrap().hesse_matrix();
        let d = det3_linear(&h).unwrap();
        let expect = CubicForm::from_ints([-216, 0, -216, 0, 0, -216, 0, 216, 0, 0]);
        assert_eq!(d, expect);
        for (x, y, z) in [(1, 2, 3), (-2, 5, 1), (3, -1, -4)] {
            let p = [q(x), q(y), q(z)];
            let m: [[BigRational; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| h[i][j].eval([&p[0], &p[1], &p[2]])));
            let cof = -&m[1][0] * (&m[0][1] * &m[2][2] - &m[0][2] * &m[2][1]) + &m[1][1] * (&m[0][0] * &m[2][2] - &m[0][2] * &m[2][0])
                - &m[1][2] * (&m[0][0] * &m[2][1] - &m[0][1] * &m[2][0]);
            assert_eq!(cof, d.eval(&p));
        }
    }

    #[test]
    fn hesse_derivative_examples() {
        let e11 = CubicForm::gamma_ab(&q(1), &q(1)).unwrap().hesse_derivative().unwrap();
        assert_eq!(e11, CubicForm::e_ab(&q(1), &q(1)));
        assert_eq!(e11, CubicForm::from_ints([1, 0, 1, 0, 0, 1, 0, -1, 0, 0]));
        assert_eq!(CubicForm::hesse_form(&q(0)).hesse_derivative().unwrap(), CubicForm::hesse_infinity());
        assert_eq!(CubicForm::hesse_infinity().hesse_derivative().unwrap(), CubicForm::hesse_infinity());
        // a cone over three concurrent lines has a vanishing Hessian
        let cone = CubicForm::from_ints([1, 0, 0, 0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(cone.hesse_derivative(), Err(Error::IdenticallyZeroHessian));
    }

    #[test]
    fn json_round_trip() {
        let f = CubicForm::gamma_ab(&r(1, 3), &r(-2, 5)).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.starts_with("{\"monomials\":{\"x3\":\"1/3\""));
        let g: CubicForm = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        let h: CubicForm = serde_json::from_str(r#"{"monomials":{"xyz":1}}"#).unwrap();
        assert_eq!(h, CubicForm::hesse_infinity());
        assert!(serde_json::from_str::<CubicForm>(r#"{"monomials":{"w3":"1"}}"#).is_err());
        assert!(serde_json::from_str::<CubicForm>(r#"{"monomials":{}}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(CubicForm::e_ab(&q(1), &q(1)).to_string(), "x^3 + x^2*z + x*z^2 - y^2*z");
    }

    fn cubic() -> impl Strategy<Value = CubicForm> {
        prop::array::uniform10(-6i64..=6).prop_filter_map("nonzero", |c| CubicForm::new(c.map(q)).ok())
    }

    proptest! {
        #[test]
        fn hesse_matrix_symmetric(f in cubic()) {
            let h = f.hesse_matrix();
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert_eq!(&h[i][j], &h[j][i]);
                }
            }
        }

        #[test]
        fn euler_relation(f in cubic(), p in prop::array::uniform3(-3.0f64..3.0)) {
            let g = f.to_real();
            let grad = g.gradient(p);
            let lhs = grad[0] * p[0] + grad[1] * p[1] + grad[2] * p[2];
            prop_assert!((lhs - 3.0 * g.eval(p)).abs() <= 1e-9 * (1.0 + lhs.abs()));
        }

        #[test]
        fn normalization_is_idempotent(f in cubic(), s in 1i64..50) {
            let n = f.normalized();
            prop_assert!(n.is_normalized());
            let scaled = CubicForm::new(f.coeffs().clone().map(|c| c * r(-s, 7))).unwrap();
            prop_assert_eq!(scaled.normalized(), n);
        }
    }
}
