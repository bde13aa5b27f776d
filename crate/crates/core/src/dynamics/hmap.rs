//! The real map `h(x) = (a + x^3) / (b x^2)` and its inverse branches.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::cubic::real_roots_of_cubic;
use crate::algebra::rational::rational_to_f64;
use crate::algebra::RationalMap1;
use crate::error::{Error, Result};

/// Imaginary-part tolerance for calling a preimage real.
pub const PREIMAGE_IMAG_TOL: f64 = 1e-9;
/// Relative distance under which two real preimages count as one double root.
const MERGE_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HMapParams {
    #[serde(serialize_with = "ser_rational")]
    pub a: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub b: BigRational,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl HMapParams {
    pub fn new(a: BigRational, b: BigRational) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::DegenerateParameter("b = 0".into()));
        }
        if b.is_one() {
            return Err(Error::DegenerateParameter("b = 1 leaves the fixed point undefined".into()));
        }
        Ok(HMapParams { a, b })
    }

    /// `a = 108`, `b = -3`: the parameter map of the Hesse form.
    pub fn paper() -> Self {
        HMapParams { a: BigRational::from_integer(108.into()), b: BigRational::from_integer((-3).into()) }
    }

    pub fn a_f64(&self) -> f64 {
        rational_to_f64(&self.a)
    }

    pub fn b_f64(&self) -> f64 {
        rational_to_f64(&self.b)
    }

    /// The real fixed point `cbrt(a / (b - 1))`.
    pub fn phi(&self) -> f64 {
        (self.a_f64() / (self.b_f64() - 1.0)).cbrt()
    }

    /// The real critical point `cbrt(2a)`.
    pub fn kappa(&self) -> f64 {
        (2.0 * self.a_f64()).cbrt()
    }

    pub fn map(&self) -> RationalMap1 {
        RationalMap1::h_map(&self.a, &self.b).expect("b is nonzero")
    }
}

/// `h(x)`, written as `x / b + a / (b x^2)` so huge arguments do not overflow.
pub fn h_eval(params: &HMapParams, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::PoleAtZero);
    }
    Ok(h_f64(params.a_f64(), params.b_f64(), x))
}

pub(crate) fn h_f64(a: f64, b: f64, x: f64) -> f64 {
    if x == 0.0 || x.is_infinite() {
        return f64::INFINITY;
    }
    x / b + a / (b * x * x)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Preimage {
    pub x: f64,
    pub multiplicity: u8,
}

/// Real solutions of `h(x) = y`, the roots of `x^3 - b y x^2 + a = 0`.
pub fn preimages(params: &HMapParams, y: f64) -> Result<Vec<Preimage>> {
    let (a, b) = (params.a_f64(), params.b_f64());
    let roots = real_roots_of_cubic(1.0, -b * y, 0.0, a, PREIMAGE_IMAG_TOL)?;
    let mut out: Vec<Preimage> = Vec::new();
    for x in roots {
        match out.last_mut() {
            Some(p) if (p.x - x).abs() <= MERGE_TOL * x.abs().max(1.0) => {
                p.x = (p.x * p.multiplicity as f64 + x) / (p.multiplicity as f64 + 1.0);
                p.multiplicity += 1;
            }
            _ => out.push(Preimage { x, multiplicity: 1 }),
        }
    }
    Ok(out)
}

/// Preimages under the paper map using its branch structure: three real
/// preimages above the fixed point for `y < -3`, one below it for `y > -3`.
/// Near-coincident pairs are therefore never lost to rounding.
pub(crate) fn paper_preimages(y: f64) -> Vec<f64> {
    let z = |x: f64| num_complex::Complex64::new(x, 0.0);
    let roots = crate::algebra::solve_cubic(z(1.0), z(3.0 * y), z(0.0), z(108.0)).expect("monic cubic");
    let mut xs: Vec<f64> = if y < -3.0 {
        roots.iter().map(|r| r.re).collect()
    } else {
        let r = roots.iter().min_by(|p, q| p.im.abs().total_cmp(&q.im.abs())).unwrap();
        vec![r.re]
    };
    xs.sort_by(|p, q| p.total_cmp(q));
    xs
}
