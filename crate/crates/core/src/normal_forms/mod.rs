//! Parameter maps from the Hesse form `x^3+y^3+z^3+c xyz` to the
//! Weierstrass-type curves `y^2 = x^3 + a x^2 + b x` and to the D3-symmetric
//! cubics `x^3 - 3xy^2 + k (x^2+y^2) z - (sqrt27 / 2) z^3`.

mod qsqrt3;

use std::ops::Div;

use serde::Serialize;

use crate::algebra::cubic::real_roots_of_cubic;
use crate::algebra::ternary::{self, Cubic};
use crate::algebra::{Scalar, MONOMIALS};
use crate::curves::RealCubic;
use crate::error::{Error, Result};

pub use qsqrt3::QSqrt3;

/// Absolute threshold under which a floating-point quantity counts as zero.
pub const FLOAT_ZERO_TOL: f64 = 1e-12;
/// Coefficient-ratio tolerance for comparing D3 forms.
pub const D3_MATCH_TOL: f64 = 1e-9;

/// A field in which the maps are evaluated: exact `Q(sqrt3)` or `f64`.
pub trait Field: Scalar + Div<Output = Self> + Serialize {
    /// Zero, exactly or up to `FLOAT_ZERO_TOL`.
    fn negligible(&self) -> bool;
    fn sqrt27() -> Self;
    fn to_f64(&self) -> f64;
}

impl Field for f64 {
    fn negligible(&self) -> bool {
        self.abs() <= FLOAT_ZERO_TOL
    }
    fn sqrt27() -> Self {
        27f64.sqrt()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Field for QSqrt3 {
    fn negligible(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn sqrt27() -> Self {
        QSqrt3::from_ints(0, 3)
    }
    fn to_f64(&self) -> f64 {
        QSqrt3::to_f64(self)
    }
}

fn k<F: Field>(n: i64) -> F {
    F::from_i64(n)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WnfParams<F: Field> {
    pub q: F,
    pub c: F,
    pub a: F,
    pub b: F,
    /// `b = 0` or `a^2 = 4b`: the target curve is singular.
    pub degenerate: bool,
}

impl<F: Field> WnfParams<F> {
    /// The cubic `y^2 z - x^3 - a x^2 z - b x z^2`.
    pub fn cubic(&self) -> Result<Cubic<F>> {
        if self.degenerate {
            return Err(Error::SingularParameter("the Weierstrass curve is singular".into()));
        }
        Ok(e_ab_cubic(&self.a, &self.b))
    }

    pub fn to_f64(&self) -> WnfParams<f64> {
        WnfParams {
            q: self.q.to_f64(),
            c: self.c.to_f64(),
            a: self.a.to_f64(),
            b: self.b.to_f64(),
            degenerate: self.degenerate,
        }
    }
}

/// `c = -(2q^3+1)/q^2`, `b = (q-1)^3/(q+q^2+q^3)`, `a = (b^2-6b-3)/4`.
pub fn hesse_to_wnf<F: Field>(q: &F) -> Result<WnfParams<F>> {
    if q.negligible() {
        return Err(Error::SingularParameter("q = 0".into()));
    }
    let q2 = q.clone() * q.clone();
    let q3 = q2.clone() * q.clone();
    let s = q.clone() + q2.clone() + q3.clone();
    if s.negligible() {
        return Err(Error::SingularParameter("q + q^2 + q^3 = 0".into()));
    }
    let c = -(k::<F>(2) * q3.clone() + F::one()) / q2;
    let qm1 = q.clone() - F::one();
    let b = qm1.clone() * qm1.clone() * qm1 / s;
    let a = (b.clone() * b.clone() - k::<F>(6) * b.clone() - k::<F>(3)) / k::<F>(4);
    let disc = a.clone() * a.clone() - k::<F>(4) * b.clone();
    let degenerate = b.negligible() || disc.negligible();
    Ok(WnfParams { q: q.clone(), c, a, b, degenerate })
}

/// All real `q` with `-(2q^3+1)/q^2 = c`, i.e. the real roots of
/// `2q^3 + c q^2 + 1`, ascending.
pub fn wnf_q_from_c(c: f64) -> Result<Vec<f64>> {
    if !c.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite parameter {c}")));
    }
    let mut roots = real_roots_of_cubic(2.0, c, 0.0, 1.0, 1e-9)?;
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// `y^2 z - x^3 - a x^2 z - b x z^2`.
pub fn e_ab_cubic<F: Field>(a: &F, b: &F) -> Cubic<F> {
    let mut out: Cubic<F> = std::array::from_fn(|_| F::zero());
    out[7] = F::one();
    out[0] = -F::one();
    out[2] = -a.clone();
    out[5] = -b.clone();
    out
}

/// Divides by the first coefficient that is not negligible.
pub fn normalize_cubic<F: Field>(c: &Cubic<F>) -> Result<Cubic<F>> {
    let lead = c.iter().find(|x| !x.negligible()).cloned().ok_or(Error::ZeroCubic)?;
    Ok(c.clone().map(|x| x / lead.clone()))
}

/// The normalized Hesse derivative over `F`.
pub fn hesse_derivative_in<F: Field>(c: &Cubic<F>) -> Result<Cubic<F>> {
    let d = ternary::hessian_determinant(c);
    if d.iter().all(|x| x.negligible()) {
        return Err(Error::IdenticallyZeroHessian);
    }
    normalize_cubic(&d)
}

/// `c -> -(108 + c^3) / (3 c^2)` over `F`; `None` at `c = 0`.
pub fn step_in<F: Field>(c: &F) -> Option<F> {
    if c.negligible() {
        return None;
    }
    let c2 = c.clone() * c.clone();
    Some(-(k::<F>(108) + c2.clone() * c.clone()) / (k::<F>(3) * c2))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Loop2Report {
    pub first: WnfParams<QSqrt3>,
    pub second: WnfParams<QSqrt3>,
    pub step_first_is_second: bool,
    pub step_second_is_first: bool,
    /// Exact equality of the normalized twice-derived cubic with the original.
    pub twice_derived_is_original: bool,
    /// The same comparison in floating point, max coefficient difference.
    pub twice_derived_max_diff: f64,
    pub pass: bool,
}

/// Tolerance on the floating-point comparison in the loop check.
pub const LOOP2_TOL: f64 = 1e-9;

/// The two Weierstrass curves from `q0 = -(sqrt3+1)/2` and `q1 = (sqrt3-1)/2`:
/// their Hesse parameters swap under `step`, and deriving the first curve
/// twice returns it.
pub fn wnf_loop2_report() -> Result<Loop2Report> {
    let half = |p: i64, q: i64| QSqrt3::new(num_rational::BigRational::new(p.into(), 2.into()), num_rational::BigRational::new(q.into(), 2.into()));
    let first = hesse_to_wnf(&half(-1, -1))?;
    let second = hesse_to_wnf(&half(-1, 1))?;
    let step_first_is_second = step_in(&first.c).as_ref() == Some(&second.c);
    let step_second_is_first = step_in(&second.c).as_ref() == Some(&first.c);
    let e0 = normalize_cubic(&first.cubic()?)?;
    let twice = hesse_derivative_in(&hesse_derivative_in(&e0)?)?;
    let twice_derived_is_original = twice == e0;
    let e0f: Cubic<f64> = e0.clone().map(|x| x.to_f64());
    let twice_f = hesse_derivative_in(&hesse_derivative_in(&e0f)?)?;
    let twice_derived_max_diff = e0f.iter().zip(&twice_f).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    let pass = step_first_is_second && step_second_is_first && twice_derived_is_original && twice_derived_max_diff <= LOOP2_TOL;
    Ok(Loop2Report { first, second, step_first_is_second, step_second_is_first, twice_derived_is_original, twice_derived_max_diff, pass })
}

pub fn wnf_loop2_check() -> bool {
    wnf_loop2_report().map(|r| r.pass).unwrap_or(false)
}

/// `x^3 - 3xy^2 + k (x^2 + y^2) z - (sqrt27/2) z^3` with
/// `k = sqrt27 (c - 6) / (2 (c + 3))`.
pub fn hesse_to_d3_in<F: Field>(c: &F) -> Result<Cubic<F>> {
    let denom = k::<F>(2) * (c.clone() + k::<F>(3));
    if denom.negligible() {
        return Err(Error::DegenerateParameter("c = -3 gives three lines".into()));
    }
    let kk = F::sqrt27() * (c.clone() - k::<F>(6)) / denom;
    let mut out: Cubic<F> = std::array::from_fn(|_| F::zero());
    out[0] = F::one();
    out[3] = k::<F>(-3);
    out[2] = kk.clone();
    out[7] = kk;
    out[9] = -(F::sqrt27() / k::<F>(2));
    Ok(out)
}

pub fn hesse_to_d3(c: f64) -> Result<RealCubic> {
    if !c.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite parameter {c}")));
    }
    RealCubic::new(hesse_to_d3_in(&c)?)
}

/// `2 sqrt3 x^3 + 9 (sqrt3 + 1)(x^2 + y^2) z - 6 sqrt3 x y^2 - 9 z^3`: a
/// D3-symmetric cubic whose second Hesse derivative is itself.
pub fn d3_example() -> Cubic<QSqrt3> {
    let mut out: Cubic<QSqrt3> = std::array::from_fn(|_| num_traits::Zero::zero());
    out[0] = QSqrt3::from_ints(0, 2);
    out[2] = QSqrt3::from_ints(9, 9);
    out[7] = QSqrt3::from_ints(9, 9);
    out[3] = QSqrt3::from_ints(0, -6);
    out[9] = QSqrt3::from_ints(-9, 0);
    out
}

/// The cubic `f(M X)`, i.e. every variable `x_i` replaced by row `i` of `M`.
pub fn substitute_linear<T: Scalar>(c: &Cubic<T>, m: &[[T; 3]; 3]) -> Cubic<T> {
    let mut out: Cubic<T> = std::array::from_fn(|_| T::zero());
    for (e, coeff) in MONOMIALS.iter().zip(c.iter()) {
        if coeff.is_zero() {
            continue;
        }
        let vars: Vec<usize> = (0..3).flat_map(|i| std::iter::repeat(i).take(e[i] as usize)).collect();
        let term = ternary::product3(&m[vars[0]], &m[vars[1]], &m[vars[2]]);
        for (o, t) in out.iter_mut().zip(term) {
            *o = o.clone() + coeff.clone() * t;
        }
    }
    out
}

/// `(x, y) -> (x, -y)`.
pub fn reflection<T: Scalar>() -> [[T; 3]; 3] {
    let (o, z) = (T::one(), T::zero());
    [[o.clone(), z.clone(), z.clone()], [z.clone(), -o.clone(), z.clone()], [z.clone(), z, o]]
}

/// Rotation by `2 pi / 3` about the origin of the chart `z = 1`, exact.
pub fn rotation_third() -> [[QSqrt3; 3]; 3] {
    let h = |p: i64, q: i64| QSqrt3::new(num_rational::BigRational::new(p.into(), 2.into()), num_rational::BigRational::new(q.into(), 2.into()));
    let (o, z) = (QSqrt3::from_ints(1, 0), QSqrt3::from_ints(0, 0));
    [[h(-1, 0), h(0, -1), z.clone()], [h(0, 1), h(-1, 0), z.clone()], [z.clone(), z, o]]
}

/// Largest coefficient-ratio deviation of `f` from its images under the
/// reflection and the third-turn rotation.
pub fn d3_symmetry_residual(f: &RealCubic) -> f64 {
    let rot: [[f64; 3]; 3] = rotation_third().map(|r| r.map(|x| x.to_f64()));
    let refl = RealCubic::new(substitute_linear(&f.coeffs, &reflection::<f64>()));
    let turned = RealCubic::new(substitute_linear(&f.coeffs, &rot));
    match (refl, turned) {
        (Ok(a), Ok(b)) => f.projective_distance(&a).max(f.projective_distance(&b)),
        _ => f64::INFINITY,
    }
}
