//! Exact linear forms in three variables and determinants of their matrices.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::ternary;
use crate::curves::CubicForm;

/// `u x + v y + w z` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm3 {
    pub u: BigRational,
    pub v: BigRational,
    pub w: BigRational,
}

/// A 3x3 matrix of linear forms, row major.
pub type LinearMatrix3 = [[LinearForm3; 3]; 3];

impl LinearForm3 {
    pub fn new(u: BigRational, v: BigRational, w: BigRational) -> Self {
        LinearForm3 { u, v, w }
    }

    pub fn from_ints(u: i64, v: i64, w: i64) -> Self {
        let q = |n: i64| BigRational::from_integer(n.into());
        LinearForm3::new(q(u), q(v), q(w))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0)
    }

    pub fn x() -> Self {
        Self::from_ints(1, 0, 0)
    }

    pub fn y() -> Self {
        Self::from_ints(0, 1, 0)
    }

    pub fn z() -> Self {
        Self::from_ints(0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero() && self.w.is_zero()
    }

    pub fn coeffs(&self) -> [&BigRational; 3] {
        [&self.u, &self.v, &self.w]
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        LinearForm3::new(&self.u * s, &self.v * s, &self.w * s)
    }

    pub fn add(&self, o: &LinearForm3) -> Self {
        LinearForm3::new(&self.u + &o.u, &self.v + &o.v, &self.w + &o.w)
    }

    pub fn eval(&self, p: [&BigRational; 3]) -> BigRational {
        &self.u * p[0] + &self.v * p[1] + &self.w * p[2]
    }

    pub fn eval_f64(&self, p: [f64; 3]) -> f64 {
        use super::rational::rational_to_f64 as f;
        f(&self.u) * p[0] + f(&self.v) * p[1] + f(&self.w) * p[2]
    }
}

impl fmt::Display for LinearForm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*x + ({})*y + ({})*z", self.u, self.v, self.w)
    }
}

impl LinearForm3 {
    pub fn to_array(&self) -> [BigRational; 3] {
        [self.u.clone(), self.v.clone(), self.w.clone()]
    }

    pub fn from_array([u, v, w]: [BigRational; 3]) -> Self {
        LinearForm3 { u, v, w }
    }
}

/// Determinant by the Leibniz expansion, or `None` when it vanishes identically.
pub fn det3_linear(m: &LinearMatrix3) -> Option<CubicForm> {
    let arr = std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].to_array()));
    CubicForm::new(ternary::det3(&arr)).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Diagonal matrix of linear forms.
    fn diag(a: LinearForm3, b: LinearForm3, c: LinearForm3) -> LinearMatrix3 {
        let z = LinearForm3::zero;
        [[a, z(), z()], [z(), b, z()], [z(), z(), c]]
    }

    #[test]
    fn diagonal_determinant_is_xyz() {
        let d = det3_linear(&diag(LinearForm3::x(), LinearForm3::y(), LinearForm3::z())).unwrap();
        assert_eq!(d, CubicForm::from_ints([0, 0, 0, 0, 1, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn singular_matrix_gives_none() {
        let r = [LinearForm3::x(), LinearForm3::y(), LinearForm3::z()];
        assert!(det3_linear(&[r.clone(), r.clone(), r]).is_none());
    }

    fn form() -> impl Strategy<Value = LinearForm3> {
        (-5i64..=5, -5i64..=5, -5i64..=5).prop_map(|(u, v, w)| LinearForm3::from_ints(u, v, w))
    }

    fn coeffs_of(m: &LinearMatrix3) -> [BigRational; 10] {
        det3_linear(m).map(|c| c.coeffs().clone()).unwrap_or_else(|| std::array::from_fn(|_| BigRational::zero()))
    }

    proptest! {
        #[test]
        fn swapping_rows_negates(entries in prop::collection::vec(form(), 9)) {
            let e = entries;
            let m: LinearMatrix3 = [
                [e[0].clone(), e[1].clone(), e[2].clone()],
                [e[3].clone(), e[4].clone(), e[5].clone()],
                [e[6].clone(), e[7].clone(), e[8].clone()],
            ];
            let mut s = m.clone();
            s.swap(0, 2);
            let a = coeffs_of(&m);
            let b = coeffs_of(&s);
            for (x, y) in a.iter().zip(b.iter()) {
                prop_assert_eq!(x, &-y);
            }
        }
    }
}
