//! Projective plane cubics: Hesse matrices and derivatives, polar conics,
//! line pairs and line intersections.

mod conic;
mod form;
mod intersect;
mod point;

pub use crate::algebra::ternary::monomial_index;
pub use conic::{
    line_product, polar_conic, proportionality_residual, split_degenerate_conic, Line, LinePair, SymConic, SPLIT_TOL,
};
pub use form::{CubicForm, RealCubic};
pub use intersect::{line_cubic_intersection, Intersection, LineIntersection};
pub use point::{ProjPoint, POINT_TOL};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::dynamics::ExtendedParam;
use crate::error::{Error, Result};

/// Discriminant of `2x^3 + c x^2 + 1`, namely `-108 - 4c^3`.
pub fn component_discriminant(c: &BigRational) -> BigRational {
    let c3 = c * c * c;
    BigRational::from_integer((-108).into()) - BigRational::from_integer(4.into()) * c3
}

/// Number of connected components of the real Hesse-form curve: two when
/// the cubic `2x^3 + c x^2 + 1` has three real roots, one otherwise.
pub fn component_count_hesse_form(c: &ExtendedParam) -> Result<u8> {
    let sign = match c {
        ExtendedParam::Infinity => return Err(Error::DegenerateCurve("the curve xyz = 0 is three lines".into())),
        ExtendedParam::Rational(c) => {
            let d = component_discriminant(c);
            if d.is_zero() {
                0
            } else if d.is_positive() {
                1
            } else {
                -1
            }
        }
        ExtendedParam::Real(c) => {
            let d = -108.0 - 4.0 * c * c * c;
            if d.abs() <= 1e-12 * (108.0 + 4.0 * c.abs().powi(3)) {
                0
            } else {
                d.signum() as i8
            }
        }
    };
    match sign {
        0 => Err(Error::DegenerateCurve("c = -3 gives three lines".into())),
        1 => Ok(2),
        _ => Ok(1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{isolate_real_roots, UniPoly};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn component_examples() {
        assert_eq!(component_count_hesse_form(&ExtendedParam::Rational(q(-4))), Ok(2));
        assert_eq!(component_count_hesse_form(&ExtendedParam::Rational(q(0))), Ok(1));
        assert!(matches!(component_count_hesse_form(&ExtendedParam::Rational(q(-3))), Err(Error::DegenerateCurve(_))));
        assert!(matches!(component_count_hesse_form(&ExtendedParam::Infinity), Err(Error::DegenerateCurve(_))));
        assert_eq!(component_count_hesse_form(&ExtendedParam::Real(-3.5)), Ok(2));
    }

    #[test]
    fn discriminant_has_single_real_root_at_minus3() {
        // -108 - 4c^3 as a polynomial in c
        let p = UniPoly::from_ints(&[-108, 0, 0, -4]);
        let r = isolate_real_roots(&p, 1e-12).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].lo, q(-3));
        assert!(component_discriminant(&q(-3)).is_zero());
    }

    #[test]
    fn component_count_matches_root_count_of_cubic() {
        for k in -40..=40 {
            let c = BigRational::new(k.into(), 4.into());
            if c == q(-3) {
                continue;
            }
            let p = UniPoly::new(vec![q(1), q(0), c.clone(), q(2)]);
            let roots = isolate_real_roots(&p, 1e-6).unwrap().len();
            let n = component_count_hesse_form(&ExtendedParam::Rational(c)).unwrap();
            assert_eq!(n, if roots == 3 { 2 } else { 1 });
        }
    }
}
