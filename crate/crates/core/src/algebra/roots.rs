//! Real-root counting and isolation for rational polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::intpoly::{IntPoly, Isolated};
use super::poly::UniPoly;
use super::rational::{rational_to_f64, ExtReal};
use crate::error::{Error, Result};

/// Default absolute width for refined isolating intervals.
pub const DEFAULT_ROOT_TOL: f64 = 1e-9;

/// One real root: an isolating interval, its midpoint and its multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealRoot {
    #[serde(skip)]
    pub lo: BigRational,
    #[serde(skip)]
    pub hi: BigRational,
    pub approx: f64,
    pub multiplicity: usize,
}

impl RealRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`, by a Sturm chain.
pub fn sturm_count_real_roots(p: &UniPoly, lo: &ExtReal, hi: &ExtReal) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(Error::InvalidInterval);
    }
    Ok(p.to_primitive_int().sturm_count(lo, hi))
}

/// Same count by continued-fraction isolation; an independent route.
pub fn descartes_count_real_roots(p: &UniPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(p.to_primitive_int().count_real_roots_descartes())
}

/// A point `m / 2^k` near the middle of `(lo, hi)`, so that exact
/// evaluation there needs only shifts.
fn dyadic_between(lo: &BigRational, hi: &BigRational) -> Option<BigRational> {
    let width = hi - lo;
    let mid = (lo + hi) / BigRational::from_integer(2.into());
    let mut k = (width.denom().bits() as i64 - width.numer().bits() as i64 + 3).max(0) as usize;
    for _ in 0..8 {
        let scale = BigInt::one() << k;
        let m = BigRational::new((&mid * BigRational::from_integer(scale.clone())).round().to_integer(), scale);
        if &m > lo && &m < hi {
            return Some(m);
        }
        k += 1;
    }
    None
}

/// Shrinks an open isolating interval of a square-free `p` until narrower than `tol`.
pub(crate) fn refine(p: &IntPoly, mut lo: BigRational, mut hi: BigRational, tol: f64) -> (BigRational, BigRational) {
    let tol = crate::algebra::rational::f64_to_rational(tol).unwrap_or_else(|_| BigRational::new(1.into(), 1_000_000_000.into()));
    let two = BigRational::from_integer(2.into());
    // an endpoint may be shared with a neighbouring exact root
    let slo = match p.sign_at(&lo) {
        0 => -p.sign_at(&hi),
        s => s,
    };
    while &hi - &lo >= tol {
        let mid = dyadic_between(&lo, &hi).unwrap_or_else(|| (&lo + &hi) / &two);
        let s = p.sign_at(&mid);
        if s == 0 {
            return (mid.clone(), mid);
        }
        if s == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Isolates every distinct real root of `p` and refines each interval to
/// width below `tol`. Multiplicities come from the square-free factorization.
pub fn isolate_real_roots(p: &UniPoly, tol: f64) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let mut out = Vec::new();
    for (factor, mult) in p.square_free_factorization()? {
        let ip = factor.to_primitive_int();
        for iso in ip.isolate_real_roots() {
            let (lo, hi) = match iso {
                Isolated::Exact(q) => (q.clone(), q),
                Isolated::Open(lo, hi) => refine(&ip, lo, hi, tol),
            };
            let approx = if lo == hi {
                rational_to_f64(&lo)
            } else {
                rational_to_f64(&((&lo + &hi) / BigRational::from_integer(2.into())))
            };
            out.push(RealRoot { lo, hi, approx, multiplicity: mult });
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Distinct real roots only, as f64 midpoints.
pub fn real_root_values(p: &UniPoly, tol: f64) -> Result<Vec<f64>> {
    Ok(isolate_real_roots(p, tol)?.into_iter().map(|r| r.approx).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational_map::RationalMap1;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn abs_width(r: &RealRoot) -> f64 {
        rational_to_f64(&(&r.hi - &r.lo).abs())
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn sturm_examples() {
        let all = (ExtReal::NegInf, ExtReal::PosInf);
        assert_eq!(sturm_count_real_roots(&UniPoly::from_ints(&[-1, 0, 1]), &all.0, &all.1).unwrap(), 2);
        assert_eq!(sturm_count_real_roots(&UniPoly::from_ints(&[1, 0, 1]), &all.0, &all.1).unwrap(), 0);
        let h = RationalMap1::paper_h();
        let h2 = h.compose(&h);
        let fixed = h2.fixed_point_numerator();
        assert_eq!(sturm_count_real_roots(&fixed, &all.0, &all.1).unwrap(), 3);
        assert_eq!(sturm_count_real_roots(&UniPoly::zero(), &all.0, &all.1), Err(Error::ZeroPolynomial));
        assert_eq!(
            sturm_count_real_roots(&fixed, &ExtReal::finite(q(1)), &ExtReal::finite(q(1))),
            Err(Error::InvalidInterval)
        );
    }

    #[test]
    fn isolate_examples() {
        let r = isolate_real_roots(&UniPoly::from_ints(&[-2, 0, 1]), 1e-9).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[1].approx - 2f64.sqrt()).abs() < 1e-9);
        assert!((r[0].approx + 2f64.sqrt()).abs() < 1e-9);
        assert!(r.iter().all(|x| abs_width(x) < 1e-9));

        // x^3 - 9x^2 + 108 = (x + 3)(x - 6)^2
        let r = isolate_real_roots(&UniPoly::from_ints(&[108, 0, -9, 1]), 1e-9).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!((r[0].lo.clone(), r[0].multiplicity), (q(-3), 1));
        assert_eq!((r[1].lo.clone(), r[1].multiplicity), (q(6), 2));

        let p = UniPoly::from_ints(&[1, 0, -4, 2]);
        let r = isolate_real_roots(&p, 1e-9).unwrap();
        // grid sign-change oracle
        let mut changes = 0;
        let mut prev = p.eval_f64(-10.0);
        for k in 1..=20000 {
            let v = p.eval_f64(-10.0 + k as f64 * 1e-3);
            if v == 0.0 || v.signum() != prev.signum() {
                changes += 1;
            }
            prev = v;
        }
        assert_eq!(r.len(), 3);
        assert_eq!(changes, 3);
    }

    fn small_poly() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(-20i64..=20, 1..=13).prop_filter_map("nonzero", |c| {
            let p = UniPoly::from_ints(&c);
            (!p.is_zero()).then_some(p)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn sturm_matches_isolation(p in small_poly()) {
            let n = sturm_count_real_roots(&p, &ExtReal::NegInf, &ExtReal::PosInf).unwrap();
            let iso = isolate_real_roots(&p, 1e-6).unwrap();
            prop_assert_eq!(n, iso.len());
            prop_assert_eq!(n, descartes_count_real_roots(&p).unwrap());
        }
    }
}
