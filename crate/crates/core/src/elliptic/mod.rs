//! The curve `E_{a,b}: y^2 = x^3 + a x^2 + b x` over the complex numbers:
//! the chord-tangent group law, closed-form doubling and four-way halving.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

type C = Complex64;

/// Relative tolerance in the on-curve test.
pub const ON_CURVE_TOL: f64 = 1e-8;
/// Relative tolerance under which two x-coordinates are treated as equal.
const COINCIDE_TOL: f64 = 1e-10;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

fn close(p: C, q: C, tol: f64) -> bool {
    (p - q).norm() <= tol * p.norm().max(q.norm()).max(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EabCurve {
    pub a: C,
    pub b: C,
    pub e1: C,
    pub e2: C,
}

impl EabCurve {
    pub fn new(a: C, b: C) -> Result<Self> {
        let scale = a.norm_sqr().max(b.norm()).max(1.0);
        if b.norm() <= COINCIDE_TOL * scale {
            return Err(Error::SingularCurve("b = 0".into()));
        }
        let disc = a * a - 4.0 * b;
        if disc.norm() <= COINCIDE_TOL * scale {
            return Err(Error::SingularCurve("a^2 = 4b".into()));
        }
        let r = disc.sqrt();
        Ok(EabCurve { a, b, e1: (-a + r) / 2.0, e2: (-a - r) / 2.0 })
    }

    pub fn real(a: f64, b: f64) -> Result<Self> {
        Self::new(c(a), c(b))
    }

    /// `x^3 + a x^2 + b x`.
    pub fn rhs(&self, x: C) -> C {
        x * (x * (x + self.a) + self.b)
    }

    pub fn on_curve(&self, p: &EPoint) -> bool {
        match *p {
            EPoint::Infinity => true,
            EPoint::Affine { x, y } => (y * y - self.rhs(x)).norm() <= ON_CURVE_TOL * x.norm().powi(3).max(1.0),
        }
    }

    /// The affine point over `x` with `y` the principal square root.
    pub fn point_at(&self, x: C) -> EPoint {
        EPoint::Affine { x, y: self.rhs(x).sqrt() }
    }

    pub fn negate(&self, p: &EPoint) -> EPoint {
        match *p {
            EPoint::Infinity => EPoint::Infinity,
            EPoint::Affine { x, y } => EPoint::Affine { x, y: -y },
        }
    }

    pub fn add(&self, p: &EPoint, q: &EPoint) -> EPoint {
        let (x1, y1, x2, y2) = match (*p, *q) {
            (EPoint::Infinity, _) => return *q,
            (_, EPoint::Infinity) => return *p,
            (EPoint::Affine { x: x1, y: y1 }, EPoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda = if close(x1, x2, COINCIDE_TOL) {
            if close(y1, -y2, COINCIDE_TOL) {
                return EPoint::Infinity;
            }
            (3.0 * x1 * x1 + 2.0 * self.a * x1 + self.b) / (2.0 * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = lambda * lambda - self.a - x1 - x2;
        EPoint::Affine { x: x3, y: lambda * (x1 - x3) - y1 }
    }

    /// `2 * P` from the closed forms
    /// `x = (x0^2 - e1 e2)^2 / (4 y0^2)` and
    /// `y = (x0^2 - e1 e2)(e1 e2 - 2 e1 x0 + x0^2)(e1 e2 - 2 e2 x0 + x0^2) / (8 y0^3)`.
    pub fn double(&self, p: &EPoint) -> EPoint {
        let EPoint::Affine { x: x0, y: y0 } = *p else {
            return EPoint::Infinity;
        };
        if y0.norm() <= COINCIDE_TOL * x0.norm().powf(1.5).max(1.0) {
            return EPoint::Infinity;
        }
        let (e1, e2) = (self.e1, self.e2);
        let p2 = e1 * e2;
        let n = x0 * x0 - p2;
        let x = n * n / (4.0 * y0 * y0);
        let y = n * (p2 - 2.0 * e1 * x0 + x0 * x0) * (p2 - 2.0 * e2 * x0 + x0 * x0) / (8.0 * y0 * y0 * y0);
        EPoint::Affine { x, y }
    }

    /// x-coordinate of `2 * (x, y)` from `x` alone:
    /// `(x^2 - b)^2 / (4 x (x^2 + a x + b))`.
    pub fn double_x(&self, x: C) -> C {
        let n = x * x - self.b;
        n * n / (4.0 * x * (x * x + self.a * x + self.b))
    }

    pub fn radicals(&self, x0: C) -> HalvingRadicals {
        HalvingRadicals { gamma: x0.sqrt(), alpha: (x0 - self.e1).sqrt(), beta: (x0 - self.e2).sqrt() }
    }

    /// The x-coordinates `[x11, x12, x21, x22]` of the halves of a point over `x0`.
    pub fn halving_x(&self, x0: C) -> [C; 4] {
        let HalvingRadicals { gamma: g, alpha: al, beta: be } = self.radicals(x0);
        [(al + g) * (be + g), (al - g) * (be - g), (al + g) * (-be + g), (al - g) * (-be - g)]
    }

    /// The four points `Q` with `2 * Q = -P`, in the order `Q11, Q12, Q21, Q22`.
    pub fn halve(&self, p: &EPoint) -> Result<[EPoint; 4]> {
        let EPoint::Affine { x: x0, .. } = *p else {
            return Err(Error::SingularInput("cannot halve the point at infinity".into()));
        };
        for (root, name) in [(c(0.0), "0"), (self.e1, "e1"), (self.e2, "e2")] {
            if close(x0, root, COINCIDE_TOL) {
                return Err(Error::SingularInput(format!("x0 = {name}: the halving x-coordinates collide")));
            }
        }
        let target = self.negate(p);
        let xs = self.halving_x(x0);
        let mut out = [EPoint::Infinity; 4];
        for (slot, x) in out.iter_mut().zip(xs) {
            let y = self.rhs(x).sqrt();
            let plus = EPoint::Affine { x, y };
            let minus = EPoint::Affine { x, y: -y };
            let dp = point_distance(&self.double(&plus), &target);
            let dm = point_distance(&self.double(&minus), &target);
            *slot = if dp <= dm { plus } else { minus };
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HalvingRadicals {
    pub gamma: C,
    pub alpha: C,
    pub beta: C,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EPoint {
    Infinity,
    Affine { x: C, y: C },
}

impl EPoint {
    pub fn affine(x: C, y: C) -> Self {
        EPoint::Affine { x, y }
    }

    pub fn real(x: f64, y: f64) -> Self {
        EPoint::Affine { x: c(x), y: c(y) }
    }

    pub fn x(&self) -> Option<C> {
        match self {
            EPoint::Infinity => None,
            EPoint::Affine { x, .. } => Some(*x),
        }
    }

    pub fn y(&self) -> Option<C> {
        match self {
            EPoint::Infinity => None,
            EPoint::Affine { y, .. } => Some(*y),
        }
    }
}

/// Largest relative coordinate difference; infinite when exactly one point
/// is at infinity.
pub fn point_distance(p: &EPoint, q: &EPoint) -> f64 {
    match (p, q) {
        (EPoint::Infinity, EPoint::Infinity) => 0.0,
        (EPoint::Affine { x: x1, y: y1 }, EPoint::Affine { x: x2, y: y2 }) => {
            let dx = (x1 - x2).norm() / x1.norm().max(x2.norm()).max(1.0);
            let dy = (y1 - y2).norm() / y1.norm().max(y2.norm()).max(1.0);
            dx.max(dy)
        }
        _ => f64::INFINITY,
    }
}

/// Roots of `(x^2 - b)^2 - 4 x x0 (x^2 + a x + b)`, the x-coordinates whose
/// doubles lie over `x0`.
pub fn halving_quartic_roots(curve: &EabCurve, x0: C) -> Result<[C; 4]> {
    let (a, b) = (curve.a, curve.b);
    // x^4 - 4 x0 x^3 - (2b + 4 a x0) x^2 - 4 b x0 x + b^2
    let coeffs = [c(1.0), -4.0 * x0, -(2.0 * b + 4.0 * a * x0), -4.0 * b * x0, b * b];
    quartic_roots(&coeffs)
}

/// All complex roots of a monic quartic, by Durand-Kerner iteration.
fn quartic_roots(p: &[C; 5]) -> Result<[C; 4]> {
    let eval = |z: C| p.iter().fold(c(0.0), |acc, &k| acc * z + k);
    let radius = 1.0 + p[1..].iter().map(|k| k.norm()).fold(0.0, f64::max);
    let seed = C::new(0.4, 0.9);
    let mut z: [C; 4] = std::array::from_fn(|i| seed.powu(i as u32) * radius);
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..4 {
            let mut den = c(1.0);
            for j in 0..4 {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = c(f64::EPSILON);
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm() / z[i].norm().max(1.0));
        }
        if delta < 1e-15 {
            return Ok(z);
        }
    }
    if z.iter().all(|r| r.re.is_finite() && r.im.is_finite()) {
        Ok(z)
    } else {
        Err(Error::InvalidInput("quartic root iteration diverged".into()))
    }
}

/// Greedy matching distance between two multisets of complex numbers,
/// relative to magnitude.
pub fn multiset_distance(a: &[C], b: &[C]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm() / x.norm().max(y.norm()).max(1.0)))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e01() -> EabCurve {
        EabCurve::real(0.0, -1.0).unwrap()
    }

    #[test]
    fn singular_curves_are_rejected() {
        assert!(matches!(EabCurve::real(1.0, 0.0), Err(Error::SingularCurve(_))));
        assert!(matches!(EabCurve::real(2.0, 1.0), Err(Error::SingularCurve(_))));
        let e = e01();
        assert!(close(e.e1, c(1.0), 1e-15) && close(e.e2, c(-1.0), 1e-15));
    }

    #[test]
    fn on_curve_examples() {
        let e = EabCurve::real(0.0, 3.0).unwrap();
        assert!(e.on_curve(&EPoint::Infinity));
        assert!(e.on_curve(&EPoint::real(0.0, 0.0)));
        assert!(e.on_curve(&EPoint::real(1.0, 2.0)));
        assert!(!e.on_curve(&EPoint::real(1.0, 2.1)));
    }

    #[test]
    fn two_torsion_sum() {
        let e = e01();
        let s = e.add(&EPoint::real(0.0, 0.0), &EPoint::real(1.0, 0.0));
        assert!(point_distance(&s, &EPoint::real(-1.0, 0.0)) < 1e-15);
        assert_eq!(e.double(&EPoint::real(1.0, 0.0)), EPoint::Infinity);
        assert_eq!(e.negate(&EPoint::real(1.0, 0.0)), EPoint::real(1.0, 0.0));
    }

    #[test]
    fn doubling_example() {
        let e = e01();
        let p = EPoint::real(2.0, 6f64.sqrt());
        let d = e.double(&p);
        assert!((d.x().unwrap() - c(25.0 / 24.0)).norm() < 1e-14);
        assert!(point_distance(&d, &e.add(&p, &p)) < 1e-12);
        assert!((e.double_x(c(2.0)) - c(25.0 / 24.0)).norm() < 1e-14);
    }

    #[test]
    fn halving_example() {
        let e = e01();
        let p = e.point_at(c(4.0));
        let qs = e.halve(&p).unwrap();
        let x11 = (3f64.sqrt() + 2.0) * (5f64.sqrt() + 2.0);
        assert!((qs[0].x().unwrap() - c(x11)).norm() < 1e-12);
        for q in &qs {
            assert!(e.on_curve(q));
            assert!(point_distance(&e.double(q), &e.negate(&p)) < 1e-9);
            assert!((e.double_x(q.x().unwrap()) - c(4.0)).norm() < 1e-9);
        }
        assert!(matches!(e.halve(&EPoint::real(0.0, 0.0)), Err(Error::SingularInput(_))));
        assert!(matches!(e.halve(&EPoint::real(1.0, 0.0)), Err(Error::SingularInput(_))));
    }

    fn cplx() -> impl Strategy<Value = C> {
        (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(r, i)| C::new(r, i))
    }

    fn curve_and_point() -> impl Strategy<Value = (EabCurve, EPoint)> {
        (cplx(), cplx(), cplx())
            .prop_filter_map("non-singular", |(a, b, x)| {
                let e = EabCurve::new(a, b).ok()?;
                let sep = [c(0.0), e.e1, e.e2].iter().map(|r| (x - r).norm()).fold(f64::INFINITY, f64::min);
                let gap = [(e.e1 - e.e2).norm(), e.e1.norm(), e.e2.norm()].into_iter().fold(f64::INFINITY, f64::min);
                (sep > 0.05 && gap > 0.05).then(|| (e, e.point_at(x)))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn group_laws((e, p) in curve_and_point(), x1 in cplx(), x2 in cplx()) {
            let q = e.point_at(x1);
            let r = e.point_at(x2);
            prop_assume!((x1 - p.x().unwrap()).norm() > 0.05 && (x2 - p.x().unwrap()).norm() > 0.05 && (x1 - x2).norm() > 0.05);
            prop_assert!(point_distance(&e.add(&p, &q), &e.add(&q, &p)) < 1e-9);
            prop_assert_eq!(e.add(&p, &EPoint::Infinity), p);
            prop_assert_eq!(e.add(&p, &e.negate(&p)), EPoint::Infinity);
            prop_assert_eq!(e.negate(&e.negate(&p)), p);
            let s = e.add(&p, &q);
            prop_assert!(e.on_curve(&s));
            let lhs = e.add(&s, &r);
            let rhs = e.add(&p, &e.add(&q, &r));
            // associativity loses digits near vertical chords; skip those
            let m = [lhs, rhs].iter().filter_map(|t| t.x()).map(|x| x.norm()).fold(0.0, f64::max);
            prop_assume!(m < 1e4);
            prop_assert!(point_distance(&lhs, &rhs) < 1e-7, "{:?} vs {:?}", lhs, rhs);
        }

        #[test]
        fn closed_form_doubling_matches_chord_tangent((e, p) in curve_and_point()) {
            prop_assert!(point_distance(&e.double(&p), &e.add(&p, &p)) < 1e-8);
            prop_assert!(close(e.double_x(p.x().unwrap()), e.double(&p).x().unwrap(), 1e-8));
        }

        #[test]
        fn halving_fiber((e, p) in curve_and_point()) {
            let x0 = p.x().unwrap();
            let qs = e.halve(&p).unwrap();
            let target = e.negate(&p);
            for q in &qs {
                prop_assert!(point_distance(&e.double(q), &target) < 1e-7);
            }
            let xs: Vec<C> = qs.iter().map(|q| q.x().unwrap()).collect();
            let roots = halving_quartic_roots(&e, x0).unwrap();
            prop_assert!(multiset_distance(&xs, &roots) < 1e-6);
            let prod = xs.iter().fold(c(1.0), |acc, x| acc * x);
            prop_assert!(close(prod, e.b * e.b, 1e-8));
        }

        #[test]
        fn radicals_hold_on_every_branch((e, p) in curve_and_point(), flips in 0u8..8) {
            let x0 = p.x().unwrap();
            let mut r = e.radicals(x0);
            if flips & 1 != 0 { r.gamma = -r.gamma; }
            if flips & 2 != 0 { r.alpha = -r.alpha; }
            if flips & 4 != 0 { r.beta = -r.beta; }
            prop_assert!(close(r.gamma * r.gamma, x0, 1e-10));
            prop_assert!(close(r.alpha * r.alpha, x0 - e.e1, 1e-10));
            prop_assert!(close(r.beta * r.beta, x0 - e.e2, 1e-10));
            let (g, al, be) = (r.gamma, r.alpha, r.beta);
            let xs = [(al + g) * (be + g), (al - g) * (be - g), (al + g) * (-be + g), (al - g) * (-be - g)];
            prop_assert!(multiset_distance(&xs, &e.halving_x(x0)) < 1e-9);
        }

        #[test]
        fn roots_of_e_satisfy_vieta(a in cplx(), b in cplx()) {
            if let Ok(e) = EabCurve::new(a, b) {
                prop_assert!(close(e.e1 + e.e2, -a, 1e-10));
                prop_assert!(close(e.e1 * e.e2, b, 1e-10));
            }
        }
    }
}
