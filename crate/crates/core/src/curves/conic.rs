//! Polar conics and the splitting of degenerate conics into line pairs.

use serde::{Deserialize, Serialize};

use super::form::RealCubic;
use super::point::ProjPoint;
use crate::error::{Error, Result};

/// Default relative degeneracy tolerance for [`split_degenerate_conic`].
pub const SPLIT_TOL: f64 = 1e-8;

/// A symmetric 3x3 matrix, stored as its upper triangle
/// `m00, m01, m02, m11, m12, m22`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymConic {
    pub entries: [f64; 6],
}

const IDX: [[usize; 3]; 3] = [[0, 1, 2], [1, 3, 4], [2, 4, 5]];

impl SymConic {
    pub fn new(entries: [f64; 6]) -> Self {
        SymConic { entries }
    }

    /// From a full matrix; the off-diagonal pairs are averaged.
    pub fn from_matrix(m: [[f64; 3]; 3]) -> Self {
        SymConic::new([
            m[0][0],
            0.5 * (m[0][1] + m[1][0]),
            0.5 * (m[0][2] + m[2][0]),
            m[1][1],
            0.5 * (m[1][2] + m[2][1]),
            m[2][2],
        ])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[IDX[i][j]]
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.get(i, j)))
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.abs()))
    }

    pub fn det(&self) -> f64 {
        let m = self.matrix();
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn adjugate(&self) -> [[f64; 3]; 3] {
        let m = self.matrix();
        let c = |i: usize, j: usize| {
            let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let s: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            let minor = m[r[0]][s[0]] * m[r[1]][s[1]] - m[r[0]][s[1]] * m[r[1]][s[0]];
            if (i + j) % 2 == 0 {
                minor
            } else {
                -minor
            }
        };
        // adjugate is the transpose of the cofactor matrix
        std::array::from_fn(|i| std::array::from_fn(|j| c(j, i)))
    }

    /// `<X, M X>`.
    pub fn eval(&self, x: [f64; 3]) -> f64 {
        let m = self.matrix();
        (0..3).map(|i| (0..3).map(|j| x[i] * m[i][j] * x[j]).sum::<f64>()).sum()
    }

    /// Quadratic-form coefficients `x^2, xy, xz, y^2, yz, z^2`.
    pub fn quadratic_coeffs(&self) -> [f64; 6] {
        let e = self.entries;
        [e[0], 2.0 * e[1], 2.0 * e[2], e[3], 2.0 * e[4], e[5]]
    }
}

/// The conic `<X, H_f(P) X> = 0`.
pub fn polar_conic(f: &RealCubic, p: &ProjPoint) -> SymConic {
    SymConic::from_matrix(f.hessian_at(p.coords))
}

/// A real line `u x + v y + w z = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub coeffs: [f64; 3],
}

impl Line {
    pub fn new(coeffs: [f64; 3]) -> Result<Self> {
        if coeffs.iter().all(|&c| c == 0.0) || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::ZeroLine);
        }
        Ok(Line { coeffs })
    }

    /// Unit Euclidean norm, first significant coefficient positive.
    pub fn normalized(&self) -> Line {
        let n = self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        let first = self.coeffs.iter().find(|c| c.abs() > 1e-12 * n).copied().unwrap_or(1.0);
        let s = first.signum() / n;
        Line { coeffs: self.coeffs.map(|c| c * s) }
    }

    pub fn eval(&self, p: [f64; 3]) -> f64 {
        self.coeffs[0] * p[0] + self.coeffs[1] * p[1] + self.coeffs[2] * p[2]
    }

    /// Intersection point of two distinct lines.
    pub fn meet(&self, other: &Line) -> Option<ProjPoint> {
        ProjPoint::new(cross(self.coeffs, other.coeffs)).ok().filter(|_| {
            let c = cross(self.normalized().coeffs, other.normalized().coeffs);
            c.iter().map(|x| x * x).sum::<f64>().sqrt() > 1e-12
        })
    }

    /// Largest coefficient difference after normalization.
    pub fn distance(&self, other: &Line) -> f64 {
        let a = self.normalized().coeffs;
        let b = other.normalized().coeffs;
        a.iter().zip(b.iter()).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
    }
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Two lines whose product is a degenerate conic.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinePair {
    pub l1: Line,
    pub l2: Line,
}

/// Quadratic-form coefficients of `l1 * l2`, ordered `x^2, xy, xz, y^2, yz, z^2`.
pub fn line_product(l1: &[f64; 3], l2: &[f64; 3]) -> [f64; 6] {
    [
        l1[0] * l2[0],
        l1[0] * l2[1] + l1[1] * l2[0],
        l1[0] * l2[2] + l1[2] * l2[0],
        l1[1] * l2[1],
        l1[1] * l2[2] + l1[2] * l2[1],
        l1[2] * l2[2],
    ]
}

/// Max coefficient residual of `a - lambda b` for the least-squares
/// `lambda`, after scaling both to unit max-norm.
pub fn proportionality_residual(a: &[f64], b: &[f64]) -> f64 {
    let na = a.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let nb = b.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if na == 0.0 || nb == 0.0 {
        return if na == nb { 0.0 } else { 1.0 };
    }
    let a: Vec<f64> = a.iter().map(|x| x / na).collect();
    let b: Vec<f64> = b.iter().map(|x| x / nb).collect();
    let lambda = a.iter().zip(&b).map(|(x, y)| x * y).sum::<f64>() / b.iter().map(|y| y * y).sum::<f64>();
    a.iter().zip(&b).fold(0.0f64, |m, (x, y)| m.max((x - lambda * y).abs()))
}

impl LinePair {
    /// Canonical order: lexicographic on normalized coefficients.
    pub fn canonical(l1: Line, l2: Line) -> LinePair {
        let (a, b) = (l1.normalized(), l2.normalized());
        let key = |l: &Line| l.coeffs;
        let ord = key(&a)
            .iter()
            .zip(key(&b).iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal);
        if ord.is_gt() {
            LinePair { l1: b, l2: a }
        } else {
            LinePair { l1: a, l2: b }
        }
    }

    pub fn product(&self) -> [f64; 6] {
        line_product(&self.l1.coeffs, &self.l2.coeffs)
    }

    /// Residual of `l1 * l2 - lambda * conic` for the best `lambda`.
    pub fn residual(&self, c: &SymConic) -> f64 {
        proportionality_residual(&self.product(), &c.quadratic_coeffs())
    }

    pub fn meet(&self) -> Option<ProjPoint> {
        self.l1.meet(&self.l2)
    }

    /// Same unordered pair, each line up to scale, within `tol`.
    pub fn same_as(&self, other: &LinePair, tol: f64) -> bool {
        let straight = self.l1.distance(&other.l1).max(self.l2.distance(&other.l2));
        let swapped = self.l1.distance(&other.l2).max(self.l2.distance(&other.l1));
        straight.min(swapped) <= tol
    }
}

/// Splits a degenerate real conic into two real lines.
///
/// Rank two: `adj(M) = -q q^T` where `q` is the double point of the pair, and
/// `M - [q]_x` has rank one with columns along one line and rows along the
/// other. Rank one: `M = lambda l l^T`.
pub fn split_degenerate_conic(c: &SymConic, tol: f64) -> Result<LinePair> {
    let norm = c.norm();
    if norm == 0.0 {
        return Err(Error::RankZero);
    }
    let det = c.det();
    let bound = tol * norm.powi(3);
    if det.abs() > bound {
        return Err(Error::NotDegenerate { det, bound });
    }
    let m = c.matrix();
    let adj = c.adjugate();
    let adj_norm = adj.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs()));
    if adj_norm <= tol.sqrt() * norm * norm {
        // rank one
        let k = (0..3).max_by(|&i, &j| m[i][i].abs().total_cmp(&m[j][j].abs())).unwrap();
        let l = Line::new(m[k])?;
        return Ok(LinePair::canonical(l, l));
    }
    let k = (0..3).max_by(|&i, &j| adj[i][i].abs().total_cmp(&adj[j][j].abs())).unwrap();
    if adj[k][k] > 0.0 {
        return Err(Error::ComplexLinePair);
    }
    let s = (-adj[k][k]).sqrt();
    let p: [f64; 3] = std::array::from_fn(|i| adj[i][k] / s);
    // [p]_x X = p x X
    let px = [[0.0, -p[2], p[1]], [p[2], 0.0, -p[0]], [-p[1], p[0], 0.0]];
    let b: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| m[i][j] - px[i][j]));
    let (mut bi, mut bj) = (0, 0);
    for i in 0..3 {
        for j in 0..3 {
            if b[i][j].abs() > b[bi][bj].abs() {
                (bi, bj) = (i, j);
            }
        }
    }
    let col = Line::new([b[0][bj], b[1][bj], b[2][bj]])?;
    let row = Line::new(b[bi])?;
    Ok(LinePair::canonical(col, row))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::CubicForm;
    use proptest::prelude::*;

    #[test]
    fn difference_of_squares() {
        let c = SymConic::new([1.0, 0.0, 0.0, -1.0, 0.0, 0.0]);
        let lp = split_degenerate_conic(&c, SPLIT_TOL).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(lp.l1.distance(&Line::new([1.0, -1.0, 0.0]).unwrap()) < 1e-12);
        assert!(lp.l2.distance(&Line::new([1.0, 1.0, 0.0]).unwrap()) < 1e-12);
        assert!((lp.l1.coeffs[0] - s).abs() < 1e-12);
        assert!(lp.residual(&c) < 1e-12);
    }

    #[test]
    fn perfect_square() {
        let c = SymConic::new([1.0, 1.0, 1.0, 1.0, 1.0, 1.0]);
        let lp = split_degenerate_conic(&c, SPLIT_TOL).unwrap();
        let l = Line::new([1.0, 1.0, 1.0]).unwrap();
        assert!(lp.l1.distance(&l) < 1e-12 && lp.l2.distance(&l) < 1e-12);
    }

    #[test]
    fn errors() {
        assert_eq!(split_degenerate_conic(&SymConic::new([0.0; 6]), SPLIT_TOL), Err(Error::RankZero));
        let id = SymConic::new([1.0, 0.0, 0.0, 1.0, 0.0, 1.0]);
        assert!(matches!(split_degenerate_conic(&id, SPLIT_TOL), Err(Error::NotDegenerate { .. })));
        let circle_point = SymConic::new([1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(split_degenerate_conic(&circle_point, SPLIT_TOL), Err(Error::ComplexLinePair));
    }

    #[test]
    fn fermat_polar_conic() {
        let f = CubicForm::from_ints([1, 0, 0, 0, 0, 0, 1, 0, 0, 1]).to_real();
        let c = polar_conic(&f, &ProjPoint::new([1.0, 0.0, 0.0]).unwrap());
        assert_eq!(c.entries, [6.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    fn real_cubic() -> impl Strategy<Value = RealCubic> {
        prop::array::uniform10(-3.0f64..3.0).prop_filter_map("nonzero", |c| RealCubic::new(c).ok())
    }

    proptest! {
        #[test]
        fn gradient_identity(f in real_cubic(), p in prop::array::uniform3(-2.0f64..2.0),
                             xs in prop::collection::vec(prop::array::uniform3(-2.0f64..2.0), 100)) {
            // <grad f(X), P> = 1/2 <X, H_f(P) X>
            prop_assume!(p.iter().any(|c| c.abs() > 1e-3));
            let c = polar_conic(&f, &ProjPoint::new(p).unwrap());
            for x in xs {
                let g = f.gradient(x);
                let lhs = g[0] * p[0] + g[1] * p[1] + g[2] * p[2];
                let rhs = 0.5 * c.eval(x);
                prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()));
            }
        }

        #[test]
        fn polar_determinant_is_hessian_value(f in prop::array::uniform10(-4i64..=4),
                                              ps in prop::collection::vec(prop::array::uniform3(-2.0f64..2.0), 50)) {
            let Ok(form) = CubicForm::new(f.map(|k| num_rational::BigRational::from_integer(k.into()))) else { return Ok(()); };
            let Some(det) = form.hessian_determinant() else { return Ok(()); };
            let (fr, dr) = (form.to_real(), det.to_real());
            for p in ps {
                prop_assume!(p.iter().any(|c| c.abs() > 1e-3));
                let c = polar_conic(&fr, &ProjPoint::new(p).unwrap());
                let lhs = c.det();
                let rhs = dr.eval(p);
                prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
            }
        }

        #[test]
        fn split_reconstructs_line_products(l1 in prop::array::uniform3(-3.0f64..3.0), l2 in prop::array::uniform3(-3.0f64..3.0)) {
            let n = |v: [f64; 3]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assume!(n(l1) > 0.1 && n(l2) > 0.1 && n(cross(l1, l2)) > 0.05 * n(l1) * n(l2));
            let q = line_product(&l1, &l2);
            let c = SymConic::new([q[0], q[1] / 2.0, q[2] / 2.0, q[3], q[4] / 2.0, q[5]]);
            let lp = split_degenerate_conic(&c, SPLIT_TOL).unwrap();
            prop_assert!(lp.residual(&c) <= 1e-7);
        }
    }
}
