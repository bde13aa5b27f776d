//! Line-cubic intersections with multiplicities.

use num_complex::Complex64;
use serde::Serialize;

use super::conic::{cross, Line};
use super::form::RealCubic;
use super::point::ProjPoint;
use crate::algebra::solve_cubic;
use crate::algebra::ternary::restrict_to_pencil;
use crate::error::{Error, Result};

/// A real intersection point; multiplicity two or more means tangency.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Intersection {
    pub point: ProjPoint,
    pub multiplicity: u8,
    pub tangent: bool,
}

/// All intersections of a line with a cubic: the real points, and how many
/// of the three (with multiplicity) are non-real.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LineIntersection {
    pub real: Vec<Intersection>,
    pub complex_count: u8,
}

/// Two points spanning the line, orthonormal in R^3.
pub(crate) fn line_basis(l: &Line) -> (ProjPoint, ProjPoint) {
    let n = l.normalized().coeffs;
    let axis = (0..3).min_by(|&i, &j| n[i].abs().total_cmp(&n[j].abs())).unwrap();
    let mut e = [0.0; 3];
    e[axis] = 1.0;
    let unit = |v: [f64; 3]| {
        let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.map(|x| x / s)
    };
    let p = unit(cross(n, e));
    let q = unit(cross(n, p));
    (ProjPoint { coords: p }, ProjPoint { coords: q })
}

/// Relative tolerance under which two parameter roots are merged.
const MERGE_TOL: f64 = 1e-6;
/// Relative imaginary-part tolerance for calling a root real.
const REAL_TOL: f64 = 1e-7;

/// Roots in `u` of `sum c_k u^(d-k)` for degree `d = c.len() - 1 <= 3`.
fn solve_binary(c: &[f64]) -> Result<Vec<Complex64>> {
    let z = |x: f64| Complex64::new(x, 0.0);
    Ok(match c.len() {
        0 | 1 => Vec::new(),
        2 => vec![z(-c[1] / c[0])],
        3 => {
            let disc = z(c[1] * c[1] - 4.0 * c[0] * c[2]).sqrt();
            // avoid cancellation
            let s = if c[1] >= 0.0 { -z(c[1]) - disc } else { -z(c[1]) + disc };
            if s.norm() == 0.0 {
                vec![z(0.0), z(0.0)]
            } else {
                vec![s / (2.0 * c[0]), z(2.0 * c[2]) / s]
            }
        }
        _ => solve_cubic(z(c[0]), z(c[1]), z(c[2]), z(c[3]))?.to_vec(),
    })
}

pub fn line_cubic_intersection(f: &RealCubic, l: &Line) -> Result<LineIntersection> {
    let (p, q) = line_basis(l);
    let r = restrict_to_pencil(&f.coeffs, &p.coords, &q.coords);
    let scale = f.max_abs();
    if r.iter().all(|c| c.abs() <= 1e-12 * scale) {
        return Err(Error::LineIsComponent);
    }
    // f(sP + tQ) = r0 s^3 + r1 s^2 t + r2 s t^2 + r3 t^3. Vanishing end
    // coefficients are roots at P (t = 0) or Q (s = 0); the rest is solved
    // for u = s/t.
    let tiny = |c: f64| c.abs() <= 1e-12 * scale;
    let at_p = r.iter().take_while(|c| tiny(**c)).count();
    let at_q = r.iter().rev().take_while(|c| tiny(**c)).count();
    let middle = &r[at_p..4 - at_q];
    let mut roots: Vec<(Complex64, bool)> = Vec::new();
    roots.extend(std::iter::repeat((Complex64::new(0.0, 0.0), true)).take(at_p));
    roots.extend(std::iter::repeat((Complex64::new(0.0, 0.0), false)).take(at_q));
    for u in solve_binary(middle)? {
        roots.push((u, false));
    }
    // cluster
    let mut groups: Vec<(Complex64, bool, u8)> = Vec::new();
    for (u, inf) in roots {
        let near = |g: &Complex64, gi: bool| gi == inf && (*g - u).norm() <= MERGE_TOL * u.norm().max(1.0);
        match groups.iter_mut().find(|(g, gi, _)| near(g, *gi)) {
            Some((g, _, m)) => {
                *g = (*g * (*m as f64) + u) / (*m as f64 + 1.0);
                *m += 1;
            }
            None => groups.push((u, inf, 1)),
        }
    }
    let mut out = LineIntersection { real: Vec::new(), complex_count: 0 };
    for (u, at_infinity, m) in groups {
        if u.im.abs() > REAL_TOL * u.norm().max(1.0) {
            out.complex_count += m;
            continue;
        }
        let (s, t) = if at_infinity { (1.0, 0.0) } else { (u.re, 1.0) };
        let coords: [f64; 3] = std::array::from_fn(|i| s * p.coords[i] + t * q.coords[i]);
        out.real.push(Intersection { point: ProjPoint::new(coords)?, multiplicity: m, tangent: m >= 2 });
    }
    Ok(out)
}
