//! Cardano's formula over the complex numbers.

use num_complex::Complex64;

use crate::error::{Error, Result};

fn eval(c: &[Complex64; 4], t: Complex64) -> Complex64 {
    ((c[0] * t + c[1]) * t + c[2]) * t + c[3]
}

fn eval_d(c: &[Complex64; 4], t: Complex64) -> Complex64 {
    (c[0] * 3.0 * t + c[1] * 2.0) * t + c[2]
}

/// The three roots, with multiplicity, of `c3 t^3 + c2 t^2 + c1 t + c0`.
///
/// Closed-form Cardano roots are polished by a few Newton steps, each kept
/// only if it lowers the residual.
pub fn solve_cubic(c3: Complex64, c2: Complex64, c1: Complex64, c0: Complex64) -> Result<[Complex64; 3]> {
    if c3.norm() == 0.0 {
        return Err(Error::DegenerateLeadingCoefficient);
    }
    if ![c3, c2, c1, c0].iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput("non-finite cubic coefficient".into()));
    }
    let b = c2 / c3;
    let c = c1 / c3;
    let d = c0 / c3;

    let d0 = b * b - c * 3.0;
    let d1 = b * b * b * 2.0 - b * c * 9.0 + d * 27.0;
    let disc = (d1 * d1 - d0 * d0 * d0 * 4.0).sqrt();
    let plus = (d1 + disc) * 0.5;
    let minus = (d1 - disc) * 0.5;
    let big = if plus.norm() >= minus.norm() { plus } else { minus };

    let mut roots = if big.norm() == 0.0 {
        [-b / 3.0; 3]
    } else {
        let cc = big.powf(1.0 / 3.0);
        let xi = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
        let mut r = [Complex64::new(0.0, 0.0); 3];
        let mut w = cc;
        for root in r.iter_mut() {
            *root = -(b + w + d0 / w) / 3.0;
            w *= xi;
        }
        r
    };

    let coeffs = [Complex64::new(1.0, 0.0), b, c, d];
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let f = eval(&coeffs, *r);
            let fd = eval_d(&coeffs, *r);
            if fd.norm() == 0.0 {
                break;
            }
            let next = *r - f / fd;
            if eval(&coeffs, next).norm() < f.norm() {
                *r = next;
            } else {
                break;
            }
        }
    }
    Ok(roots)
}

/// Real roots of a real cubic, those with |imaginary part| <= `imag_tol`,
/// sorted ascending.
pub fn real_roots_of_cubic(c3: f64, c2: f64, c1: f64, c0: f64, imag_tol: f64) -> Result<Vec<f64>> {
    let z = |x: f64| Complex64::new(x, 0.0);
    let scale = [c2, c1, c0].iter().fold(c3.abs(), |m, x| m.max(x.abs())).max(1.0);
    let roots = solve_cubic(z(c3), z(c2), z(c1), z(c0))?;
    let mut out: Vec<f64> = roots
        .iter()
        .filter(|r| r.im.abs() <= imag_tol * r.norm().max(1.0) || r.im.abs() <= imag_tol * scale.cbrt())
        .map(|r| r.re)
        .collect();
    out.sort_by(|a, b| a.total_cmp(b));
    Ok(out)
}
