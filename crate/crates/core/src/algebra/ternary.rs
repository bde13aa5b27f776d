//! Ternary cubic forms over any commutative ring of scalars.
//!
//! Coefficients are stored in the fixed monomial order
//! `x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exponent vectors in storage order.
pub const MONOMIALS: [[u8; 3]; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

/// JSON keys in storage order.
pub const MONOMIAL_KEYS: [&str; 10] = ["x3", "x2y", "x2z", "xy2", "xyz", "xz2", "y3", "y2z", "yz2", "z3"];

pub fn monomial_index(e: [u8; 3]) -> usize {
    MONOMIALS.iter().position(|m| *m == e).expect("not a cubic monomial")
}

pub trait Scalar:
    Clone + PartialEq + Debug + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Scalar for Complex64 {
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
}

/// A linear form `[u, v, w]` meaning `u x + v y + w z`.
pub type Linear<T> = [T; 3];
pub type Cubic<T> = [T; 10];

fn zeros<T: Scalar, const N: usize>() -> [T; N] {
    std::array::from_fn(|_| T::zero())
}

/// Matrix of second partial derivatives; each entry is a linear form.
pub fn hessian<T: Scalar>(c: &Cubic<T>) -> [[Linear<T>; 3]; 3] {
    let mut h: [[Linear<T>; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| zeros()));
    for (m, coeff) in MONOMIALS.iter().zip(c.iter()) {
        if coeff.is_zero() {
            continue;
        }
        for i in 0..3 {
            for j in 0..3 {
                let mut e = *m;
                if e[i] == 0 {
                    continue;
                }
                let mut f = e[i] as i64;
                e[i] -= 1;
                if e[j] == 0 {
                    continue;
                }
                f *= e[j] as i64;
                e[j] -= 1;
                let var = e.iter().position(|&k| k == 1).unwrap();
                h[i][j][var] = h[i][j][var].clone() + coeff.clone() * T::from_i64(f);
            }
        }
    }
    h
}

/// Product of three linear forms.
pub fn product3<T: Scalar>(a: &Linear<T>, b: &Linear<T>, c: &Linear<T>) -> Cubic<T> {
    let mut out: Cubic<T> = zeros();
    for i in 0..3 {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..3 {
            if b[j].is_zero() {
                continue;
            }
            let ab = a[i].clone() * b[j].clone();
            for k in 0..3 {
                if c[k].is_zero() {
                    continue;
                }
                let mut e = [0u8; 3];
                e[i] += 1;
                e[j] += 1;
                e[k] += 1;
                let idx = monomial_index(e);
                out[idx] = out[idx].clone() + ab.clone() * c[k].clone();
            }
        }
    }
    out
}

/// Leibniz expansion of the determinant of a matrix of linear forms.
pub fn det3<T: Scalar>(m: &[[Linear<T>; 3]; 3]) -> Cubic<T> {
    const PERMS: [([usize; 3], bool); 6] = [
        ([0, 1, 2], true),
        ([1, 2, 0], true),
        ([2, 0, 1], true),
        ([0, 2, 1], false),
        ([2, 1, 0], false),
        ([1, 0, 2], false),
    ];
    let mut acc: Cubic<T> = zeros();
    for (p, even) in PERMS {
        let term = product3(&m[0][p[0]], &m[1][p[1]], &m[2][p[2]]);
        for (a, t) in acc.iter_mut().zip(term) {
            *a = if even { a.clone() + t } else { a.clone() - t };
        }
    }
    acc
}

pub fn hessian_determinant<T: Scalar>(c: &Cubic<T>) -> Cubic<T> {
    det3(&hessian(c))
}

fn mono<T: Scalar>(e: [u8; 3], p: &[T; 3]) -> T {
    let mut v = T::one();
    for (k, &n) in e.iter().enumerate() {
        for _ in 0..n {
            v = v * p[k].clone();
        }
    }
    v
}

pub fn eval<T: Scalar>(c: &Cubic<T>, p: &[T; 3]) -> T {
    MONOMIALS
        .iter()
        .zip(c.iter())
        .fold(T::zero(), |acc, (e, k)| acc + k.clone() * mono(*e, p))
}

pub fn gradient<T: Scalar>(c: &Cubic<T>, p: &[T; 3]) -> [T; 3] {
    let mut g: [T; 3] = zeros();
    for (m, coeff) in MONOMIALS.iter().zip(c.iter()) {
        for i in 0..3 {
            if m[i] == 0 {
                continue;
            }
            let mut e = *m;
            e[i] -= 1;
            g[i] = g[i].clone() + coeff.clone() * T::from_i64(m[i] as i64) * mono(e, p);
        }
    }
    g
}

/// Numeric Hesse matrix at a point.
pub fn hessian_at<T: Scalar>(c: &Cubic<T>, p: &[T; 3]) -> [[T; 3]; 3] {
    let h = hessian(c);
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            h[i][j][0].clone() * p[0].clone() + h[i][j][1].clone() * p[1].clone() + h[i][j][2].clone() * p[2].clone()
        })
    })
}

/// Binary cubic `f(s P + t Q)` as coefficients of `s^3, s^2 t, s t^2, t^3`.
pub fn restrict_to_pencil<T: Scalar>(c: &Cubic<T>, p: &[T; 3], q: &[T; 3]) -> [T; 4] {
    // f(sP + tQ) = s^3 f(P) + s^2 t <grad f(P), Q> + s t^2 <grad f(Q), P> + t^3 f(Q)
    let gp = gradient(c, p);
    let gq = gradient(c, q);
    let dot = |a: &[T; 3], b: &[T; 3]| a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone();
    [eval(c, p), dot(&gp, q), dot(&gq, p), eval(c, q)]
}
