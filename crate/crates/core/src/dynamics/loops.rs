//! Periodic orbits (loops) of the parameter map.

use num_rational::BigRational;
use serde::Serialize;

use super::counts::count_loops;
use super::hmap::{h_f64, paper_preimages};
use super::oracle::{Oracle, N_MAX};
use super::param::step_f64;
use crate::algebra::intpoly::Isolated;
use crate::algebra::rational::rational_to_f64;
use crate::algebra::roots::refine;
use crate::algebra::{ExtReal, IntPoly};
use crate::error::{Error, Result};

/// Longest loop length handled by the floating-point search.
pub const FLOAT_NMAX: u32 = 10;
/// Relative closing tolerance for consecutive loop members.
pub const CLOSE_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopMode {
    Exact,
    Float,
}

/// A loop `c_0 -> c_1 -> ... -> c_{n-1} -> c_0`, starting at its smallest member.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cycle {
    pub values: Vec<f64>,
}

impl Cycle {
    /// Largest relative gap `|step(c_i) - c_{i+1}|` around the loop.
    pub fn closing_error(&self) -> f64 {
        let n = self.values.len();
        (0..n)
            .map(|i| {
                let next = self.values[(i + 1) % n];
                (step_f64(self.values[i]) - next).abs() / next.abs().max(1.0)
            })
            .fold(0.0, f64::max)
    }
}

fn divisors_below(n: u32) -> Vec<u32> {
    (1..n).filter(|d| n % d == 0).collect()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Groups points of minimal period `n` into loops by following `step` to the
/// nearest remaining point.
fn group_cycles(mut points: Vec<f64>, n: u32) -> Result<Vec<Cycle>> {
    points.sort_by(|a, b| a.total_cmp(b));
    let mut used = vec![false; points.len()];
    let mut cycles = Vec::new();
    for start in 0..points.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut values = vec![points[start]];
        let mut cur = points[start];
        for _ in 1..n {
            let target = step_f64(cur);
            let next = (0..points.len())
                .filter(|&j| !used[j])
                .min_by(|&i, &j| (points[i] - target).abs().total_cmp(&(points[j] - target).abs()))
                .ok_or_else(|| Error::InvalidInput("loop grouping ran out of points".into()))?;
            if !rel_close(points[next], target, 1e-6) {
                return Err(Error::InvalidInput(format!("no periodic point near step({cur}) = {target}")));
            }
            used[next] = true;
            values.push(points[next]);
            cur = points[next];
        }
        cycles.push(Cycle { values });
    }
    cycles.sort_by(|a, b| a.values[0].total_cmp(&b.values[0]));
    Ok(cycles)
}

/// Loops of minimal length `n`: exact isolation for `n <= N_MAX`, the
/// floating-point branch search up to `FLOAT_NMAX` otherwise.
pub fn enumerate_loops(n: u32) -> Result<Vec<Cycle>> {
    if n <= N_MAX {
        enumerate_loops_with(n, LoopMode::Exact, &mut Oracle::default())
    } else {
        enumerate_loops_with(n, LoopMode::Float, &mut Oracle::default())
    }
}

pub fn enumerate_loops_with(n: u32, mode: LoopMode, oracle: &mut Oracle) -> Result<Vec<Cycle>> {
    if n == 0 {
        return Err(Error::InvalidLength(0));
    }
    let points = match mode {
        LoopMode::Exact => exact_periodic_points(n, oracle)?,
        LoopMode::Float => {
            if n > FLOAT_NMAX {
                return Err(Error::BudgetExceeded { n, max: FLOAT_NMAX });
            }
            float_periodic_points(n)?
        }
    };
    let cycles = group_cycles(points, n)?;
    let expected = count_loops(n)? as usize;
    if cycles.len() != expected {
        return Err(Error::InvalidInput(format!("found {} loops of length {n}, expected {expected}", cycles.len())));
    }
    Ok(cycles)
}

/// Points of minimal period `n`, from the exact fixed-point numerator of `h^n`.
fn exact_periodic_points(n: u32, oracle: &mut Oracle) -> Result<Vec<f64>> {
    let p = oracle.fixed_polynomial(n)?.to_primitive_int().square_free_part();
    let lower: Vec<IntPoly> = divisors_below(n)
        .into_iter()
        .map(|d| Ok(oracle.fixed_polynomial(d)?.to_primitive_int().square_free_part()))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for iso in p.isolate_real_roots() {
        match iso {
            Isolated::Exact(q) => {
                if lower.iter().all(|l| l.sign_at(&q) != 0) {
                    out.push(rational_to_f64(&q));
                }
            }
            Isolated::Open(lo, hi) => {
                let (lo, hi) = refine(&p, lo, hi, 1e-6);
                if lo == hi {
                    if lower.iter().all(|l| l.sign_at(&lo) != 0) {
                        out.push(rational_to_f64(&lo));
                    }
                    continue;
                }
                // a root of a proper-divisor polynomial inside the isolating
                // interval is the root of p there
                let sub = lower.iter().any(|l| {
                    let inside = l.sturm_count(&ExtReal::Finite(lo.clone()), &ExtReal::Finite(hi.clone()));
                    inside > (l.sign_at(&hi) == 0) as usize
                });
                if sub {
                    continue;
                }
                let mag = rational_to_f64(&lo).abs().max(rational_to_f64(&hi).abs()).max(1.0);
                let (lo, hi) = refine(&p, lo, hi, 1e-15 * mag);
                out.push(rational_to_f64(&((lo + hi) / BigRational::from_integer(2.into()))));
            }
        }
    }
    Ok(out)
}

fn h_iter(x: f64, n: u32) -> f64 {
    (0..n).fold(x, |y, _| h_f64(108.0, -3.0, y))
}

/// Points `x` with `h^k(x) = y` for some `0 <= k < depth`.
fn backward_tree(y: f64, depth: u32) -> Vec<f64> {
    let mut out = vec![y];
    let mut level = vec![y];
    for _ in 1..depth {
        level = level.iter().flat_map(|&v| paper_preimages(v)).collect();
        out.extend(&level);
    }
    out
}

/// Fixed points of `h^n` by bracketing on the monotone branches between
/// consecutive critical points and poles of `h^n`, then keeping those of
/// minimal period `n`.
fn float_periodic_points(n: u32) -> Result<Vec<f64>> {
    let mut breaks: Vec<f64> = backward_tree(6.0, n);
    breaks.extend(backward_tree(0.0, n));
    breaks.sort_by(|a, b| a.total_cmp(b));
    breaks.dedup_by(|a, b| rel_close(*a, *b, 1e-14));
    let g = |x: f64| h_iter(x, n) - x;
    let far = breaks.iter().fold(1.0f64, |m, b| m.max(b.abs())) * 1e6;
    let mut edges = vec![-far];
    edges.extend(&breaks);
    edges.push(far);

    let mut roots = Vec::new();
    const PIECES: usize = 32;
    for w in edges.windows(2) {
        let (l, r) = (w[0], w[1]);
        let inset = 1e-13 * l.abs().max(r.abs()).max(1.0);
        let (l, r) = (l + inset, r - inset);
        if l >= r {
            continue;
        }
        let samples: Vec<f64> = (0..=PIECES).map(|i| l + (r - l) * i as f64 / PIECES as f64).collect();
        for s in samples.windows(2) {
            let (mut a, mut b) = (s[0], s[1]);
            let (mut ga, gb) = (g(a), g(b));
            if !(ga.is_finite() && gb.is_finite()) || ga.signum() == gb.signum() {
                continue;
            }
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                let gm = g(m);
                if gm.signum() == ga.signum() {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                }
            }
            roots.push(0.5 * (a + b));
        }
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    roots.dedup_by(|a, b| rel_close(*a, *b, 1e-9));
    // minimal period: no proper divisor d with h^d(x) = x
    Ok(roots
        .into_iter()
        .filter(|&x| divisors_below(n).into_iter().all(|d| !rel_close(h_iter(x, d), x, 1e-6)))
        .collect())
}
