//! Chains: orbits that end in `-3` or `∞`, built by backward iteration.

use serde::Serialize;

use super::counts::{count_chains, ChainTarget};
use super::hmap::{h_f64, paper_preimages};
use super::oracle::N_MAX;
use crate::error::{Error, Result};

/// Tolerance for "the orbit has reached the target".
pub const REACH_TOL: f64 = 1e-9;

fn h(x: f64) -> f64 {
    h_f64(108.0, -3.0, x)
}

/// Number of forward steps after which `x` first reaches `target`, if within
/// `max_steps`.
pub fn steps_to_target(target: ChainTarget, x: f64, max_steps: u32) -> Option<u32> {
    let mut y = x;
    for k in 0..=max_steps {
        match target {
            ChainTarget::Minus3 if (y + 3.0).abs() <= REACH_TOL => return Some(k),
            // reaching 0 means the next step is the pole
            ChainTarget::Infinity if y.is_infinite() => return Some(k),
            ChainTarget::Infinity if y.abs() <= REACH_TOL => return Some(k + 1),
            _ => {}
        }
        y = h(y);
    }
    None
}

/// Start values of chains of length exactly `n`, sorted. Chains to `-3` are
/// the backward tree of `6` (since `6 -> -3`), chains to `∞` that of `0`.
pub fn enumerate_chains(target: ChainTarget, n: u32) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidLength(0));
    }
    if n > N_MAX {
        return Err(Error::BudgetExceeded { n, max: N_MAX });
    }
    let root = match target {
        ChainTarget::Minus3 => 6.0,
        ChainTarget::Infinity => 0.0,
    };
    let mut level = vec![root];
    for _ in 1..n {
        level = level.iter().flat_map(|&y| paper_preimages(y)).collect();
    }
    level.retain(|&x| steps_to_target(target, x, n) == Some(n));
    level.sort_by(|a, b| a.total_cmp(b));
    let expected = count_chains(target, n)? as usize;
    if level.len() != expected {
        return Err(Error::InvalidInput(format!("found {} chains of length {n}, expected {expected}", level.len())));
    }
    Ok(level)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthWitness {
    pub c: f64,
    pub n: u32,
    /// Backward path from `6` to `c`.
    pub path: Vec<f64>,
    /// `|h^n(c) + 3|`.
    pub residual: f64,
}

/// A chain start `c` with `|c| > bound` reaching `-3`, built backward from `6`
/// always taking the preimage of largest absolute value.
pub fn backward_growth_witness(bound: f64) -> Result<GrowthWitness> {
    if !(bound > 0.0) || !bound.is_finite() {
        return Err(Error::InvalidInput(format!("bound must be positive, got {bound}")));
    }
    let mut c = 6.0f64;
    let mut n = 1u32;
    let mut path = vec![c];
    while c.abs() <= bound {
        c = paper_preimages(c).into_iter().max_by(|a, b| a.abs().total_cmp(&b.abs())).unwrap();
        n += 1;
        path.push(c);
    }
    let end = (0..n).fold(c, |y, _| h(y));
    Ok(GrowthWitness { c, n, path, residual: (end + 3.0).abs() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_chains() {
        assert_eq!(enumerate_chains(ChainTarget::Minus3, 1).unwrap(), vec![6.0]);
        assert_eq!(enumerate_chains(ChainTarget::Infinity, 1).unwrap(), vec![0.0]);
        let three = enumerate_chains(ChainTarget::Minus3, 3).unwrap();
        assert_eq!(three.len(), 3);
        for x in three {
            assert_eq!(steps_to_target(ChainTarget::Minus3, x, 5), Some(3));
        }
        assert!(matches!(enumerate_chains(ChainTarget::Minus3, 7), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn chain_counts_up_to_budget() {
        for t in [ChainTarget::Minus3, ChainTarget::Infinity] {
            for n in 1..=N_MAX {
                assert_eq!(enumerate_chains(t, n).unwrap().len() as u128, count_chains(t, n).unwrap());
            }
        }
    }

    #[test]
    fn growth_witness() {
        let w = backward_growth_witness(100.0).unwrap();
        assert!(w.c.abs() > 100.0);
        assert!(w.residual < 1e-9);
        for pair in w.path.windows(2) {
            let (c, cbar) = (pair[0], pair[1]);
            if c >= 6.0 {
                assert!(cbar < -3.0 * c);
            } else if c <= -6.0 {
                assert!(cbar > -3.0 * c - 1.0);
            }
        }
        assert_eq!(steps_to_target(ChainTarget::Minus3, w.c, w.n + 2), Some(w.n));
    }
}
