//! Closed-form counts of critical points, fixed points, zeros, loops and
//! chains of the iterates of `h`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `r` with `3^r` comfortably inside `u128`.
const MAX_EXPONENT: u32 = 78;

fn pow3(r: u32) -> Result<u128> {
    if r > MAX_EXPONENT {
        return Err(Error::InvalidLength(r));
    }
    Ok(3u128.pow(r))
}

/// `chi_{2r+1} = 2 * 3^r - 1`, `chi_{2r} = 3^r - 1`.
pub fn count_critical_points(n: u32) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidLength(0));
    }
    let r = n / 2;
    Ok(if n % 2 == 1 { 2 * pow3(r)? - 1 } else { pow3(r)? - 1 })
}

/// `Phi_{2r+1} = 1`, `Phi_{2r} = 2 * 3^r - 3`.
pub fn count_fixed_points(n: u32) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidLength(0));
    }
    Ok(if n % 2 == 1 { 1 } else { 2 * pow3(n / 2)? - 3 })
}

/// `rho_{2r} = rho_{2r+1} = 3^r`; `rho_0 = 1` counts the zero of the identity.
pub fn count_zeros(n: u32) -> Result<u128> {
    pow3(n / 2)
}

/// The Mobius function by trial division.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut m = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// `Lambda_{2r} = (1 / 2r) sum_{d | r} mu(r / d) (2 * 3^d - 4)`, for even `n = 2r`.
pub fn loop_count_formula(n: u32) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidLength(0));
    }
    if n % 2 == 1 {
        return Err(Error::NotEven(n));
    }
    let r = n / 2;
    let mut sum: i128 = 0;
    for d in (1..=r).filter(|d| r % d == 0) {
        let term = 2 * pow3(d)? as i128 - 4;
        sum += mobius((r / d) as u64) as i128 * term;
    }
    if sum < 0 || sum % n as i128 != 0 {
        return Err(Error::InvalidInput(format!("loop sum {sum} not divisible by {n}")));
    }
    Ok((sum / n as i128) as u128)
}

/// Number of loops of minimal length `n`: the formula for even `n`, one
/// trivial loop for `n = 1`, none for other odd `n`.
pub fn count_loops(n: u32) -> Result<u128> {
    match n {
        0 => Err(Error::InvalidLength(0)),
        1 => Ok(1),
        n if n % 2 == 1 => Ok(0),
        n => loop_count_formula(n),
    }
}

/// `Phi'_{2r} = 2 * 3^r - 4`: fixed points of `h^(2r)` other than `-3`.
pub fn count_nontrivial_fixed_points(n: u32) -> Result<u128> {
    Ok(count_fixed_points(n)? - 1)
}

/// Lower and upper bounds `ceil((3^r - 5) / 2r) + 2` and `floor((3^r - 3) / r)`
/// on `Lambda_{2r}`, for `r >= 2`.
pub fn loop_count_bounds(r: u32) -> Result<(u128, u128)> {
    if r < 2 {
        return Err(Error::InvalidLength(r));
    }
    let p = pow3(r)?;
    let (r, two_r) = (r as u128, 2 * r as u128);
    Ok(((p - 5).div_ceil(two_r) + 2, (p - 3) / r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainTarget {
    /// Chains ending in the fixed point `-3`.
    Minus3,
    /// Chains ending in `∞`.
    Infinity,
}

impl std::str::FromStr for ChainTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "minus3" | "-3" => Ok(ChainTarget::Minus3),
            "infinity" | "inf" | "∞" => Ok(ChainTarget::Infinity),
            other => Err(Error::Parse(format!("unknown chain target {other:?}"))),
        }
    }
}

/// `3^(r - 1)` with `r = ceil(n / 2)`, for either target.
pub fn count_chains(_target: ChainTarget, n: u32) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidLength(0));
    }
    pow3(n.div_ceil(2) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let chi: Vec<u128> = (1..=6).map(|n| count_critical_points(n).unwrap()).collect();
        assert_eq!(chi, [1, 2, 5, 8, 17, 26]);
        let phi: Vec<u128> = (1..=6).map(|n| count_fixed_points(n).unwrap()).collect();
        assert_eq!(phi, [1, 3, 1, 15, 1, 51]);
        let rho: Vec<u128> = (1..=6).map(|n| count_zeros(n).unwrap()).collect();
        assert_eq!(rho, [1, 3, 3, 9, 9, 27]);
        assert_eq!(count_zeros(0).unwrap(), 1);
        let lam: Vec<u128> = (1..=8).map(|r| count_loops(2 * r).unwrap()).collect();
        assert_eq!(lam, [1, 3, 8, 18, 48, 116, 312, 810]);
        assert_eq!(count_loops(1).unwrap(), 1);
        assert_eq!(count_loops(3).unwrap(), 0);
        assert_eq!(loop_count_formula(3), Err(Error::NotEven(3)));
        assert_eq!(count_loops(0), Err(Error::InvalidLength(0)));
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i8> = (1..=12).map(mobius).collect();
        assert_eq!(mu, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn chains() {
        assert_eq!(count_chains(ChainTarget::Minus3, 3).unwrap(), 3);
        assert_eq!(count_chains(ChainTarget::Infinity, 2).unwrap(), 1);
        assert_eq!(count_chains(ChainTarget::Minus3, 6).unwrap(), 9);
        assert_eq!("minus3".parse::<ChainTarget>().unwrap(), ChainTarget::Minus3);
    }

    #[test]
    fn loop_bounds_and_monotonicity() {
        let mut last = 0;
        for r in 2..=8 {
            let (lo, hi) = loop_count_bounds(r).unwrap();
            let l = count_loops(2 * r).unwrap();
            assert!(lo <= l && l <= hi, "r = {r}: {lo} <= {l} <= {hi}");
            assert!(l > last);
            last = l;
        }
    }

    #[test]
    fn loop_chain_partition_identity() {
        // Phi'_{2r} = sum over even d | 2r of d * Lambda_d
        for r in 1..=12u32 {
            let n = 2 * r;
            let total: u128 = (1..=n).filter(|d| n % d == 0 && d % 2 == 0).map(|d| d as u128 * count_loops(d).unwrap()).sum();
            assert_eq!(total, count_nontrivial_fixed_points(n).unwrap());
        }
    }
}
