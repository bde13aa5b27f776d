//! Polynomial arithmetic over small prime fields, used to certify coprimality.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::intpoly::IntPoly;

const PRIMES: [u64; 4] = [(1 << 61) - 1, 4_294_967_291, 1_000_000_007, 998_244_353];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((c % &m) + &m) % &m;
    r.to_u64().unwrap()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of `gcd(a mod p, b mod p)`.
fn gcd_degree_mod(a: &[u64], b: &[u64], p: u64) -> usize {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = powmod(*b.last().unwrap(), p - 2, p);
        let db = b.len() - 1;
        while a.len() > db {
            let da = a.len() - 1;
            let f = mulmod(a[da], inv, p);
            for (i, &bi) in b.iter().enumerate() {
                let t = mulmod(f, bi, p);
                let x = &mut a[da - db + i];
                *x = if *x >= t { *x - t } else { *x + p - t };
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// True when `a` and `b` are certainly coprime over Q. A prime that divides
/// neither leading coefficient keeps the degree of every gcd image at least
/// as large as the true gcd degree, so a unit image proves coprimality.
/// `false` means "not certified", not "not coprime".
pub fn certify_coprime(a: &IntPoly, b: &IntPoly) -> bool {
    let (Some(la), Some(lb)) = (a.leading(), b.leading()) else {
        return false;
    };
    for &p in &PRIMES {
        let (ra, rb) = (reduce(la, p), reduce(lb, p));
        if ra == 0 || rb == 0 {
            continue;
        }
        let am: Vec<u64> = a.coeffs().iter().map(|c| reduce(c, p)).collect();
        let bm: Vec<u64> = b.coeffs().iter().map(|c| reduce(c, p)).collect();
        return gcd_degree_mod(&am, &bm, p) == 0;
    }
    false
}

/// True when `a` is certainly square-free over Q.
pub fn certify_square_free(a: &IntPoly) -> bool {
    let d = a.derivative();
    if d.is_zero() {
        return a.degree() == Some(0);
    }
    certify_coprime(a, &d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_coprime_and_common_factor() {
        let a = IntPoly::from_i64s(&[-1, 0, 1]);
        let b = IntPoly::from_i64s(&[2, 1]);
        assert!(certify_coprime(&a, &b));
        let c = IntPoly::from_i64s(&[1, 1]);
        assert!(!certify_coprime(&a, &c));
    }

    #[test]
    fn square_free_certificate() {
        assert!(certify_square_free(&IntPoly::from_i64s(&[-2, 0, 1])));
        assert!(!certify_square_free(&IntPoly::from_i64s(&[1, 2, 1])));
    }
}
