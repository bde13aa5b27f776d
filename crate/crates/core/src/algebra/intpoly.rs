//! Integer polynomials and the exact real-root machinery built on them.
//!
//! Two independent routes count real roots: Sturm chains built from a
//! primitive pseudo-remainder sequence, and Descartes' rule of signs driven by
//! continued-fraction (Vincent-Akritas-Strzebonski) isolation. They share only
//! the coefficient arithmetic.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modular;
use super::poly::UniPoly;
use super::rational::ExtReal;

/// Integer polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// An isolating interval produced by continued-fraction isolation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isolated {
    /// An exact rational root.
    Exact(BigRational),
    /// Exactly one root lies strictly inside `(lo, hi)`.
    Open(BigRational, BigRational),
}

fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Plus => 1,
        Sign::Minus => -1,
        Sign::NoSign => 0,
    }
}

/// gcd that reduces by division before handing the (now similar-sized) pair
/// to the library routine.
fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    if a < b {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = &a % &b;
        if r.is_zero() {
            return b;
        }
        if r.bits() + 64 < b.bits() {
            a = b;
            b = r;
        } else {
            return b.gcd(&r);
        }
    }
    a
}

/// log2 |x| to about 1e-15 relative accuracy, for nonzero x.
fn log2_abs(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.abs().to_f64().unwrap().log2()
    } else {
        let top = (x.abs() >> (bits - 64) as usize).to_f64().unwrap();
        top.log2() + (bits - 64) as f64
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn to_unipoly(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// gcd of the coefficients (positive), or zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = match self.coeffs.iter().filter(|c| !c.is_zero()).min_by_key(|c| c.bits()) {
            Some(c) => c.abs(),
            None => return BigInt::zero(),
        };
        for c in &self.coeffs {
            if g.is_one() {
                break;
            }
            if c.is_zero() {
                continue;
            }
            let r = c % &g;
            if !r.is_zero() {
                g = gcd_big(&g, &r);
            }
        }
        g
    }

    /// Divides out the content; the sign of the leading coefficient is kept.
    pub fn primitive(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|x| x / &c).collect() }
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + other.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> IntPoly {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Pseudo-remainder `lc(b)^k * self mod b`, with the number `k` of
    /// multiplications by `lc(b)` actually applied.
    pub fn prem(&self, b: &IntPoly) -> (IntPoly, usize) {
        let db = b.degree().expect("pseudo-division by zero polynomial");
        let lc = b.coeffs[db].clone();
        let mut r = self.coeffs.clone();
        let mut k = 0;
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let c = r[dr].clone();
            k += 1;
            for x in r.iter_mut() {
                *x *= &lc;
            }
            for (i, bi) in b.coeffs.iter().enumerate() {
                let t = &c * bi;
                r[dr - db + i] -= t;
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (IntPoly { coeffs: r }, k)
    }

    /// Exact quotient over Q, returned primitive.
    pub fn div_exact_primitive(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let n = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return IntPoly::new(vec![BigInt::one()]),
        };
        let lc = d.coeffs[dd].clone();
        // pseudo-division keeping the quotient
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = r[k + dd].clone();
            for x in q.iter_mut() {
                *x *= &lc;
            }
            for x in r.iter_mut() {
                *x *= &lc;
            }
            q[k] += &c;
            for (i, di) in d.coeffs.iter().enumerate() {
                let t = &c * di;
                r[k + i] -= t;
            }
        }
        debug_assert!(r.iter().all(|x| x.is_zero()), "inexact polynomial division");
        IntPoly::new(q).primitive()
    }

    /// Primitive gcd over Q, computed by a primitive pseudo-remainder sequence.
    /// Coprimality modulo a prime short-circuits the common generic case.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        if modular::certify_coprime(self, other) {
            return IntPoly::from_i64s(&[1]);
        }
        let (mut a, mut b) = if self.coeffs.len() >= other.coeffs.len() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        while !b.is_zero() {
            let (r, _) = a.prem(&b);
            a = b;
            b = r.primitive();
        }
        if a.leading().is_some_and(|l| l.is_negative()) {
            a = a.neg();
        }
        a
    }

    /// Square-free part with the same real and complex roots, primitive.
    pub fn square_free_part(&self) -> IntPoly {
        let d = self.derivative();
        if d.is_zero() {
            return self.primitive();
        }
        let g = self.gcd(&d);
        if g.degree() == Some(0) {
            return self.primitive();
        }
        self.div_exact_primitive(&g)
    }

    /// Sign of `self(x)` computed exactly.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let Some(d) = self.degree() else { return 0 };
        // sum a_k p^k q^(d-k), q > 0
        let p = x.numer();
        let q = x.denom();
        if q.magnitude().count_ones() == 1 {
            // dyadic point: powers of the denominator are shifts
            let k = q.bits() as usize - 1;
            let mut acc = self.coeffs[d].clone();
            for j in (0..d).rev() {
                acc = acc * p + (&self.coeffs[j] << (k * (d - j)));
            }
            return sign_of(&acc);
        }
        let mut acc = self.coeffs[d].clone();
        let mut qpow = BigInt::one();
        for k in (0..d).rev() {
            qpow *= q;
            acc = acc * p + &self.coeffs[k] * &qpow;
        }
        sign_of(&acc)
    }

    /// Sign of the value at a point of the extended real line.
    pub fn sign_at_ext(&self, x: &ExtReal) -> i8 {
        match x {
            ExtReal::Finite(q) => self.sign_at(q),
            ExtReal::PosInf => self.leading().map(sign_of).unwrap_or(0),
            ExtReal::NegInf => {
                let s = self.leading().map(sign_of).unwrap_or(0);
                if self.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        }
    }

    /// Approximate value, adequate for ordering candidates but never used for decisions.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Sign changes in the coefficient sequence (Descartes' bound on positive roots).
    pub fn sign_variations(&self) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for c in &self.coeffs {
            let s = sign_of(c);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    fn reversed(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// In-place `p(x) -> p(x + 2^k)`.
    fn taylor_shift_pow2(&mut self, k: u64) {
        let Some(d) = self.degree() else { return };
        for i in 0..d {
            for j in (i..d).rev() {
                let t = if k == 0 { self.coeffs[j + 1].clone() } else { &self.coeffs[j + 1] << k as usize };
                self.coeffs[j] += t;
            }
        }
    }

    /// Upper bound `2^e` on the positive roots (local-max-quadratic bound),
    /// as the exponent `e`; `None` when there are no positive roots.
    fn positive_root_bound_log2(&self) -> Option<i64> {
        let d = self.degree()?;
        let flip = self.coeffs[d].is_negative();
        let pos = |c: &BigInt| if flip { c.is_negative() } else { c.is_positive() };
        let neg = |c: &BigInt| if flip { c.is_positive() } else { c.is_negative() };
        if !self.coeffs.iter().any(neg) {
            return None;
        }
        let logs: Vec<f64> = self
            .coeffs
            .iter()
            .map(|c| if c.is_zero() { f64::NEG_INFINITY } else { log2_abs(c) })
            .collect();
        let mut used = vec![1u32; d + 1];
        let mut best = f64::NEG_INFINITY;
        for i in (0..d).rev() {
            if !neg(&self.coeffs[i]) {
                continue;
            }
            let mut m = f64::INFINITY;
            for j in i + 1..=d {
                if pos(&self.coeffs[j]) {
                    let v = (used[j] as f64 + logs[i] - logs[j]) / (j - i) as f64;
                    m = m.min(v);
                    used[j] += 1;
                }
            }
            best = best.max(m);
        }
        // guard against rounding in the logarithms
        Some((best + 1e-9).ceil() as i64)
    }

    /// Cauchy-type bound `2^e` on the absolute value of every root.
    pub fn root_bound_log2(&self) -> i64 {
        let Some(d) = self.degree() else { return 0 };
        let ld = log2_abs(&self.coeffs[d]);
        let m = self.coeffs[..d]
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| log2_abs(c) - ld)
            .fold(f64::NEG_INFINITY, f64::max);
        if m == f64::NEG_INFINITY {
            return 0;
        }
        // |root| < 1 + max |a_i/a_d| <= 2^(max(m, 0) + 1)
        (m.max(0.0) + 1.0 + 1e-9).ceil() as i64
    }

    /// Isolates the positive real roots of a square-free polynomial by the
    /// continued-fraction method. Intervals are open unless the root is exact.
    pub fn isolate_positive_roots(&self) -> Vec<Isolated> {
        let mut out = Vec::new();
        let Some(_) = self.degree() else { return out };
        let upper = ExtReal::Finite(pow2_rational(self.root_bound_log2()));
        // Mobius map x -> (a x + b) / (c x + d)
        struct Node {
            p: IntPoly,
            a: BigInt,
            b: BigInt,
            c: BigInt,
            d: BigInt,
        }
        let one = BigInt::one;
        let zero = BigInt::zero;
        let mut stack = vec![Node { p: self.clone(), a: one(), b: zero(), c: zero(), d: one() }];
        let image = |num: &BigInt, den: &BigInt| -> ExtReal {
            if den.is_zero() {
                ExtReal::PosInf
            } else {
                ExtReal::Finite(BigRational::new(num.clone(), den.clone()))
            }
        };
        while let Some(Node { mut p, a, mut b, c, mut d }) = stack.pop() {
            if p.coeffs.first().is_some_and(|c0| c0.is_zero()) {
                out.push(Isolated::Exact(BigRational::new(b.clone(), d.clone())));
                p.coeffs.remove(0);
            }
            let v = p.sign_variations();
            if v == 0 {
                continue;
            }
            if v == 1 {
                let e0 = image(&b, &d);
                let e1 = image(&a, &c);
                let (lo, hi) = if e0 < e1 { (e0, e1) } else { (e1, e0) };
                let hi = if hi == ExtReal::PosInf { upper.clone() } else { hi };
                if let (ExtReal::Finite(lo), ExtReal::Finite(hi)) = (lo, hi) {
                    out.push(Isolated::Open(lo, hi));
                }
                continue;
            }
            // shift by a lower bound on the positive roots
            if let Some(ub) = p.reversed().positive_root_bound_log2() {
                let lb = -ub;
                if lb >= 0 {
                    p.taylor_shift_pow2(lb as u64);
                    let s = BigInt::one() << lb as usize;
                    b += &a * &s;
                    d += &c * &s;
                    if p.coeffs.first().is_some_and(|c0| c0.is_zero()) {
                        out.push(Isolated::Exact(BigRational::new(b.clone(), d.clone())));
                        p.coeffs.remove(0);
                    }
                    if p.sign_variations() == 0 {
                        continue;
                    }
                }
            }
            // (1, inf): x -> x + 1
            let mut right = p.clone();
            right.taylor_shift_pow2(0);
            // (0, 1): x -> 1 / (1 + x)
            let mut left = p.reversed();
            left.taylor_shift_pow2(0);
            if left.coeffs.first().is_some_and(|c0| c0.is_zero()) {
                // the root at x = 1 is reported by the right branch
                left.coeffs.remove(0);
            }
            stack.push(Node { p: left, a: b.clone(), b: &a + &b, c: d.clone(), d: &c + &d });
            stack.push(Node { p: right, b: &a + &b, d: &c + &d, a, c });
        }
        out
    }

    /// Isolates all real roots of a square-free polynomial, sorted.
    pub fn isolate_real_roots(&self) -> Vec<Isolated> {
        let mut out = Vec::new();
        let mut p = self.clone();
        if p.coeffs.first().is_some_and(|c| c.is_zero()) {
            out.push(Isolated::Exact(BigRational::zero()));
            p = IntPoly::new(p.coeffs[1..].to_vec());
        }
        out.extend(p.isolate_positive_roots());
        for iso in p.reflect().isolate_positive_roots() {
            out.push(match iso {
                Isolated::Exact(q) => Isolated::Exact(-q),
                Isolated::Open(lo, hi) => Isolated::Open(-hi, -lo),
            });
        }
        out.sort_by(|x, y| iso_lower(x).cmp(iso_lower(y)));
        out
    }

    /// Number of distinct real roots via continued-fraction isolation.
    pub fn count_real_roots_descartes(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.square_free_part().isolate_real_roots().len()
    }

    /// The Sturm sequence `p, p', -rem(..)...`, each entry a positive multiple
    /// of the classical signed remainder.
    pub fn sturm_chain(&self) -> Vec<IntPoly> {
        let mut chain = vec![self.primitive(), self.derivative().primitive()];
        loop {
            let n = chain.len();
            let b = &chain[n - 1];
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            let (r, k) = chain[n - 2].prem(b);
            if r.is_zero() {
                break;
            }
            // prem = lc(b)^k * rem, and the next Sturm entry is -rem
            let lc_neg = b.leading().unwrap().is_negative() && k % 2 == 1;
            let r = r.primitive();
            chain.push(if lc_neg { r } else { r.neg() });
        }
        chain
    }

    /// Distinct real roots in `(lo, hi]` by Sturm's theorem (the polynomial is
    /// made square-free first).
    pub fn sturm_count(&self, lo: &ExtReal, hi: &ExtReal) -> usize {
        let chain = self.square_free_part().sturm_chain();
        let v = |x: &ExtReal| -> usize {
            let mut last = 0i8;
            let mut count = 0;
            for s in chain.iter().map(|q| q.sign_at_ext(x)) {
                if s != 0 {
                    if last != 0 && s != last {
                        count += 1;
                    }
                    last = s;
                }
            }
            count
        };
        v(lo).saturating_sub(v(hi))
    }
}

fn iso_lower(x: &Isolated) -> &BigRational {
    match x {
        Isolated::Exact(q) => q,
        Isolated::Open(lo, _) => lo,
    }
}

pub(crate) fn pow2_rational(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn prem_counts_multiplications() {
        let a = ip(&[1, 0, 0, 2]); // 2x^3 + 1
        let b = ip(&[0, 3]); // 3x
        let (r, k) = a.prem(&b);
        // one reduction step: 3 * (2x^3 + 1) - 2x^2 * 3x
        assert_eq!(k, 1);
        assert_eq!(r, ip(&[3]));
        let (r, k) = ip(&[1, 1, 1]).prem(&ip(&[1, -2]));
        assert_eq!(k, 2);
        assert_eq!(r, ip(&[7]));
    }

    #[test]
    fn sturm_counts_simple_cases() {
        let p = ip(&[-1, 0, 1]);
        assert_eq!(p.sturm_count(&ExtReal::NegInf, &ExtReal::PosInf), 2);
        let q = ip(&[1, 0, 1]);
        assert_eq!(q.sturm_count(&ExtReal::NegInf, &ExtReal::PosInf), 0);
        // half-open (lo, hi]: the root at 1 counts, the root at -1 does not
        let one = ExtReal::Finite(BigRational::one());
        let m1 = ExtReal::Finite(-BigRational::one());
        assert_eq!(p.sturm_count(&m1, &one), 1);
    }

    #[test]
    fn continued_fractions_isolate_clustered_roots() {
        // (x - 1/1000)(x - 2/1000)(x - 1000)(x + 7)
        let p = ip(&[-1, 1000])
            .mul(&ip(&[-2, 1000]))
            .mul(&ip(&[-1000, 1]))
            .mul(&ip(&[7, 1]));
        let roots = p.isolate_real_roots();
        assert_eq!(roots.len(), 4);
        let expected = [(-7, 1), (1, 1000), (2, 1000), (1000, 1)];
        for (iso, (n, d)) in roots.iter().zip(expected) {
            let r = BigRational::new(n.into(), d.into());
            match iso {
                Isolated::Exact(q) => assert_eq!(q, &r),
                Isolated::Open(lo, hi) => assert!(lo < &r && &r < hi),
            }
        }
    }

    #[test]
    fn square_free_part_drops_repeated_factors() {
        let p = ip(&[-1, 1]).mul(&ip(&[-1, 1])).mul(&ip(&[2, 1]));
        assert_eq!(p.square_free_part(), ip(&[-2, 1, 1]));
    }

    #[test]
    fn content_and_gcd() {
        let p = ip(&[6, 12, 18]);
        assert_eq!(p.content(), BigInt::from(6));
        let g = ip(&[-1, 0, 1]).gcd(&ip(&[1, 1]));
        assert_eq!(g, ip(&[1, 1]));
    }
}
