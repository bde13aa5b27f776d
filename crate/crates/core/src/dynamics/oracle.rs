//! Exact root counts for the iterates of `h`, independent of the closed forms.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::{isolate_real_roots, sturm_count_real_roots, ExtReal, IntPoly, RationalMap1, RealRoot, UniPoly};
use crate::error::{Error, Result};

/// Largest iterate handled exactly by default; `h^6` has degree 729.
pub const N_MAX: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum OracleKind {
    Fixed,
    Zero,
    Critical,
}

/// The iterates `h^0, h^1, ...` of the map with `a = 108, b = -3`, computed
/// on demand and kept.
#[derive(Clone, Debug)]
pub struct Oracle {
    budget: u32,
    iterates: Vec<RationalMap1>,
}

fn count_all(p: &UniPoly) -> Result<u64> {
    Ok(sturm_count_real_roots(p, &ExtReal::NegInf, &ExtReal::PosInf)? as u64)
}

impl Default for Oracle {
    fn default() -> Self {
        Self::new(N_MAX)
    }
}

impl Oracle {
    pub fn new(budget: u32) -> Self {
        Oracle { budget, iterates: vec![RationalMap1::identity()] }
    }

    pub fn budget(&self) -> u32 {
        self.budget
    }

    fn check(&self, n: u32) -> Result<()> {
        if n > self.budget {
            return Err(Error::BudgetExceeded { n, max: self.budget });
        }
        Ok(())
    }

    /// `h^n`, exact and reduced.
    pub fn iterate(&mut self, n: u32) -> Result<&RationalMap1> {
        self.check(n)?;
        let h = RationalMap1::paper_h();
        while self.iterates.len() <= n as usize {
            let next = h.compose(self.iterates.last().unwrap());
            self.iterates.push(next);
        }
        Ok(&self.iterates[n as usize])
    }

    /// Numerator of `h^n(x) - x`.
    pub fn fixed_polynomial(&mut self, n: u32) -> Result<UniPoly> {
        Ok(self.iterate(n)?.fixed_point_numerator())
    }

    /// Numerator of `h^n`.
    pub fn zero_polynomial(&mut self, n: u32) -> Result<UniPoly> {
        Ok(self.iterate(n)?.num())
    }

    /// Numerator of `h^k(x) - 6`; its roots are where `h^(k+1)` reaches `-3`
    /// through the critical point.
    pub fn critical_preimage_polynomial(&mut self, k: u32) -> Result<UniPoly> {
        let m = self.iterate(k)?;
        Ok(m.int_num().sub(&m.int_den().scale(&6.into())).to_unipoly())
    }

    pub fn count(&mut self, kind: OracleKind, n: u32) -> Result<u64> {
        if n == 0 {
            return Err(Error::InvalidLength(0));
        }
        self.check(n)?;
        match kind {
            OracleKind::Fixed => count_all(&self.fixed_polynomial(n)?),
            OracleKind::Zero => count_all(&self.zero_polynomial(n)?),
            // The critical points of h^n are the x with h^k(x) = 6 for some
            // k < n; the sets for different k are disjoint since h(6) = -3 is fixed.
            OracleKind::Critical => (0..n).map(|k| count_all(&self.critical_preimage_polynomial(k)?)).sum(),
        }
    }

    /// Critical points counted from the derivative numerator of `h^n`,
    /// discarding the poles (every pole of an iterate is a root of even
    /// multiplicity of the denominator, hence of the derivative numerator).
    pub fn count_critical_by_derivative(&mut self, n: u32) -> Result<u64> {
        let m = self.iterate(n)?.clone();
        let d = m.derivative_numerator();
        let den = m.den();
        let both = count_all(&d)?;
        let poles = if den.degree() == Some(0) { 0 } else { count_all(&den)? };
        Ok(both - poles)
    }

    /// Isolated real roots of the numerator of `h^n(x) - x`.
    pub fn fixed_points(&mut self, n: u32, tol: f64) -> Result<Vec<RealRoot>> {
        isolate_real_roots(&self.fixed_polynomial(n)?, tol)
    }

    /// All critical points of `h^n`, sorted.
    pub fn critical_points(&mut self, n: u32, tol: f64) -> Result<Vec<RealRoot>> {
        self.check(n)?;
        let mut out = Vec::new();
        for k in 0..n {
            out.extend(isolate_real_roots(&self.critical_preimage_polynomial(k)?, tol)?);
        }
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        Ok(out)
    }

    /// Real solutions of `h^n(x) = -3`.
    pub fn fixed_value_preimages(&mut self, n: u32, tol: f64) -> Result<Vec<RealRoot>> {
        let m = self.iterate(n)?;
        let p: IntPoly = m.int_num().add(&m.int_den().scale(&3.into()));
        isolate_real_roots(&p.to_unipoly(), tol)
    }
}

/// One-shot count with the default budget.
pub fn oracle_count(kind: OracleKind, n: u32) -> Result<u64> {
    Oracle::default().count(kind, n)
}

/// Exact value of `h^n` at a rational point, `None` at a pole.
pub fn exact_iterate_value(oracle: &mut Oracle, n: u32, x: &BigRational) -> Result<Option<BigRational>> {
    Ok(oracle.iterate(n)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::counts::{count_critical_points, count_fixed_points, count_zeros};

    #[test]
    fn spec_examples() {
        assert_eq!(oracle_count(OracleKind::Fixed, 2).unwrap(), 3);
        assert_eq!(oracle_count(OracleKind::Zero, 3).unwrap(), 3);
        assert_eq!(oracle_count(OracleKind::Critical, 3).unwrap(), 5);
        assert_eq!(oracle_count(OracleKind::Fixed, 7), Err(Error::BudgetExceeded { n: 7, max: 6 }));
    }

    #[test]
    fn agrees_with_closed_forms_small_n() {
        let mut o = Oracle::default();
        for n in 1..=4 {
            assert_eq!(o.count(OracleKind::Fixed, n).unwrap() as u128, count_fixed_points(n).unwrap());
            assert_eq!(o.count(OracleKind::Zero, n).unwrap() as u128, count_zeros(n).unwrap());
            assert_eq!(o.count(OracleKind::Critical, n).unwrap() as u128, count_critical_points(n).unwrap());
        }
    }

    #[test]
    fn critical_routes_agree() {
        let mut o = Oracle::default();
        for n in 1..=4 {
            assert_eq!(o.count_critical_by_derivative(n).unwrap(), o.count(OracleKind::Critical, n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn iterate_degrees() {
        let mut o = Oracle::default();
        for n in 0..=4u32 {
            assert_eq!(o.iterate(n).unwrap().num().degree(), Some(3usize.pow(n)));
        }
    }
}
