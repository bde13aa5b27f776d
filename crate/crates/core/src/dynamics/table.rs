//! Count tables: closed forms side by side with the exact oracles.

use serde::Serialize;

use super::counts::{count_critical_points, count_fixed_points, count_loops, count_zeros};
use super::oracle::{Oracle, OracleKind};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub kind: OracleKind,
    pub n: u32,
    pub closed_form: u128,
    pub oracle: Option<u64>,
    pub agreement: Option<bool>,
}

impl CountReport {
    pub fn new(kind: OracleKind, n: u32, oracle: Option<u64>) -> Result<Self> {
        let closed_form = closed_form(kind, n)?;
        Ok(CountReport { kind, n, closed_form, oracle, agreement: oracle.map(|o| o as u128 == closed_form) })
    }
}

pub fn closed_form(kind: OracleKind, n: u32) -> Result<u128> {
    match kind {
        OracleKind::Fixed => count_fixed_points(n),
        OracleKind::Zero => count_zeros(n),
        OracleKind::Critical => count_critical_points(n),
    }
}

/// One row of the table; oracle fields are empty beyond the oracle range,
/// `lambda` is empty for odd `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub n: u32,
    pub chi: u128,
    pub phi: u128,
    pub rho: u128,
    pub lambda: Option<u128>,
    pub oracle_chi: Option<u64>,
    pub oracle_phi: Option<u64>,
    pub oracle_rho: Option<u64>,
    pub agree: Option<bool>,
}

impl CountRow {
    pub fn reports(&self) -> Vec<CountReport> {
        let mk = |kind, closed_form, oracle: Option<u64>| CountReport {
            kind,
            n: self.n,
            closed_form,
            oracle,
            agreement: oracle.map(|o| o as u128 == closed_form),
        };
        vec![
            mk(OracleKind::Critical, self.chi, self.oracle_chi),
            mk(OracleKind::Fixed, self.phi, self.oracle_phi),
            mk(OracleKind::Zero, self.rho, self.oracle_rho),
        ]
    }
}

/// Rows `n = 1..=max_n`, with oracle columns for `n <= oracle_max`.
pub fn count_table(max_n: u32, oracle_max: u32, oracle: &mut Oracle) -> Result<Vec<CountRow>> {
    if max_n == 0 {
        return Err(Error::InvalidLength(0));
    }
    if oracle_max > oracle.budget() {
        return Err(Error::BudgetExceeded { n: oracle_max, max: oracle.budget() });
    }
    (1..=max_n)
        .map(|n| {
            let (chi, phi, rho) = (count_critical_points(n)?, count_fixed_points(n)?, count_zeros(n)?);
            let lambda = if n % 2 == 0 { Some(count_loops(n)?) } else { None };
            let (oc, of, oz) = if n <= oracle_max {
                (
                    Some(oracle.count(OracleKind::Critical, n)?),
                    Some(oracle.count(OracleKind::Fixed, n)?),
                    Some(oracle.count(OracleKind::Zero, n)?),
                )
            } else {
                (None, None, None)
            };
            let agree = oc.map(|c| c as u128 == chi && of == Some(phi as u64) && oz == Some(rho as u64));
            Ok(CountRow { n, chi, phi, rho, lambda, oracle_chi: oc, oracle_phi: of, oracle_rho: oz, agree })
        })
        .collect()
}

pub fn table_to_csv(rows: &[CountRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidInput(e.to_string()))
}

/// Fixed-width text rendering of the table.
pub fn table_to_text(rows: &[CountRow]) -> String {
    fn opt<T: ToString>(v: &Option<T>) -> String {
        v.as_ref().map_or("-".into(), |x| x.to_string())
    }
    let mut out = format!(
        "{:>3} {:>12} {:>12} {:>12} {:>12} {:>8} {:>8} {:>8} {:>6}\n",
        "n", "chi", "phi", "rho", "lambda", "o_chi", "o_phi", "o_rho", "agree"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>3} {:>12} {:>12} {:>12} {:>12} {:>8} {:>8} {:>8} {:>6}\n",
            r.n,
            r.chi,
            r.phi,
            r.rho,
            opt(&r.lambda),
            opt(&r.oracle_chi),
            opt(&r.oracle_phi),
            opt(&r.oracle_rho),
            opt(&r.agree)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows_and_csv() {
        let rows = count_table(16, 3, &mut Oracle::default()).unwrap();
        assert_eq!(rows.len(), 16);
        assert_eq!(rows[15].lambda, Some(810));
        assert_eq!((rows[4].chi, rows[4].phi, rows[4].rho), (17, 1, 9));
        assert!(rows[..3].iter().all(|r| r.agree == Some(true)));
        assert!(rows[3..].iter().all(|r| r.agree.is_none()));
        let csv = table_to_csv(&rows).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "n,chi,phi,rho,lambda,oracle_chi,oracle_phi,oracle_rho,agree");
        assert_eq!(lines.next().unwrap(), "1,1,1,1,,1,1,1,true");
        assert!(csv.contains("\n16,6560,13119,6561,810,,,,\n"));
        assert!(table_to_text(&rows).lines().count() == 17);
    }

    #[test]
    fn report_agreement_flag() {
        let r = CountReport::new(OracleKind::Fixed, 2, Some(3)).unwrap();
        assert_eq!(r.agreement, Some(true));
        let r = CountReport::new(OracleKind::Zero, 2, Some(2)).unwrap();
        assert_eq!(r.agreement, Some(false));
        let r = CountReport::new(OracleKind::Critical, 9, None).unwrap();
        assert_eq!(r.agreement, None);
        let json = serde_json::to_value(CountReport::new(OracleKind::Fixed, 2, Some(3)).unwrap()).unwrap();
        assert_eq!(json["kind"], "FIXED");
        assert!(matches!(count_table(4, 7, &mut Oracle::default()), Err(Error::BudgetExceeded { .. })));
    }
}
