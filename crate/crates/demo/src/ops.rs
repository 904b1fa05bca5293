//! The demo's operations as plain string-to-JSON functions.

use serde::Serialize;

use qrt_core::gint::GaussianInt;
use qrt_core::qforms::{represent, two_squares, FormVariant, YNorm};
use qrt_core::qsymbol::{quartic_jacobi, quartic_oracle};
use qrt_core::verifier::{scan, Param, ScanOptions, Semantics, StatementId};
use qrt_core::Error;

const SCAN_PMAX_CAP: u64 = 50_000;

fn err(e: impl ToString) -> String {
    e.to_string()
}

#[derive(Serialize)]
struct SymbolOut {
    numerator: String,
    denominator: String,
    symbol: String,
    exponent: u8,
    oracle_agrees: Option<bool>,
}

pub fn quartic_symbol_json(num: &str, den: &str) -> Result<String, String> {
    let alpha: GaussianInt = num.parse().map_err(err)?;
    let mu: GaussianInt = den.parse().map_err(err)?;
    let value = quartic_jacobi(&alpha, &mu).map_err(err)?;
    let oracle_agrees = match quartic_oracle(&alpha, &mu) {
        Ok(v) => Some(v == value),
        Err(Error::NormTooLarge(_)) => None,
        Err(e) => return Err(err(e)),
    };
    let out = SymbolOut {
        numerator: alpha.to_string(),
        denominator: mu.to_string(),
        symbol: value.to_string(),
        exponent: value.exponent(),
        oracle_agrees,
    };
    serde_json::to_string(&out).map_err(err)
}

#[derive(Serialize)]
struct RepOut {
    c: i64,
    d: i64,
    r: u32,
    d0: i64,
}

#[derive(Serialize)]
struct XyOut {
    x: i64,
    y: i64,
}

#[derive(Serialize)]
struct WitnessOut {
    p: u64,
    two_squares: RepOut,
    four_p: Vec<XyOut>,
    two_q: Vec<XyOut>,
}

pub fn form_witnesses_json(p: u64, q: u64) -> Result<String, String> {
    let rep = two_squares(p).map_err(err)?;
    let xy = |variant, ynorm| -> Result<Vec<XyOut>, String> {
        Ok(represent(variant, p, q, ynorm)
            .map_err(err)?
            .iter()
            .map(|w| XyOut { x: w.x, y: w.y })
            .collect())
    };
    let out = WitnessOut {
        p,
        two_squares: RepOut {
            c: rep.c,
            d: rep.d,
            r: rep.r,
            d0: rep.d0,
        },
        four_p: xy(FormVariant::FourP, YNorm::OneMod4)?,
        two_q: xy(FormVariant::TwoQ, YNorm::Y0OneMod4)?,
    };
    serde_json::to_string(&out).map_err(err)
}

#[derive(Serialize)]
struct ScanOut {
    statement: String,
    parameter: u64,
    pmax: u64,
    matches: u64,
    mismatches: u64,
    vacuous: u64,
    first_mismatch: Option<String>,
}

pub fn scan_statement_json(statement: &str, parameter: u64, pmax: u64) -> Result<String, String> {
    let stmt: StatementId = statement.parse().map_err(err)?;
    let param = if stmt.takes_a() {
        Param::A(parameter)
    } else if stmt.fixed_q().is_some() {
        Param::None
    } else {
        Param::Q(parameter)
    };
    let pmax = pmax.min(SCAN_PMAX_CAP);
    // single worker: no threads in the browser
    let opts = ScanOptions {
        workers: 1,
        semantics: Semantics::All,
    };
    let report = scan(stmt, param, pmax, &opts).map_err(err)?;
    let out = ScanOut {
        statement: stmt.to_string(),
        parameter: report.parameter,
        pmax: report.pmax,
        matches: report.counts.matches,
        mismatches: report.counts.mismatches,
        vacuous: report.counts.vacuous,
        first_mismatch: report.mismatch_records().next().map(|r| {
            format!(
                "p={} witness={:?} lhs={} rhs={}",
                r.p,
                r.witness.as_ref().map(|w| (w.c, w.d, w.x, w.y)),
                r.lhs,
                r.rhs
            )
        }),
    };
    serde_json::to_string(&out).map_err(err)
}

pub fn statement_ids() -> String {
    let ids: Vec<&str> = StatementId::ALL.iter().map(|s| s.as_str()).collect();
    ids.join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_json() {
        let out = quartic_symbol_json("1+1i", "3").unwrap();
        assert!(out.contains(r#""symbol":"-i""#));
        assert!(out.contains(r#""oracle_agrees":true"#));
        assert!(quartic_symbol_json("2", "4").is_err());
    }

    #[test]
    fn witnesses_json() {
        let out = form_witnesses_json(73, 3).unwrap();
        assert!(out.contains(r#""two_squares":{"c":-3,"d":8,"r":3,"d0":1}"#));
        assert!(out.contains(r#""two_q":[{"x":7,"y":2},{"x":-7,"y":2}]"#));
    }

    #[test]
    fn scan_json() {
        let out = scan_statement_json("T3.1", 27, 100).unwrap();
        assert!(out.contains(r#""matches":14"#), "{out}");
        assert!(out.contains(r#""mismatches":0"#));
        assert!(scan_statement_json("T9.9", 3, 100).is_err());
        // discrepancy statements report their first diverging record
        let out = scan_statement_json("C3.1", 27, 100).unwrap();
        assert!(out.contains("first_mismatch"), "{out}");
    }
}
