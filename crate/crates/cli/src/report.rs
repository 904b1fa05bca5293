//! Report emission: JSON Lines (header object first, one record per line,
//! cross-check objects last) and a flattened CSV. Files are written to a
//! temporary sibling and renamed so cancellation never leaves partial output.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use qrt_core::verifier::{CrossCheck, ScanReport, VerificationRecord, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => anyhow::bail!("unknown format {s:?} (expected json or csv)"),
        }
    }
}

#[derive(Serialize)]
struct Header<'a> {
    statement: &'a str,
    parameter: u64,
    pmax: u64,
    semantics: &'a str,
    version: &'a str,
}

#[derive(Serialize)]
struct WitnessJson {
    c: i64,
    d: i64,
    x: i64,
    y: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u8>,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        Self {
            c: w.c,
            d: w.d,
            x: w.x,
            y: w.y,
            a: w.a,
            b: w.b,
            k: w.k,
            m: w.m,
        }
    }
}

#[derive(Serialize)]
struct RecordJson<'a> {
    p: u64,
    q: u64,
    witness: Option<WitnessJson>,
    lhs: &'a str,
    rhs: &'a str,
    outcome: &'a str,
}

impl<'a> From<&'a VerificationRecord> for RecordJson<'a> {
    fn from(r: &'a VerificationRecord) -> Self {
        Self {
            p: r.p,
            q: r.q,
            witness: r.witness.as_ref().map(WitnessJson::from),
            lhs: &r.lhs,
            rhs: &r.rhs,
            outcome: r.outcome.as_str(),
        }
    }
}

#[derive(Serialize)]
struct CrossCheckJson<'a> {
    cross_check: CrossCheckBody<'a>,
}

#[derive(Serialize)]
struct CrossCheckBody<'a> {
    statement: &'a str,
    parent: &'a str,
    p: u64,
    witness: Option<WitnessJson>,
    corollary_lhs: &'a str,
    corollary_rhs: &'a str,
    parent_outcomes: Vec<&'a str>,
    parent_all_match: bool,
}

pub fn render_json(report: &ScanReport, crosses: &[CrossCheck]) -> Result<String> {
    let mut out = String::new();
    let header = Header {
        statement: report.statement.as_str(),
        parameter: report.parameter,
        pmax: report.pmax,
        semantics: report.semantics.as_str(),
        version: env!("CARGO_PKG_VERSION"),
    };
    out.push_str(&serde_json::to_string(&header)?);
    out.push('\n');
    for rec in &report.records {
        out.push_str(&serde_json::to_string(&RecordJson::from(rec))?);
        out.push('\n');
    }
    for chk in crosses {
        let body = CrossCheckJson {
            cross_check: CrossCheckBody {
                statement: chk.corollary.statement.as_str(),
                parent: chk.parent.as_str(),
                p: chk.corollary.p,
                witness: chk.corollary.witness.as_ref().map(WitnessJson::from),
                corollary_lhs: &chk.corollary.lhs,
                corollary_rhs: &chk.corollary.rhs,
                parent_outcomes: chk
                    .parent_records
                    .iter()
                    .map(|r| r.outcome.as_str())
                    .collect(),
                parent_all_match: chk.parent_all_match,
            },
        };
        out.push_str(&serde_json::to_string(&body)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn render_csv(report: &ScanReport) -> String {
    let mut out = String::from("statement,p,q,c,d,x,y,a,b,k,m,lhs,rhs,outcome\n");
    let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
    let opt8 = |v: Option<u8>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in &report.records {
        let (c, d, x, y, a, b, k, m) = match &r.witness {
            Some(w) => (
                w.c.to_string(),
                w.d.to_string(),
                w.x.to_string(),
                w.y.to_string(),
                opt(w.a),
                opt(w.b),
                opt8(w.k),
                opt8(w.m),
            ),
            None => Default::default(),
        };
        out.push_str(&format!(
            "{},{},{},{c},{d},{x},{y},{a},{b},{k},{m},{},{},{}\n",
            r.statement,
            r.p,
            r.q,
            r.lhs,
            r.rhs,
            r.outcome.as_str()
        ));
    }
    out
}

/// Write-then-rename so an interrupted run leaves no partial file.
pub fn write_atomically(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp",
            path.file_name()
                .and_then(|n| n.to_str())
                .unwrap_or("report")
        )),
        None => Path::new(&format!(
            ".{}.tmp",
            path.file_name()
                .and_then(|n| n.to_str())
                .unwrap_or("report")
        ))
        .to_path_buf(),
    };
    {
        let mut f =
            fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}
