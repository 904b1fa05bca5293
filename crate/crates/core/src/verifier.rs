//! The statement catalog and the scan engine.
//!
//! Every congruence of the catalog is encoded as a hypothesis filter, a
//! witness builder, an auxiliary-exponent computation and an LHS/RHS pair
//! evaluated exactly as printed. [`scan`] checks all witnesses for all
//! admissible primes up to a bound, fanning out over contiguous prime blocks;
//! the merged report is deterministic and independent of the worker count.
//!
//! Corollary entries keep their printed formulas even where a scan finds
//! systematic discrepancies; [`corollary_cross_check`] re-evaluates the
//! parent theorem on the same witness so a printed sign slip is
//! distinguishable from an engine bug.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

mod catalog;

/// Wall-clock timer that degrades to zero where no monotonic clock exists
/// (wasm builds of the demo).
struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    fn start() -> Self {
        Self {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    fn elapsed_ms(&self) -> u128 {
        #[cfg(not(target_arch = "wasm32"))]
        {
            self.start.elapsed().as_millis()
        }
        #[cfg(target_arch = "wasm32")]
        {
            0
        }
    }
}

/// Identifier of one catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(non_camel_case_types)]
pub enum StatementId {
    T3_1,
    T3_2,
    T3_3,
    T3_4,
    T3_5,
    C3_1,
    T4_1,
    T4_2,
    T4_3,
    C4_1,
    E4_5,
    T4_4,
    C4_2,
    T4_5,
    C4_3,
    T4_6,
    C4_4,
    T4_7,
    C4_5,
    T5_1,
    C5_1,
    C5_2,
    R3_2,
}

impl StatementId {
    pub const ALL: [StatementId; 23] = [
        StatementId::T3_1,
        StatementId::T3_2,
        StatementId::T3_3,
        StatementId::T3_4,
        StatementId::T3_5,
        StatementId::C3_1,
        StatementId::T4_1,
        StatementId::T4_2,
        StatementId::T4_3,
        StatementId::C4_1,
        StatementId::E4_5,
        StatementId::T4_4,
        StatementId::C4_2,
        StatementId::T4_5,
        StatementId::C4_3,
        StatementId::T4_6,
        StatementId::C4_4,
        StatementId::T4_7,
        StatementId::C4_5,
        StatementId::T5_1,
        StatementId::C5_1,
        StatementId::C5_2,
        StatementId::R3_2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StatementId::T3_1 => "T3.1",
            StatementId::T3_2 => "T3.2",
            StatementId::T3_3 => "T3.3",
            StatementId::T3_4 => "T3.4",
            StatementId::T3_5 => "T3.5",
            StatementId::C3_1 => "C3.1",
            StatementId::T4_1 => "T4.1",
            StatementId::T4_2 => "T4.2",
            StatementId::T4_3 => "T4.3",
            StatementId::C4_1 => "C4.1",
            StatementId::E4_5 => "E4.5",
            StatementId::T4_4 => "T4.4",
            StatementId::C4_2 => "C4.2",
            StatementId::T4_5 => "T4.5",
            StatementId::C4_3 => "C4.3",
            StatementId::T4_6 => "T4.6",
            StatementId::C4_4 => "C4.4",
            StatementId::T4_7 => "T4.7",
            StatementId::C4_5 => "C4.5",
            StatementId::T5_1 => "T5.1",
            StatementId::C5_1 => "C5.1",
            StatementId::C5_2 => "C5.2",
            StatementId::R3_2 => "R3.2",
        }
    }

    /// The parent theorem a corollary specializes, for cross-checking.
    pub fn parent(self) -> Option<StatementId> {
        match self {
            StatementId::C3_1 => Some(StatementId::T3_1),
            StatementId::C4_1 => Some(StatementId::T4_3),
            StatementId::C4_2 => Some(StatementId::T4_4),
            StatementId::C4_3 => Some(StatementId::T4_5),
            StatementId::C4_4 => Some(StatementId::T4_6),
            StatementId::C4_5 => Some(StatementId::T4_7),
            StatementId::C5_1 | StatementId::C5_2 => Some(StatementId::T5_1),
            _ => None,
        }
    }

    /// The form parameter a statement pins (so the CLI can omit --q).
    pub fn fixed_q(self) -> Option<u64> {
        match self {
            StatementId::T3_5 => Some(11),
            StatementId::C3_1 => Some(27),
            StatementId::E4_5 => Some(3),
            StatementId::C4_5 => Some(5),
            _ => None,
        }
    }

    /// True for the Lucas-sequence statements parametrized by odd a.
    pub fn takes_a(self) -> bool {
        matches!(
            self,
            StatementId::T5_1 | StatementId::C5_1 | StatementId::C5_2
        )
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatementId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        StatementId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownStatement(s.to_string()))
    }
}

/// Scan parameter: q for the form statements, a for the Lucas statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    Q(u64),
    A(u64),
    None,
}

impl Param {
    pub fn value(self) -> Option<u64> {
        match self {
            Param::Q(v) | Param::A(v) => Some(v),
            Param::None => None,
        }
    }
}

/// One hypothesis-satisfying tuple. The optional a, b carry a split of q;
/// k or m records the auxiliary exponent computed during evaluation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub c: i64,
    pub d: i64,
    pub x: i64,
    pub y: i64,
    pub a: Option<i64>,
    pub b: Option<i64>,
    pub k: Option<u8>,
    pub m: Option<u8>,
}

impl Witness {
    pub(crate) fn new(c: i64, d: i64, x: i64, y: i64) -> Self {
        Self {
            c,
            d,
            x,
            y,
            a: None,
            b: None,
            k: None,
            m: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Match,
    Mismatch,
    Vacuous,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Match => "MATCH",
            Outcome::Mismatch => "MISMATCH",
            Outcome::Vacuous => "VACUOUS",
        }
    }
}

/// Per-witness comparison of the two sides of a congruence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationRecord {
    pub statement: StatementId,
    pub p: u64,
    pub q: u64,
    pub witness: Option<Witness>,
    pub lhs: String,
    pub rhs: String,
    pub outcome: Outcome,
}

/// All-witness (default) or exists-witness checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    All,
    Any,
}

impl Semantics {
    pub fn as_str(self) -> &'static str {
        match self {
            Semantics::All => "all",
            Semantics::Any => "any",
        }
    }
}

impl FromStr for Semantics {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Semantics::All),
            "any" => Ok(Semantics::Any),
            _ => Err(Error::Precondition(format!("unknown semantics {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanCounts {
    pub matches: u64,
    pub mismatches: u64,
    pub vacuous: u64,
    pub no_valid_sign: u64,
}

/// Aggregate result of one statement scan.
#[derive(Debug, Clone)]
pub struct ScanReport {
    pub statement: StatementId,
    pub parameter: u64,
    pub pmax: u64,
    pub semantics: Semantics,
    pub counts: ScanCounts,
    pub records: Vec<VerificationRecord>,
    /// Wall time of the scan; informational only, never serialized into
    /// report files (those are byte-deterministic).
    pub wall_ms: u128,
}

impl ScanReport {
    pub fn mismatch_records(&self) -> impl Iterator<Item = &VerificationRecord> {
        self.records
            .iter()
            .filter(|r| r.outcome == Outcome::Mismatch)
    }

    /// Number of failures under the report's witness semantics: every
    /// mismatching witness counts under `all`; under `any` a prime fails
    /// only when no witness matched.
    pub fn theorem_level_failures(&self) -> u64 {
        match self.semantics {
            Semantics::All => self.counts.mismatches,
            Semantics::Any => {
                let mut failures = 0u64;
                let mut i = 0;
                while i < self.records.len() {
                    let p = self.records[i].p;
                    let mut any_match = false;
                    let mut any_mismatch = false;
                    while i < self.records.len() && self.records[i].p == p {
                        match self.records[i].outcome {
                            Outcome::Match => any_match = true,
                            Outcome::Mismatch => any_mismatch = true,
                            Outcome::Vacuous => {}
                        }
                        i += 1;
                    }
                    if any_mismatch && !any_match {
                        failures += 1;
                    }
                }
                failures
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub workers: usize,
    pub semantics: Semantics,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            workers: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
            semantics: Semantics::All,
        }
    }
}

/// Evaluates one statement at one admissible prime: builds all witnesses and
/// compares LHS and RHS per witness. An empty witness set yields a single
/// VACUOUS record.
pub fn evaluate(stmt: StatementId, p: u64, param: Param) -> Result<Vec<VerificationRecord>> {
    catalog::validate_param(stmt, param)?;
    if !crate::primes::is_prime(p) || !catalog::admissible(stmt, p, param) {
        return Err(Error::ParamShape(
            stmt.as_str(),
            format!("p = {p} is not an admissible prime"),
        ));
    }
    catalog::evaluate(stmt, p, param)
}

/// Evaluates every admissible prime ≤ pmax and aggregates. Deterministic:
/// records are ordered by (p, witness) regardless of the worker count.
pub fn scan(stmt: StatementId, param: Param, pmax: u64, opts: &ScanOptions) -> Result<ScanReport> {
    catalog::validate_param(stmt, param)?;
    let timer = Stopwatch::start();
    let primes: Vec<u64> = crate::primes::primes_up_to(pmax)
        .into_iter()
        .filter(|&p| catalog::admissible(stmt, p, param))
        .collect();

    let workers = opts.workers.max(1).min(primes.len().max(1));
    let chunk_len = primes.len().div_ceil(workers).max(1);
    let mut records: Vec<VerificationRecord> = Vec::new();
    if primes.is_empty() {
        // nothing admissible below the bound
    } else if workers == 1 {
        for &p in &primes {
            records.extend(catalog::evaluate(stmt, p, param)?);
        }
    } else {
        let chunks: Vec<&[u64]> = primes.chunks(chunk_len).collect();
        let results: Vec<Result<Vec<VerificationRecord>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| {
                    scope.spawn(move || {
                        let mut out = Vec::new();
                        for &p in chunk {
                            out.extend(catalog::evaluate(stmt, p, param)?);
                        }
                        Ok(out)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("scan worker panicked"))
                .collect()
        });
        for r in results {
            records.extend(r?);
        }
    }

    records.sort_by(|a, b| (a.p, &a.witness).cmp(&(b.p, &b.witness)));

    let mut counts = ScanCounts::default();
    for r in &records {
        match r.outcome {
            Outcome::Match => counts.matches += 1,
            Outcome::Mismatch => counts.mismatches += 1,
            Outcome::Vacuous => counts.vacuous += 1,
        }
    }
    if stmt == StatementId::R3_2 {
        counts.no_valid_sign = counts.mismatches;
    }

    Ok(ScanReport {
        statement: stmt,
        parameter: catalog::record_parameter(stmt, param),
        pmax,
        semantics: opts.semantics,
        counts,
        records,
        wall_ms: timer.elapsed_ms(),
    })
}

/// The sign-choice conjecture scan: for q ≡ 3 (mod 8) and each prime
/// p ≡ 1 (mod 4) with an odd-coordinate solution of 4p = x²+qy², checks that
/// some sign of x satisfies (c, x+2d) = 1 or (d, x+2c) = 1. The conjecture
/// predicts no exceptions; exceptions are counted as `no_valid_sign`.
pub fn conjecture_scan_r3_2(q: u64, pmax: u64, opts: &ScanOptions) -> Result<ScanReport> {
    scan(StatementId::R3_2, Param::Q(q), pmax, opts)
}

/// Re-evaluation of a parent theorem on the witnesses where a corollary
/// mismatched.
#[derive(Debug, Clone)]
pub struct CrossCheck {
    pub corollary: VerificationRecord,
    pub parent: StatementId,
    pub parent_records: Vec<VerificationRecord>,
    pub parent_all_match: bool,
}

/// For every corollary MISMATCH at (p, parameter), evaluates the parent
/// theorem on the same witness and reports which of the two (if either)
/// matches the direct octic power.
pub fn corollary_cross_check(
    corollary: StatementId,
    p: u64,
    param: Param,
) -> Result<Vec<CrossCheck>> {
    let parent = corollary
        .parent()
        .ok_or(Error::NoParent(corollary.as_str()))?;
    let records = evaluate(corollary, p, param)?;
    let mut out = Vec::new();
    for rec in records {
        if rec.outcome != Outcome::Mismatch {
            continue;
        }
        let witness = rec
            .witness
            .clone()
            .ok_or_else(|| Error::Internal("mismatch record without witness".into()))?;
        let parent_param = catalog::parent_param(corollary, param);
        let parent_records = catalog::eval_parent_on_witness(parent, p, parent_param, &witness)?;
        let parent_all_match = parent_records.iter().all(|r| r.outcome == Outcome::Match);
        out.push(CrossCheck {
            corollary: rec,
            parent,
            parent_records,
            parent_all_match,
        });
    }
    Ok(out)
}
