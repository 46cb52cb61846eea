//! Range scans over `m` and the aggregates built from them.
//!
//! Each `m` is independent, so a scan splits the range into chunks, runs
//! them on the rayon pool and concatenates the chunk results in ascending
//! `m`. Output is byte-identical whatever the worker count.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::count1bc::{count_1bc, first_component_one};
use crate::enumerate::{check_enum_m, enumerate_minimal_bruteforce, MinimalSet};
use crate::error::{Error, Result};
use crate::forms::{all_fundamental_solutions, cardinality_check, set_from_solutions};
use crate::kernel::{is_prime_u64, is_sum_of_two_squares};
use crate::triple::{MinimalTriple, Order};

/// Below this bound [`Method::Auto`] runs both enumerators.
pub const AUTO_BOTH_LIMIT: u64 = 10_000;

const CHUNK: u64 = 256;

/// Which enumerator supplies the minimal triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    Brute,
    Forms,
    /// Run both and fail if they disagree.
    Both,
    /// `Both` up to [`AUTO_BOTH_LIMIT`], `Forms` above.
    #[default]
    Auto,
}

impl Method {
    fn resolve(self, m: u64) -> Method {
        match self {
            Method::Auto if m <= AUTO_BOTH_LIMIT => Method::Both,
            Method::Auto => Method::Forms,
            other => other,
        }
    }
}

/// Everything the tables and figures need about one `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRecord {
    pub m: u64,
    pub total: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub n_improper: usize,
    /// `m` is a sum of two non-zero squares.
    pub is_sum2sq: bool,
    pub is_9m4_prime: bool,
    /// There is at least one minimal triple and all start with 1.
    pub all_first_is_1: bool,
    pub unique_minimal: bool,
    pub count_1bc_formula: u64,
    pub count_1bc_enum: u64,
    pub exists_1bc: bool,
    pub cardinality_ok: bool,
    pub set: MinimalSet,
}

impl SurveyRecord {
    pub fn compute(m: u64, method: Method) -> Result<Self> {
        check_enum_m(m)?;
        let per_a = all_fundamental_solutions(m)?;
        let set = match method.resolve(m) {
            Method::Brute => enumerate_minimal_bruteforce(m)?,
            Method::Forms => set_from_solutions(m, &per_a)?,
            _ => {
                let brute = enumerate_minimal_bruteforce(m)?;
                let forms = set_from_solutions(m, &per_a)?;
                if brute != forms {
                    return Err(Error::CrossCheck {
                        m,
                        brute: brute.to_string(),
                        forms: forms.to_string(),
                    });
                }
                forms
            }
        };
        let s = set.summary();
        let ones = first_component_one(&set).len() as u64;
        let count = count_1bc(m)?;
        let record = SurveyRecord {
            m,
            total: s.total,
            n1: s.n1,
            n2: s.n2,
            n3: s.n3,
            n_improper: s.n_improper,
            is_sum2sq: is_sum_of_two_squares(m),
            is_9m4_prime: is_prime_u64(9 * m - 4),
            all_first_is_1: s.total > 0 && ones as usize == s.total,
            unique_minimal: s.total == 1,
            count_1bc_formula: count.count,
            count_1bc_enum: ones,
            exists_1bc: count.exists,
            cardinality_ok: cardinality_check(&set, &per_a).ok(),
            set,
        };
        record.check()?;
        Ok(record)
    }

    /// The identities every record must satisfy.
    pub fn check(&self) -> Result<()> {
        let fail =
            |result: &'static str| Err(Error::invariant(result, format!("m={}: {self:?}", self.m)));
        if self.total != self.n1 + self.n2 + self.n3 {
            return fail("O(m) = O1(m) + O2(m) + O3(m)");
        }
        if !self.n2.is_multiple_of(2) || !self.n3.is_multiple_of(3) {
            return fail("#O2(m) even and #O3(m) divisible by 3");
        }
        if !self.cardinality_ok {
            return fail("sum_a |S_a| = 2 #minimal - #improper");
        }
        if self.count_1bc_formula != self.count_1bc_enum
            || self.exists_1bc != (self.count_1bc_enum > 0)
        {
            return fail("closed-form count of minimal (1,b,c) triples");
        }
        Ok(())
    }

    /// The single minimal triple, when there is exactly one.
    pub fn unique_triple(&self) -> Option<&MinimalTriple> {
        match self.set.triples() {
            [t] => Some(t),
            _ => None,
        }
    }
}

fn check_range(lo: u64, hi: u64) -> Result<()> {
    if lo < 2 || lo > hi {
        return Err(Error::domain(format!("need 2 <= lo <= hi, got {lo}..{hi}")));
    }
    check_enum_m(hi)
}

/// One record per `m` in `[lo, hi]`, ascending. Uses the current rayon pool.
pub fn scan(lo: u64, hi: u64, method: Method) -> Result<Vec<SurveyRecord>> {
    check_range(lo, hi)?;
    let chunks: Vec<(u64, u64)> = (lo..=hi)
        .step_by(CHUNK as usize)
        .map(|start| (start, (start + CHUNK - 1).min(hi)))
        .collect();
    let parts = chunks
        .par_iter()
        .map(|&(a, b)| (a..=b).map(|m| SurveyRecord::compute(m, method)).collect())
        .collect::<Result<Vec<Vec<SurveyRecord>>>>()?;
    Ok(parts.into_iter().flatten().collect())
}

/// [`scan`] on a dedicated pool with a fixed number of workers.
pub fn scan_with_workers(
    lo: u64,
    hi: u64,
    method: Method,
    workers: usize,
) -> Result<Vec<SurveyRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?;
    pool.install(|| scan(lo, hi, method))
}

/// The `m <= bound` with exactly one minimal triple and `phi != 0`. Each
/// such triple must have the shape `(a, a, 3a^2 + a)`.
pub fn special_unique_phi_nonzero(bound: u64) -> Result<Vec<(u64, MinimalTriple)>> {
    if bound < 2 {
        return Err(Error::domain("bound must be at least 2"));
    }
    let records = scan(2, bound, Method::Forms)?;
    unique_phi_nonzero(&records)
}

pub fn unique_phi_nonzero(records: &[SurveyRecord]) -> Result<Vec<(u64, MinimalTriple)>> {
    let mut out = Vec::new();
    for r in records {
        let Some(t) = r.unique_triple() else { continue };
        if t.phi().is_zero() {
            continue;
        }
        let (a, c) = (t.a(), t.c());
        if t.b() != a || *c != 3 * a * a + a {
            return Err(Error::invariant(
                "a unique minimal triple with phi != 0 is (a, a, 3a^2 + a)",
                format!("m={}: {t}", r.m),
            ));
        }
        out.push((r.m, t.clone()));
    }
    Ok(out)
}

/// `m` with `9m - 4` prime, `m` not a sum of two non-zero squares, and
/// `#O(m)` not divisible by 3. Expected to be empty.
pub fn prop_9m4_violations(records: &[SurveyRecord]) -> Vec<u64> {
    records
        .iter()
        .filter(|r| r.is_9m4_prime && !r.is_sum2sq && r.total % 3 != 0)
        .map(|r| r.m)
        .collect()
}

pub fn verify_prop_9m4(lo: u64, hi: u64) -> Result<Vec<u64>> {
    Ok(prop_9m4_violations(&scan(lo, hi, Method::Auto)?))
}

/// One named check of the verification battery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Runs every proven identity over `[lo, hi]` with both enumerators.
pub fn verify_range(lo: u64, hi: u64) -> Result<Vec<CheckOutcome>> {
    check_range(lo, hi)?;
    let mut out = Vec::new();
    let records = match scan(lo, hi, Method::Both) {
        Ok(r) => r,
        Err(e) if e.is_internal() => {
            out.push(CheckOutcome {
                name: "scan (dual enumerators and per-m identities)",
                passed: false,
                detail: e.to_string(),
            });
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    let n = records.len();
    let mut push = |name, failures: Vec<String>| {
        out.push(CheckOutcome {
            name,
            passed: failures.is_empty(),
            detail: if failures.is_empty() {
                format!("{n} values of m")
            } else {
                failures.join("; ")
            },
        })
    };
    push("brute force and forms enumerators agree", Vec::new());
    push(
        "sum_a |S_a| = 2 #minimal - #improper",
        records
            .iter()
            .filter(|r| !r.cardinality_ok)
            .map(|r| r.m.to_string())
            .collect(),
    );
    push(
        "closed-form (1,b,c) count matches enumeration",
        records
            .iter()
            .filter(|r| {
                r.count_1bc_formula != r.count_1bc_enum || r.exists_1bc != (r.count_1bc_enum > 0)
            })
            .map(|r| r.m.to_string())
            .collect(),
    );
    push(
        "9m-4 prime and not a sum of two squares => 3 | #O(m)",
        prop_9m4_violations(&records)
            .iter()
            .map(u64::to_string)
            .collect(),
    );
    push(
        "#O2 even, #O3 divisible by 3",
        records
            .iter()
            .filter(|r| r.n2 % 2 != 0 || r.n3 % 3 != 0)
            .map(|r| r.m.to_string())
            .collect(),
    );
    push(
        "m = 3 (mod 4) has no minimal triples",
        records
            .iter()
            .filter(|r| r.m % 4 == 3 && r.total != 0)
            .map(|r| r.m.to_string())
            .collect(),
    );
    let mut bounds = Vec::new();
    let mut factors = Vec::new();
    for r in &records {
        for t in r.set.triples() {
            if let Err(e) = t.check_bounds() {
                bounds.push(e.to_string());
            }
            if let Some((p, q)) = t.improper_factors() {
                if p * q != BigInt::from(9 * r.m - 4) {
                    factors.push(format!("m={} {t}", r.m));
                }
            }
        }
    }
    push("size bounds of minimal triples", bounds);
    push("9m-4 = (3c-2)(3c-9a^2+2) for improper triples", factors);
    Ok(out)
}

/// Output encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Tables reproduced from the survey.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    /// Every minimal triple with its order.
    MinimalByOrder,
    /// `m` with a unique minimal triple.
    Unique,
    /// `m` with a unique minimal triple and `phi != 0`.
    UniquePhiNonzero,
    /// `m` whose minimal triples all start with 1.
    AllFirstIsOne,
}

/// Data series behind the figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// `#O(m)` for every `m`.
    OrderCounts,
    /// Number of `m <= x` with `#O(m) = 1`.
    CumulativeUnique,
    /// Same, restricted to primes `m = 1 (mod 4)`.
    CumulativeUniquePrime1Mod4,
    /// `#O(m)` where `9m - 4` is prime and `m` is not a sum of two squares.
    Mod3With9m4Prime,
    /// `#O(m) mod 3` where `#O(m) != 0`.
    Mod3Distribution,
    /// Number of `m <= x` whose minimal triples all start with 1, split by
    /// `#O(m) = 1` and `#O(m) > 1`.
    CumulativeAll1bc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emission {
    Survey,
    Table(TableId),
    Series(SeriesKind),
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Int(String),
    Bool(bool),
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v.to_string())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v.to_string())
    }
}

impl From<&BigInt> for Cell {
    fn from(v: &BigInt) -> Self {
        Cell::Int(v.to_string())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

struct Sheet {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Sheet {
    fn new(header: &[&'static str]) -> Self {
        Sheet {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut s = self.header.join(",");
                s.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row
                        .iter()
                        .map(|c| match c {
                            Cell::Int(v) => v.clone(),
                            Cell::Bool(b) => b.to_string(),
                        })
                        .collect();
                    let _ = writeln!(s, "{}", cells.join(","));
                }
                s
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut obj = Map::new();
                        for (k, c) in self.header.iter().zip(row) {
                            let v = match c {
                                Cell::Int(v) => Value::String(v.clone()),
                                Cell::Bool(b) => Value::Bool(*b),
                            };
                            obj.insert((*k).to_string(), v);
                        }
                        Value::Object(obj)
                    })
                    .collect();
                let mut s =
                    serde_json::to_string_pretty(&Value::Array(rows)).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

/// Render records for `[lo, hi]`. Records outside the range are ignored;
/// a gap inside it is an error.
pub fn emit(
    records: &[SurveyRecord],
    lo: u64,
    hi: u64,
    what: Emission,
    format: Format,
) -> Result<String> {
    check_range(lo, hi)?;
    let slice: Vec<&SurveyRecord> = records
        .iter()
        .filter(|r| (lo..=hi).contains(&r.m))
        .collect();
    let covered =
        slice.len() as u64 == hi - lo + 1 && slice.iter().zip(lo..=hi).all(|(r, m)| r.m == m);
    if !covered {
        return Err(Error::domain(format!("records do not cover {lo}..{hi}")));
    }

    let sheet = match what {
        Emission::Survey => survey_sheet(&slice, format),
        Emission::Table(id) => table_sheet(&slice, id)?,
        Emission::Series(kind) => series_sheet(&slice, kind),
    };
    Ok(sheet.render(format))
}

fn survey_sheet(records: &[&SurveyRecord], format: Format) -> Sheet {
    let mut header = vec![
        "m",
        "total",
        "n1",
        "n2",
        "n3",
        "n_improper",
        "is_sum2sq",
        "is_9m4_prime",
        "all_first_is_1",
        "count_1bc",
    ];
    if format == Format::Json {
        header.extend([
            "unique_minimal",
            "count_1bc_formula",
            "count_1bc_enum",
            "cardinality_ok",
        ]);
    }
    let mut sheet = Sheet::new(&header);
    for r in records {
        let mut row: Vec<Cell> = vec![
            r.m.into(),
            r.total.into(),
            r.n1.into(),
            r.n2.into(),
            r.n3.into(),
            r.n_improper.into(),
            r.is_sum2sq.into(),
            r.is_9m4_prime.into(),
            r.all_first_is_1.into(),
            r.count_1bc_enum.into(),
        ];
        if format == Format::Json {
            row.extend([
                r.unique_minimal.into(),
                r.count_1bc_formula.into(),
                r.count_1bc_enum.into(),
                r.cardinality_ok.into(),
            ]);
        }
        sheet.push(row);
    }
    sheet
}

fn triple_cells(t: &MinimalTriple) -> [Cell; 3] {
    [t.a().into(), t.b().into(), t.c().into()]
}

fn table_sheet(records: &[&SurveyRecord], id: TableId) -> Result<Sheet> {
    let sheet = match id {
        TableId::MinimalByOrder => {
            let mut sheet = Sheet::new(&["m", "order", "a", "b", "c"]);
            for r in records {
                for order in [Order::One, Order::Two, Order::Three] {
                    for t in r.set.class(order) {
                        let mut row = vec![r.m.into(), (order.as_u8() as u64).into()];
                        row.extend(triple_cells(t));
                        sheet.push(row);
                    }
                }
            }
            sheet
        }
        TableId::Unique => {
            let mut sheet = Sheet::new(&["m", "phi", "a", "b", "c"]);
            for r in records {
                if let Some(t) = r.unique_triple() {
                    let mut row = vec![r.m.into(), t.phi().into()];
                    row.extend(triple_cells(t));
                    sheet.push(row);
                }
            }
            sheet
        }
        TableId::UniquePhiNonzero => {
            let owned: Vec<SurveyRecord> = records.iter().map(|r| (*r).clone()).collect();
            let mut sheet = Sheet::new(&["m", "a", "b", "c"]);
            for (m, t) in unique_phi_nonzero(&owned)? {
                let mut row = vec![m.into()];
                row.extend(triple_cells(&t));
                sheet.push(row);
            }
            sheet
        }
        TableId::AllFirstIsOne => {
            let mut sheet = Sheet::new(&["m", "a", "b", "c"]);
            for r in records.iter().filter(|r| r.all_first_is_1) {
                for t in r.set.triples() {
                    let mut row = vec![r.m.into()];
                    row.extend(triple_cells(t));
                    sheet.push(row);
                }
            }
            sheet
        }
    };
    Ok(sheet)
}

fn series_sheet(records: &[&SurveyRecord], kind: SeriesKind) -> Sheet {
    match kind {
        SeriesKind::OrderCounts => {
            let mut sheet = Sheet::new(&["m", "count"]);
            for r in records {
                sheet.push(vec![r.m.into(), r.total.into()]);
            }
            sheet
        }
        SeriesKind::CumulativeUnique | SeriesKind::CumulativeUniquePrime1Mod4 => {
            let mut sheet = Sheet::new(&["x", "count"]);
            let mut acc = 0u64;
            for r in records {
                let counted = r.unique_minimal
                    && (kind == SeriesKind::CumulativeUnique
                        || (r.m % 4 == 1 && is_prime_u64(r.m)));
                acc += counted as u64;
                sheet.push(vec![r.m.into(), acc.into()]);
            }
            sheet
        }
        SeriesKind::Mod3With9m4Prime => {
            let mut sheet = Sheet::new(&["m", "count"]);
            for r in records.iter().filter(|r| r.is_9m4_prime && !r.is_sum2sq) {
                sheet.push(vec![r.m.into(), r.total.into()]);
            }
            sheet
        }
        SeriesKind::Mod3Distribution => {
            let mut sheet = Sheet::new(&["m", "count_mod3"]);
            for r in records.iter().filter(|r| r.total != 0) {
                sheet.push(vec![r.m.into(), (r.total % 3).into()]);
            }
            sheet
        }
        SeriesKind::CumulativeAll1bc => {
            let mut sheet = Sheet::new(&["x", "unique", "multiple"]);
            let (mut one, mut many) = (0u64, 0u64);
            for r in records {
                if r.all_first_is_1 {
                    if r.total == 1 {
                        one += 1;
                    } else {
                        many += 1;
                    }
                }
                sheet.push(vec![r.m.into(), one.into(), many.into()]);
            }
            sheet
        }
    }
}
